pub mod group;
pub mod holonomy;
pub mod lattice;
pub mod subdivide;
pub mod verify;

use holonet_core::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Dual,
    Combined,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Dual => Mode::Dual,
            ModeArg::Combined => Mode::Combined,
        }
    }
}

/// Comma-separated vertex ids, e.g. `0,1,2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexList(pub Vec<usize>);

impl std::str::FromStr for VertexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Err("empty vertex list".into());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(VertexList)
    }
}
