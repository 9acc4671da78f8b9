use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use holonet_core::analysis::{compare_vertex_loop, AnalysisError};
use holonet_core::{ConnectionField, Lattice, LoopComparison};
use rayon::prelude::*;

use super::VertexList;
use crate::exit::{CmdResult, Failure, OrExit, CONSTRAINT, PARSE, VERIFY};
use crate::files::{read_network, read_text, write_atomic};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Network file with coordinates.
    #[arg(long)]
    input: PathBuf,
    #[arg(
        long = "Ax",
        id = "ax",
        default_value = "0",
        allow_hyphen_values = true
    )]
    ax: String,
    #[arg(
        long = "Ay",
        id = "ay",
        default_value = "0",
        allow_hyphen_values = true
    )]
    ay: String,
    /// One closed loop per line as comma-separated vertex ids.
    #[arg(
        long,
        conflicts_with = "all_rects",
        required_unless_present = "all_rects"
    )]
    loops: Option<PathBuf>,
    /// Every axis-aligned rectangle of the lattice.
    #[arg(long)]
    all_rects: bool,
    /// With --all-rects, only rectangles whose sides have even length.
    #[arg(long, requires = "all_rects")]
    even_sides: bool,
    /// Largest accepted circle distance.
    #[arg(long)]
    tol: f64,
    /// Absolute tolerance for the line integrals.
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    /// CSV report path.
    #[arg(long)]
    report: PathBuf,
}

fn read_loops(path: &std::path::Path) -> CmdResult<Vec<(String, Vec<usize>)>> {
    let text = read_text(path)?;
    let mut loops = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let VertexList(verts) = line.parse().map_err(|e: String| {
            Failure::msg(PARSE, format!("{}:{}: {e}", path.display(), n + 1))
        })?;
        loops.push((format!("loop-{}", loops.len()), verts));
    }
    Ok(loops)
}

fn analysis_failure(e: AnalysisError) -> Failure {
    let code = match e {
        AnalysisError::Integrate(_) => PARSE,
        _ => CONSTRAINT,
    };
    Failure::new(code, e)
}

pub fn run(args: &VerifyArgs) -> CmdResult {
    let conn = ConnectionField::parse(&args.ax, &args.ay).or_exit(PARSE)?;
    let doc = read_network(&args.input)?;
    let emb = doc
        .as_embedded()
        .ok_or_else(|| Failure::msg(CONSTRAINT, "network file has no coordinates"))?;
    let loops = match &args.loops {
        Some(path) => read_loops(path)?,
        None => {
            let lattice = Lattice::detect(&emb).or_exit(CONSTRAINT)?;
            lattice
                .rectangles()
                .into_iter()
                .filter(|&(r0, c0, r1, c1)| {
                    !args.even_sides || ((r1 - r0) % 2 == 0 && (c1 - c0) % 2 == 0)
                })
                .map(|(r0, c0, r1, c1)| {
                    (
                        format!("rect-{r0}-{c0}-{r1}-{c1}"),
                        lattice.rectangle_loop(r0, c0, r1, c1),
                    )
                })
                .collect()
        }
    };
    let results: Vec<LoopComparison> = loops
        .par_iter()
        .map(|(_, verts)| compare_vertex_loop(&emb, verts, &conn, &doc.group, args.quad_tol))
        .collect::<Result<_, _>>()
        .map_err(analysis_failure)?;

    let mut csv = String::from("loop_id,discrete_phase,continuum_phase,circle_distance\n");
    let mut failed = 0;
    let mut worst: f64 = 0.0;
    for ((id, _), r) in loops.iter().zip(&results) {
        writeln!(
            csv,
            "{id},{},{},{}",
            r.discrete_phase, r.continuum_phase, r.circle_distance
        )
        .unwrap();
        worst = worst.max(r.circle_distance);
        if r.circle_distance.is_nan() || r.circle_distance > args.tol {
            failed += 1;
        }
    }
    write_atomic(&args.report, &csv)?;
    println!(
        "loops={} failed={failed} max_distance={worst}",
        results.len()
    );
    if failed > 0 {
        return Err(Failure::msg(
            VERIFY,
            format!(
                "{failed} of {} loops exceed tolerance {}",
                results.len(),
                args.tol
            ),
        ));
    }
    Ok(())
}
