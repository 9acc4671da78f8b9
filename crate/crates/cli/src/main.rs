mod commands;
mod exit;
mod files;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{group, holonomy, lattice, subdivide, verify};
use exit::{Failure, CONSTRAINT};

/// Unit-edge networks carrying distance and holonomy.
#[derive(Debug, Parser)]
#[command(name = "holonet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replace weighted edges by chains of unit edges.
    Subdivide(subdivide::SubdivideArgs),
    /// Build a triangulated lattice with fraction or connection directions.
    Lattice(lattice::LatticeArgs),
    /// Holonomy, quanta and length along a vertex path.
    Holonomy(holonomy::HolonomyArgs),
    /// Compare loop phases against a continuum connection.
    Verify(verify::VerifyArgs),
    /// Best-word approximation or covering radius.
    Group(group::GroupArgs),
}

fn init_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("HOLONET_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Failure::msg(
                CONSTRAINT,
                format!("HOLONET_THREADS={value:?} is not a positive integer"),
            )
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::new(CONSTRAINT, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Subdivide(a) => subdivide::run(a),
        Command::Lattice(a) => lattice::run(a),
        Command::Holonomy(a) => holonomy::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Group(a) => group::run(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
