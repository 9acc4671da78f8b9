use std::path::PathBuf;

use clap::Args;
use holonet_core::compiler::CompileError;
use holonet_core::{
    assign_axis_directions, build_lattice, compile_connection, Axis, ConnectionField, GroupSpec,
    LatticeSpec, NetworkDocument,
};

use super::ModeArg;
use crate::exit::{CmdResult, Failure, OrExit, COARSE, CONSTRAINT, PARSE};
use crate::files::write_atomic;

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    #[arg(long, value_enum, default_value = "dual")]
    mode: ModeArg,
    /// Phase quantum ε′ of the U(1) group.
    #[arg(long)]
    eps_prime: f64,
    /// Forward fraction along the horizontal axis (default 1).
    #[arg(long, conflicts_with_all = ["ax", "ay"])]
    fx: Option<f64>,
    #[arg(long, conflicts_with_all = ["ax", "ay"])]
    fy: Option<f64>,
    #[arg(long, conflicts_with_all = ["ax", "ay"])]
    fd: Option<f64>,
    /// x component of the connection, an expression in x and y (default 0).
    #[arg(long = "Ax", id = "ax", allow_hyphen_values = true)]
    ax: Option<String>,
    #[arg(long = "Ay", id = "ay", allow_hyphen_values = true)]
    ay: Option<String>,
    /// Absolute tolerance for the per-bond line integrals.
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[arg(long)]
    output: PathBuf,
}

fn compile_failure(e: CompileError) -> Failure {
    let code = match e {
        CompileError::TooCoarse { .. } => COARSE,
        CompileError::Integrate(_) => PARSE,
        _ => CONSTRAINT,
    };
    Failure::new(code, e)
}

pub fn run(args: &LatticeArgs) -> CmdResult {
    let spec = LatticeSpec::new(args.rows, args.cols, args.spacing, args.mode.into());
    let group = GroupSpec::u1(args.eps_prime).or_exit(CONSTRAINT)?;
    let mut emb = build_lattice(&spec).map_err(compile_failure)?;
    if args.ax.is_some() || args.ay.is_some() {
        let conn = ConnectionField::parse(
            args.ax.as_deref().unwrap_or("0"),
            args.ay.as_deref().unwrap_or("0"),
        )
        .or_exit(PARSE)?;
        compile_connection(&mut emb, &conn, &group, args.quad_tol).map_err(compile_failure)?;
    } else {
        for (axis, f) in [
            (Axis::Horizontal, args.fx),
            (Axis::Vertical, args.fy),
            (Axis::Diagonal, args.fd),
        ] {
            let f = f.unwrap_or(1.0);
            if !(0.0..=1.0).contains(&f) {
                return Err(Failure::new(CONSTRAINT, CompileError::BadFraction(f)));
            }
            match assign_axis_directions(&mut emb, axis, f) {
                Err(CompileError::AxisAbsent(_)) => {}
                other => other.map_err(compile_failure)?,
            }
        }
    }
    emb.network.freeze();
    let (vertices, edges) = (emb.network.vertex_count(), emb.network.edge_count());
    write_atomic(
        &args.output,
        &NetworkDocument::embedded(group, emb).to_text(),
    )?;
    println!("vertices={vertices} edges={edges}");
    Ok(())
}
