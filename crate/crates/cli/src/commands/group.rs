use std::path::PathBuf;

use clap::Args;
use holonet_core::format::{parse_group, FormatError};
use holonet_core::group::{CMatrix, GroupError, C64};
use holonet_core::{
    approximate, element_distance, mesh_cover_radius, word_element, GroupElement, GroupSpec,
};

use crate::exit::{CmdResult, Failure, OrExit, CONSTRAINT, PARSE};
use crate::files::read_text;

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// File holding a single group block.
    #[arg(long)]
    group_file: PathBuf,
    /// Target element: one phase for U(1), or 2·dim² reals (row-major
    /// re,im pairs) separated by spaces or commas.
    #[arg(
        long,
        conflicts_with = "mesh",
        required_unless_present = "mesh",
        allow_hyphen_values = true
    )]
    approximate: Option<String>,
    /// Estimate the covering radius instead.
    #[arg(long)]
    mesh: bool,
    /// Largest word norm Σ|α_i|.
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 1000, requires = "mesh")]
    samples: usize,
    #[arg(long, default_value_t = 0, requires = "mesh")]
    seed: u64,
}

fn parse_target(text: &str, spec: &GroupSpec) -> CmdResult<GroupElement> {
    let values = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| Failure::msg(PARSE, format!("--approximate: {e}")))?;
    let dim = spec.dim();
    match values.as_slice() {
        [theta] if dim == 1 => Ok(GroupElement::from_phase(*theta)),
        v if v.len() == 2 * dim * dim => {
            let entries: Vec<C64> = v.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
            Ok(GroupElement::from_matrix(CMatrix::from_row_slice(
                dim, dim, &entries,
            )))
        }
        v => Err(Failure::msg(
            CONSTRAINT,
            format!(
                "--approximate got {} reals, expected {} for a {dim}×{dim} group",
                v.len(),
                2 * dim * dim
            ),
        )),
    }
}

fn group_failure(e: GroupError) -> Failure {
    Failure::new(CONSTRAINT, e)
}

pub fn run(args: &GroupArgs) -> CmdResult {
    let spec = parse_group(&read_text(&args.group_file)?).map_err(|e| {
        let code = match e {
            FormatError::Syntax { .. } => PARSE,
            _ => CONSTRAINT,
        };
        Failure::new(code, e)
    })?;
    if args.mesh {
        let radius =
            mesh_cover_radius(&spec, args.n, args.samples, args.seed).map_err(group_failure)?;
        println!("radius={radius}");
        return Ok(());
    }
    let target = parse_target(args.approximate.as_deref().unwrap_or_default(), &spec)?;
    let alpha = approximate(&spec, &target, args.n).map_err(group_failure)?;
    let word = word_element(&spec, &alpha).or_exit(CONSTRAINT)?;
    let distance = element_distance(&word, &target).or_exit(CONSTRAINT)?;
    println!("alpha={alpha}");
    println!("distance={distance}");
    Ok(())
}
