use std::path::PathBuf;

use clap::{Args, ValueEnum};
use holonet_core::format::parse_complex;
use holonet_core::quantizer::{reconstruction_error, subdivide};
use holonet_core::{CountRule, GroupSpec, NetworkDocument, QuantizeRule, ZeroPolicy};

use super::ModeArg;
use crate::exit::{CmdResult, OrExit, CONSTRAINT, PARSE};
use crate::files::{read_text, write_atomic};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RuleArg {
    Floor,
    Round,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ZeroArg {
    Clamp,
    Error,
}

#[derive(Debug, Args)]
pub struct SubdivideArgs {
    /// Weighted complex file (`complex v=<V>` then `wedge <u> <v> <l>` lines).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    epsilon: f64,
    /// Unit edge length; defaults to 2ε.
    #[arg(long)]
    unit: Option<f64>,
    #[arg(long, value_enum, default_value = "floor")]
    rule: RuleArg,
    #[arg(long, value_enum, default_value = "clamp")]
    zero: ZeroArg,
    #[arg(long, value_enum, default_value = "dual")]
    mode: ModeArg,
    /// Phase quantum of the U(1) group written to the file; defaults to ε.
    #[arg(long)]
    eps_prime: Option<f64>,
    #[arg(long)]
    output: PathBuf,
}

pub fn run(args: &SubdivideArgs) -> CmdResult {
    let complex = parse_complex(&read_text(&args.input)?).or_exit(PARSE)?;
    let mut rule = QuantizeRule::new(args.epsilon)
        .with_count(match args.rule {
            RuleArg::Floor => CountRule::Floor,
            RuleArg::Round => CountRule::Round,
        })
        .with_zero(match args.zero {
            ZeroArg::Clamp => ZeroPolicy::ClampToOne,
            ZeroArg::Error => ZeroPolicy::Error,
        });
    if let Some(unit) = args.unit {
        rule = rule.with_unit(unit);
    }
    let group = GroupSpec::u1(args.eps_prime.unwrap_or(args.epsilon)).or_exit(CONSTRAINT)?;
    let mut sub = subdivide(&complex, &rule, args.mode.into()).or_exit(CONSTRAINT)?;
    for w in &sub.warnings {
        eprintln!("warning: {w}");
    }
    sub.network.freeze();
    let report = reconstruction_error(&complex, &rule);
    write_atomic(
        &args.output,
        &NetworkDocument::new(group, sub.network).to_text(),
    )?;
    println!(
        "edges={} max_error={} mean_error={}",
        report.edges.len(),
        report.max_error,
        report.mean_error
    );
    Ok(())
}
