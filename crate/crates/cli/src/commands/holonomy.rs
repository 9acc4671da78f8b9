use std::path::PathBuf;

use clap::Args;
use holonet_core::network::NetworkError;
use holonet_core::{
    geodesic_distance, loop_holonomy, net_quanta, path_holonomy, path_length, Path, Prefer,
};

use super::VertexList;
use crate::exit::{CmdResult, Failure, OrExit, CONSTRAINT};
use crate::files::read_network;

#[derive(Debug, Args)]
pub struct HolonomyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Vertex ids visited in order, comma separated.
    #[arg(long)]
    path: VertexList,
    /// Treat the path as a closed loop (first vertex = last vertex).
    #[arg(long = "loop")]
    closed: bool,
}

pub fn run(args: &HolonomyArgs) -> CmdResult {
    let doc = read_network(&args.input)?;
    let (net, group) = (&doc.network, &doc.group);
    let verts = &args.path.0;
    let (first, last) = (verts[0], verts[verts.len() - 1]);
    if args.closed && first != last {
        return Err(Failure::msg(
            CONSTRAINT,
            format!("--loop needs a closed path, got {first} .. {last}"),
        ));
    }
    let phase_path = Path::through_vertices(net, verts, Prefer::Phase).or_exit(CONSTRAINT)?;
    let length_path = Path::through_vertices(net, verts, Prefer::Distance).or_exit(CONSTRAINT)?;
    let holonomy = if args.closed {
        loop_holonomy(net, &phase_path, group)
    } else {
        path_holonomy(net, &phase_path, group)
    }
    .or_exit(CONSTRAINT)?;
    let quanta = net_quanta(net, &phase_path, group.d()).or_exit(CONSTRAINT)?;
    let length = path_length(net, &length_path).or_exit(CONSTRAINT)?;

    let quanta: Vec<String> = quanta.iter().map(i64::to_string).collect();
    println!("quanta={}", quanta.join(","));
    match holonomy.phase() {
        Some(phase) => println!("phase={phase}"),
        None => println!("holonomy=\n{holonomy}"),
    }
    println!("length={length}");
    if !args.closed {
        match geodesic_distance(net, first, last) {
            Ok(Some(g)) => println!("geodesic={g}"),
            Ok(None) => println!("geodesic=unreachable"),
            Err(NetworkError::NegativeEdges) => println!("geodesic=undefined"),
            Err(e) => return Err(Failure::new(CONSTRAINT, e)),
        }
    }
    Ok(())
}
