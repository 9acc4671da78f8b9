//! Fixtures shared by the benchmarks.

use holonet_core::{
    assign_axis_directions, build_lattice, Axis, EmbeddedNetwork, Lattice, LatticeSpec, Mode, Path,
    Prefer,
};

/// Frozen `rows × cols` lattice with alternating rows and upward columns.
pub fn alternating_lattice(rows: usize, cols: usize) -> EmbeddedNetwork {
    let mut emb = build_lattice(&LatticeSpec::new(rows, cols, 1.0, Mode::Dual)).unwrap();
    assign_axis_directions(&mut emb, Axis::Horizontal, 0.5).unwrap();
    assign_axis_directions(&mut emb, Axis::Vertical, 1.0).unwrap();
    emb.network.freeze();
    emb
}

/// Boundary of the whole lattice as a phase path.
pub fn perimeter(emb: &EmbeddedNetwork) -> Path {
    let l = Lattice::detect(emb).unwrap();
    let verts = l.rectangle_loop(0, 0, l.rows - 1, l.cols - 1);
    Path::through_vertices(&emb.network, &verts, Prefer::Phase).unwrap()
}
