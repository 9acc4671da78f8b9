//! Distance and holonomy from networks of typed directed edges.
//!
//! A network carries no lengths and no continuous gauge field. Lengths come
//! from counting unit distance edges; holonomy comes from counting directed
//! phase edges, each standing for one small group element `exp(η_i)`.
//!
//! - [`group`]: generator bases, words `g′(α)`, covering radius, best-word
//!   approximation.
//! - [`network`]: the typed multigraph, path holonomy, signed length,
//!   geodesics.
//! - [`quantizer`]: weighted complexes to unit-edge networks.
//! - [`compiler`]: triangulated lattices and direction assignment.
//! - [`analysis`]: connection expressions, line integrals, loop and
//!   plaquette checks.
//! - [`format`]: canonical text files.

pub mod analysis;
pub mod compiler;
pub mod format;
pub mod group;
pub mod network;
pub mod quantizer;

pub use analysis::{
    compare_loop, line_integral, parse_expr, plaquette_curvature, plaquette_quanta, wrap_phase,
    ConnectionField, Expr, LoopComparison,
};
pub use compiler::{
    assign_axis_directions, build_lattice, compile_connection, Axis, EmbeddedNetwork, Lattice,
    LatticeSpec, Triangle,
};
pub use format::NetworkDocument;
pub use group::{
    approximate, compose, element_distance, exp_generator, inverse, mesh_cover_radius,
    word_element, GroupElement, GroupSpec, MultiIndex,
};
pub use network::{
    geodesic_distance, loop_holonomy, net_quanta, path_holonomy, path_length, EdgeId, EdgeKind,
    Mode, Network, Orientation, Path, Prefer, Sign, VertexId,
};
pub use quantizer::{
    reconstruction_error, subdivide, CountRule, QuantizeRule, WeightedComplex, ZeroPolicy,
};
