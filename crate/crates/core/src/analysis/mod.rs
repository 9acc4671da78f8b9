//! Continuum-side checks: connection expressions, their line integrals, and
//! comparison of discrete loop phases with the continuum target.

pub mod expr;
pub mod quadrature;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::compiler::{CompileError, EmbeddedNetwork, Lattice, Triangle};
use crate::group::GroupSpec;
use crate::network::{net_quanta, NetworkError, Path, Prefer, VertexId};

pub use expr::{parse_expr, EvalError, Expr, ParseError};
pub use quadrature::{line_integral, ConnectionField, IntegrateError, Point};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("phase comparison needs a one-generator group, got d = {0}")]
    NonAbelian(usize),
    #[error("network must be frozen before comparison")]
    NotFrozen,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error(transparent)]
    Lattice(#[from] CompileError),
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopComparison {
    pub quanta: i64,
    pub discrete_phase: f64,
    pub continuum_phase: f64,
    /// `|wrap(discrete − continuum)|`
    pub circle_distance: f64,
}

fn polygon(emb: &EmbeddedNetwork, path: &Path) -> Result<Vec<Point>, NetworkError> {
    let net = &emb.network;
    let mut at = path.start;
    let mut pts = vec![emb.coord(at)];
    for step in &path.steps {
        let e = net.edge(step.edge)?;
        at = e.other(at).ok_or(NetworkError::NotIncident {
            step: pts.len() - 1,
            at,
        })?;
        pts.push(emb.coord(at));
    }
    Ok(pts)
}

/// Discrete phase `ε′·quanta` of a closed loop against `∮ A` over its
/// embedded polygon.
pub fn compare_loop(
    emb: &EmbeddedNetwork,
    path: &Path,
    conn: &ConnectionField,
    spec: &GroupSpec,
    tol: f64,
) -> Result<LoopComparison, AnalysisError> {
    if spec.d() != 1 {
        return Err(AnalysisError::NonAbelian(spec.d()));
    }
    if !emb.network.is_frozen() {
        return Err(AnalysisError::NotFrozen);
    }
    let end = emb.network.walk(path)?;
    if end != path.start {
        return Err(NetworkError::NotClosed {
            start: path.start,
            end,
        }
        .into());
    }
    let quanta = net_quanta(&emb.network, path, 1)?[0];
    let discrete_phase = spec.eps() * quanta as f64;
    let continuum_phase = line_integral(conn, &polygon(emb, path)?, tol)?;
    Ok(LoopComparison {
        quanta,
        discrete_phase,
        continuum_phase,
        circle_distance: wrap_phase(discrete_phase - continuum_phase).abs(),
    })
}

/// Same as [`compare_loop`] for a loop given as a vertex sequence.
pub fn compare_vertex_loop(
    emb: &EmbeddedNetwork,
    vertices: &[VertexId],
    conn: &ConnectionField,
    spec: &GroupSpec,
    tol: f64,
) -> Result<LoopComparison, AnalysisError> {
    let path = Path::through_vertices(&emb.network, vertices, Prefer::Phase)?;
    compare_loop(emb, &path, conn, spec, tol)
}

/// Net quanta around the counter-clockwise boundary of every elementary
/// triangle, keyed by grid index.
pub fn plaquette_quanta(emb: &EmbeddedNetwork) -> Result<BTreeMap<Triangle, i64>, AnalysisError> {
    let lattice = Lattice::detect(emb)?;
    lattice
        .triangles()
        .into_iter()
        .map(|t| {
            let path =
                Path::through_vertices(&emb.network, &lattice.triangle_loop(t), Prefer::Phase)?;
            Ok((t, net_quanta(&emb.network, &path, 1)?[0]))
        })
        .collect()
}

/// Discrete curvature per triangle: boundary phase over area `a²/2`.
pub fn plaquette_curvature(
    emb: &EmbeddedNetwork,
    spec: &GroupSpec,
) -> Result<BTreeMap<Triangle, f64>, AnalysisError> {
    if spec.d() != 1 {
        return Err(AnalysisError::NonAbelian(spec.d()));
    }
    let lattice = Lattice::detect(emb)?;
    let area = lattice.spacing * lattice.spacing / 2.0;
    Ok(plaquette_quanta(emb)?
        .into_iter()
        .map(|(t, q)| (t, spec.eps() * q as f64 / area))
        .collect())
}

/// Sum of plaquette quanta over the triangles inside a rectangle.
pub fn enclosed_quanta(
    quanta: &BTreeMap<Triangle, i64>,
    (r0, c0, r1, c1): (usize, usize, usize, usize),
) -> i64 {
    quanta
        .iter()
        .filter(|(t, _)| t.row >= r0 && t.row < r1 && t.col >= c0 && t.col < c1)
        .map(|(_, q)| q)
        .sum()
}
