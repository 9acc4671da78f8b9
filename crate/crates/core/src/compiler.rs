//! Triangulated planar lattices and direction assignment for their phase
//! edges.
//!
//! Vertex `(row, col)` has id `row·cols + col` and sits at `(col·a, row·a)`.
//! Each cell carries one diagonal from its lower-left to its upper-right
//! corner. Directions are chosen by one-dimensional error diffusion along
//! every axis line (a row, a column or a diagonal), so any prefix of a line
//! keeps its quantum count within one of the target.

use crate::analysis::quadrature::{segment_integral, ConnectionField, IntegrateError, Point};
use crate::group::GroupSpec;
use crate::network::{EdgeId, EdgeKind, Mode, Network, NetworkError, Sign, VertexId};

/// Slack added before flooring `k·f`, so decimal fractions such as 0.7
/// give the exact integer counts their decimal value implies.
const FRACTION_SLACK: f64 = 1e-9;
/// Relative slack on the per-edge coarseness bound `|θ_e| ≤ ε′`.
const COARSE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    pub rows: usize,
    pub cols: usize,
    pub spacing: f64,
    pub mode: Mode,
}

impl LatticeSpec {
    pub fn new(rows: usize, cols: usize, spacing: f64, mode: Mode) -> Self {
        LatticeSpec {
            rows,
            cols,
            spacing,
            mode,
        }
    }

    /// Number of lattice bonds: `R(C−1) + C(R−1) + (R−1)(C−1)`.
    pub fn bond_count(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        r * (c - 1) + c * (r - 1) + (r - 1) * (c - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Horizontal, Axis::Vertical, Axis::Diagonal];
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
            Axis::Diagonal => "diagonal",
        })
    }
}

/// A network with planar coordinates for every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedNetwork {
    pub network: Network,
    pub coords: Vec<Point>,
}

impl EmbeddedNetwork {
    pub fn coord(&self, v: VertexId) -> Point {
        self.coords[v]
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompileError {
    #[error("lattice needs at least one row and one column")]
    EmptyLattice,
    #[error("lattice spacing must be positive and finite, got {0}")]
    BadSpacing(f64),
    #[error("forward fraction must lie in [0, 1], got {0}")]
    BadFraction(f64),
    #[error("the lattice has no {0} edges")]
    AxisAbsent(Axis),
    #[error("network is frozen")]
    Frozen,
    #[error("not a lattice network: {0}")]
    NotALattice(String),
    #[error("connection compilation needs a one-generator group, got d = {0}")]
    NonAbelian(usize),
    #[error(
        "edge {from}->{to} needs phase {theta} but one quantum is only {eps}; \
         refine the spacing or raise eps"
    )]
    TooCoarse {
        from: VertexId,
        to: VertexId,
        theta: f64,
        eps: f64,
    },
    #[error(transparent)]
    Integrate(#[from] IntegrateError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Grid geometry recovered from, or used to build, a lattice network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub rows: usize,
    pub cols: usize,
    pub spacing: f64,
    pub mode: Mode,
}

/// Half of a grid cell cut by its diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    /// Below the diagonal: lower-left, lower-right, upper-right.
    Lower,
    /// Above the diagonal: lower-left, upper-right, upper-left.
    Upper,
}

/// Elementary triangle, ordered by grid index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub row: usize,
    pub col: usize,
    pub half: Half,
}

impl Lattice {
    pub fn vertex(&self, row: usize, col: usize) -> VertexId {
        row * self.cols + col
    }

    pub fn position(&self, v: VertexId) -> (usize, usize) {
        (v / self.cols, v % self.cols)
    }

    pub fn has_axis(&self, axis: Axis) -> bool {
        match axis {
            Axis::Horizontal => self.cols > 1,
            Axis::Vertical => self.rows > 1,
            Axis::Diagonal => self.rows > 1 && self.cols > 1,
        }
    }

    /// Lines of bonds along `axis`, each as `(from, to)` pairs in `+axis`
    /// order. Diagonal lines start on the bottom row, then on the left column.
    pub fn lines(&self, axis: Axis) -> Vec<Vec<(VertexId, VertexId)>> {
        let (rows, cols) = (self.rows, self.cols);
        let v = |r: usize, c: usize| self.vertex(r, c);
        match axis {
            Axis::Horizontal if cols > 1 => (0..rows)
                .map(|r| (0..cols - 1).map(|c| (v(r, c), v(r, c + 1))).collect())
                .collect(),
            Axis::Vertical if rows > 1 => (0..cols)
                .map(|c| (0..rows - 1).map(|r| (v(r, c), v(r + 1, c))).collect())
                .collect(),
            Axis::Diagonal if rows > 1 && cols > 1 => {
                let starts = (0..cols - 1)
                    .map(|c| (0, c))
                    .chain((1..rows - 1).map(|r| (r, 0)));
                starts
                    .map(|(r0, c0)| {
                        (0..)
                            .map(|k| (r0 + k, c0 + k))
                            .take_while(|&(r, c)| r + 1 < rows && c + 1 < cols)
                            .map(|(r, c)| (v(r, c), v(r + 1, c + 1)))
                            .collect()
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for row in 0..self.rows.saturating_sub(1) {
            for col in 0..self.cols.saturating_sub(1) {
                out.push(Triangle {
                    row,
                    col,
                    half: Half::Lower,
                });
                out.push(Triangle {
                    row,
                    col,
                    half: Half::Upper,
                });
            }
        }
        out
    }

    /// Counter-clockwise boundary of a triangle, closed (first vertex
    /// repeated at the end).
    pub fn triangle_loop(&self, t: Triangle) -> [VertexId; 4] {
        let ll = self.vertex(t.row, t.col);
        let lr = self.vertex(t.row, t.col + 1);
        let ur = self.vertex(t.row + 1, t.col + 1);
        let ul = self.vertex(t.row + 1, t.col);
        match t.half {
            Half::Lower => [ll, lr, ur, ll],
            Half::Upper => [ll, ur, ul, ll],
        }
    }

    /// Counter-clockwise boundary of the rectangle with corners
    /// `(r0, c0)` and `(r1, c1)`, `r0 < r1`, `c0 < c1`, closed.
    pub fn rectangle_loop(&self, r0: usize, c0: usize, r1: usize, c1: usize) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(2 * (r1 - r0 + c1 - c0) + 1);
        out.extend((c0..c1).map(|c| self.vertex(r0, c)));
        out.extend((r0..r1).map(|r| self.vertex(r, c1)));
        out.extend((c0 + 1..=c1).rev().map(|c| self.vertex(r1, c)));
        out.extend((r0 + 1..=r1).rev().map(|r| self.vertex(r, c0)));
        out.push(self.vertex(r0, c0));
        out
    }

    /// All rectangles `(r0, c0, r1, c1)` in row-major order of their corners.
    pub fn rectangles(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for r0 in 0..self.rows {
            for c0 in 0..self.cols {
                for r1 in r0 + 1..self.rows {
                    for c1 in c0 + 1..self.cols {
                        out.push((r0, c0, r1, c1));
                    }
                }
            }
        }
        out
    }

    fn phase_kind(&self) -> EdgeKind {
        match self.mode {
            Mode::Dual => EdgeKind::Phase(0),
            Mode::Combined => EdgeKind::Combined(0),
        }
    }

    /// The phase-carrying edge of the bond `a–b`.
    pub fn phase_edge(&self, net: &Network, a: VertexId, b: VertexId) -> Option<EdgeId> {
        net.find_edge(a, b, self.phase_kind())
    }

    /// Recovers the grid from an embedded network built by [`build_lattice`]
    /// (directions may since have changed).
    pub fn detect(emb: &EmbeddedNetwork) -> Result<Lattice, CompileError> {
        let net = &emb.network;
        let n = net.vertex_count();
        let bad = |why: String| Err(CompileError::NotALattice(why));
        if n == 0 {
            return bad("no vertices".into());
        }
        if emb.coords.len() != n {
            return bad(format!("{} coordinates for {n} vertices", emb.coords.len()));
        }
        if emb.coords[0] != (0.0, 0.0) {
            return bad("vertex 0 is not at the origin".into());
        }
        let spacing = emb
            .coords
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .filter(|&t| t > 0.0)
            .fold(f64::INFINITY, f64::min);
        let spacing = if spacing.is_finite() { spacing } else { 1.0 };
        let cols = emb.coords.iter().take_while(|&&(_, y)| y == 0.0).count();
        if cols == 0 || !n.is_multiple_of(cols) {
            return bad(format!("{n} vertices do not fill rows of {cols}"));
        }
        let lattice = Lattice {
            rows: n / cols,
            cols,
            spacing,
            mode: net.mode(),
        };
        for (v, &(x, y)) in emb.coords.iter().enumerate() {
            let (r, c) = lattice.position(v);
            let expected = (c as f64 * spacing, r as f64 * spacing);
            let tol = 1e-9 * spacing;
            if (x - expected.0).abs() > tol || (y - expected.1).abs() > tol {
                return bad(format!("vertex {v} at ({x}, {y}) is off the grid"));
            }
        }
        let per_bond = match net.mode() {
            Mode::Dual => 2,
            Mode::Combined => 1,
        };
        let spec = LatticeSpec::new(lattice.rows, cols, spacing, net.mode());
        if net.edge_count() != per_bond * spec.bond_count() {
            return bad(format!(
                "{} edges, expected {}",
                net.edge_count(),
                per_bond * spec.bond_count()
            ));
        }
        for axis in Axis::ALL {
            for &(a, b) in lattice.lines(axis).iter().flatten() {
                if lattice.phase_edge(net, a, b).is_none() {
                    return bad(format!("bond {a}-{b} has no phase edge"));
                }
                if net.mode() == Mode::Dual
                    && net
                        .find_edge(a, b, EdgeKind::Distance(Sign::Positive))
                        .is_none()
                {
                    return bad(format!("bond {a}-{b} has no distance edge"));
                }
            }
        }
        Ok(lattice)
    }
}

/// Builds the triangulated `rows × cols` grid. In dual mode every bond gets a
/// positive distance edge plus a generator-0 phase edge; in combined mode a
/// single combined edge. Phase directions start out along `+axis`.
pub fn build_lattice(spec: &LatticeSpec) -> Result<EmbeddedNetwork, CompileError> {
    if spec.rows == 0 || spec.cols == 0 {
        return Err(CompileError::EmptyLattice);
    }
    if !(spec.spacing.is_finite() && spec.spacing > 0.0) {
        return Err(CompileError::BadSpacing(spec.spacing));
    }
    let lattice = Lattice {
        rows: spec.rows,
        cols: spec.cols,
        spacing: spec.spacing,
        mode: spec.mode,
    };
    let mut net = Network::new(spec.mode, 1.0)?;
    net.add_vertices(spec.rows * spec.cols)?;
    let coords = (0..spec.rows * spec.cols)
        .map(|v| {
            let (r, c) = lattice.position(v);
            (c as f64 * spec.spacing, r as f64 * spec.spacing)
        })
        .collect();
    for axis in Axis::ALL {
        for &(a, b) in lattice.lines(axis).iter().flatten() {
            match spec.mode {
                Mode::Dual => {
                    net.add_edge(a, b, EdgeKind::Distance(Sign::Positive))?;
                    net.add_edge(a, b, EdgeKind::Phase(0))?;
                }
                Mode::Combined => {
                    net.add_edge(a, b, EdgeKind::Combined(0))?;
                }
            }
        }
    }
    Ok(EmbeddedNetwork {
        network: net,
        coords,
    })
}

/// Forward/reverse pattern for a line of `len` bonds at forward fraction `f`:
/// bond `k` (1-based) is forward iff `⌊k·f⌋` steps up there, so every
/// `k`-prefix has `⌊k·f⌋` forward bonds.
pub fn fraction_pattern(len: usize, f: f64) -> Vec<bool> {
    let count = |k: usize| (k as f64 * f + FRACTION_SLACK).floor() as i64;
    (1..=len).map(|k| count(k) > count(k - 1)).collect()
}

fn orient(
    net: &mut Network,
    lattice: &Lattice,
    (a, b): (VertexId, VertexId),
    forward: bool,
) -> Result<(), CompileError> {
    let id = lattice
        .phase_edge(net, a, b)
        .ok_or_else(|| CompileError::NotALattice(format!("bond {a}-{b} has no phase edge")))?;
    if forward {
        net.orient_edge(id, a, b)?;
    } else {
        net.orient_edge(id, b, a)?;
    }
    Ok(())
}

/// Sets the phase edges along `axis` so that a fraction `f` of them point in
/// the `+axis` direction. `f = 1/2` alternates starting with a reverse edge;
/// `f = 1` makes every edge forward and `f = 0` every edge reverse.
pub fn assign_axis_directions(
    emb: &mut EmbeddedNetwork,
    axis: Axis,
    f: f64,
) -> Result<(), CompileError> {
    if !(0.0..=1.0).contains(&f) {
        return Err(CompileError::BadFraction(f));
    }
    if emb.network.is_frozen() {
        return Err(CompileError::Frozen);
    }
    let lattice = Lattice::detect(emb)?;
    if !lattice.has_axis(axis) {
        return Err(CompileError::AxisAbsent(axis));
    }
    for line in lattice.lines(axis) {
        for (&bond, forward) in line.iter().zip(fraction_pattern(line.len(), f)) {
            orient(&mut emb.network, &lattice, bond, forward)?;
        }
    }
    Ok(())
}

/// Per-bond target phases `∫_e A` along one line, in `+axis` order.
pub fn line_phases(
    emb: &EmbeddedNetwork,
    line: &[(VertexId, VertexId)],
    conn: &ConnectionField,
    tol: f64,
) -> Result<Vec<f64>, CompileError> {
    line.iter()
        .map(|&(a, b)| Ok(segment_integral(conn, emb.coord(a), emb.coord(b), tol)?))
        .collect()
}

/// Quantizes per-bond targets `x_k = θ_k/ε′ ∈ [−1, 1]` into ±1 quanta along
/// one line. Bond `k` is forward iff `T_k − Q_{k−1} ≥ 0`, with `T` the running
/// target and `Q` the running quantum count, which keeps
/// `T_k − Q_k ∈ [−1, 1)` for every prefix.
pub fn diffuse_line(targets: &[f64]) -> Vec<bool> {
    let mut residual = 0.0;
    targets
        .iter()
        .map(|&x| {
            residual += x;
            if residual >= 0.0 {
                residual -= 1.0;
                true
            } else {
                residual += 1.0;
                false
            }
        })
        .collect()
}

/// Orients every phase edge so the quanta along each axis line track the
/// line integral of `conn`, in units of `ε′`. U(1) only.
pub fn compile_connection(
    emb: &mut EmbeddedNetwork,
    conn: &ConnectionField,
    spec: &GroupSpec,
    tol: f64,
) -> Result<(), CompileError> {
    if spec.d() != 1 {
        return Err(CompileError::NonAbelian(spec.d()));
    }
    if emb.network.is_frozen() {
        return Err(CompileError::Frozen);
    }
    let lattice = Lattice::detect(emb)?;
    let eps = spec.eps();
    let mut plan = Vec::new();
    for axis in Axis::ALL {
        for line in lattice.lines(axis) {
            let phases = line_phases(emb, &line, conn, tol)?;
            for (&(from, to), &theta) in line.iter().zip(&phases) {
                if theta.abs() > eps * (1.0 + COARSE_SLACK) {
                    return Err(CompileError::TooCoarse {
                        from,
                        to,
                        theta,
                        eps,
                    });
                }
            }
            let targets: Vec<f64> = phases.iter().map(|t| t / eps).collect();
            plan.push((line, diffuse_line(&targets)));
        }
    }
    for (line, pattern) in plan {
        for (&bond, forward) in line.iter().zip(pattern) {
            orient(&mut emb.network, &lattice, bond, forward)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{net_quanta, path_holonomy, Path, Prefer};

    fn lattice(rows: usize, cols: usize) -> EmbeddedNetwork {
        build_lattice(&LatticeSpec::new(rows, cols, 1.0, Mode::Dual)).unwrap()
    }

    fn direction(emb: &EmbeddedNetwork, a: VertexId, b: VertexId) -> bool {
        let l = Lattice::detect(emb).unwrap();
        let e = emb
            .network
            .edge(l.phase_edge(&emb.network, a, b).unwrap())
            .unwrap();
        e.u == a
    }

    #[test]
    fn bond_counts() {
        let e = lattice(2, 2);
        assert_eq!(e.network.vertex_count(), 4);
        assert_eq!(e.network.edge_count(), 2 * 5);
        let e = build_lattice(&LatticeSpec::new(2, 2, 1.0, Mode::Combined)).unwrap();
        assert_eq!(e.network.edge_count(), 5);

        let e = build_lattice(&LatticeSpec::new(1, 5, 1.0, Mode::Combined)).unwrap();
        assert_eq!(e.network.edge_count(), 4);
        let l = Lattice::detect(&e).unwrap();
        assert!(l.lines(Axis::Diagonal).is_empty());
        assert_eq!(l.lines(Axis::Horizontal).len(), 1);

        // R(C−1) + C(R−1) + (R−1)(C−1) by brute force over ordered pairs
        for (r, c) in [(3, 3), (4, 7), (1, 1), (6, 2)] {
            let spec = LatticeSpec::new(r, c, 1.0, Mode::Combined);
            let mut count = 0;
            for a in 0..r * c {
                for b in 0..r * c {
                    let (ra, ca) = (a / c, a % c);
                    let (rb, cb) = (b / c, b % c);
                    if (rb == ra && cb == ca + 1)
                        || (rb == ra + 1 && cb == ca)
                        || (rb == ra + 1 && cb == ca + 1)
                    {
                        count += 1;
                    }
                }
            }
            assert_eq!(spec.bond_count(), count);
            assert_eq!(build_lattice(&spec).unwrap().network.edge_count(), count);
        }
        assert_eq!(LatticeSpec::new(3, 3, 1.0, Mode::Dual).bond_count(), 16);
    }

    #[test]
    fn detect_round_trips_geometry() {
        let e = build_lattice(&LatticeSpec::new(4, 3, 0.5, Mode::Dual)).unwrap();
        let l = Lattice::detect(&e).unwrap();
        assert_eq!((l.rows, l.cols, l.spacing), (4, 3, 0.5));
        let single = build_lattice(&LatticeSpec::new(1, 1, 2.0, Mode::Dual)).unwrap();
        assert_eq!(Lattice::detect(&single).unwrap().rows, 1);
        let mut broken = e.clone();
        broken.coords[5].0 += 0.1;
        assert!(matches!(
            Lattice::detect(&broken),
            Err(CompileError::NotALattice(_))
        ));
    }

    #[test]
    fn build_rejects_bad_specs() {
        assert!(matches!(
            build_lattice(&LatticeSpec::new(0, 3, 1.0, Mode::Dual)),
            Err(CompileError::EmptyLattice)
        ));
        assert!(matches!(
            build_lattice(&LatticeSpec::new(2, 3, -1.0, Mode::Dual)),
            Err(CompileError::BadSpacing(_))
        ));
    }

    #[test]
    fn fraction_patterns() {
        assert_eq!(
            fraction_pattern(6, 0.5),
            vec![false, true, false, true, false, true]
        );
        assert!(fraction_pattern(10, 1.0).iter().all(|&b| b));
        assert!(fraction_pattern(10, 0.0).iter().all(|&b| !b));
        // hand-run accumulator at f = 0.7: R F F R F F R F F F
        assert_eq!(
            fraction_pattern(10, 0.7),
            vec![false, true, true, false, true, true, false, true, true, true]
        );
    }

    #[test]
    fn prefix_counts_stay_within_one() {
        for &f in &[0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.7, 0.77, 0.999, 1.0] {
            let pattern = fraction_pattern(200, f);
            let mut forward = 0i64;
            for (k, &fw) in pattern.iter().enumerate() {
                forward += fw as i64;
                assert!((forward as f64 - f * (k + 1) as f64).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn complementary_fractions_reverse_edges() {
        // The first bond of a line is reverse for every f < 1, so f and 1 − f
        // agree there; past it they are complementary whenever no prefix k·f
        // is an integer.
        for &f in &[0.37, 0.123, 0.61] {
            let a = fraction_pattern(60, f);
            let b = fraction_pattern(60, 1.0 - f);
            assert!(!a[0] && !b[0]);
            assert!(a[1..].iter().zip(&b[1..]).all(|(x, y)| x != y), "f = {f}");
        }
        assert!(fraction_pattern(8, 1.0)
            .iter()
            .zip(fraction_pattern(8, 0.0))
            .all(|(x, y)| *x != y));
    }

    #[test]
    fn uniform_vertical_accumulates() {
        let spec = GroupSpec::u1(0.01).unwrap();
        let mut e = lattice(11, 2);
        assign_axis_directions(&mut e, Axis::Vertical, 1.0).unwrap();
        let column: Vec<usize> = (0..11).map(|r| r * 2).collect();
        let p = Path::through_vertices(&e.network, &column, Prefer::Phase).unwrap();
        assert_eq!(net_quanta(&e.network, &p, 1).unwrap(), vec![10]);
        let h = path_holonomy(&e.network, &p, &spec).unwrap();
        assert!((h.phase().unwrap() - 0.1).abs() < 1e-13);
    }

    #[test]
    fn alternating_rows_cancel() {
        let mut e = lattice(2, 11);
        assign_axis_directions(&mut e, Axis::Horizontal, 0.5).unwrap();
        let row: Vec<usize> = (0..11).collect();
        let p = Path::through_vertices(&e.network, &row, Prefer::Phase).unwrap();
        assert_eq!(net_quanta(&e.network, &p, 1).unwrap(), vec![0]);
        assert!(!direction(&e, 0, 1));
        assert!(direction(&e, 1, 2));
    }

    #[test]
    fn seventy_percent_row() {
        let mut e = lattice(1, 11);
        assign_axis_directions(&mut e, Axis::Horizontal, 0.7).unwrap();
        let row: Vec<usize> = (0..11).collect();
        let p = Path::through_vertices(&e.network, &row, Prefer::Phase).unwrap();
        assert_eq!(net_quanta(&e.network, &p, 1).unwrap(), vec![4]);
    }

    #[test]
    fn assignment_errors() {
        let mut e = lattice(1, 4);
        assert!(matches!(
            assign_axis_directions(&mut e, Axis::Diagonal, 0.5),
            Err(CompileError::AxisAbsent(Axis::Diagonal))
        ));
        assert!(matches!(
            assign_axis_directions(&mut e, Axis::Horizontal, 1.5),
            Err(CompileError::BadFraction(_))
        ));
        e.network.freeze();
        assert!(matches!(
            assign_axis_directions(&mut e, Axis::Horizontal, 0.5),
            Err(CompileError::Frozen)
        ));
    }

    #[test]
    fn diffusion_prefix_bound() {
        let targets: Vec<f64> = (0..500).map(|k| ((k as f64) * 0.37).sin()).collect();
        let pattern = diffuse_line(&targets);
        let (mut t, mut q) = (0.0, 0i64);
        for (x, fw) in targets.iter().zip(pattern) {
            t += x;
            q += if fw { 1 } else { -1 };
            assert!((q as f64 - t).abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn zero_connection_alternates_from_forward() {
        let spec = GroupSpec::u1(0.1).unwrap();
        let mut e = lattice(3, 9);
        compile_connection(&mut e, &ConnectionField::zero(), &spec, 1e-12).unwrap();
        assert!(direction(&e, 0, 1));
        assert!(!direction(&e, 1, 2));
        let row: Vec<usize> = (2..=8).collect();
        let p = Path::through_vertices(&e.network, &row, Prefer::Phase).unwrap();
        assert_eq!(net_quanta(&e.network, &p, 1).unwrap(), vec![0]);
    }

    #[test]
    fn saturated_vertical_connection() {
        let eps = 0.1;
        let spec = GroupSpec::u1(eps).unwrap();
        let mut e = build_lattice(&LatticeSpec::new(5, 6, 0.5, Mode::Combined)).unwrap();
        let conn = ConnectionField::parse("0", &format!("{}", eps / 0.5)).unwrap();
        compile_connection(&mut e, &conn, &spec, 1e-12).unwrap();
        let l = Lattice::detect(&e).unwrap();
        for &(a, b) in l.lines(Axis::Vertical).iter().flatten() {
            assert!(direction(&e, a, b));
        }
        for line in l.lines(Axis::Horizontal) {
            let fw: Vec<bool> = line.iter().map(|&(a, b)| direction(&e, a, b)).collect();
            assert_eq!(fw, vec![true, false, true, false, true]);
        }
    }

    #[test]
    fn compilation_errors() {
        let spec = GroupSpec::u1(0.01).unwrap();
        let mut e = lattice(4, 4);
        let conn = ConnectionField::parse("0", "x").unwrap();
        assert!(matches!(
            compile_connection(&mut e, &conn, &spec, 1e-12),
            Err(CompileError::TooCoarse { .. })
        ));
        let su2 = GroupSpec::su2(0.1).unwrap();
        assert!(matches!(
            compile_connection(&mut e, &ConnectionField::zero(), &su2, 1e-12),
            Err(CompileError::NonAbelian(3))
        ));
    }

    #[test]
    fn rectangle_loop_is_counter_clockwise() {
        let l = Lattice {
            rows: 3,
            cols: 3,
            spacing: 1.0,
            mode: Mode::Dual,
        };
        assert_eq!(l.rectangle_loop(0, 0, 1, 1), vec![0, 1, 4, 3, 0]);
        assert_eq!(
            l.rectangle_loop(0, 0, 2, 2),
            vec![0, 1, 2, 5, 8, 7, 6, 3, 0]
        );
        assert_eq!(
            l.triangle_loop(Triangle {
                row: 0,
                col: 0,
                half: Half::Lower
            }),
            [0, 1, 4, 0]
        );
        assert_eq!(
            l.triangle_loop(Triangle {
                row: 0,
                col: 0,
                half: Half::Upper
            }),
            [0, 4, 3, 0]
        );
        assert_eq!(l.rectangles().len(), 9);
    }
}
