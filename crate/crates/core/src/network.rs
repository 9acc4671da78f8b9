//! Multigraph of typed unit edges.
//!
//! Distance edges carry one signed unit of length and no phase. Phase edges
//! carry one quantum `exp(η_i)` in their stored direction and no length.
//! Combined edges carry both: one positive unit of length and one quantum of
//! the (single) generator. An edge's stored `(u, v)` order is its forward
//! direction.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::group::{GroupElement, GroupError, GroupSpec};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Phase(usize),
    Distance(Sign),
    Combined(usize),
}

impl EdgeKind {
    pub fn is_directed(self) -> bool {
        !matches!(self, EdgeKind::Distance(_))
    }

    /// Generator index carried by the edge, if any.
    pub fn generator(self) -> Option<usize> {
        match self {
            EdgeKind::Phase(i) | EdgeKind::Combined(i) => Some(i),
            EdgeKind::Distance(_) => None,
        }
    }

    /// Signed units of length contributed by one traversal.
    pub fn length_units(self) -> i64 {
        match self {
            EdgeKind::Phase(_) => 0,
            EdgeKind::Distance(s) => s.value(),
            EdgeKind::Combined(_) => 1,
        }
    }

    // Multiplicity slot: distance edges share one slot regardless of sign.
    fn slot(self) -> (u8, usize) {
        match self {
            EdgeKind::Phase(i) => (0, i),
            EdgeKind::Distance(_) => (1, 0),
            EdgeKind::Combined(i) => (2, i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Dual,
    Combined,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dual => "dual",
            Mode::Combined => "combined",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    /// Endpoint reached when leaving `from` along this edge.
    pub fn other(&self, from: VertexId) -> Option<VertexId> {
        if from == self.u {
            Some(self.v)
        } else if from == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetworkError {
    #[error("unit length must be positive and finite, got {0}")]
    BadUnit(f64),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge kind {kind:?} is not allowed in {mode} mode")]
    IllegalKind { kind: EdgeKind, mode: Mode },
    #[error("duplicate {kind:?} edge between {u} and {v}")]
    Duplicate {
        u: VertexId,
        v: VertexId,
        kind: EdgeKind,
    },
    #[error("edge {edge} does not join {from} and {to}")]
    NotEndpoints {
        edge: usize,
        from: VertexId,
        to: VertexId,
    },
    #[error("network is frozen")]
    Frozen,
    #[error("edge {0} is undirected")]
    Undirected(usize),
    #[error("step {step} does not leave vertex {at}")]
    NotIncident { step: usize, at: VertexId },
    #[error("step {step} walks edge {edge} against its stored orientation")]
    WrongOrientation { step: usize, edge: usize },
    #[error("path is not closed: starts at {start}, ends at {end}")]
    NotClosed { start: VertexId, end: VertexId },
    #[error("geodesics are undefined on networks with negative distance edges")]
    NegativeEdges,
    #[error("no traversable edge between {0} and {1}")]
    NoEdge(VertexId, VertexId),
    #[error("more than one phase edge between {0} and {1}")]
    AmbiguousEdge(VertexId, VertexId),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Typed-edge multigraph. Mutable until [`Network::freeze`].
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    mode: Mode,
    unit: f64,
    vertex_count: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
    slots: HashMap<(VertexId, VertexId, (u8, usize)), EdgeId>,
    frozen: bool,
}

impl Network {
    pub fn new(mode: Mode, unit: f64) -> Result<Self, NetworkError> {
        if !(unit.is_finite() && unit > 0.0) {
            return Err(NetworkError::BadUnit(unit));
        }
        Ok(Network {
            mode,
            unit,
            vertex_count: 0,
            edges: Vec::new(),
            incident: Vec::new(),
            slots: HashMap::new(),
            frozen: false,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn unit(&self) -> f64 {
        self.unit
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge, NetworkError> {
        self.edges.get(id.0).ok_or(NetworkError::UnknownEdge(id.0))
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Ends the construction phase; mutators fail afterwards.
    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    fn ensure_mutable(&self) -> Result<(), NetworkError> {
        if self.frozen {
            Err(NetworkError::Frozen)
        } else {
            Ok(())
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), NetworkError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(NetworkError::UnknownVertex(v))
        }
    }

    pub fn add_vertex(&mut self) -> Result<VertexId, NetworkError> {
        self.ensure_mutable()?;
        self.vertex_count += 1;
        self.incident.push(Vec::new());
        Ok(self.vertex_count - 1)
    }

    /// Adds `count` vertices and returns the id of the first one.
    pub fn add_vertices(&mut self, count: usize) -> Result<VertexId, NetworkError> {
        self.ensure_mutable()?;
        let first = self.vertex_count;
        self.vertex_count += count;
        self.incident.resize_with(self.vertex_count, Vec::new);
        Ok(first)
    }

    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        kind: EdgeKind,
    ) -> Result<EdgeId, NetworkError> {
        self.ensure_mutable()?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(NetworkError::SelfLoop(u));
        }
        let legal = match (self.mode, kind) {
            (Mode::Dual, EdgeKind::Phase(_) | EdgeKind::Distance(_)) => true,
            // one directed edge type only: d = 1, positive lengths
            (Mode::Combined, EdgeKind::Combined(0)) => true,
            _ => false,
        };
        if !legal {
            return Err(NetworkError::IllegalKind {
                kind,
                mode: self.mode,
            });
        }
        let key = (u.min(v), u.max(v), kind.slot());
        if self.slots.contains_key(&key) {
            return Err(NetworkError::Duplicate { u, v, kind });
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u, v, kind });
        self.incident[u].push(id);
        self.incident[v].push(id);
        self.slots.insert(key, id);
        Ok(id)
    }

    /// Sets the forward direction of a directed edge to `from → to`.
    pub fn orient_edge(
        &mut self,
        id: EdgeId,
        from: VertexId,
        to: VertexId,
    ) -> Result<(), NetworkError> {
        self.ensure_mutable()?;
        let edge = self
            .edges
            .get_mut(id.0)
            .ok_or(NetworkError::UnknownEdge(id.0))?;
        if !edge.kind.is_directed() {
            return Err(NetworkError::Undirected(id.0));
        }
        if (edge.u, edge.v) == (to, from) {
            edge.u = from;
            edge.v = to;
        } else if (edge.u, edge.v) != (from, to) {
            return Err(NetworkError::NotEndpoints {
                edge: id.0,
                from,
                to,
            });
        }
        Ok(())
    }

    /// Edge of the given kind slot between `a` and `b`, in either order.
    pub fn find_edge(&self, a: VertexId, b: VertexId, kind: EdgeKind) -> Option<EdgeId> {
        self.slots.get(&(a.min(b), a.max(b), kind.slot())).copied()
    }

    pub fn edges_between(&self, a: VertexId, b: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incident
            .get(a)
            .into_iter()
            .flatten()
            .copied()
            .filter(move |&id| self.edges[id.0].other(a) == Some(b))
    }

    pub fn has_negative_edges(&self) -> bool {
        self.edges
            .iter()
            .any(|e| e.kind == EdgeKind::Distance(Sign::Negative))
    }

    /// Copy with edges sorted by `(u, v, kind)`; the order used by the text
    /// format.
    pub fn canonical(&self) -> Network {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.u, e.v, e.kind));
        let mut out = Network::new(self.mode, self.unit).expect("unit already validated");
        out.add_vertices(self.vertex_count).expect("fresh network");
        for e in edges {
            out.add_edge(e.u, e.v, e.kind)
                .expect("edges already validated");
        }
        out.frozen = self.frozen;
        out
    }

    /// Hop counts from `source` along length-carrying edges (breadth first).
    pub fn hop_distances(&self, source: VertexId) -> Result<Vec<Option<u64>>, NetworkError> {
        self.check_vertex(source)?;
        if self.has_negative_edges() {
            return Err(NetworkError::NegativeEdges);
        }
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].expect("queued vertices are labelled");
            for &id in &self.incident[x] {
                let e = &self.edges[id.0];
                if e.kind.length_units() == 0 {
                    continue;
                }
                let y = e.other(x).expect("incident edge");
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        Ok(dist)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub orientation: Orientation,
}

/// A walk: start vertex plus oriented edge steps. Validity is checked
/// against a network by [`Network::walk`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: VertexId,
    pub steps: Vec<Step>,
}

/// Which edge to use when a vertex pair is joined by several.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefer {
    /// Phase-carrying edge, falling back to a distance edge.
    Phase,
    /// Length-carrying edge, falling back to a phase edge.
    Distance,
}

impl Path {
    pub fn new(start: VertexId) -> Self {
        Path {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, edge: EdgeId, orientation: Orientation) {
        self.steps.push(Step { edge, orientation });
    }

    /// Builds the path visiting `vertices` in order, choosing one edge per
    /// consecutive pair according to `prefer`. Orientation follows the
    /// direction of travel.
    pub fn through_vertices(
        net: &Network,
        vertices: &[VertexId],
        prefer: Prefer,
    ) -> Result<Path, NetworkError> {
        let (&start, _) = vertices
            .split_first()
            .ok_or(NetworkError::UnknownVertex(usize::MAX))?;
        net.check_vertex(start)?;
        let mut path = Path::new(start);
        for pair in vertices.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            net.check_vertex(b)?;
            let candidates: Vec<EdgeId> = net.edges_between(a, b).collect();
            let phase: Vec<EdgeId> = candidates
                .iter()
                .copied()
                .filter(|&id| net.edges[id.0].kind.generator().is_some())
                .collect();
            if phase.len() > 1 {
                return Err(NetworkError::AmbiguousEdge(a, b));
            }
            let length = candidates
                .iter()
                .copied()
                .find(|&id| net.edges[id.0].kind.length_units() != 0);
            let chosen = match prefer {
                Prefer::Phase => phase.first().copied().or(length),
                Prefer::Distance => length.or(phase.first().copied()),
            }
            .ok_or(NetworkError::NoEdge(a, b))?;
            let orientation = if net.edges[chosen.0].u == a {
                Orientation::Forward
            } else {
                Orientation::Reverse
            };
            path.push(chosen, orientation);
        }
        Ok(path)
    }

    /// The same walk traversed backwards from its end vertex.
    pub fn reversed(&self, net: &Network) -> Result<Path, NetworkError> {
        let end = net.walk(self)?;
        Ok(Path {
            start: end,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step {
                    edge: s.edge,
                    orientation: s.orientation.flipped(),
                })
                .collect(),
        })
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, net: &Network, other: &Path) -> Result<Path, NetworkError> {
        let end = net.walk(self)?;
        if end != other.start {
            return Err(NetworkError::NotIncident {
                step: self.steps.len(),
                at: end,
            });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Path {
            start: self.start,
            steps,
        })
    }
}

impl Network {
    /// Follows `path` and returns its end vertex. A directed edge must be
    /// walked from its tail when `Forward` and from its head when `Reverse`;
    /// distance edges ignore orientation.
    pub fn walk(&self, path: &Path) -> Result<VertexId, NetworkError> {
        self.check_vertex(path.start)?;
        let mut at = path.start;
        for (k, step) in path.steps.iter().enumerate() {
            let e = self.edge(step.edge)?;
            let next = e
                .other(at)
                .ok_or(NetworkError::NotIncident { step: k, at })?;
            if e.kind.is_directed() {
                let expected_tail = match step.orientation {
                    Orientation::Forward => e.u,
                    Orientation::Reverse => e.v,
                };
                if at != expected_tail {
                    return Err(NetworkError::WrongOrientation {
                        step: k,
                        edge: step.edge.0,
                    });
                }
            }
            at = next;
        }
        Ok(at)
    }
}

/// Holonomy of `path`: the identity right-multiplied by `exp(η_i)` for each
/// forward traversal of a generator-`i` edge and by its inverse for each
/// reverse traversal. Distance edges contribute the identity.
pub fn path_holonomy(
    net: &Network,
    path: &Path,
    spec: &GroupSpec,
) -> Result<GroupElement, NetworkError> {
    net.walk(path)?;
    let mut acc = spec.identity().into_matrix();
    for step in &path.steps {
        let e = net.edge(step.edge)?;
        if let Some(i) = e.kind.generator() {
            let factor = match step.orientation {
                Orientation::Forward => spec.exp(i)?,
                Orientation::Reverse => spec.exp_inverse(i)?,
            };
            acc = &acc * factor.matrix();
        }
    }
    Ok(GroupElement::from_matrix(acc))
}

/// Net signed quantum count per generator along `path` (forward +1,
/// reverse −1). Exact integer bookkeeping behind [`path_holonomy`].
pub fn net_quanta(net: &Network, path: &Path, d: usize) -> Result<Vec<i64>, NetworkError> {
    net.walk(path)?;
    let mut quanta = vec![0i64; d];
    for step in &path.steps {
        let e = net.edge(step.edge)?;
        if let Some(i) = e.kind.generator() {
            let slot = quanta
                .get_mut(i)
                .ok_or(GroupError::IndexOutOfRange { index: i, d })?;
            *slot += match step.orientation {
                Orientation::Forward => 1,
                Orientation::Reverse => -1,
            };
        }
    }
    Ok(quanta)
}

/// Signed length `ℓ_u · (positive steps − negative steps)`.
pub fn path_length(net: &Network, path: &Path) -> Result<f64, NetworkError> {
    net.walk(path)?;
    let mut units = 0i64;
    for step in &path.steps {
        units += net.edge(step.edge)?.kind.length_units();
    }
    Ok(units as f64 * net.unit())
}

/// Shortest hop count between `u` and `v` along length-carrying edges, times
/// the unit length. `Ok(None)` when `v` is unreachable.
pub fn geodesic_distance(
    net: &Network,
    u: VertexId,
    v: VertexId,
) -> Result<Option<f64>, NetworkError> {
    net.check_vertex(v)?;
    let hops = net.hop_distances(u)?;
    Ok(hops[v].map(|h| h as f64 * net.unit()))
}

/// Holonomy around a closed path. For non-abelian groups the value depends on
/// the base point up to conjugation; its conjugacy class does not.
pub fn loop_holonomy(
    net: &Network,
    path: &Path,
    spec: &GroupSpec,
) -> Result<GroupElement, NetworkError> {
    let end = net.walk(path)?;
    if end != path.start {
        return Err(NetworkError::NotClosed {
            start: path.start,
            end,
        });
    }
    path_holonomy(net, path, spec)
}
