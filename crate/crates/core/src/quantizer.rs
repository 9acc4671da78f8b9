//! Subdivision of a weighted 1-skeleton into unit edges.
//!
//! An edge of length `l` becomes a chain of `m = ⌊|l| / 2ε⌋` unit edges
//! (or the rounded count), each standing for `ℓ_u` of length. The default
//! unit `ℓ_u = 2ε` keeps `0 ≤ |l| − m·ℓ_u < 2ε` under the floor rule.

use crate::network::{EdgeKind, Mode, Network, NetworkError, Sign, VertexId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedComplex {
    pub vertex_count: usize,
    pub edges: Vec<WeightedEdge>,
}

impl WeightedComplex {
    pub fn new(vertex_count: usize) -> Self {
        WeightedComplex {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, length: f64) -> &mut Self {
        self.edges.push(WeightedEdge { u, v, length });
        self
    }

    pub fn validate(&self) -> Result<(), QuantizeError> {
        for (index, e) in self.edges.iter().enumerate() {
            for w in [e.u, e.v] {
                if w >= self.vertex_count {
                    return Err(QuantizeError::UnknownVertex { index, vertex: w });
                }
            }
            if e.u == e.v {
                return Err(QuantizeError::SelfLoop { index });
            }
            if !e.length.is_finite() || e.length == 0.0 {
                return Err(QuantizeError::BadLength {
                    index,
                    length: e.length,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountRule {
    Floor,
    Round,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroPolicy {
    ClampToOne,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizeRule {
    pub epsilon: f64,
    pub unit: f64,
    pub count: CountRule,
    pub zero: ZeroPolicy,
}

impl QuantizeRule {
    /// Floor rule, clamp-to-one, unit length `2ε`.
    pub fn new(epsilon: f64) -> Self {
        QuantizeRule {
            epsilon,
            unit: 2.0 * epsilon,
            count: CountRule::Floor,
            zero: ZeroPolicy::ClampToOne,
        }
    }

    pub fn with_unit(mut self, unit: f64) -> Self {
        self.unit = unit;
        self
    }

    pub fn with_count(mut self, count: CountRule) -> Self {
        self.count = count;
        self
    }

    pub fn with_zero(mut self, zero: ZeroPolicy) -> Self {
        self.zero = zero;
        self
    }

    fn validate(&self) -> Result<(), QuantizeError> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(QuantizeError::BadEpsilon(self.epsilon));
        }
        if !(self.unit.is_finite() && self.unit > 0.0) {
            return Err(QuantizeError::BadUnit(self.unit));
        }
        Ok(())
    }

    /// Raw unit count for a length, before the zero policy.
    pub fn raw_count(&self, length: f64) -> u64 {
        let ratio = length.abs() / (2.0 * self.epsilon);
        match self.count {
            CountRule::Floor => ratio.floor() as u64,
            CountRule::Round => ratio.round() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantizeError {
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("unit length must be positive and finite, got {0}")]
    BadUnit(f64),
    #[error("edge {index} references unknown vertex {vertex}")]
    UnknownVertex { index: usize, vertex: VertexId },
    #[error("edge {index} is a self-loop")]
    SelfLoop { index: usize },
    #[error("edge {index} has invalid length {length}")]
    BadLength { index: usize, length: f64 },
    #[error("edge {index} has negative length {length}; combined mode needs positive lengths")]
    NegativeInCombined { index: usize, length: f64 },
    #[error("edge {index} of length {length} quantizes to zero unit edges")]
    ZeroCount { index: usize, length: f64 },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Non-fatal diagnostic from [`subdivide`].
#[derive(Debug, Clone, PartialEq)]
pub enum QuantizeWarning {
    ClampedToOne { index: usize, length: f64 },
}

impl std::fmt::Display for QuantizeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuantizeWarning::ClampedToOne { index, length } => write!(
                f,
                "edge {index} of length {length} is shorter than 2*epsilon; kept as one unit edge"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Subdivision {
    pub network: Network,
    /// Unit count used for each input edge, in input order.
    pub counts: Vec<u64>,
    pub warnings: Vec<QuantizeWarning>,
}

/// Replaces every weighted edge by a chain of unit edges. Original vertex ids
/// are kept; fresh chain vertices follow in edge order, then chain position.
pub fn subdivide(
    complex: &WeightedComplex,
    rule: &QuantizeRule,
    mode: Mode,
) -> Result<Subdivision, QuantizeError> {
    rule.validate()?;
    complex.validate()?;
    let mut net = Network::new(mode, rule.unit)?;
    net.add_vertices(complex.vertex_count)?;
    let mut counts = Vec::with_capacity(complex.edges.len());
    let mut warnings = Vec::new();

    for (index, e) in complex.edges.iter().enumerate() {
        if mode == Mode::Combined && e.length < 0.0 {
            return Err(QuantizeError::NegativeInCombined {
                index,
                length: e.length,
            });
        }
        let mut m = rule.raw_count(e.length);
        if m == 0 {
            match rule.zero {
                ZeroPolicy::Error => {
                    return Err(QuantizeError::ZeroCount {
                        index,
                        length: e.length,
                    })
                }
                ZeroPolicy::ClampToOne => {
                    warnings.push(QuantizeWarning::ClampedToOne {
                        index,
                        length: e.length,
                    });
                    m = 1;
                }
            }
        }
        let kind = match mode {
            Mode::Dual => EdgeKind::Distance(Sign::of(e.length)),
            Mode::Combined => EdgeKind::Combined(0),
        };
        let interior = m as usize - 1;
        let first = net.add_vertices(interior)?;
        let chain = std::iter::once(e.u)
            .chain(first..first + interior)
            .chain(std::iter::once(e.v))
            .collect::<Vec<_>>();
        for pair in chain.windows(2) {
            net.add_edge(pair[0], pair[1], kind)?;
        }
        counts.push(m);
    }
    Ok(Subdivision {
        network: net,
        counts,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeReconstruction {
    pub length: f64,
    pub count: u64,
    /// `|m·ℓ_u − |l||`
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub edges: Vec<EdgeReconstruction>,
    pub max_error: f64,
    pub mean_error: f64,
}

/// Per-edge length reconstruction error. Counts follow the rule's zero
/// policy: clamped to one, or left at zero under the error policy.
pub fn reconstruction_error(
    complex: &WeightedComplex,
    rule: &QuantizeRule,
) -> ReconstructionReport {
    let edges: Vec<EdgeReconstruction> = complex
        .edges
        .iter()
        .map(|e| {
            let mut count = rule.raw_count(e.length);
            if count == 0 && rule.zero == ZeroPolicy::ClampToOne {
                count = 1;
            }
            EdgeReconstruction {
                length: e.length,
                count,
                error: (count as f64 * rule.unit - e.length.abs()).abs(),
            }
        })
        .collect();
    let max_error = edges.iter().map(|e| e.error).fold(0.0, f64::max);
    let mean_error = if edges.is_empty() {
        0.0
    } else {
        edges.iter().map(|e| e.error).sum::<f64>() / edges.len() as f64
    };
    ReconstructionReport {
        edges,
        max_error,
        mean_error,
    }
}
