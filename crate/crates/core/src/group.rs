//! Holonomy groups given by a fixed basis of Lie-algebra generators.
//!
//! Every directed edge type of a network carries one generator `η_i`; walking
//! the edge forward multiplies the running holonomy by `exp(η_i)`. Group
//! elements are small unitary matrices (a `1×1` matrix for U(1)) and all
//! values live in one fixed trivialization, so open-path holonomies are
//! meaningful.
//!
//! Conventions fixed for the whole crate:
//! - traversal accumulates on the right: `H(p ⧺ q) = H(p)·H(q)`;
//! - generator words are generator-index-major, see [`word_element`];
//! - distances are Frobenius chord distances, see [`element_distance`].

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{Complex, DMatrix, SVD};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Entry tolerance for the anti-Hermitian check on generators.
pub const ANTI_HERMITIAN_TOL: f64 = 1e-12;
/// Relative singular-value cutoff for the linear-independence check.
pub const RANK_TOL: f64 = 1e-9;
/// Largest word set that [`enumerate_words`] will materialize.
pub const MAX_WORDS: u64 = 10_000_000;
/// Distances closer than this are treated as ties by [`approximate`].
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("group needs at least one generator")]
    NoGenerators,
    #[error("matrix dimension must be positive")]
    ZeroDimension,
    #[error("scale hint eps must be positive and finite, got {0}")]
    BadScale(f64),
    #[error("generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    GeneratorShape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("generator {index} is not anti-Hermitian (deviation {deviation:.3e})")]
    NotAntiHermitian { index: usize, deviation: f64 },
    #[error("generators are linearly dependent (rank {rank} < {count})")]
    Dependent { rank: usize, count: usize },
    #[error("generator index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("multi-index has {got} entries, group has d = {d}")]
    WrongArity { got: usize, d: usize },
    #[error("word enumeration would produce {count} elements (cap {MAX_WORDS})")]
    EnumerationTooLarge { count: u128 },
    #[error("sample count must be positive")]
    NoSamples,
}

/// Unitary matrix representing one holonomy value.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement(CMatrix);

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        GroupElement(CMatrix::identity(dim, dim))
    }

    /// Wraps a matrix without checking unitarity.
    pub fn from_matrix(m: CMatrix) -> Self {
        assert!(m.is_square(), "group elements are square matrices");
        GroupElement(m)
    }

    /// The U(1) element `e^{iθ}`.
    pub fn from_phase(theta: f64) -> Self {
        GroupElement(CMatrix::from_element(1, 1, C64::from_polar(1.0, theta)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// Phase angle in `(−π, π]` for 1×1 elements.
    pub fn phase(&self) -> Option<f64> {
        (self.dim() == 1).then(|| self.0[(0, 0)].arg())
    }

    /// Frobenius norm of `g·g† − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        (&self.0 * self.0.adjoint() - CMatrix::identity(n, n)).norm()
    }

    /// Nearest unitary matrix (polar factor); for U(1) this rescales to
    /// unit modulus. Intended for callers chaining more than 10^4 factors.
    pub fn renormalize(&self) -> GroupElement {
        if self.dim() == 1 {
            let z = self.0[(0, 0)];
            return GroupElement::from_phase(z.arg());
        }
        let svd = SVD::new(self.0.clone(), true, true);
        let u = svd.u.expect("u requested");
        let v_t = svd.v_t.expect("v_t requested");
        GroupElement(u * v_t)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim() {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.dim() {
                let z = self.0[(r, c)];
                if c > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.12} {:+.12}i", z.re, z.im)?;
            }
        }
        Ok(())
    }
}

fn check_dims(a: &GroupElement, b: &GroupElement) -> Result<(), GroupError> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(GroupError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        })
    }
}

/// Group product `a·b`.
pub fn compose(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
    check_dims(a, b)?;
    Ok(GroupElement(&a.0 * &b.0))
}

/// Conjugate transpose, the inverse of a unitary element.
pub fn inverse(a: &GroupElement) -> GroupElement {
    GroupElement(a.0.adjoint())
}

/// Frobenius chord distance `‖a − b‖_F`.
pub fn element_distance(a: &GroupElement, b: &GroupElement) -> Result<f64, GroupError> {
    check_dims(a, b)?;
    Ok((&a.0 - &b.0).norm())
}

/// Matrix exponential by scaling and squaring around a truncated Taylor
/// series. After scaling, `‖A‖₁ ≤ 1/2`, where 20 terms leave a remainder far
/// below double precision.
pub fn matrix_exp(a: &CMatrix) -> CMatrix {
    assert!(a.is_square(), "matrix_exp requires a square matrix");
    let n = a.nrows();
    if n == 1 {
        return CMatrix::from_element(1, 1, a[(0, 0)].exp());
    }
    let norm1 = (0..n)
        .map(|c| a.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let squarings = if norm1 > 0.5 {
        (norm1 / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * C64::new(2f64.powi(-squarings), 0.0);

    let mut result = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=20 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Holonomy group description: the matrix dimension, a real basis of
/// anti-Hermitian generators and the intended generator magnitude `ε′`.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    dim: usize,
    generators: Vec<CMatrix>,
    eps: f64,
    exps: Vec<GroupElement>,
    inv_exps: Vec<GroupElement>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.eps == other.eps && self.generators == other.generators
    }
}

impl GroupSpec {
    pub fn new(dim: usize, generators: Vec<CMatrix>, eps: f64) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::ZeroDimension);
        }
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(GroupError::BadScale(eps));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(GroupError::GeneratorShape {
                    index,
                    rows: g.nrows(),
                    cols: g.ncols(),
                    dim,
                });
            }
            let deviation = (g + g.adjoint())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if deviation > ANTI_HERMITIAN_TOL {
                return Err(GroupError::NotAntiHermitian { index, deviation });
            }
        }
        let rank = real_rank(&generators);
        if rank < generators.len() {
            return Err(GroupError::Dependent {
                rank,
                count: generators.len(),
            });
        }

        let exps: Vec<GroupElement> = generators
            .iter()
            .map(|g| GroupElement(matrix_exp(g)))
            .collect();
        let inv_exps = exps.iter().map(inverse).collect();
        Ok(GroupSpec {
            dim,
            generators,
            eps,
            exps,
            inv_exps,
        })
    }

    /// U(1) with the single generator `i·ε′`.
    pub fn u1(eps: f64) -> Result<Self, GroupError> {
        GroupSpec::new(
            1,
            vec![CMatrix::from_element(1, 1, C64::new(0.0, eps))],
            eps,
        )
    }

    /// SU(2) with generators `(ε′/2)·(iσ_x, iσ_y, iσ_z)`.
    pub fn su2(eps: f64) -> Result<Self, GroupError> {
        let h = eps / 2.0;
        let i = |x: f64| C64::new(0.0, x);
        let r = |x: f64| C64::new(x, 0.0);
        let z = C64::new(0.0, 0.0);
        let sx = CMatrix::from_row_slice(2, 2, &[z, i(h), i(h), z]);
        let sy = CMatrix::from_row_slice(2, 2, &[z, r(h), r(-h), z]);
        let sz = CMatrix::from_row_slice(2, 2, &[i(h), z, z, i(-h)]);
        GroupSpec::new(2, vec![sx, sy, sz], eps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators `d`.
    pub fn d(&self) -> usize {
        self.generators.len()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// True when this is exactly the `u1` shorthand group.
    pub fn is_u1_shorthand(&self) -> bool {
        self.dim == 1
            && self.generators.len() == 1
            && self.generators[0][(0, 0)] == C64::new(0.0, self.eps)
    }

    /// True when every generator is traceless, i.e. the words stay in SU(dim).
    pub fn is_traceless(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.trace().norm() <= ANTI_HERMITIAN_TOL)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.dim)
    }

    fn check_index(&self, index: usize) -> Result<(), GroupError> {
        if index < self.d() {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange { index, d: self.d() })
        }
    }

    /// `exp(η_i)` (cached at construction).
    pub fn exp(&self, index: usize) -> Result<&GroupElement, GroupError> {
        self.check_index(index)?;
        Ok(&self.exps[index])
    }

    /// `exp(η_i)⁻¹`.
    pub fn exp_inverse(&self, index: usize) -> Result<&GroupElement, GroupError> {
        self.check_index(index)?;
        Ok(&self.inv_exps[index])
    }

    /// `exp(η_i)^k` for signed `k`, multiplied out left to right.
    fn power(&self, index: usize, k: i64) -> CMatrix {
        let factor = if k >= 0 {
            &self.exps[index]
        } else {
            &self.inv_exps[index]
        };
        let mut acc = CMatrix::identity(self.dim, self.dim);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &factor.0;
        }
        acc
    }
}

fn real_rank(generators: &[CMatrix]) -> usize {
    let len = 2 * generators[0].len();
    let mut columns = DMatrix::<f64>::zeros(len, generators.len());
    for (j, g) in generators.iter().enumerate() {
        for (k, z) in g.iter().enumerate() {
            columns[(2 * k, j)] = z.re;
            columns[(2 * k + 1, j)] = z.im;
        }
    }
    let sv = columns.singular_values();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * largest).count()
}

/// Signed exponent vector `α` of a generator word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// Word norm `Σ|α_i|`.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `exp(η_i)`, or an index error.
pub fn exp_generator(spec: &GroupSpec, index: usize) -> Result<GroupElement, GroupError> {
    spec.exp(index).cloned()
}

/// The word `g′(α) = Π_i exp(η_i)^{α_i}`, blocks in increasing generator
/// order. Negative exponents use `exp(η_i)⁻¹`.
pub fn word_element(spec: &GroupSpec, alpha: &MultiIndex) -> Result<GroupElement, GroupError> {
    if alpha.len() != spec.d() {
        return Err(GroupError::WrongArity {
            got: alpha.len(),
            d: spec.d(),
        });
    }
    let mut acc = CMatrix::identity(spec.dim, spec.dim);
    for (i, &a) in alpha.0.iter().enumerate() {
        if a != 0 {
            acc = &acc * spec.power(i, a);
        }
    }
    Ok(GroupElement(acc))
}

/// Number of integer vectors in `Z^d` with `Σ|α_i| ≤ n`.
pub fn word_count(d: usize, n: u64) -> u128 {
    // Σ_k 2^k C(d,k) C(n,k)
    let mut total: u128 = 0;
    let mut c_d: u128 = 1;
    let mut c_n: u128 = 1;
    for k in 0..=(d as u128).min(n as u128) {
        total = total.saturating_add(
            (1u128 << k.min(127))
                .saturating_mul(c_d)
                .saturating_mul(c_n),
        );
        c_d = c_d * (d as u128 - k) / (k + 1);
        c_n = c_n * (n as u128 - k) / (k + 1);
    }
    total
}

/// All words of norm at most `n`, in lexicographic order of `α`.
pub fn enumerate_words(
    spec: &GroupSpec,
    n: u64,
) -> Result<Vec<(MultiIndex, GroupElement)>, GroupError> {
    let count = word_count(spec.d(), n);
    if count > MAX_WORDS as u128 {
        return Err(GroupError::EnumerationTooLarge { count });
    }
    let n = n as i64;
    let d = spec.d();
    let powers: Vec<Vec<CMatrix>> = (0..d)
        .map(|i| (-n..=n).map(|k| spec.power(i, k)).collect())
        .collect();

    let mut out = Vec::with_capacity(count as usize);
    let mut alpha = vec![0i64; d];
    fill_words(&powers, n, 0, n, &mut alpha, spec.dim, &mut out);
    Ok(out)
}

fn fill_words(
    powers: &[Vec<CMatrix>],
    n: i64,
    i: usize,
    budget: i64,
    alpha: &mut Vec<i64>,
    dim: usize,
    out: &mut Vec<(MultiIndex, GroupElement)>,
) {
    if i == alpha.len() {
        let mut acc = CMatrix::identity(dim, dim);
        for (k, &a) in alpha.iter().enumerate() {
            if a != 0 {
                acc = &acc * &powers[k][(a + n) as usize];
            }
        }
        out.push((MultiIndex(alpha.clone()), GroupElement(acc)));
        return;
    }
    for a in -budget..=budget {
        alpha[i] = a;
        fill_words(powers, n, i + 1, budget - a.abs(), alpha, dim, out);
    }
    alpha[i] = 0;
}

/// Deterministic pseudo-Haar unitaries: QR of a complex standard Gaussian
/// matrix with the phases of `R`'s diagonal folded into `Q`. Entries are
/// drawn row-major, real part first, from ChaCha8 seeded with `seed`. When
/// every generator is traceless the samples are projected into SU(dim) by
/// the principal `dim`-th root of the determinant.
pub fn random_elements(spec: &GroupSpec, samples: usize, seed: u64) -> Vec<GroupElement> {
    let dim = spec.dim;
    let project = spec.is_traceless();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let mut m = CMatrix::zeros(dim, dim);
            for r in 0..dim {
                for c in 0..dim {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    m[(r, c)] = C64::new(re, im);
                }
            }
            let qr = m.qr();
            let mut q = qr.q();
            let r = qr.r();
            for c in 0..dim {
                let d = r[(c, c)];
                let phase = if d.norm() > 0.0 {
                    d / d.norm()
                } else {
                    C64::new(1.0, 0.0)
                };
                for row in 0..dim {
                    q[(row, c)] *= phase;
                }
            }
            if project {
                let det = q.determinant();
                let root = C64::from_polar(1.0, -det.arg() / dim as f64);
                q *= root;
            }
            GroupElement(q)
        })
        .collect()
}

fn nearest<'a>(words: &'a [(MultiIndex, GroupElement)], g: &GroupElement) -> (&'a MultiIndex, f64) {
    let distances: Vec<f64> = words.iter().map(|(_, w)| (&w.0 - &g.0).norm()).collect();
    let best = distances.iter().cloned().fold(f64::INFINITY, f64::min);
    let (alpha, d) = words
        .iter()
        .zip(&distances)
        .filter(|(_, &d)| d <= best + TIE_TOL)
        .min_by(|(a, _), (b, _)| match a.0.norm().cmp(&b.0.norm()) {
            Ordering::Equal => a.0.cmp(&b.0),
            o => o,
        })
        .map(|((alpha, _), &d)| (alpha, d))
        .expect("word set contains the identity");
    (alpha, d)
}

/// Empirical covering radius of the words of norm `≤ n`: the largest distance
/// from any of `samples` seeded random elements to its nearest word. Never
/// increases with `n` for a fixed `(samples, seed)`.
pub fn mesh_cover_radius(
    spec: &GroupSpec,
    n: u64,
    samples: usize,
    seed: u64,
) -> Result<f64, GroupError> {
    if samples == 0 {
        return Err(GroupError::NoSamples);
    }
    let words = enumerate_words(spec, n)?;
    let targets = random_elements(spec, samples, seed);
    let radius = targets
        .par_iter()
        .map(|g| nearest(&words, g).1)
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(radius)
}

/// Word `α` with `Σ|α_i| ≤ n` closest to `g`. Distances within [`TIE_TOL`]
/// of the minimum tie; ties go to the smaller word norm, then to the
/// lexicographically smaller `α`.
pub fn approximate(spec: &GroupSpec, g: &GroupElement, n: u64) -> Result<MultiIndex, GroupError> {
    if g.dim() != spec.dim {
        return Err(GroupError::DimensionMismatch {
            left: spec.dim,
            right: g.dim(),
        });
    }
    let words = enumerate_words(spec, n)?;
    Ok(nearest(&words, g).0.clone())
}

/// Approximates many targets against one shared enumeration.
pub fn approximate_all(
    spec: &GroupSpec,
    targets: &[GroupElement],
    n: u64,
) -> Result<Vec<(MultiIndex, f64)>, GroupError> {
    if let Some(g) = targets.iter().find(|g| g.dim() != spec.dim) {
        return Err(GroupError::DimensionMismatch {
            left: spec.dim,
            right: g.dim(),
        });
    }
    let words = enumerate_words(spec, n)?;
    Ok(targets
        .par_iter()
        .map(|g| {
            let (alpha, d) = nearest(&words, g);
            (alpha.clone(), d)
        })
        .collect())
}
