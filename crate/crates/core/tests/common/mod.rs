#![allow(dead_code)]

use holonet_core::group::random_elements;
use holonet_core::GroupSpec;

/// Covering radius for SU(2), generators (ε′/2)·iσ, n = 6, 100 samples,
/// seed 7, ε′ = 0.2. Frozen from [`su2_oracle_radius`].
pub const SU2_MESH_RADIUS: f64 = 2.559_254_497_352_548;

type M2 = [[(f64, f64); 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let (mut re, mut im) = (0.0, 0.0);
            for k in 0..2 {
                let (ar, ai) = a[r][k];
                let (br, bi) = b[k][c];
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            out[r][c] = (re, im);
        }
    }
    out
}

/// `exp(t·iσ_axis) = cos t·I + i sin t·σ_axis`.
fn pauli_exp(axis: usize, t: f64) -> M2 {
    let (c, s) = (t.cos(), t.sin());
    match axis {
        0 => [[(c, 0.0), (0.0, s)], [(0.0, s), (c, 0.0)]],
        1 => [[(c, 0.0), (s, 0.0)], [(-s, 0.0), (c, 0.0)]],
        _ => [[(c, s), (0.0, 0.0)], [(0.0, 0.0), (c, -s)]],
    }
}

fn su2_words(eps: f64, n: i64) -> Vec<M2> {
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -(n - a.abs())..=(n - a.abs()) {
            let rest = n - a.abs() - b.abs();
            for c in -rest..=rest {
                let w = [a, b, c]
                    .iter()
                    .enumerate()
                    .map(|(axis, &k)| pauli_exp(axis, k as f64 * eps / 2.0))
                    .fold(pauli_exp(0, 0.0), |acc, m| mul(&acc, &m));
                out.push(w);
            }
        }
    }
    out
}

fn frob(a: &M2, b: &M2) -> f64 {
    let mut s = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let dr = a[r][c].0 - b[r][c].0;
            let di = a[r][c].1 - b[r][c].1;
            s += dr * dr + di * di;
        }
    }
    s.sqrt()
}

/// Brute force over all `|α|₁ ≤ n` with closed-form Pauli exponentials.
/// Targets come from the library sampler, so only the enumeration and the
/// group products are independent.
pub fn su2_oracle_radius(eps: f64, n: i64, samples: usize, seed: u64) -> (f64, usize) {
    let spec = GroupSpec::su2(eps).unwrap();
    let words = su2_words(eps, n);
    let radius = random_elements(&spec, samples, seed)
        .iter()
        .map(|g| {
            let m = g.matrix();
            let t: M2 = [
                [(m[(0, 0)].re, m[(0, 0)].im), (m[(0, 1)].re, m[(0, 1)].im)],
                [(m[(1, 0)].re, m[(1, 0)].im), (m[(1, 1)].re, m[(1, 1)].im)],
            ];
            words
                .iter()
                .map(|w| frob(w, &t))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    (radius, words.len())
}

use holonet_core::network::Step;
use holonet_core::{EdgeKind, Mode, Network, Orientation, Path, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Frozen dual-mode network: a spanning chain of phase edges plus random
/// extra phase and distance edges.
pub fn random_network(
    seed: u64,
    d: usize,
    vertices: usize,
    extra: usize,
    negative: bool,
) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = Network::new(Mode::Dual, 0.25).unwrap();
    net.add_vertices(vertices).unwrap();
    for v in 1..vertices {
        let _ = net.add_edge(v - 1, v, EdgeKind::Phase(rng.random_range(0..d)));
    }
    for _ in 0..extra {
        let u = rng.random_range(0..vertices);
        let v = rng.random_range(0..vertices);
        if u == v {
            continue;
        }
        let kind = if rng.random_bool(0.5) {
            let sign = if negative && rng.random_bool(0.3) {
                Sign::Negative
            } else {
                Sign::Positive
            };
            EdgeKind::Distance(sign)
        } else {
            EdgeKind::Phase(rng.random_range(0..d))
        };
        let _ = net.add_edge(u, v, kind);
    }
    net.freeze();
    net
}

/// Random walk that always traverses edges in a legal orientation.
pub fn random_walk(seed: u64, net: &Network, start: usize, len: usize) -> Path {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut path = Path::new(start);
    let mut at = start;
    for _ in 0..len {
        let inc = net.incident(at);
        if inc.is_empty() {
            break;
        }
        let id = inc[rng.random_range(0..inc.len())];
        let e = net.edge(id).unwrap();
        let orientation = if e.u == at {
            Orientation::Forward
        } else {
            Orientation::Reverse
        };
        path.steps.push(Step {
            edge: id,
            orientation,
        });
        at = e.other(at).unwrap();
    }
    path
}
