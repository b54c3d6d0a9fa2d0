//! The invariants `x_1, ..., x_N` of `G_e` on `g_e^*`, their behaviour under
//! `sigma` and their restrictions to `k_e^*` and `p_e^*`.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centraliser::{trial_rng, Gen, GenKind, Realization, BOUND};
use crate::linalg::{q, Mat, Q};
use crate::partition::Partition;
use crate::poly::SparsePolynomial;

/// Compositions `mu` of `lambda` with `|mu| = r` and exactly `d_r` nonzero
/// entries, `0 <= mu_k <= lambda_k`.
pub fn compositions(p: &Partition, r: usize) -> Vec<Vec<usize>> {
    let Some(&d) = p.invariant_degrees().get(r.wrapping_sub(1)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p.len());
    fill(p.parts(), r, d, &mut cur, &mut out);
    out
}

fn fill(
    parts: &[usize],
    rest: usize,
    nonzero: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let k = cur.len();
    if k == parts.len() {
        if rest == 0 && nonzero == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let remaining = parts.len() - k;
    if nonzero > remaining {
        return;
    }
    if nonzero < remaining {
        cur.push(0);
        fill(parts, rest, nonzero, cur, out);
        cur.pop();
    }
    if nonzero > 0 {
        for v in 1..=parts[k].min(rest) {
            cur.push(v);
            fill(parts, rest - v, nonzero - 1, cur, out);
            cur.pop();
        }
    }
}

fn permutation_sign(w: &[usize]) -> i64 {
    let inversions = (0..w.len())
        .flat_map(|a| (a + 1..w.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| w[a] > w[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `x_r = sum over (w, mu) of sgn(w) xi_{i_1}^{i_{w1}, s_1} ... xi_{i_d}^{i_{wd}, s_d}`.
pub fn elementary_invariant(p: &Partition, r: usize) -> SparsePolynomial {
    let real = Realization::new(p);
    let mut out = SparsePolynomial::zero();
    for mu in compositions(p, r) {
        let support: Vec<usize> = (0..mu.len())
            .filter(|&k| mu[k] > 0)
            .map(|k| k + 1)
            .collect();
        let d = support.len();
        'perm: for w in (0..d).permutations(d) {
            let mut mono = Vec::with_capacity(d);
            for (k, &i) in support.iter().enumerate() {
                let j = support[w[k]];
                let s = p.lam(j) as i64 - p.lam(i) as i64 + mu[i - 1] as i64 - 1;
                if !real.xi_legal(i, j, s) {
                    continue 'perm;
                }
                mono.push(Gen::xi(i, j, s));
            }
            out.add_term(mono, q(permutation_sign(&w)));
        }
    }
    out
}

/// The image of a `xi` generator under `sigma`.
pub fn sigma_generator(real: &Realization, g: Gen) -> (Gen, i64) {
    debug_assert_eq!(g.kind, GenKind::Xi);
    let p = real.partition();
    let s = p.lam(g.j) as i64 - 1 - g.s;
    let image = Gen::xi(real.prime(g.j), real.prime(g.i), p.lam(g.i) as i64 - 1 - s);
    (image, real.eps_sign(g.i, g.j, s))
}

pub fn apply_sigma(p: &Partition, poly: &SparsePolynomial) -> SparsePolynomial {
    let real = Realization::new(p);
    poly.substitute(|g| {
        let (h, e) = sigma_generator(&real, g);
        Some((h, q(e)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Restriction to `k_e^*`, in `zeta` generators.
    K,
    /// Restriction to `p_e^*`, in `eta` generators.
    P,
}

/// Restricts a polynomial in `xi` generators to `k_e^*` or `p_e^*`.
///
/// Each `xi_i^{j, lambda_j - 1 - s}` becomes half of `zeta_i^{j,s}` (resp.
/// `eta_i^{j,s}`), rewritten in the basis labels.
pub fn restrict(p: &Partition, poly: &SparsePolynomial, side: Side) -> SparsePolynomial {
    let real = Realization::new(p);
    let k_labels: HashSet<(usize, usize, i64)> = real
        .k_basis()
        .all()
        .map(|b| (b.gen.i, b.gen.j, b.gen.s))
        .collect();
    let half = q(1) / q(2);
    poly.substitute(|g| {
        let (i, j) = (g.i, g.j);
        let s = p.lam(j) as i64 - 1 - g.s;
        let partner = (real.prime(j), real.prime(i), s);
        let e = real.eps_sign(i, j, s);
        match side {
            Side::K => {
                if k_labels.contains(&(i, j, s)) {
                    Some((Gen::zeta(i, j, s), half.clone()))
                } else if k_labels.contains(&partner) {
                    Some((Gen::zeta(partner.0, partner.1, s), half.clone() * q(e)))
                } else {
                    None
                }
            }
            Side::P => {
                if partner == (i, j, s) {
                    (e == -1).then(|| (Gen::eta(i, j, s), half.clone()))
                } else if (i, j, s) < partner {
                    Some((Gen::eta(i, j, s), half.clone()))
                } else {
                    Some((Gen::eta(partner.0, partner.1, s), half.clone() * q(-e)))
                }
            }
        }
    })
}

fn legal_xi(real: &Realization) -> Vec<Gen> {
    real.g_basis().into_iter().map(|b| b.gen).collect()
}

/// The functional `gamma o Ad(g^{-1})` in `xi` coordinates.
fn transport(real: &Realization, gens: &[Gen], gamma: &[Q], g: &Mat<Q>, g_inv: &Mat<Q>) -> Vec<Q> {
    gens.iter()
        .map(|&b| {
            let m = g_inv.mul(&real.xi(b.i, b.j, b.s).to_rational()).mul(g);
            gens.iter()
                .zip(gamma)
                .map(|(c, x)| {
                    let coord = m.get(real.index(c.j, c.s as usize), real.index(c.i, 0));
                    coord * x
                })
                .fold(Q::zero(), |acc, v| acc + v)
        })
        .collect()
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.random_range(1..=5);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Samples functionals and elements of `G_e` and compares `poly` at `gamma`
/// and `gamma o Ad(g^{-1})`. Even trials use a unipotent `1 + t xi`, odd
/// trials a block-scalar torus element.
pub fn polynomial_is_invariant(
    p: &Partition,
    poly: &SparsePolynomial,
    trials: usize,
    seed: u64,
) -> bool {
    let real = Realization::new(p);
    let n = real.dim();
    let gens = legal_xi(&real);
    let nilpotent: Vec<Gen> = gens
        .iter()
        .copied()
        .filter(|g| g.i != g.j || g.s > 0)
        .collect();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let gamma: Vec<Q> = gens
            .iter()
            .map(|_| q(rng.random_range(-BOUND..=BOUND)))
            .collect();
        let g = if trial % 2 == 0 && !nilpotent.is_empty() {
            let x = nilpotent[rng.random_range(0..nilpotent.len())];
            let t = q(nonzero_small(&mut rng));
            Mat::identity(n).add(&real.xi(x.i, x.j, x.s).to_rational().scale(&t))
        } else {
            let mut m = Mat::zeros(n);
            for i in 1..=p.len() {
                let c = q(nonzero_small(&mut rng));
                for a in 0..p.lam(i) {
                    let k = real.index(i, a);
                    m.set(k, k, c.clone());
                }
            }
            m
        };
        let g_inv = g.inverse().expect("sampled group elements are invertible");
        let moved = transport(&real, &gens, &gamma, &g, &g_inv);
        let at = |values: &[Q]| {
            poly.eval(|h| {
                gens.iter()
                    .position(|&x| x == h)
                    .map_or_else(Q::zero, |k| values[k].clone())
            })
        };
        if at(&gamma) != at(&moved) {
            return false;
        }
    }
    true
}

pub fn check_invariance(p: &Partition, r: usize, trials: usize, seed: u64) -> bool {
    polynomial_is_invariant(p, &elementary_invariant(p, r), trials, seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCounts {
    /// `|{1 <= r <= N : r even}|`.
    pub even_count: usize,
    /// `|{1 <= r <= N : r + d_r even}|`.
    pub mixed_count: usize,
}

pub fn invariant_counts(p: &Partition) -> InvariantCounts {
    let d = p.invariant_degrees();
    InvariantCounts {
        even_count: p.size() / 2,
        mixed_count: d
            .iter()
            .enumerate()
            .filter(|(k, &dr)| (k + 1 + dr) % 2 == 0)
            .count(),
    }
}

/// Evaluates a polynomial in `xi` generators at a functional given on the
/// legal `xi` labels.
pub fn evaluate(poly: &SparsePolynomial, gamma: impl Fn(Gen) -> Q) -> Q {
    poly.eval(|g| {
        if g.kind == GenKind::Xi {
            gamma(g)
        } else {
            Q::zero()
        }
    })
}
