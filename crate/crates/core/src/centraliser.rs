//! An exact matrix model of `(V, (.,.), e)` with the bases of `g_e`, `k_e` and
//! `p_e`, used to check the structure of `[k_e, k_e]` and index values by
//! brute force.
//!
//! `V` has basis `e^a w_i` for `1 <= i <= n`, `0 <= a < lambda_i`, ordered by
//! block and then by `a`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank_of_rows, Mat, Subspace, Q};
use crate::partition::{Involution, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    Xi,
    Zeta,
    Eta,
}

/// A generator label.
///
/// For `Xi` the third index is the power of `e` reached from `w_i`, so
/// `xi_i^{j,s}` sends `w_i` to `e^s w_j`. For `Zeta` and `Eta` it follows the
/// convention `zeta_i^{j,s} = xi_i^{j, lambda_j - 1 - s} + eps_{i,j,s} xi_{j'}^{i', lambda_i - 1 - s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Gen {
    pub kind: GenKind,
    pub i: usize,
    pub j: usize,
    pub s: i64,
}

impl Gen {
    pub fn xi(i: usize, j: usize, s: i64) -> Gen {
        Gen {
            kind: GenKind::Xi,
            i,
            j,
            s,
        }
    }

    pub fn zeta(i: usize, j: usize, s: i64) -> Gen {
        Gen {
            kind: GenKind::Zeta,
            i,
            j,
            s,
        }
    }

    pub fn eta(i: usize, j: usize, s: i64) -> Gen {
        Gen {
            kind: GenKind::Eta,
            i,
            j,
            s,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::Xi => "xi",
            GenKind::Zeta => "zeta",
            GenKind::Eta => "eta",
        };
        write!(f, "{name}_{}^{{{},{}}}", self.i, self.j, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub gen: Gen,
    pub matrix: Mat<i64>,
}

#[derive(Clone, Debug, Default)]
pub struct KBasis {
    pub h: Vec<BasisElement>,
    pub n0: Vec<BasisElement>,
    pub n1: Vec<BasisElement>,
    /// The elements of `n1` labelled by tightly nested triples.
    pub n1_minus: Vec<BasisElement>,
}

impl KBasis {
    pub fn all(&self) -> impl Iterator<Item = &BasisElement> {
        self.h.iter().chain(&self.n0).chain(&self.n1)
    }

    pub fn len(&self) -> usize {
        self.h.len() + self.n0.len() + self.n1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("decomposition of [k_e, k_e] fails at {component}")]
pub struct DecompositionMismatch {
    pub component: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub dim_k_e: usize,
    pub dim_derived: usize,
    pub dim_n0: usize,
    pub dim_n1_plus: usize,
    pub dim_h0_plus: usize,
    pub dim_h1: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexSpace {
    /// `g_e` acting on `g_e^*`.
    GOnGDual,
    /// `k_e` acting on `k_e^*`.
    KOnKDual,
    /// `k_e` acting on `p_e^*`.
    KOnPDual,
}

/// Coordinates on the sampled functionals lie in `[-BOUND, BOUND]`.
pub const BOUND: i64 = 100;
pub const DEFAULT_TRIALS: usize = 8;

/// The generator for one sampling trial: stream `trial` of the seed, so each
/// trial is reproducible on its own.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub struct Realization {
    p: Partition,
    inv: Involution,
    offsets: Vec<usize>,
    e: Mat<i64>,
    x: Mat<i64>,
}

impl Realization {
    pub fn new(p: &Partition) -> Realization {
        let n = p.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for &v in p.parts() {
            offsets.push(acc);
            acc += v;
        }
        offsets.push(acc);
        let inv = p.involution();
        let mut r = Realization {
            p: p.clone(),
            inv,
            offsets,
            e: Mat::zeros(acc),
            x: Mat::zeros(acc),
        };
        for i in 1..=n {
            let lam = p.lam(i);
            let ip = r.inv.of(i);
            let w = r.varpi(i, ip);
            for a in 0..lam {
                if a + 1 < lam {
                    r.e.set(r.index(i, a + 1), r.index(i, a), 1);
                }
                let sign = if a % 2 == 0 { w } else { -w };
                r.x.set(r.index(i, a), r.index(ip, lam - 1 - a), sign);
            }
        }
        r
    }

    pub fn partition(&self) -> &Partition {
        &self.p
    }

    pub fn involution(&self) -> &Involution {
        &self.inv
    }

    /// `N`.
    pub fn dim(&self) -> usize {
        self.offsets[self.offsets.len() - 1]
    }

    /// Position of `e^a w_i`.
    pub fn index(&self, i: usize, a: usize) -> usize {
        self.offsets[i - 1] + a
    }

    /// Labels `(i, a)` in basis order.
    pub fn basis_labels(&self) -> Vec<(usize, usize)> {
        (1..=self.p.len())
            .flat_map(|i| (0..self.p.lam(i)).map(move |a| (i, a)))
            .collect()
    }

    pub fn e(&self) -> &Mat<i64> {
        &self.e
    }

    pub fn gram(&self) -> &Mat<i64> {
        &self.x
    }

    /// `1` when `i <= j`, else `-1`.
    pub fn varpi(&self, i: usize, j: usize) -> i64 {
        if i <= j {
            1
        } else {
            -1
        }
    }

    pub fn prime(&self, i: usize) -> usize {
        self.inv.of(i)
    }

    fn in_range(&self, i: usize) -> bool {
        i >= 1 && i <= self.p.len()
    }

    /// `eps_{i,j,s} = (-1)^{lambda_j - s} varpi_{i<=i'} varpi_{j<=j'}`.
    pub fn eps_sign(&self, i: usize, j: usize, s: i64) -> i64 {
        let parity = if (self.p.lam(j) as i64 - s).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        parity * self.varpi(i, self.prime(i)) * self.varpi(j, self.prime(j))
    }

    pub fn xi_legal(&self, i: usize, j: usize, t: i64) -> bool {
        if !self.in_range(i) || !self.in_range(j) {
            return false;
        }
        let li = self.p.lam(i) as i64;
        let lj = self.p.lam(j) as i64;
        t < lj && t >= lj - li.min(lj)
    }

    /// `xi_i^{j,t}`: `e^u w_i -> e^{t+u} w_j`; zero off the legal range.
    pub fn xi(&self, i: usize, j: usize, t: i64) -> Mat<i64> {
        let mut m = Mat::zeros(self.dim());
        if self.xi_legal(i, j, t) {
            let t = t as usize;
            for u in 0..self.p.lam(i) {
                if t + u < self.p.lam(j) {
                    m.set(self.index(j, t + u), self.index(i, u), 1);
                }
            }
        }
        m
    }

    fn xi_pair(&self, i: usize, j: usize, s: i64, sign: i64) -> Mat<i64> {
        if !self.in_range(i) || !self.in_range(j) {
            return Mat::zeros(self.dim());
        }
        let lead = self.xi(i, j, self.p.lam(j) as i64 - 1 - s);
        let other = self.xi(self.prime(j), self.prime(i), self.p.lam(i) as i64 - 1 - s);
        lead.add(&other.scale(&(sign * self.eps_sign(i, j, s))))
    }

    pub fn zeta(&self, i: usize, j: usize, s: i64) -> Mat<i64> {
        self.xi_pair(i, j, s, 1)
    }

    pub fn eta(&self, i: usize, j: usize, s: i64) -> Mat<i64> {
        self.xi_pair(i, j, s, -1)
    }

    pub fn matrix_of(&self, g: Gen) -> Mat<i64> {
        match g.kind {
            GenKind::Xi => self.xi(g.i, g.j, g.s),
            GenKind::Zeta => self.zeta(g.i, g.j, g.s),
            GenKind::Eta => self.eta(g.i, g.j, g.s),
        }
    }

    fn element(&self, gen: Gen) -> BasisElement {
        BasisElement {
            gen,
            matrix: self.matrix_of(gen),
        }
    }

    /// `sigma(M) = -X^{-1} M^T X`, using `X^{-1} = X^T`.
    pub fn sigma(&self, m: &Mat<i64>) -> Mat<i64> {
        self.x
            .transpose()
            .mul(&m.transpose())
            .mul(&self.x)
            .scale(&-1)
    }

    /// `sigma` with a genuine inverse, for arbitrary rational matrices.
    pub fn sigma_rational(&self, m: &Mat<Q>) -> Mat<Q> {
        let x = self.x.to_rational();
        let inv = x.inverse().expect("the Gram matrix is invertible");
        inv.mul(&m.transpose()).mul(&x).scale(&crate::linalg::q(-1))
    }

    /// The structural identities of the model: `X X^T = 1`, `X^T = eps X`,
    /// `E^T X + X E = 0`.
    pub fn check_form(&self) -> bool {
        let n = self.dim();
        let eps = self.p.eps().value();
        self.x.mul(&self.x.transpose()) == Mat::identity(n)
            && self.x.transpose() == self.x.scale(&eps)
            && self
                .e
                .transpose()
                .mul(&self.x)
                .add(&self.x.mul(&self.e))
                .is_zero()
    }

    /// All legal `xi_i^{j,t}`.
    pub fn g_basis(&self) -> Vec<BasisElement> {
        let n = self.p.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let lj = self.p.lam(j) as i64;
                let m = self.p.lam(i).min(self.p.lam(j)) as i64;
                for t in lj - m..lj {
                    out.push(self.element(Gen::xi(i, j, t)));
                }
            }
        }
        out
    }

    pub fn is_tightly_nested(&self, i: usize, j: usize, s: i64) -> bool {
        let p = &self.p;
        j == i + 1
            && s == p.lam(i + 1) as i64 - 1
            && p.is_fixed(i)
            && p.is_fixed(i + 1)
            && (i == 1 || p.lam(i - 1) != p.lam(i))
            && p.lam(i + 2) != p.lam(i + 1)
    }

    pub fn k_basis(&self) -> KBasis {
        let n = self.p.len();
        let mut b = KBasis::default();
        for i in 1..=n {
            let ip = self.prime(i);
            let lam = self.p.lam(i) as i64;
            for s in 0..lam {
                if i < ip || (i == ip && (lam - s) % 2 == 0) {
                    b.h.push(self.element(Gen::zeta(i, i, s)));
                }
                if i != ip && (lam - s) % 2 == 1 {
                    b.n0.push(self.element(Gen::zeta(i, ip, s)));
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if j == self.prime(i) {
                    continue;
                }
                for s in 0..self.p.lam(j) as i64 {
                    let el = self.element(Gen::zeta(i, j, s));
                    if self.is_tightly_nested(i, j, s) {
                        b.n1_minus.push(el.clone());
                    }
                    b.n1.push(el);
                }
            }
        }
        b
    }

    /// The second label of the pair `{xi_i^{j,.}, xi_{j'}^{i',.}}` behind a
    /// `zeta` or `eta` label, as an `(i, j, s)` triple.
    fn partner(&self, i: usize, j: usize, s: i64) -> (usize, usize, i64) {
        (self.prime(j), self.prime(i), s)
    }

    /// A basis of `p_e`: canonical `eta` labels with nonzero matrices.
    pub fn p_basis(&self) -> Vec<BasisElement> {
        let n = self.p.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let m = self.p.lam(i).min(self.p.lam(j)) as i64;
                for s in 0..m {
                    if self.partner(i, j, s) < (i, j, s) {
                        continue;
                    }
                    let el = self.element(Gen::eta(i, j, s));
                    if !el.matrix.is_zero() {
                        out.push(el);
                    }
                }
            }
        }
        out
    }

    /// The `xi` label read off by the coordinate functional of a basis
    /// element, and the weight making that reading integral after doubling.
    fn coordinate(&self, g: Gen) -> (usize, usize, i64, i64) {
        match g.kind {
            GenKind::Xi => (g.i, g.j, g.s, 2),
            GenKind::Zeta | GenKind::Eta => {
                let t = self.p.lam(g.j) as i64 - 1 - g.s;
                let paired = self.partner(g.i, g.j, g.s) == (g.i, g.j, g.s);
                (g.i, g.j, t, if paired { 1 } else { 2 })
            }
        }
    }

    fn read(&self, m: &Mat<i64>, coord: (usize, usize, i64, i64)) -> i64 {
        let (i, j, t, w) = coord;
        w * *m.get(self.index(j, t as usize), self.index(i, 0))
    }

    /// Minimum over `trials` random functionals of the stabiliser dimension.
    pub fn generic_index(&self, space: IndexSpace, trials: usize, seed: u64) -> usize {
        self.sampled_stabilisers(space, trials, seed)
            .into_iter()
            .min()
            .unwrap_or(0)
    }

    /// Stabiliser dimension for each trial.
    pub fn sampled_stabilisers(&self, space: IndexSpace, trials: usize, seed: u64) -> Vec<usize> {
        let (acting, module): (Vec<BasisElement>, Vec<BasisElement>) = match space {
            IndexSpace::GOnGDual => (self.g_basis(), self.g_basis()),
            IndexSpace::KOnKDual => {
                let k: Vec<_> = self.k_basis().all().cloned().collect();
                (k.clone(), k)
            }
            IndexSpace::KOnPDual => (self.k_basis().all().cloned().collect(), self.p_basis()),
        };
        let coords: Vec<_> = module.iter().map(|b| self.coordinate(b.gen)).collect();
        let brackets: Vec<Vec<Mat<i64>>> = acting
            .iter()
            .map(|x| module.iter().map(|y| x.matrix.bracket(&y.matrix)).collect())
            .collect();
        (0..trials)
            .map(|trial| {
                let mut rng = trial_rng(seed, trial);
                let gamma: Vec<i64> = coords
                    .iter()
                    .map(|_| rng.random_range(-BOUND..=BOUND))
                    .collect();
                let rows: Vec<Vec<i64>> = brackets
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|m| {
                                coords
                                    .iter()
                                    .zip(&gamma)
                                    .map(|(&c, &g)| g * self.read(m, c))
                                    .sum()
                            })
                            .collect()
                    })
                    .collect();
                acting.len() - rank_of_rows(&rows)
            })
            .collect()
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let basis: Vec<_> = self.k_basis().all().cloned().collect();
        let mut d = Subspace::new();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                d.insert(x.matrix.bracket(&y.matrix).flatten());
            }
        }
        d
    }

    /// `h_0^+`, built from the ladders `a_{j,m}` and augmentation kernels.
    pub fn h0_plus(&self) -> Subspace {
        let p = &self.p;
        let n = p.len();
        let mut out = Subspace::new();
        for m in 1..=p.lam(1) / 2 {
            let mut a = vec![1];
            a.extend((2..=n + 1).filter(|&k| p.gap(k - 1) >= 2 * m as i64));
            for (block, &start) in a.iter().enumerate() {
                let end = a.get(block + 1).copied().unwrap_or(n + 1);
                let vectors: Vec<_> = (start..end)
                    .filter(|&i| i <= self.prime(i) && p.lam(i) >= 2 * m)
                    .map(|i| self.zeta(i, i, (p.lam(i) - 2 * m) as i64).flatten())
                    .collect();
                if block + 1 == a.len() {
                    for v in vectors {
                        out.insert(v);
                    }
                } else {
                    for w in vectors.windows(2) {
                        let mut diff = w[1].clone();
                        for (k, x) in &w[0] {
                            let e = diff.entry(*k).or_insert_with(|| crate::linalg::q(0));
                            *e -= x;
                        }
                        diff.retain(|_, x| *x != crate::linalg::q(0));
                        out.insert(diff);
                    }
                }
            }
        }
        out
    }

    /// Checks `[k_e, k_e] = N_0 + N_1^+ + h_0^+ + h_1` and its three
    /// component-wise intersections.
    pub fn verify_decomposition(&self) -> Result<DecompositionReport, DecompositionMismatch> {
        let kb = self.k_basis();
        let d = self.derived_subalgebra();
        let flat = |v: &[BasisElement]| Subspace::spanned_by(v.iter().map(|b| b.matrix.flatten()));
        let n0 = flat(&kb.n0);
        let n1 = flat(&kb.n1);
        let minus: Vec<Gen> = kb.n1_minus.iter().map(|b| b.gen).collect();
        let plus: Vec<BasisElement> = kb
            .n1
            .iter()
            .filter(|b| !minus.contains(&b.gen))
            .cloned()
            .collect();
        let n1_plus = flat(&plus);
        let h = flat(&kb.h);
        let (h0, h1): (Vec<BasisElement>, Vec<BasisElement>) =
            kb.h.iter()
                .cloned()
                .partition(|b| (self.p.lam(b.gen.i) as i64 - b.gen.s) % 2 == 0);
        let h1 = flat(&h1);
        let h0 = flat(&h0);
        let h0_plus = self.h0_plus();
        let mismatch = |component| Err(DecompositionMismatch { component });

        if !d.contains_all(&n0) {
            return mismatch("N0");
        }
        if n1.intersection_dim(&d) != n1_plus.dim() || !d.contains_all(&n1_plus) {
            return mismatch("N1");
        }
        let h_target = h1.sum(&h0_plus);
        if !h0.contains_all(&h0_plus)
            || h.intersection_dim(&d) != h_target.dim()
            || !d.contains_all(&h_target)
        {
            return mismatch("H");
        }
        let total = n0.sum(&n1_plus).sum(&h_target);
        let direct = n0.dim() + n1_plus.dim() + h0_plus.dim() + h1.dim();
        if total.dim() != direct || !total.same_as(&d) {
            return mismatch("sum");
        }
        Ok(DecompositionReport {
            dim_k_e: kb.len(),
            dim_derived: d.dim(),
            dim_n0: n0.dim(),
            dim_n1_plus: n1_plus.dim(),
            dim_h0_plus: h0_plus.dim(),
            dim_h1: h1.dim(),
        })
    }

    /// The right-hand side of the product rule for `[zeta_i^{j,s}, zeta_k^{l,r}]`.
    pub fn zeta_product(&self, a: Gen, b: Gen) -> Mat<i64> {
        let (i, j, s) = (a.i, a.j, a.s);
        let (k, l, r) = (b.i, b.j, b.s);
        let li = self.p.lam(i) as i64;
        let lj = self.p.lam(j) as i64;
        let lo = r + s - (li - 1);
        let hi = r + s - (lj - 1);
        let mut m = Mat::zeros(self.dim());
        if i == l {
            m = m.add(&self.zeta(k, j, lo));
        }
        if j == k {
            m = m.sub(&self.zeta(i, l, hi));
        }
        let e = self.eps_sign(k, l, r);
        if k == self.prime(i) {
            m = m.add(&self.zeta(self.prime(l), j, lo).scale(&e));
        }
        if j == self.prime(l) {
            m = m.sub(&self.zeta(i, self.prime(k), hi).scale(&e));
        }
        m
    }
}
