//! Exhaustive theorem sweeps over all partitions up to a given size.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::centraliser::{IndexSpace, Realization};
use crate::invariants::{
    apply_sigma, check_invariance, elementary_invariant, invariant_counts, restrict, Side,
};
use crate::ks;
use crate::linalg::{q, Subspace};
use crate::orbits::{induce_step, Label, NilpotentOrbit};
use crate::partition::{Partition, Sign};

pub const MATRIX_CAP: usize = 10;
pub const INVARIANTS_CAP: usize = 6;
pub const INDEX_CAP: usize = 10;
pub const INVARIANCE_TRIALS: usize = 20;
pub const INDEX_TRIALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    ZMax,
    CVsZ,
    PhiUnique,
    InduceInverse,
    Matrix,
    Invariants,
    Index,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::ZMax,
        Check::CVsZ,
        Check::PhiUnique,
        Check::InduceInverse,
        Check::Matrix,
        Check::Invariants,
        Check::Index,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ZMax => "z-max",
            Check::CVsZ => "c-vs-z",
            Check::PhiUnique => "phi-unique",
            Check::InduceInverse => "induce-inverse",
            Check::Matrix => "matrix",
            Check::Invariants => "invariants",
            Check::Index => "index",
        }
    }

    /// Largest `N` the check is run at, if capped.
    pub fn cap(self) -> Option<usize> {
        match self {
            Check::Matrix => Some(MATRIX_CAP),
            Check::Invariants => Some(INVARIANTS_CAP),
            Check::Index => Some(INDEX_CAP),
            _ => None,
        }
    }

    fn applies(self, p: &Partition) -> bool {
        self.cap().is_none_or(|c| p.size() <= c)
    }

    /// `Err` carries a short description of what went wrong.
    pub fn run(self, p: &Partition, seed: u64) -> Result<(), String> {
        match self {
            Check::ZMax => check_z_max(p),
            Check::CVsZ => check_c_vs_z(p),
            Check::PhiUnique => check_phi_unique(p),
            Check::InduceInverse => check_induce_inverse(p),
            Check::Matrix => check_matrix(p),
            Check::Invariants => check_invariants(p, seed),
            Check::Index => check_index(p, seed),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Check, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_z_max(p: &Partition) -> Result<(), String> {
    let z = p.stats().z;
    let longest = ks::max_sequence_length(p);
    ensure(z == longest, || {
        format!("z = {z} but longest sequence has {longest}")
    })
}

fn check_c_vs_z(p: &Partition) -> Result<(), String> {
    let st = p.stats();
    let class = p.classify();
    ensure(st.c >= st.z, || format!("c = {} < z = {}", st.c, st.z))?;
    ensure((st.c == st.z) == class.non_singular, || {
        format!(
            "c = {}, z = {}, non_singular = {}",
            st.c, st.z, class.non_singular
        )
    })?;
    ensure((st.c == 0) == class.rigid, || {
        format!("c = {}, rigid = {}", st.c, class.rigid)
    })
}

fn check_phi_unique(p: &Partition) -> Result<(), String> {
    let phi = ks::enumerate_maximal(p);
    let class = p.classify();
    ensure((phi.len() == 1) == class.non_singular, || {
        format!(
            "|Phi| = {}, non_singular = {}",
            phi.len(),
            class.non_singular
        )
    })?;
    for seq in phi.iter() {
        let residue = ks::apply_sequence(p, seq)
            .map_err(|e| e.to_string())?
            .result;
        ensure(residue.classify().rigid, || {
            format!("residue {residue} of {seq:?} is not rigid")
        })?;
    }
    Ok(())
}

fn some_orbit(p: &Partition) -> NilpotentOrbit {
    let label = p.is_very_even().then_some(Label::I);
    NilpotentOrbit::new(p.clone(), label).expect("label matches very evenness")
}

fn check_induce_inverse(p: &Partition) -> Result<(), String> {
    for i in ks::admissible_indices(p) {
        let mu = ks::step(p, i).map_err(|e| e.to_string())?;
        let back = induce_step(&some_orbit(&mu), i, Some(Label::I)).map_err(|e| e.to_string())?;
        ensure(back.partition() == p, || {
            format!("step then induce at {i} gives {}", back.partition())
        })?;
    }
    Ok(())
}

fn check_matrix(p: &Partition) -> Result<(), String> {
    if p.is_empty() {
        return Ok(());
    }
    let r = Realization::new(p);
    let dims = p.dims();
    let expect: usize = p
        .parts()
        .iter()
        .flat_map(|&a| p.parts().iter().map(move |&b| a.min(b)))
        .sum();
    let xi_rank = Subspace::spanned_by(r.g_basis().iter().map(|b| b.matrix.flatten())).dim();
    ensure(xi_rank == expect, || {
        format!("xi span has rank {xi_rank}, expected {expect}")
    })?;
    let zeta_rank = Subspace::spanned_by(r.k_basis().all().map(|b| b.matrix.flatten())).dim();
    ensure(zeta_rank == dims.dim_k_e, || {
        format!("zeta span has rank {zeta_rank}, expected {}", dims.dim_k_e)
    })?;
    let report = r.verify_decomposition().map_err(|e| e.to_string())?;
    let c = p.stats().c;
    ensure(report.dim_k_e - report.dim_derived == c, || {
        format!(
            "dim k_e - dim [k_e, k_e] = {}, c = {c}",
            report.dim_k_e - report.dim_derived
        )
    })
}

fn check_invariants(p: &Partition, seed: u64) -> Result<(), String> {
    let n = p.size();
    let d = p.invariant_degrees();
    let mut survivors = Vec::new();
    for r in 1..=n {
        let x = elementary_invariant(p, r);
        let sign = if r % 2 == 0 { q(1) } else { q(-1) };
        ensure(apply_sigma(p, &x) == x.scale(&sign), || {
            format!("sigma(x_{r}) has the wrong sign")
        })?;
        let xk = restrict(p, &x, Side::K);
        let xp = restrict(p, &x, Side::P);
        ensure(r % 2 == 0 || xk.is_zero(), || {
            format!("x_{r} does not vanish on k_e")
        })?;
        let mixed_even = (r + d[r - 1]) % 2 == 0;
        ensure(mixed_even || xp.is_zero(), || {
            format!("x_{r} does not vanish on p_e")
        })?;
        match p.eps() {
            Sign::Minus if r % 2 == 0 => survivors.push((r, xk)),
            Sign::Plus if mixed_even => survivors.push((r, xp)),
            _ => {}
        }
        ensure(check_invariance(p, r, INVARIANCE_TRIALS, seed), || {
            format!("x_{r} is not invariant")
        })?;
    }
    for (k, (r, x)) in survivors.iter().enumerate() {
        ensure(!x.is_zero(), || format!("restriction of x_{r} vanishes"))?;
        if let Some((s, _)) = survivors[k + 1..].iter().find(|(_, y)| y == x) {
            return Err(format!("restrictions of x_{r} and x_{s} coincide"));
        }
    }
    let counts = invariant_counts(p);
    let expect = match p.eps() {
        Sign::Minus => n / 2,
        Sign::Plus => (n + p.odd_parts()) / 2,
    };
    ensure(survivors.len() == expect, || {
        format!(
            "{} surviving restrictions, expected {expect}",
            survivors.len()
        )
    })?;
    ensure(counts.even_count == n / 2, || {
        format!("even count {}", counts.even_count)
    })?;
    ensure(
        p.eps() == Sign::Minus || 2 * counts.mixed_count == n + p.odd_parts(),
        || format!("mixed count {}", counts.mixed_count),
    )
}

fn check_index(p: &Partition, seed: u64) -> Result<(), String> {
    if p.is_empty() {
        return Ok(());
    }
    let r = Realization::new(p);
    let n = p.size();
    let mut targets = vec![(IndexSpace::GOnGDual, n), (IndexSpace::KOnKDual, n / 2)];
    if p.eps() == Sign::Plus {
        targets.push((IndexSpace::KOnPDual, (n - p.odd_parts()) / 2));
    }
    for (space, expect) in targets {
        let got = r.generic_index(space, INDEX_TRIALS, seed);
        ensure(got == expect, || {
            format!("index on {space:?} is {got}, expected {expect}")
        })?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub signs: Vec<Sign>,
    pub max_n: usize,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub eps: Sign,
    pub parts: Vec<usize>,
    pub message: String,
    /// How many partitions failed this check in total.
    pub occurrences: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCount {
    pub eps: Sign,
    pub n: usize,
    pub partitions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub counts: Vec<SweepCount>,
    /// One entry per failing check, at its smallest failing partition.
    pub failures: Vec<Failure>,
    pub wall_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport, rayon::ThreadPoolBuildError> {
    match config.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(j).build()?;
            Ok(pool.install(|| sweep(config)))
        }
        None => Ok(sweep(config)),
    }
}

fn sweep(config: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    let mut signs = config.signs.clone();
    signs.sort_by_key(|s| s.value());
    signs.dedup();

    let mut counts = Vec::new();
    let mut work = Vec::new();
    for &eps in &signs {
        for n in 0..=config.max_n {
            let all = Partition::all(eps, n);
            counts.push(SweepCount {
                eps,
                n,
                partitions: all.len(),
            });
            work.extend(all);
        }
    }

    let found: Vec<(Check, Partition, String)> = work
        .par_iter()
        .flat_map_iter(|p| {
            checks
                .iter()
                .filter(|c| c.applies(p))
                .filter_map(|&c| c.run(p, config.seed).err().map(|m| (c, p.clone(), m)))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut worst: BTreeMap<Check, (Partition, String, usize)> = BTreeMap::new();
    for (c, p, m) in found {
        let key = |q: &Partition| (q.size(), q.eps().value(), q.parts().to_vec());
        worst
            .entry(c)
            .and_modify(|(best, msg, k)| {
                *k += 1;
                if key(&p) < key(best) {
                    *best = p.clone();
                    *msg = m.clone();
                }
            })
            .or_insert((p, m, 1));
    }
    let failures = worst
        .into_iter()
        .map(|(check, (p, message, occurrences))| Failure {
            check,
            eps: p.eps(),
            parts: p.parts().to_vec(),
            message,
            occurrences,
        })
        .collect();

    VerifyReport {
        checks,
        counts,
        failures,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}
