//! Partitions in `P_eps(N)`, the block involution, 2-steps and the scalar
//! statistics attached to a nilpotent orbit of `sp_N` or `so_N`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ks::{self, AdmissibleSequence, CaseKind};

/// The sign of the bilinear form: `Plus` is orthogonal, `Minus` is symplectic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part {part} occurs with multiplicity {multiplicity}; for eps = {eps} it must occur an even number of times")]
    ParityViolation {
        part: usize,
        multiplicity: usize,
        eps: Sign,
    },
    #[error("negative part {0}")]
    NegativePart(i64),
}

/// A partition labelling a nilpotent orbit: parts are positive and weakly
/// decreasing, and for `eps = -1` (resp. `+1`) every odd (resp. even) part has
/// even multiplicity.
///
/// Indices are 1-based throughout. [`Partition::lam`] returns the virtual
/// value 0 for index 0 and for indices beyond the last part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    eps: Sign,
    parts: Vec<usize>,
}

/// The involution `i -> i'` on `{1, ..., n}`, stored 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    prime: Vec<usize>,
}

impl Involution {
    /// `i'` for `1 <= i <= n`. Indices outside that range are their own image.
    pub fn of(&self, i: usize) -> usize {
        if i >= 1 && i <= self.prime.len() {
            self.prime[i - 1]
        } else {
            i
        }
    }

    pub fn len(&self) -> usize {
        self.prime.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prime.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.prime
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct TwoStepReport {
    /// Indices `i` such that `(i, i+1)` is a 2-step.
    pub delta: Vec<usize>,
    /// The subset of `delta` with a bad boundary.
    pub bad: Vec<usize>,
    /// The good 2-clusters, each listed by its 2-step indices.
    pub good_clusters: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatBundle {
    pub s: usize,
    pub c: usize,
    pub z: usize,
    pub nu: usize,
    pub s_bar: usize,
    pub kappa: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub rigid: bool,
    pub non_singular: bool,
    pub exceptional: bool,
}

/// The sub-partition cut out by a maximal run `j <= i < k` of fixed indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub j: usize,
    pub k: usize,
    pub mu: Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub dim_g_e: usize,
    pub dim_k_e: usize,
    pub dim_k: usize,
    pub dim_orbit: usize,
}

impl Partition {
    /// Strips zeros, sorts and checks the parity rule.
    pub fn new(eps: Sign, raw: &[i64]) -> Result<Partition, PartitionError> {
        let mut parts = Vec::with_capacity(raw.len());
        for &v in raw {
            if v < 0 {
                return Err(PartitionError::NegativePart(v));
            }
            if v > 0 {
                parts.push(v as usize);
            }
        }
        Partition::from_parts(eps, parts)
    }

    pub fn from_parts(eps: Sign, mut parts: Vec<usize>) -> Result<Partition, PartitionError> {
        parts.retain(|&v| v > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        for (part, multiplicity) in multiplicities(&parts) {
            let constrained = match eps {
                Sign::Minus => part % 2 == 1,
                Sign::Plus => part % 2 == 0,
            };
            if constrained && multiplicity % 2 == 1 {
                return Err(PartitionError::ParityViolation {
                    part,
                    multiplicity,
                    eps,
                });
            }
        }
        Ok(Partition { eps, parts })
    }

    pub fn empty(eps: Sign) -> Partition {
        Partition {
            eps,
            parts: Vec::new(),
        }
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `N`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `lambda_j` with the virtual zeros `lambda_0 = lambda_{n+1} = ... = 0`.
    pub fn lam(&self, j: usize) -> usize {
        if j >= 1 && j <= self.parts.len() {
            self.parts[j - 1]
        } else {
            0
        }
    }

    /// `lambda_j - lambda_{j+1}` as a signed integer.
    pub fn gap(&self, j: usize) -> i64 {
        self.lam(j) as i64 - self.lam(j + 1) as i64
    }

    /// `i = i'` exactly when `eps * (-1)^{lambda_i} = -1`.
    pub fn is_fixed(&self, i: usize) -> bool {
        let odd = self.lam(i) % 2 == 1;
        match self.eps {
            Sign::Minus => !odd,
            Sign::Plus => odd,
        }
    }

    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&v| v % 2 == 1).count()
    }

    /// All parts even in the orthogonal case: the orbit splits into two.
    pub fn is_very_even(&self) -> bool {
        self.eps == Sign::Plus && !self.parts.is_empty() && self.parts.iter().all(|v| v % 2 == 0)
    }

    pub fn involution(&self) -> Involution {
        let n = self.parts.len();
        let mut prime = vec![0; n];
        let mut start = 0;
        while start < n {
            let mut end = start;
            while end < n && self.parts[end] == self.parts[start] {
                end += 1;
            }
            for (idx, slot) in prime.iter_mut().enumerate().take(end).skip(start) {
                *slot = if self.is_fixed(idx + 1) {
                    idx + 1
                } else if (idx - start) % 2 == 0 {
                    idx + 2
                } else {
                    idx
                };
            }
            start = end;
        }
        Involution { prime }
    }

    fn is_two_step(&self, i: usize) -> bool {
        let n = self.parts.len();
        i >= 1
            && i < n
            && self.is_fixed(i)
            && self.is_fixed(i + 1)
            && self.lam(i - 1) != self.lam(i)
            && self.lam(i + 1) != self.lam(i + 2)
    }

    fn positive_even(d: i64) -> bool {
        d > 0 && d % 2 == 0
    }

    fn has_bad_boundary(&self, first: usize, last: usize) -> bool {
        (first > 1 && Self::positive_even(self.gap(first - 1)))
            || Self::positive_even(self.gap(last + 1))
    }

    pub fn delta(&self) -> Vec<usize> {
        (1..self.parts.len())
            .filter(|&i| self.is_two_step(i))
            .collect()
    }

    /// Maximal chains `i, i+2, ..., i+2(k-1)` inside `delta` with `k >= 2`.
    pub fn maximal_clusters(&self) -> Vec<Vec<usize>> {
        let delta = self.delta();
        let mut out = Vec::new();
        let mut used = vec![false; delta.len()];
        for a in 0..delta.len() {
            if used[a] {
                continue;
            }
            let mut chain = vec![delta[a]];
            used[a] = true;
            let mut next = delta[a] + 2;
            while let Some(b) = delta.iter().position(|&d| d == next) {
                used[b] = true;
                chain.push(next);
                next += 2;
            }
            if chain.len() >= 2 {
                out.push(chain);
            }
        }
        out
    }

    pub fn two_steps(&self) -> TwoStepReport {
        let delta = self.delta();
        let bad = delta
            .iter()
            .copied()
            .filter(|&i| self.has_bad_boundary(i, i))
            .collect();
        let good_clusters = self
            .maximal_clusters()
            .into_iter()
            .filter(|c| !self.has_bad_boundary(c[0], c[c.len() - 1]))
            .collect();
        TwoStepReport {
            delta,
            bad,
            good_clusters,
        }
    }

    /// `s = sum_i floor((lambda_i - lambda_{i+1}) / 2)`.
    pub fn s(&self) -> usize {
        (1..=self.parts.len())
            .map(|i| (self.gap(i) / 2) as usize)
            .sum()
    }

    pub fn nu(&self) -> usize {
        (1..=self.parts.len())
            .filter(|&i| self.is_fixed(i) && self.gap(i) > 0)
            .count()
    }

    pub fn kappa(&self) -> Vec<u8> {
        (1..=self.parts.len())
            .map(|i| (self.gap(i) % 2) as u8)
            .collect()
    }

    pub fn stats(&self) -> StatBundle {
        let ts = self.two_steps();
        let s = self.s();
        let c = s + ts.delta.len();
        let z = c - (ts.bad.len() - ts.good_clusters.len());
        let s_bar = if self.classify().exceptional {
            s + 1
        } else {
            s
        };
        StatBundle {
            s,
            c,
            z,
            nu: self.nu(),
            s_bar,
            kappa: self.kappa(),
        }
    }

    pub fn classify(&self) -> Classification {
        let delta = self.delta();
        let small_gaps = (1..=self.parts.len()).all(|i| matches!(self.gap(i), 0 | 1));
        let flat_two_step = delta.iter().any(|&i| self.lam(i) == self.lam(i + 1));
        let non_singular = delta.iter().all(|&i| !self.has_bad_boundary(i, i));
        let exceptional = self.eps == Sign::Plus
            && delta.len() == 1
            && (1..=self.parts.len())
                .filter(|&j| j != delta[0] && j != delta[0] + 1)
                .all(|j| self.lam(j) % 2 == 0);
        Classification {
            rigid: small_gaps && !flat_two_step,
            non_singular,
            exceptional,
        }
    }

    /// The shell `lambda^S` together with the index sequence `S` producing it.
    ///
    /// Indices are visited in ascending order; the 2-step conditions are read
    /// off the partition reached so far.
    pub fn shell(&self) -> (Partition, AdmissibleSequence) {
        let mut cur = self.clone();
        let mut seq = Vec::new();
        let mut i = 1;
        while i <= cur.len() {
            let delta = cur.delta();
            let d = cur.gap(i);
            let adjacent = (i > 1 && delta.contains(&(i - 1))) || delta.contains(&(i + 1));
            let target = if d >= 2 && d % 2 == 0 && adjacent {
                2
            } else {
                d % 2
            };
            while cur.gap(i) > target {
                cur = ks::step(&cur, i).expect("Case 1 applies while the gap is at least 2");
                seq.push(i);
            }
            i += 1;
        }
        let mut i = 1;
        while i < cur.len() {
            let good = cur.is_two_step(i) && !cur.has_bad_boundary(i, i);
            if good && ks::case_at(&cur, i) == Ok(Some(CaseKind::Case2)) {
                cur = ks::step(&cur, i).expect("Case 2 applies");
                seq.push(i);
            }
            i += 1;
        }
        let record = ks::apply_sequence(self, &seq).expect("shell sequence is admissible");
        debug_assert_eq!(record.result, cur);
        (cur, record)
    }

    pub fn profiles(&self) -> Vec<Profile> {
        let n = self.parts.len();
        let mut out = Vec::new();
        let mut j = 1;
        while j <= n {
            if !self.is_fixed(j) {
                j += 1;
                continue;
            }
            let mut k = j;
            while k <= n && self.is_fixed(k) {
                k += 1;
            }
            let base = self.lam(k);
            let eps = if k == n + 1 { self.eps } else { Sign::Plus };
            let mu = (j..k).map(|i| self.lam(i) - base).collect();
            let mu = Partition::from_parts(eps, mu).expect("profile of a valid partition is valid");
            out.push(Profile { j, k, mu });
            j = k;
        }
        out
    }

    pub fn dims(&self) -> Dims {
        let dim_g_e: usize = self
            .parts
            .iter()
            .map(|&a| self.parts.iter().map(|&b| a.min(b)).sum::<usize>())
            .sum();
        let odd = self.odd_parts();
        let n = self.size();
        let (dim_k_e, dim_k) = match self.eps {
            Sign::Plus => ((dim_g_e - odd) / 2, n * n.saturating_sub(1) / 2),
            Sign::Minus => ((dim_g_e + odd) / 2, n * (n + 1) / 2),
        };
        Dims {
            dim_g_e,
            dim_k_e,
            dim_k,
            dim_orbit: dim_k - dim_k_e,
        }
    }

    /// `(1^{lambda_1}, 2^{lambda_2}, ..., n^{lambda_n})`.
    pub fn invariant_degrees(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(idx, &v)| std::iter::repeat_n(idx + 1, v))
            .collect()
    }

    /// Every partition in `P_eps(n)`, in reverse lexicographic order.
    pub fn all(eps: Sign, n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut |parts| {
            if let Ok(p) = Partition::from_parts(eps, parts.to_vec()) {
                out.push(p);
            }
        });
        out
    }
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if rest == 0 {
        emit(cur);
        return;
    }
    for v in (1..=max.min(rest)).rev() {
        cur.push(v);
        fill(rest - v, v, cur, emit);
        cur.pop();
    }
}

fn multiplicities(parts: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &v in parts {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, v) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}
