//! Labelled nilpotent orbits, induction from Levi subalgebras and the sheets
//! containing an orbit.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ks;
use crate::partition::{Partition, PartitionError, Sign};

/// Distinguishes the two orbits over a very even partition in type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    I,
    II,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::I => write!(f, "I"),
            Label::II => write!(f, "II"),
        }
    }
}

impl std::str::FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Label, String> {
        match s {
            "I" | "i" | "1" => Ok(Label::I),
            "II" | "ii" | "2" => Ok(Label::II),
            other => Err(format!("unknown label {other:?}; expected I or II")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("labels only apply to very even partitions in type D")]
    LabelForbidden,
    #[error("very even partition in type D needs a label (I or II)")]
    LabelRequired,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("induction of {mu} at {index} does not give a valid partition")]
    InvalidCollapse { mu: Partition, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LieType {
    B,
    C,
    D,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn lie_type(eps: Sign, n: usize) -> LieType {
    match eps {
        Sign::Minus => LieType::C,
        Sign::Plus if n % 2 == 0 => LieType::D,
        Sign::Plus => LieType::B,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilpotentOrbit {
    partition: Partition,
    label: Option<Label>,
}

impl NilpotentOrbit {
    pub fn new(partition: Partition, label: Option<Label>) -> Result<NilpotentOrbit, OrbitError> {
        match (partition.is_very_even(), label) {
            (true, None) => Err(OrbitError::LabelRequired),
            (false, Some(_)) => Err(OrbitError::LabelForbidden),
            _ => Ok(NilpotentOrbit { partition, label }),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn label(&self) -> Option<Label> {
        self.label
    }
}

impl fmt::Display for NilpotentOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        if let Some(l) = self.label {
            write!(f, "_{l}")?;
        }
        Ok(())
    }
}

pub fn make_orbit(
    eps: Sign,
    parts: &[i64],
    label: Option<Label>,
) -> Result<NilpotentOrbit, OrbitError> {
    let p = Partition::new(eps, parts)?;
    NilpotentOrbit::new(p, label)
}

/// The orbit induced from `mu` through a Levi of shape `gl_i x k'`.
pub fn induce_step(
    mu: &NilpotentOrbit,
    i: usize,
    levi_label: Option<Label>,
) -> Result<NilpotentOrbit, OrbitError> {
    let p = &mu.partition;
    let eps = p.eps();
    let len = p.len().max(i + 1);
    let mut parts: Vec<usize> = (1..=len).map(|j| p.lam(j)).collect();
    for v in &mut parts[..i] {
        *v += 2;
    }
    let lambda = match Partition::from_parts(eps, parts.clone()) {
        Ok(q) => q,
        Err(_) => {
            parts[i - 1] -= 1;
            parts[i] += 1;
            Partition::from_parts(eps, parts).map_err(|_| OrbitError::InvalidCollapse {
                mu: p.clone(),
                index: i,
            })?
        }
    };
    let label = if !lambda.is_very_even() {
        None
    } else if p.size() > 0 {
        Some(mu.label.ok_or(OrbitError::LabelRequired)?)
    } else {
        Some(levi_label.ok_or(OrbitError::LabelRequired)?)
    };
    Ok(NilpotentOrbit {
        partition: lambda,
        label,
    })
}

/// A class of Levi subalgebras `gl_{i_1} x ... x gl_{i_k} x k'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RestrictedSequence {
    /// Sorted non-increasing.
    pub terms: Vec<usize>,
    pub label: Option<Label>,
}

impl RestrictedSequence {
    pub fn new(mut terms: Vec<usize>, label: Option<Label>) -> RestrictedSequence {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        RestrictedSequence { terms, label }
    }

    pub fn total(&self) -> usize {
        self.terms.iter().sum()
    }
}

impl fmt::Display for RestrictedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")?;
        if let Some(l) = self.label {
            write!(f, "_{l}")?;
        }
        Ok(())
    }
}

/// Induces `residue` through each term, smallest first.
///
/// Labels of intermediate very even orbits are placeholders: only the label
/// of the final orbit is determined by the data.
pub fn induce_through(
    levi: &RestrictedSequence,
    residue: &NilpotentOrbit,
) -> Result<NilpotentOrbit, OrbitError> {
    let mut cur = residue.clone();
    for &t in levi.terms.iter().rev() {
        cur = induce_step(&cur, t, Some(levi.label.unwrap_or(Label::I)))?;
    }
    if cur.label.is_some() && residue.partition.is_empty() && levi.label.is_none() {
        return Err(OrbitError::LabelRequired);
    }
    Ok(cur)
}

pub fn is_richardson(p: &Partition) -> bool {
    ks::enumerate_maximal(p).iter().any(|seq| {
        ks::apply_sequence(p, seq)
            .expect("enumerated sequences are admissible")
            .result
            .is_empty()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetDatum {
    pub levi: RestrictedSequence,
    pub rigid_residue: NilpotentOrbit,
    pub rank: usize,
    pub dim_sheet: usize,
}

fn sequence_is_very_even(eps: Sign, n: usize, terms: &[usize]) -> bool {
    let total: usize = terms.iter().sum();
    lie_type(eps, n) == LieType::D
        && (n / 2) % 2 == 0
        && 2 * total == n
        && terms.iter().all(|t| t % 2 == 0)
}

pub fn sheets_containing(orbit: &NilpotentOrbit) -> Vec<SheetDatum> {
    let p = &orbit.partition;
    let dims = p.dims();
    ks::enumerate_maximal(p)
        .iter()
        .map(|seq| {
            let residue = ks::apply_sequence(p, seq)
                .expect("enumerated sequences are admissible")
                .result;
            let levi_label = if sequence_is_very_even(p.eps(), p.size(), seq) {
                orbit.label
            } else {
                None
            };
            let residue_label = residue
                .is_very_even()
                .then(|| orbit.label.unwrap_or(Label::I));
            SheetDatum {
                levi: RestrictedSequence::new(seq.clone(), levi_label),
                rigid_residue: NilpotentOrbit {
                    partition: residue,
                    label: residue_label,
                },
                rank: seq.len(),
                dim_sheet: dims.dim_orbit + seq.len(),
            }
        })
        .collect()
}

/// Restricted sequences up to reordering for the algebra of the given rank.
///
/// `type_d` selects `so_{2r}` over `so_{2r+1}` and is ignored for `eps = -1`.
pub fn levi_classes(eps: Sign, rank: usize, type_d: bool) -> Vec<RestrictedSequence> {
    let d = eps == Sign::Plus && type_d;
    let mut multisets = Vec::new();
    let mut cur = Vec::new();
    sub_multisets(rank, rank, &mut cur, &mut multisets);
    let mut out = Vec::new();
    for mut terms in multisets {
        let total: usize = terms.iter().sum();
        if d && total + 1 == rank {
            continue;
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        if d && rank % 2 == 0 && total == rank && terms.iter().all(|t| t % 2 == 0) {
            out.push(RestrictedSequence::new(terms.clone(), Some(Label::I)));
            out.push(RestrictedSequence::new(terms, Some(Label::II)));
        } else {
            out.push(RestrictedSequence::new(terms, None));
        }
    }
    out.sort();
    out
}

fn sub_multisets(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    for v in (1..=max.min(rest)).rev() {
        cur.push(v);
        sub_multisets(rest - v, v, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WReport {
    pub is_rigid: bool,
    pub is_induced: bool,
    pub unique_sheet: bool,
    #[serde(rename = "dim_E")]
    pub dim_e: usize,
    #[serde(rename = "E_polynomial")]
    pub e_polynomial: bool,
    #[serde(rename = "dim_E_Gamma")]
    pub dim_e_gamma: usize,
    pub gamma_order: u64,
}

pub fn w_report(orbit: &NilpotentOrbit) -> WReport {
    let p = &orbit.partition;
    let class = p.classify();
    let st = p.stats();
    let gamma_exp = match p.eps() {
        Sign::Minus => st.nu,
        Sign::Plus => st.nu.saturating_sub(1),
    };
    WReport {
        is_rigid: class.rigid,
        is_induced: !class.rigid,
        unique_sheet: class.non_singular,
        dim_e: st.z,
        e_polynomial: class.non_singular,
        dim_e_gamma: st.s_bar,
        gamma_order: 1u64 << gamma_exp,
    }
}
