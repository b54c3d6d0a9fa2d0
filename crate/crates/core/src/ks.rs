//! The Kempken–Spaltenstein reduction `lambda -> lambda^(i)` and the set
//! `Phi_lambda` of maximal admissible sequences up to reordering.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseKind {
    Case1,
    Case2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KsError {
    #[error("index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {0} is not admissible")]
    NotAdmissible(usize),
    #[error("prefix of length {0} is not admissible")]
    NotAdmissibleAtStep(usize),
}

/// Which reduction applies at `i`, if any.
pub fn case_at(p: &Partition, i: usize) -> Result<Option<CaseKind>, KsError> {
    if i == 0 || i > p.len() {
        return Err(KsError::IndexOutOfRange {
            index: i,
            len: p.len(),
        });
    }
    if p.gap(i) >= 2 {
        return Ok(Some(CaseKind::Case1));
    }
    if p.lam(i) == p.lam(i + 1) && p.delta().contains(&i) {
        return Ok(Some(CaseKind::Case2));
    }
    Ok(None)
}

pub fn admissible_indices(p: &Partition) -> Vec<usize> {
    (1..=p.len())
        .filter(|&i| matches!(case_at(p, i), Ok(Some(_))))
        .collect()
}

/// `lambda^(i)`.
pub fn step(p: &Partition, i: usize) -> Result<Partition, KsError> {
    let case = case_at(p, i)?.ok_or(KsError::NotAdmissible(i))?;
    let mut parts = p.parts().to_vec();
    match case {
        CaseKind::Case1 => {
            for v in &mut parts[..i] {
                *v -= 2;
            }
        }
        CaseKind::Case2 => {
            for v in &mut parts[..i - 1] {
                *v -= 2;
            }
            parts[i - 1] -= 1;
            parts[i] -= 1;
        }
    }
    Ok(Partition::from_parts(p.eps(), parts)
        .expect("a Kempken–Spaltenstein step preserves validity"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSequence {
    pub source: Partition,
    pub indices: Vec<usize>,
    pub cases: Vec<CaseKind>,
    pub result: Partition,
}

pub fn apply_sequence(p: &Partition, indices: &[usize]) -> Result<AdmissibleSequence, KsError> {
    let mut cur = p.clone();
    let mut cases = Vec::with_capacity(indices.len());
    for (k, &i) in indices.iter().enumerate() {
        let case = match case_at(&cur, i) {
            Ok(Some(c)) => c,
            Ok(None) | Err(KsError::IndexOutOfRange { .. }) => {
                return Err(KsError::NotAdmissibleAtStep(k + 1))
            }
            Err(e) => return Err(e),
        };
        cur = step(&cur, i)?;
        cases.push(case);
    }
    Ok(AdmissibleSequence {
        source: p.clone(),
        indices: indices.to_vec(),
        cases,
        result: cur,
    })
}

/// Maximal admissible sequences modulo reordering, each stored sorted
/// non-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSet {
    pub reps: BTreeSet<Vec<usize>>,
}

impl PhiSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.reps.iter()
    }
}

type Memo = HashMap<Partition, Rc<BTreeSet<Vec<usize>>>>;

fn maximal_from(p: &Partition, memo: &mut Memo) -> Rc<BTreeSet<Vec<usize>>> {
    if let Some(hit) = memo.get(p) {
        return hit.clone();
    }
    let idx = admissible_indices(p);
    let mut out = BTreeSet::new();
    if idx.is_empty() {
        out.insert(Vec::new());
    }
    for i in idx {
        let next = step(p, i).expect("admissible");
        for tail in maximal_from(&next, memo).iter() {
            let mut m = tail.clone();
            let pos = m.partition_point(|&v| v > i);
            m.insert(pos, i);
            out.insert(m);
        }
    }
    let out = Rc::new(out);
    memo.insert(p.clone(), out.clone());
    out
}

pub fn enumerate_maximal(p: &Partition) -> PhiSet {
    let mut memo = Memo::new();
    let reps = maximal_from(p, &mut memo);
    PhiSet {
        reps: (*reps).clone(),
    }
}

pub fn max_sequence_length(p: &Partition) -> usize {
    enumerate_maximal(p).iter().map(Vec::len).max().unwrap_or(0)
}
