#![allow(dead_code)]

use orbit_sheets::{Partition, Sign};
use proptest::prelude::*;
use proptest::sample::Index;

pub fn part(eps: i64, parts: &[i64]) -> Partition {
    Partition::new(Sign::from_int(eps).unwrap(), parts).unwrap()
}

/// Every valid partition with `N <= max_n`, both signs.
pub fn all_upto(max_n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for eps in [Sign::Minus, Sign::Plus] {
            out.extend(Partition::all(eps, n));
        }
    }
    out
}

/// A uniformly chosen partition of a random size up to `max_n`.
pub fn any_partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (any::<bool>(), 0..=max_n, any::<Index>()).prop_map(|(plus, n, idx)| {
        let eps = if plus { Sign::Plus } else { Sign::Minus };
        let n = if plus { n } else { n & !1 };
        let all = Partition::all(eps, n);
        all[idx.index(all.len())].clone()
    })
}
