mod common;

use std::collections::BTreeSet;

use common::{all_upto, any_partition, part};
use itertools::Itertools;
use orbit_sheets::ks::{self, CaseKind};
use orbit_sheets::orbits::{self, Label, NilpotentOrbit, RestrictedSequence};
use orbit_sheets::{Partition, Sign};
use proptest::prelude::*;

const SWEEP_N: usize = 16;

fn labelled(p: &Partition) -> Vec<NilpotentOrbit> {
    if p.is_very_even() {
        vec![
            NilpotentOrbit::new(p.clone(), Some(Label::I)).unwrap(),
            NilpotentOrbit::new(p.clone(), Some(Label::II)).unwrap(),
        ]
    } else {
        vec![NilpotentOrbit::new(p.clone(), None).unwrap()]
    }
}

/// Direct transcription of the 2-step conditions on a zero-padded copy.
fn delta_oracle(p: &Partition) -> Vec<usize> {
    let n = p.len();
    let mut lam = vec![0i64];
    lam.extend(p.parts().iter().map(|&v| v as i64));
    lam.extend([0, 0]);
    let eps = p.eps().value();
    let fixed = |i: usize| eps * if lam[i] % 2 == 0 { 1 } else { -1 } == -1;
    (1..n)
        .filter(|&i| {
            fixed(i)
                && fixed(i + 1)
                && lam[i - 1] != lam[i]
                && lam[i] >= lam[i + 1]
                && lam[i + 1] != lam[i + 2]
        })
        .collect()
}

fn even_positive(d: i64) -> bool {
    d > 0 && d % 2 == 0
}

/// Good 2-clusters found by testing every chain, maximal or not.
fn good_cluster_oracle(p: &Partition, delta: &[usize]) -> BTreeSet<Vec<usize>> {
    let set: BTreeSet<usize> = delta.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &start in delta {
        let mut chain = vec![start];
        while set.contains(&(chain[chain.len() - 1] + 2)) {
            chain.push(chain[chain.len() - 1] + 2);
            let first = chain[0];
            let last = chain[chain.len() - 1];
            let bad_left = first > 1 && even_positive(p.gap(first - 1));
            let bad_right = even_positive(p.gap(last + 1));
            if !bad_left && !bad_right {
                out.insert(chain.clone());
            }
        }
    }
    out
}

#[test]
fn two_steps_match_definition() {
    for p in all_upto(SWEEP_N) {
        let r = p.two_steps();
        let delta = delta_oracle(&p);
        assert_eq!(r.delta, delta, "{p}");
        let bad: Vec<usize> = delta
            .iter()
            .copied()
            .filter(|&i| (i > 1 && even_positive(p.gap(i - 1))) || even_positive(p.gap(i + 1)))
            .collect();
        assert_eq!(r.bad, bad, "{p}");
        let good: BTreeSet<_> = r.good_clusters.iter().cloned().collect();
        assert_eq!(good, good_cluster_oracle(&p, &delta), "{p}");
        assert!(r.good_clusters.len() <= r.bad.len());
        assert_eq!(
            r.bad.is_empty(),
            r.good_clusters.len() == r.bad.len(),
            "{p}"
        );
    }
}

#[test]
fn involution_is_canonical() {
    for p in all_upto(SWEEP_N) {
        let inv = p.involution();
        for i in 1..=p.len() {
            let j = inv.of(i);
            assert_eq!(inv.of(j), i);
            assert_eq!(p.lam(i), p.lam(j));
            assert!(j + 1 >= i && j <= i + 1);
            let sign = p.eps().value() * if p.lam(i) % 2 == 0 { 1 } else { -1 };
            assert_eq!(i == j, sign == -1, "{p} at {i}");
        }
    }
}

#[test]
fn z_is_the_longest_maximal_sequence() {
    for p in all_upto(SWEEP_N) {
        let st = p.stats();
        let class = p.classify();
        let phi = ks::enumerate_maximal(&p);
        assert_eq!(ks::max_sequence_length(&p), st.z, "{p}");
        assert_eq!(phi.len() == 1, class.non_singular, "{p}");
        assert!(st.z <= st.c && st.s <= st.c);
        assert_eq!(st.z == st.c, class.non_singular, "{p}");
        assert_eq!(st.c == 0, class.rigid, "{p}");
        if class.rigid {
            assert_eq!(st.z, 0);
        }
        if class.exceptional {
            assert!(class.non_singular && p.eps() == Sign::Plus, "{p}");
        }
        assert!(st.s_bar == st.s || st.s_bar == st.s + 1);
        assert_eq!(st.kappa.len(), p.len());
    }
}

#[test]
fn maximal_means_rigid_residue() {
    for p in all_upto(SWEEP_N) {
        assert_eq!(
            ks::admissible_indices(&p).is_empty(),
            p.classify().rigid,
            "{p}"
        );
        for rep in ks::enumerate_maximal(&p).iter() {
            let mut residues = BTreeSet::new();
            for perm in rep.iter().copied().permutations(rep.len()).unique() {
                if let Ok(rec) = ks::apply_sequence(&p, &perm) {
                    assert_eq!(rec.result.size() + 2 * perm.iter().sum::<usize>(), p.size());
                    residues.insert(rec.result);
                }
            }
            assert_eq!(residues.len(), 1, "{p} {rep:?}");
            let residue = residues.into_iter().next().unwrap();
            assert!(residue.classify().rigid, "{p} {rep:?}");
        }
    }
}

#[test]
fn sorted_representatives_are_admissible() {
    for p in all_upto(SWEEP_N) {
        for rep in ks::enumerate_maximal(&p).iter() {
            assert!(ks::apply_sequence(&p, rep).is_ok(), "{p} {rep:?}");
        }
    }
}

#[test]
fn single_steps() {
    for p in all_upto(SWEEP_N) {
        let delta: BTreeSet<usize> = p.delta().into_iter().collect();
        for i in ks::admissible_indices(&p) {
            let q = ks::step(&p, i).unwrap();
            assert_eq!(q.size() + 2 * i, p.size());
            let dq: BTreeSet<usize> = q.delta().into_iter().collect();
            assert!(dq.is_subset(&delta), "{p} at {i}");
            if ks::case_at(&p, i).unwrap() == Some(CaseKind::Case2) {
                let mut expect = delta.clone();
                expect.remove(&i);
                assert_eq!(dq, expect, "{p} at {i}");
                if !p.two_steps().bad.contains(&i) {
                    assert_eq!(q.s(), p.s(), "{p} at {i}");
                }
            }
            if p.classify().non_singular {
                assert!(q.classify().non_singular, "{p} at {i}");
            }
        }
    }
}

#[test]
fn shell_is_idempotent() {
    for p in all_upto(SWEEP_N) {
        let (sh, seq) = p.shell();
        assert_eq!(seq.result, sh);
        assert_eq!(sh.size() + 2 * seq.indices.iter().sum::<usize>(), p.size());
        let (again, seq2) = sh.shell();
        assert_eq!(again, sh, "{p}");
        assert!(seq2.indices.is_empty(), "{p}");
    }
}

#[test]
fn induction_inverts_steps() {
    for p in all_upto(SWEEP_N) {
        for i in ks::admissible_indices(&p) {
            let q = ks::step(&p, i).unwrap();
            for o in labelled(&q) {
                let back = orbits::induce_step(&o, i, Some(Label::I)).unwrap();
                assert_eq!(back.partition(), &p, "{p} at {i}");
            }
        }
        for i in 1..=4 {
            for mu in labelled(&p) {
                let lam = orbits::induce_step(&mu, i, Some(Label::II)).unwrap();
                assert_eq!(lam.partition().size(), p.size() + 2 * i);
                if p.size() > 0 && lam.partition().is_very_even() {
                    assert_eq!(lam.label(), mu.label(), "{p} at {i}");
                }
                assert_eq!(ks::step(lam.partition(), i).unwrap(), p, "{p} at {i}");
            }
        }
    }
}

#[test]
fn sheets_reinduce_to_the_orbit() {
    for p in all_upto(SWEEP_N) {
        let phi = ks::enumerate_maximal(&p);
        for o in labelled(&p) {
            let sheets = orbits::sheets_containing(&o);
            assert_eq!(sheets.len(), phi.len());
            assert_eq!(sheets.iter().map(|s| s.rank).max(), Some(p.stats().z));
            let dims = p.dims();
            for s in &sheets {
                assert!(s.rigid_residue.partition().classify().rigid);
                assert_eq!(s.rank, s.levi.terms.len());
                assert_eq!(s.dim_sheet, dims.dim_k - dims.dim_k_e + s.rank);
                assert_eq!(
                    s.rigid_residue.partition().size() + 2 * s.levi.total(),
                    p.size()
                );
                if s.levi.label.is_some() {
                    assert!(s.rigid_residue.partition().is_empty());
                }
                let back = orbits::induce_through(&s.levi, &s.rigid_residue).unwrap();
                assert_eq!(back, o, "{o} via {}", s.levi);
            }
            let w = orbits::w_report(&o);
            assert_eq!(w.e_polynomial, w.unique_sheet);
            assert_eq!(w.unique_sheet, sheets.len() == 1);
            if w.is_rigid {
                assert!(w.dim_e == 0 && w.unique_sheet);
            }
        }
        assert_eq!(
            orbits::is_richardson(&p),
            phi.iter()
                .any(|rep| 2 * rep.iter().sum::<usize>() == p.size()),
            "{p}"
        );
    }
}

fn partition_count(n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            ways[m] += ways[m - k];
        }
    }
    ways[n]
}

fn even_partition_count(n: usize) -> usize {
    if n % 2 == 1 {
        0
    } else {
        partition_count(n / 2)
    }
}

#[test]
fn levi_class_counts() {
    for rank in 1..=10 {
        let all: usize = (0..=rank).map(partition_count).sum();
        assert_eq!(orbits::levi_classes(Sign::Minus, rank, false).len(), all);
        assert_eq!(orbits::levi_classes(Sign::Plus, rank, false).len(), all);
        let split = if rank % 2 == 0 {
            even_partition_count(rank)
        } else {
            0
        };
        let d = orbits::levi_classes(Sign::Plus, rank, true);
        assert_eq!(
            d.len(),
            all - partition_count(rank - 1) + split,
            "rank {rank}"
        );
        let mut sorted = d.clone();
        sorted.sort();
        assert_eq!(sorted, d);
    }
    let c2 = orbits::levi_classes(Sign::Minus, 2, false);
    let expect: Vec<RestrictedSequence> = [vec![], vec![1], vec![1, 1], vec![2]]
        .into_iter()
        .map(|t| RestrictedSequence::new(t, None))
        .collect();
    assert_eq!(c2, expect);
}

#[test]
fn profile_of_a_long_partition() {
    let p = part(-1, &[7, 7, 6, 4, 4, 2, 1, 1]);
    assert_eq!(p.size(), 32);
    let st = p.stats();
    assert_eq!(st.z, ks::max_sequence_length(&p));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prop_stats_consistent(p in any_partition(24)) {
        let st = p.stats();
        let r = p.two_steps();
        prop_assert_eq!(st.c, st.s + r.delta.len());
        prop_assert!(st.z <= st.c);
        prop_assert!(r.bad.iter().all(|i| r.delta.contains(i)));
        prop_assert!(r.good_clusters.len() <= r.bad.len());
        prop_assert_eq!(st.c == 0, p.classify().rigid);
        prop_assert_eq!(p.invariant_degrees().len(), p.size());
        if p.eps() == Sign::Minus {
            prop_assert_eq!(p.size() % 2, 0);
        }
    }

    #[test]
    fn prop_shell_idempotent(p in any_partition(24)) {
        let (sh, seq) = p.shell();
        prop_assert_eq!(ks::apply_sequence(&p, &seq.indices).unwrap().result, sh.clone());
        prop_assert_eq!(sh.shell().0, sh);
    }

    #[test]
    fn prop_z_matches_enumeration(p in any_partition(20)) {
        prop_assert_eq!(ks::max_sequence_length(&p), p.stats().z);
        prop_assert_eq!(ks::enumerate_maximal(&p).len() == 1, p.classify().non_singular);
    }

    #[test]
    fn prop_induction_round_trip(p in any_partition(20), i in 1usize..6) {
        for mu in labelled(&p) {
            let lam = orbits::induce_step(&mu, i, Some(Label::I)).unwrap();
            prop_assert_eq!(ks::step(lam.partition(), i).unwrap(), p.clone());
        }
    }

    #[test]
    fn prop_profiles_are_valid(p in any_partition(24)) {
        for pr in p.profiles() {
            prop_assert!(pr.j < pr.k && pr.k <= p.len() + 1);
            prop_assert!(!pr.mu.is_empty());
            prop_assert!((pr.j..pr.k).all(|i| p.is_fixed(i)));
            prop_assert!(pr.k > p.len() || !p.is_fixed(pr.k));
            prop_assert!(pr.j == 1 || !p.is_fixed(pr.j - 1));
        }
    }
}
