use std::collections::BTreeMap;

use coopgame::{
    is_dec_min, is_inc_max, is_least_majorized, lorenz_dominates, lorenz_dominates_inc,
    lorenz_filter, majorization_vector, majorized_by, sort_dec, PayoffVector, VectorSet,
};
use proptest::prelude::*;

fn all_vectors(len: usize, max: i64) -> Vec<PayoffVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=max).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(PayoffVector).collect()
}

fn level_sets(len: usize, max: i64) -> BTreeMap<i64, Vec<PayoffVector>> {
    let mut by_sum: BTreeMap<i64, Vec<PayoffVector>> = BTreeMap::new();
    for x in all_vectors(len, max) {
        by_sum.entry(x.0.iter().sum()).or_default().push(x);
    }
    by_sum
}

// pairwise definition of the Lorenz map
fn brute_filter(a: &VectorSet) -> VectorSet {
    a.iter()
        .filter(|y| !a.iter().any(|x| lorenz_dominates(x, y).unwrap()))
        .cloned()
        .collect()
}

fn brute_least_majorized(q: &VectorSet) -> Vec<PayoffVector> {
    q.iter()
        .filter(|x| q.iter().all(|y| majorized_by(x, y, false).unwrap()))
        .cloned()
        .collect()
}

#[test]
fn domination_variants_agree_exhaustively() {
    for len in 1..=4 {
        for (_, level) in level_sets(len, 4) {
            for x in &level {
                for y in &level {
                    let dec = lorenz_dominates(x, y).unwrap();
                    assert_eq!(dec, majorized_by(x, y, true).unwrap(), "{x} {y}");
                    assert_eq!(dec, lorenz_dominates_inc(x, y).unwrap(), "{x} {y}");
                }
            }
        }
    }
}

fn predicates_agree(q: &VectorSet) -> bool {
    let least = brute_least_majorized(q);
    if least.is_empty() {
        return false;
    }
    for x in q {
        let lm = is_least_majorized(x, q).unwrap();
        assert_eq!(lm, least.contains(x));
        assert_eq!(lm, is_dec_min(x, q).unwrap(), "{x} in {q}");
        assert_eq!(lm, is_inc_max(x, q).unwrap(), "{x} in {q}");
    }
    assert_eq!(lorenz_filter(q).unwrap(), brute_filter(q));
    true
}

#[test]
fn dec_min_inc_max_least_majorized_on_level_sets() {
    for len in 1..=4 {
        for (_, level) in level_sets(len, 4) {
            let q = VectorSet::from_vectors(level.clone());
            assert!(predicates_agree(&q));
            // boxed level sets are M-convex too
            for lo in 0..=4 {
                for hi in lo..=4 {
                    let boxed: VectorSet = level
                        .iter()
                        .filter(|x| x.0.iter().all(|&e| (lo..=hi).contains(&e)))
                        .cloned()
                        .collect();
                    if !boxed.is_empty() {
                        assert!(predicates_agree(&boxed));
                    }
                }
            }
        }
    }
}

#[test]
fn predicates_on_every_subset_of_small_level_sets() {
    let mut with_least = 0;
    for len in 2..=3 {
        for (_, level) in level_sets(len, 4) {
            if level.len() > 10 {
                continue;
            }
            for pick in 1u32..1 << level.len() {
                let q: VectorSet = level
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| pick >> k & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect();
                if predicates_agree(&q) {
                    with_least += 1;
                } else {
                    assert_eq!(lorenz_filter(&q).unwrap(), brute_filter(&q));
                }
            }
        }
    }
    assert!(with_least > 0);
}

fn same_sum_pair() -> impl Strategy<Value = (PayoffVector, PayoffVector)> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-50i64..50, n),
                prop::collection::vec(-50i64..50, n),
            )
        })
        .prop_map(|(x, mut y)| {
            let diff: i64 = x.iter().sum::<i64>() - y.iter().sum::<i64>();
            y[0] += diff;
            (PayoffVector(x), PayoffVector(y))
        })
}

proptest! {
    #[test]
    fn dominance_is_strict_majorization((x, y) in same_sum_pair()) {
        let d = lorenz_dominates(&x, &y).unwrap();
        prop_assert_eq!(d, majorized_by(&x, &y, true).unwrap());
        prop_assert_eq!(d, lorenz_dominates_inc(&x, &y).unwrap());
        prop_assert!(!(d && lorenz_dominates(&y, &x).unwrap()));
    }

    #[test]
    fn rearrangement_invariance((x, y) in same_sum_pair(), rot in 0usize..6) {
        let mut z = x.0.clone();
        let k = rot % z.len();
        z.rotate_left(k);
        let z = PayoffVector(z);
        prop_assert_eq!(majorization_vector(&x), majorization_vector(&z));
        prop_assert_eq!(lorenz_dominates(&x, &y).unwrap(), lorenz_dominates(&z, &y).unwrap());
        prop_assert!(!lorenz_dominates(&x, &z).unwrap());
    }

    #[test]
    fn filter_matches_pairwise(vs in prop::collection::vec(prop::collection::vec(0i64..6, 4), 1..40)) {
        let q: VectorSet = vs
            .into_iter()
            .map(|mut v| {
                let s: i64 = v.iter().sum();
                v[3] += 12 - s;
                PayoffVector(v)
            })
            .collect();
        let f = lorenz_filter(&q).unwrap();
        prop_assert_eq!(&f, &brute_filter(&q));
        prop_assert!(!f.is_empty());
        // the filter is closed under value equivalence
        for x in &q {
            if f.iter().any(|y| sort_dec(y) == sort_dec(x)) {
                prop_assert!(f.contains(x));
            }
        }
    }
}
