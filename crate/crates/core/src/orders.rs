//! Rearrangements, the dec-min / inc-max preorders, majorization and Lorenz domination.
//!
//! Prefix sums are accumulated in `i128`, so none of these comparisons can overflow
//! for vectors of at most 16 `i64` entries.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::game::MAX_PLAYERS;
use crate::payoff::{PayoffVector, VectorSet};

pub fn sort_dec(x: &PayoffVector) -> PayoffVector {
    let mut v = x.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    PayoffVector(v)
}

pub fn sort_inc(x: &PayoffVector) -> PayoffVector {
    let mut v = x.0.clone();
    v.sort_unstable();
    PayoffVector(v)
}

/// Outcome of comparing two vectors under a rearrangement preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecComparison {
    Smaller,
    ValueEquivalent,
    Larger,
}

impl From<Ordering> for DecComparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => DecComparison::Smaller,
            Ordering::Equal => DecComparison::ValueEquivalent,
            Ordering::Greater => DecComparison::Larger,
        }
    }
}

fn same_len(x: &PayoffVector, y: &PayoffVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(())
}

fn total(x: &PayoffVector) -> i128 {
    x.0.iter().map(|&v| v as i128).sum()
}

fn same_sum(x: &PayoffVector, y: &PayoffVector) -> Result<()> {
    same_len(x, y)?;
    let (a, b) = (total(x), total(y));
    if a != b {
        return Err(Error::SumMismatch { left: a, right: b });
    }
    Ok(())
}

/// `Smaller` iff `x <_dec y`: the decreasing rearrangement of `x` is lexicographically smaller.
pub fn compare_dec(x: &PayoffVector, y: &PayoffVector) -> Result<DecComparison> {
    same_len(x, y)?;
    Ok(sort_dec(x).0.cmp(&sort_dec(y).0).into())
}

/// `Larger` iff `x >_inc y`: the increasing rearrangement of `x` is lexicographically larger.
pub fn compare_inc(x: &PayoffVector, y: &PayoffVector) -> Result<DecComparison> {
    same_len(x, y)?;
    Ok(sort_inc(x).0.cmp(&sort_inc(y).0).into())
}

pub fn value_equivalent(x: &PayoffVector, y: &PayoffVector) -> Result<bool> {
    Ok(compare_dec(x, y)? == DecComparison::ValueEquivalent)
}

/// Partial sums of the decreasing rearrangement: `prefix[k-1]` is the sum of the `k` largest entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MajorizationVector {
    pub prefix: Vec<i128>,
}

impl MajorizationVector {
    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(&self, other: &MajorizationVector) -> bool {
        self.prefix.iter().zip(&other.prefix).all(|(a, b)| a <= b)
    }
}

fn prefix_sums(v: &[i64]) -> Vec<i128> {
    v.iter()
        .scan(0i128, |acc, &e| {
            *acc += e as i128;
            Some(*acc)
        })
        .collect()
}

pub fn majorization_vector(x: &PayoffVector) -> MajorizationVector {
    MajorizationVector {
        prefix: prefix_sums(&sort_dec(x).0),
    }
}

/// Lorenz domination with decreasing partial sums: every top-`k` sum of `x` is at most
/// that of `y`, strictly for some `k`. Unequal sums are a contract error.
pub fn lorenz_dominates(x: &PayoffVector, y: &PayoffVector) -> Result<bool> {
    same_sum(x, y)?;
    let (px, py) = (majorization_vector(x), majorization_vector(y));
    Ok(px.le_componentwise(&py) && px != py)
}

/// Lorenz domination with increasing partial sums: every bottom-`k` sum of `x` is at least
/// that of `y`, strictly for some `k`.
pub fn lorenz_dominates_inc(x: &PayoffVector, y: &PayoffVector) -> Result<bool> {
    same_sum(x, y)?;
    let px = prefix_sums(&sort_inc(x).0);
    let py = prefix_sums(&sort_inc(y).0);
    Ok(px.iter().zip(&py).all(|(a, b)| a >= b) && px != py)
}

/// `x ≺ y`; with `strict`, additionally the partial-sum vectors differ.
pub fn majorized_by(x: &PayoffVector, y: &PayoffVector, strict: bool) -> Result<bool> {
    same_sum(x, y)?;
    let (px, py) = (majorization_vector(x), majorization_vector(y));
    Ok(px.le_componentwise(&py) && (!strict || px != py))
}

fn uniform_shape(a: &VectorSet) -> Result<()> {
    let mut it = a.iter();
    if let Some(first) = it.next() {
        for x in it {
            same_sum(first, x)?;
        }
    }
    Ok(())
}

/// Decreasing rearrangement packed into a fixed array, so large sets can be keyed
/// without a heap allocation per vector.
type DecKey = ([i64; MAX_PLAYERS], usize);

fn dec_key(x: &PayoffVector) -> DecKey {
    let mut key = [i64::MIN; MAX_PLAYERS];
    key[..x.len()].copy_from_slice(&x.0);
    key[..x.len()].sort_unstable_by(|a, b| b.cmp(a));
    (key, x.len())
}

/// The Lorenz map: members of `a` not Lorenz-dominated by any member of `a`.
///
/// Vectors are grouped by value-equivalence class first. The distinct partial-sum vectors
/// are then scanned in lexicographic order; any dominator of a vector precedes it, and by
/// transitivity it suffices to test against the undominated vectors seen so far.
pub fn lorenz_filter(a: &VectorSet) -> Result<VectorSet> {
    uniform_shape(a)?;
    if a.iter().any(|x| x.len() > MAX_PLAYERS) {
        let tagged: Vec<(MajorizationVector, &PayoffVector)> =
            a.iter().map(|x| (majorization_vector(x), x)).collect();
        let mut keys: Vec<&MajorizationVector> = tagged.iter().map(|(p, _)| p).collect();
        keys.sort_unstable();
        keys.dedup();
        let front = undominated(keys);
        return Ok(tagged
            .iter()
            .filter(|(p, _)| front.binary_search(&p).is_ok())
            .map(|(_, x)| (*x).clone())
            .collect());
    }

    let mut classes: Vec<DecKey> = a.iter().map(dec_key).collect();
    classes.sort_unstable();
    classes.dedup();
    let prefixes: Vec<MajorizationVector> = classes
        .iter()
        .map(|(k, len)| MajorizationVector {
            prefix: prefix_sums(&k[..*len]),
        })
        .collect();
    let mut order: Vec<&MajorizationVector> = prefixes.iter().collect();
    order.sort_unstable();
    let front = undominated(order);
    let mut kept: Vec<DecKey> = classes
        .iter()
        .zip(&prefixes)
        .filter(|(_, p)| front.binary_search(p).is_ok())
        .map(|(k, _)| *k)
        .collect();
    kept.sort_unstable();
    Ok(VectorSet::from_sorted(
        a.iter()
            .filter(|x| kept.binary_search(&dec_key(x)).is_ok())
            .cloned()
            .collect(),
    ))
}

/// Undominated members of `sorted`, which must be in ascending lexicographic order
/// without duplicates; the result is sorted.
fn undominated(sorted: Vec<&MajorizationVector>) -> Vec<&MajorizationVector> {
    let mut front: Vec<&MajorizationVector> = Vec::new();
    for p in sorted {
        if !front.iter().any(|f| f.le_componentwise(p)) {
            front.push(p);
        }
    }
    front.sort_unstable();
    front
}

fn member_of(x: &PayoffVector, q: &VectorSet) -> Result<()> {
    if !q.contains(x) {
        return Err(Error::NotMember);
    }
    uniform_shape(q)
}

/// `x` is majorized by every element of `q`.
pub fn is_least_majorized(x: &PayoffVector, q: &VectorSet) -> Result<bool> {
    member_of(x, q)?;
    let px = majorization_vector(x);
    Ok(q.iter()
        .all(|y| px.le_componentwise(&majorization_vector(y))))
}

/// `x ≤_dec y` for every `y` in `q`.
pub fn is_dec_min(x: &PayoffVector, q: &VectorSet) -> Result<bool> {
    member_of(x, q)?;
    let key = sort_dec(x);
    Ok(q.iter().all(|y| key.0 <= sort_dec(y).0))
}

/// `x ≥_inc y` for every `y` in `q`.
pub fn is_inc_max(x: &PayoffVector, q: &VectorSet) -> Result<bool> {
    member_of(x, q)?;
    let key = sort_inc(x);
    Ok(q.iter().all(|y| key.0 >= sort_inc(y).0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[i64]) -> PayoffVector {
        PayoffVector(e.to_vec())
    }

    fn set(vs: &[&[i64]]) -> VectorSet {
        vs.iter().map(|e| v(e)).collect()
    }

    #[test]
    fn sorting() {
        assert_eq!(sort_dec(&v(&[64, 65, 81])), v(&[81, 65, 64]));
        assert_eq!(sort_dec(&v(&[5, 5, 5])), v(&[5, 5, 5]));
        assert_eq!(sort_dec(&v(&[59, 71, 80])), v(&[80, 71, 59]));
        assert_eq!(sort_inc(&v(&[59, 80, 71])), v(&[59, 71, 80]));
    }

    #[test]
    fn dec_comparisons() {
        let x = v(&[60, 70, 80]);
        assert_eq!(
            compare_dec(&x, &v(&[64, 65, 81])).unwrap(),
            DecComparison::Smaller
        );
        assert_eq!(
            compare_dec(&v(&[64, 65, 81]), &x).unwrap(),
            DecComparison::Larger
        );
        assert_eq!(compare_dec(&x, &x).unwrap(), DecComparison::ValueEquivalent);
        assert_eq!(
            compare_dec(&v(&[1, 0, 0]), &v(&[0, 0, 1])).unwrap(),
            DecComparison::ValueEquivalent
        );
        assert!(compare_dec(&x, &v(&[1])).is_err());
    }

    #[test]
    fn majorization_vectors() {
        assert_eq!(
            majorization_vector(&v(&[60, 70, 80])).prefix,
            vec![80, 150, 210]
        );
        assert_eq!(majorization_vector(&v(&[0, 0, 0])).prefix, vec![0, 0, 0]);
        assert_eq!(
            majorization_vector(&v(&[64, 65, 81])).prefix,
            vec![81, 146, 210]
        );
    }

    #[test]
    fn lorenz_domination_examples() {
        assert!(lorenz_dominates(&v(&[60, 70, 80]), &v(&[59, 71, 80])).unwrap());
        assert!(!lorenz_dominates(&v(&[64, 65, 81]), &v(&[59, 71, 80])).unwrap());
        assert!(!lorenz_dominates(&v(&[60, 70, 80]), &v(&[64, 64, 82])).unwrap());
        assert!(!lorenz_dominates(&v(&[60, 70, 80]), &v(&[60, 70, 80])).unwrap());
        assert!(lorenz_dominates(&v(&[64, 65, 81]), &v(&[64, 64, 82])).unwrap());
    }

    #[test]
    fn lorenz_domination_rejects_unequal_sums() {
        assert_eq!(
            lorenz_dominates(&v(&[1, 2]), &v(&[1, 1])),
            Err(Error::SumMismatch { left: 3, right: 2 })
        );
        assert!(matches!(
            lorenz_dominates(&v(&[1, 2]), &v(&[3])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn value_equivalence() {
        assert!(value_equivalent(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap());
        assert!(!value_equivalent(&v(&[60, 70, 80]), &v(&[64, 65, 81])).unwrap());
        assert!(value_equivalent(&v(&[3, 4]), &v(&[3, 4])).unwrap());
    }

    #[test]
    fn majorization() {
        // (80,150,210) vs (81,146,210): second partial sum is larger, so not majorized
        assert!(!majorized_by(&v(&[60, 70, 80]), &v(&[64, 65, 81]), true).unwrap());
        assert!(majorized_by(&v(&[70, 70, 70]), &v(&[60, 70, 80]), true).unwrap());
        let x = v(&[2, 9, 4]);
        assert!(majorized_by(&x, &x, false).unwrap());
        assert!(!majorized_by(&x, &x, true).unwrap());
    }

    #[test]
    fn filter_examples() {
        assert_eq!(
            lorenz_filter(&set(&[&[1, 0], &[0, 1]])).unwrap(),
            set(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            lorenz_filter(&set(&[&[60, 70, 80], &[59, 71, 80]])).unwrap(),
            set(&[&[60, 70, 80]])
        );
        assert!(lorenz_filter(&VectorSet::new()).unwrap().is_empty());
        assert!(lorenz_filter(&set(&[&[1, 0], &[2, 0]])).is_err());
    }

    #[test]
    fn filter_keeps_incomparable_vectors() {
        // (3,3,0) and (4,1,1): partial sums (3,6,6) and (4,5,6) are incomparable
        let a = set(&[&[3, 3, 0], &[4, 1, 1], &[6, 0, 0]]);
        assert_eq!(lorenz_filter(&a).unwrap(), set(&[&[3, 3, 0], &[4, 1, 1]]));
    }

    #[test]
    fn least_majorized() {
        let q = set(&[&[60, 70, 80], &[59, 71, 80], &[40, 70, 100]]);
        assert!(is_least_majorized(&v(&[60, 70, 80]), &q).unwrap());
        assert!(!is_least_majorized(&v(&[59, 71, 80]), &q).unwrap());
        let single = set(&[&[5, 1]]);
        assert!(is_least_majorized(&v(&[5, 1]), &single).unwrap());
        assert_eq!(
            is_least_majorized(&v(&[1, 5]), &single),
            Err(Error::NotMember)
        );
    }
}
