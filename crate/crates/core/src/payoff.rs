use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coalition::Coalition;
use crate::error::{checked_add, Error, Result};

/// Exact integer allocation, one entry per player (0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PayoffVector(pub Vec<i64>);

impl PayoffVector {
    pub fn new(entries: Vec<i64>) -> Self {
        PayoffVector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> Result<i64> {
        self.0.iter().try_fold(0i64, |acc, &v| checked_add(acc, v))
    }

    /// `x(S)`: the total paid to the members of `s`.
    pub fn coalition_sum(&self, s: Coalition) -> Result<i64> {
        s.members()
            .try_fold(0i64, |acc, i| checked_add(acc, self.0[i]))
    }

    /// `x_S`: the entries of the members of `s`, in ascending player order.
    pub fn restrict(&self, s: Coalition) -> PayoffVector {
        PayoffVector(s.members().map(|i| self.0[i]).collect())
    }

    /// The vector `x + χ_i − χ_j`.
    pub fn transfer(&self, to: usize, from: usize) -> Result<PayoffVector> {
        let mut out = self.0.clone();
        out[to] = out[to].checked_add(1).ok_or(Error::Overflow)?;
        out[from] = out[from].checked_sub(1).ok_or(Error::Overflow)?;
        Ok(PayoffVector(out))
    }

    pub(crate) fn expect_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for PayoffVector {
    fn from(v: Vec<i64>) -> Self {
        PayoffVector(v)
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Exact rational allocation. `BigRational` keeps every entry reduced with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPayoffVector(pub Vec<BigRational>);

impl RationalPayoffVector {
    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    pub fn from_integers(v: &[i64]) -> Self {
        RationalPayoffVector(
            v.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }
}

/// Formats a rational as `p/q`, or as a plain integer when `q = 1`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalPayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(v))?;
        }
        f.write_str(")")
    }
}

/// Finite set of payoff vectors kept sorted lexicographically on raw entries, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct VectorSet(Vec<PayoffVector>);

impl VectorSet {
    pub fn new() -> Self {
        VectorSet(Vec::new())
    }

    pub fn from_vectors(mut v: Vec<PayoffVector>) -> Self {
        v.sort_unstable();
        v.dedup();
        VectorSet(v)
    }

    /// Wraps vectors already in strictly ascending order.
    pub(crate) fn from_sorted(v: Vec<PayoffVector>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VectorSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &PayoffVector) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PayoffVector> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[PayoffVector] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<PayoffVector> {
        self.0
    }

    pub fn difference(&self, other: &VectorSet) -> VectorSet {
        VectorSet(
            self.0
                .iter()
                .filter(|x| !other.contains(x))
                .cloned()
                .collect(),
        )
    }

    pub fn intersection(&self, other: &VectorSet) -> VectorSet {
        VectorSet(
            self.0
                .iter()
                .filter(|x| other.contains(x))
                .cloned()
                .collect(),
        )
    }
}

impl FromIterator<PayoffVector> for VectorSet {
    fn from_iter<I: IntoIterator<Item = PayoffVector>>(iter: I) -> Self {
        VectorSet::from_vectors(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VectorSet {
    type Item = &'a PayoffVector;
    type IntoIter = std::slice::Iter<'a, PayoffVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_set_is_canonical() {
        let s = VectorSet::from_vectors(vec![
            PayoffVector(vec![1, 0]),
            PayoffVector(vec![0, 1]),
            PayoffVector(vec![1, 0]),
        ]);
        assert_eq!(
            s.as_slice(),
            &[PayoffVector(vec![0, 1]), PayoffVector(vec![1, 0])]
        );
        assert_eq!(s.to_string(), "{(0,1), (1,0)}");
    }

    #[test]
    fn rational_formatting() {
        let r = BigRational::new(BigInt::from(13), BigInt::from(2));
        assert_eq!(format_rational(&r), "13/2");
        let r = BigRational::new(BigInt::from(-14), BigInt::from(2));
        assert_eq!(format_rational(&r), "-7");
    }

    #[test]
    fn sums_detect_overflow() {
        assert_eq!(PayoffVector(vec![i64::MAX, 1]).sum(), Err(Error::Overflow));
        assert_eq!(
            PayoffVector(vec![3, 4, 5]).coalition_sum(Coalition(0b101)),
            Ok(8)
        );
    }
}
