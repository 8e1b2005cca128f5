//! Tensor indices and their linearization.
//!
//! A basis vector of the product space `C^n ⊗ ... ⊗ C^n` (m factors) is
//! labelled by an m-tuple of 1-based entries. The embedded index maps that
//! tuple to a single 1-based coordinate of the `n^m`-dimensional space, with
//! sentence 1 as the most significant digit:
//!
//! ```text
//! kappa(i_1, ..., i_m) = 1 + sum_j (i_j - 1) * n^(m - j)
//! ```
//!
//! `(2m)^m` overflows 64 bits from m = 14 on, so embedded indices are
//! arbitrary precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorIndex(Vec<u32>);

impl TensorIndex {
    /// Validates that every entry lies in `1..=n`.
    pub fn new(entries: Vec<u32>, n: u32) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Malformed("empty tensor index".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::out_of_range("tensor entry", format!("{bad} not in 1..={n}")));
        }
        Ok(TensorIndex(entries))
    }

    pub(crate) fn new_unchecked(entries: Vec<u32>) -> Self {
        TensorIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// Entry carried by 1-based `sentence`.
    pub fn entry(&self, sentence: usize) -> u32 {
        self.0[sentence - 1]
    }

    pub fn embedded(&self, n: u32) -> EmbeddedIndex {
        kappa(self, n)
    }
}

/// Dotted form, e.g. `15.10.8.12.7.13.4.9`.
impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbeddedIndex(BigUint);

impl EmbeddedIndex {
    pub fn new(value: BigUint) -> Self {
        EmbeddedIndex(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for EmbeddedIndex {
    fn from(v: u64) -> Self {
        EmbeddedIndex(BigUint::from(v))
    }
}

impl FromStr for EmbeddedIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigUint::from_str(s)
            .map(EmbeddedIndex)
            .map_err(|_| Error::Malformed(format!("embedded index {s:?} is not a decimal integer")))
    }
}

impl fmt::Display for EmbeddedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Dimension `n^m` of the full product space.
pub fn space_dimension(m: usize, n: u32) -> BigUint {
    num_traits::pow(BigUint::from(n), m)
}

pub fn kappa(index: &TensorIndex, n: u32) -> EmbeddedIndex {
    // Horner: accumulate digits most significant first.
    let radix = BigUint::from(n);
    let offset = index
        .0
        .iter()
        .fold(BigUint::zero(), |acc, &e| acc * &radix + BigUint::from(e - 1));
    EmbeddedIndex(offset + 1u32)
}

/// Mixed-radix digit extraction; inverse of [`kappa`].
pub fn kappa_inverse(e: &EmbeddedIndex, m: usize, n: u32) -> Result<TensorIndex> {
    if m == 0 || n == 0 {
        return Err(Error::Malformed("m and n must be positive".into()));
    }
    let upper = space_dimension(m, n);
    if e.0.is_zero() || e.0 > upper {
        return Err(Error::out_of_range("embedded index", format!("{} not in 1..={upper}", e.0)));
    }
    let radix = BigUint::from(n);
    let mut rest = &e.0 - BigUint::one();
    let mut entries = vec![0u32; m];
    for slot in entries.iter_mut().rev() {
        let digit = (&rest % &radix).to_u32().expect("digit below radix");
        *slot = digit + 1;
        rest /= &radix;
    }
    Ok(TensorIndex(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(v: &[u32], n: u32) -> TensorIndex {
        TensorIndex::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn reference_pairs() {
        let a = idx(&[15, 10, 8, 12, 7, 13, 4, 9], 16);
        assert_eq!(kappa(&a, 16), EmbeddedIndex::from(3917179961));
        let b = idx(&[1, 11, 9, 13, 16, 14, 5, 10], 16);
        assert_eq!(kappa(&b, 16), EmbeddedIndex::from(177012042));
        assert_eq!(kappa_inverse(&EmbeddedIndex::from(3917179961), 8, 16).unwrap(), a);
    }

    #[test]
    fn all_ones_is_one() {
        for m in 1..=20 {
            let n = 2 * m as u32;
            let ones = idx(&vec![1; m], n);
            assert_eq!(kappa(&ones, n), EmbeddedIndex::from(1));
            assert_eq!(kappa_inverse(&EmbeddedIndex::from(1), m, n).unwrap(), ones);
        }
    }

    #[test]
    fn all_max_is_space_dimension() {
        // m = 16: 32^16 = 2^80, well past u64
        let m = 16;
        let n = 32;
        let top = idx(&vec![n; m], n);
        assert_eq!(kappa(&top, n).value(), &space_dimension(m, n));
        assert_eq!(kappa(&top, n).to_u64(), None);
        assert_eq!(kappa(&top, n).to_string(), "1208925819614629174706176");
    }

    #[test]
    fn inverse_out_of_range() {
        assert!(kappa_inverse(&EmbeddedIndex::from(0), 2, 4).is_err());
        assert!(kappa_inverse(&EmbeddedIndex::from(17), 2, 4).is_err());
        assert!(kappa_inverse(&EmbeddedIndex::from(16), 2, 4).is_ok());
    }

    #[test]
    fn entry_validation() {
        assert!(TensorIndex::new(vec![1, 5], 4).is_err());
        assert!(TensorIndex::new(vec![0, 1], 4).is_err());
        assert_eq!(idx(&[3, 1], 4).to_string(), "3.1");
    }

    proptest! {
        #[test]
        fn round_trip(m in 1usize..=20, seed in proptest::collection::vec(0u32..u32::MAX, 20)) {
            let n = 2 * m as u32;
            let entries: Vec<u32> = seed[..m].iter().map(|s| s % n + 1).collect();
            let t = idx(&entries, n);
            let e = kappa(&t, n);
            prop_assert_eq!(kappa_inverse(&e, m, n).unwrap(), t);
        }

        #[test]
        fn order_preserving(a in proptest::collection::vec(1u32..=8, 4),
                            b in proptest::collection::vec(1u32..=8, 4)) {
            let (ta, tb) = (idx(&a, 8), idx(&b, 8));
            prop_assert_eq!(ta.cmp(&tb), kappa(&ta, 8).cmp(&kappa(&tb, 8)));
        }
    }
}
