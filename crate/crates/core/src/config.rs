//! Liar Paradox configurations.
//!
//! A configuration of `m` sentences is a single reference cycle (each
//! sentence speaks about exactly one other sentence, and following the
//! references visits every sentence before returning) together with a claim
//! polarity per sentence: *affirming* ("sentence k is true") or *negating*
//! ("sentence k is false"). The configuration is paradoxical exactly when the
//! number of negating claims is odd.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `m` accepted by [`enumerate_paradoxical`] by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// The sentence asserts that its referent is true.
    Affirming,
    /// The sentence asserts that its referent is false.
    Negating,
}

/// One m-sentence Liar configuration.
///
/// Sentences are numbered from 1. `referent[i - 1]` is the sentence that
/// sentence `i` talks about and `negating[i - 1]` is its claim polarity.
/// Values of this type always satisfy the single-cycle invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct Configuration {
    referent: Vec<usize>,
    negating: Vec<bool>,
}

/// Unvalidated wire form: `{"m": .., "referent": [..], "negating": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawConfiguration {
    pub m: usize,
    pub referent: Vec<usize>,
    pub negating: Vec<bool>,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        if raw.referent.len() != raw.m || raw.negating.len() != raw.m {
            return Err(Error::Malformed(format!(
                "m = {} but referent has {} entries and negating has {}",
                raw.m,
                raw.referent.len(),
                raw.negating.len()
            )));
        }
        validate(Configuration {
            referent: raw.referent,
            negating: raw.negating,
        })
    }
}

impl From<Configuration> for RawConfiguration {
    fn from(config: Configuration) -> Self {
        RawConfiguration {
            m: config.m(),
            referent: config.referent,
            negating: config.negating,
        }
    }
}

/// Checks that the referent map is a single cycle over all sentences.
///
/// For `m = 1` the only valid map is the self-reference `1 -> 1`.
pub fn validate(config: Configuration) -> Result<Configuration> {
    let m = config.referent.len();
    if m == 0 {
        return Err(Error::Malformed("a configuration needs at least one sentence".into()));
    }
    if config.negating.len() != m {
        return Err(Error::Malformed(format!(
            "{} referents but {} polarities",
            m,
            config.negating.len()
        )));
    }
    if let Some(&bad) = config.referent.iter().find(|&&r| r == 0 || r > m) {
        return Err(Error::out_of_range("referent", format!("{bad} not in 1..={m}")));
    }

    // Walk the reference chain from sentence 1; a single m-cycle visits every
    // sentence exactly once before coming back.
    let mut seen = vec![false; m];
    let mut current = 1;
    for _ in 0..m {
        if seen[current - 1] {
            return Err(Error::NotSingleCycle { m });
        }
        seen[current - 1] = true;
        current = config.referent[current - 1];
    }
    if current != 1 {
        return Err(Error::NotSingleCycle { m });
    }
    Ok(config)
}

impl Configuration {
    /// Builds and validates a configuration from 1-based referents and
    /// per-sentence negation flags.
    pub fn new(referent: Vec<usize>, negating: Vec<bool>) -> Result<Self> {
        validate(Configuration { referent, negating })
    }

    /// The chain `1 -> 2 -> ... -> m -> 1` with the given negation flags.
    pub fn chain(negating: Vec<bool>) -> Result<Self> {
        let m = negating.len();
        let referent = (1..=m).map(|i| i % m + 1).collect();
        Self::new(referent, negating)
    }

    /// "This sentence is false."
    pub fn single_liar() -> Self {
        Self::new(vec![1], vec![true]).expect("self-reference is a valid 1-cycle")
    }

    /// The eight-sentence configuration whose reasoning sequence starting
    /// from sentence 1 true reads `1T 3F 8F 2F 7T 4F 6F 5T`.
    ///
    /// Reference cycle `1 -> 3 -> 8 -> 2 -> 7 -> 4 -> 6 -> 5 -> 1`, with
    /// negating claims on sentences 1, 2, 5, 6 and 7. The polarities follow
    /// from that sequence through [`crate::inference::infer_next`].
    pub fn eight_liar() -> Self {
        Self::new(
            vec![3, 7, 8, 6, 1, 5, 4, 2],
            vec![true, true, false, false, true, true, true, false],
        )
        .expect("8-cycle is valid")
    }

    /// Number of sentences.
    pub fn m(&self) -> usize {
        self.referent.len()
    }

    /// Sentence referred to by `sentence` (both 1-based).
    ///
    /// Panics if `sentence` is not in `1..=m`.
    pub fn referent(&self, sentence: usize) -> usize {
        self.referent[sentence - 1]
    }

    pub fn polarity(&self, sentence: usize) -> Polarity {
        if self.negating[sentence - 1] {
            Polarity::Negating
        } else {
            Polarity::Affirming
        }
    }

    pub fn referents(&self) -> &[usize] {
        &self.referent
    }

    pub fn negating(&self) -> &[bool] {
        &self.negating
    }

    pub fn negation_count(&self) -> usize {
        self.negating.iter().filter(|&&n| n).count()
    }

    /// True iff the number of negating claims is odd.
    pub fn is_paradoxical(&self) -> bool {
        self.negation_count() % 2 == 1
    }

    /// Same reference structure with the polarity of `sentence` flipped.
    pub fn with_flipped(&self, sentence: usize) -> Result<Self> {
        if sentence == 0 || sentence > self.m() {
            return Err(Error::out_of_range("sentence", format!("{sentence} not in 1..={}", self.m())));
        }
        let mut flipped = self.clone();
        flipped.negating[sentence - 1] ^= true;
        Ok(flipped)
    }

    /// Sentences in reference order starting from sentence 1.
    pub fn cycle_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.m());
        let mut current = 1;
        for _ in 0..self.m() {
            order.push(current);
            current = self.referent(current);
        }
        order
    }

    pub(crate) fn check_sentence(&self, sentence: usize) -> Result<()> {
        if sentence == 0 || sentence > self.m() {
            Err(Error::out_of_range("sentence", format!("{sentence} not in 1..={}", self.m())))
        } else {
            Ok(())
        }
    }
}

/// Number of paradoxical m-sentence configurations,
/// `(m-1)! * sum_{k odd} C(m, k)`, in exact arithmetic.
///
/// `(m-1)!` counts the single reference cycles and the binomial sum counts
/// the ways of placing an odd number of negations on the `m` relations.
pub fn count_paradoxical(m: usize) -> BigUint {
    if m == 0 {
        return BigUint::default();
    }
    let cycles = factorial(m - 1);
    let placements: BigUint = (1..=m).step_by(2).map(|k| binomial(m, k)).sum();
    cycles * placements
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binomial(m: usize, k: usize) -> BigUint {
    factorial(m) / (factorial(k) * factorial(m - k))
}

/// Every paradoxical configuration of `m` sentences, each exactly once.
///
/// Guarded by [`DEFAULT_ENUMERATION_BOUND`]; see
/// [`enumerate_paradoxical_bounded`] to raise it.
pub fn enumerate_paradoxical(m: usize) -> Result<impl Iterator<Item = Configuration>> {
    enumerate_paradoxical_bounded(m, DEFAULT_ENUMERATION_BOUND)
}

/// Brute-force enumeration: all single cycles on `1..=m` times all `2^m`
/// polarity vectors, filtered by [`Configuration::is_paradoxical`].
pub fn enumerate_paradoxical_bounded(
    m: usize,
    bound: usize,
) -> Result<impl Iterator<Item = Configuration>> {
    if m == 0 {
        return Err(Error::Malformed("a configuration needs at least one sentence".into()));
    }
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    let masks = 1u64 << m;
    Ok(SingleCycles::new(m).flat_map(move |referent| {
        (0..masks).filter_map(move |mask| {
            let negating = (0..m).map(|bit| mask >> bit & 1 == 1).collect();
            let config = Configuration {
                referent: referent.clone(),
                negating,
            };
            config.is_paradoxical().then_some(config)
        })
    }))
}

/// Iterates single m-cycles as referent vectors. Each cycle is written as
/// `1 -> p[0] -> p[1] -> ... -> 1` for a permutation `p` of `2..=m`, produced
/// in lexicographic order.
struct SingleCycles {
    m: usize,
    tail: Option<Vec<usize>>,
}

impl SingleCycles {
    fn new(m: usize) -> Self {
        SingleCycles {
            m,
            tail: Some((2..=m).collect()),
        }
    }
}

impl Iterator for SingleCycles {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let tail = self.tail.as_mut()?;
        let mut referent = vec![0; self.m];
        let mut previous = 1;
        for &s in tail.iter() {
            referent[previous - 1] = s;
            previous = s;
        }
        referent[previous - 1] = 1;

        if !next_permutation(tail) {
            self.tail = None;
        }
        Some(referent)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
    v.swap(pivot, successor);
    v[pivot + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_liar_is_valid_and_paradoxical() {
        let c = Configuration::new(vec![1], vec![true]).unwrap();
        assert!(c.is_paradoxical());
        assert_eq!(c, Configuration::single_liar());
    }

    #[test]
    fn canonical_three_cycle_accepts_any_polarity() {
        for mask in 0..8u8 {
            let negating = (0..3).map(|b| mask >> b & 1 == 1).collect();
            assert!(Configuration::new(vec![2, 3, 1], negating).is_ok());
        }
    }

    #[test]
    fn fixed_point_plus_two_cycle_is_rejected() {
        assert_eq!(
            Configuration::new(vec![1, 3, 2], vec![true; 3]),
            Err(Error::NotSingleCycle { m: 3 })
        );
    }

    #[test]
    fn identity_rejected_for_m_above_one() {
        assert_eq!(
            Configuration::new(vec![1, 2], vec![true, false]),
            Err(Error::NotSingleCycle { m: 2 })
        );
    }

    #[test]
    fn referent_out_of_range() {
        assert!(matches!(
            Configuration::new(vec![2, 3], vec![true, false]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            Configuration::new(vec![0], vec![true]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn paradox_parity() {
        let both_affirming = Configuration::new(vec![2, 1], vec![false, false]).unwrap();
        assert!(!both_affirming.is_paradoxical());
        let eight = Configuration::eight_liar();
        assert_eq!(eight.negation_count(), 5);
        assert!(eight.is_paradoxical());
        assert_eq!(eight.cycle_order(), vec![1, 3, 8, 2, 7, 4, 6, 5]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_paradoxical(1), BigUint::from(1u32));
        assert_eq!(count_paradoxical(2), BigUint::from(2u32));
        assert_eq!(count_paradoxical(5), BigUint::from(384u32));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_paradoxical(1).unwrap().count(), 1);
        assert_eq!(enumerate_paradoxical(3).unwrap().count(), 8);
        assert_eq!(enumerate_paradoxical(4).unwrap().count(), 48);
        let only = enumerate_paradoxical(1).unwrap().next().unwrap();
        assert_eq!(only, Configuration::single_liar());
    }

    #[test]
    fn enumeration_bound() {
        assert_eq!(
            enumerate_paradoxical(9).err(),
            Some(Error::BoundExceeded { m: 9, bound: 8 })
        );
    }

    #[test]
    fn json_wire_format() {
        let json = r#"{"m":2,"referent":[2,1],"negating":[false,true]}"#;
        let c: Configuration = serde_json::from_str(json).unwrap();
        assert_eq!(c.referent(1), 2);
        assert_eq!(c.polarity(2), Polarity::Negating);
        assert_eq!(serde_json::to_string(&c).unwrap(), json);
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = r#"{"m":3,"referent":[1,3,2],"negating":[true,true,true]}"#;
        assert!(serde_json::from_str::<Configuration>(bad).is_err());
        let short = r#"{"m":3,"referent":[2,3,1],"negating":[true]}"#;
        assert!(serde_json::from_str::<Configuration>(short).is_err());
    }
}
