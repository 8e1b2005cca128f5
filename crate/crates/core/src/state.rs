//! Sentence entries, the reasoning-cycle basis states and the equiponderate
//! initial state.
//!
//! Each sentence factor is `C^(2m)`. Entry `2m-1` means "true by hypothesis",
//! entry `2m` "false by hypothesis"; the remaining `2m-2` entries count the
//! inferences until the sentence is next hypothesised (see
//! [`interpret_entry`]).
//!
//! Over one reasoning cycle every sentence walks through the canonical entry
//! cycle `(2m-1, 2m-2, ..., m, 2m, m-1, ..., 1)`, phase-shifted so that entry
//! `2m-1` lands on the step where that sentence is hypothesised true (and
//! therefore `2m` on the step where it is hypothesised false).

use std::collections::BTreeMap;

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::index::{kappa, EmbeddedIndex, TensorIndex};
use crate::inference::{canonical_cycle, Truth};

/// Normalization tolerance for states produced by this crate.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Largest `m` for which [`SparseState::to_dense`] materializes `(2m)^m`
/// amplitudes.
pub const DENSE_BOUND: usize = 3;

/// Per-sentence dimension `n = 2m`.
pub fn sentence_dimension(m: usize) -> u32 {
    2 * m as u32
}

/// `(2m-1, 2m-2, ..., m, 2m, m-1, ..., 1)`.
pub fn canonical_entry_cycle(m: usize) -> Vec<u32> {
    let m = m as u32;
    (m..2 * m).rev().chain(std::iter::once(2 * m)).chain((1..m).rev()).collect()
}

/// The `2m` basis states visited over one reasoning cycle, in step order
/// starting from the canonical hypothesis `1T`.
///
/// Sentence `i` in state `t` carries `C[(t - t_i) mod 2m]`, where `C` is the
/// canonical entry cycle and `t_i` the step at which `i` is hypothesised
/// true.
pub fn cycle_states(config: &Configuration) -> Result<Vec<TensorIndex>> {
    let cycle = canonical_cycle(config)?;
    let m = config.m();
    let period = 2 * m;
    let entries = canonical_entry_cycle(m);
    let true_steps: Vec<usize> = (1..=m)
        .map(|s| cycle.step_of(s, Truth::True).expect("every sentence is hypothesised true once"))
        .collect();

    Ok((1..=period)
        .map(|t| {
            let tuple = true_steps
                .iter()
                .map(|&ti| entries[(t + period - ti) % period])
                .collect();
            TensorIndex::new_unchecked(tuple)
        })
        .collect())
}

/// Meaning of entry `j` of a sentence vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryMeaning {
    /// True by inference from its referent; hypothesised true after
    /// `inferences` more inferences.
    TrueByInference { inferences: u32 },
    /// False by inference; hypothesised false after `inferences` more
    /// inferences.
    FalseByInference { inferences: u32 },
    TrueByHypothesis,
    FalseByHypothesis,
}

pub fn interpret_entry(j: u32, m: usize) -> Result<EntryMeaning> {
    let m = m as u32;
    match j {
        _ if j == 0 || j > 2 * m => {
            Err(Error::out_of_range("entry", format!("{j} not in 1..={}", 2 * m)))
        }
        _ if j == 2 * m => Ok(EntryMeaning::FalseByHypothesis),
        _ if j == 2 * m - 1 => Ok(EntryMeaning::TrueByHypothesis),
        _ if j >= m => Ok(EntryMeaning::FalseByInference { inferences: j + 1 - m }),
        _ => Ok(EntryMeaning::TrueByInference { inferences: j }),
    }
}

/// A state with few nonzero amplitudes over the `(2m)^m`-dimensional space.
///
/// Terms keep insertion order, which for the states built here is reasoning
/// step order. A state with no terms is the null vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    m: usize,
    n: u32,
    amplitudes: IndexMap<TensorIndex, Complex64>,
}

impl SparseState {
    pub fn null(m: usize, n: u32) -> Self {
        SparseState {
            m,
            n,
            amplitudes: IndexMap::new(),
        }
    }

    /// Builds a state from terms, summing duplicates.
    pub fn from_terms(
        m: usize,
        n: u32,
        terms: impl IntoIterator<Item = (TensorIndex, Complex64)>,
    ) -> Result<Self> {
        let mut state = Self::null(m, n);
        for (index, amp) in terms {
            if index.m() != m {
                return Err(Error::Malformed(format!(
                    "tuple {index} has {} entries, expected {m}",
                    index.m()
                )));
            }
            TensorIndex::new(index.entries().to_vec(), n)?;
            *state.amplitudes.entry(index).or_default() += amp;
        }
        Ok(state)
    }

    /// A single normalized basis vector.
    pub fn basis(index: TensorIndex, n: u32) -> Result<Self> {
        let m = index.m();
        Self::from_terms(m, n, [(index, Complex64::new(1.0, 0.0))])
    }

    pub(crate) fn from_terms_unchecked(
        m: usize,
        n: u32,
        amplitudes: IndexMap<TensorIndex, Complex64>,
    ) -> Self {
        SparseState { m, n, amplitudes }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorIndex, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_null(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, index: &TensorIndex) -> Complex64 {
        self.amplitudes.get(index).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(Complex64::norm_sqr).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// Rescaled to unit norm; the null state stays null.
    pub fn normalized(&self) -> Self {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / norm, 0.0))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let amplitudes = self.amplitudes.iter().map(|(k, v)| (k.clone(), v * factor)).collect();
        SparseState { amplitudes, ..*self }
    }

    /// `<self | other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &SparseState) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(k, a)| a.conj() * other.amplitude(k))
            .sum()
    }

    /// `||self - other||` over the union of supports.
    pub fn distance(&self, other: &SparseState) -> f64 {
        let mut sq = 0.0;
        for (k, a) in &self.amplitudes {
            sq += (a - other.amplitude(k)).norm_sqr();
        }
        for (k, b) in &other.amplitudes {
            if !self.amplitudes.contains_key(k) {
                sq += b.norm_sqr();
            }
        }
        sq.sqrt()
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&TensorIndex) -> bool) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .filter(|(k, _)| keep(k))
            .map(|(k, v)| (k.clone(), *v))
            .collect();
        SparseState { amplitudes, ..*self }
    }

    /// Dense amplitude vector in embedded-index order (0-based position
    /// `kappa - 1`). Only for `m <= DENSE_BOUND`.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        if self.m > DENSE_BOUND {
            return Err(Error::BoundExceeded {
                m: self.m,
                bound: DENSE_BOUND,
            });
        }
        let dim = (self.n as usize).pow(self.m as u32);
        let mut dense = vec![Complex64::default(); dim];
        for (k, v) in &self.amplitudes {
            let pos = kappa(k, self.n).to_u64().expect("small space") as usize - 1;
            dense[pos] += v;
        }
        Ok(dense)
    }
}

/// Uniform real superposition of the `2m` cycle states, amplitude
/// `1/sqrt(2m)` each.
pub fn build_initial_state(config: &Configuration) -> Result<SparseState> {
    let states = cycle_states(config)?;
    let amp = Complex64::new(1.0 / (states.len() as f64).sqrt(), 0.0);
    let m = config.m();
    let amplitudes = states.into_iter().map(|s| (s, amp)).collect();
    Ok(SparseState::from_terms_unchecked(m, sentence_dimension(m), amplitudes))
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    tuple: Vec<u32>,
    embedded: String,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct WireState {
    m: usize,
    n: u32,
    terms: Vec<WireTerm>,
}

/// `{"m":..,"n":..,"terms":[{"tuple":[..],"embedded":"<decimal>","re":..,"im":..}]}`
impl Serialize for SparseState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .amplitudes
            .iter()
            .map(|(k, v)| WireTerm {
                tuple: k.entries().to_vec(),
                embedded: kappa(k, self.n).to_string(),
                re: v.re,
                im: v.im,
            })
            .collect();
        WireState {
            m: self.m,
            n: self.n,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WireState::deserialize(deserializer)?;
        let mut seen = BTreeMap::new();
        let mut terms = Vec::with_capacity(wire.terms.len());
        for term in wire.terms {
            let index = TensorIndex::new(term.tuple, wire.n).map_err(D::Error::custom)?;
            let embedded: EmbeddedIndex = term.embedded.parse().map_err(D::Error::custom)?;
            if kappa(&index, wire.n) != embedded {
                return Err(D::Error::custom(format!(
                    "embedded index {embedded} does not match tuple {index}"
                )));
            }
            if seen.insert(index.clone(), ()).is_some() {
                return Err(D::Error::custom(format!("duplicate tuple {index}")));
            }
            terms.push((index, Complex64::new(term.re, term.im)));
        }
        SparseState::from_terms(wire.m, wire.n, terms).map_err(D::Error::custom)
    }
}
