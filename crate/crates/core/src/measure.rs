//! Diagonal projectors acting on one sentence factor.
//!
//! A projector is stored symbolically as a sentence plus the set of entries
//! it keeps on that sentence's factor; it acts as the identity on every other
//! factor. Applying it to a sparse state filters the support, so no
//! `(2m)^m` matrix is ever formed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::inference::{Hypothesis, Truth};
use crate::state::SparseState;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectorSpec {
    m: usize,
    sentence: usize,
    entries: BTreeSet<u32>,
}

impl ProjectorSpec {
    /// Projector keeping `entries` on `sentence` in an m-sentence model.
    pub fn new(m: usize, sentence: usize, entries: impl IntoIterator<Item = u32>) -> Result<Self> {
        if sentence == 0 || sentence > m {
            return Err(Error::out_of_range("sentence", format!("{sentence} not in 1..={m}")));
        }
        let n = 2 * m as u32;
        let entries: BTreeSet<u32> = entries.into_iter().collect();
        if entries.is_empty() {
            return Err(Error::Malformed("projector needs at least one entry".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::out_of_range("entry", format!("{bad} not in 1..={n}")));
        }
        Ok(ProjectorSpec { m, sentence, entries })
    }

    pub fn sentence(&self) -> usize {
        self.sentence
    }

    pub fn entries(&self) -> &BTreeSet<u32> {
        &self.entries
    }

    /// Diagonal coefficient (0 or 1) on entry `j` of this projector's sentence.
    pub fn coefficient(&self, j: u32) -> u8 {
        u8::from(self.entries.contains(&j))
    }

    /// Raw projection `P psi`, without renormalization.
    pub fn apply(&self, state: &SparseState) -> SparseState {
        state.filtered(|index| self.entries.contains(&index.entry(self.sentence)))
    }

    /// `||P psi||^2`.
    pub fn probability(&self, state: &SparseState) -> f64 {
        state
            .terms()
            .filter(|(index, _)| self.entries.contains(&index.entry(self.sentence)))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Same sentence and disjoint entry sets: the ranges are orthogonal and
    /// the product is the zero operator.
    pub fn is_orthogonal_to(&self, other: &ProjectorSpec) -> bool {
        self.m == other.m
            && self.sentence == other.sentence
            && self.entries.is_disjoint(&other.entries)
    }
}

/// `T_i`: keeps entry `2m-1` of sentence `i`.
pub fn truth_hypothesis_projector(m: usize, sentence: usize) -> Result<ProjectorSpec> {
    ProjectorSpec::new(m, sentence, [2 * m as u32 - 1])
}

/// `F_i`: keeps entry `2m` of sentence `i`.
pub fn falsehood_hypothesis_projector(m: usize, sentence: usize) -> Result<ProjectorSpec> {
    ProjectorSpec::new(m, sentence, [2 * m as u32])
}

pub fn hypothesis_projector(m: usize, hypothesis: Hypothesis) -> Result<ProjectorSpec> {
    match hypothesis.value {
        Truth::True => truth_hypothesis_projector(m, hypothesis.sentence),
        Truth::False => falsehood_hypothesis_projector(m, hypothesis.sentence),
    }
}

/// Truth-value-by-inference projector on entry `j` in `1..=2m-2`.
pub fn inference_projector(m: usize, sentence: usize, j: u32) -> Result<ProjectorSpec> {
    let limit = 2 * m as u32 - 2;
    if j == 0 || j > limit {
        return Err(Error::out_of_range(
            "inference entry",
            format!("{j} not in 1..={limit}; entries 2m-1 and 2m belong to the hypothesis projectors"),
        ));
    }
    ProjectorSpec::new(m, sentence, [j])
}

/// All `2m` single-entry projectors of one sentence: inference entries
/// `1..=2m-2`, then `T_i`, then `F_i`. They resolve the identity.
pub fn sentence_resolution(m: usize, sentence: usize) -> Result<Vec<ProjectorSpec>> {
    (1..=2 * m as u32).map(|j| ProjectorSpec::new(m, sentence, [j])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CollapseMode {
    /// Rescale the projected state to unit norm.
    #[default]
    Renormalize,
    /// Keep the raw projection `P psi`.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Collapse {
    pub state: SparseState,
    /// `||P psi||^2` of the raw projection.
    pub probability: f64,
}

/// Projects `state` by `projector`. A null projection yields probability 0
/// and the null state.
pub fn collapse(state: &SparseState, projector: &ProjectorSpec, mode: CollapseMode) -> Collapse {
    let projected = projector.apply(state);
    let probability = projected.norm_sqr();
    let state = if probability == 0.0 {
        SparseState::null(state.m(), state.n())
    } else {
        match mode {
            CollapseMode::Renormalize => projected.normalized(),
            CollapseMode::Raw => projected,
        }
    };
    Collapse { state, probability }
}
