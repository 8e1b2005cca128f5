//! Classical forward inference along the reference chain.
//!
//! Hypothesising a truth value for sentence `i` fixes the value of its
//! referent: if `i` is true its claim holds, if `i` is false the negation of
//! its claim holds. Endorsing the inferred value as the next hypothesis and
//! repeating traces the reasoning cycle. For a paradoxical configuration the
//! cycle has length `2m` and visits every sentence once as true and once as
//! false.

use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

use crate::config::{Configuration, Polarity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Truth {
    #[serde(rename = "T")]
    True,
    #[serde(rename = "F")]
    False,
}

impl Truth {
    pub fn as_char(self) -> char {
        match self {
            Truth::True => 'T',
            Truth::False => 'F',
        }
    }
}

impl Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// A truth value posited for one sentence, written `iT` / `iF`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub sentence: usize,
    pub value: Truth,
}

impl Hypothesis {
    pub fn new(sentence: usize, value: Truth) -> Self {
        Hypothesis { sentence, value }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sentence, self.value.as_char())
    }
}

/// Parses `"3:F"`, `"3F"` or `"3:false"`.
impl std::str::FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::Malformed(format!("hypothesis {s:?} lacks a truth value")))?;
        let (num, rest) = s.split_at(split);
        let sentence = num
            .parse()
            .map_err(|_| Error::Malformed(format!("hypothesis {s:?} lacks a sentence number")))?;
        let value = match rest.trim_start_matches(':').to_ascii_lowercase().as_str() {
            "t" | "true" => Truth::True,
            "f" | "false" => Truth::False,
            other => return Err(Error::Malformed(format!("unknown truth value {other:?}"))),
        };
        Ok(Hypothesis { sentence, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisStep {
    pub step: usize,
    pub sentence: usize,
    pub value: Truth,
}

impl HypothesisStep {
    pub fn hypothesis(&self) -> Hypothesis {
        Hypothesis::new(self.sentence, self.value)
    }
}

/// The closed `2m`-step sequence of hypotheses for a paradoxical
/// configuration. Serializes as a JSON array of
/// `{"step": k, "sentence": i, "value": "T"|"F"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReasoningCycle {
    steps: Vec<HypothesisStep>,
}

impl ReasoningCycle {
    pub fn steps(&self) -> &[HypothesisStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn m(&self) -> usize {
        self.steps.len() / 2
    }

    /// Hypothesis at 1-based `step`, wrapping cyclically.
    pub fn at(&self, step: usize) -> Hypothesis {
        let len = self.steps.len();
        self.steps[(step + len - 1) % len].hypothesis()
    }

    /// 1-based step at which `sentence` is hypothesised with `value`.
    pub fn step_of(&self, sentence: usize, value: Truth) -> Option<usize> {
        self.steps
            .iter()
            .find(|s| s.sentence == sentence && s.value == value)
            .map(|s| s.step)
    }

    pub fn hypotheses(&self) -> impl Iterator<Item = Hypothesis> + '_ {
        self.steps.iter().map(HypothesisStep::hypothesis)
    }
}

impl fmt::Display for ReasoningCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, h) in self.hypotheses().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str("}")
    }
}

/// One inference: from a hypothesis on `sentence`, the implied value of its
/// referent.
pub fn infer_next(config: &Configuration, current: Hypothesis) -> Hypothesis {
    let value = match config.polarity(current.sentence) {
        Polarity::Affirming => current.value,
        Polarity::Negating => !current.value,
    };
    Hypothesis::new(config.referent(current.sentence), value)
}

/// Reasoning cycle from the canonical start `1T`.
pub fn canonical_cycle(config: &Configuration) -> Result<ReasoningCycle> {
    reasoning_cycle(config, Hypothesis::new(1, Truth::True))
}

/// Iterates [`infer_next`] from `start` and collects the `2m` hypotheses.
///
/// Fails with [`Error::NotParadoxical`] when the chain closes after `m`
/// inferences without flipping the start value.
pub fn reasoning_cycle(config: &Configuration, start: Hypothesis) -> Result<ReasoningCycle> {
    config.check_sentence(start.sentence)?;
    let m = config.m();
    let mut steps = Vec::with_capacity(2 * m);
    let mut current = start;
    for step in 1..=2 * m {
        if step == m + 1 && current == start {
            return Err(Error::NotParadoxical);
        }
        steps.push(HypothesisStep {
            step,
            sentence: current.sentence,
            value: current.value,
        });
        current = infer_next(config, current);
    }
    debug_assert_eq!(current, start);
    Ok(ReasoningCycle { steps })
}
