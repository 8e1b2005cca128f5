//! Symbolic audit of the sentence-subspace dimension.
//!
//! The `2m` hypothesis projectors are written with unknown diagonal
//! coefficients `tau[j,i]`, `phi[j,i]` in `{0, 1}` and the initial state with
//! unknown amplitudes `alpha[k_1...k_m]`. Each projector is then required to
//! map the initial state onto a single basis tuple with an opaque positive
//! outcome coefficient (`t_i` or `f_i`). Working in simple-index labels,
//! `T_i` targets `(i, ..., i)` and `F_i` targets `(m+i, ..., m+i)`.
//!
//! With `n = 2m` entries per sentence these constraints have a unique
//! solution. With `n = 2m - 1` there is no room for `(2m, ..., 2m)`, so the
//! last falsehood constraint has to reuse low entries, e.g. `(1, ..., 1, 2)`,
//! and propagation derives a contradiction.
//!
//! Only tuples named by some constraint are materialized; every other
//! amplitude can be taken as zero without affecting any equation.

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::index::TensorIndex;
use crate::inference::{canonical_cycle, Truth};
use crate::state::cycle_states;

/// Largest `m` accepted by [`verify_minimality`] by default.
pub const DEFAULT_AUDIT_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProjectorKind {
    Truth,
    Falsehood,
}

/// `tau[entry, sentence]` or `phi[entry, sentence]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coefficient {
    pub kind: ProjectorKind,
    pub entry: u32,
    pub sentence: usize,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ProjectorKind::Truth => "tau",
            ProjectorKind::Falsehood => "phi",
        };
        write!(f, "{name}[{},{}]", self.entry, self.sentence)
    }
}

/// Opaque positive outcome coefficient `t_i` / `f_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Outcome {
    pub kind: ProjectorKind,
    pub sentence: usize,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ProjectorKind::Truth => 't',
            ProjectorKind::Falsehood => 'f',
        };
        write!(f, "{name}_{}", self.sentence)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AmplitudeValue {
    Zero,
    /// Equal to a positive outcome symbol.
    Positive(Outcome),
}

impl fmt::Display for AmplitudeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmplitudeValue::Zero => f.write_str("0"),
            AmplitudeValue::Positive(o) => o.fmt(f),
        }
    }
}

/// `coefficient * alpha[amplitude] = rhs`, with `rhs = None` meaning 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub coefficient: Coefficient,
    #[serde(serialize_with = "serialize_tuple")]
    pub amplitude: TensorIndex,
    pub rhs: Option<Outcome>,
}

fn serialize_tuple<S: serde::Serializer>(t: &TensorIndex, s: S) -> std::result::Result<S::Ok, S::Error> {
    t.entries().serialize(s)
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * alpha[{}] = ", self.coefficient, self.amplitude)?;
        match self.rhs {
            Some(o) => write!(f, "{o}"),
            None => f.write_str("0"),
        }
    }
}

/// A fact read off one positive equation: since the coefficient is 0 or 1
/// and the right-hand side is positive, the coefficient is 1 and the
/// amplitude equals the outcome symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub equation: Equation,
    pub coefficient: Coefficient,
    pub coefficient_value: u8,
    #[serde(serialize_with = "serialize_tuple")]
    pub amplitude: TensorIndex,
    pub amplitude_value: AmplitudeValue,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} with coefficients in {{0,1}} gives {} = {} and alpha[{}] = {}",
            self.equation, self.coefficient, self.coefficient_value, self.amplitude, self.amplitude_value
        )
    }
}

/// Three facts that cannot hold together: an amplitude forced positive, a
/// coefficient forced to 1, and an equation requiring their product to
/// vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub amplitude_fact: Derivation,
    pub coefficient_fact: Derivation,
    pub annihilation: Equation,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(1) {}", self.amplitude_fact)?;
        writeln!(f, "(2) {}", self.coefficient_fact)?;
        writeln!(
            f,
            "(3) {} requires {} = 0 or alpha[{}] = 0",
            self.annihilation, self.annihilation.coefficient, self.annihilation.amplitude
        )?;
        write!(
            f,
            "(1) and (2) give {} = 1 and alpha[{}] = {} > 0, contradicting (3)",
            self.annihilation.coefficient, self.annihilation.amplitude, self.amplitude_fact.amplitude_value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub coefficients: BTreeMap<Coefficient, u8>,
    #[serde(serialize_with = "serialize_amplitudes")]
    pub amplitudes: IndexMap<TensorIndex, AmplitudeValue>,
}

fn serialize_amplitudes<S: serde::Serializer>(
    a: &IndexMap<TensorIndex, AmplitudeValue>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(a.len()))?;
    for (k, v) in a {
        seq.serialize_element(&(k.entries(), v))?;
    }
    seq.end()
}

impl Assignment {
    pub fn coefficient(&self, c: &Coefficient) -> Option<u8> {
        self.coefficients.get(c).copied()
    }

    pub fn amplitude(&self, t: &TensorIndex) -> Option<AmplitudeValue> {
        self.amplitudes.get(t).copied()
    }

    /// True iff this is the simple-index solution for `m` sentences:
    /// `tau[i,i] = 1`, `alpha[i...i] = t_i`, `phi[m+i,i] = 1`,
    /// `alpha[m+i...m+i] = f_i`, and every other determined coefficient 0.
    pub fn is_simple_index_solution(&self, m: usize) -> bool {
        let n = 2 * m as u32;
        let mut expected_ones = Vec::new();
        for i in 1..=m {
            let t = TensorIndex::new_unchecked(vec![i as u32; m]);
            let f = TensorIndex::new_unchecked(vec![m as u32 + i as u32; m]);
            let tau = Coefficient { kind: ProjectorKind::Truth, entry: i as u32, sentence: i };
            let phi = Coefficient { kind: ProjectorKind::Falsehood, entry: (m + i) as u32, sentence: i };
            if self.amplitude(&t) != Some(AmplitudeValue::Positive(Outcome { kind: ProjectorKind::Truth, sentence: i }))
                || self.amplitude(&f)
                    != Some(AmplitudeValue::Positive(Outcome { kind: ProjectorKind::Falsehood, sentence: i }))
            {
                return false;
            }
            expected_ones.push(tau);
            expected_ones.push(phi);
        }
        let all_determined = (1..=m).all(|i| {
            (1..=n).all(|j| {
                [ProjectorKind::Truth, ProjectorKind::Falsehood].iter().all(|&kind| {
                    self.coefficients.contains_key(&Coefficient { kind, entry: j, sentence: i })
                })
            })
        });
        all_determined
            && self.amplitudes.len() == 2 * m
            && self
                .coefficients
                .iter()
                .all(|(c, &v)| v == u8::from(expected_ones.contains(c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Solution {
    /// Every unknown is forced; the assignment is the unique solution.
    Satisfiable(Assignment),
    Contradiction(Witness),
}

impl Solution {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, Solution::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Solution::Contradiction(w) => Some(w),
            _ => None,
        }
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            Solution::Satisfiable(a) => Some(a),
            _ => None,
        }
    }
}

/// A projector constraint: `kind_sentence Psi0 = outcome * e_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ProjectorKind,
    pub sentence: usize,
    pub target: TensorIndex,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    m: usize,
    n: u32,
    constraints: Vec<Constraint>,
    tuples: Vec<TensorIndex>,
    equations: Vec<Equation>,
}

impl ConstraintSystem {
    /// Materializes the component equations of the given constraints over
    /// the tuples they name.
    pub fn new(m: usize, n: u32, constraints: Vec<Constraint>) -> Result<Self> {
        let mut tuples: Vec<TensorIndex> = Vec::new();
        for c in &constraints {
            if c.sentence == 0 || c.sentence > m {
                return Err(Error::out_of_range("sentence", format!("{} not in 1..={m}", c.sentence)));
            }
            if c.target.m() != m {
                return Err(Error::Malformed(format!("target {} is not an {m}-tuple", c.target)));
            }
            TensorIndex::new(c.target.entries().to_vec(), n)?;
            if tuples.contains(&c.target) {
                return Err(Error::Malformed(format!("target {} used twice", c.target)));
            }
            tuples.push(c.target.clone());
        }

        let equations = constraints
            .iter()
            .flat_map(|c| {
                tuples.iter().map(move |u| Equation {
                    coefficient: Coefficient {
                        kind: c.kind,
                        entry: u.entry(c.sentence),
                        sentence: c.sentence,
                    },
                    amplitude: u.clone(),
                    rhs: (u == &c.target).then_some(Outcome {
                        kind: c.kind,
                        sentence: c.sentence,
                    }),
                })
            })
            .collect();

        Ok(ConstraintSystem {
            m,
            n,
            constraints,
            tuples,
            equations,
        })
    }

    /// The simple-index constraint set for `n = 2m`, or its `n = 2m - 1`
    /// variant where `F_m` targets `(1, ..., 1, 2)`.
    pub fn simple_index(m: usize, n: u32) -> Result<Self> {
        let two_m = 2 * m as u32;
        if m == 0 || !(n == two_m || n + 1 == two_m) {
            return Err(Error::UnsupportedDimension { m, n });
        }
        if n + 1 == two_m && m < 2 {
            return Err(Error::UnsupportedDimension { m, n });
        }
        let uniform = |e: u32| TensorIndex::new_unchecked(vec![e; m]);
        let mut constraints: Vec<Constraint> = (1..=m)
            .map(|i| Constraint {
                kind: ProjectorKind::Truth,
                sentence: i,
                target: uniform(i as u32),
            })
            .collect();
        for i in 1..=m {
            let target = if n == two_m || i < m {
                uniform((m + i) as u32)
            } else {
                let mut entries = vec![1; m];
                entries[m - 1] = 2;
                TensorIndex::new_unchecked(entries)
            };
            constraints.push(Constraint {
                kind: ProjectorKind::Falsehood,
                sentence: i,
                target,
            });
        }
        Self::new(m, n, constraints)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn tuples(&self) -> &[TensorIndex] {
        &self.tuples
    }

    /// Forward propagation. Positive equations are read first (each forces
    /// its coefficient to 1 and its amplitude to the outcome symbol), then
    /// zero equations are swept in constraint order until nothing changes.
    pub fn solve(&self) -> Solution {
        let mut coeffs: BTreeMap<Coefficient, (u8, Option<usize>)> = BTreeMap::new();
        let mut amps: IndexMap<TensorIndex, (AmplitudeValue, Option<usize>)> = IndexMap::new();
        let mut derivations: Vec<Option<Derivation>> = vec![None; self.equations.len()];

        for (k, eq) in self.equations.iter().enumerate() {
            let Some(outcome) = eq.rhs else { continue };
            coeffs.insert(eq.coefficient, (1, Some(k)));
            amps.insert(eq.amplitude.clone(), (AmplitudeValue::Positive(outcome), Some(k)));
            derivations[k] = Some(Derivation {
                equation: eq.clone(),
                coefficient: eq.coefficient,
                coefficient_value: 1,
                amplitude: eq.amplitude.clone(),
                amplitude_value: AmplitudeValue::Positive(outcome),
            });
        }

        let mut changed = true;
        while changed {
            changed = false;
            for eq in self.equations.iter().filter(|e| e.rhs.is_none()) {
                let coefficient = coeffs.get(&eq.coefficient).copied();
                let amplitude = amps.get(&eq.amplitude).copied();
                match (coefficient, amplitude) {
                    (Some((1, Some(ck))), Some((AmplitudeValue::Positive(_), Some(ak)))) => {
                        let fact = |k: usize| derivations[k].clone().expect("positive equation");
                        return Solution::Contradiction(Witness {
                            amplitude_fact: fact(ak),
                            coefficient_fact: fact(ck),
                            annihilation: eq.clone(),
                        });
                    }
                    (Some((1, _)), None) => {
                        amps.insert(eq.amplitude.clone(), (AmplitudeValue::Zero, None));
                        changed = true;
                    }
                    (None, Some((AmplitudeValue::Positive(_), _))) => {
                        coeffs.insert(eq.coefficient, (0, None));
                        changed = true;
                    }
                    _ => {}
                }
            }
        }

        // Every materialized tuple is some constraint's target, so each zero
        // equation meets a positive amplitude and fixes its coefficient.
        debug_assert!(self.equations.iter().all(|e| coeffs.contains_key(&e.coefficient)));

        let ordered: IndexMap<_, _> = self
            .tuples
            .iter()
            .map(|t| (t.clone(), amps[t].0))
            .collect();
        Solution::Satisfiable(Assignment {
            coefficients: coeffs.into_iter().map(|(c, (v, _))| (c, v)).collect(),
            amplitudes: ordered,
        })
    }
}

/// Solves the simple-index constraint system for `n` in `{2m - 1, 2m}`.
pub fn solve_constraints(m: usize, n: u32) -> Result<Solution> {
    Ok(ConstraintSystem::simple_index(m, n)?.solve())
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub m: usize,
    /// `n = 2m` yields the unique simple-index solution.
    pub sufficient: bool,
    /// `n = 2m - 1` yields a contradiction.
    pub necessary: bool,
    pub passed: bool,
    pub solution: Solution,
    pub contradiction: Solution,
}

impl MinimalityReport {
    /// Human-readable derivation transcript.
    pub fn transcript(&self) -> String {
        let m = self.m;
        let mut out = String::new();
        out.push_str(&format!("m = {m}, n = {}: ", 2 * m));
        match &self.solution {
            Solution::Satisfiable(a) => {
                out.push_str("satisfiable\n");
                for (t, v) in &a.amplitudes {
                    out.push_str(&format!("  alpha[{t}] = {v}\n"));
                }
                let ones: Vec<String> = a
                    .coefficients
                    .iter()
                    .filter(|(_, &v)| v == 1)
                    .map(|(c, _)| c.to_string())
                    .collect();
                out.push_str(&format!("  coefficients equal to 1: {}\n", ones.join(", ")));
                out.push_str(&format!(
                    "  remaining {} listed coefficients are 0\n",
                    a.coefficients.len() - ones.len()
                ));
            }
            other => out.push_str(&format!("NOT satisfiable: {other:?}\n")),
        }
        out.push_str(&format!("m = {m}, n = {}: ", 2 * m - 1));
        match &self.contradiction {
            Solution::Contradiction(w) => {
                out.push_str("contradiction\n");
                for line in w.to_string().lines() {
                    out.push_str("  ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
            other => out.push_str(&format!("no contradiction found: {other:?}\n")),
        }
        out.push_str(if self.passed { "PASS\n" } else { "FAIL\n" });
        out
    }
}

pub fn verify_minimality(m: usize) -> Result<MinimalityReport> {
    verify_minimality_bounded(m, DEFAULT_AUDIT_BOUND)
}

/// Checks that `n = 2m` is satisfiable with the simple-index solution and
/// `n = 2m - 1` is contradictory.
pub fn verify_minimality_bounded(m: usize, bound: usize) -> Result<MinimalityReport> {
    if m < 2 {
        return Err(Error::out_of_range("m", format!("{m} < 2")));
    }
    if m > bound {
        return Err(Error::BoundExceeded { m, bound });
    }
    let n = 2 * m as u32;
    let solution = solve_constraints(m, n)?;
    let contradiction = solve_constraints(m, n - 1)?;
    let sufficient = solution
        .assignment()
        .is_some_and(|a| a.is_simple_index_solution(m));
    let necessary = contradiction.witness().is_some();
    Ok(MinimalityReport {
        m,
        sufficient,
        necessary,
        passed: sufficient && necessary,
        solution,
        contradiction,
    })
}

/// Per-sentence relabeling from the reasoning-cycle entries to simple
/// indices: the state where sentence `i` is hypothesised true becomes
/// `(i, ..., i)` and the one where it is hypothesised false becomes
/// `(m+i, ..., m+i)`. `result[s - 1][j - 1]` is the simple index of entry `j`
/// on sentence `s`.
pub fn simple_index_relabeling(config: &Configuration) -> Result<Vec<Vec<u32>>> {
    let cycle = canonical_cycle(config)?;
    let states = cycle_states(config)?;
    let m = config.m();
    let mut relabel = vec![vec![0u32; 2 * m]; m];
    for i in 1..=m {
        for (value, label) in [(Truth::True, i), (Truth::False, m + i)] {
            let step = cycle.step_of(i, value).expect("sentence appears in cycle");
            let state = &states[step - 1];
            for (s, row) in relabel.iter_mut().enumerate() {
                row[state.entry(s + 1) as usize - 1] = label as u32;
            }
        }
    }
    Ok(relabel)
}

/// Support of the equiponderate initial state after
/// [`simple_index_relabeling`], in reasoning-step order.
pub fn relabeled_support(config: &Configuration) -> Result<Vec<TensorIndex>> {
    let relabel = simple_index_relabeling(config)?;
    Ok(cycle_states(config)?
        .iter()
        .map(|state| {
            TensorIndex::new_unchecked(
                state
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(s, &e)| relabel[s][e as usize - 1])
                    .collect(),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(v: &[u32]) -> TensorIndex {
        TensorIndex::new_unchecked(v.to_vec())
    }

    fn outcome(kind: ProjectorKind, sentence: usize) -> AmplitudeValue {
        AmplitudeValue::Positive(Outcome { kind, sentence })
    }

    #[test]
    fn two_sentences_four_dimensions() {
        let sol = solve_constraints(2, 4).unwrap();
        let a = sol.assignment().expect("satisfiable");
        assert_eq!(a.amplitude(&tuple(&[1, 1])), Some(outcome(ProjectorKind::Truth, 1)));
        assert_eq!(a.amplitude(&tuple(&[2, 2])), Some(outcome(ProjectorKind::Truth, 2)));
        assert_eq!(a.amplitude(&tuple(&[3, 3])), Some(outcome(ProjectorKind::Falsehood, 1)));
        assert_eq!(a.amplitude(&tuple(&[4, 4])), Some(outcome(ProjectorKind::Falsehood, 2)));
        let cross = Coefficient { kind: ProjectorKind::Truth, entry: 2, sentence: 1 };
        assert_eq!(a.coefficient(&cross), Some(0));
        assert_eq!(a.coefficients.len(), 16);
        assert!(a.is_simple_index_solution(2));
    }

    #[test]
    fn two_sentences_three_dimensions() {
        let sol = solve_constraints(2, 3).unwrap();
        let w = sol.witness().expect("contradiction");
        let tau11 = Coefficient { kind: ProjectorKind::Truth, entry: 1, sentence: 1 };
        let phi22 = Coefficient { kind: ProjectorKind::Falsehood, entry: 2, sentence: 2 };
        assert_eq!(w.amplitude_fact.coefficient, phi22);
        assert_eq!(w.amplitude_fact.amplitude, tuple(&[1, 2]));
        assert_eq!(w.amplitude_fact.amplitude_value, outcome(ProjectorKind::Falsehood, 2));
        assert_eq!(w.coefficient_fact.coefficient, tau11);
        assert_eq!(w.coefficient_fact.amplitude, tuple(&[1, 1]));
        assert_eq!(w.coefficient_fact.amplitude_value, outcome(ProjectorKind::Truth, 1));
        assert_eq!(w.annihilation.coefficient, tau11);
        assert_eq!(w.annihilation.amplitude, tuple(&[1, 2]));
        assert_eq!(w.annihilation.rhs, None);
    }

    #[test]
    fn three_sentences() {
        assert!(solve_constraints(3, 6).unwrap().is_satisfiable());
        assert!(solve_constraints(3, 5).unwrap().witness().is_some());
    }

    #[test]
    fn unsupported_dimensions() {
        assert_eq!(solve_constraints(3, 4).err(), Some(Error::UnsupportedDimension { m: 3, n: 4 }));
        assert_eq!(solve_constraints(3, 7).err(), Some(Error::UnsupportedDimension { m: 3, n: 7 }));
        assert_eq!(solve_constraints(1, 1).err(), Some(Error::UnsupportedDimension { m: 1, n: 1 }));
        assert!(solve_constraints(1, 2).unwrap().is_satisfiable());
    }

    #[test]
    fn minimality_reports() {
        for m in 2..=4 {
            let r = verify_minimality(m).unwrap();
            assert!(r.passed, "{}", r.transcript());
        }
        assert_eq!(verify_minimality(5).err(), Some(Error::BoundExceeded { m: 5, bound: 4 }));
        assert!(verify_minimality(1).is_err());
        assert!(verify_minimality_bounded(6, 6).unwrap().passed);
    }

    #[test]
    fn transcript_names_the_three_facts() {
        let r = verify_minimality(2).unwrap();
        let text = r.transcript();
        assert!(text.contains("(1) phi[2,2] * alpha[1.2] = f_2"));
        assert!(text.contains("(2) tau[1,1] * alpha[1.1] = t_1"));
        assert!(text.contains("(3) tau[1,1] * alpha[1.2] = 0"));
        assert!(text.ends_with("PASS\n"));
    }

    #[test]
    fn relabeled_initial_state_matches_solution_support() {
        for config in [
            Configuration::eight_liar(),
            Configuration::new(vec![2, 1], vec![false, true]).unwrap(),
            Configuration::chain(vec![true, true, true]).unwrap(),
        ] {
            let m = config.m();
            let mut support: Vec<Vec<u32>> =
                relabeled_support(&config).unwrap().iter().map(|t| t.entries().to_vec()).collect();
            support.sort();
            let expected: Vec<Vec<u32>> = (1..=2 * m as u32).map(|k| vec![k; m]).collect();
            assert_eq!(support, expected);
            for row in simple_index_relabeling(&config).unwrap() {
                let mut sorted = row.clone();
                sorted.sort();
                assert_eq!(sorted, (1..=2 * m as u32).collect::<Vec<_>>());
            }
        }
    }
}
