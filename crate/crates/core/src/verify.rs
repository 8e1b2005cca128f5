//! Self-check suite run by `liar verify`.
//!
//! Each check evaluates one model invariant over a family of configurations
//! and reports the worst residual it saw. [`Faults`] lets callers corrupt
//! parts of the pipeline to confirm that the suite notices.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::audit::verify_minimality;
use crate::config::{count_paradoxical, enumerate_paradoxical, Configuration};
use crate::error::Result;
use crate::evolution::{build_evolution_with_branch, PiBranch, SubspaceEvolution};
use crate::index::{kappa, kappa_inverse, EmbeddedIndex};
use crate::inference::{canonical_cycle, infer_next, Hypothesis, Truth};
use crate::measure::{hypothesis_projector, sentence_resolution};
use crate::reference::{EIGHT_LIAR_EMBEDDED, EIGHT_LIAR_TUPLES};
use crate::state::{build_initial_state, cycle_states, SparseState};

/// Largest `m` the suite accepts.
pub const MAX_VERIFY_M: usize = 8;

/// Residual tolerance for the spectral checks.
pub const SPECTRAL_TOLERANCE: f64 = 1e-10;

/// Tolerance for probability sums.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// Deliberate corruptions for negative controls.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Place the phase of `-1` at `-pi` instead of `+pi`.
    pub flip_pi_branch: bool,
    /// Added to every embedded index before comparing with the reference
    /// table.
    pub kappa_offset: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<28} {}", self.name, self.detail)
    }
}

/// One paradoxical configuration per `m`: the chain `1 -> 2 -> ... -> 1`
/// with only sentence `m` negating, plus the eight-sentence configuration.
pub fn sample_configurations(m_max: usize) -> Vec<Configuration> {
    let mut configs: Vec<Configuration> = (1..=m_max)
        .map(|m| {
            let negating = (1..=m).map(|i| i == m).collect();
            Configuration::chain(negating).expect("chain is a single cycle")
        })
        .collect();
    if m_max >= 8 {
        configs.push(Configuration::eight_liar());
    }
    configs
}

/// Sample times: integers, half-integers and irregular fractions of both
/// signs.
pub fn sample_times() -> Vec<f64> {
    let mut times: Vec<f64> = (-4..=20).map(|k| k as f64 * 0.5).collect();
    times.extend((1..=25).map(|k| (k as f64 * 0.7371).sin() * 9.3 + k as f64 * 0.113));
    times
}

pub fn max_abs(matrix: &DMatrix<Complex64>) -> f64 {
    matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail: detail.into(),
    }
}

fn evolutions(m_max: usize, faults: Faults) -> Result<Vec<(Configuration, SubspaceEvolution)>> {
    let branch = if faults.flip_pi_branch { PiBranch::Lower } else { PiBranch::Upper };
    sample_configurations(m_max)
        .into_iter()
        .map(|c| {
            let ev = build_evolution_with_branch(&c, branch)?;
            Ok((c, ev))
        })
        .collect()
}

/// Runs every check for `m` up to `m_max` (capped at [`MAX_VERIFY_M`]).
pub fn run_suite(m_max: usize, faults: Faults) -> Result<Vec<CheckResult>> {
    let m_max = m_max.clamp(1, MAX_VERIFY_M);
    let evs = evolutions(m_max, faults)?;
    let times = sample_times();
    let mut results = Vec::new();

    // Counting against brute force.
    let count_max = m_max.min(6);
    let mismatches: Vec<usize> = (1..=count_max)
        .filter(|&m| {
            let brute = enumerate_paradoxical(m).map(|it| it.count()).unwrap_or(0);
            count_paradoxical(m) != brute.into()
        })
        .collect();
    results.push(check(
        "count = enumeration",
        mismatches.is_empty(),
        format!("m = 1..={count_max}, mismatches {mismatches:?}"),
    ));

    // Reasoning cycle closure and complement symmetry.
    let cycle_max = m_max.min(5);
    let mut bad = 0usize;
    let mut total = 0usize;
    for m in 1..=cycle_max {
        for c in enumerate_paradoxical(m)? {
            total += 1;
            let cycle = canonical_cycle(&c)?;
            let closed = infer_next(&c, cycle.at(2 * m)) == cycle.at(1);
            let symmetric = (1..=m).all(|k| {
                let (a, b) = (cycle.at(k), cycle.at(k + m));
                a.sentence == b.sentence && a.value == !b.value
            });
            if !(closed && symmetric) {
                bad += 1;
            }
        }
    }
    results.push(check(
        "cycle closure/complement",
        bad == 0,
        format!("{total} configurations, {bad} failing"),
    ));

    // No degenerescence: every sentence column is a permutation of 1..=2m.
    let mut degenerate = Vec::new();
    for (c, _) in &evs {
        let states = cycle_states(c)?;
        let n = 2 * c.m() as u32;
        for s in 1..=c.m() {
            let mut column: Vec<u32> = states.iter().map(|t| t.entry(s)).collect();
            column.sort_unstable();
            if column != (1..=n).collect::<Vec<_>>() {
                degenerate.push((c.m(), s));
            }
        }
    }
    results.push(check(
        "no degenerescence",
        degenerate.is_empty(),
        format!("{} configurations, degenerate columns {degenerate:?}", evs.len()),
    ));

    // Reference table and kappa round trip.
    let eight = Configuration::eight_liar();
    let states = cycle_states(&eight)?;
    let mut table_ok = states.len() == EIGHT_LIAR_TUPLES.len();
    for ((state, tuple), &embedded) in states.iter().zip(&EIGHT_LIAR_TUPLES).zip(&EIGHT_LIAR_EMBEDDED) {
        let computed = kappa(state, 16).value() + faults.kappa_offset;
        let reference = EmbeddedIndex::from(embedded);
        table_ok &= state.entries() == tuple && &computed == reference.value();
        table_ok &= kappa_inverse(&reference, 8, 16).ok().as_ref() == Some(state);
    }
    results.push(check(
        "kappa reference pairing",
        table_ok,
        "16 tuples of the 8-sentence initial state",
    ));

    // Initial state shape.
    let mut worst_norm: f64 = 0.0;
    let mut shape_ok = true;
    for (c, _) in &evs {
        let psi = build_initial_state(c)?;
        worst_norm = worst_norm.max((psi.norm_sqr() - 1.0).abs());
        let amp = 1.0 / ((2 * c.m()) as f64).sqrt();
        shape_ok &= psi.support_len() == 2 * c.m()
            && psi.terms().all(|(_, a)| a.im == 0.0 && (a.re - amp).abs() < 1e-15);
    }
    results.push(check(
        "initial state normalized",
        shape_ok && worst_norm <= 1e-12,
        format!("max |norm^2 - 1| = {worst_norm:.2e}"),
    ));

    // Spectral contracts.
    let mut log_residual: f64 = 0.0;
    let mut hermitian_residual: f64 = 0.0;
    let mut unitary_residual: f64 = 0.0;
    let mut group_residual: f64 = 0.0;
    for (_, ev) in &evs {
        let dim = ev.dim();
        let ud = ev.step_matrix();
        log_residual = log_residual.max(max_abs(&(ev.propagator(1.0) - &ud)));
        let h = ev.hamiltonian();
        hermitian_residual = hermitian_residual.max(max_abs(&(&h - h.adjoint())));
        let identity = DMatrix::<Complex64>::identity(dim, dim);
        for (k, &tau) in times.iter().enumerate() {
            let u = ev.propagator(tau);
            unitary_residual = unitary_residual.max(max_abs(&(u.adjoint() * &u - &identity)));
            let sigma = times[(k * 7 + 3) % times.len()];
            let composed = &u * ev.propagator(sigma);
            group_residual = group_residual.max(max_abs(&(ev.propagator(tau + sigma) - composed)));
        }
    }
    results.push(check(
        "exp(log U_D) = U_D",
        log_residual <= SPECTRAL_TOLERANCE,
        format!("max residual {log_residual:.2e}"),
    ));
    results.push(check(
        "hamiltonian hermitian",
        hermitian_residual <= SPECTRAL_TOLERANCE,
        format!("max residual {hermitian_residual:.2e}"),
    ));
    results.push(check(
        "unitarity",
        unitary_residual <= SPECTRAL_TOLERANCE,
        format!("max residual {unitary_residual:.2e}"),
    ));
    results.push(check(
        "group law",
        group_residual <= SPECTRAL_TOLERANCE,
        format!("max residual {group_residual:.2e}"),
    ));

    // Stationary initial state and completeness along the evolution.
    let mut drift: f64 = 0.0;
    let mut completeness: f64 = 0.0;
    for (c, ev) in &evs {
        let psi = build_initial_state(c)?;
        let start = hypothesis_projector(c.m(), Hypothesis::new(1, Truth::True))?
            .apply(&psi)
            .normalized();
        let resolutions = (1..=c.m())
            .map(|s| sentence_resolution(c.m(), s))
            .collect::<Result<Vec<_>>>()?;
        for &tau in &times {
            drift = drift.max(ev.propagate(&psi, tau)?.distance(&psi));
            let moved = ev.propagate(&start, tau)?;
            for parts in &resolutions {
                let total: f64 = parts.iter().map(|p| p.probability(&moved)).sum();
                completeness = completeness.max((total - 1.0).abs());
            }
        }
    }
    results.push(check(
        "initial state invariant",
        drift <= SPECTRAL_TOLERANCE,
        format!("max ||U(t) psi0 - psi0|| = {drift:.2e}"),
    ));
    results.push(check(
        "projector completeness",
        completeness <= PROBABILITY_TOLERANCE,
        format!("max |sum P - 1| = {completeness:.2e}"),
    ));

    // Integer steps reproduce the classical reasoning cycle.
    let mut mismatched = Vec::new();
    for (c, ev) in &evs {
        let cycle = canonical_cycle(c)?;
        let start = SparseState::basis(ev.basis()[0].clone(), 2 * c.m() as u32)?;
        let ud = ev.step_matrix();
        let mut power = DMatrix::<Complex64>::identity(ev.dim(), ev.dim());
        for k in 0..=2 * c.m() {
            if max_abs(&(ev.propagator(k as f64) - &power)) > SPECTRAL_TOLERANCE {
                mismatched.push((c.m(), k, 0));
            }
            power = &ud * power;
            let psi = ev.propagate(&start, k as f64)?;
            let hypothesised = cycle.at(k + 1);
            for s in 1..=c.m() {
                for value in [Truth::True, Truth::False] {
                    let p = hypothesis_projector(c.m(), Hypothesis::new(s, value))?
                        .probability(&psi);
                    let expected = f64::from(u8::from(hypothesised.sentence == s && hypothesised.value == value));
                    if (p - expected).abs() > SPECTRAL_TOLERANCE {
                        mismatched.push((c.m(), k, s));
                    }
                }
            }
        }
    }
    results.push(check(
        "integer steps = reasoning",
        mismatched.is_empty(),
        format!("{} configurations, mismatches {:?}", evs.len(), mismatched),
    ));

    // Dimension audit.
    let audit_max = m_max.min(4);
    let mut audit_failures = Vec::new();
    for m in 2..=audit_max {
        if !verify_minimality(m)?.passed {
            audit_failures.push(m);
        }
    }
    results.push(check(
        "dimension audit",
        audit_failures.is_empty(),
        if audit_max < 2 {
            "skipped (needs m >= 2)".to_string()
        } else {
            format!("m = 2..={audit_max}, failing {audit_failures:?}")
        },
    ));

    Ok(results)
}

/// True iff every check passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
