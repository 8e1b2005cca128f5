//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use liar_core::audit::{AmplitudeValue, Outcome, ProjectorKind};
use liar_core::config::enumerate_paradoxical;
use liar_core::measure::{hypothesis_projector, sentence_resolution};
use liar_core::reference::{EIGHT_LIAR_EMBEDDED, EIGHT_LIAR_TUPLES};
use liar_core::verify::max_abs;
use liar_core::*;
use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

type Verdict = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn lib<T>(r: liar_core::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn spectral_configs() -> Vec<Configuration> {
    vec![
        Configuration::single_liar(),
        Configuration::chain(vec![false, true]).unwrap(),
        Configuration::chain(vec![true, false, false]).unwrap(),
        Configuration::eight_liar(),
    ]
}

fn initial_state_ground_truth() -> Verdict {
    let psi = lib(build_initial_state(&Configuration::eight_liar()))?;
    ensure(psi.support_len() == 16, || format!("support {}", psi.support_len()))?;
    for (k, ((tuple, amp), (want, &want_kappa))) in psi
        .terms()
        .zip(EIGHT_LIAR_TUPLES.iter().zip(&EIGHT_LIAR_EMBEDDED))
        .enumerate()
    {
        ensure(tuple.entries() == want, || format!("term {k}: tuple {tuple}"))?;
        let embedded = kappa(tuple, 16);
        ensure(embedded == EmbeddedIndex::from(want_kappa), || {
            format!("term {k}: embedded {embedded}, expected {want_kappa}")
        })?;
        ensure((amp - Complex64::new(0.25, 0.0)).norm() <= 1e-12, || format!("term {k}: amplitude {amp}"))?;
    }
    Ok("16 tuples and embedded indices exact, amplitudes 1/4".into())
}

fn kappa_pairing() -> Verdict {
    for (tuple, &e) in EIGHT_LIAR_TUPLES.iter().zip(&EIGHT_LIAR_EMBEDDED) {
        let t = lib(TensorIndex::new(tuple.to_vec(), 16))?;
        let e = EmbeddedIndex::from(e);
        ensure(kappa(&t, 16) == e, || format!("kappa({t})"))?;
        ensure(lib(kappa_inverse(&e, 8, 16))? == t, || format!("kappa_inverse({e})"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for m in 1..=8usize {
        let n = 2 * m as u32;
        for _ in 0..10_000 {
            let entries: Vec<u32> = (0..m).map(|_| rng.random_range(1..=n)).collect();
            let t = lib(TensorIndex::new(entries, n))?;
            let back = lib(kappa_inverse(&kappa(&t, n), m, n))?;
            ensure(back == t, || format!("m = {m}: {t} -> {back}"))?;
        }
    }
    Ok("16 reference pairs, 10^4 random tuples for each m in 1..=8".into())
}

fn single_liar_oscillation() -> Verdict {
    let c = Configuration::single_liar();
    let start = Hypothesis::new(1, Truth::True);
    let times: Vec<f64> = (0..=80).map(|k| k as f64 * 0.05).collect();
    let spec = TraceSpec { times: times.clone(), ..TraceSpec::default() };
    let rows = lib(probability_trace(&c, start, &spec))?;
    let at = |t: f64| rows.iter().find(|r| (r.t - t).abs() < 1e-12).expect("sampled time");
    ensure((at(1.0).p_false - 1.0).abs() <= 1e-10, || format!("P_F(1) = {}", at(1.0).p_false))?;
    ensure((at(0.5).p_false - 0.5).abs() <= 1e-10, || format!("P_F(0.5) = {}", at(0.5).p_false))?;
    let mut worst: f64 = 0.0;
    for (a, b) in rows.iter().zip(rows.iter().skip(40)) {
        worst = worst.max((a.p_false - b.p_false).abs()).max((a.p_true - b.p_true).abs());
    }
    ensure(worst <= 1e-10, || format!("period-2 residual {worst:.2e}"))?;

    let scaled = TraceSpec { times: vec![FRAC_PI_2], time_scale: FRAC_PI_2, ..TraceSpec::default() };
    let row = lib(probability_trace(&c, start, &scaled))?[0];
    ensure((row.p_false - 1.0).abs() <= 1e-10, || format!("P_F(pi/2 time units) = {}", row.p_false))?;
    Ok(format!("P_F(1) = 1, P_F(0.5) = 0.5, period-2 residual {worst:.1e}"))
}

fn eight_liar_oscillation() -> Verdict {
    let c = Configuration::eight_liar();
    let start = Hypothesis::new(1, Truth::True);
    let cycle = lib(reasoning_cycle(&c, start))?;
    let times: Vec<f64> = (0..=16).map(f64::from).collect();
    let spec = TraceSpec { times, ..TraceSpec::default() };
    let rows = lib(probability_trace(&c, start, &spec))?;
    let p1 = |t: usize| rows[t * 8];
    ensure((p1(8).p_false - 1.0).abs() <= 1e-10, || format!("P(1.F) at 8 = {}", p1(8).p_false))?;
    ensure(p1(16).p_true == 1.0, || format!("P(1.T) at 16 = {}", p1(16).p_true))?;
    for t in 0..=16usize {
        let h = cycle.at(t + 1);
        for r in &rows[t * 8..(t + 1) * 8] {
            let want_t = f64::from(u8::from(r.sentence == h.sentence && h.value == Truth::True));
            let want_f = f64::from(u8::from(r.sentence == h.sentence && h.value == Truth::False));
            ensure(r.p_true == want_t && r.p_false == want_f, || {
                format!("t = {t}, sentence {}: ({}, {}) vs hypothesis {h}", r.sentence, r.p_true, r.p_false)
            })?;
        }
    }

    let scaled = TraceSpec {
        times: vec![8.0 * FRAC_PI_2, 16.0 * FRAC_PI_2],
        sentences: vec![1],
        time_scale: FRAC_PI_2,
        ..TraceSpec::default()
    };
    let rows = lib(probability_trace(&c, start, &scaled))?;
    ensure((rows[0].p_false - 1.0).abs() <= 1e-10 && (rows[1].p_true - 1.0).abs() <= 1e-10, || {
        format!("pi/2 time units: {rows:?}")
    })?;
    Ok("P(1.F) = 1 at t = 8, return at 16, 17 integer times match the reasoning cycle".into())
}

fn spectral_contracts() -> Verdict {
    let mut rng = StdRng::seed_from_u64(42);
    let (mut log_r, mut herm_r, mut unit_r, mut group_r): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for c in spectral_configs() {
        let ev = lib(build_evolution(&c))?;
        let ud = ev.step_matrix();
        log_r = log_r.max(max_abs(&(ev.log_step().exp() - &ud)));
        log_r = log_r.max(max_abs(&(ev.propagator(1.0) - &ud)));
        let h = ev.hamiltonian();
        herm_r = herm_r.max(max_abs(&(&h - h.adjoint())));
        let identity = DMatrix::<Complex64>::identity(ev.dim(), ev.dim());
        for _ in 0..100 {
            let tau = rng.random_range(-20.0..20.0);
            let sigma = rng.random_range(-20.0..20.0);
            let u = ev.propagator(tau);
            unit_r = unit_r.max(max_abs(&(u.adjoint() * &u - &identity)));
            group_r = group_r.max(max_abs(&(ev.propagator(tau + sigma) - &u * ev.propagator(sigma))));
        }
    }
    let worst = log_r.max(herm_r).max(unit_r).max(group_r);
    ensure(worst <= 1e-10, || {
        format!("log {log_r:.2e}, hermitian {herm_r:.2e}, unitary {unit_r:.2e}, group {group_r:.2e}")
    })?;
    Ok(format!(
        "m in {{1,2,3,8}}: log {log_r:.1e}, hermitian {herm_r:.1e}, unitary {unit_r:.1e}, group {group_r:.1e}"
    ))
}

fn time_invariance() -> Verdict {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for c in spectral_configs() {
        let ev = lib(build_evolution(&c))?;
        let psi = lib(build_initial_state(&c))?;
        for _ in 0..100 {
            let tau = rng.random_range(-50.0..50.0);
            worst = worst.max(lib(ev.propagate(&psi, tau))?.distance(&psi));
        }
    }
    ensure(worst <= 1e-10, || format!("max drift {worst:.2e}"))?;
    Ok(format!("max ||U(t) psi0 - psi0|| = {worst:.1e}"))
}

fn completeness() -> Verdict {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for c in spectral_configs() {
        let m = c.m();
        let ev = lib(build_evolution(&c))?;
        let psi0 = lib(build_initial_state(&c))?;
        let start = lib(hypothesis_projector(m, Hypothesis::new(1, Truth::True)))?.apply(&psi0).normalized();
        let resolutions = lib((1..=m).map(|s| sentence_resolution(m, s)).collect::<liar_core::Result<Vec<_>>>())?;
        for parts in &resolutions {
            ensure(parts.len() == 2 * m, || format!("{} projectors for m = {m}", parts.len()))?;
            for (a, p) in parts.iter().enumerate() {
                for q in &parts[a + 1..] {
                    ensure(p.is_orthogonal_to(q), || "overlapping projectors".into())?;
                }
            }
            let covered: usize = parts.iter().map(|p| p.entries().len()).sum();
            ensure(covered == 2 * m, || format!("entries covered {covered}"))?;
        }
        for _ in 0..100 {
            let tau = rng.random_range(-20.0..20.0);
            let psi = lib(ev.propagate(&start, tau))?;
            for parts in &resolutions {
                let total: f64 = parts.iter().map(|p| p.probability(&psi)).sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max |sum - 1| = {worst:.2e}"))?;
    Ok(format!("2m orthogonal projectors per sentence, max |sum - 1| = {worst:.1e}"))
}

fn dimension_audit() -> Verdict {
    for m in 2..=4usize {
        let report = lib(verify_minimality(m))?;
        ensure(report.passed, || format!("m = {m}:\n{}", report.transcript()))?;
        let a = report.solution.assignment().ok_or("no assignment")?;
        ensure(a.is_simple_index_solution(m), || format!("m = {m}: solution shape"))?;
        let w = report.contradiction.witness().ok_or("no witness")?;

        let ones = lib(TensorIndex::new(vec![1; m], 2 * m as u32 - 1))?;
        let mut last_two = vec![1; m];
        last_two[m - 1] = 2;
        let mixed = lib(TensorIndex::new(last_two, 2 * m as u32 - 1))?;
        let t1 = Outcome { kind: ProjectorKind::Truth, sentence: 1 };
        let fm = Outcome { kind: ProjectorKind::Falsehood, sentence: m };
        let shape_ok = w.amplitude_fact.equation.coefficient.to_string() == format!("phi[2,{m}]")
            && w.amplitude_fact.amplitude == mixed
            && w.amplitude_fact.amplitude_value == AmplitudeValue::Positive(fm)
            && w.coefficient_fact.equation.coefficient.to_string() == "tau[1,1]"
            && w.coefficient_fact.amplitude == ones
            && w.coefficient_fact.amplitude_value == AmplitudeValue::Positive(t1)
            && w.coefficient_fact.coefficient_value == 1
            && w.annihilation.coefficient.to_string() == "tau[1,1]"
            && w.annihilation.amplitude == mixed
            && w.annihilation.rhs.is_none();
        ensure(shape_ok, || format!("m = {m}: unexpected witness\n{w}"))?;
    }
    Ok("m = 2, 3, 4: unique simple-index solution at n = 2m, contradiction at n = 2m - 1".into())
}

fn counting() -> Verdict {
    let expected = [1u64, 2, 8, 48, 384];
    for (m, &want) in (1..=5).zip(&expected) {
        let brute = lib(enumerate_paradoxical(m))?.count() as u64;
        let counted = count_paradoxical(m);
        ensure(brute == want && counted == BigUint::from(want), || {
            format!("m = {m}: brute {brute}, counted {counted}, expected {want}")
        })?;
    }
    for m in 1..=20usize {
        let closed = (1..m).map(BigUint::from).product::<BigUint>() * (BigUint::from(1u8) << (m - 1));
        ensure(count_paradoxical(m) == closed, || format!("m = {m}"))?;
    }
    Ok(format!("1, 2, 8, 48, 384 by enumeration; closed form to m = 20 ({})", count_paradoxical(20)))
}

fn no_degenerescence() -> Verdict {
    let mut all = Vec::new();
    for m in 1..=6 {
        all.extend(lib(enumerate_paradoxical(m))?);
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let sample: Vec<&Configuration> = all.choose_multiple(&mut rng, 200).collect();
    for c in &sample {
        let n = 2 * c.m() as u32;
        let states = lib(cycle_states(c))?;
        for s in 1..=c.m() {
            let mut column: Vec<u32> = states.iter().map(|t| t.entry(s)).collect();
            column.sort_unstable();
            ensure(column == (1..=n).collect::<Vec<_>>(), || format!("{c:?} sentence {s}: {column:?}"))?;
        }
    }
    Ok(format!("{} configurations sampled from {}", sample.len(), all.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);
    let criteria: [Criterion; 10] = [
        ("initial state ground truth", initial_state_ground_truth, Some(Duration::from_secs(1))),
        ("kappa pairing", kappa_pairing, Some(Duration::from_secs(1))),
        ("1-sentence oscillation", single_liar_oscillation, None),
        ("8-sentence oscillation", eight_liar_oscillation, None),
        ("spectral contracts", spectral_contracts, Some(Duration::from_secs(5))),
        ("time invariance", time_invariance, None),
        ("projector completeness", completeness, None),
        ("dimension audit", dimension_audit, Some(Duration::from_secs(1))),
        ("counting", counting, None),
        ("no degenerescence", no_degenerescence, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let mut outcome = run();
        let elapsed = clock.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:>2} {name:<28} [{elapsed:.2?}] {detail}", k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
