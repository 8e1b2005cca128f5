//! Truth and falsehood probabilities over continuous reasoning time.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::evolution::{build_evolution_with_branch, PiBranch};
use crate::inference::Hypothesis;
use crate::measure::{
    collapse, falsehood_hypothesis_projector, hypothesis_projector, truth_hypothesis_projector,
    CollapseMode,
};
use crate::state::build_initial_state;

/// Significant digits used for CSV output unless overridden.
pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub sentence: usize,
    pub p_true: f64,
    pub p_false: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSpec {
    /// Sentences to report; empty means all.
    pub sentences: Vec<usize>,
    /// Sample times in output units; the propagator is evaluated at
    /// `t / time_scale` steps.
    pub times: Vec<f64>,
    /// Output time units per reasoning step, 1 by default. With `pi/2`
    /// each step is a quarter turn of the eigenphase.
    pub time_scale: f64,
    pub mode: CollapseMode,
    pub branch: PiBranch,
}

impl Default for TraceSpec {
    fn default() -> Self {
        TraceSpec {
            sentences: Vec::new(),
            times: Vec::new(),
            time_scale: 1.0,
            mode: CollapseMode::Renormalize,
            branch: PiBranch::Upper,
        }
    }
}

/// Grid `0, dt, 2 dt, ..., t_max` in steps, returned in output units
/// (multiplied by `time_scale`).
pub fn time_grid(t_max_steps: f64, dt_steps: f64, time_scale: f64) -> Result<Vec<f64>> {
    if !(dt_steps > 0.0 && t_max_steps >= 0.0 && t_max_steps.is_finite()) {
        return Err(Error::out_of_range(
            "time grid",
            format!("need dt > 0 and t_max >= 0, got dt = {dt_steps}, t_max = {t_max_steps}"),
        ));
    }
    let count = (t_max_steps / dt_steps + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| k as f64 * dt_steps * time_scale).collect())
}

/// Collapses the equiponderate initial state on `initial`, evolves it, and
/// records `||T_i psi(t)||^2`, `||F_i psi(t)||^2` for each requested
/// sentence. Rows are time-major, sentence-minor.
pub fn probability_trace(
    config: &Configuration,
    initial: Hypothesis,
    spec: &TraceSpec,
) -> Result<Vec<TraceRow>> {
    let m = config.m();
    if !(spec.time_scale > 0.0 && spec.time_scale.is_finite()) {
        return Err(Error::out_of_range("time scale", format!("{} is not positive", spec.time_scale)));
    }
    let sentences: Vec<usize> = if spec.sentences.is_empty() {
        (1..=m).collect()
    } else {
        spec.sentences.clone()
    };
    for &s in &sentences {
        config.check_sentence(s)?;
    }
    config.check_sentence(initial.sentence)?;

    let evolution = build_evolution_with_branch(config, spec.branch)?;
    let psi0 = build_initial_state(config)?;
    let measured = collapse(&psi0, &hypothesis_projector(m, initial)?, spec.mode);
    if measured.probability == 0.0 {
        return Err(Error::ZeroProbabilityMeasurement {
            sentence: initial.sentence,
            value: initial.value.as_char(),
        });
    }
    let projectors = sentences
        .iter()
        .map(|&s| Ok((s, truth_hypothesis_projector(m, s)?, falsehood_hypothesis_projector(m, s)?)))
        .collect::<Result<Vec<_>>>()?;

    let blocks = spec
        .times
        .par_iter()
        .map(|&t| {
            let psi = evolution.propagate(&measured.state, t / spec.time_scale)?;
            Ok(projectors
                .iter()
                .map(|(s, tp, fp)| TraceRow {
                    t,
                    sentence: *s,
                    p_true: tp.probability(&psi),
                    p_false: fp.probability(&psi),
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `t,sentence,p_true,p_false` CSV.
pub fn write_csv<W: Write>(rows: &[TraceRow], digits: usize, mut out: W) -> io::Result<()> {
    writeln!(out, "t,sentence,p_true,p_false")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_significant(r.t, digits),
            r.sentence,
            format_significant(r.p_true, digits),
            format_significant(r.p_false, digits)
        )?;
    }
    Ok(())
}

/// Gnuplot script plotting the CSV at `data_path`, one curve pair per
/// sentence.
pub fn gnuplot_script(data_path: &str, sentences: &[usize]) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key outside right\n");
    s.push_str("set xlabel 't'\nset ylabel 'probability'\nset yrange [-0.05:1.05]\n");
    let curves: Vec<String> = sentences
        .iter()
        .flat_map(|i| {
            [
                format!("'{data_path}' skip 1 using 1:($2=={i}?$3:1/0) with lines title '{i}.T'"),
                format!("'{data_path}' skip 1 using 1:($2=={i}?$4:1/0) with lines dt 2 title '{i}.F'"),
            ]
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&curves.join(", \\\n     "));
    s.push('\n');
    s
}
