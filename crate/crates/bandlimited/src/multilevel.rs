//! Degree-sweeping reconstruction when the bandwidth is unknown.
//!
//! The polynomial degree M plays the role of the unknown bandwidth. Sweep
//! levels M = 1, 2, ... and run the weighted least-squares fit of the [`act`]
//! module at each level, warm-starting CG with the previous level's solution
//! (coefficients zero-padded; the embedding leaves sample values unchanged
//! because every level shares one period, taken from the sampling interval).
//! Two discrepancy rules drive the sweep for data with relative noise level δ:
//!
//! * outer (global): accept as soon as the unweighted data residual
//!   ρ = Σ_j |p(t_j) − b_j|² falls below 2τ·δ‖b‖². Fitting beyond the noise
//!   energy would only reproduce noise.
//! * inner (per level): leave the level once ρ ≤ 2τ(δ‖b‖ + E_M)‖b‖ *and* the
//!   last CG step no longer substantially improved ρ. A level that stalls
//!   above the outer bound is explaining all it can; the shortfall is
//!   attributed to bandwidth beyond M, so the sweep moves on.
//!
//! The tail estimate E_M = sqrt(max(0, ρ_{M−1} − 2τ·δ‖b‖²)) measures the
//! previous level's unexplained above-noise energy (ρ_0 := ‖b‖²). It vanishes
//! when the previous level already met the outer bound, shrinks as levels
//! explain more of the data, and E_1 ≤ ‖b‖ always. It is a deliberately
//! simple surrogate for the unrepresented-bandwidth energy and is recorded
//! per level in the trace so alternatives can be compared offline.
//!
//! [`act`]: crate::act

use num_complex::Complex64;

use crate::act::{build_rhs, build_rhs_2d, build_toeplitz, build_toeplitz_2d, default_weights};
use crate::error::{Error, Result};
use crate::linalg::{cg_solve, CgTrace};
use crate::report::{LevelRecord, ReconstructionReport};
use crate::signals::{SampleVector, SamplingSet, SamplingSet2D, Signal2D, TrigPoly};

/// How the sweep steps through degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LevelSchedule {
    /// M = 1, 2, 3, ..., max_level.
    #[default]
    Unit,
    /// M = 1, 2, 4, 8, ..., then max_level if not already visited.
    Geometric,
}

/// Options for [`multilevel_reconstruct`] and [`multilevel_reconstruct_2d`].
#[derive(Debug, Clone)]
pub struct MultilevelOptions {
    /// Discrepancy safety factor τ, strictly greater than 1.
    pub tau_stop: f64,
    /// Largest degree the sweep may visit; r ≥ 2·max_level+1 is required
    /// (r ≥ (2·max_level+1)² in two dimensions).
    pub max_level: usize,
    /// Per-point weights for the least-squares systems; defaults to gap
    /// weights in one dimension and unit weights in two.
    pub weights: Option<Vec<f64>>,
    /// CG iteration cap per level; defaults to 4·(system dimension).
    pub max_iter_per_level: Option<usize>,
    pub schedule: LevelSchedule,
}

impl Default for MultilevelOptions {
    fn default() -> Self {
        MultilevelOptions {
            tau_stop: 1.1,
            max_level: 32,
            weights: None,
            max_iter_per_level: None,
            schedule: LevelSchedule::Unit,
        }
    }
}

/// Per-level record of the sweep, in visit order.
#[derive(Debug, Clone)]
pub struct LevelTrace {
    pub records: Vec<LevelRecord>,
    /// True when the sweep ended because the outer discrepancy rule fired.
    pub outer_satisfied: bool,
    /// Degree of the returned reconstruction (the last, and best, level).
    pub chosen_level: usize,
}

/// Surrogate for the data energy a degree-M space cannot represent: the part
/// of the previous level's residual that noise cannot account for,
/// E = sqrt(max(0, ρ_prev − 2τ·δ‖b‖²)).
///
/// With ρ_0 = ‖b‖² this gives E_1 = ‖b‖·sqrt(max(0, 1 − 2τδ)) ≤ ‖b‖, and E
/// is zero whenever the previous level already met the outer bound.
pub fn estimate_tail(previous_residual_sq: f64, outer_threshold: f64) -> f64 {
    (previous_residual_sq - outer_threshold).max(0.0).sqrt()
}

fn level_schedule(schedule: LevelSchedule, max_level: usize) -> Vec<usize> {
    match schedule {
        LevelSchedule::Unit => (1..=max_level).collect(),
        LevelSchedule::Geometric => {
            let mut levels = Vec::new();
            let mut m = 1;
            while m <= max_level {
                levels.push(m);
                m *= 2;
            }
            if levels.last() != Some(&max_level) {
                levels.push(max_level);
            }
            levels
        }
    }
}

/// One CG run under the two discrepancy rules. Returns the best (minimum-ρ)
/// iterate seen, its residual, the rule that ended the level, and the trace.
///
/// The inner rule is consulted only from the first genuine iterate on (the
/// warm start is iterate 0) and only when the step failed to halve ρ: while
/// CG is still making rapid progress the level clearly has more to give.
fn run_level<A, E>(
    rhs: &[Complex64],
    apply: A,
    x0: Option<&[Complex64]>,
    eval_rho: E,
    outer: f64,
    inner: f64,
    max_iter: usize,
) -> (Vec<Complex64>, f64, String, CgTrace)
where
    A: Fn(&[Complex64]) -> Vec<Complex64>,
    E: Fn(&[Complex64]) -> f64,
{
    let mut best_rho = f64::INFINITY;
    let mut best_x: Vec<Complex64> = Vec::new();
    let mut last_rho = f64::INFINITY;
    let mut outer_hit = false;
    let mut inner_hit = false;
    let (_, trace) = cg_solve(apply, rhs, x0, 0.0, max_iter, |k, x, _| {
        let rho = eval_rho(x);
        if rho < best_rho {
            best_rho = rho;
            best_x = x.to_vec();
        }
        if rho <= outer {
            outer_hit = true;
            return true;
        }
        if k >= 1 && rho > 0.5 * last_rho && rho <= inner {
            inner_hit = true;
            return true;
        }
        last_rho = rho;
        false
    });
    let rule = if outer_hit {
        "outer"
    } else if inner_hit {
        "inner"
    } else {
        trace.termination.as_str()
    };
    (best_x, best_rho, rule.to_string(), trace)
}

fn check_common(delta: f64, opts: &MultilevelOptions) -> Result<()> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(
            "noise level must be positive; noise-free callers should pass machine \
             epsilon (about 2.2e-16)"
                .into(),
        ));
    }
    if !(opts.tau_stop > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tau_stop must exceed 1, got {}",
            opts.tau_stop
        )));
    }
    if opts.max_level == 0 {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    Ok(())
}

fn finish_report(
    method: &str,
    delta: f64,
    period: f64,
    opts: &MultilevelOptions,
    trace: &LevelTrace,
    final_cg: Option<&CgTrace>,
    total_iterations: usize,
    final_rho: f64,
) -> ReconstructionReport {
    let mut report = ReconstructionReport::new(method, delta);
    report.degree = Some(trace.chosen_level);
    report.period = Some(period);
    report.tau_stop = Some(opts.tau_stop);
    if let Some(t) = final_cg {
        report.set_cg(t);
    }
    report.iterations = total_iterations;
    report.data_residual = final_rho;
    report.levels = Some(trace.records.clone());
    report.outer_satisfied = Some(trace.outer_satisfied);
    report.chosen_level = Some(trace.chosen_level);
    if !trace.outer_satisfied {
        report.notes.push(format!(
            "outer criterion not met by level {}; returning the best level",
            opts.max_level
        ));
    }
    report
}

/// Reconstruct without a priori bandwidth: sweep degrees under the inner and
/// outer discrepancy rules and return the accepted polynomial, the per-level
/// trace, and a report.
///
/// Numerical failures inside a level (CG breakdown, iteration cap) are
/// recorded in the trace for that level and the sweep continues; only
/// precondition violations return an error.
pub fn multilevel_reconstruct(
    set: &SamplingSet,
    samples: &SampleVector,
    delta: f64,
    opts: &MultilevelOptions,
) -> Result<(TrigPoly, LevelTrace, ReconstructionReport)> {
    check_common(delta, opts)?;
    let r = set.len();
    let needed = 2 * opts.max_level + 1;
    if r < needed {
        return Err(Error::TooFewSamples { needed, got: r });
    }
    if samples.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            r
        )));
    }
    let weights = match &opts.weights {
        Some(w) if w.len() != r => {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} points",
                w.len(),
                r
            )));
        }
        Some(w) => w.clone(),
        None => default_weights(set)?,
    };
    let period = set.period();
    let points = set.points();
    let b_norm = samples.norm();
    let outer = 2.0 * opts.tau_stop * delta * b_norm * b_norm;

    let mut prev_rho = b_norm * b_norm;
    let mut warm: Option<TrigPoly> = None;
    let mut records = Vec::new();
    let mut outer_satisfied = false;
    let mut chosen = 1;
    let mut total_iterations = 0;
    let mut final_cg: Option<CgTrace> = None;

    for m in level_schedule(opts.schedule, opts.max_level) {
        let tail = estimate_tail(prev_rho, outer);
        let inner = 2.0 * opts.tau_stop * (delta * b_norm + tail) * b_norm;
        let system = build_toeplitz(set, &weights, m, period)?;
        let rhs = build_rhs(set, samples, &weights, m, period)?;
        let op = system.operator();
        let x0 = match &warm {
            Some(p) => Some(p.zero_pad(m)?.coeffs().to_vec()),
            None => None,
        };
        let max_iter = opts.max_iter_per_level.unwrap_or(4 * (2 * m + 1));
        let eval_rho = |x: &[Complex64]| -> f64 {
            let p = TrigPoly::new(m, period, x.to_vec())
                .expect("coefficient length is fixed by the level");
            p.eval_many(points)
                .iter()
                .zip(&samples.values)
                .map(|(p, b)| (p - b).norm_sqr())
                .sum()
        };
        let (best_x, best_rho, rule, cg) =
            run_level(&rhs, |x| op.apply(x), x0.as_deref(), eval_rho, outer, inner, max_iter);
        total_iterations += cg.iterations;
        records.push(LevelRecord {
            level: m,
            iterations: cg.iterations,
            data_residual: best_rho,
            tail_estimate: tail,
            rule: rule.clone(),
        });
        warm = Some(TrigPoly::new(m, period, best_x)?);
        prev_rho = best_rho;
        chosen = m;
        final_cg = Some(cg);
        if rule == "outer" {
            outer_satisfied = true;
            break;
        }
    }

    let poly = warm.expect("at least one level runs");
    let trace = LevelTrace { records, outer_satisfied, chosen_level: chosen };
    let report = finish_report(
        "multilevel",
        delta,
        period,
        opts,
        &trace,
        final_cg.as_ref(),
        total_iterations,
        prev_rho,
    );
    Ok((poly, trace, report))
}

/// Two-dimensional analog of [`multilevel_reconstruct`]: levels are full
/// degree-M tensor spaces of dimension (2M+1)².
pub fn multilevel_reconstruct_2d(
    set: &SamplingSet2D,
    samples: &SampleVector,
    delta: f64,
    opts: &MultilevelOptions,
) -> Result<(Signal2D, LevelTrace, ReconstructionReport)> {
    check_common(delta, opts)?;
    let r = set.len();
    let side = 2 * opts.max_level + 1;
    let needed = side * side;
    if r < needed {
        return Err(Error::TooFewSamples { needed, got: r });
    }
    if samples.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            r
        )));
    }
    let weights = match &opts.weights {
        Some(w) if w.len() != r => {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} points",
                w.len(),
                r
            )));
        }
        Some(w) => w.clone(),
        None => vec![1.0; r],
    };
    let period = set.period();
    let points = set.points();
    let b_norm = samples.norm();
    let outer = 2.0 * opts.tau_stop * delta * b_norm * b_norm;

    let mut prev_rho = b_norm * b_norm;
    let mut warm: Option<Signal2D> = None;
    let mut records = Vec::new();
    let mut outer_satisfied = false;
    let mut chosen = 1;
    let mut total_iterations = 0;
    let mut final_cg: Option<CgTrace> = None;

    for m in level_schedule(opts.schedule, opts.max_level) {
        let tail = estimate_tail(prev_rho, outer);
        let inner = 2.0 * opts.tau_stop * (delta * b_norm + tail) * b_norm;
        let system = build_toeplitz_2d(set, &weights, m, period)?;
        let rhs = build_rhs_2d(set, samples, &weights, m, period)?;
        let op = system.operator();
        let x0 = match &warm {
            Some(p) => Some(p.zero_pad(m)?.coeffs().to_vec()),
            None => None,
        };
        let n = 2 * m + 1;
        let max_iter = opts.max_iter_per_level.unwrap_or(4 * n * n);
        let eval_rho = |x: &[Complex64]| -> f64 {
            let p = Signal2D::new(m, period, x.to_vec())
                .expect("coefficient length is fixed by the level");
            p.eval_points(points)
                .iter()
                .zip(&samples.values)
                .map(|(p, b)| (p - b).norm_sqr())
                .sum()
        };
        let (best_x, best_rho, rule, cg) =
            run_level(&rhs, |x| op.apply(x), x0.as_deref(), eval_rho, outer, inner, max_iter);
        total_iterations += cg.iterations;
        records.push(LevelRecord {
            level: m,
            iterations: cg.iterations,
            data_residual: best_rho,
            tail_estimate: tail,
            rule: rule.clone(),
        });
        warm = Some(Signal2D::new(m, period, best_x)?);
        prev_rho = best_rho;
        chosen = m;
        final_cg = Some(cg);
        if rule == "outer" {
            outer_satisfied = true;
            break;
        }
    }

    let poly = warm.expect("at least one level runs");
    let trace = LevelTrace { records, outer_satisfied, chosen_level: chosen };
    let report = finish_report(
        "multilevel-2d",
        delta,
        period,
        opts,
        &trace,
        final_cg.as_ref(),
        total_iterations,
        prev_rho,
    );
    Ok((poly, trace, report))
}
