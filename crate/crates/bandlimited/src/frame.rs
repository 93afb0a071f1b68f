//! Truncated sinc-frame reconstruction.
//!
//! The frame route expands a band-limited signal over shifted sincs,
//! f(t) ≈ Σ_j c_j sinc(t − t_j), and determines c from the finite Gram
//! section R_{j,l} = sinc(t_j − t_l). The infinite-dimensional problem is
//! well-posed, but finite sections of R have singular values decaying
//! exponentially to zero (regular oversampling yields the prolate matrix), so
//! the section must be regularized: either by truncated SVD with the
//! threshold rule τ = B(δ/p)^{1/(p+1)}, or by CG iterations stopped by the
//! discrepancy principle ‖b^δ − R c_k‖ ≤ τ_stop·δ·‖b^δ‖. This module exists
//! as much to demonstrate that ill-posedness, and the cost of the dense
//! O(n³) factorization, as to reconstruct; the Toeplitz route in `act` is the
//! well-posed alternative.

use crate::error::{Error, Result};
use crate::linalg::{cg_solve, svd};
use crate::report::ReconstructionReport;
use crate::signals::{sinc, SampleVector, SamplingSet};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Finite section of the sinc-frame Gram system: matrix, right-hand side,
/// retained index range, and the noise level the solver should assume.
#[derive(Debug, Clone)]
pub struct GramSystem {
    /// R_{j,l} = sinc(t_j − t_l); symmetric with unit diagonal, entries in
    /// [-1, 1], positive semidefinite.
    pub matrix: DMatrix<f64>,
    /// b^{(n)}, empty until a reconstruction attaches data.
    pub rhs: Vec<Complex64>,
    /// Retained points; the section is whatever points the caller supplies,
    /// so this is 0..r unless a caller truncates explicitly.
    pub retained: std::ops::Range<usize>,
    pub delta: f64,
    pub points: Vec<f64>,
}

/// Build the Gram section for the supplied points.
pub fn build_gram(set: &SamplingSet) -> GramSystem {
    let t = set.points();
    let r = t.len();
    let matrix = DMatrix::from_fn(r, r, |j, l| sinc(t[j] - t[l]));
    GramSystem {
        matrix,
        rhs: vec![],
        retained: 0..r,
        delta: 0.0,
        points: t.to_vec(),
    }
}

/// Threshold rule τ = B·(δ/p)^{1/(p+1)}. Noise-free callers must substitute
/// machine epsilon (1e-16) for δ themselves; passing δ = 0 is an error.
pub fn estimate_tau(b_upper: f64, delta: f64, p: u32) -> Result<f64> {
    if !(b_upper > 0.0) {
        return Err(Error::InvalidParameter("upper frame bound must be positive".into()));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(
            "noise level must be positive; substitute machine epsilon (1e-16) when noise-free".into(),
        ));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("smoothness order p must be at least 1".into()));
    }
    Ok(b_upper * (delta / p as f64).powf(1.0 / (p as f64 + 1.0)))
}

/// Sinc expansion f(t) = Σ_j c_j sinc(t − t_j) over the retained points.
#[derive(Debug, Clone)]
pub struct SincExpansion {
    pub points: Vec<f64>,
    pub coeffs: Vec<Complex64>,
}

impl SincExpansion {
    pub fn eval(&self, t: f64) -> Complex64 {
        self.points
            .iter()
            .zip(&self.coeffs)
            .map(|(&tj, c)| c * sinc(t - tj))
            .sum()
    }

    /// Values on the uniform grid t_s = a + s·(b−a)/n, s = 0..n-1.
    pub fn eval_grid(&self, a: f64, b: f64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|s| self.eval(a + s as f64 * (b - a) / n as f64))
            .collect()
    }
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

fn residual_sq(gram: &DMatrix<f64>, c: &[Complex64], b: &[Complex64]) -> f64 {
    let r = b.len();
    (0..r)
        .map(|j| {
            let fit: Complex64 = (0..r).map(|l| gram[(j, l)] * c[l]).sum();
            (fit - b[j]).norm_sqr()
        })
        .sum()
}

/// TSVD-regularized frame reconstruction. δ ≤ 0 is substituted by machine
/// epsilon 1e-16; the upper frame bound is surrogated by λ_max(R_n), which is
/// computable and never exceeds any true upper bound of the generating set.
pub fn reconstruct_tsvd(
    set: &SamplingSet,
    samples: &SampleVector,
    delta: f64,
    p: u32,
) -> Result<(SincExpansion, ReconstructionReport)> {
    if samples.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            set.len()
        )));
    }
    let delta_eff = if delta > 0.0 { delta } else { 1e-16 };
    let mut gram = build_gram(set);
    gram.rhs = samples.values.clone();
    gram.delta = delta_eff;

    let factors = svd(&to_complex(&gram.matrix))?;
    let b_upper = factors.singular_values.first().copied().unwrap_or(0.0);
    let tau = estimate_tau(b_upper, delta_eff, p)?;
    let c = factors.tsvd_apply(&samples.values, tau);

    let expansion = SincExpansion { points: gram.points.clone(), coeffs: c };
    let mut report = ReconstructionReport::new("frame-tsvd", delta_eff);
    report.degree = Some(set.len());
    report.tau = Some(tau);
    report.kept_singular_values = Some(factors.kept(tau));
    report.data_residual = residual_sq(&gram.matrix, &expansion.coeffs, &samples.values);
    Ok((expansion, report))
}

/// CG-regularized frame reconstruction with the discrepancy stopping rule
/// ‖b^δ − R c_k‖ ≤ τ_stop·δ·‖b^δ‖ (τ_stop > 1). Non-convergence within
/// `max_iter` is reported in the trace, not thrown.
pub fn reconstruct_cg(
    set: &SamplingSet,
    samples: &SampleVector,
    delta: f64,
    tau_stop: f64,
    max_iter: usize,
) -> Result<(SincExpansion, ReconstructionReport)> {
    if samples.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            set.len()
        )));
    }
    if !(tau_stop > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "discrepancy factor must exceed 1, got {tau_stop}"
        )));
    }
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter("noise level must be nonnegative".into()));
    }
    let gram = build_gram(set);
    let b = &samples.values;
    let b_norm: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let threshold = tau_stop * delta * b_norm;
    let r = set.len();
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        (0..r)
            .map(|j| (0..r).map(|l| gram.matrix[(j, l)] * x[l]).sum())
            .collect()
    };
    // With a zero initial guess the CG residual is exactly b^δ − R c_k, so
    // the discrepancy rule reads directly off the residual norm.
    let (c, trace) = cg_solve(
        apply,
        b,
        None,
        0.0,
        max_iter,
        |_, _, r_norm| r_norm <= threshold,
    );
    let expansion = SincExpansion { points: gram.points.clone(), coeffs: c };
    let mut report = ReconstructionReport::new("frame-cg", delta);
    report.degree = Some(r);
    report.tau_stop = Some(tau_stop);
    report.data_residual = trace
        .residual_norms
        .last()
        .map(|x| x * x)
        .unwrap_or_else(|| b_norm * b_norm);
    report.set_cg(&trace);
    Ok((expansion, report))
}
