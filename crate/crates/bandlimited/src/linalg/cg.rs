//! Conjugate gradients for Hermitian positive-semidefinite operators.
//!
//! The solver works directly on the Hermitian form (no normal-equation
//! re-squaring) and accepts an external stopping rule alongside the plain
//! relative-residual tolerance. The rule sees every iterate, including the
//! initial guess at k = 0, which lets callers implement discrepancy-style
//! early termination and offline scans of the whole iteration history.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Relative residual fell below the tolerance.
    Tolerance,
    /// The caller-supplied stopping rule fired.
    StoppingRule,
    MaxIter,
    /// Zero or negative curvature direction; the trace up to the breakdown is
    /// returned with the current iterate.
    Breakdown,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::Tolerance => "tolerance",
            Termination::StoppingRule => "stopping-rule",
            Termination::MaxIter => "max-iter",
            Termination::Breakdown => "breakdown",
        }
    }
}

/// Residual history of a CG run; `residual_norms[k]` is ‖b − A x_{k+1}‖, so
/// the list length equals the number of iterations performed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CgTrace {
    pub residual_norms: Vec<f64>,
    pub iterations: usize,
    pub termination: Termination,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Solve A x = b for Hermitian PSD A given as a matrix-free operator.
///
/// `stop(k, x_k, ‖r_k‖)` is consulted at k = 0 with the initial guess and then
/// after every iteration; returning true terminates with
/// `Termination::StoppingRule`. `tol` is relative to ‖b‖ and may be 0 to
/// disable the tolerance test.
pub fn cg_solve<A, S>(
    apply_a: A,
    rhs: &[Complex64],
    x0: Option<&[Complex64]>,
    tol: f64,
    max_iter: usize,
    mut stop: S,
) -> (Vec<Complex64>, CgTrace)
where
    A: Fn(&[Complex64]) -> Vec<Complex64>,
    S: FnMut(usize, &[Complex64], f64) -> bool,
{
    let n = rhs.len();
    let mut x = match x0 {
        Some(v) => {
            assert_eq!(v.len(), n, "initial guess length mismatch");
            v.to_vec()
        }
        None => vec![Complex64::ZERO; n],
    };
    let b_norm = norm(rhs);
    let mut r: Vec<Complex64> = if x.iter().all(|v| *v == Complex64::ZERO) {
        rhs.to_vec()
    } else {
        let ax = apply_a(&x);
        rhs.iter().zip(&ax).map(|(b, a)| b - a).collect()
    };
    let mut trace = CgTrace { residual_norms: vec![], iterations: 0, termination: Termination::MaxIter };

    if stop(0, &x, norm(&r)) {
        trace.termination = Termination::StoppingRule;
        return (x, trace);
    }
    if max_iter == 0 {
        return (x, trace);
    }
    if tol > 0.0 && norm(&r) <= tol * b_norm {
        trace.termination = Termination::Tolerance;
        return (x, trace);
    }

    let mut p = r.clone();
    let mut rr = dot(&r, &r).re;
    for k in 1..=max_iter {
        let ap = apply_a(&p);
        let pap = dot(&p, &ap).re;
        if !pap.is_finite() || pap <= 0.0 {
            trace.termination = Termination::Breakdown;
            return (x, trace);
        }
        let alpha = rr / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let r_norm = norm(&r);
        trace.residual_norms.push(r_norm);
        trace.iterations = k;
        if stop(k, &x, r_norm) {
            trace.termination = Termination::StoppingRule;
            return (x, trace);
        }
        if tol > 0.0 && r_norm <= tol * b_norm {
            trace.termination = Termination::Tolerance;
            return (x, trace);
        }
        if !r_norm.is_finite() {
            trace.termination = Termination::Breakdown;
            return (x, trace);
        }
        let rr_next = r_norm * r_norm;
        let beta = rr_next / rr;
        rr = rr_next;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    trace.termination = Termination::MaxIter;
    (x, trace)
}
