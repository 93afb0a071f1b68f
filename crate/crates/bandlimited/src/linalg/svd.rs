//! Dense SVD and truncated-SVD pseudo-inverse application.
//!
//! Dense factorization is deliberate: the systems this crate regularizes stay
//! at desk scale (dimension ≲ 1500), where the O(n³) cost is the documented
//! price of the truncated-section route rather than something to engineer
//! around.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular value decomposition A = U Σ V* with singular values descending.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub singular_values: Vec<f64>,
    pub u: DMatrix<Complex64>,
    pub v_t: DMatrix<Complex64>,
}

/// Factor a dense complex matrix. Singular values are sorted descending and
/// the factor columns are permuted to match.
pub fn svd(a: &DMatrix<Complex64>) -> Result<SvdFactors> {
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParameter("matrix entries must be finite".into()));
    }
    let f = a.clone().try_svd(true, true, f64::EPSILON, 10_000).ok_or(Error::SvdFailed)?;
    let u = f.u.ok_or(Error::SvdFailed)?;
    let v_t = f.v_t.ok_or(Error::SvdFailed)?;
    let mut order: Vec<usize> = (0..f.singular_values.len()).collect();
    order.sort_by(|&i, &j| f.singular_values[j].partial_cmp(&f.singular_values[i]).unwrap());

    let singular_values: Vec<f64> = order.iter().map(|&i| f.singular_values[i]).collect();
    let u = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v_t = DMatrix::from_fn(order.len(), v_t.ncols(), |r, c| v_t[(order[r], c)]);
    Ok(SvdFactors { singular_values, u, v_t })
}

impl SvdFactors {
    /// U Σ V*, for reconstruction checks.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let sigma = DMatrix::from_diagonal(&DVector::from_iterator(
            self.singular_values.len(),
            self.singular_values.iter().map(|&s| Complex64::new(s, 0.0)),
        ));
        &self.u * sigma * &self.v_t
    }

    /// Apply the truncated pseudo-inverse: x = V Σ^{+,τ} U* y, keeping 1/λ_k
    /// iff λ_k ≥ τ. τ = 0 degrades to the Moore-Penrose inverse with an
    /// exact-zero test at 1e-14·λ_max.
    pub fn tsvd_apply(&self, y: &[Complex64], tau: f64) -> Vec<Complex64> {
        let lambda_max = self.singular_values.first().copied().unwrap_or(0.0);
        let cutoff = tau.max(1e-14 * lambda_max);
        let n = self.v_t.ncols();
        let mut x = vec![Complex64::ZERO; n];
        for (k, &s) in self.singular_values.iter().enumerate() {
            if s < cutoff || s == 0.0 {
                continue;
            }
            let uy: Complex64 = (0..y.len()).map(|i| self.u[(i, k)].conj() * y[i]).sum();
            let w = uy / s;
            for j in 0..n {
                x[j] += self.v_t[(k, j)].conj() * w;
            }
        }
        x
    }

    /// Number of singular values the threshold keeps.
    pub fn kept(&self, tau: f64) -> usize {
        let lambda_max = self.singular_values.first().copied().unwrap_or(0.0);
        let cutoff = tau.max(1e-14 * lambda_max);
        self.singular_values.iter().filter(|&&s| s >= cutoff && s > 0.0).count()
    }
}

/// Regularized solve of A x = y by truncated SVD with threshold τ.
pub fn tsvd_solve(a: &DMatrix<Complex64>, y: &[Complex64], tau: f64) -> Result<Vec<Complex64>> {
    if y.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, rhs has {} entries",
            a.nrows(),
            y.len()
        )));
    }
    if tau < 0.0 {
        return Err(Error::InvalidParameter("tsvd threshold must be nonnegative".into()));
    }
    Ok(svd(a)?.tsvd_apply(y, tau))
}
