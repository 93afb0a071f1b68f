//! Trigonometric-polynomial reconstruction: weighted least squares over
//! degree-M polynomials, solved through the Hermitian Toeplitz normal
//! equations T_M a_M = y_M with CG and FFT matrix-vector products.
//!
//! With the basis φ_k(t) = P^{-1/2} e^{2πikt/P} the normal equations have
//! entries z_s = P^{-1} Σ_j w_j e^{-2πis t_j/P} (first column s = 0..2M) and
//! right-hand side (y_M)_k = P^{-1/2} Σ_j b_j w_j e^{-2πik t_j/P}. Under the
//! default period P = 2M+1 these are the familiar 1/(2M+1) and 1/√(2M+1)
//! factors; keeping them tied to the period makes the same formulas valid for
//! alternative period conventions (and keeps the tight-frame identity
//! T_M = m·I of regular m-fold oversampling exact).
//!
//! Assembly is direct O(rM) summation via phase recurrences: exact at desk
//! scale, no fast-summation accuracy knob. A dense fast path is deliberately
//! absent; a fast summation backend could replace `build_toeplitz`/`build_rhs`
//! behind the same contracts.

use crate::error::{Error, Result};
use crate::linalg::{cg_solve, Termination, ToeplitzSystem, ToeplitzSystem2D};
use crate::report::ReconstructionReport;
use crate::signals::{SampleVector, SamplingSet, SamplingSet2D, Signal2D, TrigPoly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Gap weights w_j = (t_{j+1} − t_{j−1})/2 with periodic wraparound
/// (t_0 := t_r − P, t_{r+1} := t_1 + P). Positive, and Σ w_j = P.
pub fn default_weights(set: &SamplingSet) -> Result<Vec<f64>> {
    let t = set.points();
    let r = t.len();
    if r < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: r });
    }
    let p = set.period();
    let mut w = Vec::with_capacity(r);
    for j in 0..r {
        let prev = if j == 0 { t[r - 1] - p } else { t[j - 1] };
        let next = if j == r - 1 { t[0] + p } else { t[j + 1] };
        w.push((next - prev) / 2.0);
    }
    Ok(w)
}

/// First column z_s = P^{-1} Σ_j w_j e^{-2πis t_j/P}, s = 0..2M, by direct
/// O(rM) summation. Hermitian Toeplitz and positive semidefinite for
/// positive weights (it is V*W²V).
pub fn build_toeplitz(
    set: &SamplingSet,
    weights: &[f64],
    degree: usize,
    period: f64,
) -> Result<ToeplitzSystem> {
    if weights.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} points",
            weights.len(),
            set.len()
        )));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let mut col = vec![Complex64::ZERO; 2 * degree + 1];
    for (&t, &w) in set.points().iter().zip(weights) {
        let step = Complex64::from_polar(1.0, -2.0 * PI * t / period);
        let mut phase = Complex64::new(w, 0.0);
        for z in col.iter_mut() {
            *z += phase;
            phase *= step;
        }
    }
    let scale = 1.0 / period;
    col.iter_mut().for_each(|z| *z *= scale);
    // z_0 is a positive-weight sum of ones; drop the rounding dust so the
    // matrix is exactly Hermitian.
    col[0] = Complex64::new(col[0].re, 0.0);
    Ok(ToeplitzSystem { first_column: col, rhs: vec![] })
}

/// Right-hand side (y_M)_k = P^{-1/2} Σ_j b_j w_j e^{-2πik t_j/P}, k = -M..M.
pub fn build_rhs(
    set: &SamplingSet,
    samples: &SampleVector,
    weights: &[f64],
    degree: usize,
    period: f64,
) -> Result<Vec<Complex64>> {
    if samples.len() != set.len() || weights.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "points/samples/weights lengths {} / {} / {}",
            set.len(),
            samples.len(),
            weights.len()
        )));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let m = degree as f64;
    let mut y = vec![Complex64::ZERO; 2 * degree + 1];
    for ((&t, &w), &b) in set.points().iter().zip(weights).zip(&samples.values) {
        let step = Complex64::from_polar(1.0, -2.0 * PI * t / period);
        // Start at k = -M: e^{+2πiM t/P}.
        let mut phase = Complex64::from_polar(1.0, 2.0 * PI * m * t / period);
        let bw = b * w;
        for yk in y.iter_mut() {
            *yk += bw * phase;
            phase *= step;
        }
    }
    let scale = 1.0 / period.sqrt();
    y.iter_mut().for_each(|z| *z *= scale);
    Ok(y)
}

/// Options for [`act_reconstruct`]; `Default` gives the documented behavior
/// (gap weights, period 2M+1, CG tolerance 1e-10, max_iter 4(2M+1)).
#[derive(Debug, Clone, Default)]
pub struct ActOptions {
    /// Per-point weights; defaults to [`default_weights`].
    pub weights: Option<Vec<f64>>,
    /// Polynomial period; defaults to 2M+1. Callers whose sampling interval
    /// does not match that convention should pass the set's period.
    pub period: Option<f64>,
    /// CG relative-residual tolerance; defaults to 1e-10.
    pub cg_tol: Option<f64>,
    /// CG iteration cap; defaults to 4(2M+1).
    pub max_iter: Option<usize>,
}

/// Weighted least-squares fit of a degree-M polynomial to the samples:
/// minimizes Σ_j w_j |p(t_j) − b_j|² by solving T_M a_M = y_M with CG.
pub fn act_reconstruct(
    set: &SamplingSet,
    samples: &SampleVector,
    degree: usize,
    opts: &ActOptions,
) -> Result<(TrigPoly, ReconstructionReport)> {
    let r = set.len();
    if r < 2 * degree + 1 {
        return Err(Error::TooFewSamples { needed: 2 * degree + 1, got: r });
    }
    if samples.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            r
        )));
    }
    let weights = match &opts.weights {
        Some(w) => w.clone(),
        None => default_weights(set)?,
    };
    let period = opts.period.unwrap_or((2 * degree + 1) as f64);
    let cg_tol = opts.cg_tol.unwrap_or(1e-10);
    let max_iter = opts.max_iter.unwrap_or(4 * (2 * degree + 1));

    let system = build_toeplitz(set, &weights, degree, period)?;
    let y = build_rhs(set, samples, &weights, degree, period)?;
    let op = system.operator();
    let (a, trace) = cg_solve(|x| op.apply(x), &y, None, cg_tol, max_iter, |_, _, _| false);
    let poly = TrigPoly::new(degree, period, a)?;

    let residual = weighted_residual(&poly, set, samples, &weights);
    let mut report = ReconstructionReport::new("act", samples.noise_level.unwrap_or(0.0));
    report.degree = Some(degree);
    report.period = Some(period);
    report.data_residual = residual;
    report.set_cg(&trace);
    if trace.termination == Termination::MaxIter {
        report.notes.push(format!(
            "cg reached max_iter={max_iter} before tolerance {cg_tol}"
        ));
    }
    Ok((poly, report))
}

/// Weighted data residual Σ_j w_j |p(t_j) − b_j|².
pub fn weighted_residual(
    p: &TrigPoly,
    set: &SamplingSet,
    samples: &SampleVector,
    weights: &[f64],
) -> f64 {
    set.points()
        .iter()
        .zip(&samples.values)
        .zip(weights)
        .map(|((&t, &b), &w)| w * (p.eval(t) - b).norm_sqr())
        .sum()
}

/// Dense weighted least-squares oracle: solves min Σ w_j |p(t_j) − b_j|² by a
/// QR factorization of the weighted Vandermonde-type matrix, and
/// cross-checks the normal-equation identities T_M = V*W²V and y_M = V*W²b
/// against the Toeplitz assembly to 1e-12 before returning.
pub fn vandermonde_lsq_oracle(
    set: &SamplingSet,
    samples: &SampleVector,
    weights: &[f64],
    degree: usize,
    period: f64,
) -> Result<TrigPoly> {
    let r = set.len();
    let n = 2 * degree + 1;
    if r < n {
        return Err(Error::TooFewSamples { needed: n, got: r });
    }
    if samples.len() != r || weights.len() != r {
        return Err(Error::DimensionMismatch("points/samples/weights lengths differ".into()));
    }
    let m = degree as i64;
    let scale = 1.0 / period.sqrt();
    // V_{j,k} = P^{-1/2} e^{2πik t_j/P}; rows scaled by √w_j.
    let v = DMatrix::<Complex64>::from_fn(r, n, |j, kk| {
        let k = kk as i64 - m;
        let t = set.points()[j];
        Complex64::from_polar(scale, 2.0 * PI * k as f64 * t / period)
    });
    let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let wv = DMatrix::<Complex64>::from_fn(r, n, |j, k| v[(j, k)] * sqrt_w[j]);
    let wb = nalgebra::DVector::<Complex64>::from_iterator(
        r,
        samples.values.iter().zip(&sqrt_w).map(|(b, sw)| b * *sw),
    );

    // Identity check against the FFT-free Toeplitz assembly.
    let t_dense = build_toeplitz(set, weights, degree, period)?.dense();
    let y = build_rhs(set, samples, weights, degree, period)?;
    let t_normal = wv.adjoint() * &wv;
    let y_normal = wv.adjoint() * &wb;
    let t_scale = t_dense.norm().max(1.0);
    if (&t_normal - &t_dense).norm() > 1e-12 * t_scale {
        return Err(Error::Numerical(
            "normal-equation matrix disagrees with Toeplitz assembly".into(),
        ));
    }
    let y_scale = y_normal.norm().max(1.0);
    let y_gap: f64 = y
        .iter()
        .zip(y_normal.iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if y_gap > 1e-12 * y_scale {
        return Err(Error::Numerical(
            "normal-equation right side disagrees with direct assembly".into(),
        ));
    }

    // Least squares through QR of the weighted design matrix.
    let qr = wv.qr();
    let rmat = qr.r();
    let min_diag = (0..n).map(|i| rmat[(i, i)].norm()).fold(f64::INFINITY, f64::min);
    let max_diag = (0..n).map(|i| rmat[(i, i)].norm()).fold(0.0, f64::max);
    if min_diag <= 1e-12 * max_diag {
        return Err(Error::RankDeficient(format!(
            "weighted design matrix has R diagonal ratio {:.3e}",
            min_diag / max_diag
        )));
    }
    let qtb = qr.q().adjoint() * wb;
    let a = rmat
        .solve_upper_triangular(&qtb)
        .ok_or_else(|| Error::RankDeficient("triangular solve failed".into()))?;
    TrigPoly::new(degree, period, a.iter().copied().collect())
}

/// 2-D symbol grid z_{s,u} = P^{-2} Σ_j w_j e^{-2πi(s u_j + u v_j)/P} for
/// s,u = -2M..2M, by direct summation with per-axis phase recurrences.
pub fn build_toeplitz_2d(
    set: &SamplingSet2D,
    weights: &[f64],
    degree: usize,
    period: f64,
) -> Result<ToeplitzSystem2D> {
    if weights.len() != set.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} points",
            weights.len(),
            set.len()
        )));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let dim = 2 * degree + 1;
    let w_sym = 2 * dim - 1;
    let span = 2 * degree as i64;
    let mut symbol = vec![Complex64::ZERO; w_sym * w_sym];
    let mut row = vec![Complex64::ZERO; w_sym];
    let mut colv = vec![Complex64::ZERO; w_sym];
    for (&(u, v), &w) in set.points().iter().zip(weights) {
        fill_phases(&mut row, u, period, span);
        fill_phases(&mut colv, v, period, span);
        for (s, ps) in row.iter().enumerate() {
            let wps = ps * w;
            for (q, pq) in colv.iter().enumerate() {
                symbol[s * w_sym + q] += wps * pq;
            }
        }
    }
    let scale = 1.0 / (period * period);
    symbol.iter_mut().for_each(|z| *z *= scale);
    let center = (dim - 1) * w_sym + (dim - 1);
    symbol[center] = Complex64::new(symbol[center].re, 0.0);
    Ok(ToeplitzSystem2D { symbol, dim, rhs: vec![] })
}

/// Fill `out[i] = e^{-2πi(i - span) t / P}` for i = 0..2·span, by recurrence.
fn fill_phases(out: &mut [Complex64], t: f64, period: f64, span: i64) {
    let step = Complex64::from_polar(1.0, -2.0 * PI * t / period);
    let mut phase = Complex64::from_polar(1.0, 2.0 * PI * span as f64 * t / period);
    for slot in out.iter_mut() {
        *slot = phase;
        phase *= step;
    }
}

/// 2-D right-hand side y_{k,l} = P^{-1} Σ_j b_j w_j e^{-2πi(k u_j + l v_j)/P},
/// k,l = -M..M, row-major in k.
pub fn build_rhs_2d(
    set: &SamplingSet2D,
    samples: &SampleVector,
    weights: &[f64],
    degree: usize,
    period: f64,
) -> Result<Vec<Complex64>> {
    if samples.len() != set.len() || weights.len() != set.len() {
        return Err(Error::DimensionMismatch("points/samples/weights lengths differ".into()));
    }
    let n = 2 * degree + 1;
    let span = degree as i64;
    let mut y = vec![Complex64::ZERO; n * n];
    let mut pu = vec![Complex64::ZERO; n];
    let mut pv = vec![Complex64::ZERO; n];
    for ((&(u, v), &w), &b) in set.points().iter().zip(weights).zip(&samples.values) {
        fill_phases(&mut pu, u, period, span);
        fill_phases(&mut pv, v, period, span);
        let bw = b * w;
        for (k, pk) in pu.iter().enumerate() {
            let f = bw * pk;
            for (l, pl) in pv.iter().enumerate() {
                y[k * n + l] += f * pl;
            }
        }
    }
    let scale = 1.0 / period;
    y.iter_mut().for_each(|z| *z *= scale);
    Ok(y)
}

/// 2-D analog of [`act_reconstruct`]. Weights default to 1 (gap weights have
/// no canonical scattered-data analog in 2-D; Voronoi cell areas would be the
/// natural refinement). r ≥ (2M+1)² is necessary but not sufficient;
/// (near-)singular systems surface as `Error::Numerical` when CG stagnates.
pub fn act_reconstruct_2d(
    set: &SamplingSet2D,
    samples: &SampleVector,
    degree: usize,
    opts: &ActOptions,
) -> Result<(Signal2D, ReconstructionReport)> {
    let r = set.len();
    let n = 2 * degree + 1;
    if r < n * n {
        return Err(Error::TooFewSamples { needed: n * n, got: r });
    }
    if samples.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "{} samples for {} points",
            samples.len(),
            r
        )));
    }
    let weights = match &opts.weights {
        Some(w) => w.clone(),
        None => vec![1.0; r],
    };
    let period = opts.period.unwrap_or(n as f64);
    let cg_tol = opts.cg_tol.unwrap_or(1e-10);
    let max_iter = opts.max_iter.unwrap_or(4 * n * n);

    let system = build_toeplitz_2d(set, &weights, degree, period)?;
    let y = build_rhs_2d(set, samples, &weights, degree, period)?;
    let op = system.operator();
    let (a, trace) = cg_solve(|x| op.apply(x), &y, None, cg_tol, max_iter, |_, _, _| false);

    let y_norm: f64 = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if trace.termination == Termination::MaxIter {
        let final_res = trace.residual_norms.last().copied().unwrap_or(y_norm);
        if y_norm > 0.0 && final_res > 1e-2 * y_norm {
            return Err(Error::Numerical(format!(
                "cg stagnated on a (near-)singular 2-D system: relative residual {:.3e} after {} iterations",
                final_res / y_norm,
                trace.iterations
            )));
        }
    }
    let poly = Signal2D::new(degree, period, a)?;
    let fitted = poly.eval_points(set.points());
    let residual: f64 = fitted
        .iter()
        .zip(&samples.values)
        .zip(&weights)
        .map(|((p, b), &w)| w * (p - b).norm_sqr())
        .sum();

    let mut report = ReconstructionReport::new("act-2d", samples.noise_level.unwrap_or(0.0));
    report.degree = Some(degree);
    report.period = Some(period);
    report.data_residual = residual;
    report.set_cg(&trace);
    Ok((poly, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{
        gap_set, generate_bandlimited, generate_bandlimited_2d, jittered_set, sample_poly,
        sample_signal_2d, SpectrumDecay,
    };

    #[test]
    fn default_weights_equispaced_and_wraparound() {
        let set = gap_set(2, 1, 1).unwrap(); // {-2,-1,0,1,2}, period 4... halfwidth 2
        let w = default_weights(&set).unwrap();
        // Equispaced spacing 1 on the torus of circumference 4: interior
        // weights 1, edge weights straddle the wrap gap of 0.
        assert_eq!(w.len(), 5);
        let sum: f64 = w.iter().sum();
        assert!((sum - set.period()).abs() < 1e-12);

        let set = SamplingSet::new(vec![-0.25, 0.0, 0.25], 0.5).unwrap();
        let w = default_weights(&set).unwrap();
        // Wrap gap 0.5 split between the edge points: (0.25 + 0.5)/2 each.
        assert!((w[0] - 0.375).abs() < 1e-15);
        assert!((w[1] - 0.25).abs() < 1e-15);
        assert!((w[2] - 0.375).abs() < 1e-15);

        let set = jittered_set(37, 0.8, 10.0, 3).unwrap();
        let w = default_weights(&set).unwrap();
        assert!(w.iter().all(|&x| x > 0.0));
        let sum: f64 = w.iter().sum();
        assert!((sum - set.period()).abs() < 1e-10);
    }

    #[test]
    fn equispaced_weights_equal_spacing() {
        let set = jittered_set(40, 0.5, 10.0, 3).unwrap(); // zero jitter budget
        let w = default_weights(&set).unwrap();
        for x in w {
            assert!((x - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn tight_frame_identity_regular_oversampling() {
        // m-fold regular oversampling with unit weights and period 2N,
        // N = n + n/(r-1): the normal matrix collapses to m·I.
        let n_half = 8;
        let m_over = 3;
        let set = gap_set(n_half, m_over, 1).unwrap();
        let r = set.len();
        let nn = n_half as f64 + n_half as f64 / (r as f64 - 1.0);
        let period = 2.0 * nn;
        let sys = build_toeplitz(&set, &vec![1.0; r], n_half, period).unwrap();
        assert!((sys.first_column[0].re - m_over as f64).abs() < 1e-12);
        for z in &sys.first_column[1..] {
            assert!(z.norm() < 1e-12);
        }
    }

    #[test]
    fn single_point_gives_rank_one_matrix() {
        let set = SamplingSet::new(vec![0.0], 1.0).unwrap();
        let m = 3;
        let period = (2 * m + 1) as f64;
        let sys = build_toeplitz(&set, &[1.0], m, period).unwrap();
        for z in &sys.first_column {
            assert!((z - Complex64::new(1.0 / period, 0.0)).norm() < 1e-15);
        }
        let b = SampleVector::new(vec![Complex64::ONE]);
        let y = build_rhs(&set, &b, &[1.0], m, period).unwrap();
        for v in &y {
            assert!((v - Complex64::new(1.0 / period.sqrt(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_samples_give_zero_rhs() {
        let set = jittered_set(16, 0.8, 4.5, 1).unwrap();
        let b = SampleVector::new(vec![Complex64::ZERO; 16]);
        let w = default_weights(&set).unwrap();
        let y = build_rhs(&set, &b, &w, 4, set.period()).unwrap();
        assert!(y.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn assembly_matches_naive_double_sum() {
        // Oracle: entrywise summation with fresh transcendentals, no
        // recurrence, no Toeplitz structure assumption.
        let set = jittered_set(23, 0.8, 5.0, 9).unwrap();
        let w = default_weights(&set).unwrap();
        let m = 5;
        let period = set.period();
        let sys = build_toeplitz(&set, &w, m, period).unwrap();
        for s in 0..=2 * m {
            let mut want = Complex64::ZERO;
            for (&t, &wj) in set.points().iter().zip(&w) {
                want += Complex64::from_polar(wj, -2.0 * PI * s as f64 * t / period);
            }
            want /= period;
            assert!((sys.first_column[s] - want).norm() < 1e-12);
        }

        let p = generate_bandlimited(m, period, 4, SpectrumDecay::Flat).unwrap();
        let b = sample_poly(&p, &set);
        let y = build_rhs(&set, &b, &w, m, period).unwrap();
        for k in -(m as i64)..=(m as i64) {
            let mut want = Complex64::ZERO;
            for ((&t, &wj), &bv) in set.points().iter().zip(&w).zip(&b.values) {
                want += bv * Complex64::from_polar(wj, -2.0 * PI * k as f64 * t / period);
            }
            want /= period.sqrt();
            assert!((y[(k + m as i64) as usize] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_recovery_without_noise() {
        let m = 6;
        let set = jittered_set(2 * m + 3, 0.9, (2 * m + 1) as f64 / 2.0, 5).unwrap();
        let truth = generate_bandlimited(m, set.period(), 11, SpectrumDecay::Flat).unwrap();
        let b = sample_poly(&truth, &set);
        let opts = ActOptions { period: Some(set.period()), cg_tol: Some(1e-13), ..Default::default() };
        let (rec, report) = act_reconstruct(&set, &b, m, &opts).unwrap();
        let err: f64 = rec
            .coeffs()
            .iter()
            .zip(truth.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-8, "coefficient error {err}");
        assert!(report.data_residual < 1e-16);
    }

    #[test]
    fn regular_oversampling_solves_in_one_step() {
        // T_M = m·I makes the solution y/m; CG needs a single iteration.
        let n_half = 8;
        let m_over = 2;
        let set = gap_set(n_half, m_over, 1).unwrap();
        let r = set.len();
        let nn = n_half as f64 + n_half as f64 / (r as f64 - 1.0);
        let period = 2.0 * nn;
        let truth = generate_bandlimited(n_half, period, 2, SpectrumDecay::Flat).unwrap();
        let b = sample_poly(&truth, &set);
        let opts = ActOptions {
            weights: Some(vec![1.0; r]),
            period: Some(period),
            ..Default::default()
        };
        let (rec, report) = act_reconstruct(&set, &b, n_half, &opts).unwrap();
        assert!(report.iterations <= 2);
        let y = build_rhs(&set, &b, &vec![1.0; r], n_half, period).unwrap();
        for (a, yk) in rec.coeffs().iter().zip(&y) {
            assert!((a - yk / m_over as f64).norm() < 1e-10);
        }
    }

    #[test]
    fn too_few_samples_rejected() {
        let set = jittered_set(8, 0.9, 3.0, 1).unwrap();
        let b = SampleVector::new(vec![Complex64::ONE; 8]);
        assert!(matches!(
            act_reconstruct(&set, &b, 10, &ActOptions::default()),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn oracle_matches_cg_solution_with_noise() {
        let m = 5;
        let set = jittered_set(31, 0.7, (2 * m + 1) as f64 / 2.0, 8).unwrap();
        let truth = generate_bandlimited(m, set.period(), 3, SpectrumDecay::Flat).unwrap();
        let clean = sample_poly(&truth, &set);
        let noisy = crate::signals::add_noise(&clean, 0.05, 13).unwrap();
        let w = default_weights(&set).unwrap();
        let opts = ActOptions {
            period: Some(set.period()),
            cg_tol: Some(1e-13),
            max_iter: Some(400),
            ..Default::default()
        };
        let (rec, _) = act_reconstruct(&set, &noisy, m, &opts).unwrap();
        let oracle = vandermonde_lsq_oracle(&set, &noisy, &w, m, set.period()).unwrap();
        let gap: f64 = rec
            .coeffs()
            .iter()
            .zip(oracle.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(gap < 1e-8, "coefficient gap {gap}");
    }

    #[test]
    fn oracle_interpolates_square_systems() {
        let m = 4;
        let n = 2 * m + 1;
        let set = jittered_set(n, 0.9, 3.0, 17).unwrap();
        let truth = generate_bandlimited(m, set.period(), 23, SpectrumDecay::Flat).unwrap();
        let b = sample_poly(&truth, &set);
        let w = default_weights(&set).unwrap();
        let p = vandermonde_lsq_oracle(&set, &b, &w, m, set.period()).unwrap();
        let res: f64 = set
            .points()
            .iter()
            .zip(&b.values)
            .map(|(&t, &bv)| (p.eval(t) - bv).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-10, "interpolation residual {res}");
    }

    #[test]
    fn perturbing_the_solution_never_improves_the_functional() {
        use rand::{Rng, SeedableRng};
        let m = 4;
        let set = jittered_set(25, 0.8, (2 * m + 1) as f64 / 2.0, 2).unwrap();
        let truth = generate_bandlimited(m, set.period(), 6, SpectrumDecay::Flat).unwrap();
        let noisy = crate::signals::add_noise(&sample_poly(&truth, &set), 0.1, 4).unwrap();
        let w = default_weights(&set).unwrap();
        let opts = ActOptions {
            period: Some(set.period()),
            cg_tol: Some(1e-13),
            max_iter: Some(500),
            ..Default::default()
        };
        let (rec, _) = act_reconstruct(&set, &noisy, m, &opts).unwrap();
        let base = weighted_residual(&rec, &set, &noisy, &w);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
        for _ in 0..20 {
            let coeffs: Vec<Complex64> = rec
                .coeffs()
                .iter()
                .map(|a| {
                    a + Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * 1e-4
                })
                .collect();
            let perturbed = TrigPoly::new(m, set.period(), coeffs).unwrap();
            let val = weighted_residual(&perturbed, &set, &noisy, &w);
            assert!(val + 1e-13 >= base, "perturbation lowered the functional");
        }
    }

    #[test]
    fn toeplitz_2d_matches_naive_double_sum() {
        let set = SamplingSet2D::random_uniform(17, 2.5, 3).unwrap();
        let w: Vec<f64> = (0..17).map(|i| 0.5 + 0.05 * i as f64).collect();
        let m = 2;
        let period = set.period();
        let sys = build_toeplitz_2d(&set, &w, m, period).unwrap();
        for s in -(2 * m as isize)..=(2 * m as isize) {
            for u in -(2 * m as isize)..=(2 * m as isize) {
                let mut want = Complex64::ZERO;
                for (&(x, y), &wj) in set.points().iter().zip(&w) {
                    let ang = -2.0 * PI * (s as f64 * x + u as f64 * y) / period;
                    want += Complex64::from_polar(wj, ang);
                }
                want /= period * period;
                assert!((sys.symbol_at(s, u) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_grid_regular_oversampling_is_scaled_identity() {
        // Per-axis regular m-fold oversampling with unit weights and the
        // period-2N convention tensorizes the 1-D identity: T = m²·I.
        let n_half = 4;
        let m_over = 2;
        let axis = gap_set(n_half, m_over, 1).unwrap();
        let r1 = axis.len();
        let nn = n_half as f64 + n_half as f64 / (r1 as f64 - 1.0);
        let period = 2.0 * nn;
        let mut pts = Vec::new();
        for &u in axis.points() {
            for &v in axis.points() {
                pts.push((u, v));
            }
        }
        let set = SamplingSet2D::new(pts, n_half as f64).unwrap();
        let sys = build_toeplitz_2d(&set, &vec![1.0; set.len()], n_half, period).unwrap();
        let want = (m_over * m_over) as f64;
        for s in -(2 * n_half as isize)..=(2 * n_half as isize) {
            for u in -(2 * n_half as isize)..=(2 * n_half as isize) {
                let z = sys.symbol_at(s, u);
                if s == 0 && u == 0 {
                    assert!((z.re - want).abs() < 1e-10 && z.im.abs() < 1e-10);
                } else {
                    assert!(z.norm() < 1e-10, "off-diagonal symbol {z} at ({s},{u})");
                }
            }
        }
    }

    #[test]
    fn exact_recovery_2d() {
        let m = 2;
        let per_axis = 2 * m + 3;
        let h = (2 * m + 1) as f64 / 2.0;
        let set = SamplingSet2D::jittered_grid(per_axis, 0.9, h, 12).unwrap();
        let truth = generate_bandlimited_2d(m, set.period(), 7, SpectrumDecay::Flat).unwrap();
        let b = sample_signal_2d(&truth, &set);
        let opts = ActOptions {
            period: Some(set.period()),
            cg_tol: Some(1e-13),
            max_iter: Some(2000),
            ..Default::default()
        };
        let (rec, _) = act_reconstruct_2d(&set, &b, m, &opts).unwrap();
        let err: f64 = rec
            .coeffs()
            .iter()
            .zip(truth.coeffs())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-7, "coefficient error {err}");
    }

    #[test]
    fn too_large_degree_2d_rejected() {
        let set = SamplingSet2D::random_uniform(20, 2.0, 1).unwrap();
        let b = SampleVector::new(vec![Complex64::ONE; 20]);
        assert!(matches!(
            act_reconstruct_2d(&set, &b, 3, &ActOptions::default()),
            Err(Error::TooFewSamples { needed: 49, got: 20 })
        ));
    }
}
