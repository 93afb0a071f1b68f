//! Core domain types: sampling sets, trigonometric polynomials, sample
//! vectors, synthetic signal generation, noise injection, and error metrics.
//!
//! Everything lives on a torus: a sampling set on [-H, H] is identified with
//! the circle of circumference 2H, and band-limited signals are modeled as
//! trigonometric polynomials p(t) = P^{-1/2} Σ_{|k| ≤ M} a_k e^{2πikt/P} of
//! degree M and period P. Under that normalization the integral of |p|² over
//! one period equals Σ|a_k|² for every P, and for the default period
//! P = 2M+1 the leading factor is the familiar 1/√(2M+1). All randomness is
//! drawn from a seeded ChaCha8 stream so that every artifact is reproducible
//! from its recorded seed.

use crate::error::{Error, Result};
use crate::linalg::fft;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Name of the PRNG used across the crate, recorded in reports.
pub const RNG_NAME: &str = "chacha8";

/// sin(πt)/(πt) with the removable singularity filled in: sinc(0) = 1.
/// Exact zeros at the nonzero integers, so regular integer sampling sets
/// produce exactly diagonal Gram matrices.
pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    if t == t.trunc() {
        return 0.0;
    }
    (PI * t).sin() / (PI * t)
}

/// Sorted sample locations on [-H, H], identified with a torus of period 2H,
/// with optional positive per-point weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSet {
    points: Vec<f64>,
    interval_halfwidth: f64,
    weights: Option<Vec<f64>>,
}

impl SamplingSet {
    pub fn new(points: Vec<f64>, interval_halfwidth: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("sampling set must be non-empty".into()));
        }
        if !(interval_halfwidth > 0.0) {
            return Err(Error::InvalidParameter("interval halfwidth must be positive".into()));
        }
        for w in points.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "points must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let h = interval_halfwidth;
        if points[0] < -h || *points.last().unwrap() > h {
            return Err(Error::InvalidParameter(format!(
                "points must lie in [{}, {}]",
                -h, h
            )));
        }
        Ok(Self { points, interval_halfwidth, weights: None })
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} points",
                weights.len(),
                self.points.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn interval_halfwidth(&self) -> f64 {
        self.interval_halfwidth
    }

    /// Torus circumference 2H.
    pub fn period(&self) -> f64 {
        2.0 * self.interval_halfwidth
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Maximal gap between consecutive points, including the periodic wrap
    /// gap from the last point back to the first.
    pub fn max_gap(&self) -> f64 {
        let wrap = self.points[0] + self.period() - self.points.last().unwrap();
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(wrap, f64::max)
    }
}

/// Jittered near-uniform sampling set whose maximal gap, including the wrap
/// gap, is at most `gap_ratio`. Deterministic per seed.
pub fn jittered_set(
    n_points: usize,
    gap_ratio: f64,
    interval_halfwidth: f64,
    seed: u64,
) -> Result<SamplingSet> {
    if !(gap_ratio > 0.0 && gap_ratio < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "gap ratio must lie in (0, 1), got {gap_ratio}"
        )));
    }
    if n_points == 0 {
        return Err(Error::InvalidParameter("need at least one point".into()));
    }
    if !(interval_halfwidth > 0.0) {
        return Err(Error::InvalidParameter("interval halfwidth must be positive".into()));
    }
    let circumference = 2.0 * interval_halfwidth;
    let h = circumference / n_points as f64;
    if h > gap_ratio {
        let needed = (circumference / gap_ratio).ceil() as usize;
        return Err(Error::Infeasible(format!(
            "{n_points} points cannot achieve max gap {gap_ratio} on circumference {circumference}; need at least {needed}"
        )));
    }
    // Cell midpoints plus jitter bounded so neighboring draws can neither
    // cross (jitter < h/2) nor open a gap beyond gap_ratio (h + 2j ≤ γ).
    let jitter = (0.499 * h).min((gap_ratio - h) / 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<f64> = (0..n_points)
        .map(|i| {
            let mid = -interval_halfwidth + (i as f64 + 0.5) * h;
            let j = if jitter > 0.0 { rng.random_range(-jitter..jitter) } else { 0.0 };
            mid + j
        })
        .collect();
    let set = SamplingSet::new(points, interval_halfwidth)?;
    debug_assert!(set.max_gap() <= gap_ratio + 1e-12);
    Ok(set)
}

/// One dense block of samples and one large gap on the torus:
/// t_j = j/(Lm) for j = -m·n_half .. m·n_half, on interval halfwidth n_half.
pub fn gap_set(n_half: usize, oversampling: usize, gap_factor: usize) -> Result<SamplingSet> {
    if n_half == 0 || oversampling == 0 || gap_factor == 0 {
        return Err(Error::InvalidParameter(
            "gap_set requires n_half ≥ 1, oversampling ≥ 1, gap_factor ≥ 1".into(),
        ));
    }
    let jmax = (oversampling * n_half) as i64;
    let denom = (gap_factor * oversampling) as f64;
    let points: Vec<f64> = (-jmax..=jmax).map(|j| j as f64 / denom).collect();
    SamplingSet::new(points, n_half as f64)
}

/// Degree-M trigonometric polynomial with period P:
/// p(t) = P^{-1/2} Σ_{k=-M}^{M} a_k e^{2πikt/P}.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    degree: usize,
    period: f64,
    /// Coefficients a_{-M}..a_M, index k + M.
    coeffs: Vec<Complex64>,
}

impl TrigPoly {
    pub fn new(degree: usize, period: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !(period > 0.0) {
            return Err(Error::InvalidParameter("period must be positive".into()));
        }
        if coeffs.len() != 2 * degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "degree {} needs {} coefficients, got {}",
                degree,
                2 * degree + 1,
                coeffs.len()
            )));
        }
        Ok(Self { degree, period, coeffs })
    }

    pub fn zero(degree: usize, period: f64) -> Result<Self> {
        Self::new(degree, period, vec![Complex64::ZERO; 2 * degree + 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient a_k, k ∈ [-M, M].
    pub fn coeff(&self, k: i64) -> Complex64 {
        let m = self.degree as i64;
        assert!(k >= -m && k <= m, "coefficient index out of range");
        self.coeffs[(k + m) as usize]
    }

    /// Σ|a_k|², which equals the integral of |p|² over one period.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Point evaluation by phase recurrence: one transcendental per call and
    /// 2M+1 complex multiplies.
    pub fn eval(&self, t: f64) -> Complex64 {
        let m = self.degree as f64;
        let step = Complex64::from_polar(1.0, 2.0 * PI * t / self.period);
        let mut phase = Complex64::from_polar(1.0, -2.0 * PI * m * t / self.period);
        let mut sum = Complex64::ZERO;
        for a in &self.coeffs {
            sum += a * phase;
            phase *= step;
        }
        sum / self.period.sqrt()
    }

    pub fn eval_many(&self, ts: &[f64]) -> Vec<Complex64> {
        ts.iter().map(|&t| self.eval(t)).collect()
    }

    /// Values on the uniform grid t_s = -P/2 + sP/n, s = 0..n-1. For
    /// n ≥ 2M+1 this runs one inverse FFT (exact up to rounding, no
    /// aliasing); smaller grids fall back to direct evaluation.
    pub fn eval_grid(&self, n: usize) -> Vec<Complex64> {
        let m = self.degree;
        if n < 2 * m + 1 {
            let p = self.period;
            return (0..n).map(|s| self.eval(-p / 2.0 + s as f64 * p / n as f64)).collect();
        }
        // At t_s the factor e^{2πik t_s/P} splits into (-1)^k e^{2πiks/n}.
        let mut buf = vec![Complex64::ZERO; n];
        for (idx, a) in self.coeffs.iter().enumerate() {
            let k = idx as i64 - m as i64;
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let slot = k.rem_euclid(n as i64) as usize;
            buf[slot] += a * sign;
        }
        fft::fft_inverse(&mut buf);
        let scale = 1.0 / self.period.sqrt();
        buf.iter_mut().for_each(|v| *v *= scale);
        buf
    }

    /// Embed into a higher degree with the same period by zero padding. The
    /// embedded polynomial takes identical values everywhere.
    pub fn zero_pad(&self, new_degree: usize) -> Result<TrigPoly> {
        if new_degree < self.degree {
            return Err(Error::InvalidParameter(format!(
                "cannot pad degree {} down to {}",
                self.degree, new_degree
            )));
        }
        let mut coeffs = vec![Complex64::ZERO; 2 * new_degree + 1];
        let off = new_degree - self.degree;
        coeffs[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
        TrigPoly::new(new_degree, self.period, coeffs)
    }
}

/// Spectral envelope for synthetic signals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumDecay {
    Flat,
    /// |a_k| scaled by e^{-rate·|k|}.
    Exponential(f64),
}

/// Deterministic pseudo-random polynomial: coefficients uniform in the
/// complex square [-1,1]², then shaped by the decay envelope.
pub fn generate_bandlimited(
    degree: usize,
    period: f64,
    seed: u64,
    decay: SpectrumDecay,
) -> Result<TrigPoly> {
    if !(period > 0.0) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    if let SpectrumDecay::Exponential(rate) = decay {
        if !rate.is_finite() || rate < 0.0 {
            return Err(Error::InvalidParameter("decay rate must be nonnegative".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = degree as i64;
    let coeffs = (-m..=m)
        .map(|k| {
            let re = 2.0 * rng.random::<f64>() - 1.0;
            let im = 2.0 * rng.random::<f64>() - 1.0;
            let scale = match decay {
                SpectrumDecay::Flat => 1.0,
                SpectrumDecay::Exponential(rate) => (-rate * k.unsigned_abs() as f64).exp(),
            };
            Complex64::new(re, im) * scale
        })
        .collect();
    TrigPoly::new(degree, period, coeffs)
}

/// Sample values b_j aligned with a SamplingSet, with the exact noise level
/// recorded when the vector has been perturbed.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    pub values: Vec<Complex64>,
    pub noise_level: Option<f64>,
}

impl SampleVector {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values, noise_level: None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

/// Evaluate a polynomial at the points of a sampling set.
pub fn sample_poly(p: &TrigPoly, set: &SamplingSet) -> SampleVector {
    SampleVector::new(p.eval_many(set.points()))
}

/// Add a pseudo-random perturbation rescaled so that ‖b^δ − b‖ = δ‖b‖
/// exactly. Real-valued data receives a real perturbation, complex data a
/// complex one. Deterministic per seed; δ is recorded in the result.
pub fn add_noise(b: &SampleVector, delta: f64, seed: u64) -> Result<SampleVector> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter("noise level must be nonnegative".into()));
    }
    if delta == 0.0 {
        return Ok(SampleVector { values: b.values.clone(), noise_level: Some(0.0) });
    }
    let b_norm = b.norm();
    if b_norm == 0.0 {
        return Err(Error::ZeroData(
            "cannot scale a perturbation against an all-zero sample vector".into(),
        ));
    }
    let real_only = b.is_real();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e: Vec<Complex64> = (0..b.len())
        .map(|_| {
            let re = 2.0 * rng.random::<f64>() - 1.0;
            let im = if real_only { 0.0 } else { 2.0 * rng.random::<f64>() - 1.0 };
            Complex64::new(re, im)
        })
        .collect();
    let e_norm = e.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let scale = delta * b_norm / e_norm;
    e.iter_mut().for_each(|v| *v *= scale);
    let values = b.values.iter().zip(&e).map(|(v, n)| v + n).collect();
    Ok(SampleVector { values, noise_level: Some(delta) })
}

/// ‖f_ref − f_approx‖² / ‖f_ref‖², the squared-norm error ratio.
pub fn relative_error(f_ref: &[Complex64], f_approx: &[Complex64]) -> Result<f64> {
    if f_ref.len() != f_approx.len() {
        return Err(Error::DimensionMismatch(format!(
            "reference has {} entries, approximation {}",
            f_ref.len(),
            f_approx.len()
        )));
    }
    let ref_sq: f64 = f_ref.iter().map(|v| v.norm_sqr()).sum();
    if ref_sq == 0.0 {
        return Err(Error::ZeroData("relative error against a zero reference".into()));
    }
    let diff_sq: f64 = f_ref.iter().zip(f_approx).map(|(a, b)| (a - b).norm_sqr()).sum();
    Ok(diff_sq / ref_sq)
}

/// Tensor trigonometric polynomial on a square torus:
/// p(u,v) = P^{-1} Σ_{|k|,|l| ≤ M} a_{k,l} e^{2πi(ku+lv)/P}.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal2D {
    degree: usize,
    period: f64,
    /// Row-major (2M+1)×(2M+1) grid, index (k+M)·(2M+1) + (l+M).
    coeffs: Vec<Complex64>,
}

impl Signal2D {
    pub fn new(degree: usize, period: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !(period > 0.0) {
            return Err(Error::InvalidParameter("period must be positive".into()));
        }
        let n = 2 * degree + 1;
        if coeffs.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "degree {} needs a {}x{} coefficient grid, got {} entries",
                degree, n, n, coeffs.len()
            )));
        }
        Ok(Self { degree, period, coeffs })
    }

    pub fn zero(degree: usize, period: f64) -> Result<Self> {
        let n = 2 * degree + 1;
        Self::new(degree, period, vec![Complex64::ZERO; n * n])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn eval(&self, u: f64, v: f64) -> Complex64 {
        let n = 2 * self.degree + 1;
        let m = self.degree as f64;
        let step_u = Complex64::from_polar(1.0, 2.0 * PI * u / self.period);
        let step_v = Complex64::from_polar(1.0, 2.0 * PI * v / self.period);
        let mut phase_u = Complex64::from_polar(1.0, -2.0 * PI * m * u / self.period);
        let mut sum = Complex64::ZERO;
        for k in 0..n {
            // Inner sum over l with its own recurrence.
            let mut phase_v = Complex64::from_polar(1.0, -2.0 * PI * m * v / self.period);
            let mut row = Complex64::ZERO;
            for l in 0..n {
                row += self.coeffs[k * n + l] * phase_v;
                phase_v *= step_v;
            }
            sum += row * phase_u;
            phase_u *= step_u;
        }
        sum / self.period
    }

    pub fn eval_points(&self, points: &[(f64, f64)]) -> Vec<Complex64> {
        points.iter().map(|&(u, v)| self.eval(u, v)).collect()
    }

    /// Values on the n×n grid (u_s, v_r) with u_s = -P/2 + sP/n, row-major in
    /// the first coordinate. Uses a 2-D inverse FFT when n ≥ 2M+1.
    pub fn eval_grid(&self, n: usize) -> Vec<Complex64> {
        let m = self.degree;
        let p = self.period;
        if n < 2 * m + 1 {
            let coord = |s: usize| -p / 2.0 + s as f64 * p / n as f64;
            return (0..n * n)
                .map(|idx| self.eval(coord(idx / n), coord(idx % n)))
                .collect();
        }
        let nn = 2 * m + 1;
        let mut buf = vec![Complex64::ZERO; n * n];
        for k_idx in 0..nn {
            let k = k_idx as i64 - m as i64;
            for l_idx in 0..nn {
                let l = l_idx as i64 - m as i64;
                let sign = if (k + l).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let row = k.rem_euclid(n as i64) as usize;
                let col = l.rem_euclid(n as i64) as usize;
                buf[row * n + col] += self.coeffs[k_idx * nn + l_idx] * sign;
            }
        }
        fft::fft2_inverse(&mut buf, n, n);
        let scale = 1.0 / p;
        buf.iter_mut().for_each(|v| *v *= scale);
        buf
    }

    pub fn zero_pad(&self, new_degree: usize) -> Result<Signal2D> {
        if new_degree < self.degree {
            return Err(Error::InvalidParameter(format!(
                "cannot pad degree {} down to {}",
                self.degree, new_degree
            )));
        }
        let old_n = 2 * self.degree + 1;
        let new_n = 2 * new_degree + 1;
        let off = new_degree - self.degree;
        let mut coeffs = vec![Complex64::ZERO; new_n * new_n];
        for k in 0..old_n {
            for l in 0..old_n {
                coeffs[(k + off) * new_n + (l + off)] = self.coeffs[k * old_n + l];
            }
        }
        Signal2D::new(new_degree, self.period, coeffs)
    }
}

pub fn generate_bandlimited_2d(
    degree: usize,
    period: f64,
    seed: u64,
    decay: SpectrumDecay,
) -> Result<Signal2D> {
    if !(period > 0.0) {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * degree + 1;
    let m = degree as i64;
    let mut coeffs = Vec::with_capacity(n * n);
    for k in -m..=m {
        for l in -m..=m {
            let re = 2.0 * rng.random::<f64>() - 1.0;
            let im = 2.0 * rng.random::<f64>() - 1.0;
            let scale = match decay {
                SpectrumDecay::Flat => 1.0,
                SpectrumDecay::Exponential(rate) => {
                    (-rate * (k.unsigned_abs() + l.unsigned_abs()) as f64).exp()
                }
            };
            coeffs.push(Complex64::new(re, im) * scale);
        }
    }
    Signal2D::new(degree, period, coeffs)
}

/// Scattered sample locations in the square [-H, H]².
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSet2D {
    points: Vec<(f64, f64)>,
    interval_halfwidth: f64,
    weights: Option<Vec<f64>>,
}

impl SamplingSet2D {
    pub fn new(points: Vec<(f64, f64)>, interval_halfwidth: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("sampling set must be non-empty".into()));
        }
        if !(interval_halfwidth > 0.0) {
            return Err(Error::InvalidParameter("interval halfwidth must be positive".into()));
        }
        let h = interval_halfwidth;
        if points.iter().any(|&(u, v)| u < -h || u > h || v < -h || v > h) {
            return Err(Error::InvalidParameter(format!("points must lie in [-{h}, {h}]²")));
        }
        Ok(Self { points, interval_halfwidth, weights: None })
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} points",
                weights.len(),
                self.points.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn interval_halfwidth(&self) -> f64 {
        self.interval_halfwidth
    }

    pub fn period(&self) -> f64 {
        2.0 * self.interval_halfwidth
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// n points drawn uniformly from the square, deterministic per seed.
    pub fn random_uniform(n: usize, interval_halfwidth: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one point".into()));
        }
        if !(interval_halfwidth > 0.0) {
            return Err(Error::InvalidParameter("interval halfwidth must be positive".into()));
        }
        let h = interval_halfwidth;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..n)
            .map(|_| (rng.random_range(-h..h), rng.random_range(-h..h)))
            .collect();
        Self::new(points, interval_halfwidth)
    }

    /// Tensor grid of two 1-D jittered sets (seeds derived from `seed`), for
    /// controlled per-axis gaps.
    pub fn jittered_grid(
        per_axis: usize,
        gap_ratio: f64,
        interval_halfwidth: f64,
        seed: u64,
    ) -> Result<Self> {
        let xs = jittered_set(per_axis, gap_ratio, interval_halfwidth, seed)?;
        let ys = jittered_set(per_axis, gap_ratio, interval_halfwidth, seed.wrapping_add(1))?;
        let mut points = Vec::with_capacity(per_axis * per_axis);
        for &u in xs.points() {
            for &v in ys.points() {
                points.push((u, v));
            }
        }
        Self::new(points, interval_halfwidth)
    }
}

/// Evaluate a 2-D signal at the points of a 2-D sampling set.
pub fn sample_signal_2d(p: &Signal2D, set: &SamplingSet2D) -> SampleVector {
    SampleVector::new(p.eval_points(set.points()))
}
