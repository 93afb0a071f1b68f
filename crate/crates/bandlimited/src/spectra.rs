//! Spectral diagnostics: why gappy sampling sets produce ill-conditioned
//! systems, made quantitative.
//!
//! Two matrices tell the story. The Gram matrix of integer-shifted sinc
//! kernels on an oversampled regular grid is the prolate matrix, whose
//! eigenvalues split into a cluster near 1, a cluster near 0, and a thin
//! transition band of width O(log n); the near-zero cluster is what makes
//! plain frame inversion hopeless. On the polynomial side, the normal-matrix
//! spectrum of a sampling set with one dense block and one large gap
//! approaches the distribution of its symbol
//!
//! ```text
//! f(x) = Σ_k z_k e^{2πikx},
//! ```
//!
//! which tends to an indicator function of the block: eigenvalues cluster at
//! {0, 1}, so no circulant preconditioner can rescue the conditioning: the
//! zero cluster persists under preconditioning. The tools here compute those
//! spectra (dense Hermitian eigensolves), embed Toeplitz matrices into
//! circulants whose eigenvalues are a plain FFT of the first column, evaluate
//! truncated symbols, and measure cluster fractions and the equal-distribution
//! gap between two spectra with a fixed dictionary of bump test functions.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::act::build_toeplitz;
use crate::error::{Error, Result};
use crate::linalg::fft::fft_forward;
use crate::linalg::ToeplitzSystem;
use crate::signals::{gap_set, sinc};

/// The (2n+1)×(2n+1) prolate matrix: entries sinc((j−l)/m), the Gram matrix
/// of sinc translates sampled on the regular grid with m points per unit
/// spacing. `m = 1` gives the identity (sinc vanishes at nonzero integers).
pub fn prolate_matrix(n: usize, m: usize) -> Result<DMatrix<f64>> {
    if m == 0 {
        return Err(Error::InvalidParameter("oversampling m must be at least 1".into()));
    }
    let dim = 2 * n + 1;
    let mf = m as f64;
    Ok(DMatrix::from_fn(dim, dim, |j, l| {
        sinc((j as f64 - l as f64) / mf)
    }))
}

fn hermitian_defect(a: &DMatrix<Complex64>) -> f64 {
    let mut defect: f64 = 0.0;
    for j in 0..a.nrows() {
        for l in j..a.ncols() {
            defect = defect.max((a[(j, l)] - a[(l, j)].conj()).norm());
        }
    }
    defect
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is checked: a
/// matrix whose Hermitian defect exceeds 1e-10 (relative to its largest
/// entry) is rejected rather than silently symmetrized.
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let defect = hermitian_defect(a);
    if defect > 1e-10 * scale {
        return Err(Error::NotHermitian(format!(
            "Hermitian defect {defect:.3e} exceeds tolerance"
        )));
    }
    let mut eigs: Vec<f64> = a.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

/// Real-symmetric convenience wrapper around [`eigenvalues`].
pub fn eigenvalues_real(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    let complex = a.map(|x| Complex64::new(x, 0.0));
    eigenvalues(&complex)
}

/// Embed the Hermitian Toeplitz first column (a_0, …, a_n) into the circulant
/// first column (a_0, a_1, …, a_n, conj(a_n), …, conj(a_1)) of length 2n+1.
/// The resulting circulant is Hermitian, and its eigenvalues are exactly the
/// truncated symbol evaluated on the (2n+1)-point frequency grid.
pub fn circulant_embed(first_column: &[Complex64]) -> Vec<Complex64> {
    let n = first_column.len().saturating_sub(1);
    let mut col = Vec::with_capacity(2 * n + 1);
    col.extend_from_slice(first_column);
    for k in (1..=n).rev() {
        col.push(first_column[k].conj());
    }
    col
}

/// Eigenvalues of the circulant with the given first column: the DFT
/// λ_j = Σ_s c_s e^{−2πijs/N}. For a Hermitian circulant (such as the output
/// of [`circulant_embed`]) the imaginary parts are rounding dust.
pub fn circulant_eigenvalues(first_column: &[Complex64]) -> Vec<Complex64> {
    let mut buf = first_column.to_vec();
    fft_forward(&mut buf);
    buf
}

/// Truncated symbol f_n(x) = Σ_{k=−n}^{n} a_k e^{2πikx} of the Hermitian
/// Toeplitz matrix with first column (a_0, …, a_n), using a_{−k} = conj(a_k).
pub fn symbol_partial_sum(first_column: &[Complex64], x: f64) -> Complex64 {
    let Some((a0, rest)) = first_column.split_first() else {
        return Complex64::ZERO;
    };
    let mut sum = *a0;
    for (k, a) in rest.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k + 1) as f64 * x);
        // a_k e^{2πikx} + conj(a_k) e^{−2πikx} is real.
        sum += Complex64::new(2.0 * (a * phase).re, 0.0);
    }
    sum
}

/// Fraction of eigenvalues within `radius` of each center (closed balls).
pub fn cluster_fractions(eigs: &[f64], centers: &[f64], radius: f64) -> Result<Vec<f64>> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter("cluster radius must be positive".into()));
    }
    if eigs.is_empty() {
        return Err(Error::InvalidParameter("empty eigenvalue list".into()));
    }
    let n = eigs.len() as f64;
    Ok(centers
        .iter()
        .map(|&c| eigs.iter().filter(|&&x| (x - c).abs() <= radius).count() as f64 / n)
        .collect())
}

/// Equal-distribution gap between two spectra of the same size: the largest
/// |(1/n) Σ_k [F(λ_k) − F(ν_k)]| over the supplied test functions. Two
/// sequences are equally distributed when this tends to zero as n grows, for
/// every continuous compactly supported F.
pub fn equally_distributed_gap<F>(lambdas: &[f64], nus: &[f64], test_functions: &[F]) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if lambdas.len() != nus.len() {
        return Err(Error::DimensionMismatch(format!(
            "spectra of lengths {} and {}",
            lambdas.len(),
            nus.len()
        )));
    }
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("empty spectra".into()));
    }
    let n = lambdas.len() as f64;
    let mut gap: f64 = 0.0;
    for f in test_functions {
        let diff: f64 =
            lambdas.iter().map(|&x| f(x)).sum::<f64>() - nus.iter().map(|&x| f(x)).sum::<f64>();
        gap = gap.max((diff / n).abs());
    }
    Ok(gap)
}

/// Fixed dictionary of eight piecewise-linear bumps x ↦ max(0, 1/4 − |x − c|)
/// with centers −3/8, −1/8, …, 11/8: Lipschitz-1, compactly supported, and
/// together covering [−1/2, 3/2], where the spectra studied here live.
pub fn default_test_functions() -> Vec<Box<dyn Fn(f64) -> f64>> {
    (0..8)
        .map(|i| {
            let center = -0.375 + 0.25 * i as f64;
            Box::new(move |x: f64| (0.25 - (x - center).abs()).max(0.0))
                as Box<dyn Fn(f64) -> f64>
        })
        .collect()
}

/// Normal matrix of the block-and-gap study set [`gap_set`]`(n_half, m, L)`
/// at degree M = n_half and period 2M+1, with every weight equal to the
/// sample spacing 1/(Lm).
///
/// The spacing weights normalize the symbol so the dense block contributes
/// height 1: the spectrum then clusters at {0, 1}, with the zero cluster's
/// share growing like 1 − 1/L. Unit weights would produce the same picture
/// scaled by Lm (clusters at {0, Lm}).
pub fn gap_toeplitz(n_half: usize, oversampling: usize, gap_factor: usize) -> Result<ToeplitzSystem> {
    let set = gap_set(n_half, oversampling, gap_factor)?;
    let w = 1.0 / (oversampling as f64 * gap_factor as f64);
    let weights = vec![w; set.len()];
    let period = (2 * n_half + 1) as f64;
    build_toeplitz(&set, &weights, n_half, period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::build_gram;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn prolate_without_oversampling_is_identity() {
        let p = prolate_matrix(3, 1).unwrap();
        assert_eq!(p, DMatrix::identity(7, 7));
    }

    #[test]
    fn prolate_small_case_matches_hand_values() {
        let p = prolate_matrix(1, 2).unwrap();
        let two_over_pi = 2.0 / PI;
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[1.0, two_over_pi, 0.0, two_over_pi, 1.0, two_over_pi, 0.0, two_over_pi, 1.0],
        );
        assert!((p - expected).abs().max() < 1e-15);
    }

    #[test]
    fn prolate_is_the_gram_matrix_of_the_half_integer_set() {
        // Points j/2 for |j| ≤ 6 form the m=2 regular set; its sinc Gram
        // matrix must be the prolate matrix entry for entry.
        let set = gap_set(3, 2, 1).unwrap();
        let gram = build_gram(&set).matrix;
        let p = prolate_matrix(6, 2).unwrap();
        assert_eq!(gram.nrows(), p.nrows());
        assert!((gram - p).abs().max() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_simple_matrices() {
        let id = DMatrix::<Complex64>::identity(4, 4);
        let eigs = eigenvalues(&id).unwrap();
        for e in eigs {
            assert!((e - 1.0).abs() < 1e-12);
        }

        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        let eigs = eigenvalues(&diag).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-12 && (eigs[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut a = DMatrix::<Complex64>::zeros(2, 2);
        a[(0, 1)] = Complex64::new(1.0, 0.0);
        match eigenvalues(&a) {
            Err(Error::NotHermitian(_)) => {}
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    /// Closed-form roots of the characteristic cubic of a 3×3 Hermitian
    /// matrix, via the trigonometric method. Shares nothing with the
    /// eigensolver.
    fn cubic_root_oracle(a: &DMatrix<Complex64>) -> Vec<f64> {
        let tr: Complex64 = a[(0, 0)] + a[(1, 1)] + a[(2, 2)];
        let minor = |i: usize, j: usize| -> Complex64 {
            a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(j, i)]
        };
        let c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
        let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
            - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
            + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
        // λ³ − tr λ² + c1 λ − det = 0 with all-real roots.
        let (b, c, d) = (-tr.re, c1.re, -det.re);
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        let mut roots = if p.abs() < 1e-14 {
            let r = (-q).cbrt();
            vec![r, r, r]
        } else {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            (0..3).map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos()).collect()
        };
        roots.iter_mut().for_each(|r| *r -= b / 3.0);
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        roots
    }

    #[test]
    fn three_by_three_spectra_match_the_characteristic_cubic() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let mut a = DMatrix::<Complex64>::zeros(3, 3);
            for i in 0..3 {
                a[(i, i)] = Complex64::new(rng.random::<f64>() * 2.0 - 1.0, 0.0);
                for j in (i + 1)..3 {
                    let z = Complex64::new(
                        rng.random::<f64>() * 2.0 - 1.0,
                        rng.random::<f64>() * 2.0 - 1.0,
                    );
                    a[(i, j)] = z;
                    a[(j, i)] = z.conj();
                }
            }
            let eigs = eigenvalues(&a).unwrap();
            let oracle = cubic_root_oracle(&a);
            for (e, o) in eigs.iter().zip(&oracle) {
                assert!((e - o).abs() < 1e-8, "eig {e} vs cubic root {o}");
            }
        }
    }

    #[test]
    fn circulant_embedding_small_cases() {
        let col = circulant_embed(&[Complex64::new(1.0, 0.0), Complex64::ZERO]);
        assert_eq!(col, vec![Complex64::new(1.0, 0.0), Complex64::ZERO, Complex64::ZERO]);

        let a1 = Complex64::new(0.5, -0.25);
        let col = circulant_embed(&[Complex64::new(2.0, 0.0), a1]);
        assert_eq!(col, vec![Complex64::new(2.0, 0.0), a1, a1.conj()]);
    }

    #[test]
    fn circulant_eigenvalues_match_dense_eigensolve() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let first: Vec<Complex64> = (0..9)
            .map(|k| {
                if k == 0 {
                    Complex64::new(rng.random::<f64>(), 0.0)
                } else {
                    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                }
            })
            .collect();
        let col = circulant_embed(&first);
        let n = col.len();

        let fast = circulant_eigenvalues(&col);
        let mut fast_re: Vec<f64> = fast
            .iter()
            .map(|z| {
                assert!(z.im.abs() < 1e-10);
                z.re
            })
            .collect();
        fast_re.sort_by(|x, y| x.partial_cmp(y).unwrap());

        // Dense oracle: materialize C_{jl} = c_{(j−l) mod n} and eigensolve.
        let dense = DMatrix::from_fn(n, n, |j, l| col[(n + j - l) % n]);
        let slow = eigenvalues(&dense).unwrap();
        for (f, s) in fast_re.iter().zip(&slow) {
            assert!((f - s).abs() < 1e-10, "fft {f} vs dense {s}");
        }
    }

    #[test]
    fn circulant_eigenvalues_are_the_symbol_on_the_grid() {
        let first = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.3, 0.2),
            Complex64::new(-0.1, 0.05),
        ];
        let col = circulant_embed(&first);
        let n = col.len() as f64;
        let eigs = circulant_eigenvalues(&col);
        for (j, e) in eigs.iter().enumerate() {
            let x = -(j as f64) / n;
            let s = symbol_partial_sum(&first, x);
            assert!((e - s).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_partial_sum_edge_cases() {
        assert_eq!(symbol_partial_sum(&[], 0.3), Complex64::ZERO);
        let zeros = vec![Complex64::ZERO; 5];
        assert_eq!(symbol_partial_sum(&zeros, 0.7), Complex64::ZERO);
        let constant = vec![Complex64::new(1.0, 0.0)];
        for &x in &[0.0, 0.25, -0.4] {
            assert_eq!(symbol_partial_sum(&constant, x), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn gap_set_symbol_approximates_the_block_indicator() {
        // One dense block covering a 1/L fraction of the period: the symbol
        // is near 1 inside the block and near 0 deep in the gap.
        let system = gap_toeplitz(128, 2, 2).unwrap();
        let at_zero = symbol_partial_sum(&system.first_column, 0.0);
        assert!((at_zero.re - 1.0).abs() < 0.1, "symbol at 0: {at_zero}");
        let in_gap = symbol_partial_sum(&system.first_column, 0.45);
        assert!(in_gap.re.abs() < 0.1, "symbol at 0.45: {in_gap}");
    }

    #[test]
    fn cluster_fraction_examples() {
        let ones = vec![1.0; 10];
        let f = cluster_fractions(&ones, &[1.0], 0.1).unwrap();
        assert_eq!(f, vec![1.0]);
        let f = cluster_fractions(&ones, &[5.0], 0.1).unwrap();
        assert_eq!(f, vec![0.0]);
        assert!(cluster_fractions(&ones, &[0.0], 0.0).is_err());
        assert!(cluster_fractions(&[], &[0.0], 0.1).is_err());
    }

    #[test]
    fn prolate_spectrum_clusters_at_zero_and_one() {
        // The m-oversampled sinc Gram has tight frame bound m, so its
        // spectrum lives in [0, m]; dividing by m gives the classical
        // concentration spectrum, which piles up at {0, 1} with a thin
        // transition band.
        let eigs = eigenvalues_real(&prolate_matrix(64, 2).unwrap()).unwrap();
        let concentration: Vec<f64> = eigs.iter().map(|e| e / 2.0).collect();
        let f = cluster_fractions(&concentration, &[0.0, 1.0], 0.1).unwrap();
        assert!(f[0] + f[1] >= 0.85, "cluster fractions {f:?}");
        // Ill-posedness: the smallest eigenvalue is numerically zero while
        // the largest stays O(1).
        assert!(eigs[0] < 1e-8);
        assert!(*eigs.last().unwrap() > 1.0);
    }

    #[test]
    fn equal_distribution_gap_basics() {
        let fs = default_test_functions();
        assert_eq!(fs.len(), 8);
        let a = vec![0.1, 0.5, 0.9];
        assert_eq!(equally_distributed_gap(&a, &a, &fs).unwrap(), 0.0);
        let permuted = vec![0.9, 0.1, 0.5];
        assert_eq!(equally_distributed_gap(&a, &permuted, &fs).unwrap(), 0.0);
        assert!(equally_distributed_gap(&a, &[0.1], &fs).is_err());
    }

    #[test]
    fn prolate_and_embedded_circulant_spectra_draw_together() {
        let fs = default_test_functions();
        let gap_at = |n: usize| -> f64 {
            // Both spectra scaled into [0, 1] by the frame bound so the bump
            // dictionary on [-1/2, 3/2] sees both clusters.
            let eigs: Vec<f64> = eigenvalues_real(&prolate_matrix(n, 2).unwrap())
                .unwrap()
                .iter()
                .map(|e| e / 2.0)
                .collect();
            // Circulant of matching size 2n+1 from the sinc first column
            // truncated at lag n; its eigenvalues sample the truncated symbol.
            let first: Vec<Complex64> =
                (0..=n).map(|s| Complex64::new(sinc(s as f64 / 2.0), 0.0)).collect();
            let mut nus: Vec<f64> = circulant_eigenvalues(&circulant_embed(&first))
                .iter()
                .map(|z| z.re / 2.0)
                .collect();
            nus.sort_by(|x, y| x.partial_cmp(y).unwrap());
            equally_distributed_gap(&eigs, &nus, &fs).unwrap()
        };
        let coarse = gap_at(64);
        let fine = gap_at(128);
        assert!(fine <= 0.05, "gap at n=128: {fine}");
        assert!(fine < coarse, "gap should shrink: {coarse} -> {fine}");
    }

    #[test]
    fn gap_set_cluster_fractions_grow_with_degree() {
        let mut previous = 0.0;
        for &m in &[16usize, 32, 64] {
            let system = gap_toeplitz(m, 2, 2).unwrap();
            let eigs = eigenvalues(&system.dense()).unwrap();
            let f = cluster_fractions(&eigs, &[0.0, 1.0], 0.1).unwrap();
            let combined = f[0] + f[1];
            assert!(
                combined > previous,
                "cluster fraction should grow with degree: {previous} -> {combined} at M={m}"
            );
            previous = combined;
        }
        assert!(previous > 0.8, "final cluster fraction {previous}");
    }
}
