//! Randomized structural invariants: FFT kernels against dense arithmetic,
//! quadrature and Parseval identities, exact noise scaling, gap and weight
//! contracts, Nyquist spectral windows, threshold monotonicity, and bit-exact
//! file round-trips through the module's own parsers.

use bandlimited::act::{build_toeplitz, default_weights};
use bandlimited::frame::estimate_tau;
use bandlimited::io;
use bandlimited::linalg::{cg_solve, svd, tsvd_solve, ToeplitzSystem, ToeplitzSystem2D};
use bandlimited::multilevel::estimate_tail;
use bandlimited::report::LevelRecord;
use bandlimited::signals::{
    add_noise, generate_bandlimited, jittered_set, relative_error, sample_poly, SampleVector,
    Signal2D, SpectrumDecay, TrigPoly,
};
use bandlimited::spectra::{
    circulant_embed, circulant_eigenvalues, eigenvalues, symbol_partial_sum,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn complex_box() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

/// ‖a − b‖ against tol·(1 + ‖b‖), safe when the product happens to vanish.
fn l2_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    num <= tol * (1.0 + den)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(2.0 * rng.random::<f64>() - 1.0, 2.0 * rng.random::<f64>() - 1.0)
}

proptest! {
    /// The circulant-embedded FFT product agrees with the explicit matrix.
    #[test]
    fn toeplitz_matvec_matches_dense(pairs in vec((complex_box(), complex_box()), 1..40)) {
        let mut col: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
        col[0].im = 0.0;
        let x: Vec<Complex64> = pairs.iter().map(|p| p.1).collect();
        let sys = ToeplitzSystem { first_column: col, rhs: vec![] };
        let fast = sys.operator().apply(&x);
        let dense = sys.dense();
        let d = sys.dim();
        let slow: Vec<Complex64> =
            (0..d).map(|i| (0..d).map(|j| dense[(i, j)] * x[j]).sum()).collect();
        prop_assert!(l2_close(&fast, &slow, 1e-12));
    }

    /// Same for the block-Toeplitz product on coefficient grids.
    #[test]
    fn block_toeplitz_matvec_matches_dense(
        (d, raw, x) in (1..=5usize).prop_flat_map(|d| (
            Just(d),
            vec(complex_box(), (2 * d - 1) * (2 * d - 1)),
            vec(complex_box(), d * d),
        )),
    ) {
        let w = 2 * d - 1;
        let mut symbol = raw;
        // Impose the Hermitian symmetry z_{-s,-u} = conj(z_{s,u}).
        for i in 0..w * w {
            let mirror = (w * w - 1) - i;
            if i < mirror {
                symbol[mirror] = symbol[i].conj();
            }
        }
        let center = (w * w - 1) / 2;
        symbol[center].im = 0.0;
        let sys = ToeplitzSystem2D { symbol, dim: d, rhs: vec![] };
        let fast = sys.operator().apply(&x);
        let dense = sys.dense();
        let n = d * d;
        let slow: Vec<Complex64> =
            (0..n).map(|i| (0..n).map(|j| dense[(i, j)] * x[j]).sum()).collect();
        prop_assert!(l2_close(&fast, &slow, 1e-12));
    }

    /// Parseval on one period: the trapezoid rule is exact for trigonometric
    /// polynomials once the grid outruns the bandwidth.
    #[test]
    fn trig_poly_quadrature_matches_coefficient_norm(
        (degree, coeffs) in (0..=12usize)
            .prop_flat_map(|m| (Just(m), vec(complex_box(), 2 * m + 1))),
        period in 1.0..20.0f64,
        extra in 0..10usize,
    ) {
        let p = TrigPoly::new(degree, period, coeffs).unwrap();
        let n = 2 * degree + 1 + extra;
        let quad: f64 =
            p.eval_grid(n).iter().map(|v| v.norm_sqr()).sum::<f64>() * period / n as f64;
        prop_assert!((quad - p.norm_sq()).abs() <= 1e-10 * (1.0 + p.norm_sq()));
    }

    /// Gap weights are a positive partition of the sampling circumference.
    #[test]
    fn gap_weights_partition_the_period(
        gamma in 0.3..0.9f64,
        halfwidth in 1.0..8.0f64,
        extra in 0..30usize,
        seed in any::<u64>(),
    ) {
        let n = (2.0 * halfwidth / gamma).ceil() as usize + 1 + extra;
        let set = jittered_set(n, gamma, halfwidth, seed).unwrap();
        let weights = default_weights(&set).unwrap();
        prop_assert!(weights.iter().all(|&w| w > 0.0));
        let sum: f64 = weights.iter().sum();
        prop_assert!((sum - set.period()).abs() <= 1e-10 * set.period());
    }

    /// The jittered generator honors its advertised contract.
    #[test]
    fn jittered_sets_respect_count_gap_and_interval(
        gamma in 0.3..0.9f64,
        halfwidth in 1.0..8.0f64,
        extra in 0..30usize,
        seed in any::<u64>(),
    ) {
        let n = (2.0 * halfwidth / gamma).ceil() as usize + 1 + extra;
        let set = jittered_set(n, gamma, halfwidth, seed).unwrap();
        prop_assert_eq!(set.len(), n);
        prop_assert!(set.max_gap() <= gamma + 1e-12);
        let pts = set.points();
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(pts.iter().all(|&t| t.abs() <= halfwidth));
    }

    /// The perturbation is rescaled so the noise level is exact, recorded,
    /// and real data stays real.
    #[test]
    fn noise_scaling_is_exact(
        vals in vec(complex_box(), 1..60),
        delta in 1e-6..0.5f64,
        seed in any::<u64>(),
    ) {
        let b = SampleVector::new(vals);
        prop_assume!(b.norm() > 1e-6);
        let noisy = add_noise(&b, delta, seed).unwrap();
        let diff: f64 = noisy
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        prop_assert!((diff - delta * b.norm()).abs() <= 1e-12 * b.norm());
        prop_assert_eq!(noisy.noise_level, Some(delta));

        let real = SampleVector::new(b.values.iter().map(|v| Complex64::new(v.re, 0.0)).collect());
        prop_assume!(real.norm() > 1e-6);
        let noisy_real = add_noise(&real, delta, seed).unwrap();
        prop_assert!(noisy_real.is_real());
    }

    /// Truncation thresholds grow with the noise level and the frame bound.
    #[test]
    fn threshold_is_monotone_in_noise_and_bound(
        b_upper in 0.1..10.0f64,
        delta in 1e-12..1e-2f64,
        factor in 1.001..10.0f64,
        p in 1u32..4,
    ) {
        let base = estimate_tau(b_upper, delta, p).unwrap();
        prop_assert!(base > 0.0);
        prop_assert!(estimate_tau(b_upper, delta * factor, p).unwrap() > base);
        prop_assert!(estimate_tau(b_upper * factor, delta, p).unwrap() > base);
    }

    /// Eigenvalues of the Hermitian circulant embedding are the truncated
    /// symbol sampled on the frequency grid, and they are real.
    #[test]
    fn embedded_circulant_eigenvalues_sample_the_symbol(
        base in vec(complex_box(), 1..12),
    ) {
        let mut base = base;
        base[0].im = 0.0;
        let col = circulant_embed(&base);
        let n = col.len();
        for (j, lambda) in circulant_eigenvalues(&col).iter().enumerate() {
            let s = symbol_partial_sum(&base, -(j as f64) / n as f64);
            prop_assert!((lambda - s).norm() <= 1e-10 * (1.0 + s.norm()));
            prop_assert!(lambda.im.abs() <= 1e-10 * (1.0 + lambda.norm()));
        }
    }

    /// Closed form for the squared-ratio error metric under scaling.
    #[test]
    fn relative_error_closed_form_under_scaling(
        vals in vec(complex_box(), 1..40),
        alpha in -2.0..2.0f64,
    ) {
        let ref_sq: f64 = vals.iter().map(|v| v.norm_sqr()).sum();
        prop_assume!(ref_sq > 1e-9);
        prop_assert_eq!(relative_error(&vals, &vals).unwrap(), 0.0);
        let scaled: Vec<Complex64> = vals.iter().map(|v| v * alpha).collect();
        let err = relative_error(&vals, &scaled).unwrap();
        prop_assert!((err - (1.0 - alpha).powi(2)).abs() <= 1e-10 * (1.0 + err));
    }

    /// The tail surrogate is the square root of the residual excess over the
    /// outer threshold, clamped at zero.
    #[test]
    fn tail_estimate_is_the_clamped_sqrt_excess(
        rho in 0.0..10.0f64,
        threshold in 0.0..10.0f64,
    ) {
        let e = estimate_tail(rho, threshold);
        if rho <= threshold {
            prop_assert_eq!(e, 0.0);
        } else {
            prop_assert!((e * e - (rho - threshold)).abs() <= 1e-12 * (1.0 + rho));
        }
    }

    /// Serialized polynomials reparse to bitwise-identical values.
    #[test]
    fn trig_poly_json_roundtrips_bit_exact(
        (degree, coeffs) in (0..=10usize)
            .prop_flat_map(|m| (Just(m), vec(complex_box(), 2 * m + 1))),
        period in 1.0..50.0f64,
    ) {
        let p = TrigPoly::new(degree, period, coeffs).unwrap();
        let q = io::trig_poly_from_json(&io::trig_poly_to_json(&p).unwrap()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn signal_2d_json_roundtrips_bit_exact(
        (degree, coeffs) in (0..=3usize)
            .prop_flat_map(|m| (Just(m), vec(complex_box(), (2 * m + 1) * (2 * m + 1)))),
        period in 1.0..50.0f64,
    ) {
        let p = Signal2D::new(degree, period, coeffs).unwrap();
        let q = io::signal_2d_from_json(&io::signal_2d_to_json(&p).unwrap()).unwrap();
        prop_assert_eq!(p, q);
    }

    /// Sample CSV files round-trip points, values, and the noise level.
    #[test]
    fn samples_csv_roundtrips_bit_exact(
        gamma in 0.4..0.9f64,
        extra in 0..20usize,
        seed in any::<u64>(),
        delta in 0.01..0.3f64,
    ) {
        let halfwidth = 2.5;
        let n = (2.0 * halfwidth / gamma).ceil() as usize + 1 + extra;
        let set = jittered_set(n, gamma, halfwidth, seed).unwrap();
        let truth = generate_bandlimited(2, set.period(), seed ^ 1, SpectrumDecay::Flat).unwrap();
        let b = add_noise(&sample_poly(&truth, &set), delta, seed ^ 2).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("samples.csv");
        io::write_samples(&path, &set, &b).unwrap();
        let (set2, b2) = io::read_samples(&path).unwrap();
        prop_assert_eq!(set.points(), set2.points());
        prop_assert_eq!(set.interval_halfwidth().to_bits(), set2.interval_halfwidth().to_bits());
        prop_assert_eq!(&b.values, &b2.values);
        prop_assert_eq!(b2.noise_level, b.noise_level);
    }

    /// Grid CSV files round-trip the period and every complex value.
    #[test]
    fn grid_csv_roundtrips_bit_exact(
        vals in vec(complex_box(), 1..50),
        period in 1.0..20.0f64,
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.csv");
        io::write_grid(&path, period, &vals).unwrap();
        let (period2, vals2) = io::read_grid(&path).unwrap();
        prop_assert_eq!(period.to_bits(), period2.to_bits());
        prop_assert_eq!(&vals, &vals2);
    }

    /// Level traces round-trip every record field.
    #[test]
    fn level_trace_csv_roundtrips(
        rows in vec(
            (1..40usize, 0..200usize, 0.0..10.0f64, 0.0..5.0f64, 0..4usize),
            1..8,
        ),
    ) {
        let names = ["outer", "inner", "tolerance", "max-iter"];
        let records: Vec<LevelRecord> = rows
            .iter()
            .map(|&(level, iterations, data_residual, tail_estimate, r)| LevelRecord {
                level,
                iterations,
                data_residual,
                tail_estimate,
                rule: names[r].to_string(),
            })
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        io::write_level_trace(&path, &records).unwrap();
        let back = io::read_level_trace(&path).unwrap();
        prop_assert_eq!(back.len(), records.len());
        for (a, b) in records.iter().zip(&back) {
            prop_assert_eq!(a.level, b.level);
            prop_assert_eq!(a.iterations, b.iterations);
            prop_assert_eq!(a.data_residual.to_bits(), b.data_residual.to_bits());
            prop_assert_eq!(a.tail_estimate.to_bits(), b.tail_estimate.to_bits());
            prop_assert_eq!(&a.rule, &b.rule);
        }
    }
}

mod heavier {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Randomized restatement of the Nyquist window: all eigenvalues of
        /// the weighted system sit in [(1-g)^2, 6] for the realized gap g.
        #[test]
        fn toeplitz_spectra_stay_in_the_nyquist_window(
            m in 1..=6usize,
            gamma in 0.3..0.85f64,
            extra in 0..20usize,
            seed in any::<u64>(),
        ) {
            let period = (2 * m + 1) as f64;
            let n = (period / gamma).ceil() as usize + 1 + extra;
            let set = jittered_set(n, gamma, period / 2.0, seed).unwrap();
            let g = set.max_gap();
            let weights = default_weights(&set).unwrap();
            let t = build_toeplitz(&set, &weights, m, period).unwrap().dense();
            for e in eigenvalues(&t).unwrap() {
                prop_assert!(e >= (1.0 - g).powi(2) - 1e-8, "eigenvalue {e} below ({g})");
                prop_assert!(e <= 6.0 + 1e-8, "eigenvalue {e} above 6");
            }
        }

        /// CG against a dense LU factorization on random Hermitian
        /// positive-definite systems.
        #[test]
        fn cg_matches_dense_lu_on_hermitian_pd(
            n in 2..=10usize,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = DMatrix::<Complex64>::from_fn(n, n, |_, _| random_complex(&mut rng));
            let a = &g * g.adjoint() + DMatrix::<Complex64>::identity(n, n);
            let b: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
            let apply = |v: &[Complex64]| -> Vec<Complex64> {
                (0..n).map(|i| (0..n).map(|j| a[(i, j)] * v[j]).sum()).collect()
            };
            let (x, _) = cg_solve(apply, &b, None, 1e-14, 500, |_, _, _| false);
            let want = a.clone().lu().solve(&DVector::from_column_slice(&b)).unwrap();
            prop_assert!(l2_close(&x, want.as_slice(), 1e-9));
        }

        /// A threshold below the whole spectrum makes TSVD a plain inverse,
        /// and the kept count is monotone in the threshold.
        #[test]
        fn tsvd_inverts_well_conditioned_systems_and_truncates_monotonically(
            n in 2..=10usize,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = DMatrix::<Complex64>::from_fn(n, n, |_, _| random_complex(&mut rng));
            // Eigenvalues of G G* + I are at least 1, so tau = 0.5 keeps all.
            let a = &g * g.adjoint() + DMatrix::<Complex64>::identity(n, n);
            let y: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
            let x = tsvd_solve(&a, &y, 0.5).unwrap();
            let want = a.clone().lu().solve(&DVector::from_column_slice(&y)).unwrap();
            prop_assert!(l2_close(&x, want.as_slice(), 1e-9));

            let factors = svd(&a).unwrap();
            let top = factors.singular_values[0];
            let mut previous = n + 1;
            for step in 0..6 {
                let tau = top * (step as f64 + 0.5) / 5.0;
                let kept = factors.kept(tau);
                prop_assert!(kept <= previous);
                previous = kept;
            }
            // Above the top singular value everything is truncated away.
            let zero = factors.tsvd_apply(&y, top * 1.0001);
            prop_assert!(zero.iter().all(|z| z.norm() == 0.0));
        }
    }
}
