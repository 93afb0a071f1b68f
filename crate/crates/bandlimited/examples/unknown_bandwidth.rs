//! When the bandwidth is unknown, picking the polynomial degree M is the
//! whole game: too small truncates signal content, too large fits noise.
//! The multilevel sweep runs the weighted least-squares fit at degrees
//! M = 1, 2, ... and uses two discrepancy rules: an inner rule that leaves
//! a level once the residual is explained by noise plus the estimated
//! out-of-level tail, and an outer rule that stops the sweep when the
//! residual is explained by noise alone.
//!
//! Run with: cargo run --example unknown_bandwidth

use bandlimited::act::{act_reconstruct, ActOptions};
use bandlimited::multilevel::{multilevel_reconstruct, MultilevelOptions};
use bandlimited::signals::{
    add_noise, generate_bandlimited, jittered_set, relative_error, sample_poly, SpectrumDecay,
    TrigPoly,
};
use num_complex::Complex64;

fn main() -> bandlimited::error::Result<()> {
    // A signal whose content ends in a strong spectral line at |k| = 10,
    // held in a polynomial of nominal degree 14: the kind of instance where
    // an a-priori bandwidth estimate overshoots and the effective degree
    // has to be discovered from the data.
    let nominal = 14;
    let edge = 10usize;
    let halfwidth = (2 * nominal + 1) as f64 / 2.0;
    let delta = 0.05;

    let base =
        generate_bandlimited(nominal, 2.0 * halfwidth, 71, SpectrumDecay::Exponential(0.15))?;
    let mut coeffs = base.coeffs().to_vec();
    for k in edge..=nominal {
        coeffs[nominal - k] = Complex64::ZERO;
        coeffs[nominal + k] = Complex64::ZERO;
    }
    let bulk: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let amp = (bulk * 0.35 / (1.0 - 0.35) / 2.0).sqrt();
    coeffs[nominal - edge] = Complex64::new(amp, 0.0);
    coeffs[nominal + edge] = Complex64::new(0.0, amp);
    let truth = TrigPoly::new(nominal, 2.0 * halfwidth, coeffs)?;

    let set = jittered_set(80, 0.7, halfwidth, 72)?;
    let noisy = add_noise(&sample_poly(&truth, &set), delta, 73)?;
    let truth_grid = truth.eval_grid(512);

    println!("content ends at |k| = {edge} (hidden from the solver), delta = {delta}\n");

    let opts = MultilevelOptions { max_level: 20, ..MultilevelOptions::default() };
    let (rec, trace, _) = multilevel_reconstruct(&set, &noisy, delta, &opts)?;
    println!("level   iterations   residual      tail estimate   rule");
    for r in &trace.records {
        println!(
            "{:>5}   {:>10}   {:>9.3e}   {:>13.3e}   {}",
            r.level, r.iterations, r.data_residual, r.tail_estimate, r.rule
        );
    }
    let err = relative_error(&truth_grid, &rec.eval_grid(512))?;
    println!(
        "\nstopped at level {} (outer rule satisfied: {}), error {err:.4}",
        trace.chosen_level, trace.outer_satisfied
    );

    // What the sweep saved us from: force the fit at fixed degrees on the
    // same data. Too small truncates the line; too large fits extra noise.
    let act_opts = ActOptions { period: Some(truth.period()), ..ActOptions::default() };
    for forced in [4usize, edge, nominal, 20] {
        let (rec, _) = act_reconstruct(&set, &noisy, forced, &act_opts)?;
        let err = relative_error(&truth_grid, &rec.eval_grid(512))?;
        println!("forced degree {forced:>2}: error {err:.4}");
    }
    Ok(())
}
