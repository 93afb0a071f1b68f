//! Everything carries over to two dimensions with block-Toeplitz structure
//! in place of Toeplitz: scattered noisy observations of a smooth periodic
//! field are fitted by a bivariate trigonometric polynomial, with the
//! multilevel sweep choosing the degree. This is the gridding problem:
//! turning irregular field measurements into values on a regular grid.
//!
//! Run with: cargo run --example two_dimensional

use bandlimited::act::{act_reconstruct_2d, ActOptions};
use bandlimited::multilevel::{multilevel_reconstruct_2d, MultilevelOptions};
use bandlimited::signals::{
    add_noise, generate_bandlimited_2d, relative_error, sample_signal_2d, SamplingSet2D,
    SpectrumDecay,
};

fn main() -> bandlimited::error::Result<()> {
    // Exact recovery, as in one dimension: (2M+1)^2 unknowns need at least
    // that many scattered points in general position.
    let degree = 3;
    let period = (2 * degree + 1) as f64;
    let truth = generate_bandlimited_2d(degree, period, 31, SpectrumDecay::Flat)?;
    let set = SamplingSet2D::random_uniform(2 * (2 * degree + 1) * (2 * degree + 1), period / 2.0, 32)?;
    let clean = sample_signal_2d(&truth, &set);
    let opts = ActOptions::default();
    let (rec, _) = act_reconstruct_2d(&set, &clean, degree, &opts)?;
    let err = relative_error(&truth.eval_grid(64), &rec.eval_grid(64))?;
    println!("noise-free 2-D recovery at degree {degree}: squared relative error {err:.3e}");
    assert!(err < 1e-14);

    // Gridding with noise and unknown degree.
    let degree = 4;
    let period = (2 * degree + 1) as f64;
    let delta = 0.05;
    let truth = generate_bandlimited_2d(degree, period, 41, SpectrumDecay::Exponential(0.7))?;
    let set = SamplingSet2D::random_uniform(600, period / 2.0, 42)?;
    let noisy = add_noise(&sample_signal_2d(&truth, &set), delta, 43)?;

    let ml = MultilevelOptions { max_level: 8, ..MultilevelOptions::default() };
    let (rec, trace, _) = multilevel_reconstruct_2d(&set, &noisy, delta, &ml)?;
    let err = relative_error(&truth.eval_grid(64), &rec.eval_grid(64))?;
    println!("\n600 noisy scattered observations, delta = {delta}:");
    for r in &trace.records {
        println!(
            "  level {}: {} iterations, residual {:.3e}, rule {}",
            r.level, r.iterations, r.data_residual, r.rule
        );
    }
    println!(
        "  stopped at level {} (outer satisfied: {}), squared relative error {err:.4}",
        trace.chosen_level, trace.outer_satisfied
    );
    Ok(())
}
