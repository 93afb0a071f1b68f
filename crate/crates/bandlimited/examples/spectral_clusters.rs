//! Why is one formulation ill-posed and the other not? Look at the
//! spectra. The sinc-frame section is a prolate matrix: its eigenvalues
//! cluster at 0 and 1 with only O(log n) strays in between, and the
//! 0-cluster is what breaks naive inversion. The trigonometric
//! least-squares route yields a Toeplitz matrix whose eigenvalues follow
//! the values of its symbol; for periodic gappy sampling the symbol is a
//! box, so the spectrum splits into the same two clusters but the fit only
//! ever sees the part the samples support.
//!
//! Run with: cargo run --example spectral_clusters

use bandlimited::spectra::{
    cluster_fractions, eigenvalues, eigenvalues_real, gap_toeplitz, prolate_matrix,
    symbol_partial_sum,
};

fn main() -> bandlimited::error::Result<()> {
    let n = 64;
    let m = 2;

    let prolate = prolate_matrix(n, m)?;
    let eigs = eigenvalues_real(&prolate)?;
    let concentration: Vec<f64> = eigs.iter().map(|l| l / m as f64).collect();
    let frac = cluster_fractions(&concentration, &[0.0, 1.0], 0.1)?;
    let transition =
        concentration.iter().filter(|l| (0.1..=0.9).contains(*l)).count();
    println!("prolate section, n = {n}, oversampling m = {m}:");
    println!("  smallest eigenvalue   {:.3e}", concentration.first().unwrap());
    println!("  cluster at 0          {:.1}% of eigenvalues", 100.0 * frac[0]);
    println!("  cluster at 1          {:.1}% of eigenvalues", 100.0 * frac[1]);
    println!("  transition band       {transition} eigenvalues in (0.1, 0.9)");
    ascii_histogram(&concentration);

    let gap = gap_toeplitz(n, m, 2)?;
    let gap_eigs = eigenvalues(&gap.dense())?;
    let frac = cluster_fractions(&gap_eigs, &[0.0, 1.0], 0.1)?;
    println!("\ngap-set Toeplitz, M = {n}, oversampling {m}, every 2nd block missing:");
    println!("  cluster at 0          {:.1}% of eigenvalues", 100.0 * frac[0]);
    println!("  cluster at 1          {:.1}% of eigenvalues", 100.0 * frac[1]);
    ascii_histogram(&gap_eigs);

    // The clusters are exactly the two values of the symbol: the sampled
    // half of the period contributes 1, the gap contributes 0.
    println!("\nToeplitz symbol across half a period:");
    for i in 0..=10 {
        let x = -0.5 + i as f64 / 20.0;
        let s = symbol_partial_sum(&gap.first_column, x).re;
        println!("  f({x:>5.2}) = {s:>6.3}");
    }
    Ok(())
}

fn ascii_histogram(values: &[f64]) {
    let bins = 20;
    let mut counts = vec![0usize; bins];
    for v in values {
        let idx = ((v.clamp(0.0, 1.0)) * bins as f64) as usize;
        counts[idx.min(bins - 1)] += 1;
    }
    let max = counts.iter().copied().max().unwrap_or(1).max(1);
    for (i, c) in counts.iter().enumerate() {
        let lo = i as f64 / bins as f64;
        let bar = "#".repeat(c * 40 / max);
        println!("  [{lo:.2}, {:.2})  {bar}{}", lo + 1.0 / bins as f64, if *c > 0 { format!(" {c}") } else { String::new() });
    }
}
