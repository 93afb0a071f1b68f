//! Thin wrappers around rustfft with a per-thread plan cache.
//!
//! Conventions: `fft_forward` computes X_l = Σ_k x_k e^{-2πikl/n} and
//! `fft_inverse` computes x_k = Σ_l X_l e^{+2πikl/n} without the 1/n factor;
//! callers scale. Plans are cached per thread, so concurrent use never shares
//! mutable planner state.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub fn fft_forward(buf: &mut [Complex64]) {
    if buf.len() < 2 {
        return;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// Unnormalized inverse transform; divide by the length to invert `fft_forward`.
pub fn fft_inverse(buf: &mut [Complex64]) {
    if buf.len() < 2 {
        return;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}

/// In-place 2-D forward transform of a row-major `rows x cols` grid.
pub fn fft2_forward(grid: &mut [Complex64], rows: usize, cols: usize) {
    fft2(grid, rows, cols, false);
}

/// In-place 2-D unnormalized inverse transform of a row-major grid.
pub fn fft2_inverse(grid: &mut [Complex64], rows: usize, cols: usize) {
    fft2(grid, rows, cols, true);
}

fn fft2(grid: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    assert_eq!(grid.len(), rows * cols, "grid shape mismatch");
    let apply = |buf: &mut [Complex64]| {
        if inverse {
            fft_inverse(buf)
        } else {
            fft_forward(buf)
        }
    };
    for r in 0..rows {
        apply(&mut grid[r * cols..(r + 1) * cols]);
    }
    let mut col = vec![Complex64::ZERO; rows];
    for c in 0..cols {
        for r in 0..rows {
            col[r] = grid[r * cols + c];
        }
        apply(&mut col);
        for r in 0..rows {
            grid[r * cols + c] = col[r];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|l| {
                (0..n)
                    .map(|k| {
                        let ang = sign * 2.0 * std::f64::consts::PI * (k * l) as f64 / n as f64;
                        x[k] * Complex64::from_polar(1.0, ang)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn forward_matches_direct_summation() {
        let x: Vec<Complex64> = (0..8)
            .map(|k| Complex64::new(k as f64 * 0.3 - 1.0, (k * k % 5) as f64))
            .collect();
        let mut buf = x.clone();
        fft_forward(&mut buf);
        let want = naive_dft(&x, -1.0);
        for (a, b) in buf.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_undoes_forward_after_scaling() {
        let x: Vec<Complex64> = (0..16).map(|k| Complex64::new((k as f64).sin(), 0.25)).collect();
        let mut buf = x.clone();
        fft_forward(&mut buf);
        fft_inverse(&mut buf);
        for (a, b) in buf.iter().zip(&x) {
            assert!((a / 16.0 - b).norm() < 1e-12);
        }
    }

    #[test]
    fn fft2_matches_nested_1d() {
        let rows = 4;
        let cols = 8;
        let grid: Vec<Complex64> = (0..rows * cols)
            .map(|k| Complex64::new((k as f64 * 0.7).cos(), (k as f64 * 0.3).sin()))
            .collect();
        let mut fast = grid.clone();
        fft2_forward(&mut fast, rows, cols);

        let mut slow = grid;
        for r in 0..rows {
            let row = naive_dft(&slow[r * cols..(r + 1) * cols], -1.0);
            slow[r * cols..(r + 1) * cols].copy_from_slice(&row);
        }
        for c in 0..cols {
            let col: Vec<Complex64> = (0..rows).map(|r| slow[r * cols + c]).collect();
            let col = naive_dft(&col, -1.0);
            for r in 0..rows {
                slow[r * cols + c] = col[r];
            }
        }
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-11);
        }
    }
}
