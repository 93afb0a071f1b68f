//! Hermitian Toeplitz and block-Toeplitz-with-Toeplitz-blocks systems with
//! FFT matrix-vector products via circulant embedding.
//!
//! A Hermitian Toeplitz matrix T of dimension d is stored by its first column
//! z_0..z_{d-1}; the full matrix is T_{k,l} = z_{k-l} with z_{-s} = conj(z_s).
//! The product Tx embeds T into a circulant of length L (the next power of two
//! ≥ 2d−1, so results never depend on the content of the padding) and uses two
//! FFTs. The 2-D variant stores the full symbol grid z_{s,u},
//! |s|,|u| ≤ d−1, and embeds along both axes.

use super::fft;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Hermitian Toeplitz system T a = y stored by first column plus (optional,
/// possibly empty) right-hand side.
#[derive(Debug, Clone)]
pub struct ToeplitzSystem {
    /// z_0..z_{d-1}; z_0 must be real for a Hermitian matrix.
    pub first_column: Vec<Complex64>,
    /// Right-hand side of length `dim`, or empty when only the matrix is needed.
    pub rhs: Vec<Complex64>,
}

impl ToeplitzSystem {
    pub fn dim(&self) -> usize {
        self.first_column.len()
    }

    /// Dense realization, for oracles and eigenvalue studies only.
    pub fn dense(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |k, l| {
            if k >= l {
                self.first_column[k - l]
            } else {
                self.first_column[l - k].conj()
            }
        })
    }

    pub fn operator(&self) -> ToeplitzOperator {
        ToeplitzOperator::new(&self.first_column)
    }
}

/// Precomputed circulant spectrum for repeated products with one matrix.
#[derive(Debug, Clone)]
pub struct ToeplitzOperator {
    dim: usize,
    fft_len: usize,
    spectrum: Vec<Complex64>,
}

impl ToeplitzOperator {
    pub fn new(first_column: &[Complex64]) -> Self {
        let d = first_column.len();
        let fft_len = (2 * d - 1).max(1).next_power_of_two();
        let mut c = vec![Complex64::ZERO; fft_len];
        c[0] = first_column[0];
        for s in 1..d {
            c[s] = first_column[s];
            c[fft_len - s] = first_column[s].conj();
        }
        fft::fft_forward(&mut c);
        Self { dim: d, fft_len, spectrum: c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "operand length mismatch");
        let mut buf = vec![Complex64::ZERO; self.fft_len];
        buf[..self.dim].copy_from_slice(x);
        fft::fft_forward(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        fft::fft_inverse(&mut buf);
        let scale = 1.0 / self.fft_len as f64;
        buf[..self.dim].iter().map(|v| v * scale).collect()
    }
}

/// FFT product of a Hermitian Toeplitz matrix with a vector.
pub fn toeplitz_matvec(t: &ToeplitzSystem, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != t.dim() {
        return Err(Error::DimensionMismatch(format!(
            "toeplitz dim {} vs vector length {}",
            t.dim(),
            x.len()
        )));
    }
    Ok(t.operator().apply(x))
}

/// Hermitian block-Toeplitz system with Toeplitz blocks, acting on d x d
/// coefficient grids. The defining symbol grid holds z_{s,u} for
/// s,u = -(d-1)..d-1 row-major with index [(s+d-1)·(2d-1) + (u+d-1)];
/// Hermitian symmetry means z_{-s,-u} = conj(z_{s,u}).
#[derive(Debug, Clone)]
pub struct ToeplitzSystem2D {
    pub symbol: Vec<Complex64>,
    /// Per-axis dimension d; the matrix acts on vectors of length d².
    pub dim: usize,
    /// Right-hand side grid of length d², or empty.
    pub rhs: Vec<Complex64>,
}

impl ToeplitzSystem2D {
    pub fn symbol_at(&self, s: isize, u: isize) -> Complex64 {
        let w = 2 * self.dim - 1;
        let off = self.dim as isize - 1;
        self.symbol[((s + off) as usize) * w + (u + off) as usize]
    }

    /// Dense (d²)x(d²) realization for oracles at small sizes.
    pub fn dense(&self) -> DMatrix<Complex64> {
        let d = self.dim;
        DMatrix::from_fn(d * d, d * d, |row, col| {
            let (k1, k2) = ((row / d) as isize, (row % d) as isize);
            let (l1, l2) = ((col / d) as isize, (col % d) as isize);
            self.symbol_at(k1 - l1, k2 - l2)
        })
    }

    pub fn operator(&self) -> ToeplitzOperator2D {
        ToeplitzOperator2D::new(self)
    }
}

#[derive(Debug, Clone)]
pub struct ToeplitzOperator2D {
    dim: usize,
    fft_len: usize,
    spectrum: Vec<Complex64>,
}

impl ToeplitzOperator2D {
    pub fn new(t: &ToeplitzSystem2D) -> Self {
        let d = t.dim;
        let fft_len = (2 * d - 1).max(1).next_power_of_two();
        let mut c = vec![Complex64::ZERO; fft_len * fft_len];
        // Wrap index p of the circulant back to a symbol offset, or None in
        // the zero padding band.
        let unwrap = |p: usize| -> Option<isize> {
            if p <= d - 1 {
                Some(p as isize)
            } else if p >= fft_len - (d - 1) {
                Some(p as isize - fft_len as isize)
            } else {
                None
            }
        };
        for p in 0..fft_len {
            let Some(s) = unwrap(p) else { continue };
            for q in 0..fft_len {
                let Some(u) = unwrap(q) else { continue };
                c[p * fft_len + q] = t.symbol_at(s, u);
            }
        }
        fft::fft2_forward(&mut c, fft_len, fft_len);
        Self { dim: d, fft_len, spectrum: c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Product with a row-major d x d grid given as a length-d² slice.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        assert_eq!(x.len(), d * d, "operand grid size mismatch");
        let l = self.fft_len;
        let mut buf = vec![Complex64::ZERO; l * l];
        for r in 0..d {
            buf[r * l..r * l + d].copy_from_slice(&x[r * d..(r + 1) * d]);
        }
        fft::fft2_forward(&mut buf, l, l);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        fft::fft2_inverse(&mut buf, l, l);
        let scale = 1.0 / (l * l) as f64;
        let mut out = vec![Complex64::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                out[r * d + c] = buf[r * l + c] * scale;
            }
        }
        out
    }
}

/// FFT product of a Hermitian block-Toeplitz matrix with a coefficient grid.
pub fn block_toeplitz_matvec_2d(t: &ToeplitzSystem2D, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != t.dim * t.dim {
        return Err(Error::DimensionMismatch(format!(
            "block toeplitz acts on grids of {} entries, got {}",
            t.dim * t.dim,
            x.len()
        )));
    }
    Ok(t.operator().apply(x))
}
