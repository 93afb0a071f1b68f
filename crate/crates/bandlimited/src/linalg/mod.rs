//! Numerical kernels: FFT helpers, Hermitian conjugate gradients with
//! pluggable stopping rules, dense SVD/TSVD, and FFT-based Toeplitz and
//! block-Toeplitz matrix-vector products via circulant embedding.

pub mod cg;
pub mod fft;
pub mod svd;
pub mod toeplitz;

pub use cg::{cg_solve, CgTrace, Termination};
pub use svd::{svd, tsvd_solve, SvdFactors};
pub use toeplitz::{
    block_toeplitz_matvec_2d, toeplitz_matvec, ToeplitzOperator, ToeplitzOperator2D,
    ToeplitzSystem, ToeplitzSystem2D,
};
