//! Reconstruction of band-limited signals from nonuniformly spaced, noisy
//! samples.
//!
//! Two finite-dimensional models are implemented side by side:
//!
//! * the truncated sinc-frame route ([`frame`]): solve the Gram system
//!   R c = b, R_{j,l} = sinc(t_j − t_l), which is ill-posed at finite
//!   truncation and therefore regularized by truncated SVD or by conjugate
//!   gradients with a discrepancy stopping rule;
//! * the trigonometric-polynomial route ([`act`]): fit a degree-M polynomial
//!   by weighted least squares through a Hermitian Toeplitz system
//!   T_M a_M = y_M, which is well-posed whenever the samples satisfy the
//!   Nyquist gap condition, and is solved by CG with FFT matrix-vector
//!   products.
//!
//! On top of the polynomial route, [`multilevel`] sweeps the degree
//! M = 1, 2, ... with inner and outer discrepancy rules to reconstruct
//! signals of unknown bandwidth, and [`spectra`] provides the eigenvalue
//! diagnostics (prolate sections, circulant embeddings, Toeplitz symbols,
//! cluster metrics) that explain the conditioning contrast between the two
//! models.
//!
//! The `examples/` directory is the primary tour of the crate: one runnable
//! example per capability. A thin `bandlimited` binary exposes the same
//! operations as subcommands for scripted experiments.

pub mod act;
pub mod commands;
pub mod demos;
pub mod error;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod multilevel;
pub mod plot;
pub mod report;
pub mod signals;
pub mod spectra;

pub use error::{Error, Result};
