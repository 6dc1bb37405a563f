//! Chern-Simons theory on the smooth noncommutative 3-torus at finite
//! Fourier truncation.
//!
//! * [`algebra`]: Weyl-basis arithmetic of `M_N(A_Θ)`.
//! * [`spin`]: gamma matrices, gauge fields and gauge transformations.
//! * [`action`]: the Chern-Simons action, the local index cochains and the
//!   gauge-invariance check.
//! * [`loops`]: propagators, vertices, Wick pairings and loop sums.
//! * [`io`]: JSON formats and experiment configuration.

pub mod action;
pub mod algebra;
pub mod cli;
pub mod error;
pub mod io;
pub mod loops;
pub mod selftest;
pub mod spin;

pub use algebra::{CMatrix, FourierElement, Mode, ThetaMatrix};
pub use error::{ActionError, AlgebraError, FieldError, IoError, LoopError};
