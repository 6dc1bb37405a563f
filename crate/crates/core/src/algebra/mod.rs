//! The truncated noncommutative 3-torus `M_N(A_Θ)` in the Weyl basis.
//!
//! Elements are finitely supported sums `Σ_k a_k U_k` with complex N×N
//! coefficients. The Weyl elements obey `U_k U_q = e^{−(i/2) k·Θq} U_{k+q}`,
//! `U_k* = U_{−k}`, and the derivations act diagonally, `δ_μ U_k = i k_μ U_k`.

mod diophantine;
mod element;
mod mode;
mod theta;

pub use diophantine::{diophantine_diagnostic, DiophantineReport};
pub use element::{random_matrix, weyl_product, CMatrix, FourierElement, ZERO_THRESHOLD};
pub use mode::Mode;
pub use theta::{theta_pair, ThetaMatrix};

