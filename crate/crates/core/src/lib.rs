//! Numerical toolkit for Lorentz Gamma spaces `Γ_{p,φ}` with norm
//! `ρ_{p,φ}(f) = (∫_0^b f**(t)^p φ(t) dt)^{1/p}`.
//!
//! Weights are piecewise powers, so every bracket `Φ_p(t)` and moment is
//! exact; functions are nonnegative step functions, so rearrangements and
//! averages are exact too. Quadrature enters only where the dual weight `ψ`
//! or a non-polynomial kernel appears.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptote;
pub mod cli;
pub mod duality;
pub mod error;
pub mod functions;
pub mod grid;
pub mod indices;
pub mod inequalities;
pub mod norms;
pub mod operators;
pub mod quadrature;
pub mod sampling;
pub mod serde_ext;
pub mod weights;

pub use duality::{
    appendix_balance, associate_norm_oracle, dual_norm, dual_weight, lemma41_check, omega_duality_ratio, phps_ratio,
    DualWeight, OracleConfig, OracleResult,
};
pub use error::{GammaError, Result};
pub use functions::{DecreasingStep, LevelFunction, StepFunction};
pub use grid::LogGrid;
pub use indices::{boyd_indices, cz_admissible, dilation_norm, IndexReport};
pub use inequalities::{
    embedding_empirical_check, embedding_norm, hardy_p_constant, hardy_q_constant, stieltjes_constant,
};
pub use norms::{gamma_norm, weighted_lp_norm};
pub use operators::{hardy_p, hardy_q, p_phi, p_q_p_phi, q_sub_p, stieltjes};
pub use weights::{conjugate, phi_bracket, validate_nontrivial, GammaSpace, PiecewisePower, PiecewisePowerWeight};
