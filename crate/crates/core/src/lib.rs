//! Emptiness formation probability of the free-fermion six-vertex model with
//! domain wall boundary conditions, equivalently the probability that a
//! domino tiling of the Aztec diamond is frozen on an `s x s` corner.
//!
//! Finite sizes are handled exactly: [`efp_exact`] evaluates `f_{r,s}` as a
//! Hankel determinant over the rationals or as a polynomial in `alpha`, and
//! [`toda`] checks the two Toda-chain identities it satisfies. The large-size
//! behaviour `f_{r,s} ~ exp(-r^2 sigma(s/r))` lives in [`asymptotics`], with
//! the underlying discrete matrix-model saddle point in [`matrix_model`].

pub mod asymptotics;
pub mod closed_forms;
pub mod efp_exact;
pub mod error;
pub mod exact_algebra;
pub mod matrix_model;
pub mod toda;

pub use asymptotics::{sigma_profile, v_critical, Regime, SigmaProfile};
pub use efp_exact::{efp_hankel, efp_oracle, efp_polynomial, EfpResult, Method, ModelParams};
pub use error::{EfpError, Result};
pub use exact_algebra::{parse_rational, AlphaPoly, ExactScalar};
pub use matrix_model::{endpoints, SaddleSolution, Scenario};
