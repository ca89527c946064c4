//! Exact arithmetic used by every exact route: big rationals, dense
//! polynomials in the weight parameter `alpha`, and fraction-free
//! determinants.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{det_fraction_free, BareissRing, ExactMatrix};
pub use poly::{alpha_derivative_operator, AlphaPoly};
pub use scalar::{factorial, ln_rational, parse_rational, rational_to_f64, ExactScalar};
