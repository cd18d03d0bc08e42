//! Product Clenshaw-Curtis quadrature for
//!
//! ```text
//! I_z(f) = int_0^2 f(s) exp(zs) ds,   Re z <= mu0,
//! ```
//!
//! built on a weight generator whose cost does not grow with `|z|` and stays
//! accurate for every combination of degree and parameter.
//!
//! The modules, bottom-up:
//!
//! * [`cheb`]: shifted Chebyshev grid, DCT-I coefficients, interpolant evaluation.
//! * [`weights`]: the moments `omega_n(z)` and `rho_n(z)` (recurrence, window
//!   solve, far-coefficient solve).
//! * [`quadrature`]: the rule itself, batches and convergence tables.
//! * [`oracle`]: slow brute-force references used by the tests.
//! * [`laplace`]: inversion of a scalar fractional resolvent along a
//!   hyperbolic contour, driving the rule across a wide range of `z`.
//! * [`cli`]: the `expquad` command-line front end.

pub mod cheb;
pub mod cli;
pub mod error;
mod fft;
pub mod integrand;
pub mod laplace;
pub mod oracle;
pub mod quadrature;
pub mod weights;

pub use error::{Error, Result};
pub use integrand::Integrand;
pub use num_complex::Complex64;
pub use quadrature::{integrate, integrate_batch, ProductRule, RuleResult};
pub use weights::{compute_weights, ExpParam, Phase3Params, WeightTable};
