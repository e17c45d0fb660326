//! Complex special functions backing the modular and L-function layers:
//! Γ, ζ, ξ, incomplete gammas, ₁F₁ / ₂F₁, polylogarithms, rising factorials,
//! Bernoulli numbers and divisor sums.
//!
//! Everything here is pure and deterministic; coefficient tables are
//! compile-time constants, so unrestricted concurrent use is safe.

pub mod bernoulli;
pub mod divisor;
pub mod gamma;
pub mod hyper;
pub mod incgamma;
pub mod polylog;
pub mod zeta;

pub use bernoulli::{bernoulli, bernoulli_rational};
pub use divisor::divisor_sigma;
pub use gamma::{digamma, gamma, ln_gamma, rising_factorial};
pub use hyper::{hyp1f1_s_splus1, hyp2f1_ww2w, hyp2f1_ww2w_dx, Hyp1f1Regime};
pub use incgamma::{inc_gamma_generalized, inc_gamma_upper};
pub use polylog::{polylog, polylog_regularized_sum, polylog_with};
pub use zeta::{xi, zeta, zeta_times_smin1};
