//! Numerical kernels for generalized L-functions attached to points of the
//! upper half-plane: special functions, holomorphic/harmonic modular forms,
//! real-analytic Eisenstein series, the automorphic resolvent kernel, and the
//! regularized Mellin transforms built from them.
//!
//! All evaluations are pure, deterministic and safe for concurrent use.

pub mod eisenstein;
pub mod error;
pub mod eval;
pub mod harness;
pub mod lfun;
pub mod modforms;
pub mod quad;
pub mod resolvent;
pub mod specfun;

pub use error::{MathError, Result};
pub use eval::{EvalResult, SeriesBudget};

pub use num_complex::Complex64;
