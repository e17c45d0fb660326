//! Holomorphic and harmonic modular forms on SL₂(ℤ) via truncated
//! q-expansions, the group action, fundamental-domain reduction, and the
//! meromorphic weight-two form H_z with its harmonic companion H_z*.

pub mod forms;
pub mod matrix;
pub mod point;
pub mod qseries;

pub use forms::{slash, Forms, SingularSetDistance, J_AT_I};
pub use matrix::{reduce_to_fundamental_domain, UnimodularMatrix};
pub use point::HalfPlanePoint;
pub use qseries::{FourierSeries, TailBound};
