//! Points of the upper half-plane.

use crate::error::{MathError, Result};
use num_complex::Complex64;

/// A point τ = u + iv with v > 0 strictly. Also used for the second
/// half-plane variable z = x + iy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    u: f64,
    v: f64,
}

impl HalfPlanePoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(v > 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(MathError::domain(format!(
                "half-plane point needs finite u and v > 0, got u={u}, v={v}"
            )));
        }
        Ok(HalfPlanePoint { u, v })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HalfPlanePoint::new(z.re, z.im)
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }
}

impl std::fmt::Display for HalfPlanePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}+{}i", self.u, self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HalfPlanePoint::new(0.0, 0.0).is_err());
        assert!(HalfPlanePoint::new(1.0, -0.5).is_err());
        assert!(HalfPlanePoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn roundtrip() {
        let p = HalfPlanePoint::new(0.25, 1.5).unwrap();
        assert_eq!(p.to_complex(), Complex64::new(0.25, 1.5));
    }
}
