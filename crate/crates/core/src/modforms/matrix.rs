//! Integer matrices of determinant one, the Möbius action, and reduction to
//! the standard fundamental domain.

use super::point::HalfPlanePoint;
use crate::error::{MathError, Result};
use num_complex::Complex64;

/// γ = (a b; c d) ∈ SL₂(ℤ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: UnimodularMatrix = UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 };
    /// S = (0 −1; 1 0), the inversion τ ↦ −1/τ.
    pub const S: UnimodularMatrix = UnimodularMatrix { a: 0, b: -1, c: 1, d: 0 };
    /// T = (1 1; 0 1), the translation τ ↦ τ + 1.
    pub const T: UnimodularMatrix = UnimodularMatrix { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(MathError::domain(format!(
                "matrix ({a} {b}; {c} {d}) has determinant {} != 1",
                a * d - b * c
            )));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    /// Power of T: (1 n; 0 1).
    pub fn translation(n: i64) -> Self {
        UnimodularMatrix { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn mul(&self, other: &UnimodularMatrix) -> UnimodularMatrix {
        UnimodularMatrix {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> UnimodularMatrix {
        UnimodularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// The automorphy factor j(γ, τ) = cτ + d.
    pub fn j_factor(&self, tau: Complex64) -> Complex64 {
        self.c as f64 * tau + self.d as f64
    }

    /// Möbius action γτ = (aτ + b)/(cτ + d).
    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / self.j_factor(tau)
    }

    pub fn apply_point(&self, tau: HalfPlanePoint) -> HalfPlanePoint {
        HalfPlanePoint::from_complex(self.apply(tau.to_complex()))
            .expect("Moebius action preserves the upper half-plane")
    }
}

impl std::fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Map τ into the standard fundamental domain |Re τ| ≤ 1/2, |τ| ≥ 1 by
/// T and S steps. Returns the reduced point together with γ so that
/// reduced = γ · τ.
pub fn reduce_to_fundamental_domain(tau: Complex64) -> (Complex64, UnimodularMatrix) {
    let mut t = tau;
    let mut gamma = UnimodularMatrix::IDENTITY;
    for _ in 0..256 {
        let n = t.re.round();
        if n != 0.0 {
            t -= n;
            gamma = UnimodularMatrix::translation(-(n as i64)).mul(&gamma);
        }
        if t.norm_sqr() < 1.0 - 1e-15 {
            t = -1.0 / t;
            gamma = UnimodularMatrix::S.mul(&gamma);
        } else {
            break;
        }
    }
    (t, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_enforced() {
        assert!(UnimodularMatrix::new(2, 0, 0, 2).is_err());
        assert!(UnimodularMatrix::new(2, 1, 1, 1).is_ok());
    }

    #[test]
    fn s_squared_is_minus_identity_action() {
        let tau = Complex64::new(0.3, 1.2);
        let once = UnimodularMatrix::S.apply(tau);
        let twice = UnimodularMatrix::S.apply(once);
        assert!((twice - tau).norm() < 1e-15);
    }

    #[test]
    fn reduction_lands_in_fundamental_domain() {
        let samples = [
            Complex64::new(3.7, 0.004),
            Complex64::new(-0.499, 0.02),
            Complex64::new(12.25, 7.0),
            Complex64::new(0.5, 0.866),
            Complex64::new(-2.0, 0.0001),
        ];
        for &tau in &samples {
            let (red, gamma) = reduce_to_fundamental_domain(tau);
            assert!(red.re.abs() <= 0.5 + 1e-12, "tau = {tau}: red = {red}");
            assert!(red.norm_sqr() >= 1.0 - 1e-9, "tau = {tau}: red = {red}");
            // reduced point really is gamma * tau
            assert!((gamma.apply(tau) - red).norm() < 1e-9 * (1.0 + red.norm()));
            assert_eq!(gamma.a * gamma.d - gamma.b * gamma.c, 1);
        }
    }

    #[test]
    fn reduction_fixes_interior_points() {
        let tau = Complex64::new(0.13, 1.4);
        let (red, gamma) = reduce_to_fundamental_domain(tau);
        assert_eq!(gamma, UnimodularMatrix::IDENTITY);
        assert_eq!(red, tau);
    }
}
