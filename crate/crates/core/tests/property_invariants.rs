//! Property-based invariants over randomized inputs.

use lzfun::modforms::{reduce_to_fundamental_domain, HalfPlanePoint, UnimodularMatrix};
use lzfun::specfun::{gamma, polylog, rising_factorial, xi};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xi_reflection_symmetry(re in -3.0f64..3.0, im in -10.0f64..10.0) {
        let s = Complex64::new(re, im);
        let a = xi(s);
        let b = xi(Complex64::new(1.0, 0.0) - s);
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn gamma_recurrence(re in -4.0f64..8.0, im in -15.0f64..15.0) {
        let z = Complex64::new(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3 || re > 0.5);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn polylog_conjugation(ell in 1u32..5, x in 0.05f64..0.95) {
        let a = polylog(ell, x).unwrap();
        let b = polylog(ell, -x).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13);
    }

    #[test]
    fn rising_factorial_shift(re in -3.0f64..3.0, im in -3.0f64..3.0, ell in 1u32..6) {
        // (a)_{ℓ+1} = (a)_ℓ (a + ℓ)
        let a = Complex64::new(re, im);
        let lhs = rising_factorial(a, ell + 1);
        let rhs = rising_factorial(a, ell) * (a + ell as f64);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn reduction_reaches_fundamental_domain(u in -8.0f64..8.0, v in 0.01f64..5.0) {
        let tau = Complex64::new(u, v);
        let (red, gamma) = reduce_to_fundamental_domain(tau);
        prop_assert!(red.re.abs() <= 0.5 + 1e-9);
        prop_assert!(red.norm_sqr() >= 1.0 - 1e-9);
        prop_assert_eq!(gamma.a * gamma.d - gamma.b * gamma.c, 1);
        prop_assert!((gamma.apply(tau) - red).norm() <= 1e-8 * (1.0 + red.norm()));
    }

    #[test]
    fn mobius_action_preserves_half_plane(
        u in -3.0f64..3.0,
        v in 0.05f64..4.0,
        b in -4i64..4,
    ) {
        let tau = HalfPlanePoint::new(u, v).unwrap();
        let gammas = [
            UnimodularMatrix::S,
            UnimodularMatrix::translation(b),
            UnimodularMatrix::new(1 + b * 1, b, 1, 1).unwrap_or(UnimodularMatrix::S),
        ];
        for g in gammas {
            let image = g.apply_point(tau);
            prop_assert!(image.v() > 0.0);
            // v' = v / |c tau + d|^2
            let jf = g.j_factor(tau.to_complex());
            prop_assert!((image.v() - v / jf.norm_sqr()).abs() <= 1e-12 * image.v());
        }
    }
}
