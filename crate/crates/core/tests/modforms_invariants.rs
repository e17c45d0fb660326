//! Modularity and growth invariants of the q-expansion evaluators, on
//! randomized grids with a fixed seed.

use lzfun::harness::SmallRng;
use lzfun::modforms::{slash, Forms, HalfPlanePoint, UnimodularMatrix};
use num_complex::Complex64;

fn grid(rng: &mut SmallRng, n: usize) -> Vec<HalfPlanePoint> {
    // keep both tau and its images comfortably inside the direct-series
    // region so the checks exercise the series, not the reduction
    let mut out = Vec::new();
    while out.len() < n {
        let u = rng.uniform(-0.5, 0.5);
        let v = rng.uniform(0.8, 3.0);
        out.push(HalfPlanePoint::new(u, v).unwrap());
    }
    out
}

#[test]
fn weight_k_modularity_on_random_grid() {
    let forms = Forms::default();
    let mut rng = SmallRng::new(77);
    let gammas = [
        UnimodularMatrix::S,
        UnimodularMatrix::T,
        UnimodularMatrix::new(2, 1, 1, 1).unwrap(),
    ];
    for tau in grid(&mut rng, 20) {
        for g in &gammas {
            let image = g.apply_point(tau);
            if image.v() < 0.55 {
                continue; // stay on the direct-series path for both sides
            }
            let cases: [(&dyn Fn(HalfPlanePoint) -> lzfun::Result<Complex64>, i32); 5] = [
                (&|t| forms.e4(t), 4),
                (&|t| forms.e6(t), 6),
                (&|t| forms.delta(t), 12),
                (&|t| forms.j(t), 0),
                (&|t| forms.e2hat(t), 2),
            ];
            for (f, k) in cases {
                let lhs = slash(f, k, g, tau).unwrap();
                let rhs = f(tau).unwrap();
                let resid = (lhs - rhs).norm() / rhs.norm().max(1.0);
                assert!(
                    resid <= 1e-9,
                    "weight {k} slash residual {resid} at tau = {tau}, gamma = {g}"
                );
            }
        }
    }
}

#[test]
fn j_invariance_is_the_mechanism_behind_invariance() {
    let forms = Forms::default();
    let mut rng = SmallRng::new(12345);
    let gammas = [
        UnimodularMatrix::S,
        UnimodularMatrix::T,
        UnimodularMatrix::new(2, 1, 1, 1).unwrap(),
    ];
    for z in grid(&mut rng, 20) {
        let jz = forms.jj(z).unwrap();
        for g in &gammas {
            let jzg = forms.jj(g.apply_point(z)).unwrap();
            assert!(
                (jzg - jz).norm() / jz.norm() <= 1e-10,
                "J residual at z = {z}, gamma = {g}"
            );
        }
    }
}

#[test]
fn hz_reflection_consistency_toward_zero() {
    // H_z(i/t) = (it)² H_z(it) pins the growth 1/τ² of H_z at 0.
    let forms = Forms::default();
    let z = HalfPlanePoint::new(0.31, 1.4).unwrap();
    for &t in &[0.5, 0.7, 0.9] {
        let lhs = forms.hz(z, HalfPlanePoint::new(0.0, 1.0 / t).unwrap()).unwrap();
        let it = Complex64::new(0.0, t);
        let rhs = it * it * forms.hz(z, HalfPlanePoint::new(0.0, t).unwrap()).unwrap();
        assert!(
            (lhs - rhs).norm() / rhs.norm() < 1e-9,
            "reflection residual at t = {t}"
        );
    }
}

#[test]
fn growth_of_j_with_fitted_constant() {
    let forms = Forms::default();
    let mut worst = 0.0f64;
    for &t in &[1.5, 1.8, 2.1, 2.5] {
        let j = forms.jj(HalfPlanePoint::new(0.0, t).unwrap()).unwrap();
        let resid = (j * (-2.0 * std::f64::consts::PI * t).exp() - 1.0).norm();
        worst = worst.max(resid / (-2.0 * std::f64::consts::PI * t).exp());
    }
    assert!(worst <= 2000.0, "fitted growth constant {worst}");
}
