//! The resolvent-path family: eigenfunction and modularity properties of
//! 𝒢_w, and the I_{w,s} cross-checks against the direct integral, its
//! functional equation and its Laplacian eigenvalue.

use lzfun::eisenstein::{laplacian_stencil, LatticeTruncation};
use lzfun::harness::*;
use lzfun::lfun::LzContext;
use lzfun::modforms::{HalfPlanePoint, UnimodularMatrix};
use lzfun::resolvent::cal_gw;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hp(u: f64, v: f64) -> HalfPlanePoint {
    HalfPlanePoint::new(u, v).unwrap()
}

fn assert_check(chk: CheckResult) {
    println!("{}", chk.line());
    assert!(chk.pass, "{}: {}", chk.id, chk.detail);
}

#[test]
fn direct_integral_agreement_at_large_w() {
    let cx = LzContext::default();
    assert_check(check_family_direct_integral(&cx, &VerifyBudget::standard()));
}

#[test]
fn family_functional_equation() {
    let cx = LzContext::default();
    assert_check(check_family_functional_equation(&cx, &VerifyBudget::standard()));
}

#[test]
fn family_eigenfunction() {
    let cx = LzContext::default();
    assert_check(check_family_eigenfunction(&cx, &VerifyBudget::standard()));
}

#[test]
fn far_field_envelopes() {
    let cx = LzContext::default();
    assert_check(check_far_field_envelopes(&cx, &VerifyBudget::standard()));
}

#[test]
fn cal_gw_weight_two_in_tau() {
    // calGw(w, z, γτ) j(γ,τ)^{−2} = calGw(w, z, τ) up to the tail budget.
    let w = c(1.8, 0.0);
    let z = hp(0.1, 1.2);
    let tau = hp(0.4, 0.9);
    let tr = LatticeTruncation::new(80);
    let base = cal_gw(w, z, tau, &tr).unwrap();
    for g in [UnimodularMatrix::S, UnimodularMatrix::T] {
        let image = g.apply_point(tau);
        let moved = cal_gw(w, z, image, &tr).unwrap();
        let jf = g.j_factor(tau.to_complex());
        let pulled = moved.value * jf.powi(-2);
        let resid = (pulled - base.value).norm();
        let allowance = base.err_est + moved.err_est * jf.norm().powi(-2) + 5e-4;
        assert!(
            resid <= allowance,
            "gamma = {g}: residual {resid:.3e} > allowance {allowance:.3e}"
        );
    }
}

#[test]
fn cal_gw_invariant_in_z() {
    let w = c(1.8, 0.0);
    let z = hp(0.1, 1.2);
    let tau = hp(0.4, 0.9);
    let tr = LatticeTruncation::new(80);
    let base = cal_gw(w, z, tau, &tr).unwrap();
    for g in [UnimodularMatrix::S, UnimodularMatrix::T] {
        let moved = cal_gw(w, g.apply_point(z), tau, &tr).unwrap();
        let resid = (moved.value - base.value).norm();
        assert!(
            resid <= base.err_est + moved.err_est + 5e-4,
            "gamma = {g}: residual {resid:.3e}"
        );
    }
}

#[test]
fn cal_gw_eigenfunction_in_both_variables() {
    let tr = LatticeTruncation::new(64);
    for &wv in &[1.5, 2.0] {
        let w = c(wv, 0.0);
        let z = hp(0.1, 1.2);
        let tau = hp(0.4, 0.9);
        // in z (weight 0)
        let fz = |p: HalfPlanePoint| Ok(cal_gw(w, p, tau, &tr)?.value);
        let lap_z = laplacian_stencil(0, &fz, z, 1e-3 * z.v()).unwrap();
        let expect = w * (1.0 - w) * fz(z).unwrap();
        let rel = (lap_z - expect).norm() / expect.norm();
        assert!(rel < 1e-3, "w = {wv}, z-side rel {rel:.3e}");
        // in tau (weight 2)
        let ft = |p: HalfPlanePoint| Ok(cal_gw(w, z, p, &tr)?.value);
        let lap_t = laplacian_stencil(2, &ft, tau, 1e-3 * tau.v()).unwrap();
        let expect_t = w * (1.0 - w) * ft(tau).unwrap();
        let rel_t = (lap_t - expect_t).norm() / expect_t.norm();
        assert!(rel_t < 1e-3, "w = {wv}, tau-side rel {rel_t:.3e}");
    }
}

#[test]
fn general_family_refinement_oracle() {
    // (z, w, s0, s) = (0.3+1.2i, 3, 2, 1.5) against the same evaluation at
    // a 10x subdivision budget and tightened tolerances.
    let cx = LzContext::default();
    let z = hp(0.3, 1.2);
    let tr = LatticeTruncation::new(28);
    let q = lzfun::lfun::QuadratureSpec {
        abs_tol: 1e-7,
        rel_tol: 1e-6,
        max_subdiv: 400,
        ..Default::default()
    };
    let fine = lzfun::lfun::QuadratureSpec {
        abs_tol: 1e-8,
        rel_tol: 1e-7,
        max_subdiv: 4000,
        ..q
    };
    let a = cx
        .l_z_general(z, c(3.0, 0.0), c(2.0, 0.0), c(1.5, 0.0), &tr, &q)
        .unwrap();
    let b = cx
        .l_z_general(z, c(3.0, 0.0), c(2.0, 0.0), c(1.5, 0.0), &tr, &fine)
        .unwrap();
    assert!(
        (a.value - b.value).norm() < 1e-4,
        "refinement drift {:.3e} (a = {}, b = {})",
        (a.value - b.value).norm(),
        a.value,
        b.value
    );
}

#[test]
fn raised_kernel_far_field_limit_at_w_one() {
    // 𝒢₁(z,τ) → 2πi Ê₂(τ) as y → ∞, deviation decreasing in y.
    let cx = LzContext::default();
    let tau = hp(0.37, 0.9);
    let tr = LatticeTruncation::new(100);
    let target = c(0.0, 2.0 * std::f64::consts::PI) * cx.forms.e2hat(tau).unwrap();
    let mut prev = f64::INFINITY;
    for &yv in &[4.0, 6.0, 8.0] {
        let z = hp(0.2, yv);
        let mut ladder = Vec::new();
        for wv in [1.5, 1.25, 1.125] {
            ladder.push((wv, cal_gw(c(wv, 0.0), z, tau, &tr).unwrap().value));
        }
        let g1 = lzfun::resolvent::lagrange_at_zero(&ladder);
        let dev = (g1 - target).norm();
        assert!(dev < prev * 1.05, "deviation not decreasing at y = {yv}");
        prev = dev;
    }
    assert!(prev < 0.05 * target.norm(), "final deviation {prev:.3e}");
}
