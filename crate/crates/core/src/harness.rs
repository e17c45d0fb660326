//! Named verification checks: each theorem-level statement becomes one
//! pass/fail record with its measured residual and pinned tolerance. The
//! acceptance test suite and the CLI `verify` command both run these.

use crate::eisenstein::{
    eval_e_real_analytic, laplacian_stencil, raise, residue_e0_extrapolated, LatticeTruncation,
};
use crate::error::Result;
use crate::lfun::{LzContext, QuadratureSpec};
use crate::modforms::{HalfPlanePoint, UnimodularMatrix};
use crate::resolvent::{cal_gw, lagrange_at_zero, verify_resolvent_bridge};
use crate::specfun::{
    gamma, hyp1f1_s_splus1, inc_gamma_generalized, inc_gamma_upper, polylog,
    polylog_regularized_sum, rising_factorial, xi, zeta,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// One verification record: theorem, measured residual, pinned tolerance.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Stable identifier, e.g. "criterion-03a".
    pub id: &'static str,
    /// What is being verified.
    pub statement: &'static str,
    /// Suite key used by the CLI filter.
    pub suite: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn measured(
        id: &'static str,
        statement: &'static str,
        suite: &'static str,
        residual: f64,
        tolerance: f64,
        detail: String,
    ) -> Self {
        CheckResult {
            id,
            statement,
            suite,
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            detail,
        }
    }

    fn failed(
        id: &'static str,
        statement: &'static str,
        suite: &'static str,
        tolerance: f64,
        err: impl std::fmt::Display,
    ) -> Self {
        CheckResult {
            id,
            statement,
            suite,
            residual: f64::INFINITY,
            tolerance,
            pass: false,
            detail: format!("error: {err}"),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {:<16} {:<52} residual {:9.3e}  tol {:7.1e}  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.statement,
            self.residual,
            self.tolerance,
            self.detail
        )
    }
}

/// Budgets for one verification run.
#[derive(Debug, Clone)]
pub struct VerifyBudget {
    pub quad: QuadratureSpec,
    /// Lattice radius for the resolvent bridge and residue checks.
    pub r_bridge: u32,
    /// Lattice radius for the I_{w,s} family checks.
    pub r_family: u32,
    /// Lattice radius for Eisenstein asymptotics.
    pub r_eisenstein: u32,
    pub seed: u64,
}

impl VerifyBudget {
    pub fn fast() -> Self {
        VerifyBudget {
            quad: QuadratureSpec {
                abs_tol: 1e-10,
                rel_tol: 1e-9,
                max_subdiv: 2000,
                ..QuadratureSpec::default()
            },
            r_bridge: 48,
            r_family: 20,
            r_eisenstein: 140,
            seed: 20240901,
        }
    }

    pub fn standard() -> Self {
        VerifyBudget {
            quad: QuadratureSpec::default(),
            r_bridge: 80,
            r_family: 32,
            r_eisenstein: 400,
            seed: 20240901,
        }
    }

    pub fn paranoid() -> Self {
        VerifyBudget {
            quad: QuadratureSpec {
                abs_tol: 1e-12,
                rel_tol: 1e-11,
                max_subdiv: 20_000,
                ..QuadratureSpec::default()
            },
            r_bridge: 160,
            r_family: 48,
            r_eisenstein: 800,
            seed: 20240901,
        }
    }
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget::standard()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hp(u: f64, v: f64) -> HalfPlanePoint {
    HalfPlanePoint::new(u, v).expect("grid point in upper half-plane")
}

/// Deterministic xorshift64* stream for randomized grids.
pub struct SmallRng(u64);

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + u * (hi - lo)
    }
}

/// Default z-grid: away from 𝒮, elliptic points and integer s.
pub fn default_z_grid() -> Vec<HalfPlanePoint> {
    vec![hp(0.27, 1.31), hp(-0.41, 0.87), hp(0.13, 2.2)]
}

pub fn default_s_grid() -> Vec<Complex64> {
    vec![c(1.4, 0.0), c(1.5, 0.3), c(0.7, 1.1)]
}

fn pow_principal(y: f64, s: Complex64) -> Complex64 {
    if y > 0.0 {
        (s * y.ln()).exp()
    } else {
        (s * Complex64::new(y.abs().ln(), PI)).exp()
    }
}

// ── criterion 1: closed form for L(Ê₂,s) ──────────────────────────────

pub fn check_le2_closed_form(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-01";
    let stmt = "L(E2hat,s) quadrature vs -24(2pi)^-s Gamma zeta zeta";
    let run = || -> Result<(f64, String)> {
        let mut worst = 0.0f64;
        let mut notes = Vec::new();
        for s in [c(1.5, 0.0), c(2.5, 0.0), c(1.5, 0.7), c(-0.5, 0.0)] {
            let start = std::time::Instant::now();
            let got = cx.l_e2hat(s, &b.quad)?;
            let exact = cx.l_e2hat_closed_form(s)?;
            let rel = (got.value - exact).norm() / exact.norm();
            worst = worst.max(rel);
            notes.push(format!("s={s}: {rel:.1e} in {:?}", start.elapsed()));
        }
        // the functional-equation path for s = −1/2
        let a = cx.l_e2hat(c(-0.5, 0.0), &b.quad)?.value;
        let bb = cx.l_e2hat(c(2.5, 0.0), &b.quad)?.value;
        worst = worst.max((a + bb).norm() / bb.norm());
        Ok((worst, notes.join("; ")))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "closed-form", r, 1e-8, d),
        Err(e) => CheckResult::failed(id, stmt, "closed-form", 1e-8, e),
    }
}

// ── criterion 2: t₀-independence ──────────────────────────────────────

pub fn check_t0_independence(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-02";
    let stmt = "t0-independence of L(E2hat,s) and L_z(s), t0 in {1/2,1,2}";
    let run = || -> Result<(f64, String)> {
        let s = c(1.4, 0.3);
        let z = hp(0.27, 1.31);
        let mut le2 = Vec::new();
        let mut lz = Vec::new();
        for &t0 in &[0.5, 1.0, 2.0] {
            let q = QuadratureSpec { t0, ..b.quad };
            le2.push(cx.l_e2hat(s, &q)?.value);
            lz.push(cx.l_z(z, s, &q)?.value);
        }
        let spread = |v: &[Complex64]| -> f64 {
            let mut m = 0.0f64;
            for a in v {
                for bb in v {
                    m = m.max((a - bb).norm());
                }
            }
            m / v[0].norm().max(1.0)
        };
        let worst = spread(&le2).max(spread(&lz));
        Ok((worst, format!("L(E2): {:.1e}, L_z: {:.1e}", spread(&le2), spread(&lz))))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "t0-independence", r, 1e-8, d),
        Err(e) => CheckResult::failed(id, stmt, "t0-independence", 1e-8, e),
    }
}

// ── criterion 3: functional equations ─────────────────────────────────

pub fn check_functional_equation_le2(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-03a";
    let stmt = "L(E2hat,2-s) = -L(E2hat,s)";
    let run = || -> Result<(f64, String)> {
        let q = QuadratureSpec { t0: 0.8, ..b.quad };
        let mut worst = 0.0f64;
        for s in [c(1.4, 0.3), c(1.7, 0.0), c(0.6, 0.9)] {
            let a = cx.l_e2hat(s, &q)?.value;
            let bb = cx.l_e2hat(c(2.0, 0.0) - s, &q)?.value;
            worst = worst.max((a + bb).norm());
        }
        Ok((worst, "absolute residual over 3 points".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "functional-equation", r, 1e-9, d),
        Err(e) => CheckResult::failed(id, stmt, "functional-equation", 1e-9, e),
    }
}

pub fn check_functional_equation_lz(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-03b";
    let stmt = "L_z(2-s) = -L_z(s) on the default grid";
    let run = || -> Result<(f64, String)> {
        let q = QuadratureSpec { t0: 0.8, ..b.quad };
        let mut worst = 0.0f64;
        for z in default_z_grid() {
            for s in default_s_grid() {
                let a = cx.l_z(z, s, &q)?.value;
                let bb = cx.l_z(z, c(2.0, 0.0) - s, &q)?.value;
                worst = worst.max((a + bb).norm() / a.norm().max(1.0));
            }
        }
        Ok((worst, "9 grid points".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "functional-equation", r, 1e-7, d),
        Err(e) => CheckResult::failed(id, stmt, "functional-equation", 1e-7, e),
    }
}

// ── criterion 4: SL₂(ℤ)-invariance ────────────────────────────────────

pub fn check_invariance(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-04";
    let stmt = "L_{gamma z}(s) = L_z(s) and J(gamma z) = J(z)";
    let run = || -> Result<(f64, String)> {
        let gammas = [
            UnimodularMatrix::S,
            UnimodularMatrix::T,
            UnimodularMatrix::new(2, 1, 1, 1).unwrap(),
        ];
        let s = c(1.4, 0.0);
        let mut worst_l = 0.0f64;
        let mut worst_j = 0.0f64;
        for z in default_z_grid() {
            let base = cx.l_z(z, s, &b.quad)?.value;
            let jz = cx.forms.jj(z)?;
            for g in &gammas {
                let zg = g.apply_point(z);
                let moved = cx.l_z(zg, s, &b.quad)?.value;
                worst_l = worst_l.max((moved - base).norm() / base.norm().max(1.0));
                let jzg = cx.forms.jj(zg)?;
                worst_j = worst_j.max((jzg - jz).norm() / jz.norm());
            }
        }
        // J-invariance is the sharper statement; put it in the detail and
        // gate on both.
        let detail = format!("L residual {worst_l:.1e}; J residual {worst_j:.1e} (tol 1e-10)");
        let residual = worst_l.max(worst_j * 1e3); // scales J tol 1e-10 to 1e-7 gate
        Ok((residual, detail))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "invariance", r, 1e-7, d),
        Err(e) => CheckResult::failed(id, stmt, "invariance", 1e-7, e),
    }
}

// ── criterion 5: harmonicity ──────────────────────────────────────────

pub fn check_harmonicity(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-05";
    let stmt = "Laplacian stencil of z -> L_z(s) decays O(h^2), ratio 4 +/- 0.8";
    let run = || -> Result<(f64, String)> {
        let q = QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdiv: 20_000,
            ..b.quad
        };
        let s = c(1.4, 0.0);
        let z = hp(0.27, 1.31);
        let f = |p: HalfPlanePoint| Ok(cx.l_z(p, s, &q)?.value);
        let h = 1e-2 * z.v();
        let r1 = laplacian_stencil(0, &f, z, h)?.norm();
        let r2 = laplacian_stencil(0, &f, z, h / 2.0)?.norm();
        let ratio = r1 / r2;
        let dev = (ratio - 4.0).abs();
        Ok((
            dev,
            format!("|stencil(h)| {r1:.2e}, |stencil(h/2)| {r2:.2e}, ratio {ratio:.3}"),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "harmonicity", r, 0.8, d),
        Err(e) => CheckResult::failed(id, stmt, "harmonicity", 0.8, e),
    }
}

// ── criterion 6: the y → ∞ limit ──────────────────────────────────────

pub fn check_limit(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-06";
    let stmt = "y-ladder limit of L_{x+iy}(s) hits -24i(2pi)^{1-s} Gamma zeta zeta";
    let run = || -> Result<(f64, String)> {
        let start = std::time::Instant::now();
        let rep = cx.limit_experiment(c(1.5, 0.0), 0.3, &[16.0, 32.0, 64.0], &b.quad)?;
        Ok((
            rep.rel_error,
            format!(
                "fitted {:+.6e}{:+.6e}i vs target {:+.6e}{:+.6e}i in {:?}",
                rep.fitted_limit.re,
                rep.fitted_limit.im,
                rep.target.re,
                rep.target.im,
                start.elapsed()
            ),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "limit", r, 1e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "limit", 1e-2, e),
    }
}

// ── criterion 7: resolvent bridge to H_z* ─────────────────────────────

pub fn check_resolvent_bridge(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-07";
    let stmt = "w-ladder of cal G_w(z,tau) extrapolates to -2pi i H_z*";
    let run = || -> Result<(f64, String)> {
        let tr = LatticeTruncation::new(b.r_bridge);
        let rep = verify_resolvent_bridge(
            hp(0.13, 1.3),
            hp(0.37, 0.9),
            &[1.5, 1.25, 1.125],
            &tr,
            &cx.forms,
        )?;
        Ok((
            rep.rel_deviation,
            format!(
                "extrapolated {:+.4e}{:+.4e}i, reference {:+.4e}{:+.4e}i",
                rep.extrapolated.re, rep.extrapolated.im, rep.reference.re, rep.reference.im
            ),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "resolvent-bridge", r, 5e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "resolvent-bridge", 5e-2, e),
    }
}

// ── criterion 8: residues ─────────────────────────────────────────────

pub fn check_residue_le2(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-08a";
    let stmt = "(s-1) L(E2hat,s) -> 6/pi at s = 1 + 1e-4";
    let run = || -> Result<(f64, String)> {
        let s = c(1.0 + 1e-4, 0.0);
        let v = cx.l_e2hat(s, &b.quad)?.value;
        let resid = ((s - 1.0) * v - 6.0 / PI).norm() / (6.0 / PI);
        Ok((resid, format!("(s-1)L = {:+.8e}", ((s - 1.0) * v).re)))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "residues", r, 1e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "residues", 1e-3, e),
    }
}

pub fn check_residue_hz(cx: &LzContext, _b: &VerifyBudget) -> CheckResult {
    let id = "criterion-08b";
    let stmt = "2pi i (z-tau) H_z*(tau) -> 1 by offset extrapolation";
    let run = || -> Result<(f64, String)> {
        let tau = hp(0.13, 1.21);
        let dir = c(0.6, 0.8);
        let eval = |delta: f64| -> Result<Complex64> {
            let z = HalfPlanePoint::from_complex(tau.to_complex() + delta * dir)?;
            Ok(c(0.0, 2.0 * PI) * (z.to_complex() - tau.to_complex()) * cx.forms.hz_star(z, tau)?)
        };
        let f1 = eval(1e-2)?;
        let f2 = eval(1e-3)?;
        let extrap = (10.0 * f2 - f1) / 9.0;
        Ok((
            (extrap - 1.0).norm(),
            format!("extrapolated {:+.6e}{:+.6e}i", extrap.re, extrap.im),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "residues", r, 1e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "residues", 1e-3, e),
    }
}

pub fn check_residue_calg(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-08c";
    let stmt = "(z-tau) cal G_1 -> -1 by offset + w-ladder extrapolation";
    let run = || -> Result<(f64, String)> {
        let tau = hp(0.37, 0.91);
        let dir = c(0.6, 0.8);
        let tr = LatticeTruncation::new(b.r_bridge);
        let prod = |delta: f64| -> Result<Complex64> {
            let z = HalfPlanePoint::from_complex(tau.to_complex() + delta * dir)?;
            let mut ladder = Vec::new();
            for wv in [1.5, 1.25, 1.125] {
                ladder.push((wv, cal_gw(c(wv, 0.0), z, tau, &tr)?.value));
            }
            Ok((z.to_complex() - tau.to_complex()) * lagrange_at_zero(&ladder))
        };
        let f1 = prod(0.1)?;
        let f2 = prod(0.05)?;
        let f3 = prod(0.025)?;
        // quadratic offset extrapolation to delta = 0
        let extrap = (f3 * 8.0 - f2 * 6.0 + f1) / 3.0;
        Ok((
            (extrap + 1.0).norm(),
            format!("extrapolated {:+.5e}{:+.5e}i", extrap.re, extrap.im),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "residues", r, 5e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "residues", 5e-2, e),
    }
}

// ── criterion 9: special-function identity suite ──────────────────────

pub fn check_gamma1f1_identity(_cx: &LzContext, _b: &VerifyBudget) -> CheckResult {
    let id = "criterion-09a";
    let stmt = "Gamma(s,y1,y2) equals the 1F1 combination on the grid";
    let run = || -> Result<(f64, String)> {
        let s_grid = [c(0.6, 0.0), c(1.1, 0.0), c(1.4, 0.3), c(2.2, -0.4), c(3.0, 0.0)];
        let y1_grid = [0.3, 0.7, 1.5, 2.5, 4.0];
        let fac = [1.5, 2.0, 3.0, 5.0, 8.0];
        let mut worst = 0.0f64;
        for (i, &s) in s_grid.iter().enumerate() {
            for (j, &y1a) in y1_grid.iter().enumerate() {
                for (k, &f) in fac.iter().enumerate() {
                    let sign = if (i + j + k) % 2 == 0 { 1.0 } else { -1.0 };
                    let (lo, hi) = if sign > 0.0 {
                        (y1a, y1a * f)
                    } else {
                        (-y1a * f, -y1a)
                    };
                    let lhs = inc_gamma_generalized(s, lo, hi)?;
                    let piece = |y: f64| -> Result<Complex64> {
                        let (f11, _) = hyp1f1_s_splus1(s, c(-y, 0.0))?;
                        Ok(pow_principal(y, s) / s * f11)
                    };
                    let rhs = piece(hi)? - piece(lo)?;
                    // residual scaled by the value size once it passes O(1);
                    // the integrals reach e^{32} on the negative part of
                    // the grid where absolute 1e-10 is below f64 resolution
                    worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
                }
            }
        }
        Ok((worst, "5x5x5 grid, both common signs".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "specfun-identities", r, 1e-10, d),
        Err(e) => CheckResult::failed(id, stmt, "specfun-identities", 1e-10, e),
    }
}

pub fn check_asymptotic_envelopes(_cx: &LzContext, _b: &VerifyBudget) -> CheckResult {
    let id = "criterion-09b";
    let stmt = "incomplete-gamma and 1F1 asymptotic envelopes, constant <= 10";
    let run = || -> Result<(f64, String)> {
        let mut worst = 0.0f64;
        // Gamma(s,y) = y^{s-1} e^{-y} (Σ_{l<N} (s-l)_l y^{-l} + O(y^{-N}))
        for &s in &[c(2.3, 0.0), c(1.1, 0.4), c(3.6, 0.0)] {
            for &y in &[10.0, 20.0, 30.0] {
                for n in 1..=3u32 {
                    let g = inc_gamma_upper(s, y)?;
                    let pref = pow_principal(y, s - 1.0) * (-y).exp();
                    let mut partial = c(0.0, 0.0);
                    for ell in 0..n {
                        partial +=
                            rising_factorial(s - ell as f64, ell) * pow_principal(y, c(-(ell as f64), 0.0));
                    }
                    let next = rising_factorial(s - n as f64, n).norm() * y.powf(-(n as f64));
                    let resid = (g / pref - partial).norm();
                    worst = worst.max(resid / next);
                }
            }
        }
        // 1F1(s;s+1;y) ~ s e^y y^{-1} Σ (1-s)_j y^{-j}, reference by the
        // positive-term Kummer series summed directly here
        for &s in &[c(1.5, 0.0), c(0.8, 0.0), c(2.3, 0.5)] {
            for &y in &[45.0, 60.0, 80.0] {
                let yv = c(y, 0.0);
                let mut pow = c(1.0, 0.0);
                let mut reference = c(1.0, 0.0);
                for n in 1..3000 {
                    pow *= yv / n as f64;
                    reference += s / (s + n as f64) * pow;
                    if n as f64 > 2.0 * y && pow.norm() < 1e-17 * reference.norm() {
                        break;
                    }
                }
                for n_trunc in 1..=3u32 {
                    let mut partial = c(0.0, 0.0);
                    for j in 0..=n_trunc {
                        partial += rising_factorial(c(1.0, 0.0) - s, j)
                            * pow_principal(y, c(-(j as f64), 0.0));
                    }
                    let model = s * yv.exp() / yv * partial;
                    let next = (s * yv.exp() / yv).norm()
                        * rising_factorial(c(1.0, 0.0) - s, n_trunc + 1).norm()
                        * y.powf(-(n_trunc as f64) - 1.0);
                    worst = worst.max((reference - model).norm() / next);
                }
            }
        }
        Ok((worst, "largest residual/next-term ratio".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "specfun-identities", r, 10.0, d),
        Err(e) => CheckResult::failed(id, stmt, "specfun-identities", 10.0, e),
    }
}

pub fn check_xi_symmetry(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-09c";
    let stmt = "xi(s) = xi(1-s) at 100 random points";
    let run = || -> Result<(f64, String)> {
        let mut rng = SmallRng::new(b.seed);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let s = c(rng.uniform(-3.0, 3.0), rng.uniform(-10.0, 10.0));
            let a = xi(s);
            let bb = xi(c(1.0, 0.0) - s);
            worst = worst.max((a - bb).norm() / a.norm().max(1e-300));
        }
        Ok((worst, format!("seed {}", b.seed)))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "specfun-identities", r, 1e-10, d),
        Err(e) => CheckResult::failed(id, stmt, "specfun-identities", 1e-10, e),
    }
}

/// Σ_{m>M} m^{−s} by Euler–Maclaurin, used by the divisor-series check.
fn zeta_tail(s: Complex64, m: usize) -> Complex64 {
    if m < 16 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (m + 1)..=16 {
            acc += (-s * (k as f64).ln()).exp();
        }
        return acc + zeta_tail(s, 16);
    }
    let mf = m as f64;
    let mpow = (-s * mf.ln()).exp();
    let mut acc = mpow * mf / (s - 1.0) - 0.5 * mpow;
    let mut scale = mpow / mf;
    for k in 1..=8u32 {
        let b2k = crate::specfun::bernoulli(2 * k);
        let fact: f64 = (1..=2 * k).map(|i| i as f64).product();
        acc += b2k / fact * rising_factorial(s, 2 * k - 1) * scale;
        scale /= mf * mf;
    }
    acc
}

pub fn check_zetap_series(_cx: &LzContext, _b: &VerifyBudget) -> CheckResult {
    let id = "criterion-09d";
    let stmt = "sigma_1 Dirichlet series matches zeta(s) zeta(s-1) at Re s = 3";
    let run = || -> Result<(f64, String)> {
        let mut worst = 0.0f64;
        for s in [c(3.0, 0.0), c(3.0, 1.3)] {
            let n = 3000usize;
            // direct series over n <= N
            let mut sigma = vec![0.0f64; n + 1];
            for d in 1..=n {
                let mut m = d;
                while m <= n {
                    sigma[m] += d as f64;
                    m += d;
                }
            }
            let mut lhs = Complex64::new(0.0, 0.0);
            for k in (1..=n).rev() {
                lhs += sigma[k] * (-s * (k as f64).ln()).exp();
            }
            // tail over pairs d·m > N
            for d in 1..=n {
                lhs += (-(s - 1.0) * (d as f64).ln()).exp() * zeta_tail(s, n / d);
            }
            lhs += zeta(s)? * zeta_tail(s - 1.0, n);
            let rhs = zeta(s)? * zeta(s - 1.0)?;
            worst = worst.max((lhs - rhs).norm() / rhs.norm());
        }
        Ok((worst, "N = 3000 with Euler-Maclaurin tails".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "specfun-identities", r, 1e-9, d),
        Err(e) => CheckResult::failed(id, stmt, "specfun-identities", 1e-9, e),
    }
}

pub fn check_polylog_regularized_limit(_cx: &LzContext, _b: &VerifyBudget) -> CheckResult {
    let id = "polylog-reg-limit";
    let stmt = "regularized eps-sums converge to Li_l(e^{-2pi i x})";
    let run = || -> Result<(f64, String)> {
        let (ell, x, y) = (2u32, 0.3, 1.0);
        let target = polylog(ell, -x)?;
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for &eps in &[1e-2, 1e-3, 1e-4] {
            let v = polylog_regularized_sum(ell, x, y, eps);
            let err = (v - target).norm();
            if err > prev {
                return Ok((f64::INFINITY, format!("non-monotone at eps={eps}")));
            }
            prev = err;
            last = err;
        }
        Ok((last, "eps ladder 1e-2, 1e-3, 1e-4".to_string()))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "specfun-identities", r, 5e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "specfun-identities", 5e-3, e),
    }
}

// ── criterion 10: Eisenstein asymptotics ──────────────────────────────

pub fn check_second_coefficient(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-10a";
    let stmt = "E_2(w;it) second-coefficient recovery at w = 3/2";
    let run = || -> Result<(f64, String)> {
        let w = c(1.5, 0.0);
        let tr = LatticeTruncation::new(b.r_eisenstein);
        let ts = [10.0, 15.0, 20.0];
        // fit a + b t^{-w-1} to E2(w;it) − t^w
        let mut a11 = 0.0;
        let mut a12 = 0.0;
        let mut a22 = 0.0;
        let mut r1 = 0.0;
        let mut r2 = 0.0;
        for &t in &ts {
            let e = eval_e_real_analytic(2, w, hp(0.0, t), &tr)?;
            let yv = (e.value - t.powf(1.5)).re;
            let basis = t.powf(-2.5);
            a11 += 1.0;
            a12 += basis;
            a22 += basis * basis;
            r1 += yv;
            r2 += yv * basis;
        }
        let det = a11 * a22 - a12 * a12;
        let b_fit = (a11 * r2 - a12 * r1) / det;
        let b_exact = -PI.sqrt() * 1.5 * gamma(c(2.0, 0.0))?.re * zeta(c(4.0, 0.0))?.re
            / (gamma(c(3.5, 0.0))?.re * zeta(c(5.0, 0.0))?.re);
        let rel = (b_fit - b_exact).abs() / b_exact.abs();
        Ok((rel, format!("fit b = {b_fit:.6}, exact {b_exact:.6}")))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "eisenstein-asymptotics", r, 1e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "eisenstein-asymptotics", 1e-3, e),
    }
}

pub fn check_raising_identity(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "criterion-10b";
    let stmt = "R_0 E_0(w;tau) extrapolates to E2hat(tau) as w -> 1";
    let run = || -> Result<(f64, String)> {
        let tau = hp(0.23, 1.05);
        let tr = LatticeTruncation::new((b.r_eisenstein / 2).max(100));
        let raised_at = |wv: f64| -> Result<Complex64> {
            raise(
                0,
                |p| Ok(eval_e_real_analytic(0, c(wv, 0.0), p, &tr)?.value),
                tau,
                1e-3 * tau.v(),
                1e-2,
            )
        };
        let f12 = raised_at(1.2)?;
        let f11 = raised_at(1.1)?;
        let extrap = 2.0 * f11 - f12;
        let reference = cx.forms.e2hat(tau)?;
        let rel = (extrap - reference).norm() / reference.norm();
        Ok((
            rel,
            format!(
                "extrapolated {:+.5e}{:+.5e}i vs E2hat {:+.5e}{:+.5e}i",
                extrap.re, extrap.im, reference.re, reference.im
            ),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "eisenstein-asymptotics", r, 5e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "eisenstein-asymptotics", 5e-2, e),
    }
}

pub fn check_residue_e0(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "eisen-residue";
    let stmt = "(w-1)E_0(w;z) extrapolates to 3/pi";
    let run = || -> Result<(f64, String)> {
        let tr = LatticeTruncation::new((b.r_eisenstein / 2).max(100));
        let got = residue_e0_extrapolated(hp(0.3, 1.4), &tr)?;
        Ok((
            (got - 3.0 / PI).abs(),
            format!("extrapolated {got:.6}, exact {:.6}", 3.0 / PI),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "eisenstein-asymptotics", r, 5e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "eisenstein-asymptotics", 5e-2, e),
    }
}

// ── resolvent-path family: direct integral, eigenfunction, far field ──

pub fn check_family_direct_integral(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "family-direct";
    let stmt = "I_{w,s}(z) agrees with the direct resolvent integral at w = 3";
    let run = || -> Result<(f64, String)> {
        let z = hp(0.3, 1.2);
        let s = c(1.5, 0.0);
        let tr = LatticeTruncation::new(b.r_family);
        let q = QuadratureSpec {
            abs_tol: 1e-7,
            rel_tol: 1e-6,
            max_subdiv: 600,
            ..b.quad
        };
        let iws = cx.i_ws(z, c(3.0, 0.0), s, 0.8, &tr, &q)?;
        let direct = cx.l_z_general(z, c(3.0, 0.0), c(0.0, 0.0), s, &tr, &q)?;
        let rel = (iws.value - direct.value).norm() / iws.value.norm();
        Ok((rel, format!("I {:+.6e}{:+.6e}i", iws.value.re, iws.value.im)))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "resolvent-family", r, 1e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "resolvent-family", 1e-3, e),
    }
}

pub fn check_family_functional_equation(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "family-funceq";
    let stmt = "I_{w,2-s} = -I_{w,s} at w = 1.8";
    let run = || -> Result<(f64, String)> {
        let z = hp(0.3, 1.2);
        let s = c(1.5, 0.0);
        let tr = LatticeTruncation::new(b.r_family + 16);
        let q = QuadratureSpec {
            abs_tol: 1e-7,
            rel_tol: 1e-6,
            max_subdiv: 600,
            ..b.quad
        };
        let a = cx.i_ws(z, c(1.8, 0.0), s, 0.8, &tr, &q)?;
        let bb = cx.i_ws(z, c(1.8, 0.0), c(2.0, 0.0) - s, 0.8, &tr, &q)?;
        let rel = (a.value + bb.value).norm() / a.value.norm();
        Ok((rel, format!("I(s) {:+.5e}{:+.5e}i", a.value.re, a.value.im)))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "resolvent-family", r, 1e-3, d),
        Err(e) => CheckResult::failed(id, stmt, "resolvent-family", 1e-3, e),
    }
}

pub fn check_family_eigenfunction(cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "family-eigen";
    let stmt = "Delta_0 I_{w,s} = w(1-w) I_{w,s} at w = 1.6 by stencil";
    let run = || -> Result<(f64, String)> {
        let w = c(1.6, 0.0);
        let s = c(1.5, 0.0);
        let z = hp(0.3, 1.2);
        let tr = LatticeTruncation::new(b.r_family);
        let q = QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-7,
            max_subdiv: 600,
            ..b.quad
        };
        let f = |p: HalfPlanePoint| Ok(cx.i_ws(p, w, s, 1.0, &tr, &q)?.value);
        let h = 5e-3 * z.v();
        let lap = laplacian_stencil(0, &f, z, h)?;
        let base = f(z)?;
        let expect = w * (1.0 - w) * base;
        let rel = (lap - expect).norm() / expect.norm();
        Ok((
            rel,
            format!("stencil {:+.4e}{:+.4e}i vs w(1-w)I {:+.4e}{:+.4e}i", lap.re, lap.im, expect.re, expect.im),
        ))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "resolvent-family", r, 1e-2, d),
        Err(e) => CheckResult::failed(id, stmt, "resolvent-family", 1e-2, e),
    }
}

pub fn check_far_field_envelopes(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "far-field-env";
    let stmt = "far-field envelopes of cal G_w in both variables";
    // The envelope constants are not pinned analytically, so the check fits
    // them at the near point and verifies the far deviation respects the
    // stated exponential rate (slack 10x) plus the truncation noise.
    let run = || -> Result<(f64, String)> {
        let tr = LatticeTruncation::new((b.r_bridge + 40).max(100));
        let mut worst = 0.0f64;
        let mut note = Vec::new();
        // (1): z high against (2pi i/(2w-1)) y^{1-w} R_0 E_0(w;tau);
        // envelope rate e^{(π/2)(v+1/v−y)}
        let w = c(1.3, 0.0);
        let tau = hp(0.37, 0.9);
        let r0e0 = raise(
            0,
            |p| Ok(eval_e_real_analytic(0, w, p, &tr)?.value),
            tau,
            1e-3 * tau.v(),
            1e-2,
        )?;
        let dev_at = |yv: f64| -> Result<(f64, f64)> {
            let zh = hp(0.2, yv);
            let g = cal_gw(w, zh, tau, &tr)?;
            let model = c(0.0, 2.0 * PI) / (2.0 * w - 1.0) * yv.powf(1.0 - w.re) * r0e0;
            Ok(((g.value - model).norm(), g.err_est))
        };
        let (near, _) = dev_at(4.0)?;
        let (far, noise) = dev_at(6.0)?;
        let rate = (0.5 * PI * (4.0f64 - 6.0)).exp();
        let bound = 10.0 * rate * near + 4.0 * noise;
        worst = worst.max(far / bound);
        note.push(format!("y: {near:.2e} -> {far:.2e} (bound {bound:.2e})"));
        // (2): tau high against 2pi i (w-1)/(1-2w) v^{-w} E_0(w;z);
        // envelope rate e^{(π/4)(y+1/y−v)}
        let w2 = c(1.5, 0.0);
        let zl = hp(0.3, 1.2);
        let e0 = eval_e_real_analytic(0, w2, zl, &tr)?.value;
        let dev2_at = |vv: f64| -> Result<(f64, f64)> {
            let tauh = hp(0.1, vv);
            let g = cal_gw(w2, zl, tauh, &tr)?;
            let model = c(0.0, 2.0 * PI) * (w2 - 1.0) / (1.0 - 2.0 * w2) * vv.powf(-w2.re) * e0;
            Ok(((g.value - model).norm(), g.err_est))
        };
        let (near2, _) = dev2_at(4.0)?;
        let (far2, noise2) = dev2_at(6.0)?;
        let rate2 = (0.25 * PI * (4.0f64 - 6.0)).exp();
        let bound2 = 10.0 * rate2 * near2 + 4.0 * noise2;
        worst = worst.max(far2 / bound2);
        note.push(format!("v: {near2:.2e} -> {far2:.2e} (bound {bound2:.2e})"));
        Ok((worst, note.join("; ")))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "envelopes", r, 1.0, d),
        Err(e) => CheckResult::failed(id, stmt, "envelopes", 1.0, e),
    }
}

/// Eigenvalue of the weight-zero Laplacian on the lattice E₀ itself.
pub fn check_eisenstein_eigenvalue(_cx: &LzContext, b: &VerifyBudget) -> CheckResult {
    let id = "eisen-eigen";
    let stmt = "Delta_0 E_0(w;tau) = w(1-w) E_0(w;tau) by stencil";
    let run = || -> Result<(f64, String)> {
        let w = c(1.5, 0.0);
        let tau = hp(0.2, 1.3);
        let tr = LatticeTruncation::new((b.r_eisenstein / 2).max(100));
        let f = |p: HalfPlanePoint| Ok(eval_e_real_analytic(0, w, p, &tr)?.value);
        let lap = laplacian_stencil(0, &f, tau, 1e-3 * tau.v())?;
        let base = f(tau)?;
        let expect = w * (1.0 - w) * base;
        let rel = (lap - expect).norm() / expect.norm();
        Ok((rel, format!("eigenvalue check at w = {w}")))
    };
    match run() {
        Ok((r, d)) => CheckResult::measured(id, stmt, "eisenstein-asymptotics", r, 1e-4, d),
        Err(e) => CheckResult::failed(id, stmt, "eisenstein-asymptotics", 1e-4, e),
    }
}

type CheckFn = fn(&LzContext, &VerifyBudget) -> CheckResult;

/// Registry of every check with its suite key, in report order.
pub const REGISTRY: &[(&str, CheckFn)] = &[
    ("closed-form", check_le2_closed_form),
    ("t0-independence", check_t0_independence),
    ("functional-equation", check_functional_equation_le2),
    ("functional-equation", check_functional_equation_lz),
    ("invariance", check_invariance),
    ("harmonicity", check_harmonicity),
    ("limit", check_limit),
    ("resolvent-bridge", check_resolvent_bridge),
    ("residues", check_residue_le2),
    ("residues", check_residue_hz),
    ("residues", check_residue_calg),
    ("specfun-identities", check_gamma1f1_identity),
    ("specfun-identities", check_asymptotic_envelopes),
    ("specfun-identities", check_xi_symmetry),
    ("specfun-identities", check_zetap_series),
    ("specfun-identities", check_polylog_regularized_limit),
    ("eisenstein-asymptotics", check_second_coefficient),
    ("eisenstein-asymptotics", check_raising_identity),
    ("eisenstein-asymptotics", check_residue_e0),
    ("eisenstein-asymptotics", check_eisenstein_eigenvalue),
    ("resolvent-family", check_family_direct_integral),
    ("resolvent-family", check_family_eigenfunction),
    ("resolvent-family", check_family_functional_equation),
    ("envelopes", check_far_field_envelopes),
];

/// Run every check, or only those of one suite.
pub fn run_checks(cx: &LzContext, b: &VerifyBudget, suite: Option<&str>) -> Vec<CheckResult> {
    REGISTRY
        .iter()
        .filter(|(key, _)| suite.is_none() || suite == Some(*key))
        .map(|(_, f)| f(cx, b))
        .collect()
}

/// All checks in report order.
pub fn all_checks(cx: &LzContext, b: &VerifyBudget) -> Vec<CheckResult> {
    run_checks(cx, b, None)
}

/// The suites the CLI exposes.
pub const SUITES: &[&str] = &[
    "closed-form",
    "t0-independence",
    "functional-equation",
    "invariance",
    "harmonicity",
    "limit",
    "resolvent-bridge",
    "residues",
    "specfun-identities",
    "eisenstein-asymptotics",
    "resolvent-family",
    "envelopes",
];
