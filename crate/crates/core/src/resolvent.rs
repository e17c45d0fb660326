//! The automorphic Green's function G_w(z,τ) = Σ_{M ∈ PSL₂(ℤ)} g_w(Mz, τ),
//! its τ-raised weight-two companion 𝒢_w = (1/2i) R_{0,τ} G_w = ∂_τ G_w,
//! and the numerical verification of 𝒢₁ = −2πi H_z*.

use crate::error::{MathError, Result};
use crate::eval::EvalResult;
use crate::modforms::{Forms, HalfPlanePoint};
use crate::specfun::{gamma, hyp2f1_ww2w, hyp2f1_ww2w_dx};
use crate::eisenstein::LatticeTruncation;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Hyperbolic point-pair data: cosh d(z,τ) = 1 + |z−τ|²/(2vy) and the
/// kernel argument x = 2/(1+cosh d) ∈ (0,1], with x = 1 iff z = τ.
#[derive(Debug, Clone, Copy)]
pub struct HyperbolicDistanceData {
    pub cosh_d: f64,
    pub x_arg: f64,
}

pub fn hyperbolic_distance_data(z: Complex64, tau: Complex64) -> HyperbolicDistanceData {
    let cosh_d = 1.0 + (z - tau).norm_sqr() / (2.0 * z.im * tau.im);
    HyperbolicDistanceData {
        cosh_d,
        x_arg: 2.0 / (1.0 + cosh_d),
    }
}

/// Pole floor: terms with x beyond this are an orbit-proximity rejection.
const ORBIT_FLOOR: f64 = 1e-6;

/// One summand of the resolvent sum: the matrix, the kernel value at
/// (Mz, τ), and its closed-form τ-raising.
#[derive(Debug, Clone, Copy)]
pub struct PointPairKernelTerm {
    pub matrix: crate::modforms::UnimodularMatrix,
    pub value: Complex64,
    pub raised_value: Complex64,
}

/// Evaluate a single point-pair term and its raising for one group element.
pub fn kernel_term(
    w: Complex64,
    matrix: crate::modforms::UnimodularMatrix,
    z: HalfPlanePoint,
    tau: HalfPlanePoint,
) -> Result<PointPairKernelTerm> {
    let zp = matrix.apply(z.to_complex());
    let tc = tau.to_complex();
    let y0 = zp.im;
    let v = tau.v();
    let a2 = (zp - tc).norm_sqr();
    let cosh_d = 1.0 + a2 / (2.0 * y0 * v);
    let x = 2.0 / (1.0 + cosh_d);
    if x > 1.0 - ORBIT_FLOOR {
        return Err(MathError::OrbitProximity { x_arg: x });
    }
    let cw = gamma(w)? * gamma(w)? / gamma(2.0 * w)?;
    let xw = (w * x.ln()).exp();
    let f = hyp2f1_ww2w(w, x)?;
    let fp = hyp2f1_ww2w_dx(w, x)?;
    let value = -cw * xw * f;
    let dg_dx = -cw * (w * xw / x * f + xw * fp);
    let dcosh = -(zp - tc).conj() / (2.0 * y0 * v)
        + Complex64::new(0.0, 1.0) * a2 / (4.0 * y0 * v * v);
    let raised_value = dg_dx * (-(x * x / 2.0) * dcosh);
    Ok(PointPairKernelTerm {
        matrix,
        value,
        raised_value,
    })
}

/// Point-pair kernel g_w(z,τ) = −Γ(w)²/Γ(2w) x^w ₂F₁(w,w;2w;x).
pub fn gw(w: Complex64, z: HalfPlanePoint, tau: HalfPlanePoint) -> Result<Complex64> {
    if w.re < 1.0 {
        return Err(MathError::parameter("g_w needs Re(w) >= 1"));
    }
    let data = hyperbolic_distance_data(z.to_complex(), tau.to_complex());
    if data.x_arg >= 1.0 - 1e-14 {
        return Err(MathError::Singularity);
    }
    let cw = gamma(w)? * gamma(w)? / gamma(2.0 * w)?;
    let x = data.x_arg;
    Ok(-cw * (w * x.ln()).exp() * hyp2f1_ww2w(w, x)?)
}

/// One PSL₂(ℤ) coset row: bottom row (c,d) plus the T^m translate family.
struct Row {
    z0: Complex64, // M₀ z for the base matrix of this row
}

/// Smooth evaluation of ∫_e^∞ (t² + β²)^{−w_eff} dt for w_eff ∈ {w, w+1}:
/// binomial series in (β/e)² away from the peak, half-line constant minus a
/// Simpson integral near it. Smooth in (e, β), which keeps the resolvent
/// evaluator friendly to adaptive quadrature in τ.
struct TailKernels {
    w: Complex64,
    i0_w: Complex64,
    i0_w1: Complex64,
}

impl TailKernels {
    fn new(w: Complex64) -> Result<Self> {
        let g_half = gamma(w - 0.5)?;
        let g_w = gamma(w)?;
        let sqrt_pi = PI.sqrt();
        Ok(TailKernels {
            w,
            i0_w: 0.5 * sqrt_pi * g_half / g_w,
            i0_w1: 0.5 * sqrt_pi * (g_half * (w - 0.5)) / (g_w * w),
        })
    }

    fn half_int(&self, plus_one: bool, e: f64, delta: f64) -> Complex64 {
        let beta = delta.abs();
        let weff = if plus_one { self.w + 1.0 } else { self.w };
        let i0 = if plus_one { self.i0_w1 } else { self.i0_w };
        if e < 0.0 {
            let b = beta.max(1e-12);
            let full = 2.0 * i0 * ((1.0 - 2.0 * weff) * b.ln()).exp();
            return full - self.half_int(plus_one, -e, delta);
        }
        if e >= 1.6 * beta && e > 0.0 {
            let mut coef = Complex64::new(1.0, 0.0); // C(−w_eff, j)
            let mut acc = Complex64::new(0.0, 0.0);
            let ratio = beta * beta / (e * e);
            let mut pow = ((1.0 - 2.0 * weff) * e.ln()).exp(); // β^{2j} e^{1−2w−2j}
            for j in 0..34u32 {
                acc += coef * pow / (2.0 * weff - 1.0 + 2.0 * j as f64);
                coef *= (-weff - j as f64) / (j as f64 + 1.0);
                pow *= ratio;
            }
            return acc;
        }
        // e ∈ [0, 1.6β): β^{1−2w} (I₀ − ∫_0^{e/β} (1+u²)^{−w} du)
        let xi = e / beta;
        let n = 128usize;
        let h = xi / n as f64;
        let f = |u: f64| (-weff * (1.0 + u * u).ln()).exp();
        let mut acc = f(0.0) + f(xi);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        let partial = acc * h / 3.0;
        ((1.0 - 2.0 * weff) * beta.ln()).exp() * (i0 - partial)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// Shared engine for G_w and 𝒢_w: sums g_w(Mz, τ) (and, when `raised`,
/// ∂_τ g_w(Mz, τ)) over max(|a|,|b|,|c|,|d|) ≤ R, with per-row tail
/// corrections for the T^m families.
fn resolvent_sum(
    w: Complex64,
    z: HalfPlanePoint,
    tau: HalfPlanePoint,
    tr: &LatticeTruncation,
    raised: bool,
) -> Result<EvalResult> {
    if w.re <= 1.0 {
        return Err(MathError::parameter(
            "the truncated resolvent sum needs Re(w) > 1",
        ));
    }
    let zc = z.to_complex();
    let tc = tau.to_complex();
    let v = tau.v();
    let r = tr.radius as i64;
    let cw = gamma(w)? * gamma(w)? / gamma(2.0 * w)?;
    let kernels = TailKernels::new(w)?;

    let mut rows: Vec<Row> = Vec::new();
    // (c,d) = (0,1): tops (1, m)
    rows.push(Row { z0: zc });
    let mut row_bounds: Vec<(i64, i64)> = vec![(-r, r)];
    for c in 1..=r {
        for d in -r..=r {
            if gcd_u(c as u64, d.unsigned_abs()) != 1 {
                continue;
            }
            // a d − b c = 1
            let (g, x0, y0) = ext_gcd(d, -c);
            debug_assert_eq!(g.abs(), 1);
            let (a0, b0) = if g == 1 { (x0, y0) } else { (-x0, -y0) };
            debug_assert_eq!(a0 * d - b0 * c, 1);
            // m-window: |a0 + mc| ≤ R and |b0 + md| ≤ R
            let lo_a = (-r - a0) as f64 / c as f64;
            let hi_a = (r - a0) as f64 / c as f64;
            let (mut lo, mut hi) = (lo_a.ceil() as i64, hi_a.floor() as i64);
            if d != 0 {
                let (l2, h2) = if d > 0 {
                    ((-r - b0) as f64 / d as f64, (r - b0) as f64 / d as f64)
                } else {
                    ((r - b0) as f64 / d as f64, (-r - b0) as f64 / d as f64)
                };
                lo = lo.max(l2.ceil() as i64);
                hi = hi.min(h2.floor() as i64);
            }
            if lo > hi {
                continue;
            }
            let jf = c as f64 * zc + d as f64;
            let z0 = (a0 as f64 * zc + b0 as f64) / jf;
            rows.push(Row { z0 });
            row_bounds.push((lo, hi));
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let mut tail_corr = Complex64::new(0.0, 0.0);
    let i_unit = Complex64::new(0.0, 1.0);
    for (row, &(lo, hi)) in rows.iter().zip(row_bounds.iter()) {
        let y0 = row.z0.im;
        for m in lo..=hi {
            let zp = row.z0 + m as f64;
            let a2 = (zp - tc).norm_sqr();
            let cosh_d = 1.0 + a2 / (2.0 * y0 * v);
            let x = 2.0 / (1.0 + cosh_d);
            if x > 1.0 - ORBIT_FLOOR {
                return Err(MathError::OrbitProximity { x_arg: x });
            }
            let xw = (w * x.ln()).exp();
            let term = if !raised {
                -cw * xw * hyp2f1_ww2w(w, x)?
            } else {
                let f = hyp2f1_ww2w(w, x)?;
                let fp = hyp2f1_ww2w_dx(w, x)?;
                let dg_dx = -cw * (w * xw / x * f + xw * fp);
                let dcosh = -(zp - tc).conj() / (2.0 * y0 * v)
                    + i_unit * a2 / (4.0 * y0 * v * v);
                let dx = -(x * x / 2.0) * dcosh;
                dg_dx * dx
            };
            let yk = term - comp;
            let s = sum + yk;
            comp = (s - sum) - yk;
            sum = s;
            terms += 1;
        }
        // Translate tails. The leading small-x form of the term is
        //   g ≈ −c_w (4y₀v)^w A^{−w},
        //   ∂_τ g ≈ (c_w w/2)(4y₀v)^w [ i A^{−w}/v − 2 ((m+α) − iδ) A^{−w−1} ],
        // with A = (m+α)² + δ², δ = y₀ − v. A fixed-length extension in the
        // cheap leading form (fixed so the evaluator stays smooth in τ),
        // then Euler–Maclaurin-corrected integrals close the sums.
        let alpha = (row.z0 - tc).re;
        let delta = y0 - v;
        let four_y0v_w = (w * (4.0 * y0 * v).ln()).exp();
        let approx_term = |m: f64| -> Complex64 {
            let t_ma = m + alpha;
            let a2 = t_ma * t_ma + delta * delta;
            let am_w = (-w * a2.ln()).exp();
            if !raised {
                -cw * four_y0v_w * am_w
            } else {
                let conj_zp = Complex64::new(t_ma, -delta);
                cw * w * 0.5 * four_y0v_w * (i_unit * am_w / v - 2.0 * conj_zp * am_w / a2)
            }
        };
        const EXT: i64 = 16;
        for k in 1..=EXT {
            tail_corr += approx_term((hi + k) as f64) + approx_term((lo - k) as f64);
        }
        let e_plus = (hi + EXT) as f64 + 0.5 + alpha;
        let e_minus = -((lo - EXT) as f64) + 0.5 - alpha;
        let a_plus = e_plus * e_plus + delta * delta;
        let a_minus = e_minus * e_minus + delta * delta;
        if !raised {
            // Σ f(m) ≈ ∫_E^∞ f + f'(E)/24 with f = A^{−w}
            let side = |e: f64, a: f64| -> Complex64 {
                kernels.half_int(false, e, delta)
                    - 2.0 * w * e * (-(w + 1.0) * a.ln()).exp() / 24.0
            };
            tail_corr += -cw * four_y0v_w * (side(e_plus, a_plus) + side(e_minus, a_minus));
        } else {
            let p1 = |e: f64, a: f64| -> Complex64 {
                kernels.half_int(false, e, delta)
                    - 2.0 * w * e * (-(w + 1.0) * a.ln()).exp() / 24.0
            };
            let p3 = |e: f64, a: f64| -> Complex64 {
                kernels.half_int(true, e, delta)
                    - 2.0 * (w + 1.0) * e * (-(w + 2.0) * a.ln()).exp() / 24.0
            };
            // Σ t A^{−w−1} ≈ A(E)^{−w}/(2w) + g'(E)/24, g = t A^{−w−1}
            let p2 = |e: f64, a: f64| -> Complex64 {
                (-w * a.ln()).exp() / (2.0 * w)
                    + (-(w + 1.0) * a.ln()).exp() * (1.0 - 2.0 * (w + 1.0) * e * e / a) / 24.0
            };
            let p2_total = p2(e_plus, a_plus) - p2(e_minus, a_minus);
            tail_corr += cw
                * four_y0v_w
                * (i_unit * w / (2.0 * v) * (p1(e_plus, a_plus) + p1(e_minus, a_minus))
                    - w * p2_total
                    + i_unit * w * delta * (p3(e_plus, a_plus) + p3(e_minus, a_minus)));
        }
    }

    // Row-space correction: rows with max(|c|,|d|) > R contribute full
    // translate families whose small-x leading sums have the closed forms
    //   Σ_m g ≈ −c_w (4y₀v)^w v^{1−2w} √π Γ(w−½)/Γ(w),
    //   Σ_m ∂_τ g ≈ i c_w w (4y₀v)^w v^{−2w} √π [Γ(w−½)/(2Γ(w)) − Γ(w+½)/Γ(w+1)],
    // with y₀ = y/|cz+d|²; the remaining Σ|cz+d|^{−2w} over omitted rows is
    // replaced by the coprime-density continuum integral over the
    // complement of the max-norm ball.
    let y = z.v();
    let theta_n = 1024usize;
    let mut theta_int = Complex64::new(0.0, 0.0);
    for i in 0..theta_n {
        let th = 2.0 * PI * i as f64 / theta_n as f64;
        let dir = th.cos() * zc + th.sin();
        let eta = th.cos().abs().max(th.sin().abs());
        theta_int += (-w * dir.norm_sqr().ln() + (2.0 * w - 2.0) * eta.ln()).exp();
    }
    theta_int *= 2.0 * PI / theta_n as f64;
    let rr = tr.radius as f64;
    let zeta2 = PI * PI / 6.0;
    let geom = 0.5 / zeta2 * ((2.0 - 2.0 * w) * rr.ln()).exp() / (2.0 * w - 2.0) * theta_int;
    let g_half = gamma(w - 0.5)?;
    let g_w = gamma(w)?;
    let g_w1 = g_w * w; // Γ(w+1)
    let g_ph = g_half * (w - 0.5); // Γ(w+1/2)
    let pref = if !raised {
        -cw * (w * (4.0 * y * v).ln()).exp()
            * ((1.0 - 2.0 * w) * v.ln()).exp()
            * PI.sqrt()
            * (g_half / g_w)
    } else {
        Complex64::new(0.0, 1.0)
            * cw
            * w
            * (w * (4.0 * y * v).ln()).exp()
            * (-2.0 * w * v.ln()).exp()
            * PI.sqrt()
            * (g_half / (2.0 * g_w) - g_ph / g_w1)
    };
    let row_space_corr = pref * geom;

    let value = sum + tail_corr + row_space_corr;
    // Post-correction residual model, calibrated by self-convergence probes
    // over R ∈ [40, 640], w ∈ [1.25, 3] (observed residuals 5–50x below).
    let err_est = 4.0 * row_space_corr.norm() / rr + 0.02 * tail_corr.norm() / rr;
    if err_est > tr.abs_tol {
        return Err(MathError::Convergence {
            tail_bound: err_est,
            tolerance: tr.abs_tol,
            radius: tr.radius,
        });
    }
    let mut out = EvalResult::new(value, err_est);
    out.note("terms", terms as f64);
    out.note("rows", rows.len() as f64);
    out.note("m_tail_correction", tail_corr.norm());
    out.note("row_space_correction", row_space_corr.norm());
    Ok(out)
}

/// Truncated resolvent kernel G_w(z,τ).
pub fn gw_truncated(
    w: Complex64,
    z: HalfPlanePoint,
    tau: HalfPlanePoint,
    tr: &LatticeTruncation,
) -> Result<EvalResult> {
    resolvent_sum(w, z, tau, tr, false)
}

/// 𝒢_w(z,τ) = (1/2i) R_{0,τ} G_w(z,τ) = ∂_τ G_w(z,τ), with each term's
/// τ-derivative taken in closed form through the ₂F₁ contiguous relation.
pub fn cal_gw(
    w: Complex64,
    z: HalfPlanePoint,
    tau: HalfPlanePoint,
    tr: &LatticeTruncation,
) -> Result<EvalResult> {
    resolvent_sum(w, z, tau, tr, true)
}

/// Report of the w → 1 extrapolation of 𝒢_w against −2πi H_z*.
#[derive(Debug, Clone)]
pub struct ResolventBridgeReport {
    pub ladder: Vec<(f64, Complex64)>,
    pub extrapolated: Complex64,
    pub reference: Complex64,
    pub rel_deviation: f64,
}

/// Extrapolate 𝒢_w(z,τ) along the ladder to w = 1 and compare with
/// −2πi (H_z(τ) − Ê₂(τ)).
pub fn verify_resolvent_bridge(
    z: HalfPlanePoint,
    tau: HalfPlanePoint,
    w_ladder: &[f64],
    tr: &LatticeTruncation,
    forms: &Forms,
) -> Result<ResolventBridgeReport> {
    if w_ladder.len() < 2 {
        return Err(MathError::parameter("w ladder needs at least two rungs"));
    }
    let mut ladder = Vec::with_capacity(w_ladder.len());
    for &wv in w_ladder {
        let g = cal_gw(Complex64::new(wv, 0.0), z, tau, tr)?;
        ladder.push((wv, g.value));
    }
    let extrapolated = lagrange_at_zero(&ladder);
    let reference = Complex64::new(0.0, -2.0 * PI) * forms.hz_star(z, tau)?;
    let rel_deviation = (extrapolated - reference).norm() / reference.norm();
    Ok(ResolventBridgeReport {
        ladder,
        extrapolated,
        reference,
        rel_deviation,
    })
}

/// Lagrange extrapolation of (w, f(w)) samples to w = 1 in the variable
/// δ = w − 1.
pub fn lagrange_at_zero(samples: &[(f64, Complex64)]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &(wi, fi)) in samples.iter().enumerate() {
        let di = wi - 1.0;
        let mut li = 1.0;
        for (j, &(wj, _)) in samples.iter().enumerate() {
            if i != j {
                let dj = wj - 1.0;
                li *= -dj / (di - dj);
            }
        }
        acc += li * fi;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(u: f64, v: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(u, v).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_symmetric_in_z_tau() {
        let w = c(1.7, 0.3);
        let z = hp(0.2, 1.4);
        let t = hp(-0.3, 0.8);
        let a = gw(w, z, t).unwrap();
        let b = gw(w, t, z).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn kernel_w1_is_log() {
        // g₁ = log(1−x)
        let z = hp(0.1, 1.1);
        let t = hp(0.4, 0.9);
        let x = hyperbolic_distance_data(z.to_complex(), t.to_complex()).x_arg;
        let g = gw(c(1.0, 0.0), z, t).unwrap();
        assert!((g.re - (1.0 - x).ln()).abs() < 1e-12 && g.im.abs() < 1e-13);
    }

    #[test]
    fn kernel_decays_far_apart() {
        let w = c(1.5, 0.0);
        let z = hp(0.0, 40.0);
        let t = hp(0.0, 1.0);
        let g = gw(w, z, t).unwrap();
        let x = hyperbolic_distance_data(z.to_complex(), t.to_complex()).x_arg;
        // leading term −c_w x^w dominates
        assert!(g.norm() < 2.0 * x.powf(1.5));
    }

    #[test]
    fn kernel_rejects_coincident_points() {
        let z = hp(0.25, 1.3);
        assert!(matches!(gw(c(1.5, 0.0), z, z), Err(MathError::Singularity)));
    }

    #[test]
    fn distance_data_invariants() {
        let z = c(0.3, 1.7);
        let t = c(-0.2, 0.6);
        let d = hyperbolic_distance_data(z, t);
        assert!(d.cosh_d >= 1.0);
        assert!(d.x_arg > 0.0 && d.x_arg <= 1.0);
        let same = hyperbolic_distance_data(z, z);
        assert_eq!(same.x_arg, 1.0);
    }

    #[test]
    fn raised_term_matches_finite_difference() {
        // One-matrix check of the closed-form ∂_τ g_w against central
        // differences in u and v of τ.
        let w = c(1.8, 0.0);
        let z = hp(0.15, 1.25);
        let t = hp(0.37, 0.91);
        let h = 1e-5;
        let g = |tt: HalfPlanePoint| gw(w, z, tt).unwrap();
        let fu = (g(hp(t.u() + h, t.v())) - g(hp(t.u() - h, t.v()))) / (2.0 * h);
        let fv = (g(hp(t.u(), t.v() + h)) - g(hp(t.u(), t.v() - h))) / (2.0 * h);
        let fd = 0.5 * (fu - Complex64::new(0.0, 1.0) * fv); // ∂_τ
        let term = kernel_term(w, crate::modforms::UnimodularMatrix::IDENTITY, z, t).unwrap();
        assert!(
            (fd - term.raised_value).norm() / term.raised_value.norm() < 1e-7,
            "fd {fd} vs closed {}",
            term.raised_value
        );
        assert!((term.value - gw(w, z, t).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn kernel_term_for_nontrivial_matrix() {
        let w = c(2.0, 0.0);
        let z = hp(0.15, 1.25);
        let t = hp(0.37, 0.91);
        let m = crate::modforms::UnimodularMatrix::new(2, 1, 1, 1).unwrap();
        let term = kernel_term(w, m, z, t).unwrap();
        let moved = HalfPlanePoint::from_complex(m.apply(z.to_complex())).unwrap();
        assert!((term.value - gw(w, moved, t).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn truncated_sum_invariant_under_group() {
        let w = c(2.0, 0.0);
        let z = hp(0.1, 1.2);
        let t = hp(0.4, 0.9);
        let tr = LatticeTruncation::new(40);
        let base = gw_truncated(w, z, t, &tr).unwrap();
        for gamma in [crate::modforms::UnimodularMatrix::S, crate::modforms::UnimodularMatrix::T] {
            let moved = gw_truncated(w, gamma.apply_point(z), t, &tr).unwrap();
            let resid = (moved.value - base.value).norm();
            assert!(
                resid <= base.err_est + moved.err_est + 1e-9,
                "γ = {gamma}: residual {resid}, err {} {}",
                base.err_est,
                moved.err_est
            );
        }
    }

    #[test]
    fn truncated_sum_symmetric() {
        let w = c(2.0, 0.0);
        let z = hp(0.1, 1.2);
        let t = hp(0.4, 0.9);
        let tr = LatticeTruncation::new(40);
        let a = gw_truncated(w, z, t, &tr).unwrap();
        let b = gw_truncated(w, t, z, &tr).unwrap();
        assert!(
            (a.value - b.value).norm() <= a.err_est + b.err_est + 1e-9,
            "{} vs {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn self_convergence_at_w2() {
        let w = c(2.0, 0.0);
        let z = hp(0.1, 1.2);
        let t = hp(0.4, 0.9);
        let a = gw_truncated(w, z, t, &LatticeTruncation::new(60)).unwrap();
        let b = gw_truncated(w, z, t, &LatticeTruncation::new(120)).unwrap();
        assert!(
            (a.value - b.value).norm() < 1e-4,
            "drift {}",
            (a.value - b.value).norm()
        );
    }

    #[test]
    fn orbit_proximity_detected() {
        // z in the orbit of τ: the identity translate hits the pole floor.
        let z = hp(0.3, 1.1);
        let t = hp(0.3 + 1e-9, 1.1);
        assert!(matches!(
            gw_truncated(c(1.5, 0.0), z, t, &LatticeTruncation::new(10)),
            Err(MathError::OrbitProximity { .. })
        ));
    }
}
