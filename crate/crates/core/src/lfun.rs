//! The two L-function constructions and their asymptotics: the completed
//! Eisenstein L-function L(Ê₂,s) as a regularized Mellin transform, the
//! H_z-integrals 𝕁, the generalized L_z(s), the resolvent-path family
//! I_{w,s} and L_z(w,s₀;s), the polylogarithm correction coefficients
//! C_{ℓ,s}(x), and the y → ∞ limit experiment.

use crate::eisenstein::{eval_e_real_analytic, LatticeTruncation};
use crate::resolvent::cal_gw;
use crate::error::{MathError, Result};
use crate::eval::EvalResult;
use crate::modforms::{Forms, HalfPlanePoint};
use crate::quad::integrate;
use crate::specfun::{gamma, inc_gamma_upper, polylog, rising_factorial, zeta};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Split point, tolerances and truncation budgets for the Mellin-type
/// integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Split point t₀ > 0 between the two regularized ranges.
    pub t0: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdiv: usize,
    /// Upper truncation for ∫^∞; None derives it from the decay scale.
    pub tail_t: Option<f64>,
    /// Seed panel boundaries around the near-pole pass t ≈ Im z.
    pub near_pole_refine: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            t0: 1.0,
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_subdiv: 4000,
            tail_t: None,
            near_pole_refine: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0) || !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(MathError::domain(
                "QuadratureSpec needs t0 > 0 and positive tolerances",
            ));
        }
        if let Some(t) = self.tail_t {
            if t <= self.t0 {
                return Err(MathError::domain("tail_T must exceed t0"));
            }
        }
        Ok(())
    }
}

/// Which growth of H_z(it) is subtracted under the integral sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JBranch {
    /// 𝕁_{z,s,0}: integrand (H_z(it) + 1/t²) t^{s−1}.
    AtZero,
    /// 𝕁_{z,s,i∞}: integrand (H_z(it) − 1) t^{s−1}.
    AtInfinity,
}

/// Polylogarithm coefficients C_{ℓ,s}(x) of the y-power corrections.
#[derive(Debug, Clone)]
pub struct CorrectionCoefficients {
    pub s: Complex64,
    pub x: f64,
    /// Index ℓ = 0 ..= ⌊Re s⌋.
    pub c: Vec<Complex64>,
}

/// X_τ(z) = (z − τ)/(z − τ̄); strictly inside the unit disc for z, τ ∈ ℍ.
pub fn x_ratio(tau: Complex64, z: Complex64) -> Complex64 {
    (z - tau) / (z - tau.conj())
}

/// The radial weights r_z(τ)^{s₀} of the general integral family.
#[derive(Debug, Clone, Copy)]
pub struct GeneralizedWeights {
    pub s0: Complex64,
}

impl GeneralizedWeights {
    /// r_z(it) = |X_z(it)| < 1.
    pub fn r(z: Complex64, t: f64) -> f64 {
        x_ratio(z, Complex64::new(0.0, t)).norm()
    }

    /// r_z(it)^{s₀} · r_z(i/t)^{s₀}.
    pub fn weight(&self, z: Complex64, t: f64) -> Complex64 {
        let r1 = Self::r(z, t);
        let r2 = Self::r(z, 1.0 / t);
        (self.s0 * (r1.ln() + r2.ln())).exp()
    }
}

/// One rung of the limit experiment.
#[derive(Debug, Clone)]
pub struct LimitRow {
    pub y: f64,
    pub l_value: Complex64,
    /// R(y): L minus the subtracted y-powers.
    pub subtracted: Complex64,
}

/// Outcome of the y → ∞ limit experiment.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    pub exponents: (f64, f64),
    pub fitted_limit: Complex64,
    pub target: Complex64,
    pub rel_error: f64,
}

fn powc(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

fn is_near_int(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() < tol
}

const SIGMA_TABLE_LEN: usize = 512;

/// Evaluation context: the modular-form tables plus the σ₁ table used by
/// the Ê₂ integrands.
pub struct LzContext {
    pub forms: Forms,
    sigma1: Vec<f64>,
}

impl Default for LzContext {
    fn default() -> Self {
        LzContext::new(Forms::default())
    }
}

impl LzContext {
    pub fn new(forms: Forms) -> Self {
        let mut sigma1 = vec![0.0f64; SIGMA_TABLE_LEN + 1];
        for d in 1..=SIGMA_TABLE_LEN {
            let mut m = d;
            while m <= SIGMA_TABLE_LEN {
                sigma1[m] += d as f64;
                m += d;
            }
        }
        LzContext { forms, sigma1 }
    }

    /// φ(t) = Ê₂(it) − 1 + 3/(πt) = −24 Σ σ₁(n) e^{−2πnt}, the exponentially
    /// small regularized integrand.
    fn phi_e2hat(&self, t: f64) -> Result<Complex64> {
        if t < 0.05 {
            return Err(MathError::domain("phi_e2hat needs t >= 0.05"));
        }
        let n_terms = ((42.0 / (2.0 * PI * t)).ceil() as usize).clamp(4, SIGMA_TABLE_LEN);
        let mut acc = 0.0;
        for n in (1..=n_terms).rev() {
            acc += self.sigma1[n] * (-2.0 * PI * n as f64 * t).exp();
        }
        Ok(Complex64::new(-24.0 * acc, 0.0))
    }

    /// ∫_a^∞ φ(t) t^{σ−1} dt with the tail beyond T bounded analytically by
    /// |φ(t)| ≤ 24.2 e^{−2πt} for t ≥ 1.
    fn mellin_phi(&self, sigma: Complex64, a: f64, q: &QuadratureSpec) -> Result<EvalResult> {
        // pick T so the analytic tail sits well under the tolerance
        let mut t_up = a.max(3.0);
        let tail_at = |tt: f64| -> f64 {
            24.2 * (2.0 * PI).powf(-sigma.re)
                * inc_gamma_upper(Complex64::new(sigma.re, 0.0), 2.0 * PI * tt)
                    .map(|g| g.norm())
                    .unwrap_or(0.0)
        };
        let mut tail = tail_at(t_up);
        while tail > 0.05 * q.abs_tol && t_up < a + 40.0 {
            t_up += 1.0;
            tail = tail_at(t_up);
        }
        let out = integrate(
            |t| Ok(self.phi_e2hat(t)? * powc(t, sigma - 1.0)),
            a,
            t_up,
            0.5 * q.abs_tol,
            q.rel_tol,
            q.max_subdiv,
            &[],
        )?;
        let mut res = EvalResult::new(out.value, out.err_est + tail);
        res.note("mellin_phi_T", t_up);
        res.note("mellin_phi_panels", out.panels as f64);
        Ok(res)
    }

    /// Closed form −24 (2π)^{−s} Γ(s) ζ(s) ζ(s−1).
    pub fn l_e2hat_closed_form(&self, s: Complex64) -> Result<Complex64> {
        Ok(-24.0 * powc(2.0 * PI, -s) * gamma(s)? * zeta(s)? * zeta(s - 1.0)?)
    }

    /// L(Ê₂,s) by the regularized Mellin transform: the two subtracted
    /// integrals (the lower one folded by t ↦ 1/t and weight-two modularity
    /// into the upper form at s ↦ 2−s) plus the three boundary terms.
    pub fn l_e2hat(&self, s: Complex64, q: &QuadratureSpec) -> Result<EvalResult> {
        q.validate()?;
        for pole in [0.0, 1.0, 2.0] {
            if (s - pole).norm() < 1e-12 {
                return Err(MathError::pole(format!("L(E2hat, s) at s = {pole}")));
            }
        }
        let upper = self.mellin_phi(s, q.t0, q)?;
        let lower = self.mellin_phi(2.0 * Complex64::new(1.0, 0.0) - s, 1.0 / q.t0, q)?;
        let boundary = -powc(q.t0, s) / s - powc(q.t0, s - 2.0) / (s - 2.0)
            + 6.0 / PI * powc(q.t0, s - 1.0) / (s - 1.0);
        let value = upper.value - lower.value + boundary;
        let mut res = EvalResult::new(value, upper.err_est + lower.err_est);
        res.note("t0", q.t0);
        Ok(res)
    }

    fn check_off_singular_set(&self, z: HalfPlanePoint) -> Result<Complex64> {
        let d = self.forms.singular_set_distance(z)?;
        if d.distance_to_ray < 1e-6 * (1.0 + d.j_value.norm()) {
            return Err(MathError::SingularSet {
                distance: d.distance_to_ray,
            });
        }
        Ok(d.j_value)
    }

    /// 𝕁_{z,s,i∞}(y1, y2) = ∫ (H_z(it) − 1) t^{s−1} dt with y2 = ∞ allowed;
    /// the infinite tail is truncated at tail_T and bounded through
    /// |H_z(it) − 1| ≤ 2(746+|J(z)|) e^{−2πt}.
    fn j_inf(
        &self,
        j_z: Complex64,
        y_of_z: f64,
        s: Complex64,
        y1: f64,
        y2: f64,
        q: &QuadratureSpec,
    ) -> Result<EvalResult> {
        let jz_scale = 746.0 + j_z.norm();
        let auto_t = y_of_z + 3.0 + (1.0 + j_z.norm()).ln() / (2.0 * PI);
        let t_up = if y2.is_infinite() {
            q.tail_t.unwrap_or(auto_t).max(y1 + 1.0)
        } else {
            y2
        };
        let tail = if y2.is_infinite() {
            2.0 * jz_scale
                * (2.0 * PI).powf(-s.re)
                * inc_gamma_upper(Complex64::new(s.re, 0.0), 2.0 * PI * t_up)
                    .map(|g| g.norm())
                    .unwrap_or(0.0)
        } else {
            0.0
        };
        let mut splits = Vec::new();
        if q.near_pole_refine && y_of_z > y1 && y_of_z < t_up {
            splits.push(y_of_z);
            splits.push(y_of_z - 0.75);
            splits.push(y_of_z + 0.75);
        }
        let out = integrate(
            |t| {
                let tau = HalfPlanePoint::new(0.0, t)?;
                Ok(self.forms.h_minus_one(j_z, tau)? * powc(t, s - 1.0))
            },
            y1,
            t_up,
            0.5 * q.abs_tol,
            q.rel_tol,
            q.max_subdiv,
            &splits,
        )?;
        let mut res = EvalResult::new(out.value, out.err_est + tail);
        res.note("tail_T", t_up);
        res.note("panels", out.panels as f64);
        res.note("evals", out.evals as f64);
        Ok(res)
    }

    /// 𝕁_{z,s,0}(y1, y2) = ∫ (H_z(it) + 1/t²) t^{s−1} dt for finite
    /// 0 ≤ y1 < y2. The segment below t = 1 is folded by t ↦ 1/t and the
    /// weight-two modularity of H_z into a 𝕁_{i∞} integral at 2−s.
    fn j_zero(
        &self,
        j_z: Complex64,
        y_of_z: f64,
        s: Complex64,
        y1: f64,
        y2: f64,
        q: &QuadratureSpec,
    ) -> Result<EvalResult> {
        if y2.is_infinite() {
            return Err(MathError::domain(
                "J at the zero branch needs a finite upper limit",
            ));
        }
        let two = Complex64::new(2.0, 0.0);
        let mut total = EvalResult::new(Complex64::new(0.0, 0.0), 0.0);
        let cut = y2.min(1.0);
        if y1 < cut {
            // 𝕁_{z,s,0}(y1, cut) = −𝕁_{z,2−s,i∞}(1/cut, 1/y1)
            let upper = if y1 == 0.0 { f64::INFINITY } else { 1.0 / y1 };
            let flipped = self.j_inf(j_z, y_of_z, two - s, 1.0 / cut, upper, q)?;
            total.value -= flipped.value;
            total.err_est += flipped.err_est;
        }
        if y2 > 1.0 {
            let lo = y1.max(1.0);
            let mut splits = Vec::new();
            if q.near_pole_refine && y_of_z > lo && y_of_z < y2 {
                splits.push(y_of_z);
            }
            let out = integrate(
                |t| {
                    let tau = HalfPlanePoint::new(0.0, t)?;
                    let h_m1 = self.forms.h_minus_one(j_z, tau)?;
                    Ok((h_m1 + 1.0 + 1.0 / (t * t)) * powc(t, s - 1.0))
                },
                lo,
                y2,
                0.5 * q.abs_tol,
                q.rel_tol,
                q.max_subdiv,
                &splits,
            )?;
            total.value += out.value;
            total.err_est += out.err_est;
        }
        Ok(total)
    }

    /// The regularized H_z-integrals 𝕁_{z,s,0} / 𝕁_{z,s,i∞} over (y1, y2).
    pub fn j_integral(
        &self,
        z: HalfPlanePoint,
        s: Complex64,
        branch: JBranch,
        y1: f64,
        y2: f64,
        q: &QuadratureSpec,
    ) -> Result<EvalResult> {
        q.validate()?;
        if !(y1 >= 0.0) || !(y2 > y1) {
            return Err(MathError::domain("need 0 <= y1 < y2"));
        }
        let j_z = self.check_off_singular_set(z)?;
        match branch {
            JBranch::AtInfinity => self.j_inf(j_z, z.v(), s, y1, y2, q),
            JBranch::AtZero => self.j_zero(j_z, z.v(), s, y1, y2, q),
        }
    }

    /// L_z(s) through the H_z decomposition: 2πi L(Ê₂,s) − 2πi 𝕁_{z,s,0}(0,t₀)
    /// − 2πi 𝕁_{z,s,i∞}(t₀,∞) + 2πi t₀^s/s + 2πi t₀^{s−2}/(s−2).
    pub fn l_z(&self, z: HalfPlanePoint, s: Complex64, q: &QuadratureSpec) -> Result<EvalResult> {
        q.validate()?;
        for pole in [0.0, 2.0] {
            if (s - pole).norm() < 1e-12 {
                return Err(MathError::pole(format!("L_z at s = {pole}")));
            }
        }
        // s = 1 is excluded: the statement of the theorem family holds on
        // ℂ∖{1} and the boundary-term pair only cancels inside L(Ê₂,s).
        if (s - 1.0).norm() < 1e-12 {
            return Err(MathError::pole("L_z at s = 1 (excluded; evaluate at 1±δ)"));
        }
        let j_z = self.check_off_singular_set(z)?;
        let le2 = self.l_e2hat(s, q)?;
        let j0 = self.j_zero(j_z, z.v(), s, 0.0, q.t0, q)?;
        let jinf = self.j_inf(j_z, z.v(), s, q.t0, f64::INFINITY, q)?;
        let tpi = Complex64::new(0.0, 2.0 * PI);
        let boundary = powc(q.t0, s) / s + powc(q.t0, s - 2.0) / (s - 2.0);
        let value = tpi * (le2.value - j0.value - jinf.value + boundary);
        let err = 2.0 * PI * (le2.err_est + j0.err_est + jinf.err_est);
        let mut res = EvalResult::new(value, err);
        res.note("t0", q.t0);
        for (k, v) in jinf.diagnostics.iter() {
            res.note(&format!("jinf_{k}"), *v);
        }
        Ok(res)
    }

    /// The resolvent-path pieces 𝓘₁ + 𝓘₂ − 𝓔₁ − 𝓔₂ of I_{w,s}(z). At w = 1
    /// the boundary terms collapse and the evaluation re-routes to the H_z
    /// path (the two agree by the resolvent bridge).
    pub fn i_ws(
        &self,
        z: HalfPlanePoint,
        w: Complex64,
        s: Complex64,
        t0: f64,
        tr: &LatticeTruncation,
        q: &QuadratureSpec,
    ) -> Result<EvalResult> {
        if (w - 1.0).norm() < 1e-12 {
            let mut q1 = *q;
            q1.t0 = t0;
            return self.l_z(z, s, &q1);
        }
        for (bad, name) in [
            (Complex64::new(0.5, 0.0), "w = 1/2"),
            (s, "w = s"),
            (2.0 * Complex64::new(1.0, 0.0) - s, "w = 2-s"),
        ] {
            if (w - bad).norm() < 1e-9 {
                return Err(MathError::parameter(format!("excluded parameter {name}")));
            }
        }
        if w.re < 1.3 {
            return Err(MathError::parameter(
                "the truncated lattice path needs Re(w) >= 1.3",
            ));
        }
        let e0 = eval_e_real_analytic(0, w, z, tr)?;
        let kappa = Complex64::new(0.0, 2.0 * PI) * (w - 1.0) / (1.0 - 2.0 * w) * e0.value;
        let y = z.v();
        let t_far = y + 1.0 / y + 6.0;

        // Q(σ, a) = ∫_a^{T} (𝒢_w(z,it) − κ t^{−w}) t^{σ−1} dt + tail estimate
        let q_part = |sigma: Complex64, a: f64| -> Result<EvalResult> {
            let t_up = t_far.max(a + 1.0);
            let out = integrate(
                |t| {
                    let tau = HalfPlanePoint::new(0.0, t)?;
                    let g = cal_gw(w, z, tau, tr)?;
                    Ok((g.value - kappa * powc(t, -w)) * powc(t, sigma - 1.0))
                },
                a,
                t_up,
                q.abs_tol.max(1e-9),
                q.rel_tol.max(1e-7),
                q.max_subdiv,
                &[],
            )?;
            // beyond T the subtracted integrand decays like e^{−π(t−v−1/v)/4}
            let tau_up = HalfPlanePoint::new(0.0, t_up)?;
            let g_up = cal_gw(w, z, tau_up, tr)?;
            let rem = (g_up.value - kappa * powc(t_up, -w)).norm()
                * powc(t_up, sigma - 1.0).norm()
                * 4.0
                / PI;
            Ok(EvalResult::new(out.value, out.err_est + rem))
        };

        let i2 = q_part(s, t0)?;
        let i1_flipped = q_part(2.0 * Complex64::new(1.0, 0.0) - s, 1.0 / t0)?;
        let e1 = kappa * powc(t0, s + w - 2.0) / (s + w - 2.0);
        let e2 = kappa * powc(t0, s - w) / (s - w);
        let value = i2.value - i1_flipped.value - e1 - e2;
        // lattice truncation enters every 𝒢 sample; propagate one sample's
        // estimate across the integration measure
        let g_probe = cal_gw(w, z, HalfPlanePoint::new(0.0, t0.max(1.0))?, tr)?;
        let lattice_err = g_probe.err_est
            * (powc(t0, s).norm() + powc(t_far, s).norm() + t0.powf(2.0 - s.re));
        let err = i2.err_est + i1_flipped.err_est + 2.0 * PI * e0.err_est + lattice_err;
        let mut res = EvalResult::new(value, err);
        res.note("t_far", t_far);
        Ok(res)
    }

    /// L_z(w,s₀;s) = ∫₀^∞ 𝒢_w(z,it) r_z(it)^{s₀} r_z(i/t)^{s₀} t^{s−1} dt for
    /// Re(w) large, via the split 𝒥(s,t₀) − 𝒥(2−s,1/t₀).
    pub fn l_z_general(
        &self,
        z: HalfPlanePoint,
        w: Complex64,
        s0: Complex64,
        s: Complex64,
        tr: &LatticeTruncation,
        q: &QuadratureSpec,
    ) -> Result<EvalResult> {
        q.validate()?;
        if w.re < 2.5 {
            return Err(MathError::Convergence {
                tail_bound: f64::INFINITY,
                tolerance: q.abs_tol,
                radius: tr.radius,
            });
        }
        let sig_max = s.re.max(2.0 - s.re);
        if w.re < sig_max + 0.3 {
            return Err(MathError::Convergence {
                tail_bound: f64::INFINITY,
                tolerance: q.abs_tol,
                radius: tr.radius,
            });
        }
        // points on (the orbit of) the imaginary axis need Re(s0) large
        let d = self.forms.singular_set_distance(z)?;
        if d.distance_to_ray < 1e-6 * (1.0 + d.j_value.norm()) && s0.re < 2.0 {
            return Err(MathError::Convergence {
                tail_bound: f64::INFINITY,
                tolerance: q.abs_tol,
                radius: tr.radius,
            });
        }
        let zc = z.to_complex();
        let weights = GeneralizedWeights { s0 };
        let r_weight = |t: f64| weights.weight(zc, t);
        let t_far = (z.v() + 1.0 / z.v() + 8.0).max(14.0);
        // beyond T the kernel is κ t^{−w} up to an exponentially small
        // remainder, and the r-weights drift to 1 like 1 − c₁ s₀/t
        let e0 = eval_e_real_analytic(0, w, z, tr)?;
        let kappa = Complex64::new(0.0, 2.0 * PI) * (w - 1.0) / (1.0 - 2.0 * w) * e0.value;
        let c1 = 2.0 * z.v() * (1.0 + 1.0 / zc.norm_sqr());
        let j_piece = |sigma: Complex64, a: f64| -> Result<EvalResult> {
            let t_up = t_far.max(a + 1.0);
            let out = integrate(
                |t| {
                    let tau = HalfPlanePoint::new(0.0, t)?;
                    let g = cal_gw(w, z, tau, tr)?;
                    Ok(g.value * r_weight(t) * powc(t, sigma - 1.0))
                },
                a,
                t_up,
                q.abs_tol.max(1e-8),
                q.rel_tol.max(1e-6),
                q.max_subdiv,
                &[],
            )?;
            // analytic tail  κ ∫_T^∞ t^{σ−w−1}(1 − c₁ s₀/t) dt
            let tail_main = kappa
                * (powc(t_up, sigma - w) / (w - sigma)
                    - c1 * s0 * powc(t_up, sigma - w - 1.0) / (w - sigma + 1.0));
            // second-order weight drift + exponential kernel remainder
            let rem = kappa.norm() * (c1 * c1 * s0.norm() * s0.norm() + 1.0)
                * t_up.powf(sigma.re - w.re - 2.0)
                / (w.re - sigma.re + 2.0)
                + (cal_gw(w, z, HalfPlanePoint::new(0.0, t_up)?, tr)?.value
                    - kappa * powc(t_up, -w))
                .norm()
                    * t_up.powf(sigma.re)
                    * 4.0
                    / PI;
            Ok(EvalResult::new(out.value + tail_main, out.err_est + rem))
        };
        let a_part = j_piece(s, q.t0)?;
        let b_part = j_piece(2.0 * Complex64::new(1.0, 0.0) - s, 1.0 / q.t0)?;
        Ok(EvalResult::new(
            a_part.value - b_part.value,
            a_part.err_est + b_part.err_est,
        ))
    }

    /// C_{ℓ,s}(x) for ℓ = 0 ..= ⌊Re s⌋: C₀ = 2πi/s, and for ℓ ≥ 1 the
    /// polylogarithm-valued alternation between imaginary (odd) and real
    /// (even) parts.
    pub fn correction_coefficients(
        &self,
        s: Complex64,
        x: f64,
    ) -> Result<CorrectionCoefficients> {
        if is_near_int(x, 1e-9) {
            return Err(MathError::branch("C_{l,s}(x) needs x not an integer"));
        }
        let ell_max = s.re.floor().max(0.0) as u32;
        let mut c = vec![Complex64::new(0.0, 2.0 * PI) / s];
        for ell in 1..=ell_max {
            let li = polylog(ell, x)?;
            let rf = rising_factorial(Complex64::new(1.0, 0.0) - s, ell - 1);
            let scale = (2.0 * PI).powi(-(ell as i32));
            let coeff = if ell % 2 == 1 {
                -4.0 * PI * rf * scale * li.im
            } else {
                Complex64::new(0.0, 4.0 * PI) * rf * scale * li.re
            };
            c.push(coeff);
        }
        Ok(CorrectionCoefficients { s, x, c })
    }

    /// The Theorem-type limit: for each y in the ladder, subtract the
    /// y-power corrections from L_{x+iy}(s) and fit the residual against
    /// {1, y^{−α₁}, y^{−α₂}}; the constant extrapolates the limit, which is
    /// compared with −24i(2π)^{1−s}Γ(s)ζ(s)ζ(s−1).
    pub fn limit_experiment(
        &self,
        s: Complex64,
        x: f64,
        y_ladder: &[f64],
        q: &QuadratureSpec,
    ) -> Result<LimitReport> {
        if s.re < 1.0 {
            return Err(MathError::parameter("limit experiment needs Re(s) >= 1"));
        }
        if s.im == 0.0 && is_near_int(s.re, 1e-9) {
            return Err(MathError::parameter("limit experiment needs s not an integer"));
        }
        if is_near_int(x, 1e-9) {
            return Err(MathError::branch("limit experiment needs x not an integer"));
        }
        if y_ladder.len() < 3 {
            return Err(MathError::parameter("y ladder needs at least 3 rungs"));
        }
        if y_ladder.iter().any(|&y| y > 100.0) {
            return Err(MathError::overflow("y ladder capped at 100"));
        }
        let cs = self.correction_coefficients(s, x)?;
        let cs2 = self.correction_coefficients(2.0 * Complex64::new(1.0, 0.0) - s, x)?;
        let mut rows = Vec::with_capacity(y_ladder.len());
        for &y in y_ladder {
            let z = HalfPlanePoint::new(x, y)?;
            let l = self.l_z(z, s, q)?;
            let mut r = l.value;
            for (ell, cl) in cs.c.iter().enumerate() {
                r -= cl * powc(y, s - ell as f64);
            }
            for (ell, cl) in cs2.c.iter().enumerate() {
                r += cl * powc(y, 2.0 * Complex64::new(1.0, 0.0) - s - ell as f64);
            }
            rows.push(LimitRow {
                y,
                l_value: l.value,
                subtracted: r,
            });
        }

        // Residual-fit exponents from the proof's surviving error scales;
        // at Re(s) = 3/2 the two coincide and the basis degenerates to the
        // confluent pair {y^{−α}, y^{−α} ln y}.
        let a1 = (2.0 - s.re).min(s.re - 1.0).max(0.05);
        let a2 = (2.0 - s.re).max(s.re - 1.0);
        let confluent = (a2 - a1).abs() < 0.05;
        let basis = |y: f64| -> [f64; 3] {
            if confluent {
                [1.0, y.powf(-a1), y.powf(-a1) * y.ln()]
            } else {
                [1.0, y.powf(-a1), y.powf(-a2)]
            }
        };
        // least squares via normal equations (exact solve for 3 rungs)
        let mut ata = [[0.0f64; 3]; 3];
        let mut atb = [Complex64::new(0.0, 0.0); 3];
        for row in &rows {
            let b = basis(row.y);
            for i in 0..3 {
                for j in 0..3 {
                    ata[i][j] += b[i] * b[j];
                }
                atb[i] += b[i] * row.subtracted;
            }
        }
        let coeffs = solve3(ata, atb)?;
        let fitted_limit = coeffs[0];
        let target = Complex64::new(0.0, -24.0)
            * powc(2.0 * PI, 1.0 - s)
            * gamma(s)?
            * zeta(s)?
            * zeta(s - 1.0)?;
        // residuals must shrink along the ladder
        let mut prev = f64::INFINITY;
        for row in &rows {
            let dev = (row.subtracted - fitted_limit).norm();
            if dev > prev * 1.05 {
                return Err(MathError::fit("subtracted residuals not monotone in y"));
            }
            prev = dev;
        }
        let rel_error = (fitted_limit - target).norm() / target.norm();
        Ok(LimitReport {
            rows,
            exponents: (a1, a2),
            fitted_limit,
            target,
            rel_error,
        })
    }
}

/// Solve a real-symmetric 3×3 system with complex right-hand side.
fn solve3(a: [[f64; 3]; 3], b: [Complex64; 3]) -> Result<[Complex64; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det.abs() < 1e-300 {
        return Err(MathError::fit("singular fit basis"));
    }
    let inv = |r: usize, c: usize| -> f64 {
        let (r1, r2) = match r {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c1, c2) = match c {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1];
        let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
        sign * minor / det
    };
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        for j in 0..3 {
            // inverse transpose index order for the adjugate
            out[i] += inv(j, i) * b[j];
        }
    }
    Ok(out)
}
