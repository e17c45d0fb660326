//! Evaluation of the level-one forms: E₂, Ê₂, E₄, E₆, Δ, j, J, the
//! weight-two meromorphic form H_z and H_z* = H_z − Ê₂, plus the distance
//! to the singular set 𝒮.

use super::matrix::{reduce_to_fundamental_domain, UnimodularMatrix};
use super::point::HalfPlanePoint;
use super::qseries::{build_tables, Tables};
use crate::error::{MathError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// J(i) = j(i) − 744; left endpoint of the ray J(𝒮) = [984, ∞).
pub const J_AT_I: f64 = 984.0;

/// Complex division with prescaling: |b|² can overflow f64 when J-values
/// reach e^{2πy}, so both operands are normalized by max|b component| first.
fn div_safe(a: Complex64, b: Complex64) -> Complex64 {
    let sc = b.re.abs().max(b.im.abs());
    (a / sc) / (b / sc)
}

/// Arguments with 2πv beyond this would overflow e^{2πv} in f64.
const OVERFLOW_2PIV: f64 = 700.0;

/// Distance from J(z) to the real ray [J(i), ∞) and the J-value itself.
#[derive(Debug, Clone, Copy)]
pub struct SingularSetDistance {
    pub j_value: Complex64,
    pub distance_to_ray: f64,
}

/// Immutable q-expansion evaluator for the level-one modular forms.
///
/// Construction precomputes every coefficient table; all methods are pure,
/// so a single instance can be shared freely across threads.
pub struct Forms {
    tables: Tables,
    pub n_order: usize,
    pub v_min: f64,
    /// Tail-bound tolerance: evaluations whose truncation bound exceeds
    /// this are refused rather than silently degraded.
    pub abs_tol: f64,
    /// Relative floor for |J(τ) − J(z)| in H_z.
    pub pole_floor: f64,
}

impl Default for Forms {
    fn default() -> Self {
        Forms::new(80, 0.5, 1e-9)
    }
}

impl Forms {
    pub fn new(n_order: usize, v_min: f64, abs_tol: f64) -> Self {
        assert!(
            v_min > 0.0 && v_min * ((n_order + 1) as f64).sqrt() >= 4.0,
            "truncation too short for the sub-exponential tail bound at v_min"
        );
        Forms {
            tables: build_tables(n_order, v_min),
            n_order,
            v_min,
            abs_tol,
            pole_floor: 1e-8,
        }
    }

    fn guard_overflow(&self, v: f64) -> Result<()> {
        if 2.0 * PI * v > OVERFLOW_2PIV {
            return Err(MathError::overflow(format!(
                "2πv = {} exceeds the double-precision range of J",
                2.0 * PI * v
            )));
        }
        Ok(())
    }

    /// Evaluate a weight-k holomorphic series with fundamental-domain
    /// reduction below v_min, undoing the automorphy factor.
    fn eval_reduced<E>(&self, tau: Complex64, weight: i32, eval_direct: E) -> Result<Complex64>
    where
        E: Fn(Complex64) -> Result<Complex64>,
    {
        if tau.im >= self.v_min {
            eval_direct(tau)
        } else {
            let (red, gamma) = reduce_to_fundamental_domain(tau);
            self.guard_overflow(red.im)?;
            let val = eval_direct(red)?;
            let jf = gamma.j_factor(tau);
            Ok(jf.powi(-weight) * val)
        }
    }

    fn series_value(&self, series: &super::qseries::FourierSeries, tau: Complex64) -> Result<Complex64> {
        let (v, tail) = series.eval(tau)?;
        if tail > self.abs_tol {
            return Err(MathError::accuracy(tail, self.abs_tol, "q-series tail"));
        }
        Ok(v)
    }

    pub fn e4(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 4, |t| self.series_value(&self.tables.e4, t))
    }

    pub fn e6(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 6, |t| self.series_value(&self.tables.e6, t))
    }

    /// Harmonic weight-two Eisenstein series Ê₂ = E₂ − 3/(πv); genuinely
    /// weight-two modular, which the reduction path relies on.
    pub fn e2hat(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 2, |t| {
            let e2 = self.series_value(&self.tables.e2, t)?;
            Ok(e2 - 3.0 / (PI * t.im))
        })
    }

    /// Quasimodular E₂ recovered from Ê₂.
    pub fn e2(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        Ok(self.e2hat(tau)? + 3.0 / (PI * tau.v()))
    }

    /// Δ(τ) as q·Π(1−qⁿ)²⁴ evaluated in log space.
    pub fn delta(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 12, |t| {
            let q = (Complex64::new(0.0, 2.0 * PI) * t).exp();
            let mut log_prod = Complex64::new(0.0, 2.0 * PI) * t;
            let mut qn = Complex64::new(1.0, 0.0);
            for _ in 1..=self.n_order {
                qn *= q;
                log_prod += 24.0 * (Complex64::new(1.0, 0.0) - qn).ln();
            }
            // tail of 24 Σ_{n>N} ln(1−qⁿ)
            let qa = q.norm();
            let tail = 48.0 * qa.powi(self.n_order as i32 + 1) / (1.0 - qa);
            if tail > self.abs_tol {
                return Err(MathError::accuracy(tail, self.abs_tol, "Delta product tail"));
            }
            Ok(log_prod.exp())
        })
    }

    /// Klein j; weight zero, so reduction needs no automorphy factor.
    pub fn j(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 0, |t| {
            self.guard_overflow(t.im)?;
            let qinv = (Complex64::new(0.0, -2.0 * PI) * t).exp();
            Ok(qinv * self.series_value(&self.tables.jq, t)?)
        })
    }

    /// J = j − 744.
    pub fn jj(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        Ok(self.j(tau)? - 744.0)
    }

    /// The weight-two numerator E₄²E₆/Δ of H_z, via its own combined
    /// q-expansion.
    pub fn h_numerator(&self, tau: HalfPlanePoint) -> Result<Complex64> {
        self.eval_reduced(tau.to_complex(), 2, |t| {
            self.guard_overflow(t.im)?;
            let qinv = (Complex64::new(0.0, -2.0 * PI) * t).exp();
            Ok(qinv * self.series_value(&self.tables.hnumq, t)?)
        })
    }

    fn pole_gap(&self, j_tau: Complex64, j_z: Complex64) -> Result<Complex64> {
        let denom = j_tau - j_z;
        let floor = self.pole_floor * (1.0 + j_tau.norm() + j_z.norm());
        if denom.norm() < floor {
            return Err(MathError::PoleProximity {
                separation: denom.norm(),
                floor,
            });
        }
        Ok(denom)
    }

    /// H_z(τ) = [E₄²E₆/Δ](τ) / (J(τ) − J(z)).
    pub fn hz(&self, z: HalfPlanePoint, tau: HalfPlanePoint) -> Result<Complex64> {
        let j_z = self.jj(z)?;
        let j_tau = self.jj(tau)?;
        let denom = self.pole_gap(j_tau, j_z)?;
        Ok(div_safe(self.h_numerator(tau)?, denom))
    }

    /// H_z*(τ) = H_z(τ) − Ê₂(τ).
    pub fn hz_star(&self, z: HalfPlanePoint, tau: HalfPlanePoint) -> Result<Complex64> {
        Ok(self.hz(z, tau)? - self.e2hat(tau)?)
    }

    /// H_z(τ) − 1 without cancellation, using the combined series of
    /// E₄²E₆/Δ − j. Takes J(z) precomputed since integrands reuse it.
    /// Every intermediate is kept q-scaled, so arbitrarily large Im τ is
    /// fine as long as J(z) itself is representable.
    pub fn h_minus_one(&self, j_z: Complex64, tau: HalfPlanePoint) -> Result<Complex64> {
        let t = tau.to_complex();
        if t.im < 1.0 {
            // No cancellation risk this low; go through the plain route.
            let j_tau = self.jj(tau)?;
            let denom = self.pole_gap(j_tau, j_z)?;
            return Ok(div_safe(self.h_numerator(tau)?, denom) - 1.0);
        }
        let q = (Complex64::new(0.0, 2.0 * PI) * t).exp();
        let mut fj = Complex64::new(0.0, 0.0);
        for m in (0..self.tables.fjdiff.len()).rev() {
            fj = fj * q + self.tables.fjdiff[m];
        }
        // q·(J(τ) − J(z)) = Σ c(n) qⁿ − (744 + J(z)) q stays bounded.
        let (jq_val, _) = self.tables.jq.eval(t)?;
        let denom_scaled = jq_val - (744.0 + j_z) * q;
        let floor = self.pole_floor * (q.norm() + jq_val.norm() + q.norm() * j_z.norm());
        if denom_scaled.norm() < floor {
            return Err(MathError::PoleProximity {
                separation: denom_scaled.norm(),
                floor,
            });
        }
        Ok(div_safe(q * (fj + j_z), denom_scaled))
    }

    /// Distance of J(z) to the singular ray [984, ∞) ⊂ ℝ; zero flags z ∈ 𝒮.
    pub fn singular_set_distance(&self, z: HalfPlanePoint) -> Result<SingularSetDistance> {
        let j_value = self.jj(z)?;
        let distance_to_ray = if j_value.re >= J_AT_I {
            j_value.im.abs()
        } else {
            (j_value - J_AT_I).norm()
        };
        Ok(SingularSetDistance {
            j_value,
            distance_to_ray,
        })
    }

    /// Exact Ramanujan tau values τ(1), τ(2), … from the product expansion.
    pub fn delta_coefficient(&self, n: usize) -> f64 {
        self.tables.delta_tau[n]
    }
}

/// Weight-k slash operator (f|_k γ)(τ) = (cτ+d)^{−k} f(γτ).
pub fn slash<F>(f: F, k: i32, gamma: &UnimodularMatrix, tau: HalfPlanePoint) -> Result<Complex64>
where
    F: Fn(HalfPlanePoint) -> Result<Complex64>,
{
    let t = tau.to_complex();
    let jf = gamma.j_factor(t);
    let image = HalfPlanePoint::from_complex(gamma.apply(t))?;
    Ok(jf.powi(-k) * f(image)?)
}
