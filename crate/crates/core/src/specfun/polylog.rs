//! Polylogarithm on the unit circle: Li_ℓ(e^{2πix}) for integer ℓ ≥ 1 and
//! real x off the integers (the branch point Z = 1).

use crate::error::{MathError, Result};
use crate::eval::SeriesBudget;
use num_complex::Complex64;
use std::f64::consts::PI;

const BRANCH_TOL: f64 = 1e-9;

/// Li_ℓ(e^{2πix}). Li₁ is the closed form −Log(1 − Z); for ℓ ≥ 2 the series
/// Σ Z^n/n^ℓ is summed directly with the Abel tail bound
/// |Σ_{n>N} Z^n n^{−ℓ}| ≤ 2 (N+1)^{−ℓ} / |1−Z| deciding the cutoff.
pub fn polylog(ell: u32, x: f64) -> Result<Complex64> {
    polylog_with(ell, x, &SeriesBudget::default())
}

pub fn polylog_with(ell: u32, x: f64, budget: &SeriesBudget) -> Result<Complex64> {
    if ell < 1 {
        return Err(MathError::domain("polylog requires ell >= 1"));
    }
    if (x - x.round()).abs() < BRANCH_TOL {
        return Err(MathError::branch(format!(
            "polylog argument e^{{2πi·{x}}} on the branch point Z = 1"
        )));
    }
    let theta = 2.0 * PI * x;
    let z = Complex64::new(theta.cos(), theta.sin());
    if ell == 1 {
        // Li₁(Z) = −Log(1 − Z), principal branch.
        return Ok(-(Complex64::new(1.0, 0.0) - z).ln());
    }
    let gap = (Complex64::new(1.0, 0.0) - z).norm();
    // Choose N so the Abel bound meets the absolute tolerance.
    let n_req = (2.0 / (gap * budget.abs_tol)).powf(1.0 / ell as f64).ceil() as usize;
    let n = n_req.max(32);
    if n > budget.max_terms {
        return Err(MathError::accuracy(
            2.0 / (gap * (budget.max_terms as f64).powi(ell as i32)),
            budget.abs_tol,
            "polylog series budget exhausted",
        ));
    }
    // Z^n by recurrence with periodic re-anchoring to keep the phase exact.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        if k % 4096 == 0 {
            let ang = theta * k as f64;
            zn = Complex64::new(ang.cos(), ang.sin());
        } else {
            zn *= z;
        }
        sum += zn / (k as f64).powi(ell as i32);
    }
    Ok(sum)
}

/// The regularized limit on the left of the branch identity: partial sums of
/// Σ e^{−2πn(ix + εy)} / (n(1+ε))^ℓ for a fixed ε > 0. As ε → 0⁺ this tends
/// to Li_ℓ(e^{−2πix}).
pub fn polylog_regularized_sum(ell: u32, x: f64, y: f64, eps: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n = 1u64;
    loop {
        let damp = (-2.0 * PI * n as f64 * eps * y).exp();
        let phase = -2.0 * PI * n as f64 * x;
        let term = damp * Complex64::new(phase.cos(), phase.sin())
            / ((n as f64) * (1.0 + eps)).powi(ell as i32);
        sum += term;
        n += 1;
        if (damp < 1e-18 && n > 64) || n > 50_000_000 {
            break;
        }
        if ell >= 2 && n > 4_000_000 {
            break;
        }
    }
    sum
}
