//! The two hypergeometric evaluations the project needs:
//! ₁F₁(s; s+1; y) and ₂F₁(w, w; 2w; x) with its x-derivative.

use super::gamma::{digamma, gamma};
use crate::error::{MathError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Regime used to produce a ₁F₁ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyp1f1Regime {
    /// Kummer series (possibly after the e^y ⋅ ₁F₁(1; s+1; −y) transform).
    KummerSeries,
    /// Large-argument asymptotic expansion.
    Asymptotic,
}

const KUMMER_RADIUS: f64 = 40.0;
const MAX_TERMS: usize = 10_000;

fn kummer_direct(s: Complex64, y: Complex64) -> Result<Complex64> {
    // Σ_n [s/(s+n)] y^n / n!
    let mut pow = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0); // n = 0 term: s/s = 1
    for n in 1..MAX_TERMS {
        pow *= y / n as f64;
        let term = s / (s + n as f64) * pow;
        sum += term;
        if n as f64 > y.norm() && term.norm() < sum.norm() * 1e-17 {
            return Ok(sum);
        }
    }
    Err(MathError::accuracy(1.0, 1e-17, "Kummer series"))
}

/// ₁F₁(1; s+1; u) = Σ_n u^n / (s+1)_n, stable for Re(u) ≥ 0.
fn kummer_transformed(s: Complex64, y: Complex64) -> Result<Complex64> {
    let u = -y;
    if u.re > 700.0 {
        return Err(MathError::overflow("1F1 Kummer transform overflows"));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        term *= u / (s + 1.0 + n as f64);
        sum += term;
        if (n as f64) > u.norm() && term.norm() < sum.norm() * 1e-17 {
            return Ok(y.exp() * sum);
        }
    }
    Err(MathError::accuracy(1.0, 1e-17, "Kummer transformed series"))
}

/// Large-|y| expansion for Re(y) ≥ 0:
/// ₁F₁(s;s+1;y) = s e^y y^{−1} Σ_j (1−s)_j y^{−j} + Γ(s+1) e^{±iπs} y^{−s},
/// truncated at the smallest term. The second (algebraic) branch terminates
/// exactly because b − a = 1.
fn asymptotic(s: Complex64, y: Complex64, rel_tol: f64) -> Result<(Complex64, f64)> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut smallest = f64::INFINITY;
    for j in 1..200 {
        let next = term * (1.0 - s + (j - 1) as f64) / y;
        if next.norm() >= smallest {
            break;
        }
        term = next;
        smallest = term.norm();
        sum += term;
    }
    let main = s * y.exp() / y * sum;
    let sigma = if y.im >= 0.0 { 1.0 } else { -1.0 };
    let second = gamma(s + 1.0)? * (Complex64::new(0.0, sigma * PI) * s).exp() * (-s * y.ln()).exp();
    let value = main + second;
    let rel_err = smallest * (s * y.exp() / y).norm() / value.norm().max(1e-300);
    if rel_err > rel_tol {
        return Err(MathError::accuracy(rel_err, rel_tol, "1F1 asymptotic regime"));
    }
    Ok((value, rel_err))
}

/// ₁F₁(s; s+1; y) with the regime that produced it.
pub fn hyp1f1_s_splus1(s: Complex64, y: Complex64) -> Result<(Complex64, Hyp1f1Regime)> {
    if s.im.abs() < 1e-12 && s.re <= 0.0 && (s.re - s.re.round()).abs() < 1e-12 {
        return Err(MathError::pole("1F1 parameter s is a non-positive integer"));
    }
    if y.norm() == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), Hyp1f1Regime::KummerSeries));
    }
    if y.norm() <= KUMMER_RADIUS || y.re < 0.0 {
        let v = if y.re >= 0.0 {
            kummer_direct(s, y)?
        } else {
            kummer_transformed(s, y)?
        };
        Ok((v, Hyp1f1Regime::KummerSeries))
    } else {
        let (v, _) = asymptotic(s, y, 1e-10)?;
        Ok((v, Hyp1f1Regime::Asymptotic))
    }
}

const GAUSS_CONNECTION_SWITCH: f64 = 0.8;

/// ₂F₁(w, w; 2w; x) on 0 < x < 1. Power series up to x = 0.8, then the
/// degenerate (c = a + b) logarithmic connection formula at 1 − x.
pub fn hyp2f1_ww2w(w: Complex64, x: f64) -> Result<Complex64> {
    check_gauss_args(w, x)?;
    if x <= GAUSS_CONNECTION_SWITCH {
        gauss_series(w, x)
    } else {
        gauss_connection(w, x, false)
    }
}

/// d/dx ₂F₁(w, w; 2w; x) = (w²/(2w)) ₂F₁(w+1, w+1; 2w+1; x), evaluated by
/// the shifted series for x ≤ 0.8 and by differentiating the connection
/// formula term-by-term beyond.
pub fn hyp2f1_ww2w_dx(w: Complex64, x: f64) -> Result<Complex64> {
    check_gauss_args(w, x)?;
    if x <= GAUSS_CONNECTION_SWITCH {
        // (w^2 / 2w) * Σ_n (w+1)_n^2 / ((2w+1)_n n!) x^n
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            term *= (w + 1.0 + nf) * (w + 1.0 + nf) / ((2.0 * w + 1.0 + nf) * (nf + 1.0)) * x;
            sum += term;
            if term.norm() < sum.norm() * 1e-17 {
                return Ok(w * w / (2.0 * w) * sum);
            }
        }
        Err(MathError::accuracy(1.0, 1e-17, "2F1 derivative series"))
    } else {
        gauss_connection(w, x, true)
    }
}

fn check_gauss_args(w: Complex64, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(MathError::domain(format!(
            "2F1(w,w;2w;x) requires 0 < x < 1, got x = {x}"
        )));
    }
    if w.im.abs() < 1e-12 && w.re <= 0.0 && (w.re - w.re.round()).abs() < 1e-12 {
        return Err(MathError::pole("2F1 parameter w is a non-positive integer"));
    }
    Ok(())
}

fn gauss_series(w: Complex64, x: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (w + nf) * (w + nf) / ((2.0 * w + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() < sum.norm() * 1e-17 {
            return Ok(sum);
        }
    }
    Err(MathError::accuracy(1.0, 1e-17, "2F1 series"))
}

/// Connection at u = 1 − x for the c = a + b degenerate case:
/// ₂F₁(w,w;2w;x) = Γ(2w)/Γ(w)² Σ_n ρ_n [2ψ(n+1) − 2ψ(w+n) − ln u] u^n,
/// ρ_n = ((w)_n / n!)². `derivative` selects d/dx of the same expansion.
fn gauss_connection(w: Complex64, x: f64, derivative: bool) -> Result<Complex64> {
    let u = 1.0 - x;
    let lnu = u.ln();
    let prefactor = gamma(2.0 * w)? / (gamma(w)? * gamma(w)?);
    let psi_w0 = digamma(w)?;
    let mut rho = Complex64::new(1.0, 0.0);
    let mut psi_n1 = -0.5772156649015328606; // ψ(1)
    let mut psi_wn = psi_w0;
    let mut upow = 1.0f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let a_n = 2.0 * psi_n1 - 2.0 * psi_wn;
        let term = if derivative {
            rho * (1.0 - nf * (a_n - lnu)) * upow / u
        } else {
            rho * (a_n - lnu) * upow
        };
        sum += term;
        if n > 3 && term.norm() < sum.norm().max(1e-300) * 1e-17 {
            return Ok(prefactor * sum);
        }
        rho *= ((w + nf) / (nf + 1.0)) * ((w + nf) / (nf + 1.0));
        psi_n1 += 1.0 / (nf + 1.0);
        psi_wn += 1.0 / (w + nf);
        upow *= u;
    }
    Err(MathError::accuracy(1.0, 1e-17, "2F1 connection series"))
}
