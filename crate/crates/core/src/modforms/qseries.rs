//! Construction of the q-expansion coefficient tables: E₂, E₄, E₆, Δ, the
//! j-function numerator, and the combined weight-two series E₄²E₆/Δ used by
//! H_z. Integer parts are built exactly (i128), the divisions as f64 power
//! series.

use crate::error::{MathError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// σ_ℓ(n) for n = 1..=n_max by sieving, exact.
pub(crate) fn sigma_table(ell: u32, n_max: usize) -> Vec<i128> {
    let mut t = vec![0i128; n_max + 1];
    for d in 1..=n_max {
        let dp = (d as i128).pow(ell);
        let mut m = d;
        while m <= n_max {
            t[m] += dp;
            m += d;
        }
    }
    t
}

/// Eisenstein coefficient tables, exact: E₄ = 1 + 240 Σ σ₃(n) qⁿ, etc.
pub(crate) fn e4_int(n_max: usize) -> Vec<i128> {
    let s = sigma_table(3, n_max);
    let mut c = vec![0i128; n_max + 1];
    c[0] = 1;
    for n in 1..=n_max {
        c[n] = 240 * s[n];
    }
    c
}

pub(crate) fn e6_int(n_max: usize) -> Vec<i128> {
    let s = sigma_table(5, n_max);
    let mut c = vec![0i128; n_max + 1];
    c[0] = 1;
    for n in 1..=n_max {
        c[n] = -504 * s[n];
    }
    c
}

pub(crate) fn e2_int(n_max: usize) -> Vec<i128> {
    let s = sigma_table(1, n_max);
    let mut c = vec![0i128; n_max + 1];
    c[0] = 1;
    for n in 1..=n_max {
        c[n] = -24 * s[n];
    }
    c
}

/// Coefficients of Δ/q = Π (1−qⁿ)²⁴, exact.
pub(crate) fn delta_over_q_int(n_max: usize) -> Vec<i128> {
    let mut c = vec![0i128; n_max + 1];
    c[0] = 1;
    for n in 1..=n_max {
        for _ in 0..24 {
            for i in (n..=n_max).rev() {
                let prev = c[i - n];
                c[i] -= prev;
            }
        }
    }
    c
}

pub(crate) fn conv_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().min(b.len());
    let mut out = vec![0i128; n];
    for i in 0..n {
        for j in 0..=i {
            out[i] += a[j] * b[i - j];
        }
    }
    out
}

fn conv_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..=i {
            acc += a[j] * b[i - j];
        }
        out[i] = acc;
    }
    out
}

/// Reciprocal power series of a unit series u (u[0] = 1).
fn recip_series(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut r = vec![0.0; n];
    r[0] = 1.0;
    for i in 1..n {
        let mut acc = 0.0;
        for k in 1..=i {
            acc += u[k] * r[i - k];
        }
        r[i] = -acc;
    }
    r
}

/// Tail bound models for truncated q-expansions at q = e^{2πiτ}.
#[derive(Debug, Clone, Copy)]
pub enum TailBound {
    /// |c(n)| ≤ amp · n^pow (holomorphic forms of level one).
    Power { amp: f64, pow: f64 },
    /// |c(n)| ≤ amp · e^{4π√n} (pole of order one at i∞, e.g. q·j).
    SubExp { amp: f64 },
}

impl TailBound {
    /// Rigorous bound on |Σ_{n>N} c(n) qⁿ| for v ≥ v_min.
    pub fn tail(&self, n_trunc: usize, v: f64) -> Result<f64> {
        let m = (n_trunc + 1) as f64;
        match *self {
            TailBound::Power { amp, pow } => {
                let decay = 2.0 * PI * v - pow / m;
                if decay <= 0.0 {
                    return Err(MathError::accuracy(
                        f64::INFINITY,
                        0.0,
                        "power tail bound needs 2πv > p/(N+1)",
                    ));
                }
                Ok(amp * m.powf(pow) * (-2.0 * PI * v * m).exp() / (1.0 - (-decay).exp()))
            }
            TailBound::SubExp { amp } => {
                // e^{4π√n} ≤ e^{πnv} requires √n ≥ 4/v beyond the cutoff.
                if (m.sqrt()) * v < 4.0 {
                    return Err(MathError::accuracy(
                        f64::INFINITY,
                        0.0,
                        "sub-exponential tail bound needs √(N+1) ≥ 4/v",
                    ));
                }
                Ok(amp * (-PI * v * m).exp() / (1.0 - (-PI * v).exp()))
            }
        }
    }
}

/// Truncated q-expansion of a level-one form: weight, coefficients from
/// n = 0 to the truncation order, a rigorous tail bound model, and the
/// smallest v at which direct evaluation is allowed.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    pub weight: i32,
    pub coeffs: Vec<Complex64>,
    pub truncation_order: usize,
    pub tail: TailBound,
    pub v_min: f64,
}

impl FourierSeries {
    pub(crate) fn from_real(weight: i32, c: Vec<f64>, tail: TailBound, v_min: f64) -> Self {
        let truncation_order = c.len() - 1;
        FourierSeries {
            weight,
            coeffs: c.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            truncation_order,
            tail,
            v_min,
        }
    }

    /// Σ c(n) qⁿ at q = e^{2πiτ}; refuses v < v_min. Returns (value, tail).
    pub fn eval(&self, tau: Complex64) -> Result<(Complex64, f64)> {
        if tau.im < self.v_min {
            return Err(MathError::domain(format!(
                "series evaluation needs v >= {}, got v = {}",
                self.v_min, tau.im
            )));
        }
        let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        // Horner from the top keeps the sum compact and deterministic.
        for n in (0..=self.truncation_order).rev() {
            acc = acc * q + self.coeffs[n];
        }
        let tail = self.tail.tail(self.truncation_order, tau.im)?;
        Ok((acc, tail))
    }

    pub fn tail_bound(&self, v: f64) -> Result<f64> {
        if v < self.v_min {
            return Err(MathError::domain("tail bound valid only for v >= v_min"));
        }
        self.tail.tail(self.truncation_order, v)
    }
}

/// All coefficient tables the evaluator needs, built once.
pub(crate) struct Tables {
    pub e4: FourierSeries,
    pub e6: FourierSeries,
    pub e2: FourierSeries,
    /// Exact Δ coefficients τ(1), τ(2), …  (index n ↔ τ(n), so [0] unused).
    pub delta_tau: Vec<f64>,
    /// q·j = Σ c(n) qⁿ with c(0) = 1, c(1) = 744, c(2) = 196884, …
    pub jq: FourierSeries,
    /// q·E₄²E₆/Δ.
    pub hnumq: FourierSeries,
    /// Coefficients of (E₄²E₆/Δ − j): entry m ≥ 1 multiplies q^m; the
    /// constant term (index 0) already includes the +744 from −j.
    pub fjdiff: Vec<f64>,
}

pub(crate) fn build_tables(n_order: usize, v_min: f64) -> Tables {
    let e4i = e4_int(n_order);
    let e6i = e6_int(n_order);
    let e2i = e2_int(n_order);
    let dqi = delta_over_q_int(n_order);

    let e4f: Vec<f64> = e4i.iter().map(|&x| x as f64).collect();
    let e2f: Vec<f64> = e2i.iter().map(|&x| x as f64).collect();
    let e6f: Vec<f64> = e6i.iter().map(|&x| x as f64).collect();
    let dqf: Vec<f64> = dqi.iter().map(|&x| x as f64).collect();

    let recip = recip_series(&dqf);

    // Exact integer numerators:  E₄²E₆ (weight 14) and E₄³ (weight 12).
    let e4_sq = conv_i128(&e4i, &e4i);
    let e14: Vec<f64> = conv_i128(&e4_sq, &e6i).iter().map(|&x| x as f64).collect();
    let e4_cube: Vec<f64> = conv_i128(&e4_sq, &e4i).iter().map(|&x| x as f64).collect();

    let jq_c = conv_f64(&e4_cube, &recip);
    let hnumq_c = conv_f64(&e14, &recip);

    // Sub-exponential amplitude calibrated over the computed range with a
    // 4x safety factor; the shape e^{4π√n} is the classical growth of
    // coefficients of a form with a simple pole at i∞.
    let amp = |c: &[f64]| {
        let mut a: f64 = 1e-3;
        for (n, &cn) in c.iter().enumerate().skip(1) {
            a = a.max(cn.abs() / (4.0 * PI * (n as f64).sqrt()).exp());
        }
        4.0 * a
    };
    let jq_amp = amp(&jq_c);
    let hnum_amp = amp(&hnumq_c);

    // (F − J) where F = E₄²E₆/Δ and J = j − 744: the q⁰ coefficient of
    // F − j is 744 + (hnumq[1] − jq[1]) ≈ 0; stored exactly as computed.
    let mut fjdiff = vec![0.0; n_order];
    fjdiff[0] = 744.0 + (hnumq_c[1] - jq_c[1]);
    for m in 1..n_order {
        fjdiff[m] = hnumq_c[m + 1] - jq_c[m + 1];
    }

    Tables {
        e4: FourierSeries::from_real(
            4,
            e4f,
            TailBound::Power { amp: 240.0 * 1.21, pow: 3.0 },
            v_min,
        ),
        e6: FourierSeries::from_real(
            6,
            e6f,
            TailBound::Power { amp: 504.0 * 1.04, pow: 5.0 },
            v_min,
        ),
        e2: FourierSeries::from_real(2, e2f, TailBound::Power { amp: 24.0, pow: 2.0 }, v_min),
        delta_tau: {
            let mut t = vec![0.0; n_order + 2];
            for n in 1..=n_order + 1 {
                if n - 1 < dqf.len() {
                    t[n] = dqf[n - 1];
                }
            }
            t
        },
        jq: FourierSeries::from_real(0, jq_c, TailBound::SubExp { amp: jq_amp }, v_min),
        hnumq: FourierSeries::from_real(2, hnumq_c, TailBound::SubExp { amp: hnum_amp }, v_min),
        fjdiff,
    }
}
