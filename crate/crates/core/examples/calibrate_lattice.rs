//! Development probe: compare the corrected lattice sum for E_k(w;τ)
//! against the K-Bessel Fourier expansion and against large-R references,
//! to size the post-correction fluctuation model.

use lzfun::eisenstein::{eval_e_real_analytic, LatticeTruncation};
use lzfun::modforms::HalfPlanePoint;
use lzfun::resolvent::{cal_gw, gw_truncated};
use lzfun::specfun::{gamma, zeta};
use num_complex::Complex64;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// K_ν(x) by the cosh integral, Simpson.
fn bessel_k(nu: f64, x: f64) -> f64 {
    let t_max = ((745.0 / x).max(2.0)).acosh() + 2.0;
    let n = 20_000usize;
    let h = t_max / n as f64;
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut acc = f(0.0) + f(t_max);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    acc * h / 3.0
}

fn sigma_real(ell: f64, n: u64) -> f64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powf(ell)).sum()
}

/// Fourier expansion of E₀(w;τ) (weight 0):
/// v^w + φ(w)v^{1−w} + (4/θ(w)) √v Σ n^{w−1/2} σ_{1−2w}(n) K_{w−1/2}(2πnv) cos(2πnu)
/// with θ(w) = π^{−w}Γ(w)ζ(2w), φ(w) = θ(1−w)/θ(w).
fn e0_fourier(w: f64, u: f64, v: f64) -> f64 {
    let theta = |s: f64| PI.powf(-s) * gamma(c(s, 0.0)).unwrap().re * zeta(c(2.0 * s, 0.0)).unwrap().re;
    let th_w = theta(w);
    let phi = theta(1.0 - w) / th_w;
    let mut sum = 0.0;
    for n in 1..=30u64 {
        let kb = bessel_k(w - 0.5, 2.0 * PI * n as f64 * v);
        if kb == 0.0 {
            break;
        }
        sum += (n as f64).powf(w - 0.5)
            * sigma_real(1.0 - 2.0 * w, n)
            * kb
            * (2.0 * PI * n as f64 * u).cos();
    }
    v.powf(w) + phi * v.powf(1.0 - w) + 4.0 / th_w * v.sqrt() * sum
}

fn main() {
    println!("== E0(w; tau) corrected lattice vs Fourier oracle ==");
    for &(wv, u, v) in &[(2.5, 0.0, 1.0), (1.5, 0.0, 1.0), (1.5, 0.3, 1.2), (1.2, 0.1, 0.9)] {
        let oracle = e0_fourier(wv, u, v);
        let tau = HalfPlanePoint::new(u, v).unwrap();
        print!("w={wv} tau={u}+{v}i oracle={oracle:.12}");
        for r in [60u32, 120, 240, 480, 960] {
            let e = eval_e_real_analytic(0, c(wv, 0.0), tau, &LatticeTruncation::new(r)).unwrap();
            print!("  R{r}:d={:.2e}(est {:.1e})", (e.value.re - oracle).abs(), e.err_est);
        }
        println!();
    }

    println!("== resolvent G_w and cal G_w self-convergence ==");
    let z = HalfPlanePoint::new(0.1, 1.2).unwrap();
    let t = HalfPlanePoint::new(0.4, 0.9).unwrap();
    for &wv in &[2.0f64, 1.5, 1.25, 3.0] {
        let reference = gw_truncated(c(wv, 0.0), z, t, &LatticeTruncation::new(640)).unwrap();
        print!("G w={wv} ref={:.10}", reference.value.re);
        for r in [40u32, 60, 80, 120, 240] {
            let e = gw_truncated(c(wv, 0.0), z, t, &LatticeTruncation::new(r)).unwrap();
            print!("  R{r}:d={:.2e}(est {:.1e})", (e.value - reference.value).norm(), e.err_est);
        }
        println!();
        let reference = cal_gw(c(wv, 0.0), z, t, &LatticeTruncation::new(640)).unwrap();
        print!("calG w={wv} ref={:.6}+{:.6}i", reference.value.re, reference.value.im);
        for r in [40u32, 60, 80, 120, 240] {
            let e = cal_gw(c(wv, 0.0), z, t, &LatticeTruncation::new(r)).unwrap();
            print!("  R{r}:d={:.2e}(est {:.1e})", (e.value - reference.value).norm(), e.err_est);
        }
        println!();
    }

    println!("== E2(w; it) second-coefficient scale: need abs accuracy ~1e-8 at t=20 ==");
    let wv = 1.5;
    for &t in &[10.0f64, 15.0, 20.0] {
        let tau = HalfPlanePoint::new(0.0, t).unwrap();
        // reference: huge radius
        let reference = eval_e_real_analytic(2, c(wv, 0.0), tau, &LatticeTruncation::new(3000))
            .unwrap()
            .value;
        print!("t={t} ref={:.14e}", reference.re);
        for r in [150u32, 300, 600, 1200] {
            let e = eval_e_real_analytic(2, c(wv, 0.0), tau, &LatticeTruncation::new(r)).unwrap();
            print!("  R{r}:d={:.2e}(est {:.1e})", (e.value - reference).norm(), e.err_est);
        }
        println!();
        let b = -PI.sqrt() * wv * gamma(c(wv + 0.5, 0.0)).unwrap().re
            * zeta(c(2.0 * wv + 1.0, 0.0)).unwrap().re
            / (gamma(c(wv + 2.0, 0.0)).unwrap().re * zeta(c(2.0 * wv + 2.0, 0.0)).unwrap().re);
        println!(
            "   second-coeff target b={b:.8}, b*t^(-w-1)={:.3e}",
            b * t.powf(-wv - 1.0)
        );
    }
}
