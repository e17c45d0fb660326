//! Adaptive complex-valued quadrature on finite intervals: Gauss–Kronrod
//! 7–15 panels with bisection driven by the embedded error estimate.

use crate::error::{MathError, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;

/// Kronrod-15 abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
/// Embedded Gauss-7 weights (nodes XGK[1], XGK[3], XGK[5], centre).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error; sequence number breaks ties deterministically
        self.err
            .total_cmp(&other.err)
            .then(self.seq.cmp(&other.seq))
    }
}

#[derive(Debug, Clone)]
pub struct QuadOutcome {
    pub value: Complex64,
    pub err_est: f64,
    pub panels: usize,
    pub evals: usize,
}

fn gk15<F>(f: &mut F, a: f64, b: f64, seq: u64, evals: &mut usize) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut resk = Complex64::new(0.0, 0.0);
    let mut resg = Complex64::new(0.0, 0.0);
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fl, fr);
        if x == 0.0 {
            let fc = f(c)?;
            *evals += 1;
            resk += wk * fc;
            resg += WG[3] * fc;
            continue;
        } else {
            fl = f(c - h * x)?;
            fr = f(c + h * x)?;
            *evals += 2;
        }
        let pair = fl + fr;
        resk += wk * pair;
        if i % 2 == 1 {
            resg += WG[i / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: resk * h,
        err: (resk - resg).norm() * h,
        seq,
    })
}

/// Integrate f over [a, b] with panel bisection until the summed error
/// estimate meets max(abs_tol, rel_tol·|value|). `init_splits` seeds panel
/// boundaries (e.g. around a near-pole pass).
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
    init_splits: &[f64],
) -> Result<QuadOutcome>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if !(b > a) {
        return Err(MathError::domain(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    let mut evals = 0usize;
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();
    let mut edges: Vec<f64> = Vec::with_capacity(init_splits.len() + 2);
    edges.push(a);
    for &s in init_splits {
        if s > a && s < b {
            edges.push(s);
        }
    }
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    for w in edges.windows(2) {
        heap.push(gk15(&mut f, w[0], w[1], seq, &mut evals)?);
        seq += 1;
    }

    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let total_val: Complex64 = heap.iter().map(|p| p.value).sum();
        let target = abs_tol.max(rel_tol * total_val.norm());
        if total_err <= target {
            break;
        }
        if heap.len() >= max_panels {
            return Err(MathError::accuracy(
                total_err,
                target,
                format!("quadrature panel budget ({max_panels}) exhausted"),
            ));
        }
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating-point resolution; accept its estimate
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        heap.push(gk15(&mut f, worst.a, mid, seq, &mut evals)?);
        seq += 1;
        heap.push(gk15(&mut f, mid, worst.b, seq, &mut evals)?);
        seq += 1;
    }

    // Deterministic final summation: ascending panels, compensated.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut err_est = 0.0;
    for p in &panels {
        let y = p.value - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
        err_est += p.err;
    }
    Ok(QuadOutcome {
        value,
        err_est,
        panels: panels.len(),
        evals,
    })
}
