//! Evaluation results with propagated error estimates and diagnostics.

use num_complex::Complex64;
use std::collections::BTreeMap;

/// A computed complex value together with an honest error estimate and
/// run diagnostics (subdivision counts, truncation radii, regime switches).
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: Complex64,
    /// Absolute error estimate built from quadrature remainders and series
    /// tail bounds. Always ≥ 0.
    pub err_est: f64,
    pub diagnostics: BTreeMap<String, f64>,
}

impl EvalResult {
    pub fn new(value: Complex64, err_est: f64) -> Self {
        EvalResult {
            value,
            err_est: err_est.abs(),
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, v: f64) -> Self {
        self.diagnostics.insert(key.to_string(), v);
        self
    }

    pub fn note(&mut self, key: &str, v: f64) {
        self.diagnostics.insert(key.to_string(), v);
    }

    /// Combine two results linearly: a*self + b*other, errors added.
    pub fn linear(&self, a: Complex64, other: &EvalResult, b: Complex64) -> EvalResult {
        EvalResult::new(
            a * self.value + b * other.value,
            a.norm() * self.err_est + b.norm() * other.err_est,
        )
    }
}

/// Budget for a truncated series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesBudget {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl SeriesBudget {
    pub fn new(max_terms: usize, abs_tol: f64, rel_tol: f64) -> Self {
        assert!(max_terms >= 1, "max_terms must be >= 1");
        assert!(abs_tol > 0.0 && rel_tol > 0.0, "tolerances must be > 0");
        SeriesBudget {
            max_terms,
            abs_tol,
            rel_tol,
        }
    }
}

impl Default for SeriesBudget {
    fn default() -> Self {
        SeriesBudget {
            max_terms: 1 << 22,
            abs_tol: 1e-11,
            rel_tol: 1e-11,
        }
    }
}
