//! Gauss–Legendre quadrature with node caching and interval doubling.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Nodes and weights of the order-`n` Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi-style initial guess for the i-th root (descending).
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p2, d2) = legendre_with_deriv(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrates `f` over `[a, b]` with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Value and derivative of the Legendre polynomial `P_n` at `x`.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule_cache() -> &'static Mutex<HashMap<usize, Arc<GaussLegendre>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared rule of order `n`, computed once per process.
pub fn rule(n: usize) -> Arc<GaussLegendre> {
    let mut cache = rule_cache().lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
        .clone()
}

/// Integrates by doubling the rule order from 64 until the relative change
/// between successive orders drops below `rel_tol`.
pub fn integrate_doubling<F: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    rel_tol: f64,
    max_order: usize,
    f: F,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut order = 64;
    let mut prev = rule(order).integrate(a, b, &f);
    while order < max_order {
        order *= 2;
        let cur = rule(order).integrate(a, b, &f);
        if (cur - prev).abs() <= rel_tol * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::numerical(format!(
        "quadrature did not reach relative tolerance {rel_tol} at order {max_order}"
    )))
}
