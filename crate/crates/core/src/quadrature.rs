//! Gauss–Legendre rules and a tensor-product integrator with dyadic
//! refinement.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::real::{CompensatedSum, Real};

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n`.
    ///
    /// # Panics
    /// If `n < 2`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            // Tricomi's initial guess, accurate to O(n^-4).
            let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            let mut dp = 0.0;
            for _ in 0..12 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[m - 1] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared, lazily built rule with `n` nodes.
    pub fn cached(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights affinely mapped onto `[a, b]`.
    pub fn mapped<T: Real>(&self, a: T, b: T) -> Vec<(T, T)> {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (mid + half * T::lit(x), half * T::lit(w)))
            .collect()
    }

    pub fn integrate<T: Real, F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let mut acc = CompensatedSum::new();
        for (x, w) in self.mapped(a, b) {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

/// Axis-aligned integration window `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub x: (T, T),
    pub y: (T, T),
}

/// Refinement schedule for [`integrate_2d_refined`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement<T> {
    pub initial_nodes: usize,
    /// Total number of levels, including the initial one.
    pub max_levels: usize,
    pub rel_tol: T,
}

impl<T: Real> Default for Refinement<T> {
    fn default() -> Self {
        Self {
            initial_nodes: 16,
            max_levels: 10,
            rel_tol: T::lit(1e-10).max(T::epsilon() * T::lit(64.0)),
        }
    }
}

/// Converged vector of integrals plus bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T, const K: usize> {
    pub values: [T; K],
    pub nodes_per_axis: usize,
    pub levels: usize,
}

/// One tensor-product Gauss–Legendre pass with `n` nodes per axis.
///
/// The summation order is fixed (outer `x`, inner `y`), so repeated calls
/// are bit-identical.
pub fn integrate_2d<T: Real, const K: usize, F>(rect: Rect<T>, n: usize, f: &F) -> [T; K]
where
    F: Fn(T, T) -> [T; K],
{
    let rule = GaussLegendre::cached(n);
    let xs = rule.mapped(rect.x.0, rect.x.1);
    let ys = rule.mapped(rect.y.0, rect.y.1);
    let mut outer = [CompensatedSum::<T>::new(); K];
    for &(x, wx) in &xs {
        let mut inner = [CompensatedSum::<T>::new(); K];
        for &(y, wy) in &ys {
            let v = f(x, y);
            for k in 0..K {
                inner[k].add(wy * v[k]);
            }
        }
        for k in 0..K {
            outer[k].add(wx * inner[k].value());
        }
    }
    outer.map(|s| s.value())
}

/// Integrates `K` functions at once, doubling the nodes per axis until every
/// component changes by less than `rel_tol` between successive levels.
pub fn integrate_2d_refined<T: Real, const K: usize, F>(
    rect: Rect<T>,
    refinement: Refinement<T>,
    f: F,
) -> Result<Estimate<T, K>>
where
    F: Fn(T, T) -> [T; K],
{
    let mut n = refinement.initial_nodes.max(2);
    let mut previous = integrate_2d(rect, n, &f);
    let mut last_change = f64::INFINITY;
    for level in 1..refinement.max_levels.max(1) {
        n *= 2;
        let current = integrate_2d(rect, n, &f);
        let converged = previous
            .iter()
            .zip(&current)
            .all(|(&a, &b)| a.rel_close(b, refinement.rel_tol));
        last_change = previous
            .iter()
            .zip(&current)
            .map(|(&a, &b)| {
                let scale = a.abs().max(b.abs());
                if scale > T::zero() {
                    ((a - b).abs() / scale).to_f64_lossy()
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max);
        if converged {
            return Ok(Estimate {
                values: current,
                nodes_per_axis: n,
                levels: level + 1,
            });
        }
        previous = current;
    }
    Err(Error::NonConvergence {
        levels: refinement.max_levels,
        nodes: n,
        last_change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in [2, 3, 7, 16, 64, 513, 2048] {
            let rule = GaussLegendre::new(n);
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n} sum={total}");
            for i in 0..n {
                assert_eq!(rule.nodes()[i], -rule.nodes()[n - 1 - i]);
            }
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(5);
        // x^9 odd, x^8 -> 2/9 on [-1,1]
        let odd = rule.integrate(-1.0, 1.0, |x: f64| x.powi(9));
        let even = rule.integrate(-1.0, 1.0, |x: f64| x.powi(8));
        assert!(odd.abs() < 1e-15);
        assert!((even - 2.0 / 9.0).abs() < 1e-15);
        let shifted = rule.integrate(1.0, 3.0, |x: f64| x * x);
        assert!((shifted - 26.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_window_integral() {
        let rule = GaussLegendre::new(64);
        let v = rule.integrate(-8.0, 8.0, |x: f64| (-x * x).exp());
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn refined_2d_gaussian_converges() {
        let rect = Rect {
            x: (-7.0, 7.0),
            y: (0.0, 7.0),
        };
        let est = integrate_2d_refined(rect, Refinement::default(), |x: f64, y: f64| {
            let g = (-x * x - y * y).exp();
            [g, y * g]
        })
        .unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((est.values[0] - sqrt_pi * sqrt_pi / 2.0).abs() < 1e-12);
        assert!((est.values[1] - sqrt_pi / 2.0).abs() < 1e-12);
        assert!(est.levels >= 2);
    }

    #[test]
    fn refinement_reports_non_convergence() {
        let rect = Rect {
            x: (0.0, 1.0),
            y: (0.0, 1.0),
        };
        let refinement = Refinement {
            initial_nodes: 2,
            max_levels: 3,
            rel_tol: 1e-14,
        };
        let err =
            integrate_2d_refined(rect, refinement, |x: f64, _| [(200.0 * x).sin()]).unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn zero_integrand_converges_immediately() {
        let rect = Rect {
            x: (0.0, 1.0),
            y: (0.0, 1.0),
        };
        let est = integrate_2d_refined(rect, Refinement::default(), |_, _| [0.0f64; 3]).unwrap();
        assert_eq!(est.values, [0.0; 3]);
        assert_eq!(est.levels, 2);
    }
}
