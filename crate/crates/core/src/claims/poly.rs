//! Real polynomials in ascending-coefficient form and sign-change root
//! isolation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Polynomial with real coefficients, `coefficients[i]` multiplying `x^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coefficients: Vec<f64>,
}

impl RealPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        Self { coefficients }
    }

    /// Build from descending coefficients, the way polynomials are usually written.
    pub fn from_descending(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().rev().copied().collect())
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coefficients.len() == 1 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }
}

/// A real root found by [`isolate_real_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    pub value: f64,
    /// `|p(value)|`.
    pub residual: f64,
    /// No sign change across the root (even multiplicity); located through
    /// the derivative instead.
    pub touching: bool,
}

/// Scan resolution of [`isolate_real_roots`].
pub const ISOLATION_STEPS: usize = 100_000;
/// Roots are refined to this width.
pub const ISOLATION_TOLERANCE: f64 = 1e-8;
const TOUCH_THRESHOLD: f64 = 1e-12;

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let lo_positive = f(lo) > 0.0;
    // Refine far past the reporting tolerance; stop when the midpoint stalls.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots of `p` in `[lo, hi]`.
///
/// Sign changes on a uniform grid of [`ISOLATION_STEPS`] intervals are
/// bisected; grid points where `|p| < 1e-12` is a local minimum without a
/// sign change are refined through a sign change of `p'` and reported as
/// touching roots. Roots closer than [`ISOLATION_TOLERANCE`] are merged.
pub fn isolate_real_roots(p: &RealPolynomial, lo: f64, hi: f64) -> Result<Vec<IsolatedRoot>> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(domain("root interval", format!("[{lo}, {hi}] is empty or not finite")));
    }
    let f = |x: f64| p.eval(x);
    let dp = p.derivative();
    let step = (hi - lo) / ISOLATION_STEPS as f64;
    let xs: Vec<f64> = (0..=ISOLATION_STEPS)
        .map(|i| if i == ISOLATION_STEPS { hi } else { lo + i as f64 * step })
        .collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut roots: Vec<IsolatedRoot> = Vec::new();
    let mut push = |value: f64, touching: bool| {
        if roots
            .last()
            .is_none_or(|r: &IsolatedRoot| (value - r.value).abs() > ISOLATION_TOLERANCE)
        {
            roots.push(IsolatedRoot {
                value,
                residual: f(value).abs(),
                touching,
            });
        }
    };

    for i in 0..xs.len() {
        let v = vs[i];
        if v == 0.0 {
            let touching = i > 0
                && i + 1 < xs.len()
                && vs[i - 1] != 0.0
                && (vs[i - 1] > 0.0) == (vs[i + 1] > 0.0);
            push(xs[i], touching);
            continue;
        }
        if i + 1 < xs.len() {
            let w = vs[i + 1];
            if w != 0.0 && (v > 0.0) != (w > 0.0) {
                push(bisect(f, xs[i], xs[i + 1]), false);
                continue;
            }
        }
        let interior = i > 0 && i + 1 < xs.len();
        if interior
            && v.abs() < TOUCH_THRESHOLD
            && v.abs() <= vs[i - 1].abs()
            && v.abs() <= vs[i + 1].abs()
            && (vs[i - 1] > 0.0) == (v > 0.0)
            && (vs[i + 1] > 0.0) == (v > 0.0)
        {
            let (a, b) = (xs[i - 1], xs[i + 1]);
            let (da, db) = (dp.eval(a), dp.eval(b));
            let x = if (da > 0.0) != (db > 0.0) {
                bisect(|x| dp.eval(x), a, b)
            } else {
                xs[i]
            };
            push(x, true);
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_and_derivative() {
        let p = RealPolynomial::from_descending(&[2.0, -3.0, 0.0, 5.0]); // 2x³ - 3x² + 5
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(2.0), 9.0);
        assert_eq!(p.derivative().coefficients(), &[0.0, -6.0, 6.0]);
        assert_eq!(RealPolynomial::new(vec![1.0, 0.0, 0.0]).degree(), 0);
        assert_eq!(RealPolynomial::new(vec![]).eval(3.0), 0.0);
    }

    #[test]
    fn simple_roots() {
        let p = RealPolynomial::new(vec![-1.0, 0.0, 1.0]);
        let roots = isolate_real_roots(&p, -2.0, 2.0).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value + 1.0).abs() < 1e-12);
        assert!((roots[1].value - 1.0).abs() < 1e-12);
        assert!(roots.iter().all(|r| !r.touching));
    }

    #[test]
    fn rootless_and_touching() {
        let p = RealPolynomial::new(vec![1.0, 0.0, 1.0]);
        assert!(isolate_real_roots(&p, -10.0, 10.0).unwrap().is_empty());

        // (x - c)² with c just off a grid point.
        let c = 0.3 + 3e-7;
        let p = RealPolynomial::new(vec![c * c, -2.0 * c, 1.0]);
        let roots = isolate_real_roots(&p, -1.0, 1.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].touching);
        assert!((roots[0].value - c).abs() < 1e-8);
    }

    #[test]
    fn root_on_grid_point() {
        let p = RealPolynomial::new(vec![0.0, 1.0]);
        let roots = isolate_real_roots(&p, -1.0, 1.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].value.abs() < 1e-15);
    }

    #[test]
    fn bad_interval() {
        let p = RealPolynomial::new(vec![1.0]);
        assert!(isolate_real_roots(&p, 1.0, 1.0).is_err());
        assert!(isolate_real_roots(&p, 0.0, f64::INFINITY).is_err());
    }
}
