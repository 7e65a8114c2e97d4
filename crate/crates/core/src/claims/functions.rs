//! Auxiliary functions from the asymptotic arguments.
//!
//! Substituting `r = 1 - x/n` into the diagonal radius conditions leads to
//! `t(x, n) < 1` (general classes, with `x = γ_n = 7 ln n - 4 ln ln n`) and
//! `T(x, n) < 1` (convex class, `x = β_n = 4 ln n - 2 ln ln n`). The
//! polynomials here are entered in the grouping in which they are usually
//! displayed, so a transcription slip shows up as an identity failure.
//!
//! Orders are taken as `f64` so that the limit checks can go far beyond the
//! range of machine integers.

use serde::{Deserialize, Serialize};

use super::poly::RealPolynomial;
use crate::error::{domain, Error, Result};

/// `γ_n = 7 ln n - 4 ln ln n`.
pub fn gamma_n(n: f64) -> f64 {
    let ln = n.ln();
    7.0 * ln - 4.0 * ln.ln()
}

/// `β_n = 4 ln n - 2 ln ln n`.
pub fn beta_n(n: f64) -> f64 {
    let ln = n.ln();
    4.0 * ln - 2.0 * ln.ln()
}

fn check_x_range(what: &'static str, x: f64, n: f64) -> Result<()> {
    if n >= 1.0 && x > 0.0 && x <= n {
        Ok(())
    } else {
        Err(domain(what, format!("need 0 < x <= n and n >= 1, got x = {x}, n = {n}")))
    }
}

/// `D(x, n) / n⁴` with `s = x/n`, where
/// `D = 16n⁴ - 32n³x + 28n²x² - 12nx³ + 3x⁴`.
fn denominator_scaled(s: f64) -> f64 {
    16.0 - 32.0 * s + 28.0 * s * s - 12.0 * s * s * s + 3.0 * s * s * s * s
}

/// `ln D(x, n)`, failing when `D <= 0`.
fn ln_denominator(x: f64, n: f64) -> Result<f64> {
    let d = denominator_scaled(x / n);
    if d > 0.0 {
        Ok(4.0 * n.ln() + d.ln())
    } else {
        Err(Error::Singularity {
            what: "16n^4 - 32n^3x + 28n^2x^2 - 12nx^3 + 3x^4",
            x,
            n,
        })
    }
}

/// `ln t(x, n)`; see [`t_general`].
pub fn ln_t_general(x: f64, n: f64) -> Result<f64> {
    check_x_range("t_general", x, n)?;
    // 12n⁴ + 12(n-1)xn³ + 3(2n²-2n+1)x²n² + (2n³+n)x³n, divided by n⁴.
    let inv = 1.0 / n;
    let numerator = 12.0
        + 12.0 * (1.0 - inv) * x
        + 3.0 * (2.0 - 2.0 * inv + inv * inv) * x * x
        + (2.0 + inv * inv) * x * x * x;
    Ok(-x + 7.0 * (n.ln() - x.ln()) + 9.0 * (2.0 - x / n).ln() + 4.0 * n.ln() + numerator.ln()
        - ln_denominator(x, n)?)
}

/// `t(x, n) = e^{-x} n⁷/x⁷ (2 - x/n)⁹ N(x, n) / D(x, n)` with
/// `N = 12n⁴ + 12(n-1)xn³ + 3(2n²-2n+1)x²n² + (2n³+n)x³n`.
///
/// Evaluated in log space; the formula is unchanged.
pub fn t_general(x: f64, n: f64) -> Result<f64> {
    ln_t_general(x, n).map(f64::exp)
}

/// Closed form of `t(n, n) = e^{-n}(2n³ + 6n² + 7n + 3)/3`.
pub fn t_general_at_n(n: f64) -> f64 {
    (-n).exp() * (((2.0 * n + 6.0) * n + 7.0) * n + 3.0) / 3.0
}

/// `q₁(x, n) = -(2n - x)⁸ e^{-x} / (x⁸ D(x, n)²)`.
pub fn q1(x: f64, n: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("q1", format!("x = {x} must be positive")));
    }
    let ln_mag = 8.0 * (2.0 * n - x).abs().ln() - x - 8.0 * x.ln() - 2.0 * ln_denominator(x, n)?;
    Ok(-ln_mag.exp())
}

/// `q₂(x, n)`, with `t'(x, n) = q₁(x, n) q₂(x, n)`, term by term as grouped.
pub fn q2(x: f64, n: f64) -> f64 {
    let n2 = n * n;
    let n3 = n2 * n;
    let n4 = n3 * n;
    let n5 = n4 * n;
    let n6 = n5 * n;
    let n7 = n6 * n;
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x3 * x;
    let x5 = x4 * x;
    let x6 = x5 * x;
    let x7 = x6 * x;
    let x8 = x7 * x;

    2688.0 * n7
        + 2688.0 * (n - 3.0) * n6 * x
        + 3.0 * (448.0 * n7 - 2368.0 * n6 + 3648.0 * n5 - x7) * x2
        + 64.0 * n4 * (7.0 * n3 - 48.0 * n2 + 137.0 * n - 132.0) * x3
        + 16.0 * n2 * (59.0 * n3 - 128.0 * n2 + 178.0 * n - 75.0) * x5
        + 2.0
            * n2
            * (32.0 * n5 - 80.0 * n4 * (6.0 + x) + 1672.0 * n3 - 4.0 * n2 * (774.0 + 13.0 * x3)
                + 2040.0 * n
                - 3.0 * x5)
            * x4
        + 2.0 * n * (88.0 * n4 - 240.0 * n3 + 434.0 * n2 - 390.0 * n + 81.0) * x6
        + 2.0 * n * (78.0 * n2 - 98.0 * n + 57.0) * x7
        + 6.0 * (6.0 * n3 - 2.0 * n2 + 6.0 * n - 1.0) * x8
}

/// The five polynomials in the substitution `x = n/k`, `k ∈ [1, 3]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QFamily {
    pub q: [RealPolynomial; 5],
}

impl QFamily {
    /// As stated. `Q₄` carries `+3` as its constant, which leaves
    /// `Q(k, n) - q₂(n/k, n) = 24 n¹⁰ / k⁸`.
    pub fn stated() -> Self {
        Self {
            q: [
                RealPolynomial::from_descending(&[112.0, -224.0, 204.0, -92.0, 27.0]).scale(6.0),
                RealPolynomial::from_descending(&[
                    1344.0, -3552.0, 4384.0, -3096.0, 1424.0, -390.0, 57.0, -3.0,
                ])
                .scale(2.0),
                RealPolynomial::from_descending(&[
                    1344.0, -3072.0, 3344.0, -2048.0, 868.0, -196.0, 36.0, -3.0,
                ]),
                RealPolynomial::from_descending(&[112.0, -240.0, 236.0, -120.0, 39.0, 3.0])
                    .scale(4.0),
                RealPolynomial::from_descending(&[32.0, -80.0, 88.0, -52.0, 18.0, -3.0]).scale(2.0),
            ],
        }
    }

    /// With the constant of `Q₄` corrected to `-3`, for which the
    /// decomposition reproduces `q₂(n/k, n)` exactly.
    pub fn corrected() -> Self {
        let mut family = Self::stated();
        family.q[3] =
            RealPolynomial::from_descending(&[112.0, -240.0, 236.0, -120.0, 39.0, -3.0]).scale(4.0);
        family
    }

    /// `Q(k, n) = n⁷(1-2k)²/k⁶ Q₁ + n⁸/k⁸ Q₂ + n⁹/k⁹ Q₃ + n¹⁰/k⁸ Q₄ + n¹¹/k⁹ Q₅`.
    pub fn assemble(&self, k: f64, n: f64) -> f64 {
        let [q1, q2, q3, q4, q5] = &self.q;
        let n7 = n.powi(7);
        let one_minus_2k = 1.0 - 2.0 * k;
        n7 * one_minus_2k * one_minus_2k / k.powi(6) * q1.eval(k)
            + n7 * n / k.powi(8) * q2.eval(k)
            + n7 * n * n / k.powi(9) * q3.eval(k)
            + n7 * n * n * n / k.powi(8) * q4.eval(k)
            + n7 * n * n * n * n / k.powi(9) * q5.eval(k)
    }
}

/// `Q(k, n)` assembled from the corrected family; equals `q₂(n/k, n)`.
pub fn q_decompose(k: f64, n: f64) -> Result<f64> {
    if !(1.0..=3.0).contains(&k) {
        return Err(domain("q_decompose", format!("k = {k} is outside [1, 3]")));
    }
    if n < 1.0 {
        return Err(domain("q_decompose", format!("n = {n} < 1")));
    }
    Ok(QFamily::corrected().assemble(k, n))
}

/// `ln T(x, n)`; see [`t_convex`].
pub fn ln_t_convex(x: f64, n: f64) -> Result<f64> {
    check_x_range("t_convex", x, n)?;
    let last = 2.0 + (2.0 - 1.0 / n) * x + x * x;
    Ok(-x + 4.0 * (n.ln() - x.ln()) + 3.0 * (2.0 - x / n).ln() + last.ln())
}

/// `T(x, n) = e^{-x} n⁴/x⁴ (2 - x/n)³ (2 + (2n-1)x/n + x²)`.
pub fn t_convex(x: f64, n: f64) -> Result<f64> {
    ln_t_convex(x, n).map(f64::exp)
}

/// Numerator of `T'(x, n) = numerator / (eˣ x⁵)`:
/// `-(2n - x)² [2n²(8 + 8x + 4x² + x³) - nx(8 + 4x + x² + x³) + x³]`.
pub fn t_convex_derivative_numerator(x: f64, n: f64) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    let d = 2.0 * n - x;
    -d * d * (2.0 * n * n * (8.0 + 8.0 * x + 4.0 * x2 + x3) - n * x * (8.0 + 4.0 * x + x2 + x3) + x3)
}

/// `T'(x, n)` from the closed-form derivative.
pub fn t_convex_derivative(x: f64, n: f64) -> Result<f64> {
    check_x_range("t_convex_derivative", x, n)?;
    Ok(t_convex_derivative_numerator(x, n) * (-x).exp() / x.powi(5))
}

/// `A(x) = ln x - ln ln x + (ln ln x)² / (4 ln x)`.
pub fn a_fn(x: f64) -> f64 {
    let ln = x.ln();
    let lnln = ln.ln();
    ln - lnln + lnln * lnln / (4.0 * ln)
}

/// `B(x) = ln x - (ln ln x)/2`.
pub fn b_fn(x: f64) -> f64 {
    let ln = x.ln();
    ln - 0.5 * ln.ln()
}

/// `C(x) = 2 - (ln ln x)/ln x`.
pub fn c_fn(x: f64) -> f64 {
    let ln = x.ln();
    2.0 - ln.ln() / ln
}

/// `A`, `B`, `C` at `n` and the split `T(β_n, n) = T₁ + T₂ + T₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbcBounds {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

pub fn abc_bounds(n: f64) -> Result<AbcBounds> {
    if n < 7.0 {
        return Err(domain("abc_bounds", format!("n = {n} < 7")));
    }
    let ln = n.ln();
    let beta = beta_n(n);
    let shrink = (1.0 - beta / (2.0 * n)).powi(3);
    let l2 = ln * ln;
    Ok(AbcBounds {
        a: a_fn(n),
        b: b_fn(n),
        c: c_fn(n),
        t1: 16.0 * l2 / beta.powi(4) * shrink,
        t2: 16.0 * l2 / beta.powi(3) * shrink * (1.0 - 1.0 / (2.0 * n)),
        t3: 8.0 * l2 / (beta * beta) * shrink,
    })
}
