//! Closed-form tails `Σ_{k>n} w(k) r^{k-1}` of the coefficient-weighted
//! series that bound the discarded part of a section.
//!
//! Production code only ever uses the rational closed forms; [`tail_brute`]
//! is a plain truncated sum kept as an independent oracle.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Weight sequence of a tail.
///
/// | class               | `w(k)`               |
/// |---------------------|----------------------|
/// | `GeneralAnalytic`   | `k(k+1)(2k+1)/6`     |
/// | `GeneralCoAnalytic` | `k(k-1)(2k-1)/6`     |
/// | `ConvexAnalytic`    | `k(k+1)/2`           |
/// | `ConvexCoAnalytic`  | `k(k-1)/2`           |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailClass {
    GeneralAnalytic,
    GeneralCoAnalytic,
    ConvexAnalytic,
    ConvexCoAnalytic,
}

impl TailClass {
    pub const ALL: [TailClass; 4] = [
        TailClass::GeneralAnalytic,
        TailClass::GeneralCoAnalytic,
        TailClass::ConvexAnalytic,
        TailClass::ConvexCoAnalytic,
    ];

    /// Integer weight `w(k)`; zero at `k = 0`.
    pub fn weight(self, k: u64) -> u128 {
        let k = k as u128;
        match self {
            TailClass::GeneralAnalytic => k * (k + 1) * (2 * k + 1) / 6,
            TailClass::GeneralCoAnalytic if k == 0 => 0,
            TailClass::GeneralCoAnalytic => k * (k - 1) * (2 * k - 1) / 6,
            TailClass::ConvexAnalytic => k * (k + 1) / 2,
            TailClass::ConvexCoAnalytic if k == 0 => 0,
            TailClass::ConvexCoAnalytic => k * (k - 1) / 2,
        }
    }

    /// Coefficients `(c1, c2, c3)` with `w(k) = c1 k + c2 k² + c3 k³`.
    fn moment_coefficients(self) -> (f64, f64, f64) {
        match self {
            TailClass::GeneralAnalytic => (1.0 / 6.0, 0.5, 1.0 / 3.0),
            TailClass::GeneralCoAnalytic => (1.0 / 6.0, -0.5, 1.0 / 3.0),
            TailClass::ConvexAnalytic => (0.5, 0.5, 0.0),
            TailClass::ConvexCoAnalytic => (-0.5, 0.5, 0.0),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(domain("tail radius", format!("r = {r} is outside [0, 1)")))
    }
}

/// `Σ_{k=n+1}^∞ k r^{k-1} = r^n [1 + n(1-r)] / (1-r)²`.
pub fn tail_k(n: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let n_f = n as f64;
    let s = 1.0 - r;
    Ok(r.powi(n as i32) * (1.0 + n_f * s) / (s * s))
}

/// `Σ_{k=n+1}^∞ k² r^{k-1} = r^n [2 + (2n-1)(1-r) + n²(1-r)²] / (1-r)³`.
pub fn tail_k2(n: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let n_f = n as f64;
    let s = 1.0 - r;
    let bracket = 2.0 + (2.0 * n_f - 1.0) * s + n_f * n_f * s * s;
    Ok(r.powi(n as i32) * bracket / (s * s * s))
}

/// `Σ_{k=n+1}^∞ k³ r^{k-1}
///   = r^n [6 + (6n-6)(1-r) + (3n²-3n+1)(1-r)² + n³(1-r)³] / (1-r)⁴`.
pub fn tail_k3(n: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let n_f = n as f64;
    let s = 1.0 - r;
    let bracket = 6.0
        + (6.0 * n_f - 6.0) * s
        + (3.0 * n_f * n_f - 3.0 * n_f + 1.0) * s * s
        + n_f * n_f * n_f * s * s * s;
    Ok(r.powi(n as i32) * bracket / (s * s * s * s))
}

/// Tail `Σ_{k=n+1}^∞ w(k) r^{k-1}` of the class weight, assembled from the
/// three moment tails.
pub fn tail_weighted(class: TailClass, n: u32, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(domain("tail order", "n must be at least 1"));
    }
    check_radius(r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let (c1, c2, c3) = class.moment_coefficients();
    let mut total = c1 * tail_k(n, r)? + c2 * tail_k2(n, r)?;
    if c3 != 0.0 {
        total += c3 * tail_k3(n, r)?;
    }
    Ok(total)
}

/// Combined diagonal tail `R_n + T_n` of the general class in its displayed
/// form `r^n [12 + 12(n-1)(1-r) + 3(2n²-2n+1)(1-r)² + (2n³+n)(1-r)³] / (3(1-r)⁴)`.
pub fn combined_general_tail(n: u32, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(domain("tail order", "n must be at least 1"));
    }
    check_radius(r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let n_f = n as f64;
    let s = 1.0 - r;
    let bracket = 12.0
        + 12.0 * (n_f - 1.0) * s
        + 3.0 * (2.0 * n_f * n_f - 2.0 * n_f + 1.0) * s * s
        + (2.0 * n_f * n_f * n_f + n_f) * s * s * s;
    Ok(r.powi(n as i32) * bracket / (3.0 * s * s * s * s))
}

/// Truncated sum `Σ_{k=n+1}^{n+terms} w(k) r^{k-1}` (compensated summation).
///
/// Summation stops once `r^{k-1}` leaves the normal range: the remaining
/// terms are below `1e-290` and multiplying a subnormal power by `r` can
/// round back to itself, so it would never reach zero.
pub fn tail_brute(class: TailClass, n: u32, r: f64, terms: u64) -> Result<f64> {
    if terms < 1 {
        return Err(domain("tail terms", "at least one term is required"));
    }
    check_radius(r)?;
    let mut power = r.powi(n as i32);
    let mut sum = 0.0_f64;
    let mut compensation = 0.0_f64;
    let first = n as u64 + 1;
    for k in first..first + terms {
        if power < f64::MIN_POSITIVE {
            break;
        }
        let term = class.weight(k) as f64 * power;
        // Neumaier
        let t = sum + term;
        if sum.abs() >= term.abs() {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
        power *= r;
    }
    Ok(sum + compensation)
}
