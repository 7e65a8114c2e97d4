//! Radius functions ψ (general subclasses) and μ (convex class), their
//! unique root in `(0, 1)`, and the asymptotic bounds derived from them.
//!
//! A section `s_{n,m}(f)` is univalent in `|z| < r` whenever the two-point
//! distortion lower bound of the class exceeds the sum of the discarded
//! coefficient tails, i.e. whenever `ψ(n, m, r) > 0` (resp. `μ > 0`).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::series::{combined_general_tail, tail_k2, tail_weighted, TailClass};

/// Scan step used to bracket the root.
pub const SCAN_STEP: f64 = 1e-3;
/// Bisection stops once the bracket is at most this wide.
pub const BRACKET_WIDTH: f64 = 1e-12;
/// Upper cap on the order searched by [`threshold_n`].
pub const THRESHOLD_CAP: u32 = 10_000;

/// Geometric subclass governing coefficient bounds and distortion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyClass {
    /// Starlike, close-to-convex, convex in one direction, or `S⁰_H(S)`.
    General,
    /// Convex range.
    Convex,
}

impl FamilyClass {
    /// Order of the associated linear-invariant family, `sup |h''(0)|/2`.
    pub fn alpha(self) -> f64 {
        match self {
            FamilyClass::General => 3.0,
            FamilyClass::Convex => 2.0,
        }
    }

    pub fn tail_classes(self) -> (TailClass, TailClass) {
        match self {
            FamilyClass::General => (TailClass::GeneralAnalytic, TailClass::GeneralCoAnalytic),
            FamilyClass::Convex => (TailClass::ConvexAnalytic, TailClass::ConvexCoAnalytic),
        }
    }

    /// Two-point distortion lower bound on `|z| = r`.
    pub fn lhs(self, r: f64) -> Result<f64> {
        match self {
            FamilyClass::General => lhs_general(r),
            FamilyClass::Convex => lhs_convex(r),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyClass::General => "general",
            FamilyClass::Convex => "convex",
        }
    }

    fn function_name(self) -> &'static str {
        match self {
            FamilyClass::General => "psi",
            FamilyClass::Convex => "mu",
        }
    }
}

impl std::str::FromStr for FamilyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(FamilyClass::General),
            "convex" => Ok(FamilyClass::Convex),
            other => Err(domain("family class", format!("`{other}` is not general|convex"))),
        }
    }
}

/// Truncation orders `(n, m)` of the analytic and co-analytic parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpec {
    pub n: u32,
    pub m: u32,
}

impl SectionSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(domain(
                "section orders",
                format!("n = {n}, m = {m}; the solver requires n >= 2 and m >= 2"),
            ));
        }
        Ok(Self { n, m })
    }

    /// `l = min(n, m)`.
    pub fn min_order(&self) -> u32 {
        self.n.min(self.m)
    }

    /// `M = max(n, m)`.
    pub fn max_order(&self) -> u32 {
        self.n.max(self.m)
    }
}

/// Root of ψ or μ with its certificate data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub class: FamilyClass,
    pub n: u32,
    pub m: u32,
    /// Midpoint of the final bracket.
    pub radius: f64,
    /// Function value is strictly positive here.
    pub bracket_lo: f64,
    /// Function value is non-positive here.
    pub bracket_hi: f64,
    /// Function value at `radius`.
    pub residual: f64,
    /// Bisection steps.
    pub iterations: u32,
    /// Asymptotic lower bound `r^L_{l,l}`, when the order admits one.
    pub lower_bound: Option<f64>,
    /// Sign changes seen on the whole scan grid (exactly one is expected).
    pub sign_changes: u32,
}

fn check_open_unit(what: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(domain(what, format!("r = {r} is outside (0, 1)")))
    }
}

/// `(1/(12r)) u³ (1 - u⁶)` with `u = (1-r)/(1+r)`: the two-point distortion
/// bound for α = 3. Tends to 1 as `r → 0⁺`.
pub fn lhs_general(r: f64) -> Result<f64> {
    check_open_unit("lhs_general", r)?;
    let ln_u = (-r).ln_1p() - r.ln_1p();
    let u3 = (3.0 * ln_u).exp();
    let one_minus_u6 = -(6.0 * ln_u).exp_m1();
    Ok(u3 * one_minus_u6 / (12.0 * r))
}

/// `(1-r)/(1+r)³`: the two-point distortion bound for the convex class.
pub fn lhs_convex(r: f64) -> Result<f64> {
    check_open_unit("lhs_convex", r)?;
    let p = 1.0 + r;
    Ok((1.0 - r) / (p * p * p))
}

fn check_orders(n: u32, m: u32) -> Result<()> {
    SectionSpec::new(n, m).map(|_| ())
}

/// `ψ(n, m, r) = lhs_general(r) - R_n - T_m`, both tails taken nonnegative.
pub fn psi(n: u32, m: u32, r: f64) -> Result<f64> {
    check_orders(n, m)?;
    let lhs = lhs_general(r)?;
    Ok(lhs
        - tail_weighted(TailClass::GeneralAnalytic, n, r)?
        - tail_weighted(TailClass::GeneralCoAnalytic, m, r)?)
}

/// `ψ(n, n, r)` from the displayed diagonal form
/// `(1-r)³(3 + 10r² + 3r⁴) / (3(1+r)⁹) - (R_n + T_n)`.
pub fn psi_diag(n: u32, r: f64) -> Result<f64> {
    check_orders(n, n)?;
    check_open_unit("psi_diag", r)?;
    let s = 1.0 - r;
    let r2 = r * r;
    let lhs = s * s * s * (3.0 + 10.0 * r2 + 3.0 * r2 * r2) / (3.0 * (1.0 + r).powi(9));
    Ok(lhs - combined_general_tail(n, r)?)
}

/// `μ(n, m, r) = (1-r)/(1+r)³ - Σ_{k>n} k(k+1)/2 r^{k-1} - Σ_{k>m} k(k-1)/2 r^{k-1}`.
pub fn mu(n: u32, m: u32, r: f64) -> Result<f64> {
    check_orders(n, m)?;
    let lhs = lhs_convex(r)?;
    Ok(lhs
        - tail_weighted(TailClass::ConvexAnalytic, n, r)?
        - tail_weighted(TailClass::ConvexCoAnalytic, m, r)?)
}

/// `μ(n, n, r) = (1-r)/(1+r)³ - Σ_{k>n} k² r^{k-1}`.
pub fn mu_diag(n: u32, r: f64) -> Result<f64> {
    check_orders(n, n)?;
    Ok(lhs_convex(r)? - tail_k2(n, r)?)
}

/// Polynomial form `(1-r)⁴ - [2 + (2n-1)(1-r) + n²(1-r)²](1+r)³ rⁿ`, which
/// has the sign of `μ(n, n, r)` on `(0, 1)`.
pub fn psi_convex_poly(n: u32, r: f64) -> Result<f64> {
    check_orders(n, n)?;
    if !(0.0..1.0).contains(&r) {
        return Err(domain("psi_convex_poly", format!("r = {r} is outside [0, 1)")));
    }
    let n_f = n as f64;
    let s = 1.0 - r;
    let bracket = 2.0 + (2.0 * n_f - 1.0) * s + n_f * n_f * s * s;
    Ok(s.powi(4) - bracket * (1.0 + r).powi(3) * r.powi(n as i32))
}

/// ψ or μ according to the class.
pub fn radius_function(class: FamilyClass, n: u32, m: u32, r: f64) -> Result<f64> {
    match class {
        FamilyClass::General => psi(n, m, r),
        FamilyClass::Convex => mu(n, m, r),
    }
}

/// Number of scan-grid points `r = iδ`, `i = 1..1/δ - 1`.
fn scan_len() -> u32 {
    (1.0 / SCAN_STEP).round() as u32 - 1
}

/// Root of ψ (general) or μ (convex) in `(0, 1)`.
///
/// Scans `r = δ, 2δ, …` for the first point where the function is no longer
/// positive, then bisects the bracket down to [`BRACKET_WIDTH`]. The whole
/// scan grid is evaluated so that extra sign changes are reported in
/// [`RadiusResult::sign_changes`].
pub fn solve_radius(class: FamilyClass, n: u32, m: u32) -> Result<RadiusResult> {
    let spec = SectionSpec::new(n, m)?;
    let f = |r: f64| radius_function(class, n, m, r);

    // The limit at 0⁺ is 1 for both classes.
    let mut prev_positive = true;
    let mut first_bracket: Option<(f64, f64)> = None;
    let mut sign_changes = 0;
    let mut last = (0.0, 1.0);
    for i in 1..=scan_len() {
        let r = i as f64 * SCAN_STEP;
        let v = f(r)?;
        let positive = v > 0.0;
        if positive != prev_positive {
            sign_changes += 1;
            if first_bracket.is_none() && !positive {
                first_bracket = Some(((i - 1) as f64 * SCAN_STEP, r));
            }
        }
        prev_positive = positive;
        last = (r, v);
    }
    let (mut lo, mut hi) = first_bracket.ok_or(Error::NoBracket {
        function: class.function_name(),
        n,
        m,
        last_r: last.0,
        last_value: last.1,
    })?;

    let mut iterations = 0;
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let radius = 0.5 * (lo + hi);
    let l = spec.min_order();
    let lower_bound = match class {
        FamilyClass::General if l >= 15 => Some(lower_bound_general(l)?),
        FamilyClass::Convex if l >= 7 => Some(lower_bound_convex(l)?),
        _ => None,
    };
    Ok(RadiusResult {
        class,
        n,
        m,
        radius,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: f(radius)?,
        iterations,
        lower_bound,
        sign_changes,
    })
}

/// `1 - (7 ln n - 4 ln ln n)/n`, the asymptotic lower bound for the general
/// classes; valid (and positive) for `n >= 15`.
pub fn lower_bound_general(n: u32) -> Result<f64> {
    if n < 15 {
        return Err(domain("lower_bound_general", format!("n = {n} < 15")));
    }
    let ln = (n as f64).ln();
    Ok(1.0 - (7.0 * ln - 4.0 * ln.ln()) / n as f64)
}

/// `1 - (4 ln n - 2 ln ln n)/n`, the lower bound for the convex class;
/// valid for `n >= 7`.
pub fn lower_bound_convex(n: u32) -> Result<f64> {
    if n < 7 {
        return Err(domain("lower_bound_convex", format!("n = {n} < 7")));
    }
    let ln = (n as f64).ln();
    Ok(1.0 - (4.0 * ln - 2.0 * ln.ln()) / n as f64)
}

/// `1 - 3 ln n / n`: radius of close-to-convexity of `s_{n,n}(f; θ)` for
/// convex `f`, `n >= 5`.
pub fn ctc_radius(n: u32) -> Result<f64> {
    if n < 5 {
        return Err(domain("ctc_radius", format!("n = {n} < 5")));
    }
    Ok(1.0 - 3.0 * (n as f64).ln() / n as f64)
}

/// Outcome of an order-threshold search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub target: f64,
    /// Smallest order reaching the target.
    pub n: u32,
    pub radius_at_n: f64,
    /// Radius at `n - 1`, when `n - 1` is admissible.
    pub radius_at_previous: Option<f64>,
    /// `radius_at_previous < target` (vacuously true at the first admissible order).
    pub failure_verified: bool,
    /// Radii increased strictly over every order scanned.
    pub monotone: bool,
}

fn check_target(target: f64) -> Result<()> {
    if target > 0.0 && target < 1.0 {
        Ok(())
    } else {
        Err(domain("threshold target", format!("{target} is outside (0, 1)")))
    }
}

fn scan_threshold<F>(target: f64, first: u32, mut radius_at: F) -> Result<ThresholdResult>
where
    F: FnMut(u32) -> Result<f64>,
{
    check_target(target)?;
    let mut previous: Option<f64> = None;
    let mut monotone = true;
    for n in first..=THRESHOLD_CAP {
        let r = radius_at(n)?;
        if let Some(p) = previous {
            monotone &= r > p;
        }
        if r >= target {
            return Ok(ThresholdResult {
                target,
                n,
                radius_at_n: r,
                radius_at_previous: previous,
                failure_verified: previous.is_none_or(|p| p < target),
                monotone,
            });
        }
        previous = Some(r);
    }
    Err(Error::ThresholdNotReached {
        target,
        cap: THRESHOLD_CAP,
    })
}

/// Smallest `n >= 2` with `r_{n,n} >= target` from the ψ/μ roots.
pub fn threshold_n(class: FamilyClass, target: f64) -> Result<ThresholdResult> {
    scan_threshold(target, 2, |n| solve_radius(class, n, n).map(|r| r.radius))
}

/// Smallest `n >= 5` with `1 - 3 ln n / n >= target`.
pub fn ctc_threshold_n(target: f64) -> Result<ThresholdResult> {
    scan_threshold(target, 5, ctc_radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid() -> impl Iterator<Item = f64> {
        (1..100).map(|i| i as f64 / 100.0)
    }

    #[test]
    fn lhs_examples() {
        assert_relative_eq!(lhs_general(1e-12).unwrap(), 1.0, epsilon = 1e-10);
        // u = 1/3: (1/6)(1/27)(728/729)
        assert_relative_eq!(lhs_general(0.5).unwrap(), 728.0 / 118_098.0, max_relative = 1e-14);
        assert!(lhs_general(1.0 - 1e-9).unwrap() < 1e-20);

        assert_relative_eq!(lhs_convex(1e-12).unwrap(), 1.0, epsilon = 1e-10);
        assert_relative_eq!(lhs_convex(0.5).unwrap(), 0.5 / 3.375, max_relative = 1e-15);
        assert!(lhs_convex(1.0 - 1e-9).unwrap() < 1e-9);

        for bad in [0.0, 1.0, -0.2, 1.5] {
            assert!(lhs_general(bad).is_err());
            assert!(lhs_convex(bad).is_err());
            assert!(psi(2, 2, bad).is_err());
            assert!(mu(2, 2, bad).is_err());
        }
    }

    #[test]
    fn small_radius_limit_is_one() {
        for n in 2..20 {
            for m in 2..20 {
                assert_relative_eq!(psi(n, m, 1e-10).unwrap(), 1.0, epsilon = 1e-8);
                assert_relative_eq!(mu(n, m, 1e-10).unwrap(), 1.0, epsilon = 1e-8);
            }
            assert_relative_eq!(psi_diag(n, 1e-10).unwrap(), 1.0, epsilon = 1e-8);
            assert_relative_eq!(mu_diag(n, 1e-10).unwrap(), 1.0, epsilon = 1e-8);
            assert_eq!(psi_convex_poly(n, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn diverges_near_one() {
        assert!(psi(2, 2, 0.999_999).unwrap() < -1e10);
        for n in (2..=100).step_by(7) {
            for m in (2..=100).step_by(11) {
                assert!(mu(n, m, 0.999_999).unwrap() < 0.0);
            }
            assert!(psi_convex_poly(n, 0.999_999).unwrap() < 0.0);
        }
    }

    #[test]
    fn table_root_is_a_zero() {
        assert!(psi(2, 2, 0.108193).unwrap().abs() < 1e-5);
        assert!(psi_diag(2, 0.108193).unwrap().abs() < 1e-5);
    }

    #[test]
    fn orders_below_two_rejected() {
        assert!(psi(1, 2, 0.1).is_err());
        assert!(mu(2, 1, 0.1).is_err());
        assert!(solve_radius(FamilyClass::General, 1, 2).is_err());
        assert!(SectionSpec::new(2, 2).is_ok());
        let spec = SectionSpec::new(3, 9).unwrap();
        assert_eq!((spec.min_order(), spec.max_order()), (3, 9));
    }

    #[test]
    fn diagonal_forms_agree() {
        for n in 2..=50 {
            for r in grid() {
                let scale = lhs_general(r).unwrap() + combined_general_tail(n, r).unwrap();
                let d = (psi_diag(n, r).unwrap() - psi(n, n, r).unwrap()).abs();
                assert!(d / scale < 1e-13, "psi n={n} r={r} {}", d / scale);

                let scale = lhs_convex(r).unwrap() + tail_k2(n, r).unwrap();
                let d = (mu_diag(n, r).unwrap() - mu(n, n, r).unwrap()).abs();
                assert!(d / scale < 1e-13, "mu n={n} r={r} {}", d / scale);
            }
        }
    }

    #[test]
    fn polynomial_form_has_the_sign_of_mu() {
        for n in 2..=50 {
            for r in grid() {
                let a = mu_diag(n, r).unwrap();
                let b = psi_convex_poly(n, r).unwrap();
                // Both equal zero only at the root; skip points within rounding of it.
                if a.abs() > 1e-12 {
                    assert_eq!(a > 0.0, b > 0.0, "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn mu_diag_positive_at_convex_bound() {
        let ln7 = 7f64.ln();
        let beta = 4.0 * ln7 - 2.0 * ln7.ln();
        assert!(mu_diag(7, 1.0 - beta / 7.0).unwrap() > 0.0);
    }

    #[test]
    fn solve_small_orders() {
        let r = solve_radius(FamilyClass::General, 2, 2).unwrap();
        assert!((r.radius - 0.108193).abs() < 5e-7);
        assert!(r.bracket_lo < r.radius && r.radius <= r.bracket_hi);
        assert!(r.bracket_hi - r.bracket_lo <= BRACKET_WIDTH);
        assert!(psi(2, 2, r.bracket_lo).unwrap() > 0.0);
        assert!(psi(2, 2, r.bracket_hi).unwrap() <= 0.0);
        assert!(r.residual.abs() < 1e-10);
        assert_eq!(r.sign_changes, 1);
        assert_eq!(r.lower_bound, None);
    }

    #[test]
    fn unbalanced_section_root_by_dense_scan() {
        // Oracle: a 1e-6 sign scan of ψ(2, 3, ·).
        let mut oracle = None;
        for i in 1..1_000_000 {
            let r = i as f64 * 1e-6;
            if psi(2, 3, r).unwrap() <= 0.0 {
                oracle = Some(r);
                break;
            }
        }
        let oracle = oracle.unwrap();
        let r22 = solve_radius(FamilyClass::General, 2, 2).unwrap().radius;
        let r23 = solve_radius(FamilyClass::General, 2, 3).unwrap().radius;
        assert!(r23 > r22 && r23 < 1.0);
        assert!(r23 <= oracle && oracle - r23 < 1e-6);
    }

    #[test]
    fn bounds() {
        assert_relative_eq!(lower_bound_general(15).unwrap(), 0.001_904_277_6, epsilon = 1e-9);
        assert!(lower_bound_general(14).is_err());
        assert!(lower_bound_general(1_000_000).unwrap() > 0.9999);
        let mut prev = lower_bound_general(15).unwrap();
        for n in 16..100_000 {
            let v = lower_bound_general(n).unwrap();
            assert!(v > prev, "n={n}");
            prev = v;
        }

        assert!(lower_bound_convex(7).unwrap() > 0.0);
        assert!(lower_bound_convex(6).is_err());
        assert!(lower_bound_convex(1_000_000).unwrap() > 0.9999);

        assert_relative_eq!(ctc_radius(5).unwrap(), 1.0 - 3.0 * 5f64.ln() / 5.0);
        assert_relative_eq!(ctc_radius(5).unwrap(), 0.034_337_25, epsilon = 1e-8);
        assert!(ctc_radius(4).is_err());
        assert!(ctc_radius(1_000_000).unwrap() > 0.9999);
    }

    #[test]
    fn mu_at_one_half() {
        // Dense sign scan of μ(n, n, ·): the μ root first exceeds 1/2 at n = 12.
        assert!(mu(17, 17, 0.5).unwrap() > 0.0);
        assert!(mu(12, 12, 0.5).unwrap() > 0.0);
        assert!(mu(11, 11, 0.5).unwrap() < 0.0);
    }

    #[test]
    fn thresholds_general() {
        for (target, expect) in [(0.25, 7), (0.5, 22), (0.75, 78)] {
            let t = threshold_n(FamilyClass::General, target).unwrap();
            assert_eq!(t.n, expect);
            assert!(t.failure_verified && t.monotone);
        }
        assert!(threshold_n(FamilyClass::General, 1.5).is_err());
        assert!(threshold_n(FamilyClass::General, 0.0).is_err());
    }

    #[test]
    fn thresholds_ctc_route() {
        assert_eq!(ctc_threshold_n(0.5).unwrap().n, 17);
        assert_eq!(ctc_threshold_n(0.75).unwrap().n, 46);
    }

    #[test]
    fn class_parse() {
        assert_eq!("general".parse::<FamilyClass>().unwrap(), FamilyClass::General);
        assert_eq!("convex".parse::<FamilyClass>().unwrap(), FamilyClass::Convex);
        assert!("koebe".parse::<FamilyClass>().is_err());
        assert_eq!(FamilyClass::General.alpha(), 3.0);
        assert_eq!(FamilyClass::Convex.alpha(), 2.0);
    }
}
