//! Harmonic polynomial sections `s_{n,m}(f) = s_n(h) + conj(s_m(g))`, their
//! Jacobian, the divided-difference kernel
//! `Σ (a_k z^k - conj(b_k z^k)) sin(kt)/sin(t)`, and a grid scan for an
//! empirical univalence radius.
//!
//! The scan is one-sided evidence. A radius reported by
//! [`empirical_radius`] means no violation was seen at the chosen
//! resolution; it is an upper-style estimate to compare with the certified
//! radius from [`crate::radius`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::radius::FamilyClass;

/// `f(z) = Σ a_k z^k + conj(Σ b_k z^k)`, `a[0]` holding `a₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicPolynomial {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl HarmonicPolynomial {
    /// Requires `a₁ = 1` and, if present, `b₁ = 0`.
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if a.first() != Some(&Complex64::new(1.0, 0.0)) {
            return Err(domain("harmonic polynomial", "a_1 must equal 1"));
        }
        if b.first().is_some_and(|b1| *b1 != Complex64::new(0.0, 0.0)) {
            return Err(domain("harmonic polynomial", "b_1 must equal 0"));
        }
        if a.iter().chain(&b).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(domain("harmonic polynomial", "coefficients must be finite"));
        }
        Ok(Self { a, b })
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self {
            a: vec![Complex64::new(1.0, 0.0)],
            b: Vec::new(),
        }
    }

    pub fn analytic(&self) -> &[Complex64] {
        &self.a
    }

    pub fn co_analytic(&self) -> &[Complex64] {
        &self.b
    }

    fn order(&self) -> usize {
        self.a.len().max(self.b.len())
    }
}

/// Anything that supplies coefficients `a_k`, `b_k` for `k ≥ 1`.
pub trait CoefficientSource {
    fn analytic(&self, k: usize) -> Complex64;
    fn co_analytic(&self, k: usize) -> Complex64;
}

impl CoefficientSource for HarmonicPolynomial {
    fn analytic(&self, k: usize) -> Complex64 {
        self.a.get(k.wrapping_sub(1)).copied().unwrap_or_default()
    }

    fn co_analytic(&self, k: usize) -> Complex64 {
        self.b.get(k.wrapping_sub(1)).copied().unwrap_or_default()
    }
}

/// The identity map as a coefficient source.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentitySource;

impl CoefficientSource for IdentitySource {
    fn analytic(&self, k: usize) -> Complex64 {
        if k == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::default()
        }
    }

    fn co_analytic(&self, _k: usize) -> Complex64 {
        Complex64::default()
    }
}

/// Extremal-coefficient model: every coefficient equals its class bound.
///
/// | family  | `a_k`             | `b_k`             |
/// |---------|-------------------|-------------------|
/// | general | `(k+1)(2k+1)/6`   | `(k-1)(2k-1)/6`   |
/// | convex  | `(k+1)/2`         | `(k-1)/2`         |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalModel {
    pub family: FamilyClass,
}

impl ExtremalModel {
    pub fn new(family: FamilyClass) -> Self {
        Self { family }
    }
}

impl CoefficientSource for ExtremalModel {
    fn analytic(&self, k: usize) -> Complex64 {
        let k = k as f64;
        let v = match self.family {
            FamilyClass::General => (k + 1.0) * (2.0 * k + 1.0) / 6.0,
            FamilyClass::Convex => (k + 1.0) / 2.0,
        };
        Complex64::new(v, 0.0)
    }

    fn co_analytic(&self, k: usize) -> Complex64 {
        let k = k as f64;
        let v = match self.family {
            FamilyClass::General => (k - 1.0) * (2.0 * k - 1.0) / 6.0,
            FamilyClass::Convex => (k - 1.0) / 2.0,
        };
        Complex64::new(v, 0.0)
    }
}

/// Truncate a coefficient source to `a₁..a_n`, `b₁..b_m`; `b₁` is forced to 0.
pub fn section<S: CoefficientSource + ?Sized>(source: &S, n: usize, m: usize) -> Result<HarmonicPolynomial> {
    if n < 1 || m < 1 {
        return Err(domain("section orders", format!("n = {n}, m = {m}; both must be at least 1")));
    }
    let a = (1..=n).map(|k| source.analytic(k)).collect();
    let mut b: Vec<Complex64> = (1..=m).map(|k| source.co_analytic(k)).collect();
    b[0] = Complex64::default();
    HarmonicPolynomial::new(a, b)
}

/// `Σ c_k z^k` by Horner, `c[0]` multiplying `z`.
fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::default(), |acc, &ck| (acc + ck) * z)
}

/// `Σ k c_k z^{k-1}`.
fn horner_derivative(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .enumerate()
        .rev()
        .fold(Complex64::default(), |acc, (i, &ck)| acc * z + ck * (i + 1) as f64)
}

pub fn evaluate(p: &HarmonicPolynomial, z: Complex64) -> Complex64 {
    horner(&p.a, z) + horner(&p.b, z).conj()
}

/// `|h'(z)|² - |g'(z)|²`.
pub fn jacobian(p: &HarmonicPolynomial, z: Complex64) -> f64 {
    horner_derivative(&p.a, z).norm_sqr() - horner_derivative(&p.b, z).norm_sqr()
}

/// `sin(kt)/sin(t)`, equal to `k` at `t = 0`.
fn sine_ratio(k: usize, t: f64) -> f64 {
    if t == 0.0 {
        k as f64
    } else {
        (k as f64 * t).sin() / t.sin()
    }
}

/// `Σ_k (a_k z^k - conj(b_k z^k)) sin(kt)/sin(t)` for `|z| < 1`, `t ∈ [0, π/2]`.
///
/// With `z = r e^{iθ}`, `η = θ + t`, `ψ = θ - t` this equals
/// `z · (f(re^{iη}) - f(re^{iψ})) / (re^{iη} - re^{iψ})`.
pub fn kernel(p: &HarmonicPolynomial, z: Complex64, t: f64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(domain("kernel point", format!("|z| = {} is not below 1", z.norm())));
    }
    if !(0.0..=FRAC_PI_2).contains(&t) {
        return Err(domain("kernel angle", format!("t = {t} is outside [0, pi/2]")));
    }
    let ratios: Vec<f64> = (1..=p.order()).map(|k| sine_ratio(k, t)).collect();
    Ok(kernel_with_ratios(p, z, &ratios) * z)
}

/// Kernel divided by `z`, from precomputed `sin(kt)/sin(t)` values.
fn kernel_with_ratios(p: &HarmonicPolynomial, z: Complex64, ratios: &[f64]) -> Complex64 {
    // Σ a_k s_k z^{k-1} - conj(Σ b_k s_k z^k) / z
    let mut analytic = Complex64::default();
    for (k, ak) in p.a.iter().enumerate().rev() {
        analytic = analytic * z + ak * ratios[k];
    }
    let mut co = Complex64::default();
    for (k, bk) in p.b.iter().enumerate().rev() {
        co = (co + bk * ratios[k]) * z;
    }
    analytic - co.conj() / z
}

/// `(f(z₁) - f(z₂)) / (z₁ - z₂)` for distinct points.
pub fn divided_difference(p: &HarmonicPolynomial, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    if z1 == z2 {
        return Err(domain("divided difference", "points coincide"));
    }
    Ok((evaluate(p, z1) - evaluate(p, z2)) / (z1 - z2))
}

/// Sample points `f(r e^{iθ_j})`, `θ_j = 2πj/samples`.
pub fn boundary_image(p: &HarmonicPolynomial, r: f64, samples: usize) -> Result<Vec<Complex64>> {
    if !(r > 0.0 && r < 1.0) {
        return Err(domain("boundary radius", format!("r = {r} is outside (0, 1)")));
    }
    if samples < 3 {
        return Err(domain("boundary samples", "at least 3 samples are required"));
    }
    Ok((0..samples)
        .map(|j| evaluate(p, Complex64::from_polar(r, TAU * j as f64 / samples as f64)))
        .collect())
}

/// Sampling resolution for kernel and Jacobian scans.
///
/// Points lie on `radial_points` circles of radii `radius·j/radial_points`,
/// `angular_points` equally spaced angles each, and the kernel angle takes
/// `t_points` equally spaced values in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeGrid {
    pub radial_points: usize,
    pub angular_points: usize,
    pub t_points: usize,
    pub radius: f64,
}

/// Smallest admissible count along any grid axis.
pub const MIN_GRID_POINTS: usize = 8;
/// Resolution of [`empirical_radius`].
pub const EMPIRICAL_TOLERANCE: f64 = 1e-3;

impl Default for ProbeGrid {
    fn default() -> Self {
        Self {
            radial_points: 64,
            angular_points: 256,
            t_points: 128,
            radius: 0.5,
        }
    }
}

impl ProbeGrid {
    pub fn new(radial_points: usize, angular_points: usize, t_points: usize, radius: f64) -> Result<Self> {
        let grid = Self {
            radial_points,
            angular_points,
            t_points,
            radius,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_points.min(self.angular_points).min(self.t_points) < MIN_GRID_POINTS {
            return Err(domain(
                "probe grid",
                format!(
                    "{}x{}x{}; every count must be at least {MIN_GRID_POINTS}",
                    self.radial_points, self.angular_points, self.t_points
                ),
            ));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(domain("probe grid", format!("radius {} is outside (0, 1)", self.radius)));
        }
        Ok(())
    }

    /// Multiply every count by `factor`.
    pub fn scaled(&self, factor: usize) -> Result<Self> {
        Self::new(
            self.radial_points * factor,
            self.angular_points * factor,
            self.t_points * factor,
            self.radius,
        )
    }

    pub fn with_radius(&self, radius: f64) -> Self {
        Self { radius, ..*self }
    }

    fn t_value(&self, i: usize) -> f64 {
        if i + 1 == self.t_points {
            FRAC_PI_2
        } else {
            FRAC_PI_2 * i as f64 / (self.t_points - 1) as f64
        }
    }
}

/// A kernel phase winding on one probe circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingViolation {
    pub circle_radius: f64,
    pub t: f64,
    pub winding: i64,
}

/// Result of [`kernel_min_modulus`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelScan {
    pub radius: f64,
    /// Minimum of `|kernel|`.
    pub min_value: f64,
    pub argmin_z: Complex64,
    pub argmin_t: f64,
    /// Minimum of `|kernel / z|`, the divided-difference modulus.
    pub min_divided_difference: f64,
    pub min_divided_difference_z: Complex64,
    pub min_divided_difference_t: f64,
    /// First circle/angle pair, in grid order, where `kernel / z` winds around 0.
    pub winding_violation: Option<WindingViolation>,
    pub min_jacobian: f64,
    pub min_jacobian_z: Complex64,
}

impl KernelScan {
    /// No zero of the kernel was detected.
    pub fn kernel_ok(&self) -> bool {
        self.min_divided_difference > 0.0 && self.winding_violation.is_none()
    }

    pub fn jacobian_ok(&self) -> bool {
        self.min_jacobian > 0.0
    }
}

#[derive(Clone, Copy)]
struct Extreme {
    value: f64,
    z: Complex64,
    t: f64,
}

impl Extreme {
    const NONE: Extreme = Extreme {
        value: f64::INFINITY,
        z: Complex64 { re: 0.0, im: 0.0 },
        t: 0.0,
    };

    fn take(&mut self, value: f64, z: Complex64, t: f64) {
        if value < self.value || value.is_nan() && !self.value.is_nan() {
            *self = Extreme { value, z, t };
        }
    }
}

struct CircleScan {
    modulus: Extreme,
    dd: Extreme,
    jac: Extreme,
    winding: Option<WindingViolation>,
}

fn scan_circle(p: &HarmonicPolynomial, grid: &ProbeGrid, ratios: &[Vec<f64>], rho: f64) -> CircleScan {
    let zs: Vec<Complex64> = (0..grid.angular_points)
        .map(|l| Complex64::from_polar(rho, TAU * l as f64 / grid.angular_points as f64))
        .collect();
    let mut modulus = Extreme::NONE;
    let mut dd = Extreme::NONE;
    let mut jac = Extreme::NONE;
    let mut winding = None;
    for &z in &zs {
        jac.take(jacobian(p, z), z, 0.0);
    }
    let mut values = Vec::with_capacity(zs.len());
    for (i, row) in ratios.iter().enumerate() {
        let t = grid.t_value(i);
        values.clear();
        for &z in &zs {
            let w = kernel_with_ratios(p, z, row);
            let m = w.norm();
            dd.take(m, z, t);
            modulus.take(m * rho, z, t);
            values.push(w);
        }
        if winding.is_none() {
            let turns = winding_number(&values);
            if turns != 0 {
                winding = Some(WindingViolation {
                    circle_radius: rho,
                    t,
                    winding: turns,
                });
            }
        }
    }
    CircleScan {
        modulus,
        dd,
        jac,
        winding,
    }
}

/// Net turns of a closed sampled curve around the origin.
fn winding_number(values: &[Complex64]) -> i64 {
    let mut total = 0.0;
    for (i, w) in values.iter().enumerate() {
        let next = values[(i + 1) % values.len()];
        let mut d = next.arg() - w.arg();
        if d > PI {
            d -= TAU;
        } else if d < -PI {
            d += TAU;
        }
        total += d;
    }
    (total / TAU).round() as i64
}

/// Minimum kernel modulus over the grid (excluding `z = 0`), together with
/// the divided-difference minimum, a phase-winding check per circle and the
/// minimum Jacobian on the same points.
///
/// Circles are scanned in parallel and merged in grid order, so the result
/// does not depend on scheduling.
pub fn kernel_min_modulus(p: &HarmonicPolynomial, grid: &ProbeGrid) -> Result<KernelScan> {
    grid.validate()?;
    let order = p.order();
    let ratios: Vec<Vec<f64>> = (0..grid.t_points)
        .map(|i| {
            let t = grid.t_value(i);
            (1..=order).map(|k| sine_ratio(k, t)).collect()
        })
        .collect();
    let circles: Vec<CircleScan> = (1..=grid.radial_points)
        .into_par_iter()
        .map(|j| scan_circle(p, grid, &ratios, grid.radius * j as f64 / grid.radial_points as f64))
        .collect();

    let mut modulus = Extreme::NONE;
    let mut dd = Extreme::NONE;
    let mut jac = Extreme::NONE;
    let mut winding = None;
    for c in circles {
        modulus.take(c.modulus.value, c.modulus.z, c.modulus.t);
        dd.take(c.dd.value, c.dd.z, c.dd.t);
        jac.take(c.jac.value, c.jac.z, c.jac.t);
        winding = winding.or(c.winding);
    }
    Ok(KernelScan {
        radius: grid.radius,
        min_value: modulus.value,
        argmin_z: modulus.z,
        argmin_t: modulus.t,
        min_divided_difference: dd.value,
        min_divided_difference_z: dd.z,
        min_divided_difference_t: dd.t,
        winding_violation: winding,
        min_jacobian: jac.value,
        min_jacobian_z: jac.z,
    })
}

/// Predicate that stopped the radius search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    Kernel,
    Jacobian,
    Both,
    /// Nothing failed below radius 1.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRadius {
    /// Largest radius found free of violations.
    pub radius: f64,
    pub binding: Binding,
    /// Scan at `radius`.
    pub passing: Option<KernelScan>,
    /// Scan at the smallest failing radius tried.
    pub failing: Option<KernelScan>,
}

/// Bisect on `r ∈ (0, 1)` for the largest radius whose grid shows a
/// nonvanishing, non-winding kernel and a positive Jacobian, to
/// [`EMPIRICAL_TOLERANCE`]. The template's radius is ignored.
pub fn empirical_radius(p: &HarmonicPolynomial, template: &ProbeGrid) -> Result<EmpiricalRadius> {
    template.with_radius(0.5).validate()?;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut passing = None;
    let mut failing: Option<KernelScan> = None;
    while hi - lo > EMPIRICAL_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let scan = kernel_min_modulus(p, &template.with_radius(mid))?;
        if scan.kernel_ok() && scan.jacobian_ok() {
            lo = mid;
            passing = Some(scan);
        } else {
            hi = mid;
            failing = Some(scan);
        }
    }
    let binding = match &failing {
        None => Binding::None,
        Some(s) => match (s.kernel_ok(), s.jacobian_ok()) {
            (false, false) => Binding::Both,
            (false, true) => Binding::Kernel,
            _ => Binding::Jacobian,
        },
    };
    Ok(EmpiricalRadius {
        radius: lo,
        binding,
        passing,
        failing,
    })
}

/// Polynomial with `a₁ = 1`, `b₁ = 0`, random orders in `1..=max_order` and
/// remaining coefficients uniform in the square `[-2, 2]²`.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> HarmonicPolynomial {
    let max_order = max_order.max(1);
    let n = rng.gen_range(1..=max_order);
    let m = rng.gen_range(1..=max_order);
    let mut coefficient = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let mut a = vec![Complex64::new(1.0, 0.0)];
    a.extend((1..n).map(|_| coefficient()));
    let mut b = vec![Complex64::default()];
    b.extend((1..m).map(|_| coefficient()));
    HarmonicPolynomial { a, b }
}

/// Worst agreement between `kernel / z` and the divided difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub seed: u64,
    pub polynomials: usize,
    pub triples: usize,
    pub max_relative_error: f64,
    pub worst_r: f64,
    pub worst_eta: f64,
    pub worst_psi: f64,
}

/// Compare `kernel(z, t) / z` with `(f(re^{iη}) - f(re^{iψ})) / (re^{iη} - re^{iψ})`
/// for seeded random polynomials and random `r ∈ (0, 1)`, `θ ∈ [0, 2π)`,
/// `t ∈ (0, π/2]`, where `η = θ + t`, `ψ = θ - t`, `z = re^{iθ}`.
pub fn kernel_identity_check(seed: u64, polynomials: usize, triples: usize) -> Result<IdentityCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = IdentityCheck {
        seed,
        polynomials,
        triples,
        max_relative_error: 0.0,
        worst_r: 0.0,
        worst_eta: 0.0,
        worst_psi: 0.0,
    };
    for _ in 0..polynomials {
        let p = random_polynomial(&mut rng, 12);
        for _ in 0..triples {
            let r = rng.gen_range(1e-3..0.999);
            let theta = rng.gen_range(0.0..TAU);
            let t = FRAC_PI_2 - rng.gen_range(0.0..FRAC_PI_2 - 1e-3);
            let (eta, psi) = (theta + t, theta - t);
            let z = Complex64::from_polar(r, theta);
            let k = kernel(&p, z, t)? / z;
            let dd = divided_difference(&p, Complex64::from_polar(r, eta), Complex64::from_polar(r, psi))?;
            let err = (k - dd).norm() / dd.norm();
            if !(err <= out.max_relative_error) {
                out.max_relative_error = err;
                out.worst_r = r;
                out.worst_eta = eta;
                out.worst_psi = psi;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radius::{lhs_general, solve_radius};
    use crate::series::combined_general_tail;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_grid() -> ProbeGrid {
        ProbeGrid::new(16, 128, 32, 0.5).unwrap()
    }

    #[test]
    fn section_examples() {
        let p = section(&ExtremalModel::new(FamilyClass::General), 2, 2).unwrap();
        assert_eq!(p.analytic(), &[c(1.0, 0.0), c(2.5, 0.0)]);
        assert_eq!(p.co_analytic(), &[c(0.0, 0.0), c(0.5, 0.0)]);

        let p = section(&ExtremalModel::new(FamilyClass::Convex), 3, 3).unwrap();
        assert_eq!(p.analytic(), &[c(1.0, 0.0), c(1.5, 0.0), c(2.0, 0.0)]);
        assert_eq!(p.co_analytic(), &[c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0)]);

        let p = section(&IdentitySource, 4, 3).unwrap();
        assert_eq!(p.analytic()[0], c(1.0, 0.0));
        assert!(p.analytic()[1..].iter().chain(p.co_analytic()).all(|z| z.norm() == 0.0));

        assert!(section(&IdentitySource, 0, 2).is_err());
        assert!(section(&IdentitySource, 2, 0).is_err());
    }

    #[test]
    fn normalisation_enforced() {
        assert!(HarmonicPolynomial::new(vec![c(2.0, 0.0)], vec![]).is_err());
        assert!(HarmonicPolynomial::new(vec![c(1.0, 0.0)], vec![c(0.1, 0.0)]).is_err());
        assert!(HarmonicPolynomial::new(vec![c(1.0, 0.0), c(f64::NAN, 0.0)], vec![]).is_err());
    }

    #[test]
    fn evaluation_and_jacobian() {
        let id = HarmonicPolynomial::identity();
        assert_eq!(evaluate(&id, c(0.3, 0.4)), c(0.3, 0.4));
        assert_eq!(jacobian(&id, c(0.3, -0.7)), 1.0);

        let p = HarmonicPolynomial::new(vec![c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert_relative_eq!(evaluate(&p, c(0.2, 0.0)).re, 0.2 + 0.5 * 0.04, max_relative = 1e-15);
        assert_eq!(jacobian(&p, c(0.0, 0.0)), 1.0);

        let s = section(&ExtremalModel::new(FamilyClass::General), 2, 2).unwrap();
        let v = evaluate(&s, c(0.1, 0.0));
        assert_relative_eq!(v.re, 0.13, max_relative = 1e-15);
        assert_eq!(v.im, 0.0);
        // h'(z) = 1 + 5z, g'(z) = z
        let z = c(0.05, 0.02);
        let expected = (c(1.0, 0.0) + z * 5.0).norm_sqr() - z.norm_sqr();
        assert_relative_eq!(jacobian(&s, z), expected, max_relative = 1e-14);
    }

    #[test]
    fn kernel_examples() {
        let id = HarmonicPolynomial::identity();
        let z = c(0.3, -0.2);
        for t in [0.0, 0.4, FRAC_PI_2] {
            assert_eq!(kernel(&id, z, t).unwrap(), z);
        }

        let s = section(&ExtremalModel::new(FamilyClass::General), 3, 3).unwrap();
        let z = c(0.2, 0.1);
        let at_zero: Complex64 = (1..=3)
            .map(|k| {
                let zk = z.powu(k as u32);
                (s.analytic()[k - 1] * zk - (s.co_analytic()[k - 1] * zk).conj()) * k as f64
            })
            .sum();
        let k0 = kernel(&s, z, 0.0).unwrap();
        assert_relative_eq!((k0 - at_zero).norm(), 0.0, epsilon = 1e-15);

        // sin(2t) vanishes at π/2; only odd orders survive, with ratio ±1.
        let s2 = section(&ExtremalModel::new(FamilyClass::General), 2, 2).unwrap();
        let k = kernel(&s2, z, FRAC_PI_2).unwrap();
        assert_relative_eq!((k - z).norm(), 0.0, epsilon = 1e-15);

        assert!(kernel(&id, c(1.0, 0.0), 0.1).is_err());
        assert!(kernel(&id, z, -0.1).is_err());
        assert!(kernel(&id, z, 1.6).is_err());
    }

    #[test]
    fn kernel_is_z_times_divided_difference() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..50 {
            let p = random_polynomial(&mut rng, 12);
            for _ in 0..20 {
                let r = rng.gen_range(0.01..0.99);
                let theta = rng.gen_range(0.0..TAU);
                let t = rng.gen_range(1e-3..FRAC_PI_2);
                let z = Complex64::from_polar(r, theta);
                let dd = divided_difference(
                    &p,
                    Complex64::from_polar(r, theta + t),
                    Complex64::from_polar(r, theta - t),
                )
                .unwrap();
                let k = kernel(&p, z, t).unwrap() / z;
                assert!((k - dd).norm() <= 1e-10 * dd.norm().max(1.0), "{k} vs {dd}");
            }
        }
    }

    #[test]
    fn seeded_identity_check() {
        let a = kernel_identity_check(7, 10, 10).unwrap();
        assert!(a.max_relative_error < 1e-10, "{a:?}");
        assert_eq!(a, kernel_identity_check(7, 10, 10).unwrap());
    }

    #[test]
    fn analytic_polynomial_reduces_to_analytic_divided_difference() {
        let a = vec![c(1.0, 0.0), c(0.3, -0.1), c(-0.2, 0.05), c(0.01, 0.02)];
        let p = HarmonicPolynomial::new(a.clone(), vec![]).unwrap();
        let phi = |z: Complex64| a.iter().enumerate().map(|(i, ak)| ak * z.powu(i as u32 + 1)).sum::<Complex64>();
        for &(r, eta, psi) in &[(0.4, 1.0, 0.2), (0.9, 2.5, -0.5), (0.1, 0.01, 0.0)] {
            let (z1, z2) = (Complex64::from_polar(r, eta), Complex64::from_polar(r, psi));
            let direct = (phi(z1) - phi(z2)) / (z1 - z2);
            let z = Complex64::from_polar(r, 0.5 * (eta + psi));
            let k = kernel(&p, z, 0.5 * (eta - psi)).unwrap() / z;
            assert!((k - direct).norm() <= 1e-10 * direct.norm());
        }
    }

    #[test]
    fn two_point_bound_for_long_general_section() {
        let p = section(&ExtremalModel::new(FamilyClass::General), 60, 60).unwrap();
        for r in [0.05, 0.1] {
            let bound = lhs_general(r).unwrap() - combined_general_tail(60, r).unwrap();
            let mut smallest = f64::INFINITY;
            for i in 0..360 {
                for j in 1..180 {
                    let eta = TAU * i as f64 / 360.0;
                    let psi = eta + TAU * j as f64 / 360.0;
                    let dd = divided_difference(&p, Complex64::from_polar(r, eta), Complex64::from_polar(r, psi))
                        .unwrap()
                        .norm();
                    smallest = smallest.min(dd);
                }
            }
            assert!(smallest > bound, "r={r}: {smallest} <= {bound}");
        }
    }

    #[test]
    fn jacobian_positive_inside_certified_radius() {
        for (family, n) in [(FamilyClass::General, 2), (FamilyClass::General, 10), (FamilyClass::Convex, 5)] {
            let cert = solve_radius(family, n, n).unwrap().radius;
            let p = section(&ExtremalModel::new(family), n as usize, n as usize).unwrap();
            let scan = kernel_min_modulus(&p, &small_grid().with_radius(0.95 * cert)).unwrap();
            assert!(scan.jacobian_ok(), "{family:?} {n}");
            assert!(scan.kernel_ok(), "{family:?} {n}");
        }
    }

    #[test]
    fn identity_scan() {
        let id = HarmonicPolynomial::identity();
        let grid = ProbeGrid::new(8, 16, 8, 0.9).unwrap();
        let scan = kernel_min_modulus(&id, &grid).unwrap();
        assert_relative_eq!(scan.min_value, 0.9 / 8.0, max_relative = 1e-12);
        assert_eq!(scan.min_divided_difference, 1.0);
        assert!(scan.winding_violation.is_none());

        let e = empirical_radius(&id, &grid).unwrap();
        assert!(e.radius > 1.0 - 2e-3);
        assert_eq!(e.binding, Binding::None);
    }

    #[test]
    fn extremal_section_fails_near_the_boundary() {
        let p = section(&ExtremalModel::new(FamilyClass::General), 2, 2).unwrap();
        let scan = kernel_min_modulus(&p, &small_grid().with_radius(0.999)).unwrap();
        assert!(!(scan.kernel_ok() && scan.jacobian_ok()));

        let e = empirical_radius(&p, &small_grid()).unwrap();
        let cert = solve_radius(FamilyClass::General, 2, 2).unwrap().radius;
        assert!(e.radius >= cert - 1e-3);
        assert!(e.radius < 0.5);
        assert_ne!(e.binding, Binding::None);
    }

    #[test]
    fn scan_is_deterministic() {
        let p = section(&ExtremalModel::new(FamilyClass::Convex), 5, 5).unwrap();
        let g = small_grid().with_radius(0.3);
        assert_eq!(kernel_min_modulus(&p, &g).unwrap(), kernel_min_modulus(&p, &g).unwrap());
    }

    #[test]
    fn grid_validation() {
        assert!(ProbeGrid::new(7, 16, 16, 0.5).is_err());
        assert!(ProbeGrid::new(8, 16, 16, 1.0).is_err());
        let g = ProbeGrid::default().scaled(2).unwrap();
        assert_eq!((g.radial_points, g.angular_points, g.t_points), (128, 512, 256));
        assert!(boundary_image(&HarmonicPolynomial::identity(), 0.5, 2).is_err());
    }

    #[test]
    fn winding_counts_turns() {
        let circle: Vec<Complex64> = (0..64).map(|i| Complex64::from_polar(1.0, TAU * i as f64 / 64.0)).collect();
        assert_eq!(winding_number(&circle), 1);
        let shifted: Vec<Complex64> = circle.iter().map(|w| w + 3.0).collect();
        assert_eq!(winding_number(&shifted), 0);
        let twice: Vec<Complex64> = (0..64).map(|i| Complex64::from_polar(1.0, -2.0 * TAU * i as f64 / 64.0)).collect();
        assert_eq!(winding_number(&twice), -2);
    }
}
