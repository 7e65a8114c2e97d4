//! Radius of univalence for sections (partial sums) of univalent harmonic
//! mappings `f = h + conj(g)` of the unit disk.
//!
//! The crate is organised by capability:
//!
//! * [`series`] evaluates the weighted power-series tails in closed form,
//!   with a truncated-sum oracle for cross-checking.
//! * [`radius`] evaluates the radius functions ψ (general subclasses) and μ
//!   (convex class), brackets and bisects their unique root in `(0, 1)`, and
//!   derives the asymptotic lower bounds and order thresholds.
//! * [`claims`] re-implements the auxiliary functions used to prove the
//!   asymptotic bounds and checks every numeric assertion about them over
//!   finite parameter ranges.
//! * [`lab`] represents harmonic polynomial sections, evaluates their
//!   Jacobian and divided-difference kernel, and scans for an empirical
//!   univalence radius.
//! * [`plot`] and [`cli`] produce CSV/JSON/SVG artifacts; the `hsect` binary
//!   is a thin wrapper around [`cli::run`].
//!
//! ```
//! use harmonic_sections::radius::{solve_radius, FamilyClass};
//!
//! let r = solve_radius(FamilyClass::General, 2, 2).unwrap();
//! assert!((r.radius - 0.108193).abs() < 5e-7);
//! ```

pub mod claims;
pub mod cli;
pub mod error;
pub mod lab;
pub mod plot;
pub mod radius;
pub mod series;

pub use error::{Error, Result};
