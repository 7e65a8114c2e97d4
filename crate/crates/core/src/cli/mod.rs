//! Command surface of the `hsect` binary.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with the text destined for stdout and stderr, so the whole
//! surface can be driven from tests without spawning a process.
//!
//! | code | meaning                       |
//! |------|-------------------------------|
//! | 0    | success                       |
//! | 1    | a claim or identity check failed |
//! | 2    | usage or domain error         |
//! | 3    | I/O error                     |

mod args;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};

pub use args::{ClassArg, Cli, Command, GridArgs, OutputFormat, PlotArgs, PlotKind, Route, ScanArgs};

use crate::claims::{verify_all, verify_claim, ClaimReport, Verdict};
use crate::error::Error;
use crate::lab::{
    empirical_radius, kernel_identity_check, section, EmpiricalRadius, ExtremalModel, HarmonicPolynomial,
    ProbeGrid,
};
use crate::plot::{boundary_image_svg, radius_curve_svg};
use crate::radius::{ctc_radius, ctc_threshold_n, solve_radius, threshold_n, FamilyClass, RadiusResult, ThresholdResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Relative tolerance of `kernel-check`.
pub const KERNEL_CHECK_TOLERANCE: f64 = 1e-10;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Io(msg)) => Outcome::fail(EXIT_IO, format!("error: {msg}\n")),
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    let format = cli.format;
    if let Command::Plot(args) = cli.command {
        return match format {
            None | Some(OutputFormat::Svg) => cmd_plot(&args),
            Some(other) => Err(Failure::Usage(format!("plot writes SVG; --format {other:?} is not supported"))),
        };
    }
    let format = match format {
        None => OutputFormat::Text,
        Some(OutputFormat::Svg) => {
            return Err(Failure::Usage("--format svg is only valid for plot".into()));
        }
        Some(f) => f,
    };
    match cli.command {
        Command::Radius { class, n, m } => cmd_radius(class.into(), n, m, format),
        Command::Table { class, n_list } => cmd_table(class.into(), &n_list, format),
        Command::Thresholds { class, targets, route } => cmd_thresholds(class.into(), &targets, route, format),
        Command::Verify { claim } => cmd_verify(&claim, format),
        Command::Scan(args) => cmd_scan(&args, format),
        Command::KernelCheck {
            seed,
            polynomials,
            triples,
        } => cmd_kernel_check(seed, polynomials, triples, format),
        Command::Plot(_) => unreachable!(),
    }
}

/// Fixed-point with 12 decimals in `[1e-3, 1e6)`, scientific otherwise; at
/// least 10 significant digits either way.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{x:.12}")
    } else {
        format!("{x:.12e}")
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn json<T: Serialize>(value: &T) -> std::result::Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> std::result::Result<String, Failure> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

const RADIUS_HEADER: [&str; 10] = [
    "class",
    "n",
    "m",
    "radius",
    "bracket_lo",
    "bracket_hi",
    "residual",
    "iterations",
    "lower_bound",
    "sign_changes",
];

fn radius_row(r: &RadiusResult) -> Vec<String> {
    vec![
        r.class.name().to_string(),
        r.n.to_string(),
        r.m.to_string(),
        format_number(r.radius),
        format_number(r.bracket_lo),
        format_number(r.bracket_hi),
        format_number(r.residual),
        r.iterations.to_string(),
        optional(r.lower_bound),
        r.sign_changes.to_string(),
    ]
}

fn cmd_radius(class: FamilyClass, n: u32, m: u32, format: OutputFormat) -> CmdResult {
    let r = solve_radius(class, n, m)?;
    let out = match format {
        OutputFormat::Json => json(&r)?,
        OutputFormat::Csv => csv_text(&RADIUS_HEADER, &[radius_row(&r)])?,
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "class         {}", r.class.name());
            let _ = writeln!(s, "orders        n = {}, m = {}", r.n, r.m);
            let _ = writeln!(s, "radius        {:.6}  ({})", r.radius, format_number(r.radius));
            let _ = writeln!(
                s,
                "bracket       [{}, {}]",
                format_number(r.bracket_lo),
                format_number(r.bracket_hi)
            );
            let _ = writeln!(s, "residual      {:e}", r.residual);
            let _ = writeln!(s, "iterations    {}", r.iterations);
            let _ = writeln!(s, "sign changes  {}", r.sign_changes);
            if let Some(lb) = r.lower_bound {
                let _ = writeln!(s, "lower bound   {}", format_number(lb));
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_table(class: FamilyClass, ns: &[u32], format: OutputFormat) -> CmdResult {
    let rows = ns
        .iter()
        .map(|&n| solve_radius(class, n, n))
        .collect::<crate::Result<Vec<_>>>()?;
    let out = match format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.n.to_string(), format_number(r.radius), optional(r.lower_bound)])
                .collect();
            csv_text(&["n", "radius", "lower_bound"], &body)?
        }
        _ => {
            let mut s = format!("{:>6}  {:>16}  {:>16}\n", "n", "radius", "lower_bound");
            for r in &rows {
                let lb = r.lower_bound.map(|v| format!("{v:.12}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "{:>6}  {:>16.12}  {:>16}", r.n, r.radius, lb);
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

/// One row of `thresholds` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub class: FamilyClass,
    pub route: String,
    #[serde(flatten)]
    pub result: ThresholdResult,
}

fn cmd_thresholds(class: FamilyClass, targets: &[f64], route: Route, format: OutputFormat) -> CmdResult {
    if route == Route::Ctc && class != FamilyClass::Convex {
        return Err(Failure::Usage("--route ctc applies to the convex class only".into()));
    }
    let route_name = match route {
        Route::Mu => "mu",
        Route::Ctc => "ctc",
    };
    let rows = targets
        .iter()
        .map(|&t| {
            let result = match route {
                Route::Mu => threshold_n(class, t),
                Route::Ctc => ctc_threshold_n(t),
            }?;
            Ok(ThresholdRow {
                class,
                route: route_name.to_string(),
                result,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let out = match format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        format_number(r.result.target),
                        r.result.n.to_string(),
                        format_number(r.result.radius_at_n),
                        optional(r.result.radius_at_previous),
                        r.result.failure_verified.to_string(),
                        r.result.monotone.to_string(),
                    ]
                })
                .collect();
            csv_text(
                &["target", "n", "radius_at_n", "radius_at_previous", "failure_verified", "monotone"],
                &body,
            )?
        }
        _ => {
            let mut s = format!("class {}, route {route_name}\n", class.name());
            let _ = writeln!(s, "{:>8}  {:>6}  {:>14}  {:>14}", "target", "n", "r(n)", "r(n-1)");
            for r in &rows {
                let prev = r
                    .result
                    .radius_at_previous
                    .map(|v| format!("{v:.9}"))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:>8}  {:>6}  {:>14.9}  {:>14}",
                    r.result.target, r.result.n, r.result.radius_at_n, prev
                );
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_verify(claim: &str, format: OutputFormat) -> CmdResult {
    let reports = if claim == "all" {
        verify_all()?
    } else {
        vec![verify_claim(claim)?]
    };
    let out = match format {
        OutputFormat::Json => json(&reports)?,
        OutputFormat::Csv => {
            let body: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.claim_id.clone(),
                        verdict_text(r).to_string(),
                        format_number(r.worst_margin),
                        r.parameter_range.clone(),
                    ]
                })
                .collect();
            csv_text(&["claim_id", "verdict", "worst_margin", "parameter_range"], &body)?
        }
        _ => {
            let mut s = String::new();
            for r in &reports {
                let witness: Vec<String> = r.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    s,
                    "{:<4}  {:<20} margin {:>12.4e}  at {}",
                    verdict_text(r),
                    r.claim_id,
                    r.worst_margin,
                    witness.join(", ")
                );
                let _ = writeln!(s, "      range: {}", r.parameter_range);
                for note in &r.notes {
                    let _ = writeln!(s, "      {note}");
                }
            }
            s
        }
    };
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    Ok(Outcome {
        code: if failed { EXIT_CLAIM_FAILED } else { EXIT_OK },
        stdout: out,
        stderr: String::new(),
    })
}

fn verdict_text(r: &ClaimReport) -> &'static str {
    match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    }
}

/// Output of `scan`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub class: FamilyClass,
    pub n: u32,
    pub m: u32,
    pub identity: bool,
    pub grid: ProbeGrid,
    /// Root of ψ / μ; absent for the identity map.
    pub certified_radius: Option<f64>,
    /// `1 - 3 ln n / n` for convex diagonal sections with `n >= 5`.
    pub ctc_radius: Option<f64>,
    pub empirical: EmpiricalRadius,
}

fn scan_grid(g: &GridArgs) -> crate::Result<ProbeGrid> {
    ProbeGrid::new(g.radial, g.angular, g.t_points, 0.5)?.scaled(g.grid_scale)
}

fn cmd_scan(args: &ScanArgs, format: OutputFormat) -> CmdResult {
    let class: FamilyClass = args.class.into();
    let grid = scan_grid(&args.grid)?;
    let (p, certified, ctc) = if args.identity {
        (HarmonicPolynomial::identity(), None, None)
    } else {
        let cert = solve_radius(class, args.n, args.m)?.radius;
        let ctc = if class == FamilyClass::Convex && args.n == args.m && args.n >= 5 {
            Some(ctc_radius(args.n)?)
        } else {
            None
        };
        let p = section(&ExtremalModel::new(class), args.n as usize, args.m as usize)?;
        (p, Some(cert), ctc)
    };
    let empirical = empirical_radius(&p, &grid)?;
    let report = ScanReport {
        class,
        n: args.n,
        m: args.m,
        identity: args.identity,
        grid,
        certified_radius: certified,
        ctc_radius: ctc,
        empirical,
    };
    let e = &report.empirical;
    let binding = serde_json::to_value(e.binding)?.as_str().unwrap_or_default().to_string();
    let witness = e.passing.as_ref().map(|s| {
        (
            s.min_divided_difference,
            s.min_divided_difference_z,
            s.min_divided_difference_t,
            s.min_jacobian,
        )
    });
    let out = match format {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Csv => {
            let row = vec![
                class.name().to_string(),
                report.n.to_string(),
                report.m.to_string(),
                report.identity.to_string(),
                optional(report.certified_radius),
                optional(report.ctc_radius),
                format_number(e.radius),
                binding,
                optional(witness.map(|w| w.0)),
                optional(witness.map(|w| w.1.re)),
                optional(witness.map(|w| w.1.im)),
                optional(witness.map(|w| w.2)),
                optional(witness.map(|w| w.3)),
            ];
            csv_text(
                &[
                    "class",
                    "n",
                    "m",
                    "identity",
                    "certified_radius",
                    "ctc_radius",
                    "empirical_radius",
                    "binding",
                    "min_modulus",
                    "min_modulus_re",
                    "min_modulus_im",
                    "min_modulus_t",
                    "min_jacobian",
                ],
                &[row],
            )?
        }
        _ => {
            let mut s = String::new();
            let subject = if report.identity {
                "identity map".to_string()
            } else {
                format!("{} extremal section, n = {}, m = {}", class.name(), report.n, report.m)
            };
            let _ = writeln!(s, "subject           {subject}");
            let _ = writeln!(
                s,
                "grid              {} radial x {} angular x {} t",
                grid.radial_points, grid.angular_points, grid.t_points
            );
            if let Some(c) = report.certified_radius {
                let _ = writeln!(s, "certified radius  {c:.6}");
            }
            if let Some(c) = report.ctc_radius {
                let _ = writeln!(s, "ctc radius        {c:.6}");
            }
            let _ = writeln!(s, "empirical radius  {:.6}", e.radius);
            let _ = writeln!(s, "binding           {binding}");
            if let Some((m, z, t, j)) = witness {
                let _ = writeln!(
                    s,
                    "min |kernel/z|    {m:.6e} at z = {:.6}{:+.6}i, t = {t:.6}",
                    z.re, z.im
                );
                let _ = writeln!(s, "min jacobian      {j:.6e}");
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_kernel_check(seed: u64, polynomials: usize, triples: usize, format: OutputFormat) -> CmdResult {
    let check = kernel_identity_check(seed, polynomials, triples)?;
    let out = match format {
        OutputFormat::Json => json(&check)?,
        OutputFormat::Csv => csv_text(
            &["seed", "polynomials", "triples", "max_relative_error"],
            &[vec![
                seed.to_string(),
                polynomials.to_string(),
                triples.to_string(),
                format_number(check.max_relative_error),
            ]],
        )?,
        _ => format!(
            "seed {seed}: {polynomials} polynomials x {triples} points, max relative error {:.3e} (r = {:.6}, eta = {:.6}, psi = {:.6})\n",
            check.max_relative_error, check.worst_r, check.worst_eta, check.worst_psi
        ),
    };
    let ok = check.max_relative_error < KERNEL_CHECK_TOLERANCE;
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_CLAIM_FAILED },
        stdout: out,
        stderr: String::new(),
    })
}

fn cmd_plot(args: &PlotArgs) -> CmdResult {
    let svg = match args.kind {
        PlotKind::PsiCurve => radius_curve_svg(FamilyClass::General, args.n, args.target)?,
        PlotKind::MuCurve => radius_curve_svg(FamilyClass::Convex, args.n, args.target)?,
        PlotKind::BoundaryImage => {
            let p = if args.identity {
                HarmonicPolynomial::identity()
            } else {
                let m = args.m.unwrap_or(args.n);
                section(&ExtremalModel::new(args.class.into()), args.n as usize, m as usize)?
            };
            boundary_image_svg(&p, args.r)?
        }
    };
    match &args.out {
        None => Ok(Outcome::ok(svg)),
        Some(path) => {
            write_atomic(path, svg.as_bytes()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(format!("wrote {}\n", path.display())))
        }
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hsect(args: &[&str]) -> Outcome {
        run(std::iter::once("hsect").chain(args.iter().copied()))
    }

    #[test]
    fn number_format_keeps_precision() {
        assert_eq!(format_number(0.1081928), "0.108192800000");
        assert_eq!(format_number(0.0), "0.000000000000");
        assert!(format_number(1.5e-7).contains('e'));
        let x = 0.123456789012345;
        let parsed: f64 = format_number(x).parse().unwrap();
        assert!((parsed - x).abs() < 1e-12);
    }

    #[test]
    fn svg_rejected_outside_plot() {
        assert_eq!(hsect(&["--format", "svg", "radius", "--class", "general", "--n", "2", "--m", "2"]).code, EXIT_USAGE);
        assert_eq!(hsect(&["--format", "csv", "plot", "psi-curve"]).code, EXIT_USAGE);
    }

    #[test]
    fn parse_errors_and_help() {
        assert_eq!(hsect(&["radius", "--class", "bogus", "--n", "2", "--m", "2"]).code, EXIT_USAGE);
        assert_eq!(hsect(&[]).code, EXIT_USAGE);
        let help = hsect(&["--help"]);
        assert_eq!(help.code, EXIT_OK);
        assert!(help.stdout.contains("thresholds"));
    }

    #[test]
    fn ctc_route_needs_convex() {
        let o = hsect(&["thresholds", "--class", "general", "--targets", "0.5", "--route", "ctc"]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
