//! Standalone SVG 1.1 plots: radius-function curves with their root, and
//! boundary images `f(|z| = r)` of harmonic polynomials.
//!
//! The root `<svg>` element carries `data-x-min`, `data-x-max`, `data-y-min`,
//! `data-y-max` and the plot box `data-left`, `data-top`, `data-width`,
//! `data-height`, so pixel coordinates can be mapped back to data values.

use std::fmt::Write;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::lab::{boundary_image, HarmonicPolynomial};
use crate::radius::{radius_function, solve_radius, FamilyClass};

/// Samples along every curve.
pub const CURVE_SAMPLES: usize = 1000;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 60.0;
const TOP: f64 = 30.0;
const PLOT_W: f64 = 620.0;
const PLOT_H: f64 = 400.0;

/// Visible y-range of radius-function curves.
pub const CURVE_Y_RANGE: (f64, f64) = (-0.5, 1.1);

/// Linear map from a data window onto the plot box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Frame {
    pub fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x_min) / (self.x_max - self.x_min) * PLOT_W
    }

    pub fn py(&self, y: f64) -> f64 {
        TOP + (self.y_max - y) / (self.y_max - self.y_min) * PLOT_H
    }

    /// Inverse of [`Frame::px`].
    pub fn data_x(&self, px: f64) -> f64 {
        self.x_min + (px - LEFT) / PLOT_W * (self.x_max - self.x_min)
    }

    /// Inverse of [`Frame::py`].
    pub fn data_y(&self, py: f64) -> f64 {
        self.y_max - (py - TOP) / PLOT_H * (self.y_max - self.y_min)
    }
}

fn open(out: &mut String, frame: &Frame, title: &str) {
    let _ = write!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-x-min="{}" data-x-max="{}" data-y-min="{}" data-y-max="{}" data-left="{LEFT}" data-top="{TOP}" data-width="{PLOT_W}" data-height="{PLOT_H}">
<title>{title}</title>
<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" style="fill:#ffffff;stroke:none"/>
<rect x="{LEFT}" y="{TOP}" width="{PLOT_W}" height="{PLOT_H}" style="fill:none;stroke:#444444;stroke-width:1"/>
"#,
        frame.x_min, frame.x_max, frame.y_min, frame.y_max
    );
}

fn text(out: &mut String, x: f64, y: f64, anchor: &str, body: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{x:.2}" y="{y:.2}" style="font-family:sans-serif;font-size:12px;fill:#222222;text-anchor:{anchor}">{body}</text>"#
    );
}

fn polyline(out: &mut String, class: &str, points: &[(f64, f64)], style: &str) {
    let mut coords = String::with_capacity(points.len() * 16);
    for (x, y) in points {
        let _ = write!(coords, "{x:.3},{y:.3} ");
    }
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" points="{}" style="{style}"/>"#,
        coords.trim_end()
    );
}

fn axis_ticks(out: &mut String, frame: &Frame, x_ticks: &[f64], y_ticks: &[f64]) {
    for &x in x_ticks {
        let px = frame.px(x);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" style="stroke:#444444;stroke-width:1"/>"#,
            TOP + PLOT_H,
            TOP + PLOT_H + 5.0
        );
        text(out, px, TOP + PLOT_H + 18.0, "middle", &format!("{x}"));
    }
    for &y in y_ticks {
        let py = frame.py(y);
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT:.2}" y2="{py:.2}" style="stroke:#444444;stroke-width:1"/>"#,
            LEFT - 5.0
        );
        text(out, LEFT - 8.0, py + 4.0, "end", &format!("{y}"));
    }
}

/// `ψ(n, n, r)` (general) or `μ(n, n, r)` (convex) against `r`, with the
/// root marked and an optional vertical target line.
///
/// Values outside [`CURVE_Y_RANGE`] are clipped to its edges.
pub fn radius_curve_svg(class: FamilyClass, n: u32, target: Option<f64>) -> Result<String> {
    if let Some(t) = target {
        if !(t > 0.0 && t < 1.0) {
            return Err(domain("target radius", format!("{t} is outside (0, 1)")));
        }
    }
    let root = solve_radius(class, n, n)?;
    let frame = Frame {
        x_min: 0.0,
        x_max: 1.0,
        y_min: CURVE_Y_RANGE.0,
        y_max: CURVE_Y_RANGE.1,
    };
    let name = match class {
        FamilyClass::General => "psi",
        FamilyClass::Convex => "mu",
    };
    let mut points = Vec::with_capacity(CURVE_SAMPLES);
    for i in 0..CURVE_SAMPLES {
        let r = (i as f64 + 0.5) / CURVE_SAMPLES as f64;
        let v = radius_function(class, n, n, r)?.clamp(frame.y_min, frame.y_max);
        points.push((frame.px(r), frame.py(v)));
    }

    let mut out = String::new();
    open(&mut out, &frame, &format!("{name}({n}, {n}, r)"));
    axis_ticks(&mut out, &frame, &[0.0, 0.25, 0.5, 0.75, 1.0], &[-0.5, 0.0, 0.5, 1.0]);
    let zero = frame.py(0.0);
    let _ = writeln!(
        out,
        r#"<line class="zero" x1="{LEFT:.2}" y1="{zero:.2}" x2="{:.2}" y2="{zero:.2}" style="stroke:#999999;stroke-width:1;stroke-dasharray:4,3"/>"#,
        LEFT + PLOT_W
    );
    polyline(&mut out, "curve", &points, "fill:none;stroke:#1f5fa8;stroke-width:1.5");
    if let Some(t) = target {
        let px = frame.px(t);
        let _ = writeln!(
            out,
            r#"<line class="target" data-target="{t}" x1="{px:.3}" y1="{TOP:.2}" x2="{px:.3}" y2="{:.2}" style="stroke:#b8860b;stroke-width:1.5;stroke-dasharray:6,3"/>"#,
            TOP + PLOT_H
        );
    }
    let rx = frame.px(root.radius);
    let _ = writeln!(
        out,
        r#"<circle class="root" data-root="{}" cx="{rx:.3}" cy="{zero:.3}" r="4" style="fill:#c0392b;stroke:none"/>"#,
        root.radius
    );
    text(&mut out, rx, zero - 10.0, "middle", &format!("r = {:.6}", root.radius));
    text(&mut out, LEFT + PLOT_W / 2.0, TOP + PLOT_H + 40.0, "middle", "r");
    out.push_str("</svg>\n");
    Ok(out)
}

/// Image of the circle `|z| = r` under `p`, sampled at [`CURVE_SAMPLES`]
/// points and drawn as a closed path with equal axis scales.
pub fn boundary_image_svg(p: &HarmonicPolynomial, r: f64) -> Result<String> {
    let image = boundary_image(p, r, CURVE_SAMPLES)?;
    let reach = image
        .iter()
        .map(|w| w.re.abs().max(w.im.abs()))
        .fold(0.0_f64, f64::max)
        * 1.1;
    let reach = if reach > 0.0 { reach } else { 1.0 };
    // Keep the aspect ratio of the plot box.
    let half_x = reach * (PLOT_W / PLOT_H).max(1.0);
    let half_y = reach * (PLOT_H / PLOT_W).max(1.0);
    let frame = Frame {
        x_min: -half_x,
        x_max: half_x,
        y_min: -half_y,
        y_max: half_y,
    };
    let mut points: Vec<(f64, f64)> = image.iter().map(|w: &Complex64| (frame.px(w.re), frame.py(w.im))).collect();
    points.push(points[0]);

    let mut out = String::new();
    open(&mut out, &frame, &format!("image of |z| = {r}"));
    let (cx, cy) = (frame.px(0.0), frame.py(0.0));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{LEFT:.2}" y1="{cy:.2}" x2="{:.2}" y2="{cy:.2}" style="stroke:#bbbbbb;stroke-width:1"/>"#,
        LEFT + PLOT_W
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{cx:.2}" y1="{TOP:.2}" x2="{cx:.2}" y2="{:.2}" style="stroke:#bbbbbb;stroke-width:1"/>"#,
        TOP + PLOT_H
    );
    polyline(&mut out, "image", &points, "fill:none;stroke:#1f5fa8;stroke-width:1.5");
    text(&mut out, LEFT + 6.0, TOP + 16.0, "start", &format!("|z| = {r}"));
    out.push_str("</svg>\n");
    Ok(out)
}
