//! Deterministic SVG rendering for trajectories and radar charts.
//!
//! Output bytes depend only on the input data: fixed canvas, fixed palette
//! indexed by series position, coordinates printed with two decimals.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;

use crate::trajectory::TrajectoryPoint;

pub const CANVAS: f64 = 480.0;
const MARGIN: f64 = 48.0;

pub const PALETTE: [&str; 8] = [
    "#d62728", "#ff7f0e", "#bcbd22", "#2ca02c", "#17becf", "#7f7f7f", "#9467bd", "#8c564b",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n\
         <rect width=\"{c}\" height=\"{c}\" fill=\"white\"/>\n",
        c = CANVAS
    );
}

/// Polylines in the first polar quadrant: `theta` is measured from the
/// horizontal axis and `r` is scaled so the largest radius over all series
/// reaches the outer arc.
pub fn trajectory_svg(series: &[(&str, &[TrajectoryPoint])]) -> String {
    let r_max = series
        .iter()
        .flat_map(|(_, pts)| pts.iter().map(|p| p.r))
        .fold(0.0f64, f64::max);
    let scale = if r_max > 0.0 { (CANVAS - 2.0 * MARGIN) / r_max } else { 0.0 };
    let (ox, oy) = (MARGIN, CANVAS - MARGIN);
    let radius = CANVAS - 2.0 * MARGIN;

    let mut out = String::new();
    header(&mut out);
    // Axes and quarter rings.
    let _ = writeln!(
        out,
        "<g stroke=\"#bbbbbb\" fill=\"none\" stroke-width=\"1\">\n\
         <line x1=\"{ox:.2}\" y1=\"{oy:.2}\" x2=\"{:.2}\" y2=\"{oy:.2}\"/>\n\
         <line x1=\"{ox:.2}\" y1=\"{oy:.2}\" x2=\"{ox:.2}\" y2=\"{:.2}\"/>",
        ox + radius,
        oy - radius
    );
    for k in 1..=4 {
        let rr = radius * k as f64 / 4.0;
        let _ = writeln!(
            out,
            "<path d=\"M {:.2} {oy:.2} A {rr:.2} {rr:.2} 0 0 0 {ox:.2} {:.2}\"/>",
            ox + rr,
            oy - rr
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\">r max {}</text>",
        ox + radius - 60.0,
        oy + 20.0,
        crate::fmt::sig6(r_max)
    );

    for (i, (name, pts)) in series.iter().enumerate() {
        let mut coords = String::new();
        for p in pts.iter() {
            let theta = p.theta.clamp(0.0, FRAC_PI_2);
            let x = ox + p.r * scale * theta.cos();
            let y = oy - p.r * scale * theta.sin();
            if !coords.is_empty() {
                coords.push(' ');
            }
            let _ = write!(coords, "{x:.2},{y:.2}");
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{coords}\"/>",
            color(i)
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\" fill=\"{}\">{}</text>",
            CANVAS - MARGIN - 100.0,
            MARGIN + 14.0 * i as f64,
            color(i),
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Radar chart: one axis per label (first axis pointing up, clockwise), one
/// closed polygon per series. Values are expected in `[0, 1]`; absent
/// values are drawn at the centre.
pub fn radar_svg(labels: &[&str], series: &[(&str, Vec<Option<f64>>)]) -> String {
    let c = CANVAS / 2.0;
    let radius = c - MARGIN - 10.0;
    let k = labels.len().max(1);
    let axis_angle = |j: usize| -FRAC_PI_2 + 2.0 * PI * j as f64 / k as f64;

    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(out, "<g stroke=\"#bbbbbb\" fill=\"none\" stroke-width=\"1\">");
    for ring in 1..=4 {
        let rr = radius * ring as f64 / 4.0;
        let pts: Vec<String> = (0..k)
            .map(|j| {
                let a = axis_angle(j);
                format!("{:.2},{:.2}", c + rr * a.cos(), c + rr * a.sin())
            })
            .collect();
        let _ = writeln!(out, "<polygon points=\"{}\"/>", pts.join(" "));
    }
    for j in 0..labels.len() {
        let a = axis_angle(j);
        let _ = writeln!(
            out,
            "<line x1=\"{c:.2}\" y1=\"{c:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            c + radius * a.cos(),
            c + radius * a.sin()
        );
    }
    let _ = writeln!(out, "</g>");
    for (j, label) in labels.iter().enumerate() {
        let a = axis_angle(j);
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">{}</text>",
            c + (radius + 20.0) * a.cos(),
            c + (radius + 20.0) * a.sin() + 4.0,
            escape(label)
        );
    }
    for (i, (name, values)) in series.iter().enumerate() {
        let pts: Vec<String> = (0..k)
            .map(|j| {
                let v = values.get(j).copied().flatten().unwrap_or(0.0).clamp(0.0, 1.0);
                let a = axis_angle(j);
                format!("{:.2},{:.2}", c + radius * v * a.cos(), c + radius * v * a.sin())
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon fill=\"{col}\" fill-opacity=\"0.08\" stroke=\"{col}\" stroke-width=\"1.5\" points=\"{}\"/>",
            pts.join(" "),
            col = color(i)
        );
        let _ = writeln!(
            out,
            "<text x=\"8\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\" fill=\"{}\">{}</text>",
            16.0 + 14.0 * i as f64,
            color(i),
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}
