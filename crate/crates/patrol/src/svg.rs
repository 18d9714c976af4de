use std::fmt::Write;

use patrol_core::CyclicSolution;

use crate::error::CliError;
use crate::instance::Instance;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Draws sites, one closed polygon per tour with at least two sites, and a
/// legend with robot counts and the latency.
pub fn render_svg(instance: &Instance, solution: &CyclicSolution) -> Result<String, CliError> {
    let points = instance
        .points
        .as_ref()
        .ok_or_else(|| CliError::NotRenderable("instance is a distance matrix".into()))?;
    if points.first().map_or(true, |p| p.len() != 2) {
        return Err(CliError::NotRenderable("instance points are not 2-D".into()));
    }

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let xy = |s: usize| {
        let p = &points[s];
        (MARGIN + (p[0] - lo[0]) * scale, SIZE - MARGIN - (p[1] - lo[1]) * scale)
    };

    let legend_height = 18.0 * (solution.tours.len() as f64 + 1.0) + 10.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"#,
        h = SIZE + legend_height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, tour) in solution.tours.iter().enumerate() {
        if tour.order().len() < 2 {
            continue;
        }
        let coords: Vec<String> = tour
            .order()
            .iter()
            .map(|&s| {
                let (x, y) = xy(s);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon class="tour" data-part="{i}" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            coords.join(" "),
            PALETTE[i % PALETTE.len()]
        );
    }
    for s in 0..points.len() {
        let (x, y) = xy(s);
        let _ = writeln!(svg, r#"<circle class="site" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
    }
    let mut y = SIZE + 18.0;
    for (i, (tour, robots)) in solution.tours.iter().zip(&solution.robots).enumerate() {
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="{y}" font-family="sans-serif" font-size="13" fill="{}">part {i}: {} sites, {robots} robot(s), tour length {:.6}</text>"#,
            PALETTE[i % PALETTE.len()],
            tour.order().len(),
            tour.length()
        );
        y += 18.0;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="{y}" font-family="sans-serif" font-size="13">latency {:.6}</text>"#,
        solution.latency
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
