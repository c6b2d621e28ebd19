//! Standalone SVG 1.1 rendering of circle images.

use std::fmt::Write as _;
use std::path::Path;

use crate::geometry::CirclePolyline;
use crate::{Error, Result};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 0.05;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Renders one closed path per polyline in a view box fitted to their union
/// plus a 5% margin. The y axis points up. Output depends only on the input.
pub fn render_svg(polylines: &[CirclePolyline]) -> Result<String> {
    if polylines.is_empty() {
        return Err(Error::InvalidArgument("nothing to plot".into()));
    }
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in polylines.iter().flat_map(|poly| &poly.points) {
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(Error::NonFinite("plot points"));
        }
        min_x = min_x.min(p.re);
        max_x = max_x.max(p.re);
        min_y = min_y.min(0.0 - p.im);
        max_y = max_y.max(0.0 - p.im);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let pad = MARGIN * span;
    let (vx, vy) = (min_x - pad, min_y - pad);
    let (vw, vh) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let stroke = span / 400.0;
    let font = span / 30.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.0}" height="{:.0}" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}">"#,
        SIZE * vh / vw
    );
    let _ = writeln!(
        out,
        r#"  <rect x="{vx:.6}" y="{vy:.6}" width="{vw:.6}" height="{vh:.6}" fill="white"/>"#
    );
    for (i, poly) in polylines.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = String::new();
        for (k, p) in poly.points.iter().enumerate() {
            let cmd = if k == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.6} {:.6} ", p.re, 0.0 - p.im);
        }
        d.push('Z');
        let _ = writeln!(
            out,
            r#"  <path d="{d}" fill="none" stroke="{color}" stroke-width="{stroke:.6}"/>"#
        );
        // label at the rightmost image point
        let anchor =
            poly.points.iter().copied().fold(
                poly.points[0],
                |best, p| if p.re > best.re { p } else { best },
            );
        let _ = writeln!(
            out,
            r#"  <text x="{:.6}" y="{:.6}" font-family="sans-serif" font-size="{font:.6}" fill="{color}">r = {}</text>"#,
            anchor.re + 0.5 * font,
            0.0 - anchor.im,
            poly.radius
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg(polylines: &[CirclePolyline], path: &Path) -> Result<()> {
    let text = render_svg(polylines)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
