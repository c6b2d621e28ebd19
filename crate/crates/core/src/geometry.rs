//! Per-circle geometry of `f(re^{iθ})`: starlikeness, convexity and injectivity of the image curve.
//!
//! With `z = re^{iθ}` the tangent of the image curve is
//! `∂θ f = i (z s′(z) − conj(z t′(z)))`, so the angular speed of `arg f` is
//! `Re[(z s′ − conj(z t′)) / f]`. Convexity is measured by the turning rate of
//! the tangent argument, taken by central differences of the unwrapped phase.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::grid::{MarginMin, MembershipVerdict};
use crate::harmonic::HarmonicMap;
use crate::{Error, Result};

pub const MIN_CIRCLE_SAMPLES: usize = 64;
/// Angle count for verdicts.
pub const VERDICT_SAMPLES: usize = 1024;
/// Angle count for plots.
pub const PLOT_SAMPLES: usize = 256;

const ZERO_MODULUS: f64 = 1e-12;
const ZERO_TANGENT: f64 = 1e-10;

/// Sampled image of the circle `|z| = r`; the last point connects back to the first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CirclePolyline {
    pub radius: f64,
    pub points: Vec<Complex64>,
}

impl CirclePolyline {
    pub fn n(&self) -> usize {
        self.points.len()
    }
}

fn check_circle(r: f64, n: usize) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!(
            "circle radius r = {r} outside (0, 1)"
        )));
    }
    if n < MIN_CIRCLE_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "n = {n} < {MIN_CIRCLE_SAMPLES} circle samples"
        )));
    }
    Ok(())
}

fn circle_points(r: f64, n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |k| Complex64::from_polar(r, TAU * k as f64 / n as f64))
}

/// Wraps an angle difference into `(−π, π]`.
fn wrap(mut d: f64) -> f64 {
    while d > PI {
        d -= TAU;
    }
    while d <= -PI {
        d += TAU;
    }
    d
}

/// Successive wrapped argument increments around a closed sample sequence.
fn phase_increments(values: &[Complex64]) -> Vec<f64> {
    let n = values.len();
    (0..n)
        .map(|k| wrap(values[(k + 1) % n].arg() - values[k].arg()))
        .collect()
}

fn turning_number(increments: &[f64]) -> i64 {
    (increments.iter().sum::<f64>() / TAU).round() as i64
}

pub fn circle_image(f: &HarmonicMap, r: f64, n: usize) -> Result<CirclePolyline> {
    check_circle(r, n)?;
    Ok(CirclePolyline {
        radius: r,
        points: circle_points(r, n).map(|z| f.eval(z)).collect(),
    })
}

/// `z s′(z) − conj(z t′(z))`, i.e. `−i ∂θ f(re^{iθ})`.
fn radial_derivative(f: &HarmonicMap) -> impl Fn(Complex64) -> Complex64 {
    let ds = f.s().derivative(1).expect("k ≤ 3");
    let dt = f.t().derivative(1).expect("k ≤ 3");
    move |z| z * ds.eval(z) - (z * dt.eval(z)).conj()
}

/// Margin `min_θ Re[(z s′ − conj(z t′)) / f]`. The image must also wind once around 0.
pub fn starlike_on_circle(f: &HarmonicMap, r: f64, n: usize) -> Result<MembershipVerdict> {
    check_circle(r, n)?;
    let deriv = radial_derivative(f);
    let mut values = Vec::with_capacity(n);
    let mut min = MarginMin::new();
    for z in circle_points(r, n) {
        let w = f.eval(z);
        if w.norm() < ZERO_MODULUS {
            return Err(Error::Degenerate(format!(
                "f vanishes on |z| = {r} near z = {z}"
            )));
        }
        min.push(z, (deriv(z) / w).re);
        values.push(w);
    }
    let verdict = MembershipVerdict::from_minimum(min, format!("{n} angles on |z| = {r}"));
    let winding = turning_number(&phase_increments(&values));
    Ok(if winding == 1 {
        verdict
    } else {
        verdict.fail_with(format!("image winds {winding} times around 0"))
    })
}

/// Margin `min_θ ∂θ arg ∂θ f(re^{iθ})`; the tangent must also turn exactly once.
pub fn convex_on_circle(f: &HarmonicMap, r: f64, n: usize) -> Result<MembershipVerdict> {
    check_circle(r, n)?;
    let deriv = radial_derivative(f);
    let points: Vec<Complex64> = circle_points(r, n).collect();
    let tangents: Vec<Complex64> = points
        .iter()
        .map(|&z| Complex64::new(0.0, 1.0) * deriv(z))
        .collect();
    if let Some(k) = tangents.iter().position(|t| t.norm() < ZERO_TANGENT) {
        return Err(Error::Degenerate(format!(
            "tangent vanishes on |z| = {r} near z = {}",
            points[k]
        )));
    }
    let increments = phase_increments(&tangents);
    let h = TAU / n as f64;
    let mut min = MarginMin::new();
    for k in 0..n {
        let prev = increments[(k + n - 1) % n];
        min.push(points[k], (prev + increments[k]) / (2.0 * h));
    }
    let verdict = MembershipVerdict::from_minimum(min, format!("{n} angles on |z| = {r}"));
    let total: f64 = increments.iter().sum();
    let turns = turning_number(&increments);
    Ok(if turns == 1 && (total - TAU).abs() <= 1e-6 {
        verdict
    } else {
        verdict.fail_with(format!(
            "tangent turning number {turns} (total turning {total:.9})"
        ))
    })
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b - a).re * (c - a).im - (b - a).im * (c - a).re
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test, including touching and collinear overlap.
pub(crate) fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// True when the closed image polyline has no self-intersection between non-adjacent segments.
pub fn injective_on_circle(f: &HarmonicMap, r: f64, n: usize) -> Result<bool> {
    let poly = circle_image(f, r, n)?;
    Ok(polyline_is_simple(&poly.points))
}

pub(crate) fn polyline_is_simple(points: &[Complex64]) -> bool {
    let n = points.len();
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = seg(i);
        let (lo_x, hi_x) = (a.re.min(b.re), a.re.max(b.re));
        let (lo_y, hi_y) = (a.im.min(b.im), a.im.max(b.im));
        for j in (i + 2)..n {
            // the last segment shares a vertex with the first
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = seg(j);
            if c.re.max(d.re) < lo_x
                || c.re.min(d.re) > hi_x
                || c.im.max(d.im) < lo_y
                || c.im.min(d.im) > hi_y
            {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}
