//! The operator `L[h] = γh′ + δ z h″ + ((δ−γ)/2) z² h‴` and the membership tests built on it.
//!
//! Sampled tests report the worst slack over a [`PolarGrid`]. A holding verdict is
//! evidence at the sampled resolution; a failing verdict carries a witness that
//! violates the inequality.

use num_complex::Complex64;
use serde::Serialize;

use crate::grid::{grid_resolution, MarginMin, MembershipVerdict, PolarGrid};
use crate::harmonic::{ClassParams, HarmonicMap};
use crate::series::{check_closed_disk, TruncatedSeries};
use crate::{Error, Result};

/// Smallest number of slice rotations accepted by [`slice_membership_sampled`].
pub const MIN_EPS_SAMPLES: usize = 4;

/// `L[h]` as a polynomial, assembled from the formal derivatives of `h`.
pub fn operator_series(h: &TruncatedSeries, p: &ClassParams) -> TruncatedSeries {
    let gamma = p.gamma();
    let delta = p.delta();
    let first = h.derivative(1).expect("k ≤ 3");
    let second = h.derivative(2).expect("k ≤ 3").shift_up(1);
    let third = h.derivative(3).expect("k ≤ 3").shift_up(2);
    first
        .scale(Complex64::new(gamma, 0.0))
        .add_scaled(Complex64::new(delta, 0.0), &second)
        .add_scaled(Complex64::new(0.5 * (delta - gamma), 0.0), &third)
        .resized(h.order().saturating_sub(1))
}

/// `L[h](z)` for `|z| ≤ 1`.
pub fn apply_l(h: &TruncatedSeries, p: &ClassParams, z: Complex64) -> Result<Complex64> {
    check_closed_disk(z)?;
    Ok(operator_series(h, p).eval(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SufficientReport {
    pub holds: bool,
    /// `Σ_{m≥2} m²[2γ+(δ−γ)(m−1)] (|a_m| + |b_m|)`.
    pub sum: f64,
    /// `2(γ−λ)`.
    pub bound: f64,
}

/// Coefficient condition `Σ m²[2γ+(δ−γ)(m−1)](|a_m|+|b_m|) ≤ 2(γ−λ)`, which implies membership.
///
/// The comparison admits a relative rounding slack of `1e-12` so that maps built
/// exactly on the boundary are accepted.
pub fn membership_sufficient(f: &HarmonicMap, p: &ClassParams) -> SufficientReport {
    let sum: f64 = (2..=f.order())
        .map(|m| p.weight(m) * (f.s().coeff(m).norm() + f.t().coeff(m).norm()))
        .sum();
    let bound = 2.0 * (p.gamma() - p.lambda());
    SufficientReport {
        holds: sum <= bound * (1.0 + 1e-12),
        sum,
        bound,
    }
}

/// `min_z Re[L s(z)] − λ − |L t(z)|` over the grid.
pub fn membership_sampled(
    f: &HarmonicMap,
    p: &ClassParams,
    grid: &PolarGrid,
) -> Result<MembershipVerdict> {
    grid.validate_interior()?;
    let ls = operator_series(f.s(), p);
    let lt = operator_series(f.t(), p);
    let mut min = MarginMin::new();
    for z in grid.points() {
        min.push(z, ls.eval(z).re - p.lambda() - lt.eval(z).norm());
    }
    Ok(MembershipVerdict::from_minimum(min, grid_resolution(grid)))
}

/// Worst slack of `Re[L F_ε(z)] > λ` over `ε = e^{2πik/n_eps}` and the grid.
///
/// Samples are reduced in (ε index, radius, angle) order; the diagnostic names
/// the rotation attaining the margin.
pub fn slice_membership_sampled(
    f: &HarmonicMap,
    p: &ClassParams,
    n_eps: usize,
    grid: &PolarGrid,
) -> Result<MembershipVerdict> {
    if n_eps < MIN_EPS_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "n_eps = {n_eps} < {MIN_EPS_SAMPLES}"
        )));
    }
    grid.validate_interior()?;
    let ls = operator_series(f.s(), p);
    let lt = operator_series(f.t(), p);
    let values: Vec<(Complex64, Complex64, Complex64)> =
        grid.points().map(|z| (z, ls.eval(z), lt.eval(z))).collect();

    let mut min = MarginMin::new();
    let mut worst_eps = Complex64::new(1.0, 0.0);
    for k in 0..n_eps {
        let eps = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n_eps as f64);
        for &(z, a, b) in &values {
            let before = min.margin;
            min.push(z, (a + eps * b).re - p.lambda());
            if min.margin < before || (min.margin.is_nan() && !before.is_nan()) {
                worst_eps = eps;
            }
        }
    }
    let resolution = format!("{} with {n_eps} rotations", grid_resolution(grid));
    let mut verdict = MembershipVerdict::from_minimum(min, resolution);
    verdict.diagnostic = Some(format!(
        "worst rotation eps = {:.6} {:+.6}i",
        worst_eps.re, worst_eps.im
    ));
    Ok(verdict)
}

fn require_normalized(h: &TruncatedSeries, what: &str) -> Result<()> {
    if h.is_normalized() {
        Ok(())
    } else {
        Err(Error::Normalization(format!(
            "{what} must satisfy F(0) = 0 and F′(0) = 1"
        )))
    }
}

/// `min Re F′(z)` over the grid; positive values make `F` close-to-convex.
pub fn close_to_convex_check(h: &TruncatedSeries, grid: &PolarGrid) -> Result<MembershipVerdict> {
    require_normalized(h, "close-to-convexity test function")?;
    grid.validate()?;
    let dh = h.derivative(1)?;
    let mut min = MarginMin::new();
    for z in grid.points() {
        min.push(z, dh.eval(z).re);
    }
    Ok(MembershipVerdict::from_minimum(min, grid_resolution(grid)))
}

/// `min Re(F(z)/z) − 1/2` over the grid; the quotient is evaluated as the series `F(z)/z`.
pub fn half_plane_check(h: &TruncatedSeries, grid: &PolarGrid) -> Result<MembershipVerdict> {
    require_normalized(h, "half-plane test function")?;
    grid.validate()?;
    let quotient = h.divide_by_z();
    let mut min = MarginMin::new();
    for z in grid.points() {
        min.push(z, quotient.eval(z).re - 0.5);
    }
    Ok(MembershipVerdict::from_minimum(min, grid_resolution(grid)))
}
