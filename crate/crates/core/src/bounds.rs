//! Sharp coefficient bounds and the growth envelope of the class.
//!
//! Growth bounds are evaluated from their series with an explicit remainder:
//! the upper series is majorized by a geometric tail, the lower (alternating,
//! decreasing terms) by its first omitted term. For `r` near 1 and large
//! `γ − λ` the lower bound can go negative; it is reported as is.

use serde::Serialize;

use crate::grid::{grid_resolution, MarginMin, MembershipVerdict, PolarGrid};
use crate::harmonic::{ClassParams, HarmonicMap};
use crate::{Error, Result};

/// Default number of series terms for growth bounds.
pub const DEFAULT_GROWTH_TERMS: usize = 512;

/// Slacks below `-BOUND_TOL · bound` count as violations.
const BOUND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRecord {
    pub m: usize,
    pub abs_a: f64,
    pub abs_b: f64,
    /// `4(γ−λ)/(m²[2γ+(δ−γ)(m−1)])`; bounds `|a_m|`, `|a_m|+|b_m|` and `||a_m|−|b_m||`.
    pub bound_a: f64,
    /// `2(γ−λ)/(m²[2γ+(δ−γ)(m−1)])`; bounds `|b_m|`.
    pub bound_b: f64,
    pub slack_a: f64,
    pub slack_b: f64,
    pub slack_sum: f64,
    pub slack_diff: f64,
}

impl BoundRecord {
    fn violated(&self) -> bool {
        let tol_a = BOUND_TOL * self.bound_a;
        self.slack_a < -tol_a
            || self.slack_sum < -tol_a
            || self.slack_diff < -tol_a
            || self.slack_b < -BOUND_TOL * self.bound_b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub records: Vec<BoundRecord>,
    /// Indices `m` where some bound is exceeded; any entry rules out membership.
    pub violations: Vec<usize>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&self, m: usize) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.m == m)
    }
}

/// Per-coefficient slacks against the sharp bounds, for `m = 2..=order`.
pub fn coefficient_bound_check(f: &HarmonicMap, p: &ClassParams) -> BoundReport {
    let records: Vec<BoundRecord> = (2..=f.order())
        .map(|m| {
            let abs_a = f.s().coeff(m).norm();
            let abs_b = f.t().coeff(m).norm();
            let bound_a = p.analytic_bound(m);
            let bound_b = p.coanalytic_bound(m);
            BoundRecord {
                m,
                abs_a,
                abs_b,
                bound_a,
                bound_b,
                slack_a: bound_a - abs_a,
                slack_b: bound_b - abs_b,
                slack_sum: bound_a - (abs_a + abs_b),
                slack_diff: bound_a - (abs_a - abs_b).abs(),
            }
        })
        .collect();
    let violations = records
        .iter()
        .filter(|r| r.violated())
        .map(|r| r.m)
        .collect();
    BoundReport {
        records,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthBound {
    /// Partial sum through `m = N`.
    pub value: f64,
    /// Certified bound on the omitted remainder.
    pub tail: f64,
}

fn check_growth_args(r: f64, terms: usize) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "growth radius r = {r} outside [0, 1)"
        )));
    }
    if terms < 2 {
        return Err(Error::InvalidArgument(format!("N = {terms} < 2")));
    }
    Ok(())
}

/// `r + 4(γ−λ) Σ_{m=2..N} r^m / (m²[2γ+(δ−γ)(m−1)])`, with tail `≤ 4(γ−λ)/(2γN²) · r^{N+1}/(1−r)`.
pub fn growth_upper(p: &ClassParams, r: f64, terms: usize) -> Result<GrowthBound> {
    check_growth_args(r, terms)?;
    let scale = 4.0 * (p.gamma() - p.lambda());
    let mut power = r;
    let mut value = r;
    for m in 2..=terms {
        power *= r;
        value += scale * power / p.weight(m);
    }
    let n = terms as f64;
    let tail = scale / (2.0 * p.gamma() * n * n) * power * r / (1.0 - r);
    Ok(GrowthBound { value, tail })
}

/// `r + 4(γ−λ) Σ_{m=2..N} (−1)^{m−1} r^m / (m²[2γ+(δ−γ)(m−1)])`; tail is the first omitted term.
pub fn growth_lower(p: &ClassParams, r: f64, terms: usize) -> Result<GrowthBound> {
    check_growth_args(r, terms)?;
    let scale = 4.0 * (p.gamma() - p.lambda());
    let mut power = r;
    let mut value = r;
    for m in 2..=terms {
        power *= r;
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
        value += sign * scale * power / p.weight(m);
    }
    let tail = scale * power * r / p.weight(terms + 1);
    Ok(GrowthBound { value, tail })
}

/// Checks `lower(|z|) − tail ≤ |f(z)| ≤ upper(|z|) + tail` on the grid. The margin is the
/// smaller of the two slacks; a violation rules out membership.
pub fn growth_envelope_check(
    f: &HarmonicMap,
    p: &ClassParams,
    grid: &PolarGrid,
    terms: usize,
) -> Result<MembershipVerdict> {
    grid.validate_interior()?;
    let step = std::f64::consts::TAU / grid.angles as f64;
    let mut min = MarginMin::new();
    for i in 0..grid.radii {
        let r = grid.radius(i);
        let upper = growth_upper(p, r, terms)?;
        let lower = growth_lower(p, r, terms)?;
        let hi = upper.value + upper.tail;
        let lo = lower.value - lower.tail;
        for j in 0..grid.angles {
            let z = num_complex::Complex64::from_polar(r, step * j as f64);
            let modulus = f.eval(z).norm();
            min.push(z, (hi - modulus).min(modulus - lo));
        }
    }
    Ok(MembershipVerdict::from_minimum(min, grid_resolution(grid)))
}
