//! Radii of full convexity and full starlikeness for the class, the series
//! threshold on `λ` that makes `(1, δ, λ)` members fully convex, and a numeric
//! per-map radius found by bisection on the circle tests of [`crate::geometry`].
//!
//! `pc` and `ps` are positive at 0, negative at 1 and strictly decreasing on
//! `(0, 1)`, so bisection on `(0, 1)` converges to their unique root there.

use serde::Serialize;

use crate::geometry::{convex_on_circle, starlike_on_circle};
use crate::harmonic::{ClassParams, HarmonicMap};
use crate::{Error, Result};

pub const MAX_BISECTION_STEPS: usize = 200;

/// Probe interval of the numeric oracle.
pub const ORACLE_MIN_RADIUS: f64 = 1e-3;
pub const ORACLE_MAX_RADIUS: f64 = 0.999;

/// `|m · term_m|` above this for every `m` in the detector window flags a harmonic-like tail.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-3;
/// The detector always scans at least up to this index, whatever `N`.
pub const DIVERGENCE_HORIZON: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    Bisection,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusReport {
    pub radius: f64,
    pub bracket: (f64, f64),
    /// `|poly(radius)|` for polynomial roots; 0 for the oracle.
    pub residual: f64,
    pub iterations: usize,
    pub method: RadiusMethod,
}

/// `(−δ−2γ+λ)r³ + (3δ+6γ−3λ)r² + (−3δ−7γ+4λ)r + δ+γ`.
pub fn pc_poly(p: &ClassParams, r: f64) -> f64 {
    let (g, d, l) = (p.gamma(), p.delta(), p.lambda());
    (((-d - 2.0 * g + l) * r + (3.0 * d + 6.0 * g - 3.0 * l)) * r + (-3.0 * d - 7.0 * g + 4.0 * l))
        * r
        + d
        + g
}

pub fn pc_derivative(p: &ClassParams, r: f64) -> f64 {
    let (g, d, l) = (p.gamma(), p.delta(), p.lambda());
    (3.0 * (-d - 2.0 * g + l) * r + 2.0 * (3.0 * d + 6.0 * g - 3.0 * l)) * r
        + (-3.0 * d - 7.0 * g + 4.0 * l)
}

/// `(δ+2γ−λ)r² + (−2δ−4γ+2λ)r + δ+γ`.
pub fn ps_poly(p: &ClassParams, r: f64) -> f64 {
    let (g, d, l) = (p.gamma(), p.delta(), p.lambda());
    ((d + 2.0 * g - l) * r + (-2.0 * d - 4.0 * g + 2.0 * l)) * r + d + g
}

pub fn ps_derivative(p: &ClassParams, r: f64) -> f64 {
    2.0 * (p.delta() + 2.0 * p.gamma() - p.lambda()) * (r - 1.0)
}

/// Bisection for a root of a function that is positive at `lo` and negative at `hi`.
fn bisect_decreasing(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<RadiusReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return Err(Error::Consistency(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {}, f(hi) = {}",
            f(lo),
            f(hi)
        )));
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let radius = 0.5 * (lo + hi);
    Ok(RadiusReport {
        radius,
        bracket: (lo, hi),
        residual: f(radius).abs(),
        iterations,
        method: RadiusMethod::Bisection,
    })
}

/// Members are fully convex in `|z| < r_c`, the root of `pc` in `(0, 1)`.
pub fn radius_fully_convex(p: &ClassParams, tol: f64) -> Result<RadiusReport> {
    bisect_decreasing(|r| pc_poly(p, r), 0.0, 1.0, tol)
}

/// Members are fully starlike in `|z| < r_s`, the root of `ps` in `(0, 1)`.
pub fn radius_fully_starlike(p: &ClassParams, tol: f64) -> Result<RadiusReport> {
    bisect_decreasing(|r| ps_poly(p, r), 0.0, 1.0, tol)
}

/// Smaller root of `ps`: with `a = δ+2γ−λ`, `ps = a(r−1)² + (δ+γ−a)`, so `r_s = 1 − √(1 − (δ+γ)/a)`.
pub fn starlike_radius_closed_form(p: &ClassParams) -> f64 {
    let a = p.delta() + 2.0 * p.gamma() - p.lambda();
    let gap = (p.gamma() - p.lambda()) / a;
    1.0 - gap.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ThresholdOutcome {
    /// `λ_N` solved from the partial sum `S_N`; no extrapolation to `S_∞` is attempted.
    Converged {
        lambda: f64,
        partial_sum: f64,
        /// First omitted term of the series.
        first_omitted: f64,
        terms: usize,
    },
    /// The terms decay like `c/m` with `c ≠ 0`, so the series does not converge.
    Divergent {
        partial_sum: f64,
        /// `m · term_m` at the end of the detector window.
        scaled_term: f64,
        terms: usize,
    },
}

/// m-th term `[2m(3−δ) + (δ−5)] / [(m+1)(m(δ−1) + 2)]`.
pub fn threshold_term(delta: f64, m: usize) -> f64 {
    let mf = m as f64;
    (2.0 * mf * (3.0 - delta) + (delta - 5.0)) / ((mf + 1.0) * (mf * (delta - 1.0) + 2.0))
}

/// Solves `7 − 3δ = 4λ + 4(1−λ) S_N` for `λ`, with `S_N` the partial sum through `m = N`.
///
/// The divergence detector looks at `|m · term_m|` for `m ∈ [H/2, H]`, `H = max(N, 1000)`.
pub fn convexity_threshold_lambda(delta: f64, terms: usize) -> Result<ThresholdOutcome> {
    if !(delta.is_finite() && delta >= 1.0) {
        return Err(Error::InvalidArgument(format!("δ = {delta} must be ≥ 1")));
    }
    if terms < 10 {
        return Err(Error::InvalidArgument(format!("N = {terms} < 10")));
    }
    let partial_sum: f64 = (1..=terms).map(|m| threshold_term(delta, m)).sum();

    let horizon = terms.max(DIVERGENCE_HORIZON);
    let divergent = (horizon / 2..=horizon)
        .all(|m| (m as f64 * threshold_term(delta, m)).abs() > DIVERGENCE_THRESHOLD);
    if divergent {
        return Ok(ThresholdOutcome::Divergent {
            partial_sum,
            scaled_term: horizon as f64 * threshold_term(delta, horizon),
            terms,
        });
    }
    let lambda = (7.0 - 3.0 * delta - 4.0 * partial_sum) / (4.0 - 4.0 * partial_sum);
    Ok(ThresholdOutcome::Converged {
        lambda,
        partial_sum,
        first_omitted: threshold_term(delta, terms + 1),
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleProperty {
    Starlike,
    Convex,
}

impl std::str::FromStr for CircleProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "starlike" => Ok(Self::Starlike),
            "convex" => Ok(Self::Convex),
            other => Err(Error::InvalidArgument(format!(
                "unknown property `{other}` (expected starlike or convex)"
            ))),
        }
    }
}

fn circle_passes(f: &HarmonicMap, property: CircleProperty, r: f64, n: usize) -> bool {
    let verdict = match property {
        CircleProperty::Starlike => starlike_on_circle(f, r, n),
        CircleProperty::Convex => convex_on_circle(f, r, n),
    };
    // degenerate circles count as failures
    verdict.map(|v| v.holds).unwrap_or(false)
}

/// Largest `r ≤ 0.999` at which the circle test for `property` passes, by bisection.
///
/// The reported radius is the lower end of the final bracket, the largest radius
/// actually seen to pass. When the test passes at 0.999 the bracket collapses to
/// that point.
pub fn numeric_radius_oracle(
    f: &HarmonicMap,
    property: CircleProperty,
    tol: f64,
    n_theta: usize,
) -> Result<RadiusReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let report = |lo: f64, hi: f64, iterations| RadiusReport {
        radius: lo,
        bracket: (lo, hi),
        residual: 0.0,
        iterations,
        method: RadiusMethod::Oracle,
    };
    if circle_passes(f, property, ORACLE_MAX_RADIUS, n_theta) {
        return Ok(report(ORACLE_MAX_RADIUS, ORACLE_MAX_RADIUS, 0));
    }
    if !circle_passes(f, property, ORACLE_MIN_RADIUS, n_theta) {
        return Err(Error::Degenerate(format!(
            "{property:?} test fails already at r = {ORACLE_MIN_RADIUS}"
        )));
    }
    let (mut lo, mut hi) = (ORACLE_MIN_RADIUS, ORACLE_MAX_RADIUS);
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if circle_passes(f, property, mid, n_theta) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(report(lo, hi, iterations))
}
