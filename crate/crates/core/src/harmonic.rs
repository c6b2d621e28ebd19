//! Class parameters, the harmonic map model `f = s + conj(t)`, extremal members and slices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::grid::{grid_resolution, MarginMin, MembershipVerdict, PolarGrid};
use crate::series::{check_closed_disk, check_point, TruncatedSeries, SERIES_TOL};
use crate::{Error, Result};

/// Sense-preserving margins below this are flagged as near-degenerate.
pub const NEAR_DEGENERATE: f64 = 1e-6;

/// Parameters `(γ, δ, λ)` with `0 ≤ λ < γ ≤ δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    gamma: f64,
    delta: f64,
    lambda: f64,
}

impl ClassParams {
    pub fn new(gamma: f64, delta: f64, lambda: f64) -> Result<Self> {
        if !(gamma.is_finite() && delta.is_finite() && lambda.is_finite()) {
            return Err(Error::NonFinite("class parameters"));
        }
        if lambda < 0.0 {
            return Err(Error::InvalidParams("0 ≤ λ violated".into()));
        }
        if lambda >= gamma {
            return Err(Error::InvalidParams("λ < γ violated".into()));
        }
        if gamma > delta {
            return Err(Error::InvalidParams("γ ≤ δ violated".into()));
        }
        Ok(Self {
            gamma,
            delta,
            lambda,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `m²[2γ + (δ−γ)(m−1)]`, the weight of the m-th coefficient in the sufficient condition.
    pub fn weight(&self, m: usize) -> f64 {
        let mf = m as f64;
        mf * mf * (2.0 * self.gamma + (self.delta - self.gamma) * (mf - 1.0))
    }

    /// The operator multiplier on `z^m`: `L[z^m] = m²[γ + ((δ−γ)/2)(m−1)] z^{m−1}`.
    pub fn operator_multiplier(&self, m: usize) -> f64 {
        0.5 * self.weight(m)
    }

    /// Sharp bound on `|b_m|`: `2(γ−λ) / (m²[2γ+(δ−γ)(m−1)])`.
    pub fn coanalytic_bound(&self, m: usize) -> f64 {
        2.0 * (self.gamma - self.lambda) / self.weight(m)
    }

    /// Sharp bound on `|a_m|`, `|a_m| + |b_m|` and `||a_m| − |b_m||`; twice the co-analytic one.
    pub fn analytic_bound(&self, m: usize) -> f64 {
        4.0 * (self.gamma - self.lambda) / self.weight(m)
    }
}

/// `f = s + conj(t)` with `s(0) = 0`, `s′(0) = 1`, `t(0) = t′(0) = 0`.
///
/// Both parts share one truncation order; a shorter part is padded with zeros
/// on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    s: TruncatedSeries,
    t: TruncatedSeries,
}

impl HarmonicMap {
    pub fn new(s: TruncatedSeries, t: TruncatedSeries) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        if s.order() < 1 {
            return Err(Error::Normalization("s needs coefficients up to z".into()));
        }
        if s.coeff(0).norm() > SERIES_TOL {
            return Err(Error::Normalization("s(0) must be 0".into()));
        }
        if (s.coeff(1) - one).norm() > SERIES_TOL {
            return Err(Error::Normalization("s′(0) must be 1".into()));
        }
        if t.coeff(0).norm() > SERIES_TOL {
            return Err(Error::Normalization("t(0) must be 0".into()));
        }
        if t.coeff(1).norm() > SERIES_TOL {
            return Err(Error::Normalization("t′(0) must be 0".into()));
        }
        let order = s.order().max(t.order());
        Ok(Self {
            s: s.resized(order),
            t: t.resized(order),
        })
    }

    /// `f(z) = z`.
    pub fn identity(order: usize) -> Self {
        let order = order.max(1);
        Self {
            s: TruncatedSeries::identity(order),
            t: TruncatedSeries::zeros(order),
        }
    }

    /// Analytic map `f = s` with `t ≡ 0`.
    pub fn analytic(s: TruncatedSeries) -> Result<Self> {
        let t = TruncatedSeries::zeros(s.order());
        Self::new(s, t)
    }

    pub fn s(&self) -> &TruncatedSeries {
        &self.s
    }

    pub fn t(&self) -> &TruncatedSeries {
        &self.t
    }

    pub fn order(&self) -> usize {
        self.s.order()
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.max(1);
        Self {
            s: self.s.resized(order),
            t: self.t.resized(order),
        }
    }

    /// `s(z) + conj(t(z))` on the closed disk.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_closed_disk(z)?;
        Ok(self.eval(z))
    }

    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        self.s.eval(z) + self.t.eval(z).conj()
    }

    /// The analytic function `F_ε = s + ε t` for `|ε| = 1`.
    pub fn slice(&self, eps: Complex64) -> Result<TruncatedSeries> {
        check_point(eps, "slice rotation")?;
        if (eps.norm() - 1.0).abs() > SERIES_TOL {
            return Err(Error::InvalidArgument(format!(
                "slice rotation must be unimodular, |ε| = {}",
                eps.norm()
            )));
        }
        Ok(self.s.add_scaled(eps, &self.t))
    }

    /// Checks `|s′(z)| > |t′(z)|` on the grid; the margin is `min |s′| − |t′|`.
    pub fn sense_preserving_check(&self, grid: &PolarGrid) -> Result<MembershipVerdict> {
        grid.validate_interior()?;
        let ds = self.s.derivative(1)?;
        let dt = self.t.derivative(1)?;
        let mut min = MarginMin::new();
        for z in grid.points() {
            min.push(z, ds.eval(z).norm() - dt.eval(z).norm());
        }
        Ok(MembershipVerdict::from_minimum(min, grid_resolution(grid))
            .flag_near_degenerate(NEAR_DEGENERATE))
    }
}

/// `z + c conj(z)^m` with `c` equal to the co-analytic coefficient bound; attains it.
pub fn make_extremal_single(p: &ClassParams, m: usize) -> Result<HarmonicMap> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "extremal index m = {m} < 2"
        )));
    }
    let mut t = vec![Complex64::new(0.0, 0.0); m + 1];
    t[m] = Complex64::new(p.coanalytic_bound(m), 0.0);
    HarmonicMap::new(TruncatedSeries::identity(m), TruncatedSeries::new(t)?)
}

/// `z + Σ_{m=2..N} 4(γ−λ)/(m²[2γ+(δ−γ)(m−1)]) z^m`, analytic; attains every analytic-part bound.
pub fn make_extremal_full(p: &ClassParams, order: usize) -> Result<HarmonicMap> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "extremal order N = {order} < 2"
        )));
    }
    let mut s = vec![Complex64::new(0.0, 0.0); order + 1];
    s[1] = Complex64::new(1.0, 0.0);
    for (m, c) in s.iter_mut().enumerate().skip(2) {
        *c = Complex64::new(p.analytic_bound(m), 0.0);
    }
    HarmonicMap::analytic(TruncatedSeries::new(s)?)
}
