//! Truncated complex power series `c₀ + c₁z + … + c_N z^N` on the closed unit disk.
//!
//! Coefficients are stored densely with the index equal to the power. All
//! operations are pure and return new values.

use num_complex::Complex64;

use crate::{Error, Result};

/// Default truncation order used by constructors that build infinite series.
pub const DEFAULT_ORDER: usize = 64;

/// Absolute tolerance for coefficient-level equality comparisons.
pub const SERIES_TOL: f64 = 1e-12;

/// Highest derivative the class operator needs.
pub const MAX_DERIVATIVE: usize = 3;

pub(crate) fn check_point(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Rejects non-finite points and points with `|z| > 1`.
pub(crate) fn check_closed_disk(z: Complex64) -> Result<()> {
    check_point(z, "evaluation point")?;
    if z.norm() > 1.0 {
        return Err(Error::Domain(format!("|z| = {} > 1", z.norm())));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; at least one entry, all finite.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFinite("series coefficients"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    /// `z`, padded with zeros up to `order` (at least 1).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zeros(order.max(1));
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        s
    }

    /// `z + z² + … + z^order`, the truncation of `z/(1−z)`; the unit of the Hadamard product
    /// on normalized series.
    pub fn geometric(order: usize) -> Self {
        let mut s = Self::zeros(order.max(1));
        for c in s.coeffs.iter_mut().skip(1) {
            *c = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// `z^m`.
    pub fn monomial(m: usize) -> Self {
        let mut s = Self::zeros(m);
        s.coeffs[m] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^m`; zero past the truncation order.
    pub fn coeff(&self, m: usize) -> Complex64 {
        self.coeffs.get(m).copied().unwrap_or_default()
    }

    /// Horner evaluation on the closed unit disk.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_closed_disk(z)?;
        Ok(self.eval(z))
    }

    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `k`-th formal derivative, `0 ≤ k ≤ 3`. The order drops by `k`, but never below 0.
    pub fn derivative(&self, k: usize) -> Result<Self> {
        if k > MAX_DERIVATIVE {
            return Err(Error::InvalidArgument(format!(
                "derivative order {k} exceeds {MAX_DERIVATIVE}"
            )));
        }
        Ok(self.derivative_unchecked(k))
    }

    fn derivative_unchecked(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if k > self.order() {
            return Self::zeros(0);
        }
        let coeffs = (k..self.coeffs.len())
            .map(|m| {
                let falling: f64 = (0..k).map(|j| (m - j) as f64).product();
                self.coeffs[m] * falling
            })
            .collect();
        Self { coeffs }
    }

    /// Coefficient-wise product, truncated to the shorter of the two.
    pub fn hadamard(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .collect();
        Self { coeffs }
    }

    /// The series of `f(rz)/r`, i.e. `c_m ↦ c_m r^{m−1}`, for `0 < r ≤ 1`.
    pub fn scale_argument(&self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Domain(format!(
                "scale factor r = {r} outside (0, 1]"
            )));
        }
        let mut power = 1.0 / r;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power *= r;
                out
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// Keeps coefficients `0..=order`, padding with zeros if the series is shorter.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// `self + alpha · other`; the result has the larger of the two orders.
    pub fn add_scaled(&self, alpha: Complex64, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|m| self.coeff(m) + alpha * other.coeff(m))
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * alpha).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub(crate) fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// The series of `(F(z) − F(0))/z`.
    pub(crate) fn divide_by_z(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(0);
        }
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Largest coefficient-wise distance, with missing entries read as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|m| (self.coeff(m) - other.coeff(m)).norm())
            .fold(0.0, f64::max)
    }

    /// `F(0) = 0` and `F′(0) = 1` within [`SERIES_TOL`].
    pub fn is_normalized(&self) -> bool {
        self.coeff(0).norm() <= SERIES_TOL
            && (self.coeff(1) - Complex64::new(1.0, 0.0)).norm() <= SERIES_TOL
    }
}
