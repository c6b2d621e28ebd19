//! Operations under which the class is closed: convex combinations, harmonic
//! convolution and the Hadamard product with an analytic factor.
//!
//! Mixed truncation orders are resolved to the shortest operand.

use num_complex::Complex64;

use crate::harmonic::HarmonicMap;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

const WEIGHT_TOL: f64 = 1e-12;

/// `Σ w_i f_i` for nonnegative weights summing to 1.
pub fn convex_combination(maps: &[HarmonicMap], weights: &[f64]) -> Result<HarmonicMap> {
    if maps.is_empty() {
        return Err(Error::InvalidArgument("no maps to combine".into()));
    }
    if maps.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} maps but {} weights",
            maps.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::InvalidArgument(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let order = maps.iter().map(HarmonicMap::order).min().unwrap_or(1);
    let mut s = TruncatedSeries::zeros(order);
    let mut t = TruncatedSeries::zeros(order);
    for (f, &w) in maps.iter().zip(weights) {
        let f = f.truncated(order);
        s = s.add_scaled(Complex64::new(w, 0.0), f.s());
        t = t.add_scaled(Complex64::new(w, 0.0), f.t());
    }
    // Σw = 1 up to rounding; pin the normalization exactly.
    let mut s_coeffs = s.coeffs().to_vec();
    s_coeffs[0] = Complex64::new(0.0, 0.0);
    s_coeffs[1] = Complex64::new(1.0, 0.0);
    HarmonicMap::new(TruncatedSeries::new(s_coeffs)?, t)
}

/// `f₁ ∗ f₂ = s₁ ∗ s₂ + conj(t₁ ∗ t₂)`.
pub fn convolve_harmonic(f1: &HarmonicMap, f2: &HarmonicMap) -> HarmonicMap {
    HarmonicMap::new(f1.s().hadamard(f2.s()), f1.t().hadamard(f2.t()))
        .expect("hadamard of normalized maps is normalized")
}

/// `f ∗̃ φ = s ∗ φ + conj(t ∗ φ)` for a normalized analytic `φ`.
pub fn goodloe_product(f: &HarmonicMap, phi: &TruncatedSeries) -> Result<HarmonicMap> {
    if !phi.is_normalized() || phi.order() < 1 {
        return Err(Error::Normalization(
            "φ must satisfy φ(0) = 0 and φ′(0) = 1".into(),
        ));
    }
    HarmonicMap::new(f.s().hadamard(phi), f.t().hadamard(phi))
}
