//! Random class parameters and random class members for property tests and sweeps.
//!
//! Members are built from a sparse set of coefficients rescaled so that the
//! coefficient condition sum equals `u · 2(γ−λ)` with `u ∈ (0, 1)`, which makes
//! every generated map a member without a sampled precondition.

use num_complex::Complex64;
use rand::Rng;

use crate::harmonic::{ClassParams, HarmonicMap};
use crate::series::TruncatedSeries;

/// Parameters with `γ ∈ [0.5, 2]`, `δ ∈ [γ, γ + 3]`, `λ ∈ [0, 0.95γ)`.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> ClassParams {
    let gamma = rng.random_range(0.5..=2.0);
    let delta = gamma + rng.random_range(0.0..=3.0);
    let lambda = rng.random_range(0.0..0.95 * gamma);
    ClassParams::new(gamma, delta, lambda).expect("sampled inside the parameter domain")
}

/// Parameters with `γ` fixed and `δ`, `λ` drawn as in [`random_params`].
pub fn random_params_with_gamma<R: Rng + ?Sized>(rng: &mut R, gamma: f64) -> ClassParams {
    let delta = gamma + rng.random_range(0.0..=3.0);
    let lambda = rng.random_range(0.0..0.95 * gamma);
    ClassParams::new(gamma, delta, lambda).expect("sampled inside the parameter domain")
}

/// A member of order `order` (≥ 2) with one to four nonzero coefficients among
/// `a_2..a_order, b_2..b_order`, scaled to a condition sum of `u · 2(γ−λ)`.
pub fn random_member<R: Rng + ?Sized>(rng: &mut R, p: &ClassParams, order: usize) -> HarmonicMap {
    let fill = rng.random_range(0.05..0.999);
    random_member_with_fill(rng, p, order, fill)
}

/// As [`random_member`] with the fraction `u` given.
pub fn random_member_with_fill<R: Rng + ?Sized>(
    rng: &mut R,
    p: &ClassParams,
    order: usize,
    fill: f64,
) -> HarmonicMap {
    let order = order.max(2);
    let mut s = vec![Complex64::new(0.0, 0.0); order + 1];
    let mut t = vec![Complex64::new(0.0, 0.0); order + 1];
    s[1] = Complex64::new(1.0, 0.0);

    let terms = rng.random_range(1..=4);
    for _ in 0..terms {
        let m = rng.random_range(2..=order);
        let value = Complex64::from_polar(
            rng.random_range(0.1..1.0),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        if rng.random_bool(0.5) {
            s[m] += value;
        } else {
            t[m] += value;
        }
    }

    let sum: f64 = (2..=order)
        .map(|m| p.weight(m) * (s[m].norm() + t[m].norm()))
        .sum();
    let scale = fill * 2.0 * (p.gamma() - p.lambda()) / sum;
    for m in 2..=order {
        s[m] *= scale;
        t[m] *= scale;
    }
    HarmonicMap::new(
        TruncatedSeries::new(s).expect("finite coefficients"),
        TruncatedSeries::new(t).expect("finite coefficients"),
    )
    .expect("normalized by construction")
}
