//! Planar harmonic mappings `f = s + conj(t)` of the unit disk whose analytic
//! and co-analytic parts satisfy the third-order differential inequality
//!
//! ```text
//! Re[γ s′ + δ z s″ + ((δ−γ)/2) z² s‴ − λ] > |γ t′ + δ z t″ + ((δ−γ)/2) z² t‴|,   0 ≤ λ < γ ≤ δ.
//! ```
//!
//! The crate works on truncated power series and provides
//!
//! * coefficient arithmetic ([`series`]) and the map data model ([`harmonic`]),
//! * the differential operator and sampled membership tests ([`operator`]),
//! * sharp coefficient bounds and growth envelopes ([`bounds`]),
//! * convex combinations and convolutions ([`closure`]),
//! * radii of full starlikeness/convexity and a numeric cross-check ([`radii`], [`geometry`]),
//! * JSON map documents, SVG output and the `harmap` command line ([`document`], [`svg`], [`cli`]).

pub mod bounds;
pub mod cli;
pub mod closure;
pub mod corpus;
pub mod document;
mod error;
pub mod geometry;
pub mod grid;
pub mod harmonic;
pub mod operator;
pub mod radii;
pub mod series;
pub mod svg;

pub use error::{Error, Result};
pub use grid::{Evidence, MembershipVerdict, PolarGrid};
pub use harmonic::{ClassParams, HarmonicMap};
pub use num_complex::Complex64;
pub use series::TruncatedSeries;
