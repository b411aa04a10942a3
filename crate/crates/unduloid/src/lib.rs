//! Generalized unduloids over concave slab profiles.
//!
//! A concave profile `I0` on `[0,1]` describes the cheapest interface cost at
//! each volume fraction of a model slab. The constant-weighted-curvature
//! graphs between two volume levels `v0 < v1` are governed by the secant of
//! `I0` through those levels: the squared slope of the graph is
//! `K(s) = (I0(v)/ell(v))^2 - 1` evaluated along the height coordinate, where
//! `ell` is the secant. This crate computes the secants ([`chord`]), the
//! horizontal half-period of the oscillation ([`half_period`]), sampled
//! graphs ([`shape`]), normalized weighted volume and area ([`volume`],
//! [`area`]), a first-integral residual check ([`cmc_residual`]), the
//! stability threshold of horizontal lines ([`horizontal_stable`]), a closed
//! form area lower bound ([`area_lower_bound`]), and a brute-force
//! minimization oracle over monotone profiles ([`functional_oracle`]).
//!
//! All routines are pure and deterministic: fixed inputs give bitwise
//! identical outputs, including the seeded local searches in the oracle.

mod chord;
mod engine;
mod oracle;
mod ops;
mod shape;

pub use chord::{chord, Chord};
pub use oracle::functional_oracle;
pub use ops::{
    area, area_lower_bound, cmc_residual, half_period, horizontal_stable, limit_chord_measures,
    period_volume_area, volume,
};
pub use shape::{shape, ShapeKind, UnduloidShape};

/// Errors reported by unduloid constructions.
#[derive(Debug, thiserror::Error)]
pub enum UnduloidError {
    #[error("{func}: {arg} = {value:e} outside {domain}")]
    Domain { func: &'static str, arg: &'static str, value: f64, domain: &'static str },
    #[error("{func}: the full span [0, 1] admits no chord; at most one endpoint may sit on the boundary")]
    FullSpan { func: &'static str },
    #[error("chord over [{v0}, {v1}] coincides with the profile graph; the oscillation degenerates and its period diverges")]
    DegenerateChord { v0: f64, v1: f64 },
    #[error("half-period integral diverges: {reason}")]
    Divergent { reason: String },
    #[error("profile is not twice differentiable at the zone boundary v = {v}")]
    ZoneBoundary { v: f64 },
    #[error(transparent)]
    Profile(#[from] isoprofile::ProfileError),
    #[error(transparent)]
    Numeric(#[from] specfun::NumError),
}

pub type Result<T> = std::result::Result<T, UnduloidError>;
