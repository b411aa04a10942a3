//! Concave symmetric profiles on the unit volume interval and their associated
//! even log-concave model densities.
//!
//! A profile `I0: [0,1] -> [0, inf)` assigns to each volume fraction the
//! cross-sectional weight of the corresponding slab model. Every concave
//! symmetric profile with `I0 > 0` on `(0,1)` determines a density `phi` on a
//! (possibly unbounded) interval through the correspondence
//! `I0(Phi(s)) = phi(s)`, where `Phi` is the cumulative distribution of `phi`
//! and the median sits at `s = 0`. This crate provides the two closed-form
//! model profiles (the flat-torus profile and the Gaussian profile), a
//! validated piecewise-linear profile type for user-supplied models, the
//! profile-to-density correspondence, and the conjectured three-dimensional
//! box profile.

mod definition;
mod density;
mod profile;
mod q3;

pub use definition::{load_profile, profile_from_definition, ProfileDefinition};
pub use density::{bobkov_density, ModelDensity};
pub use profile::{
    gaussian_profile, piecewise_profile, torus2_profile, BaseProfile, TORUS2_FLAT_HI,
    TORUS2_FLAT_LO,
};
pub use q3::conjectured_profile_q3;

use thiserror::Error;

/// Errors arising from profile construction and evaluation.
#[derive(Debug, Error)]
pub enum ProfileError {
    /// An argument fell outside the documented domain of an operation.
    #[error("{func}: {arg} = {value} outside {domain}")]
    Domain {
        func: &'static str,
        arg: &'static str,
        value: f64,
        domain: &'static str,
    },
    /// A two-sided derivative was requested at a kink of the profile.
    #[error("profile `{name}` is not differentiable at v = {v}")]
    NotDifferentiable { name: String, v: f64 },
    /// A piecewise definition failed validation.
    #[error("invalid piecewise profile: {reason}")]
    InvalidDefinition { reason: String },
    /// A profile definition file could not be read.
    #[error("cannot read profile definition file: {0}")]
    Io(#[from] std::io::Error),
    /// A profile definition file could not be parsed.
    #[error("malformed profile definition: {0}")]
    Malformed(#[from] serde_json::Error),
    /// An underlying numerical kernel failed.
    #[error(transparent)]
    Numeric(#[from] specfun::NumError),
}

pub type Result<T> = std::result::Result<T, ProfileError>;
