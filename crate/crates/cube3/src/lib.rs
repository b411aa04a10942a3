//! Certified exclusion of wide unduloids on the cube at small volumes.
//!
//! The relative isoperimetric problem on the unit cube reduces, after
//! symmetrization, to curves in a slab over the torus profile
//! `I(v) = min(√(πv), 1, √(π(1−v)))`. A generalized unduloid riding the
//! secant of `I` between levels `v0 < v1` contributes the chord excess
//!
//! ```text
//! Q(v0, v1) = ∫_{v0}^{v1} (v − 4π/81) / (I(v) · √((I(v)/ℓ(v))² − 1)) dv,
//! ```
//!
//! where `ℓ` is the secant through `(v0, I(v0))` and `(v1, I(v1))`. If `Q`
//! is positive whenever `0 < v0 < 4π/81 < 1/π < v1 < 1`, such unduloids are
//! never minimizers below the corner-sphere volume `4π/81`. This crate
//! verifies that positivity with an auditable chain:
//!
//! * [`p1`], [`p2`], [`p3`], [`p4`] evaluate closed-form lower bounds for
//!   the three smoothness segments of `Q` obtained by replacing `ℓ` with the
//!   extreme secants, and [`q_direct`] integrates `Q` itself for spot checks.
//! * [`build_mesh_v0`] and [`build_mesh_v1`] build grids whose step sizes
//!   are controlled in the Lipschitz scale of `P = p1 + p2 + p3`, so a mesh
//!   minimum certifies a continuum bound ([`certify_min_p`],
//!   [`certify_min_p1`], with [`free_min_p`] refining the mesh argmin).
//! * [`one_sided_volume`] and [`solve_vmin`] treat one-sided unduloids
//!   (`v0 = 0`): the enclosed volume `F(ξ)`, parametrized by the curvature
//!   reciprocal `ξ = 1/λ`, is minimized to produce the threshold `v_min`
//!   below which only corner spheres occur.
//! * [`q3_ranges`], [`ode_barriers`], and [`odi_residual`] assemble the
//!   volume ranges on the `β`-scaled cube where each conjectured minimizer
//!   (sphere, cylinder, plane) is confirmed, together with the parabolic
//!   barriers that pin the plane phase near `v = 1/π`.
//!
//! [`VerificationReport::generate`] packages the certification into a JSON
//! document with 17-significant-digit constants so reruns are byte-stable.

mod excess;
mod mesh;
mod one_sided;
mod ranges;
mod report;

pub use excess::{p1, p2, p3, p4, q_direct};
pub use mesh::{
    build_mesh_v0, build_mesh_v1, certify_min_p, certify_min_p1, d0, d1, free_min_p, l0, l1,
    CertifiedMinimum, Mesh1D, MeshKind,
};
pub use one_sided::{f2_convexity_margin, one_sided_volume, solve_vmin};
pub use ranges::{lambda_floor, ode_barriers, odi_residual, q3_ranges, Interval, VerifiedRanges};
pub use report::{Verdict, VerificationReport};

/// Volume of the corner sphere octant at the sphere/cylinder crossover,
/// `4π/81`; the weight in the excess integrand changes sign here.
pub const CROSSOVER_SPHERE_CYLINDER: f64 = 4.0 * std::f64::consts::PI / 81.0;

/// Volume at which the torus profile reaches its flat top, `1/π`; the
/// cylinder/plane crossover.
pub const CROSSOVER_CYLINDER_PLANE: f64 = std::f64::consts::FRAC_1_PI;

/// Errors reported by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Cube3Error {
    /// An argument fell outside the stated domain of an operation.
    #[error("{func}: {arg} = {value:e} outside {domain}")]
    Domain {
        func: &'static str,
        arg: &'static str,
        value: f64,
        domain: &'static str,
    },
    /// A certified continuum bound failed its positivity requirement; the
    /// offending minimum is carried for reporting.
    #[error(
        "{quantity}: certified continuum bound {} fails its requirement",
        .minimum.continuum_lower_bound
    )]
    CertificationFailed {
        quantity: &'static str,
        minimum: CertifiedMinimum,
    },
    /// A mesh increment exceeded its Lipschitz budget, so no continuum
    /// bound can be certified from that mesh's minimum.
    #[error("mesh step budget exceeded: increment {increment:e} > eps = {eps:e}")]
    MeshBudget { increment: f64, eps: f64 },
    /// The profile equation residual was requested at a branch boundary,
    /// where the one-sided derivatives disagree.
    #[error("odi_residual: v = {v:e} lies on a branch boundary")]
    BranchBoundary { v: f64 },
    /// A numerical kernel failed.
    #[error(transparent)]
    Numeric(#[from] specfun::NumError),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Cube3Error>;

pub(crate) fn check_domain(
    func: &'static str,
    arg: &'static str,
    value: f64,
    ok: bool,
    domain: &'static str,
) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Cube3Error::Domain {
            func,
            arg,
            value,
            domain,
        })
    }
}
