//! Verified volume ranges for the conjectured minimizers on the β-cube.
//!
//! On the box `[0,1]² × [0,β]` the conjectured minimizers are corner
//! spheres, edge cylinders, and flat planes, tying at the crossover volumes
//! `4π/81·β²` and `1/π ± β/4`. Combining the certified chord-excess bounds
//! with the one-sided threshold `v_min` yields explicit volume intervals on
//! which each candidate is confirmed minimizing; only a window of width
//! `β/2` around `1/π` stays undecided.

use serde::Serialize;

use crate::one_sided::solve_vmin;
use crate::report::f17;
use crate::{check_domain, Cube3Error, Result};
use crate::{CROSSOVER_CYLINDER_PLANE as V_CP, CROSSOVER_SPHERE_CYLINDER as V_SC};

use std::f64::consts::PI;

/// Secant slope of the torus profile from the crossover point
/// `(4π/81, 2π/9)` to the midpoint `(1/2, 1)`: concavity of the slab
/// isoperimetric profile forces every minimizer of volume at most `4π/81`
/// to have weighted mean curvature at least this value, ≈ 0.87533, which
/// clears both curvature thresholds (0.8 and 0.6) the unduloid exclusions
/// assume.
pub fn lambda_floor() -> f64 {
    (1.0 - 2.0 * PI / 9.0) / (0.5 - V_SC)
}

/// Closed volume interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "f17")]
    pub lo: f64,
    #[serde(serialize_with = "f17")]
    pub hi: f64,
}

/// Volume ranges on the β-cube where each conjectured minimizer is
/// verified, serialized with 17-significant-digit floats.
#[derive(Clone, Debug, Serialize)]
pub struct VerifiedRanges {
    /// Box aspect parameter.
    #[serde(serialize_with = "f17")]
    pub beta: f64,
    /// Corner spheres minimize on `(0, sphere.hi]`; the lower endpoint is
    /// the degenerate volume 0.
    pub sphere: Interval,
    /// Edge cylinders, when the interval is nonempty (β ≤ 0.919431).
    pub cylinder: Option<Interval>,
    /// Flat planes, when the interval is nonempty (β ≤ 2 − 4/π).
    pub plane: Option<Interval>,
    /// Window around `1/π` the verification leaves undecided.
    pub uncertainty: Interval,
    /// Curvature floor [`lambda_floor`] backing the exclusions.
    #[serde(serialize_with = "f17")]
    pub lambda_floor: f64,
}

/// Assembles the verified ranges for aspect `beta`: spheres on
/// `(0, min(4π/81·β², v_min/β)]`, cylinders on
/// `[4π/81·β², max(1/π − β/4, min(4π/81, v_min/β))]` when nonempty, planes
/// on `[1/π + β/4, 1/2]` when nonempty, with the undecided window
/// `(1/π − β/4, 1/π + β/4)`.
pub fn q3_ranges(beta: f64) -> Result<VerifiedRanges> {
    check_domain("q3_ranges", "beta", beta, 0.0 < beta && beta <= 1.0, "(0, 1]")?;
    let (_, _, v_min) = solve_vmin()?;
    let sphere_hi = (V_SC * beta * beta).min(v_min / beta);
    let cyl_lo = V_SC * beta * beta;
    let cyl_hi = (V_CP - beta / 4.0).max(V_SC.min(v_min / beta));
    let plane_lo = V_CP + beta / 4.0;
    Ok(VerifiedRanges {
        beta,
        sphere: Interval { lo: 0.0, hi: sphere_hi },
        cylinder: (cyl_lo <= cyl_hi).then_some(Interval { lo: cyl_lo, hi: cyl_hi }),
        plane: (plane_lo <= 0.5).then_some(Interval { lo: plane_lo, hi: 0.5 }),
        uncertainty: Interval { lo: V_CP - beta / 4.0, hi: V_CP + beta / 4.0 },
        lambda_floor: lambda_floor(),
    })
}

/// Comparison parabolas for the slab profile equation: returns
/// `(1/π + β/4, 1/π − β/4, barrier)` where the barrier
/// `v̄ ↦ √(1 − (π/β)·(v̄ − (1/π + β/4))²)` (clamped at zero outside its
/// support) dominates the profile wherever planes could first appear, and
/// meets `√(πv̄)` tangentially at the double root `1/π − β/4`.
pub fn ode_barriers(beta: f64) -> Result<(f64, f64, impl Fn(f64) -> f64)> {
    check_domain("ode_barriers", "beta", beta, beta > 0.0 && beta.is_finite(), "(0, inf)")?;
    let v_p_max = V_CP + beta / 4.0;
    let v_c_plus_min = V_CP - beta / 4.0;
    let barrier =
        move |vbar: f64| (1.0 - (PI / beta) * (vbar - v_p_max) * (vbar - v_p_max)).max(0.0).sqrt();
    Ok((v_p_max, v_c_plus_min, barrier))
}

/// Residual of the profile equation `I²·I″ + I·(I′)² − (π/2β)·χ` on the
/// branch of the conjectured profile containing `v`, with exact branch
/// derivatives: `χ = 2` on the sphere branch (`I = c·v^{2/3}`,
/// `c³ = 9π/(2β)`), `χ = 0` on the cylinder (`I = √(πv)`) and plane
/// (`I ≡ 1`) branches. The reflection `v ↦ 1 − v` maps the upper half onto
/// the lower and leaves the residual unchanged. Vanishes identically up to
/// rounding; errors at branch boundaries, where one-sided derivatives
/// disagree.
pub fn odi_residual(beta: f64, v: f64) -> Result<f64> {
    check_domain("odi_residual", "beta", beta, 0.0 < beta && beta <= 1.0, "(0, 1]")?;
    check_domain("odi_residual", "v", v, 0.0 < v && v < 1.0, "(0, 1)")?;
    let w = if v > 0.5 { 1.0 - v } else { v };
    let v_sc = V_SC * beta * beta;
    if w == v_sc || w == V_CP {
        return Err(Cube3Error::BranchBoundary { v });
    }
    let (i, di, ddi, chi) = if w < v_sc {
        let c = (4.5 * PI / beta).cbrt();
        (
            c * w.powf(2.0 / 3.0),
            c * (2.0 / 3.0) * w.powf(-1.0 / 3.0),
            -c * (2.0 / 9.0) * w.powf(-4.0 / 3.0),
            2.0,
        )
    } else if w < V_CP {
        let s = (PI * w).sqrt();
        (s, 0.5 * PI / s, -0.25 * PI * PI / (s * s * s), 0.0)
    } else {
        (1.0, 0.0, 0.0, 0.0)
    };
    Ok(i * i * ddi + i * di * di - PI / (2.0 * beta) * chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrier_is_one_at_its_apex_and_clamped_outside() {
        let (v_p_max, _, barrier) = ode_barriers(1.0).unwrap();
        assert_eq!(barrier(v_p_max), 1.0);
        assert_eq!(barrier(v_p_max + 10.0), 0.0);
    }

    #[test]
    fn plane_residual_is_exactly_zero() {
        assert_eq!(odi_residual(1.0, 0.5).unwrap(), 0.0);
        assert_eq!(odi_residual(0.8, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn branch_boundaries_error() {
        assert!(matches!(
            odi_residual(1.0, V_SC).unwrap_err(),
            Cube3Error::BranchBoundary { .. }
        ));
        assert!(matches!(
            odi_residual(1.0, V_CP).unwrap_err(),
            Cube3Error::BranchBoundary { .. }
        ));
    }

    #[test]
    fn domains_are_enforced() {
        assert!(q3_ranges(0.0).is_err());
        assert!(q3_ranges(1.1).is_err());
        assert!(ode_barriers(-1.0).is_err());
        assert!(odi_residual(1.0, 0.0).is_err());
        assert!(odi_residual(1.0, 1.0).is_err());
        assert!(odi_residual(2.0, 0.3).is_err());
    }
}
