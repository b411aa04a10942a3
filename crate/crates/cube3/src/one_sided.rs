//! One-sided unduloids: the enclosed volume `F(ξ)` and its minimization.
//!
//! A one-sided generalized unduloid (`v0 = 0`) with weighted mean curvature
//! `λ` rides the secant `ℓ(v) = v/ξ`, `ξ = 1/λ`. Its enclosed volume is a
//! function `F(ξ)` with three regimes: an eighth-sphere below the flat kink,
//! a closed form on the flat top, and a lower bound once the chord dips into
//! the falling branch. Minimizing `F` over the flat regime produces the
//! threshold `v_min ≈ 0.120582`: below it, one-sided unduloids with
//! `λ ≥ 0.6` are necessarily corner spheres.

use specfun::{find_root, Tolerances};

use crate::{check_domain, Result, CROSSOVER_CYLINDER_PLANE as V_CP};

use std::f64::consts::PI;

/// `sec⁻¹` on `[1, ∞)` as `arccos(1/x)`, clamped against rounding spill
/// just below 1 at the branch point.
fn asec(x: f64) -> f64 {
    (1.0 / x).min(1.0).acos()
}

/// Sphere regime `ξ ≤ 1/π`: an eighth-sphere of radius `2ξ`, volume
/// `(4π/3)·ξ³`.
fn f_sphere(xi: f64) -> f64 {
    4.0 * PI / 3.0 * xi.powi(3)
}

/// Flat regime `1/π ≤ ξ ≤ 1 − 1/π`: the chord tops out on the flat part of
/// the profile. The factor `√(π²ξ²−1)` is taken in factored form so it
/// vanishes exactly at the kink.
fn f_mid(xi: f64) -> f64 {
    let q = PI * xi;
    let s = ((q - 1.0) * (q + 1.0)).max(0.0).sqrt();
    4.0 * PI / 3.0 * xi.powi(3) - (4.0 / 3.0 * xi * xi + 1.0 / (6.0 * PI * PI)) * s
        + 0.5 * xi * xi * asec(q)
}

/// Falling regime `ξ ≥ 1 − 1/π`: the chord re-enters the profile on its
/// falling branch; bounding the intersection by the branch's own secant
/// leaves the flat-regime form minus an explicit overshoot.
fn f_tail(xi: f64) -> f64 {
    let a = V_CP + xi;
    f_mid(xi) - 0.5 * xi * xi * ((a * a - 1.0).sqrt() / (a * a) + asec(a))
}

/// Enclosed volume `F(ξ)` of the one-sided unduloid with curvature
/// reciprocal `ξ = 1/λ`: exact for `ξ ≤ 1 − 1/π`, a lower bound beyond.
pub fn one_sided_volume(xi: f64) -> Result<f64> {
    check_domain("one_sided_volume", "xi", xi, xi > 0.0 && xi.is_finite(), "(0, inf)")?;
    Ok(if xi <= V_CP {
        f_sphere(xi)
    } else if xi <= 1.0 - V_CP {
        f_mid(xi)
    } else {
        f_tail(xi)
    })
}

/// Locates the interior minimum of the flat regime of
/// [`one_sided_volume`]: the critical point equation reduces to
/// `4x + sec⁻¹(x) = (4x² − 3)/√(x² − 1)` in `x = πξ`, with a single root
/// on `[1.001, 1.2]`. Returns `(x0, ξ0, v_min)` where `ξ0 = x0/π` and
/// `v_min = F(ξ0) ≈ 0.120582` is the volume threshold below which
/// one-sided unduloids must be corner spheres.
pub fn solve_vmin() -> Result<(f64, f64, f64)> {
    let tol = Tolerances { abs_tol: 1e-14, rel_tol: 4.0 * f64::EPSILON, max_iter: 200 };
    let x0 = find_root(
        |x| 4.0 * x + asec(x) - (4.0 * x * x - 3.0) / ((x * x - 1.0).sqrt()),
        1.001,
        1.2,
        &tol,
    )?;
    Ok((x0, x0 / PI, f_mid(x0 / PI)))
}

/// Convexity margin of the flat regime, in the variable `x = πξ`: the
/// second derivative of the flat-regime branch satisfies
/// `F″(ξ) = sec⁻¹(πξ) + 8·margin(πξ)` with
///
/// ```text
/// margin(x) = x − (8x⁴ − 13x² + 4) / (8·(x²−1)^{3/2}),
/// ```
///
/// which is positive for all `x > 1` and decays like `1/(8x)`, so the
/// branch is strictly convex and its critical point is the unique minimum.
pub fn f2_convexity_margin(x: f64) -> Result<f64> {
    check_domain("f2_convexity_margin", "x", x, x > 1.0 && x.is_finite(), "(1, inf)")?;
    let w = x * x - 1.0;
    Ok(x - (8.0 * x.powi(4) - 13.0 * x * x + 4.0) / (8.0 * w * w.sqrt()))
}
