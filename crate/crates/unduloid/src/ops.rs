//! Half-periods, weighted measures, stability, and residual checks.

use crate::chord::{check_span, chord};
use crate::engine::Engine;
use crate::shape::UnduloidShape;
use crate::{Result, UnduloidError};
use isoprofile::{bobkov_density, BaseProfile, ModelDensity};
use std::f64::consts::PI;

/// Spans narrower than this in volume are treated as horizontal lines; the
/// raw first integral loses all significant bits there.
pub(crate) const DEGENERATE_WIDTH: f64 = 1e-8;

/// Unnormalized triple (T, V*T, A*T) for the chord of `p` over `[v0, v1]`.
fn measures(func: &'static str, p: &BaseProfile, v0: f64, v1: f64) -> Result<(f64, f64, f64)> {
    check_span(func, v0, v1)?;
    let straddles_kink = p.singular_set().iter().any(|&z| v0 <= z && z <= v1);
    if v1 - v0 < DEGENERATE_WIDTH && !straddles_kink {
        let vbar = 0.5 * (v0 + v1);
        let t = linearized_half_period(p, v0, v1, vbar)?;
        return Ok((t, t * vbar, t * p.eval(vbar)));
    }
    let ch = chord(p, v0, v1)?;
    let d = bobkov_density(p);
    let eng = Engine::new(p, &d, &ch)?;
    Ok(eng.integrals())
}

/// Oscillation period limit of vanishing amplitude about `vbar`:
/// `pi / sqrt(-(I0 I0'')(vbar))`.
fn linearized_half_period(p: &BaseProfile, v0: f64, v1: f64, vbar: f64) -> Result<f64> {
    let curvature = -(p.eval(vbar) * p.deriv2_sided(vbar, true));
    if curvature <= 0.0 {
        // Affine zone: the chord coincides with the graph at any width.
        return Err(UnduloidError::DegenerateChord { v0, v1 });
    }
    Ok(PI / curvature.sqrt())
}

/// Horizontal half-period of the unduloid between volume levels `v0 < v1`:
/// the time integral of `1 / (I0 sqrt((I0/ell)^2 - 1))` in volume, absolute
/// accuracy about 1e-8 or better.
///
/// Fails with a divergence error for one-sided spans over unbounded-support
/// profiles, for tangent chords, and for chords coinciding with an affine
/// stretch of the profile.
pub fn half_period(p: &BaseProfile, v0: f64, v1: f64) -> Result<f64> {
    Ok(measures("half_period", p, v0, v1)?.0)
}

/// Weighted volume of the region below the unduloid graph, normalized by the
/// slab width `t_span`.
pub fn volume(p: &BaseProfile, t_span: f64, v0: f64, v1: f64) -> Result<f64> {
    check_width("volume", t_span)?;
    Ok(measures("volume", p, v0, v1)?.1 / t_span)
}

/// Weighted area of the unduloid graph, normalized by the slab width
/// `t_span`.
pub fn area(p: &BaseProfile, t_span: f64, v0: f64, v1: f64) -> Result<f64> {
    check_width("area", t_span)?;
    Ok(measures("area", p, v0, v1)?.2 / t_span)
}

/// One-pass variant returning the half-period together with volume and area
/// normalized by `t_span`; the three share one quadrature sweep.
pub fn period_volume_area(
    p: &BaseProfile,
    t_span: f64,
    v0: f64,
    v1: f64,
) -> Result<(f64, f64, f64)> {
    check_width("period_volume_area", t_span)?;
    let (t, vt, at) = measures("period_volume_area", p, v0, v1)?;
    Ok((t, vt / t_span, at / t_span))
}

/// Measures of the `v0 -> 0` limit chord (intercept zero, slope
/// `I0(v1)/v1`) integrated from a floor height upward, for profiles whose
/// lower slab boundary lies beyond double precision. Below `s_floor` the
/// density carries no representable mass, so only horizontal extent is
/// truncated; returns `(t_reach, volume, area)` with the measures normalized
/// by `t_span`.
pub fn limit_chord_measures(
    p: &BaseProfile,
    t_span: f64,
    s_floor: f64,
    v1: f64,
) -> Result<(f64, f64, f64)> {
    check_width("limit_chord_measures", t_span)?;
    let d = bobkov_density(p);
    let eng = Engine::new_floor_clipped(p, &d, s_floor, v1)?;
    let (t, vt, at) = eng.integrals();
    Ok((t, vt / t_span, at / t_span))
}

fn check_width(func: &'static str, t_span: f64) -> Result<()> {
    if t_span.is_finite() && t_span > 0.0 {
        Ok(())
    } else {
        Err(UnduloidError::Domain { func, arg: "t_span", value: t_span, domain: "(0, inf)" })
    }
}

/// Largest first-integral residual `|phi(s)/sqrt(1 + s'(t)^2) - lambda v - c|`
/// over the interior samples of a shape, with the slope taken by uneven
/// three-point finite differences. Constant shapes report exactly zero.
pub fn cmc_residual(shape: &UnduloidShape, d: &ModelDensity) -> f64 {
    let pts = &shape.samples;
    let (lam, c) = (shape.chord.lambda, shape.chord.c);
    let mut worst = 0.0f64;
    for i in 1..pts.len().saturating_sub(1) {
        let (tm, sm, _) = pts[i - 1];
        let (t0, s0, v) = pts[i];
        let (tp, sp, _) = pts[i + 1];
        let h1 = t0 - tm;
        let h2 = tp - t0;
        let slope = -h2 / (h1 * (h1 + h2)) * sm + (h2 - h1) / (h1 * h2) * s0
            + h1 / (h2 * (h1 + h2)) * sp;
        let r = (d.density(s0) / (1.0 + slope * slope).sqrt() - lam * v - c).abs();
        worst = worst.max(r);
    }
    worst
}

/// Stability of the horizontal line at volume fraction `v` in a slab of
/// width `t_span`: stable exactly when `sqrt(-(I0 I0'')(v)) <= pi / t_span`.
///
/// Fails on zone boundaries, where the profile curvature jumps.
pub fn horizontal_stable(p: &BaseProfile, v: f64, t_span: f64) -> Result<bool> {
    if !(v > 0.0 && v < 1.0) || !v.is_finite() {
        return Err(UnduloidError::Domain {
            func: "horizontal_stable",
            arg: "v",
            value: v,
            domain: "(0, 1)",
        });
    }
    check_width("horizontal_stable", t_span)?;
    if p.singular_set().contains(&v) {
        return Err(UnduloidError::ZoneBoundary { v });
    }
    let curvature = -(p.eval(v) * p.deriv2(v)?);
    Ok(curvature.max(0.0).sqrt() <= PI / t_span)
}

/// Closed-form lower bound on the normalized weighted area of any region
/// whose volume levels span `[v0, v1]` in a slab of width `t_span`, given the
/// chord height `ell_at_v` at the region's volume:
/// `(ell + sqrt(ell^2 + 4 ((v1-v0)/t_span)^2)) / 2`.
pub fn area_lower_bound(ell_at_v: f64, v0: f64, v1: f64, t_span: f64) -> f64 {
    let rise = (v1 - v0) / t_span;
    0.5 * (ell_at_v + (ell_at_v * ell_at_v + 4.0 * rise * rise).sqrt())
}
