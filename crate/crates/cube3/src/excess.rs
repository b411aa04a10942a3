//! Closed-form segment bounds and direct quadrature for the chord excess.
//!
//! The excess `Q(v0, v1)` integrates `(v − 4π/81)·ℓ / (I·√((I−ℓ)(I+ℓ)))`
//! against the torus profile `I` and the secant `ℓ` of `I` through
//! `(v0, I(v0))` and `(v1, I(v1))`. Replacing `ℓ` segmentwise with the
//! extreme admissible secants decouples the variables and yields the closed
//! forms [`p1`], [`p2`], [`p3`] whose sum lower-bounds `Q` whenever
//! `v1 ≤ 1 − 1/π`; [`p4`] covers the remaining `v1` range. [`q_direct`]
//! integrates `Q` itself as a spot check.

use specfun::{ellip_e, ellip_f, integrate_endpoint_singular, Tolerances};

use crate::{check_domain, Result};
use crate::{CROSSOVER_CYLINDER_PLANE as V_CP, CROSSOVER_SPHERE_CYLINDER as V_SC};

use std::f64::consts::PI;

/// Hand-off point below which the closed form for [`p1`] degenerates (the
/// elliptic modulus reaches 1 in double precision near 1e-16) and the limit
/// expansion takes over.
const P1_SMALL_V0: f64 = 1e-12;

/// Coefficient of the `√v0·log v0` correction in the small-`v0` expansion
/// of [`p1`], fitted so both branches agree at the hand-off point. The
/// exact leading coefficient is `4√π/81 ≈ 0.0875`; the fitted value absorbs
/// subleading terms still visible at 1e-12.
const P1_LOG_COEFF: f64 = 0.08329552590904157;

/// First-segment bound: the excess over `[v0, 4π/81]` with the steepest
/// admissible secant, through `(v0, √(πv0))` and `(1/π, 1)`.
///
/// Closed form in incomplete elliptic integrals of modulus `m = 1 − πv0`.
/// The value is nonpositive, vanishes at `4π/81`, and tends to the finite
/// limit ≈ −0.0132523 as `v0 → 0`, which is what `p1(0)` returns; below
/// 1e-12 the expansion `limit + c·√v0·log v0` replaces the closed form.
pub fn p1(v0: f64) -> Result<f64> {
    check_domain("p1", "v0", v0, (0.0..=V_SC).contains(&v0), "[0, 4pi/81]")?;
    Ok(p1_inner(v0))
}

pub(crate) fn p1_inner(v0: f64) -> f64 {
    if v0 < P1_SMALL_V0 {
        if v0 == 0.0 {
            return p1_limit();
        }
        return p1_limit() + P1_LOG_COEFF * v0.sqrt() * v0.ln();
    }
    let m = 1.0 - PI * v0;
    let xs = (V_CP - V_SC).sqrt() / (V_CP - v0).sqrt();
    let fdif = ellip_f(1.0, m).expect("m < 1 on the p1 domain")
        - ellip_f(xs, m).expect("xs in [0, 1]");
    let edif = ellip_e(1.0, m).expect("m < 1 on the p1 domain")
        - ellip_e(xs, m).expect("xs in [0, 1]");
    let y = (PI * v0).sqrt();
    let t1 = -(4.0 / 27.0) * (V_CP - V_SC).sqrt() * (V_SC - v0).sqrt();
    let t2 = -2.0 * (v0 / (3.0 * PI) + 4.0 * y / 81.0) * fdif;
    let t3 = (2.0 / PI)
        * (2.0 * (y + 1.0) * (y + 1.0) / (3.0 * PI) - v0.sqrt() / (3.0 * PI.sqrt()) - V_SC)
        * edif;
    t1 + t2 + t3
}

/// Limit of [`p1`] at `v0 = 0`: the K-difference term vanishes and the
/// E-difference collapses to `1 − √(1 − 4π²/81)`.
fn p1_limit() -> f64 {
    let xs = (1.0 - 4.0 * PI * PI / 81.0).sqrt();
    -(4.0 / 27.0) * ((V_CP - V_SC) * V_SC).sqrt()
        + (2.0 / PI) * (2.0 / (3.0 * PI) - V_SC) * (1.0 - xs)
}

/// Second-segment bound: the excess over `[4π/81, 1/π]` with the shallowest
/// admissible secant `v/v1`, through the origin and `(v1, 1)`.
///
/// Algebraic closed form, strictly decreasing in `v1`. The factor
/// `√(π²v1² − 1)` is evaluated as `(πv1−1)(πv1+1)` clamped at zero, so the
/// kink value at `v1 = 1/π` is exact.
pub fn p2(v1: f64) -> Result<f64> {
    check_domain("p2", "v1", v1, (V_CP..=1.0 - V_CP).contains(&v1), "[1/pi, 1-1/pi]")?;
    Ok(p2_inner(v1))
}

pub(crate) fn p2_inner(v1: f64) -> f64 {
    let q = PI * v1;
    let s0 = ((q - 2.0 * PI / 9.0) * (q + 2.0 * PI / 9.0)).sqrt();
    let s1 = ((q - 1.0) * (q + 1.0)).max(0.0).sqrt();
    (2.0 / 81.0)
        * ((54.0 * v1 * v1 - 8.0 / 3.0) * s0 - (54.0 * v1 * v1 - 4.0 + 27.0 / (PI * PI)) * s1)
}

/// Third-segment bound: the excess over `[1/π, v1]` with the true secant
/// through `(v0, √(πv0))` and `(v1, 1)`; nonnegative and nondecreasing in
/// both arguments.
pub fn p3(v0: f64, v1: f64) -> Result<f64> {
    check_domain("p3", "v0", v0, (0.0..=V_SC).contains(&v0), "[0, 4pi/81]")?;
    check_domain("p3", "v1", v1, (V_CP..=1.0 - V_CP).contains(&v1), "[1/pi, 1-1/pi]")?;
    Ok(p3_inner(v0, v1))
}

pub(crate) fn p3_inner(v0: f64, v1: f64) -> f64 {
    let y = (PI * v0).sqrt();
    let z = (y * v1 - v0) / (1.0 - y);
    let w = 2.0 * z + v1 + V_CP;
    let dv = v1 - V_CP;
    (z + v1) * (z + v1) * (dv.sqrt() / w.sqrt()).atan()
        + 0.5 * (V_CP - 8.0 * PI / 81.0 - z) * (dv * w).sqrt()
}

/// Middle-segment bound for chords reaching past the flat top
/// (`v1 > 1 − 1/π`): the secant then satisfies `ℓ(v) ≥ 0.8·v` pointwise,
/// and the excess over `[4π/81, 1 − 1/π]` is at least this constant,
/// ≈ 0.0597521, enough to offset the worst first-segment bound of −0.046.
pub fn p4() -> f64 {
    let c = 1.0 / 0.8;
    let g = |v: f64| {
        let r = (c * c - v * v).sqrt();
        (V_SC - v / 2.0) * r + (c * c / 2.0) * (v / r).atan()
    };
    g(1.0 - V_CP) - g(V_CP)
}

/// Evaluates the chord excess `Q(v0, v1)` by direct quadrature, split at
/// the profile kinks `1/π`, `1 − 1/π` and at the sign change `4π/81`.
///
/// Each segment feeds the tanh-sinh rule an integrand whose singular gap
/// `I − ℓ` is expressed through exact endpoint offsets, so the inverse
/// square-root blowups at `v0` and `v1` cost no precision. Chords tangent
/// to the profile (excluded by the open domain, but approachable) surface
/// as non-convergence errors from the quadrature.
pub fn q_direct(v0: f64, v1: f64) -> Result<f64> {
    check_domain("q_direct", "v0", v0, 0.0 < v0 && v0 < V_SC, "(0, 4pi/81)")?;
    check_domain("q_direct", "v1", v1, V_CP < v1 && v1 < 1.0, "(1/pi, 1)")?;
    let i0 = (PI * v0).sqrt();
    let i1 = if v1 <= 1.0 - V_CP {
        1.0
    } else {
        (PI * (1.0 - v1)).sqrt()
    };
    let lam = (i1 - i0) / (v1 - v0);
    let tol = Tolerances::default();

    // Sphere segment [v0, 4pi/81]: I = sqrt(pi v), singular at v0 where the
    // chord meets the profile; gap = I - l factored through the offset da.
    let mut q = integrate_endpoint_singular(
        |v, da, db| {
            let i = (PI * v).sqrt();
            let ell = i0 + lam * da;
            let gap = da * (PI / (i + i0) - lam);
            -db * ell / (i * (gap * (i + ell)).sqrt())
        },
        v0,
        V_SC,
        &tol,
    )?
    .value;

    // Cylinder segment [4pi/81, 1/pi]: same branch of I, no singularity; the
    // weight v - 4pi/81 is the exact left offset.
    q += integrate_endpoint_singular(
        |v, da, _| {
            let i = (PI * v).sqrt();
            let ell = i0 + lam * (v - v0);
            let gap = i - ell;
            da * ell / (i * (gap * (i + ell)).sqrt())
        },
        V_SC,
        V_CP,
        &tol,
    )?
    .value;

    if v1 <= 1.0 - V_CP {
        // Flat segment [1/pi, v1]: I = 1 and the chord ends on the flat top,
        // so the gap is exactly lam*(v1 - v).
        q += integrate_endpoint_singular(
            |v, _, db| {
                let ell = 1.0 - lam * db;
                (v - V_SC) * ell / ((lam * db) * (1.0 + ell)).sqrt()
            },
            V_CP,
            v1,
            &tol,
        )?
        .value;
    } else {
        // Flat segment [1/pi, 1-1/pi], interior, plus the falling segment
        // [1-1/pi, v1] where the chord meets the profile again at v1.
        q += integrate_endpoint_singular(
            |v, _, _| {
                let ell = i0 + lam * (v - v0);
                let gap = 1.0 - ell;
                (v - V_SC) * ell / (gap * (1.0 + ell)).sqrt()
            },
            V_CP,
            1.0 - V_CP,
            &tol,
        )?
        .value;
        q += integrate_endpoint_singular(
            |v, _, db| {
                let i = (PI * (1.0 - v)).sqrt();
                let ell = i1 - lam * db;
                let gap = db * (PI / (i + i1) + lam);
                (v - V_SC) * ell / (i * (gap * (i + ell)).sqrt())
            },
            1.0 - V_CP,
            v1,
            &tol,
        )?
        .value;
    }
    Ok(q)
}
