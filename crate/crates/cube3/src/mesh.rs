//! Lipschitz-controlled meshes and the certified mesh minima.
//!
//! `P = p1 + p2 + p3` is locally Lipschitz with explicit bounds: `|∂P/∂v0|`
//! is dominated by [`d0`] and `|∂P/∂v1|` by [`d1`], both integrable though
//! divergent at the domain corners. Meshes whose consecutive increments stay
//! within `eps` in the antiderivative scales [`l0`]/[`l1`] therefore certify
//! `inf P ≥ (mesh minimum) − k·eps` with one `eps` per axis, turning a
//! finite scan into a continuum bound.

use rayon::prelude::*;

use crate::excess::{p1_inner, p2_inner, p3_inner, p4};
use crate::{check_domain, Cube3Error, Result};
use crate::{CROSSOVER_CYLINDER_PLANE as V_CP, CROSSOVER_SPHERE_CYLINDER as V_SC};

use std::f64::consts::{E, PI};

/// Budget used by [`free_min_p`] for its starting mesh.
const FREE_MIN_EPS: f64 = 3e-4;

/// Slack granted when auditing increments: the closed-form axis meets its
/// budget with equality in real arithmetic, so a few ulps of wobble must
/// not fail the certificate.
const BUDGET_SLACK: f64 = 1e-13;

/// Lipschitz bound for `∂P/∂v0` on the sphere segment,
/// `log(4π/(9√(πv0)))/(7√v0)`; decreasing, divergent at 0.
pub fn d0(v0: f64) -> Result<f64> {
    check_domain("d0", "v0", v0, 0.0 < v0 && v0 <= V_SC, "(0, 4pi/81]")?;
    Ok(d0_inner(v0))
}

fn d0_inner(v0: f64) -> f64 {
    (4.0 * PI / (9.0 * (PI * v0).sqrt())).ln() / (7.0 * v0.sqrt())
}

/// Lipschitz bound for `∂P/∂v1` past the flat kink,
/// `1/(3√(2π)·√(v1 − 1/π))`; divergent at `1/π`.
pub fn d1(v1: f64) -> Result<f64> {
    check_domain("d1", "v1", v1, V_CP < v1 && v1 <= 1.0 - V_CP, "(1/pi, 1-1/pi]")?;
    Ok(1.0 / (3.0 * (2.0 * PI).sqrt() * (v1 - V_CP).sqrt()))
}

/// Antiderivative of [`d0`]: `(√v0/7)·log(16e²π/(81·v0))`, extended
/// continuously by `l0(0) = 0`; mesh step budgets are measured in this
/// scale.
pub fn l0(v0: f64) -> Result<f64> {
    check_domain("l0", "v0", v0, (0.0..=V_SC).contains(&v0), "[0, 4pi/81]")?;
    Ok(l0_inner(v0))
}

fn l0_inner(v0: f64) -> f64 {
    if v0 == 0.0 {
        return 0.0;
    }
    (v0.sqrt() / 7.0) * (16.0 * E * E * PI / (81.0 * v0)).ln()
}

/// Antiderivative of [`d1`]: `(√2/(3√π))·√(v1 − 1/π)`, vanishing at the
/// kink.
pub fn l1(v1: f64) -> Result<f64> {
    check_domain("l1", "v1", v1, (V_CP..=1.0 - V_CP).contains(&v1), "[1/pi, 1-1/pi]")?;
    Ok(l1_inner(v1))
}

fn l1_inner(v1: f64) -> f64 {
    (2.0f64.sqrt() / (3.0 * PI.sqrt())) * (v1 - V_CP).sqrt()
}

/// Which construction produced a mesh axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshKind {
    /// `v0` axis: adaptive recursion `v += 0.99·eps/d0(v)` seeded by
    /// `{0, 1e-8}`.
    AdaptiveV0,
    /// `v1` axis: closed-form inverse `1/π + (9π/2)·((j−1)·eps)²`.
    ClosedFormV1,
}

/// One axis of the certification mesh: strictly increasing points whose
/// consecutive increments, measured through the matching antiderivative
/// ([`l0`] or [`l1`]), stay within `eps`.
#[derive(Clone, Debug)]
pub struct Mesh1D {
    /// Strictly increasing grid values.
    pub points: Vec<f64>,
    /// Step budget in the Lipschitz scale.
    pub eps: f64,
    /// Construction that produced the axis.
    pub kind: MeshKind,
}

impl Mesh1D {
    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the axis holds no points (never for the built meshes).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest consecutive increment in the Lipschitz scale of the axis:
    /// [`l0`] differences for the adaptive axis, [`l1`] differences for the
    /// closed-form one. The certificates require this to stay within `eps`.
    pub fn max_l_increment(&self) -> f64 {
        let l = |v: f64| match self.kind {
            MeshKind::AdaptiveV0 => l0_inner(v),
            MeshKind::ClosedFormV1 => l1_inner(v),
        };
        self.points
            .windows(2)
            .map(|w| l(w[1]) - l(w[0]))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Audits a mesh against its step budget before its minimum is trusted.
fn certify_budget(mesh: &Mesh1D) -> Result<()> {
    let increment = mesh.max_l_increment();
    if increment > mesh.eps + BUDGET_SLACK {
        return Err(Cube3Error::MeshBudget { increment, eps: mesh.eps });
    }
    Ok(())
}

/// Builds the adaptive `v0` axis: seeds `{0, 1e-8}` (the seed step costs
/// `l0(1e-8) ≈ 0.000285`, within the default budget), then advances by
/// `0.99·eps/d0(v)` until the next point would pass `4π/81`. Since `d0`
/// decreases, every `l0` increment is at most `0.99·eps`.
///
/// Budgets below `l0(1e-8)` leave the seed step uncovered; the certify
/// operations reject such meshes post hoc.
pub fn build_mesh_v0(eps: f64) -> Result<Mesh1D> {
    check_domain("build_mesh_v0", "eps", eps, eps > 0.0 && eps.is_finite(), "(0, inf)")?;
    let mut points = vec![0.0, 1e-8];
    loop {
        let last = *points.last().expect("mesh is seeded");
        let next = last + 0.99 * eps / d0_inner(last);
        if next > V_SC {
            break;
        }
        points.push(next);
    }
    Ok(Mesh1D { points, eps, kind: MeshKind::AdaptiveV0 })
}

/// Builds the closed-form `v1` axis `1/π + (9π/2)·((j−1)·eps)²` for
/// `j = 1..=⌈A1/eps⌉` with `A1 = l1(1 − 1/π)`; by construction `l1` of the
/// `j`-th point equals `(j−1)·eps` up to rounding.
pub fn build_mesh_v1(eps: f64) -> Result<Mesh1D> {
    check_domain("build_mesh_v1", "eps", eps, eps > 0.0 && eps.is_finite(), "(0, inf)")?;
    let a1 = l1_inner(1.0 - V_CP);
    let n1 = (a1 / eps).ceil() as usize;
    let points = (0..n1)
        .map(|j| {
            let s = j as f64 * eps;
            V_CP + (9.0 * PI / 2.0) * s * s
        })
        .collect();
    Ok(Mesh1D { points, eps, kind: MeshKind::ClosedFormV1 })
}

/// A mesh minimum with its Lipschitz-certified continuum bound.
#[derive(Clone, Debug)]
pub struct CertifiedMinimum {
    /// Smallest value attained on the mesh.
    pub mesh_min: f64,
    /// Grid coordinates attaining it: `[v0, v1]` for the product mesh,
    /// `[v0]` for the single-axis certificate.
    pub argmin: Vec<f64>,
    /// `mesh_min − k·eps` with one `eps` per mesh axis; a lower bound for
    /// the continuum infimum.
    pub continuum_lower_bound: f64,
    /// Step budget the mesh was built with.
    pub eps: f64,
    /// Number of function evaluations on the mesh.
    pub evaluations: u64,
}

fn mesh_min_p(eps: f64) -> Result<CertifiedMinimum> {
    let m0 = build_mesh_v0(eps)?;
    let m1 = build_mesh_v1(eps)?;
    certify_budget(&m0)?;
    certify_budget(&m1)?;
    let p2s: Vec<f64> = m1.points.iter().map(|&v1| p2_inner(v1)).collect();
    let best = m0
        .points
        .par_iter()
        .map(|&v0| {
            let base = p1_inner(v0);
            let mut row = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
            for (&v1, &p2v) in m1.points.iter().zip(&p2s) {
                let cand = (base + p2v + p3_inner(v0, v1), v0, v1);
                if cand < row {
                    row = cand;
                }
            }
            row
        })
        .reduce(
            || (f64::INFINITY, f64::INFINITY, f64::INFINITY),
            |a, b| if a <= b { a } else { b },
        );
    Ok(CertifiedMinimum {
        mesh_min: best.0,
        argmin: vec![best.1, best.2],
        continuum_lower_bound: best.0 - 2.0 * eps,
        eps,
        evaluations: (m0.len() as u64) * (m1.len() as u64),
    })
}

/// Certifies `inf P > 0` over the parameter rectangle
/// `[0, 4π/81] × [1/π, 1 − 1/π]`: evaluates `P = p1 + p2 + p3` on the
/// product mesh and subtracts one `eps` budget per axis.
///
/// Rows are scanned in parallel and combined through the lexicographic
/// `(value, v0, v1)` order, so the result is identical for every thread
/// count and ties resolve to the smallest coordinates. Fails with a
/// certification error when the continuum bound is not positive.
pub fn certify_min_p(eps: f64) -> Result<CertifiedMinimum> {
    let cert = mesh_min_p(eps)?;
    if cert.continuum_lower_bound <= 0.0 {
        return Err(Cube3Error::CertificationFailed { quantity: "min P", minimum: cert });
    }
    Ok(cert)
}

/// Certifies the first-segment floor used for chords past the flat top:
/// `min p1` over the `v0` axis minus one `eps` must stay above −0.046, and
/// adding the fixed offset [`p4`] must leave it positive.
pub fn certify_min_p1(eps: f64) -> Result<CertifiedMinimum> {
    let m0 = build_mesh_v0(eps)?;
    certify_budget(&m0)?;
    let best = m0
        .points
        .par_iter()
        .map(|&v0| (p1_inner(v0), v0))
        .reduce(
            || (f64::INFINITY, f64::INFINITY),
            |a, b| if a <= b { a } else { b },
        );
    let cert = CertifiedMinimum {
        mesh_min: best.0,
        argmin: vec![best.1],
        continuum_lower_bound: best.0 - eps,
        eps,
        evaluations: m0.len() as u64,
    };
    if cert.continuum_lower_bound < -0.046 || cert.continuum_lower_bound + p4() <= 0.0 {
        return Err(Cube3Error::CertificationFailed { quantity: "min p1", minimum: cert });
    }
    Ok(cert)
}

/// Refines the product-mesh argmin of `P` into the free local minimum by
/// coordinate descent with golden-section line searches, accepting only
/// strict improvements; returns `(value, v0, v1)` with the value never
/// above the starting mesh minimum.
pub fn free_min_p() -> Result<(f64, f64, f64)> {
    let start = mesh_min_p(FREE_MIN_EPS)?;
    let f = |a: f64, b: f64| p1_inner(a) + p2_inner(b) + p3_inner(a, b);
    let (mut v0, mut v1) = (start.argmin[0], start.argmin[1]);
    let mut best = start.mesh_min;
    // A bracket a few mesh cells wide always contains the axis minimum once
    // the start sits within one cell of the joint minimizer.
    let h = 1.5e-3;
    for _ in 0..40 {
        let (x, fx) =
            specfun::golden_min(|a| f(a, v1), (v0 - h).max(1e-9), (v0 + h).min(V_SC), 1e-12)?;
        if fx < best {
            best = fx;
            v0 = x;
        }
        let (x, fx) = specfun::golden_min(
            |b| f(v0, b),
            (v1 - h).max(V_CP),
            (v1 + h).min(1.0 - V_CP),
            1e-12,
        )?;
        if fx < best {
            best = fx;
            v1 = x;
        }
    }
    Ok((best, v0, v1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l0_is_the_antiderivative_of_d0_in_spirit() {
        // crude trapezoid of d0 over [a, b] against l0(b) - l0(a)
        let (a, b) = (0.01, 0.1);
        let n = 20_000;
        let h = (b - a) / n as f64;
        let mut s = 0.5 * (d0(a).unwrap() + d0(b).unwrap());
        for k in 1..n {
            s += d0(a + k as f64 * h).unwrap();
        }
        assert!((s * h - (l0(b).unwrap() - l0(a).unwrap())).abs() < 1e-8);
    }

    #[test]
    fn l1_inverts_the_v1_mesh_formula() {
        let eps = 3e-4;
        let mesh = build_mesh_v1(eps).unwrap();
        assert_eq!(mesh.points[0], V_CP);
        for (j, &v) in mesh.points.iter().enumerate() {
            assert!((l1(v).unwrap() - j as f64 * eps).abs() <= 1e-14);
        }
    }

    #[test]
    fn domains_are_enforced() {
        assert!(d0(0.0).is_err());
        assert!(d1(V_CP).is_err());
        assert!(l0(-1e-12).is_err());
        assert!(l1(0.3).is_err());
        assert!(build_mesh_v0(0.0).is_err());
        assert!(build_mesh_v1(-1e-3).is_err());
    }

    #[test]
    fn undersized_budgets_fail_the_seed_step_audit() {
        // the fixed 1e-8 seed costs l0(1e-8) ~ 2.85e-4 regardless of eps
        let err = certify_min_p1(1e-4).unwrap_err();
        assert!(matches!(err, Cube3Error::MeshBudget { .. }));
    }
}
