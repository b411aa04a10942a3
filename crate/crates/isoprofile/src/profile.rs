use crate::{ProfileError, Result};
use std::f64::consts::{FRAC_1_PI, PI};

/// Volume fraction where the flat-torus profile leaves its cap branch.
pub const TORUS2_FLAT_LO: f64 = FRAC_1_PI;
/// Volume fraction where the flat-torus profile re-enters a cap branch.
pub const TORUS2_FLAT_HI: f64 = 1.0 - FRAC_1_PI;

/// A concave symmetric profile on the unit volume interval.
///
/// The profile value `eval(v)` is the weight of the minimal interface
/// enclosing volume fraction `v` in the underlying model. Profiles are
/// positive on `(0,1)` and vanish at the endpoints; they may have finitely
/// many interior kinks (`singular_set`), across which one-sided derivatives
/// are still available.
#[derive(Clone, Debug)]
pub struct BaseProfile {
    name: String,
    kind: ProfileKind,
}

#[derive(Clone, Debug)]
pub(crate) enum ProfileKind {
    Torus2,
    Gaussian,
    Piecewise(PiecewiseProfile),
}

/// Profile of the square flat torus: caps grow as circles until they wrap
/// into horizontal bands.
pub fn torus2_profile() -> BaseProfile {
    BaseProfile {
        name: "torus2".to_owned(),
        kind: ProfileKind::Torus2,
    }
}

/// Profile of the standard Gaussian measure on the line: `eval(v)` is the
/// Gaussian density at the `v`-quantile.
pub fn gaussian_profile() -> BaseProfile {
    BaseProfile {
        name: "gaussian".to_owned(),
        kind: ProfileKind::Gaussian,
    }
}

/// Builds a piecewise-linear profile from `(v, value)` breakpoints.
///
/// The breakpoints must start at `v = 0`, end at `v = 1`, be strictly
/// increasing in `v`, nonnegative, positive away from the endpoints, concave,
/// and symmetric about `v = 1/2`. Concavity is checked with a relative slack
/// of `1e-12` on slopes and symmetry with `1e-9` on values; definitions
/// violating either are rejected.
pub fn piecewise_profile(name: &str, pts: &[(f64, f64)]) -> Result<BaseProfile> {
    let reject = |reason: String| ProfileError::InvalidDefinition { reason };
    if pts.len() < 2 {
        return Err(reject("need at least two breakpoints".into()));
    }
    if pts[0].0 != 0.0 || pts[pts.len() - 1].0 != 1.0 {
        return Err(reject("breakpoints must span v = 0 to v = 1 exactly".into()));
    }
    let mut yscale: f64 = 0.0;
    for (i, &(v, y)) in pts.iter().enumerate() {
        if !v.is_finite() || !y.is_finite() || y < 0.0 {
            return Err(reject(format!("breakpoint {i} has invalid value ({v}, {y})")));
        }
        if i > 0 && v <= pts[i - 1].0 {
            return Err(reject(format!("breakpoint abscissae not increasing at index {i}")));
        }
        if i > 0 && i + 1 < pts.len() && y == 0.0 {
            return Err(reject(format!("profile vanishes at interior breakpoint v = {v}")));
        }
        yscale = yscale.max(y);
    }
    if yscale == 0.0 {
        return Err(reject("profile is identically zero".into()));
    }
    let slope = |i: usize| (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - pts[i].0);
    for i in 0..pts.len() - 2 {
        let (s0, s1) = (slope(i), slope(i + 1));
        if s1 - s0 > 1e-12 * s0.abs().max(s1.abs()).max(1.0) {
            return Err(reject(format!(
                "not concave: slope rises from {s0} to {s1} at v = {}",
                pts[i + 1].0
            )));
        }
    }
    let pw = PiecewiseProfile { pts: pts.to_vec() };
    for &(v, y) in pts {
        let mirrored = pw.eval(1.0 - v);
        if (mirrored - y).abs() > 1e-9 * yscale {
            return Err(reject(format!(
                "not symmetric: value {y} at v = {v} but {mirrored} at v = {}",
                1.0 - v
            )));
        }
    }
    Ok(BaseProfile {
        name: name.to_owned(),
        kind: ProfileKind::Piecewise(pw),
    })
}

impl BaseProfile {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    /// Profile value at volume fraction `v`; arguments are clamped to `[0,1]`.
    pub fn eval(&self, v: f64) -> f64 {
        let v = v.clamp(0.0, 1.0);
        match &self.kind {
            ProfileKind::Torus2 => {
                let cap = (PI * v).sqrt();
                let co_cap = (PI * (1.0 - v)).sqrt();
                cap.min(1.0).min(co_cap)
            }
            ProfileKind::Gaussian => {
                if v == 0.0 || v == 1.0 {
                    0.0
                } else {
                    specfun::gauss_density(gauss_quantile_interior(v))
                }
            }
            ProfileKind::Piecewise(pw) => pw.eval(v),
        }
    }

    /// Two-sided derivative of the profile; fails on the singular set.
    pub fn deriv1(&self, v: f64) -> Result<f64> {
        if self.singular_set().contains(&v) {
            return Err(ProfileError::NotDifferentiable {
                name: self.name.clone(),
                v,
            });
        }
        Ok(self.deriv1_sided(v, true))
    }

    /// Two-sided second derivative of the profile; fails on the singular set.
    pub fn deriv2(&self, v: f64) -> Result<f64> {
        if self.singular_set().contains(&v) {
            return Err(ProfileError::NotDifferentiable {
                name: self.name.clone(),
                v,
            });
        }
        Ok(self.deriv2_sided(v, true))
    }

    /// One-sided derivative, taken from above when `from_above` and from
    /// below otherwise. Away from the singular set both sides agree.
    pub fn deriv1_sided(&self, v: f64, from_above: bool) -> f64 {
        let v = v.clamp(0.0, 1.0);
        match &self.kind {
            ProfileKind::Torus2 => {
                if in_zone(v, from_above, 0.0, TORUS2_FLAT_LO) {
                    0.5 * (PI / v).sqrt()
                } else if in_zone(v, from_above, TORUS2_FLAT_HI, 1.0) {
                    -0.5 * (PI / (1.0 - v)).sqrt()
                } else {
                    0.0
                }
            }
            ProfileKind::Gaussian => {
                if v == 0.0 {
                    f64::INFINITY
                } else if v == 1.0 {
                    f64::NEG_INFINITY
                } else {
                    -gauss_quantile_interior(v)
                }
            }
            ProfileKind::Piecewise(pw) => pw.slope(pw.seg_index(v, from_above)),
        }
    }

    /// One-sided second derivative; see [`BaseProfile::deriv1_sided`].
    pub fn deriv2_sided(&self, v: f64, from_above: bool) -> f64 {
        let v = v.clamp(0.0, 1.0);
        match &self.kind {
            ProfileKind::Torus2 => {
                if in_zone(v, from_above, 0.0, TORUS2_FLAT_LO) {
                    -0.25 * PI.sqrt() * v.powf(-1.5)
                } else if in_zone(v, from_above, TORUS2_FLAT_HI, 1.0) {
                    -0.25 * PI.sqrt() * (1.0 - v).powf(-1.5)
                } else {
                    0.0
                }
            }
            // The Gaussian profile satisfies eval * deriv2 = -1 identically.
            ProfileKind::Gaussian => -1.0 / self.eval(v),
            ProfileKind::Piecewise(_) => 0.0,
        }
    }

    /// Interior kinks of the profile, in increasing order.
    pub fn singular_set(&self) -> Vec<f64> {
        match &self.kind {
            ProfileKind::Torus2 => vec![TORUS2_FLAT_LO, TORUS2_FLAT_HI],
            ProfileKind::Gaussian => Vec::new(),
            ProfileKind::Piecewise(pw) => {
                pw.pts[1..pw.pts.len() - 1].iter().map(|p| p.0).collect()
            }
        }
    }

    /// `eval(1 - u)`, computed right-anchored: near `v = 1` the float grid is
    /// too coarse for `eval` to resolve tiny distances from the endpoint, but
    /// the distance `u` itself carries full relative precision.
    pub fn eval_mirror(&self, u: f64) -> f64 {
        match &self.kind {
            // The closed-form profiles are exactly symmetric expressions.
            ProfileKind::Torus2 | ProfileKind::Gaussian => self.eval(u),
            ProfileKind::Piecewise(pw) => pw.eval_from_right(u.clamp(0.0, 1.0)),
        }
    }

    /// Maximal closed intervals on which the profile is affine. A secant
    /// drawn between two volumes inside one of these coincides with the graph.
    pub fn affine_stretches(&self) -> Vec<(f64, f64)> {
        match &self.kind {
            ProfileKind::Torus2 => vec![(TORUS2_FLAT_LO, TORUS2_FLAT_HI)],
            ProfileKind::Gaussian => Vec::new(),
            ProfileKind::Piecewise(pw) => {
                pw.pts.windows(2).map(|w| (w[0].0, w[1].0)).collect()
            }
        }
    }

    /// Maximal open intervals on which the profile is smooth.
    pub fn zones(&self) -> Vec<(f64, f64)> {
        let mut cuts = vec![0.0];
        cuts.extend(self.singular_set());
        cuts.push(1.0);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Picks the zone containing `v`, attributing boundary points to the side
/// requested by `from_above`.
fn in_zone(v: f64, from_above: bool, lo: f64, hi: f64) -> bool {
    if from_above {
        v >= lo && v < hi
    } else {
        v > lo && v <= hi
    }
}

fn gauss_quantile_interior(v: f64) -> f64 {
    specfun::gauss_quantile(v).expect("quantile argument is interior by construction")
}

#[derive(Clone, Debug)]
pub(crate) struct PiecewiseProfile {
    pts: Vec<(f64, f64)>,
}

impl PiecewiseProfile {
    fn seg_index(&self, v: f64, from_above: bool) -> usize {
        // Index of the segment whose closed span contains v, siding with the
        // upper segment at shared breakpoints when from_above.
        let n = self.pts.len() - 1;
        let pos = self
            .pts
            .partition_point(|p| if from_above { p.0 <= v } else { p.0 < v });
        pos.saturating_sub(1).min(n - 1)
    }

    pub(crate) fn eval(&self, v: f64) -> f64 {
        let i = self.seg_index(v, true);
        let (v0, y0) = self.pts[i];
        y0 + self.slope(i) * (v - v0)
    }

    fn slope(&self, i: usize) -> f64 {
        let (v0, y0) = self.pts[i];
        let (v1, y1) = self.pts[i + 1];
        (y1 - y0) / (v1 - v0)
    }

    /// Value at `1 - u`, anchored at the segment's right breakpoint. For
    /// `u <= 1/2` the complement `1 - v1` is exact, so the local offset
    /// `(1 - v1) - u` never loses the low bits that `(1 - u) - v1` would.
    fn eval_from_right(&self, u: f64) -> f64 {
        let i = self.seg_index(1.0 - u, false);
        let (v1, y1) = self.pts[i + 1];
        y1 + self.slope(i) * ((1.0 - v1) - u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn torus2_branch_values() {
        let p = torus2_profile();
        assert_relative_eq!(p.eval(TORUS2_FLAT_LO), 1.0, epsilon = 1e-15);
        assert_relative_eq!(p.eval(0.5), 1.0, epsilon = 1e-15);
        let junction = 4.0 * PI / 81.0;
        assert_relative_eq!(p.eval(junction), 2.0 * PI / 9.0, epsilon = 1e-15);
        assert_eq!(p.eval(0.0), 0.0);
        assert_eq!(p.eval(1.0), 0.0);
    }

    #[test]
    fn torus2_derivatives_and_kinks() {
        let p = torus2_profile();
        assert!(p.deriv1(TORUS2_FLAT_LO).is_err());
        assert!(p.deriv1(TORUS2_FLAT_HI).is_err());
        assert_relative_eq!(p.deriv1(0.1).unwrap(), 0.5 * (PI / 0.1).sqrt());
        assert_eq!(p.deriv1(0.5).unwrap(), 0.0);
        assert!(p.deriv1(0.9).unwrap() < 0.0);
        // One-sided slopes at the left kink: cap side pi/2, flat side 0.
        let below = p.deriv1_sided(TORUS2_FLAT_LO, false);
        let above = p.deriv1_sided(TORUS2_FLAT_LO, true);
        assert_relative_eq!(below, 0.5 * PI, epsilon = 1e-14);
        assert_eq!(above, 0.0);
        assert_eq!(p.singular_set(), vec![TORUS2_FLAT_LO, TORUS2_FLAT_HI]);
        assert_eq!(p.zones().len(), 3);
        assert_eq!(p.affine_stretches(), vec![(TORUS2_FLAT_LO, TORUS2_FLAT_HI)]);
        assert!(gaussian_profile().affine_stretches().is_empty());
    }

    #[test]
    fn gaussian_values_and_curvature_identity() {
        let p = gaussian_profile();
        assert_relative_eq!(
            p.eval(0.5),
            1.0 / (2.0 * PI).sqrt(),
            epsilon = 1e-15
        );
        for &v in &[0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95] {
            let product = p.eval(v) * p.deriv2(v).unwrap();
            assert_relative_eq!(product, -1.0, epsilon = 1e-12);
        }
        // Symmetry is exact when v and 1 - v are both representable, as the
        // quantile and the Newton polish then mirror bit for bit.
        assert_eq!(p.eval(0.25), p.eval(0.75));
        assert_eq!(p.deriv1(0.25).unwrap(), -p.deriv1(0.75).unwrap());
        assert_relative_eq!(
            p.deriv1(0.3).unwrap(),
            -p.deriv1(0.7).unwrap(),
            epsilon = 1e-14
        );
        assert!(p.singular_set().is_empty());
    }

    #[test]
    fn piecewise_validation() {
        let tent = [(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)];
        let p = piecewise_profile("tent", &tent).unwrap();
        assert_relative_eq!(p.eval(0.25), 0.5);
        assert_eq!(p.deriv1_sided(0.5, false), 2.0);
        assert_eq!(p.deriv1_sided(0.5, true), -2.0);
        assert!(p.deriv1(0.5).is_err());
        assert_eq!(p.singular_set(), vec![0.5]);

        let convex = [(0.0, 0.5), (0.5, 0.2), (1.0, 0.5)];
        assert!(piecewise_profile("bad", &convex).is_err());
        let asym = [(0.0, 0.0), (0.3, 1.0), (1.0, 0.0)];
        assert!(piecewise_profile("bad", &asym).is_err());
        let short = [(0.0, 0.0)];
        assert!(piecewise_profile("bad", &short).is_err());
        let misplaced = [(0.1, 0.0), (0.5, 1.0), (1.0, 0.0)];
        assert!(piecewise_profile("bad", &misplaced).is_err());
    }
}
