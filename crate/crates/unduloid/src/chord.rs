use crate::{Result, UnduloidError};
use isoprofile::BaseProfile;

/// Secant of a profile between two volume fractions.
///
/// The slope `lambda` is the weighted mean curvature of the matching
/// unduloid and `c` its intercept at `v = 0`; concavity of the profile makes
/// `c` nonnegative and keeps the secant strictly below the profile between
/// the endpoints, except when both endpoints share an affine stretch of the
/// graph (the degenerate case).
#[derive(Clone, Copy, Debug)]
pub struct Chord {
    pub v0: f64,
    pub v1: f64,
    pub lambda: f64,
    pub c: f64,
    degenerate: bool,
}

impl Chord {
    /// Height of the secant at volume fraction `v`.
    pub fn eval(&self, v: f64) -> f64 {
        self.lambda * v + self.c
    }

    /// True when the secant lies on the profile graph over its whole span.
    /// Degenerate chords carry valid slope data but bound no oscillation;
    /// period and shape computations reject them.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Tangent-line data of a horizontal band at volume fraction `vbar`:
    /// slope zero, intercept the weight at the band height.
    pub(crate) fn horizontal(vbar: f64, weight: f64) -> Chord {
        Chord { v0: vbar, v1: vbar, lambda: 0.0, c: weight, degenerate: false }
    }
}

/// Validates a volume span `v0 < v1` inside `[0, 1]` with at most one
/// endpoint on the boundary.
pub(crate) fn check_span(func: &'static str, v0: f64, v1: f64) -> Result<()> {
    if !v0.is_finite() || !(0.0..=1.0).contains(&v0) {
        return Err(UnduloidError::Domain { func, arg: "v0", value: v0, domain: "[0, 1]" });
    }
    if !v1.is_finite() || !(0.0..=1.0).contains(&v1) {
        return Err(UnduloidError::Domain { func, arg: "v1", value: v1, domain: "[0, 1]" });
    }
    if v0 >= v1 {
        return Err(UnduloidError::Domain { func, arg: "v1", value: v1, domain: "(v0, 1]" });
    }
    if v0 == 0.0 && v1 == 1.0 {
        return Err(UnduloidError::FullSpan { func });
    }
    Ok(())
}

/// Secant of `p` through `(v0, I0(v0))` and `(v1, I0(v1))`.
///
/// Chords drawn inside one affine stretch of the profile coincide with the
/// graph; they are returned with the degenerate flag set rather than
/// rejected, since their slope data is still well defined.
pub fn chord(p: &BaseProfile, v0: f64, v1: f64) -> Result<Chord> {
    check_span("chord", v0, v1)?;
    let i0 = p.eval(v0);
    let i1 = p.eval(v1);
    let dv = v1 - v0;
    let lambda = (i1 - i0) / dv;
    let c = (v1 * i0 - v0 * i1) / dv;
    let degenerate = p.affine_stretches().iter().any(|&(lo, hi)| v0 >= lo && v1 <= hi);
    Ok(Chord { v0, v1, lambda, c, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use isoprofile::{gaussian_profile, torus2_profile, TORUS2_FLAT_HI, TORUS2_FLAT_LO};

    #[test]
    fn flat_zone_chord_is_degenerate_with_unit_height() {
        let p = torus2_profile();
        let ch = chord(&p, TORUS2_FLAT_LO, TORUS2_FLAT_HI).unwrap();
        assert_abs_diff_eq!(ch.lambda, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ch.c, 1.0, epsilon = 1e-12);
        assert!(ch.is_degenerate());
        let inner = chord(&p, 0.4, 0.5).unwrap();
        assert!(inner.is_degenerate());
        let crossing = chord(&p, 0.2, 0.5).unwrap();
        assert!(!crossing.is_degenerate());
    }

    #[test]
    fn symmetric_gaussian_chord_is_level() {
        let p = gaussian_profile();
        for v0 in [0.1, 0.25, 0.4] {
            let ch = chord(&p, v0, 1.0 - v0).unwrap();
            assert_abs_diff_eq!(ch.lambda, 0.0, epsilon = 1e-12);
            assert_relative_eq!(ch.c, p.eval(v0), epsilon = 1e-12);
        }
    }

    #[test]
    fn one_sided_cap_chord_slope() {
        let p = torus2_profile();
        let xi = 0.25f64;
        let ch = chord(&p, 0.0, std::f64::consts::PI * xi * xi).unwrap();
        assert_relative_eq!(ch.lambda, 1.0 / xi, epsilon = 1e-12);
        assert_eq!(ch.c, 0.0);
        assert!(!ch.is_degenerate());
    }

    #[test]
    fn chord_stays_below_profile_between_endpoints() {
        let p = torus2_profile();
        let g = gaussian_profile();
        for (prof, v0, v1) in [(&p, 0.05, 0.85), (&p, 0.2, 0.5), (&g, 0.15, 0.7)] {
            let ch = chord(prof, v0, v1).unwrap();
            for k in 0..=400 {
                let v = v0 + (v1 - v0) * k as f64 / 400.0;
                assert!(
                    ch.eval(v) <= prof.eval(v) + 1e-12,
                    "chord above profile at v = {v}"
                );
            }
        }
    }

    #[test]
    fn span_validation() {
        let p = gaussian_profile();
        assert!(matches!(chord(&p, 0.0, 1.0), Err(UnduloidError::FullSpan { .. })));
        assert!(matches!(chord(&p, 0.5, 0.5), Err(UnduloidError::Domain { .. })));
        assert!(matches!(chord(&p, 0.7, 0.2), Err(UnduloidError::Domain { .. })));
        assert!(matches!(chord(&p, -0.1, 0.5), Err(UnduloidError::Domain { .. })));
        assert!(matches!(chord(&p, 0.1, 1.5), Err(UnduloidError::Domain { .. })));
        assert!(chord(&p, 0.0, 0.4).is_ok());
        assert!(chord(&p, 0.6, 1.0).is_ok());
    }
}
