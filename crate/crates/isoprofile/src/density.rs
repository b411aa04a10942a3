use crate::profile::{BaseProfile, ProfileKind, TORUS2_FLAT_HI, TORUS2_FLAT_LO};
use specfun::{find_root, integrate_endpoint_singular, Tolerances};
use std::f64::consts::{FRAC_1_PI, PI};

/// Half-width of the flat-torus model slab.
const TORUS2_RADIUS: f64 = 0.5 + FRAC_1_PI;
/// Height at which the flat-torus density leaves its flat core.
const TORUS2_KINK: f64 = 0.5 - FRAC_1_PI;
/// The Gaussian quantile is capped at this height; beyond it no finite `v`
/// in `(0,1)` is representable anyway.
const GAUSS_CAP: f64 = 40.0;

/// The even log-concave density attached to a concave symmetric profile.
///
/// `density`, `cdf` and `quantile` describe a probability density `phi` on
/// `[-support_radius, support_radius]` with median zero satisfying
/// `profile(cdf(s)) = phi(s)`. Interior kinks of `phi` are reported in
/// `sing_points`.
#[derive(Clone, Debug)]
pub struct ModelDensity {
    kind: DensityKind,
    support_radius: f64,
    sing_points: Vec<f64>,
}

#[derive(Clone, Debug)]
enum DensityKind {
    Torus2,
    Gaussian,
    Numeric(NumericDensity),
}

/// Builds the model density whose isoperimetric profile is `profile`.
///
/// The two built-in profiles map to closed forms: the flat-torus profile to
/// the tent-shaped density that is 1 on the core and decays linearly on the
/// sides, and the Gaussian profile to the standard normal density. Piecewise
/// profiles go through quadrature of `1/profile` and root inversion.
pub fn bobkov_density(profile: &BaseProfile) -> ModelDensity {
    match profile.kind() {
        ProfileKind::Torus2 => ModelDensity {
            kind: DensityKind::Torus2,
            support_radius: TORUS2_RADIUS,
            sing_points: vec![-TORUS2_KINK, TORUS2_KINK],
        },
        ProfileKind::Gaussian => ModelDensity {
            kind: DensityKind::Gaussian,
            support_radius: f64::INFINITY,
            sing_points: Vec::new(),
        },
        ProfileKind::Piecewise(_) => {
            let num = NumericDensity {
                profile: profile.clone(),
            };
            let support_radius = num.half_support();
            let sing_points = profile
                .singular_set()
                .iter()
                .map(|&v| num.quantile(v))
                .collect();
            ModelDensity {
                kind: DensityKind::Numeric(num),
                support_radius,
                sing_points,
            }
        }
    }
}

impl ModelDensity {
    /// Density value `phi(s)`; zero outside the support.
    pub fn density(&self, s: f64) -> f64 {
        match &self.kind {
            DensityKind::Torus2 => {
                let a = s.abs();
                if a <= TORUS2_KINK {
                    1.0
                } else if a < TORUS2_RADIUS {
                    0.5 * PI * (TORUS2_RADIUS - a)
                } else {
                    0.0
                }
            }
            DensityKind::Gaussian => specfun::gauss_density(s),
            DensityKind::Numeric(num) => num.density(s, self.support_radius),
        }
    }

    /// Cumulative distribution `Phi(s)`.
    pub fn cdf(&self, s: f64) -> f64 {
        match &self.kind {
            DensityKind::Torus2 => {
                if s <= -TORUS2_RADIUS {
                    0.0
                } else if s <= -TORUS2_KINK {
                    0.25 * PI * (s + TORUS2_RADIUS).powi(2)
                } else if s <= TORUS2_KINK {
                    s + 0.5
                } else if s < TORUS2_RADIUS {
                    1.0 - 0.25 * PI * (TORUS2_RADIUS - s).powi(2)
                } else {
                    1.0
                }
            }
            DensityKind::Gaussian => specfun::gauss_cdf(s),
            DensityKind::Numeric(num) => num.cdf(s),
        }
    }

    /// Quantile `Phi^{-1}(v)` for `v` in `[0,1]`; infinite-support models
    /// return `-inf`/`+inf` at the extremes.
    pub fn quantile(&self, v: f64) -> f64 {
        let v = v.clamp(0.0, 1.0);
        match &self.kind {
            DensityKind::Torus2 => {
                if v <= TORUS2_FLAT_LO {
                    -TORUS2_RADIUS + 2.0 * (v / PI).sqrt()
                } else if v >= TORUS2_FLAT_HI {
                    TORUS2_RADIUS - 2.0 * ((1.0 - v) / PI).sqrt()
                } else {
                    v - 0.5
                }
            }
            DensityKind::Gaussian => {
                if v == 0.0 {
                    f64::NEG_INFINITY
                } else if v == 1.0 {
                    f64::INFINITY
                } else {
                    specfun::gauss_quantile(v)
                        .expect("quantile argument is interior by construction")
                        .clamp(-GAUSS_CAP, GAUSS_CAP)
                }
            }
            DensityKind::Numeric(num) => num.quantile(v),
        }
    }

    /// Half-width of the support; `+inf` for unbounded models.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// Heights at which the density has a kink, in increasing order.
    pub fn sing_points(&self) -> &[f64] {
        &self.sing_points
    }
}

/// Quadrature-based correspondence for profiles without a closed form.
#[derive(Clone, Debug)]
struct NumericDensity {
    profile: BaseProfile,
}

/// Smallest volume fraction used when bracketing the numeric cdf; quantile
/// values this deep carry the whole representable tail of the model.
const V_EDGE: f64 = 1e-15;

impl NumericDensity {
    /// Integral of `1/profile` over `[lo, 1/2]`, split at profile kinks.
    /// With `mirrored` the integrand is `1/profile(1 - u)`, covering
    /// `[1/2, 1 - lo]` after the substitution `u = 1 - w`; the mirrored form
    /// keeps full relative precision on distances to the upper endpoint.
    fn inv_integral_to_median(&self, lo: f64, mirrored: bool) -> f64 {
        let tol = Tolerances {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iter: 200,
        };
        let mut cuts = vec![lo];
        for c in self.profile.singular_set() {
            // Kinks above the median mirror to 1 - c, exactly for c >= 1/2.
            let c = if mirrored { 1.0 - c } else { c };
            if c > lo && c < 0.5 {
                cuts.push(c);
            }
        }
        cuts.push(0.5);
        cuts.sort_by(f64::total_cmp);
        let g = |u: f64| {
            if mirrored {
                self.profile.eval_mirror(u)
            } else {
                self.profile.eval(u)
            }
        };
        cuts.windows(2)
            .map(|w| {
                integrate_endpoint_singular(|u, _, _| 1.0 / g(u), w[0], w[1], &tol)
                    .unwrap_or_else(|e| {
                        panic!("1/profile quadrature failed on [{}, {}]: {e}", w[0], w[1])
                    })
                    .value
            })
            .sum()
    }

    fn quantile(&self, v: f64) -> f64 {
        if v == 0.0 {
            return -self.half_support();
        }
        if v == 1.0 {
            return self.mirror_support();
        }
        match v.partial_cmp(&0.5).expect("volume fraction is not NaN") {
            std::cmp::Ordering::Less => -self.inv_integral_to_median(v, false),
            std::cmp::Ordering::Equal => 0.0,
            // 1 - v is exact here, and the mirrored integrand keeps the
            // distance to the profile zero accurate all the way up.
            std::cmp::Ordering::Greater => self.inv_integral_to_median(1.0 - v, true),
        }
    }

    /// Distance from the median to the lower support edge. A piecewise-linear
    /// profile vanishing at `v = 0` decays linearly there, so `1/profile` has
    /// a log divergence and the support is unbounded; otherwise the edge
    /// integral is regular.
    fn half_support(&self) -> f64 {
        if self.profile.eval(0.0) > 0.0 {
            self.inv_integral_to_median(0.0, false)
        } else {
            f64::INFINITY
        }
    }

    fn mirror_support(&self) -> f64 {
        if self.profile.eval(1.0) > 0.0 {
            self.inv_integral_to_median(0.0, true)
        } else {
            f64::INFINITY
        }
    }

    fn cdf(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.5;
        }
        let (lo, hi) = (V_EDGE, 1.0 - V_EDGE);
        if s <= self.quantile(lo) {
            return 0.0;
        }
        if s >= self.quantile(hi) {
            return 1.0;
        }
        let tol = Tolerances {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_iter: 200,
        };
        find_root(|v| self.quantile(v) - s, lo, hi, &tol)
            .expect("quantile is continuous and strictly increasing")
    }

    fn density(&self, s: f64, support_radius: f64) -> f64 {
        if s.abs() > support_radius {
            return 0.0;
        }
        self.profile.eval(self.cdf(s))
    }
}
