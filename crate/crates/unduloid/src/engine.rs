//! Height-coordinate quadrature engine for unduloid measures.
//!
//! All integrals run over the height coordinate `s` of the model density,
//! where the squared graph slope is `K(s) = (phi(s)/ell(Phi(s)))^2 - 1` with
//! `phi` the density, `Phi` its cdf, and `ell` the chord. `K` vanishes like a
//! linear function at each closed endpoint, so the substitution
//! `s = a + (b-a) sin^2(theta)` makes every integrand analytic; distances to
//! the two endpoints are carried exactly through the substitution instead of
//! being recovered from `s` by subtraction.

use crate::chord::Chord;
use crate::{Result, UnduloidError};
use isoprofile::{BaseProfile, ModelDensity};
use std::f64::consts::FRAC_PI_4;

/// Fraction of the chord width below which the endpoint Taylor form of `K`
/// replaces the raw ratio, whose bits are all cancellation there.
const ENDPOINT_FRACTION: f64 = 1e-6;
/// Chords narrower than this in `s` evaluate `K` through the integrated
/// chord gap at every node.
const NARROW_WIDTH: f64 = 0.1;
/// Agreement demanded between consecutive doubled Gauss-Legendre passes,
/// relative on the scale of the integral.
const GL_TOL: f64 = 1e-12;
const GL_START: usize = 128;
const GL_MAX: usize = 4096;
const GL_SLICE_START: usize = 64;
const GL_SLICE_MAX: usize = 2048;
const GAP_RULE: usize = 64;

pub(crate) struct Engine<'a> {
    p: &'a BaseProfile,
    d: &'a ModelDensity,
    lam: f64,
    c: f64,
    f0: f64,
    f1: f64,
    w: f64,
    /// K' into the interval at each closed endpoint (2 * chord gap slope).
    kp0: f64,
    kp1: f64,
    kpp0: f64,
    kpp1: f64,
    /// An open end sits on the slab boundary: K blows up there instead of
    /// vanishing, and the raw ratio is exact.
    open_lo: bool,
    open_hi: bool,
    narrow: bool,
    /// Density kink heights strictly inside (f0, f1).
    cuts: Vec<f64>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(p: &'a BaseProfile, d: &'a ModelDensity, ch: &Chord) -> Result<Self> {
        if ch.is_degenerate() {
            return Err(UnduloidError::DegenerateChord { v0: ch.v0, v1: ch.v1 });
        }
        let (v0, v1, lam, c) = (ch.v0, ch.v1, ch.lambda, ch.c);
        let open_lo = v0 == 0.0;
        let open_hi = v1 == 1.0;
        if (open_lo || open_hi) && !d.support_radius().is_finite() {
            return Err(UnduloidError::Divergent {
                reason: format!(
                    "one-sided chord over [{v0}, {v1}] on a profile of unbounded support; \
                     the time integrand is non-integrable at the open end"
                ),
            });
        }
        let f0 = d.quantile(v0);
        let f1 = d.quantile(v1);
        let mut eng = Engine {
            p,
            d,
            lam,
            c,
            f0,
            f1,
            w: f1 - f0,
            kp0: f64::NAN,
            kp1: f64::NAN,
            kpp0: f64::NAN,
            kpp1: f64::NAN,
            open_lo,
            open_hi,
            narrow: f1 - f0 < NARROW_WIDTH,
            cuts: d.sing_points().iter().copied().filter(|&z| f0 < z && z < f1).collect(),
        };
        // Transversality gate: the quadrature assumes K decays linearly at
        // closed endpoints. A vanishing gap slope means the chord is tangent
        // there and the time integral picks up a logarithmic divergence.
        let tang = 1e-9 * (1.0 + lam.abs());
        if !open_lo {
            let g = p.deriv1_sided(v0, true) - lam;
            if g < tang {
                return Err(UnduloidError::Divergent {
                    reason: format!(
                        "chord is tangent to the profile at v0 = {v0} (gap slope {g:e}); \
                         the half-period integral diverges logarithmically"
                    ),
                });
            }
            let ii = p.eval(v0) * p.deriv2_sided(v0, true);
            eng.kp0 = 2.0 * g;
            eng.kpp0 = 4.0 * g * g + 2.0 * ii - 2.0 * lam * g;
        }
        if !open_hi {
            let g = p.deriv1_sided(v1, false) - lam;
            if g > -tang {
                return Err(UnduloidError::Divergent {
                    reason: format!(
                        "chord is tangent to the profile at v1 = {v1} (gap slope {g:e}); \
                         the half-period integral diverges logarithmically"
                    ),
                });
            }
            let ii = p.eval(v1) * p.deriv2_sided(v1, false);
            eng.kp1 = 2.0 * g;
            eng.kpp1 = 4.0 * g * g + 2.0 * ii - 2.0 * lam * g;
        }
        Ok(eng)
    }

    /// Engine for the `v0 -> 0` limit chord (`c = 0`, slope `I0(v1)/v1`)
    /// clipped at a floor height below which the density carries no double
    /// precision mass. The floor behaves like an open end: `K` is huge and
    /// exactly representable there, and only horizontal extent accumulates.
    pub(crate) fn new_floor_clipped(
        p: &'a BaseProfile,
        d: &'a ModelDensity,
        s_floor: f64,
        v1: f64,
    ) -> Result<Self> {
        let f1 = d.quantile(v1);
        if !(v1 > 0.0 && v1 < 1.0) {
            return Err(UnduloidError::Domain {
                func: "limit_chord_measures",
                arg: "v1",
                value: v1,
                domain: "(0, 1)",
            });
        }
        if !s_floor.is_finite() || s_floor >= f1 {
            return Err(UnduloidError::Domain {
                func: "limit_chord_measures",
                arg: "s_floor",
                value: s_floor,
                domain: "(-inf, quantile(v1))",
            });
        }
        let lam = p.eval(v1) / v1;
        let g = p.deriv1_sided(v1, false) - lam;
        let ii = p.eval(v1) * p.deriv2_sided(v1, false);
        Ok(Engine {
            p,
            d,
            lam,
            c: 0.0,
            f0: s_floor,
            f1,
            w: f1 - s_floor,
            kp0: f64::NAN,
            kp1: 2.0 * g,
            kpp0: f64::NAN,
            kpp1: 4.0 * g * g + 2.0 * ii - 2.0 * lam * g,
            open_lo: true,
            open_hi: false,
            narrow: false,
            cuts: d.sing_points().iter().copied().filter(|&z| s_floor < z && z < f1).collect(),
        })
    }

    /// Squared graph slope at height `s`, with `d0 = s - f0` and
    /// `d1 = f1 - s` carried exactly by the caller.
    fn k_at(&self, s: f64, d0: f64, d1: f64) -> f64 {
        // The Taylor zones come first even on narrow chords: close to an
        // endpoint the node distance drops below one ulp of `s`, where any
        // evaluation through `s` itself (raw ratio or gap integral) sees a
        // zero-width interval, while the expansion runs on the carried
        // distance alone.
        let eps = ENDPOINT_FRACTION * self.w;
        if !self.open_lo && d0 < eps {
            return self.kp0 * d0 * (1.0 + 0.5 * self.kpp0 / self.kp0 * d0);
        }
        if !self.open_hi && d1 < eps {
            return -self.kp1 * d1 * (1.0 - 0.5 * self.kpp1 / self.kp1 * d1);
        }
        if self.narrow {
            return self.k_narrow(s, d0, d1);
        }
        let phi = self.d.density(s);
        let ell = self.lam * self.d.cdf(s) + self.c;
        let r = phi / ell;
        r * r - 1.0
    }

    /// `K` through the integrated chord gap. On narrow chords the ratio
    /// `phi/ell` is 1 + O(w^2) everywhere and the raw form loses all its
    /// bits, but the gap `D = phi - ell(Phi)` obeys
    /// `D'(u) = phi(u) (I0'(Phi(u)) - lambda)` and integrates stably from
    /// the nearest endpoint, where it vanishes exactly.
    fn k_narrow(&self, s: f64, d0: f64, d1: f64) -> f64 {
        let (lo, hi, sign) = if d0 <= d1 { (self.f0, s, 1.0) } else { (s, self.f1, -1.0) };
        let mut gap = 0.0;
        let mut a = lo;
        for &cut in self.cuts.iter().filter(|&&z| lo < z && z < hi) {
            gap += self.gap_piece(a, cut);
            a = cut;
        }
        gap += self.gap_piece(a, hi);
        let phi = self.d.density(s);
        let ell = self.lam * self.d.cdf(s) + self.c;
        sign * gap * (phi + ell) / (ell * ell)
    }

    fn gap_piece(&self, a: f64, b: f64) -> f64 {
        let rule = specfun::gauss_legendre(GAP_RULE);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &wt) in rule.0.iter().zip(&rule.1) {
            let u = mid + half * x;
            let v = self.d.cdf(u);
            acc += wt * self.d.density(u) * (self.p.deriv1_sided(v, true) - self.lam);
        }
        acc * half
    }

    /// The triple (T, V*T, A*T): horizontal half-period, weighted volume
    /// integral, and weighted area integral, all unnormalized.
    pub(crate) fn integrals(&self) -> (f64, f64, f64) {
        let mut total = (0.0, 0.0, 0.0);
        for (a, b) in self.piece_bounds() {
            let (t, vt, at) = self.piece(a, b);
            total.0 += t;
            total.1 += vt;
            total.2 += at;
        }
        total
    }

    /// Time to cross heights `[a, b]`, a sub-span of `[f0, f1]`.
    pub(crate) fn time_slice(&self, a: f64, b: f64) -> f64 {
        let mut t = 0.0;
        let mut lo = a;
        for &cut in self.cuts.iter().filter(|&&z| a < z && z < b) {
            t += self.time_piece(lo, cut);
            lo = cut;
        }
        t + self.time_piece(lo, b)
    }

    fn piece_bounds(&self) -> Vec<(f64, f64)> {
        let mut bounds = Vec::with_capacity(self.cuts.len() + 2);
        bounds.push(self.f0);
        bounds.extend_from_slice(&self.cuts);
        bounds.push(self.f1);
        bounds.windows(2).map(|w| (w[0], w[1])).collect()
    }

    fn piece(&self, a: f64, b: f64) -> (f64, f64, f64) {
        let len = b - a;
        let off0 = a - self.f0;
        let off1 = self.f1 - b;
        let mut prev: Option<(f64, f64, f64)> = None;
        let mut n = GL_START;
        loop {
            let rule = specfun::gauss_legendre(n);
            let (mut t, mut vt, mut at) = (0.0, 0.0, 0.0);
            for (&x, &wt) in rule.0.iter().zip(&rule.1) {
                let th = (x + 1.0) * FRAC_PI_4;
                let (sn, cs) = th.sin_cos();
                let loc0 = len * sn * sn;
                let s = a + loc0;
                let k = self.k_at(s, off0 + loc0, off1 + len * cs * cs);
                let jac = 2.0 * len * sn * cs * (wt * FRAC_PI_4);
                let dt = jac / k.sqrt();
                t += dt;
                vt += dt * self.d.cdf(s);
                at += jac * self.d.density(s) * ((k + 1.0) / k).sqrt();
            }
            if let Some((pt, pv, pa)) = prev {
                if (t - pt).abs() <= GL_TOL * (1.0 + t.abs())
                    && (vt - pv).abs() <= GL_TOL * (1.0 + vt.abs())
                    && (at - pa).abs() <= GL_TOL * (1.0 + at.abs())
                {
                    return (t, vt, at);
                }
            }
            if n >= GL_MAX {
                return (t, vt, at);
            }
            prev = Some((t, vt, at));
            n *= 2;
        }
    }

    fn time_piece(&self, a: f64, b: f64) -> f64 {
        let len = b - a;
        if len == 0.0 {
            return 0.0;
        }
        let off0 = a - self.f0;
        let off1 = self.f1 - b;
        let mut prev = f64::NAN;
        let mut n = GL_SLICE_START;
        loop {
            let rule = specfun::gauss_legendre(n);
            let mut t = 0.0;
            for (&x, &wt) in rule.0.iter().zip(&rule.1) {
                let th = (x + 1.0) * FRAC_PI_4;
                let (sn, cs) = th.sin_cos();
                let loc0 = len * sn * sn;
                let k = self.k_at(a + loc0, off0 + loc0, off1 + len * cs * cs);
                t += 2.0 * len * sn * cs * (wt * FRAC_PI_4) / k.sqrt();
            }
            if (t - prev).abs() <= GL_TOL * (1.0 + t.abs()) || n >= GL_SLICE_MAX {
                return t;
            }
            prev = t;
            n *= 2;
        }
    }
}
