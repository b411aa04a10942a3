//! Sampled unduloid graphs.

use crate::chord::{chord, Chord};
use crate::engine::Engine;
use crate::ops::DEGENERATE_WIDTH;
use crate::{Result, UnduloidError};
use isoprofile::{bobkov_density, BaseProfile};
use std::f64::consts::PI;

/// How the graph meets the slab boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    /// Both endpoints interior: the graph flattens out at `t = 0` and
    /// `t = half_period`.
    TwoSided,
    /// `v0 = 0`: the graph dives into the bottom of the slab perpendicularly.
    OneSidedBottom,
    /// `v1 = 1`: the graph climbs into the top of the slab perpendicularly.
    OneSidedTop,
}

/// An unduloid graph sampled as `(t, s, v)` rows: horizontal coordinate,
/// height, and volume fraction. `t` increases from `0` (where `v = v1`) to
/// `half_period` (where `v = v0`) while `v` strictly decreases.
#[derive(Clone, Debug)]
pub struct UnduloidShape {
    pub samples: Vec<(f64, f64, f64)>,
    pub chord: Chord,
    pub half_period: f64,
    pub kind: ShapeKind,
}

impl UnduloidShape {
    /// Constant-height band at volume fraction `vbar` spanning `t_span`.
    /// Its chord carries the tangent data (slope zero, intercept the weight
    /// at the band height), so the first-integral residual vanishes
    /// identically.
    pub fn horizontal(
        p: &BaseProfile,
        t_span: f64,
        vbar: f64,
        n_samples: usize,
    ) -> Result<UnduloidShape> {
        if !(vbar > 0.0 && vbar < 1.0) || !vbar.is_finite() {
            return Err(UnduloidError::Domain {
                func: "horizontal",
                arg: "vbar",
                value: vbar,
                domain: "(0, 1)",
            });
        }
        if !(t_span.is_finite() && t_span > 0.0) {
            return Err(UnduloidError::Domain {
                func: "horizontal",
                arg: "t_span",
                value: t_span,
                domain: "(0, inf)",
            });
        }
        check_samples("horizontal", n_samples)?;
        let d = bobkov_density(p);
        let sbar = d.quantile(vbar);
        let weight = d.density(sbar);
        let last = n_samples - 1;
        let samples = (0..n_samples)
            .map(|k| {
                let t = if k == last { t_span } else { t_span * k as f64 / last as f64 };
                (t, sbar, vbar)
            })
            .collect();
        Ok(UnduloidShape {
            samples,
            chord: Chord::horizontal(vbar, weight),
            half_period: t_span,
            kind: ShapeKind::TwoSided,
        })
    }

    /// CSV export with header `t,s,v`, one row per sample, every value with
    /// 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s,v\n");
        for &(t, s, v) in &self.samples {
            out.push_str(&specfun::fmt17(t));
            out.push(',');
            out.push_str(&specfun::fmt17(s));
            out.push(',');
            out.push_str(&specfun::fmt17(v));
            out.push('\n');
        }
        out
    }
}

fn check_samples(func: &'static str, n_samples: usize) -> Result<()> {
    if n_samples < 2 {
        return Err(UnduloidError::Domain {
            func,
            arg: "n_samples",
            value: n_samples as f64,
            domain: "[2, inf)",
        });
    }
    Ok(())
}

/// Samples the unduloid of the chord over `[v0, v1]` on a Chebyshev-spaced
/// volume grid. Row `0` is `(0, quantile(v1), v1)`; the final row lands on
/// `(half_period, quantile(v0), v0)` with `half_period` the accumulated
/// crossing time, so the endpoint identities hold exactly by construction.
pub fn shape(p: &BaseProfile, v0: f64, v1: f64, n_samples: usize) -> Result<UnduloidShape> {
    check_samples("shape", n_samples)?;
    if v1 - v0 < DEGENERATE_WIDTH {
        return Err(UnduloidError::Domain {
            func: "shape",
            arg: "v1 - v0",
            value: v1 - v0,
            domain: "[1e-8, 1] (narrower spans have no resolvable graph)",
        });
    }
    let ch = chord(p, v0, v1)?;
    let d = bobkov_density(p);
    let eng = Engine::new(p, &d, &ch)?;

    let n = n_samples;
    let last = n - 1;
    let mut vs = vec![0.0; n];
    vs[0] = v1;
    vs[last] = v0;
    for (k, v) in vs.iter_mut().enumerate().take(last).skip(1) {
        *v = v0 + (v1 - v0) * 0.5 * (1.0 + (PI * k as f64 / last as f64).cos());
    }
    if vs.windows(2).any(|w| w[0] <= w[1]) {
        return Err(UnduloidError::Domain {
            func: "shape",
            arg: "n_samples",
            value: n as f64,
            domain: "few enough to keep the volume grid strictly decreasing",
        });
    }
    let ss: Vec<f64> = vs.iter().map(|&v| d.quantile(v)).collect();
    let mut samples = Vec::with_capacity(n);
    samples.push((0.0, ss[0], vs[0]));
    let mut t = 0.0;
    for k in 1..n {
        t += eng.time_slice(ss[k], ss[k - 1]);
        samples.push((t, ss[k], vs[k]));
    }
    let kind = if v0 == 0.0 {
        ShapeKind::OneSidedBottom
    } else if v1 == 1.0 {
        ShapeKind::OneSidedTop
    } else {
        ShapeKind::TwoSided
    };
    Ok(UnduloidShape { samples, chord: ch, half_period: t, kind })
}
