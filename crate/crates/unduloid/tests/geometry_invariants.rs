//! Structural identities: circular caps over the flat torus density,
//! reflection symmetry, tangency of the traced graph, and the closed-form
//! area bound on random chords.

use approx::assert_abs_diff_eq;
use isoprofile::{bobkov_density, gaussian_profile, torus2_profile};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::f64::consts::PI;
use unduloid::{area, area_lower_bound, chord, half_period, shape, volume, ShapeKind};

/// One-sided chords of the flat unit density trace circles of radius
/// `2 xi` where the enclosed volume is `pi xi^2`.
#[test]
fn torus_cap_chords_trace_quarter_circles() {
    let p = torus2_profile();
    for xi in [0.1_f64, 0.2, 0.25] {
        let v1 = PI * xi * xi;
        let t = half_period(&p, 0.0, v1).unwrap();
        assert_abs_diff_eq!(t, 2.0 * xi, epsilon = 1e-8);
    }
    let xi = 0.25;
    let v1 = PI * xi * xi;
    assert_abs_diff_eq!(volume(&p, 0.5, 0.0, v1).unwrap(), PI / 24.0, epsilon = 1e-8);
    assert_abs_diff_eq!(area(&p, 0.5, 0.0, v1).unwrap(), PI / 4.0, epsilon = 1e-8);
}

#[test]
fn one_sided_shape_lies_on_a_circle_and_meets_the_wall_steeply() {
    let p = torus2_profile();
    let d = bobkov_density(&p);
    let xi = 0.25_f64;
    let r = 2.0 * xi;
    let sh = shape(&p, 0.0, PI * xi * xi, 501).unwrap();
    assert_eq!(sh.kind, ShapeKind::OneSidedBottom);
    let rad = d.support_radius();
    for &(t, s, _) in &sh.samples {
        let height = s + rad;
        let dist = (height * height + t * t).sqrt();
        assert!((dist - r).abs() <= 1e-6, "({t}, {s}) off circle: {dist}");
    }
    let n = sh.samples.len();
    assert_eq!(sh.samples[0].0, 0.0);
    assert_eq!(sh.samples[n - 1].0, sh.half_period);
    let (t1, s1, _) = sh.samples[n - 2];
    let (t2, s2, _) = sh.samples[n - 1];
    assert!((s2 - s1) / (t2 - t1) < -100.0, "graph should dive near the wall");
}

#[test]
fn symmetric_gaussian_shape_is_odd_about_its_midpoint() {
    let p = gaussian_profile();
    let sh = shape(&p, 0.3, 0.7, 801).unwrap();
    let n = sh.samples.len();
    let tt = sh.half_period;
    for k in 0..n {
        let (t, s, v) = sh.samples[k];
        let (tm, sm, vm) = sh.samples[n - 1 - k];
        assert!((t + tm - tt).abs() <= 1e-8, "t symmetry broken at {k}");
        assert!((s + sm).abs() <= 1e-9, "s symmetry broken at {k}");
        assert!((v + vm - 1.0).abs() <= 1e-9, "v symmetry broken at {k}");
    }
}

/// Reflecting the chord through the half-volume point preserves the
/// half-period and the weighted area; the two volumes fill the slab.
#[test]
fn reflected_chords_complement_each_other() {
    let cases: [(isoprofile::BaseProfile, f64, f64); 2] = [
        (torus2_profile(), 0.05, 0.6),
        (gaussian_profile(), 0.2, 0.55),
    ];
    for (p, v0, v1) in cases {
        let (r0, r1) = (1.0 - v1, 1.0 - v0);
        let t = half_period(&p, v0, v1).unwrap();
        let tr = half_period(&p, r0, r1).unwrap();
        assert!((t - tr).abs() <= 1e-9, "period changed under reflection: {t} vs {tr}");
        let a = area(&p, t, v0, v1).unwrap();
        let ar = area(&p, t, r0, r1).unwrap();
        assert!((a - ar).abs() <= 1e-9, "area changed under reflection: {a} vs {ar}");
        let v = volume(&p, t, v0, v1).unwrap();
        let vr = volume(&p, t, r0, r1).unwrap();
        assert!((v + vr - 1.0).abs() <= 1e-9, "volumes do not fill the slab: {v} + {vr}");
    }
}

/// The traced volume obeys dv/dt = -I0(v) sqrt((I0/ell)^2 - 1) between
/// the turning points; check a three-point finite difference against it.
#[test]
fn sampled_descent_rate_matches_first_integral() {
    let cases: [(isoprofile::BaseProfile, f64, f64); 2] = [
        (gaussian_profile(), 0.25, 0.8),
        (torus2_profile(), 0.02, 0.28),
    ];
    for (p, v0, v1) in cases {
        let ch = chord(&p, v0, v1).unwrap();
        let sh = shape(&p, v0, v1, 2000).unwrap();
        let n = sh.samples.len();
        for i in 1..n - 1 {
            let (tm, _, vm) = sh.samples[i - 1];
            let (t0, _, vv) = sh.samples[i];
            let (tp, _, vp) = sh.samples[i + 1];
            let (h1, h2) = (t0 - tm, tp - t0);
            let fd = -h2 / (h1 * (h1 + h2)) * vm
                + (h2 - h1) / (h1 * h2) * vv
                + h1 / (h2 * (h1 + h2)) * vp;
            let i0 = p.eval(vv);
            let ratio = i0 / ch.eval(vv);
            let expected = -(i0 * (ratio * ratio - 1.0).sqrt());
            assert!(
                (fd - expected).abs() <= 1e-4 * expected.abs(),
                "sample {i}: fd {fd} vs {expected}"
            );
        }
    }
}

#[test]
fn volume_matches_two_dimensional_decomposition() {
    let p = gaussian_profile();
    let d = bobkov_density(&p);
    let (v0, v1) = (0.3, 0.7);
    let t = half_period(&p, v0, v1).unwrap();
    let vol = volume(&p, t, v0, v1).unwrap();
    let sh = shape(&p, v0, v1, 4001).unwrap();
    // Mass under the graph, column by column: (1/T) int Phi(f(t)) dt.
    let mut acc = 0.0;
    for win in sh.samples.windows(2) {
        let (ta, sa, _) = win[0];
        let (tb, sb, _) = win[1];
        acc += 0.5 * (d.cdf(sa) + d.cdf(sb)) * (tb - ta);
    }
    let v2d = acc / sh.half_period;
    assert!((v2d - vol).abs() <= 1e-6, "trapezoid {v2d} vs engine {vol}");
}

#[test]
fn area_dominates_its_closed_form_bound() {
    let p = gaussian_profile();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut unif = || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    for _ in 0..20 {
        let v0 = 0.02 + 0.43 * unif();
        let v1 = (v0 + 0.05) + (0.92 - v0) * unif();
        let t = half_period(&p, v0, v1).unwrap();
        let a = area(&p, t, v0, v1).unwrap();
        let v = volume(&p, t, v0, v1).unwrap();
        let ch = chord(&p, v0, v1).unwrap();
        let bound = area_lower_bound(ch.eval(v), v0, v1, t);
        assert!(a >= bound - 1e-9, "area {a} below bound {bound} at ({v0}, {v1})");
    }
}
