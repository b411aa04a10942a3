//! Structural invariants shared by every profile/density pair.

use isoprofile::{
    bobkov_density, conjectured_profile_q3, gaussian_profile, piecewise_profile, torus2_profile,
    BaseProfile, TORUS2_FLAT_HI, TORUS2_FLAT_LO,
};
use specfun::{integrate_endpoint_singular, Tolerances};
use std::f64::consts::{FRAC_1_PI, PI};

fn builtin_profiles() -> Vec<BaseProfile> {
    vec![
        torus2_profile(),
        gaussian_profile(),
        piecewise_profile("tent", &[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).unwrap(),
    ]
}

#[test]
fn profiles_are_symmetric() {
    for p in builtin_profiles() {
        for i in 1..100 {
            let v = i as f64 / 100.0;
            let diff = (p.eval(v) - p.eval(1.0 - v)).abs();
            assert!(diff <= 1e-14, "{}: asymmetry {diff} at v = {v}", p.name());
        }
    }
}

#[test]
fn profiles_are_concave_with_chords_below() {
    for p in builtin_profiles() {
        let grid: Vec<f64> = (0..=200).map(|i| i as f64 / 200.0).collect();
        for (ia, &a) in grid.iter().enumerate() {
            for &b in grid.iter().skip(ia + 2) {
                let mid = 0.5 * (a + b);
                let chord = 0.5 * (p.eval(a) + p.eval(b));
                assert!(
                    p.eval(mid) >= chord - 1e-12,
                    "{}: chord above profile on [{a}, {b}]",
                    p.name()
                );
            }
        }
    }
}

#[test]
fn quantile_cdf_round_trip() {
    for p in builtin_profiles() {
        let d = bobkov_density(&p);
        for i in 1..=99 {
            let v = i as f64 / 100.0;
            let round = d.cdf(d.quantile(v));
            assert!(
                (round - v).abs() <= 1e-9,
                "{}: round trip error {} at v = {v}",
                p.name(),
                round - v
            );
        }
    }
}

#[test]
fn density_equals_profile_through_cdf() {
    for p in builtin_profiles() {
        let d = bobkov_density(&p);
        let reach = d.support_radius().min(6.0);
        for i in 1..120 {
            let s = -reach + 2.0 * reach * i as f64 / 120.0;
            let diff = (p.eval(d.cdf(s)) - d.density(s)).abs();
            assert!(
                diff <= 1e-10,
                "{}: correspondence off by {diff} at s = {s}",
                p.name()
            );
        }
    }
}

#[test]
fn densities_are_even_and_log_concave() {
    for p in builtin_profiles() {
        let d = bobkov_density(&p);
        let reach = d.support_radius().min(3.0) * 0.98;
        let phi: Vec<f64> = (0..=120)
            .map(|i| d.density(-reach + 2.0 * reach * i as f64 / 120.0))
            .collect();
        for i in 0..=120 {
            let diff = (phi[i] - phi[120 - i]).abs();
            assert!(diff <= 1e-12, "{}: density asymmetry {diff}", p.name());
        }
        // Relative slack covers root-inversion noise on the numeric path.
        for w in phi.windows(3) {
            assert!(
                w[1] * w[1] >= w[0] * w[2] * (1.0 - 1e-9),
                "{}: log-concavity violated",
                p.name()
            );
        }
    }
}

#[test]
fn densities_integrate_to_one() {
    let tol = Tolerances {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_iter: 200,
    };
    for p in [torus2_profile(), gaussian_profile()] {
        let d = bobkov_density(&p);
        let reach = d.support_radius().min(40.0);
        let mut cuts = vec![-reach, 0.0, reach];
        cuts.extend(d.sing_points().iter().copied());
        cuts.sort_by(f64::total_cmp);
        let total: f64 = cuts
            .windows(2)
            .map(|w| {
                integrate_endpoint_singular(|s, _, _| d.density(s), w[0], w[1], &tol)
                    .unwrap()
                    .value
            })
            .sum();
        assert!(
            (total - 1.0).abs() <= 1e-10,
            "{}: density mass {total}",
            p.name()
        );
    }
}

#[test]
fn torus2_closed_form_anchors() {
    let p = torus2_profile();
    let d = bobkov_density(&p);
    assert_eq!(d.density(0.0), 1.0);
    assert_eq!(d.support_radius(), 0.5 + FRAC_1_PI);
    assert_eq!(p.singular_set(), vec![FRAC_1_PI, 1.0 - FRAC_1_PI]);
    assert_eq!(TORUS2_FLAT_LO, FRAC_1_PI);
    assert_eq!(TORUS2_FLAT_HI, 1.0 - FRAC_1_PI);
}

#[test]
fn gaussian_density_matches_closed_form() {
    let d = bobkov_density(&gaussian_profile());
    for &s in &[0.0f64, 1.0, 2.0] {
        let expect = (-0.5 * s * s).exp() / (2.0 * PI).sqrt();
        assert!((d.density(s) - expect).abs() <= 1e-9 * expect);
    }
    // The deepest representable volume fractions stay within the quantile cap.
    assert!(d.quantile(f64::MIN_POSITIVE) >= -40.0);
    assert!(d.quantile(1.0 - f64::EPSILON) <= 40.0);
}

#[test]
fn conjectured_q3_profile_is_concave() {
    for &beta in &[0.25, 0.5, 0.75, 1.0] {
        let vals: Vec<f64> = (0..=1000)
            .map(|i| conjectured_profile_q3(beta, i as f64 / 1000.0).unwrap())
            .collect();
        for w in vals.windows(3) {
            assert!(
                w[1] >= 0.5 * (w[0] + w[2]) - 1e-12,
                "midpoint concavity violated at beta = {beta}"
            );
        }
    }
}
