//! Direct-search minimizer sanity: on slabs where the optimal competitor
//! is known in closed form, the search must land within one percent.

use isoprofile::{gaussian_profile, torus2_profile};
use unduloid::{functional_oracle, UnduloidError};

#[test]
fn short_gaussian_slab_prefers_the_horizontal_plane() {
    let p = gaussian_profile();
    let want = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let got = functional_oracle(&p, 2.0, 0.5, 200).unwrap();
    assert!((got - want).abs() <= 0.01 * want, "oracle {got} vs {want}");
}

#[test]
fn narrow_torus_band_costs_its_flat_value() {
    let p = torus2_profile();
    let got = functional_oracle(&p, 1.0, 0.5, 200).unwrap();
    assert!((got - 1.0).abs() <= 0.01, "oracle {got} vs 1");
}

#[test]
fn long_gaussian_slab_prefers_the_vertical_wall() {
    let p = gaussian_profile();
    let got = functional_oracle(&p, 4.0, 0.5, 200).unwrap();
    assert!((got - 0.25).abs() <= 0.01 * 0.25, "oracle {got} vs 0.25");
}

#[test]
fn oracle_domain_gates() {
    let p = gaussian_profile();
    assert!(matches!(
        functional_oracle(&p, 2.0, 0.0, 200),
        Err(UnduloidError::Domain { .. })
    ));
    assert!(matches!(
        functional_oracle(&p, 0.0, 0.5, 200),
        Err(UnduloidError::Domain { .. })
    ));
    assert!(matches!(
        functional_oracle(&p, 2.0, 0.5, 49),
        Err(UnduloidError::Domain { .. })
    ));
}
