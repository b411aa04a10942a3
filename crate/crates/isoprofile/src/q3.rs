use crate::{ProfileError, Result};
use std::f64::consts::PI;

/// Conjectured isoperimetric profile of the box `[0, beta] x [0,1]^2`.
///
/// For `v` up to `1/2` the profile is the minimum of three candidate
/// interfaces: a spherical cap centred at a corner with area
/// `(9*pi/(2*beta))^(1/3) * v^(2/3)`, a quarter-cylinder around a short edge
/// with area `sqrt(pi*v)`, and a flat plane of area `1`. Larger `v` folds
/// back by symmetry. The branch crossovers sit at `v = 4*pi/81 * beta^2` and
/// `v = 1/pi`.
///
/// Fails unless `0 < beta <= 1` and `0 <= v <= 1`.
pub fn conjectured_profile_q3(beta: f64, v: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(ProfileError::Domain {
            func: "conjectured_profile_q3",
            arg: "beta",
            value: beta,
            domain: "(0, 1]",
        });
    }
    if !(0.0..=1.0).contains(&v) {
        return Err(ProfileError::Domain {
            func: "conjectured_profile_q3",
            arg: "v",
            value: v,
            domain: "[0, 1]",
        });
    }
    let w = v.min(1.0 - v);
    if w == 0.0 {
        return Ok(0.0);
    }
    let sphere = (4.5 * PI / beta).cbrt() * w.powf(2.0 / 3.0);
    let cylinder = (PI * w).sqrt();
    Ok(sphere.min(cylinder).min(1.0))
}
