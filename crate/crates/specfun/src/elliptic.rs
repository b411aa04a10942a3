//! Incomplete elliptic integrals of the first and second kinds via Carlson
//! symmetric forms evaluated with the duplication algorithm.

use crate::{check_domain, NumError, Result};

// Duplication stops once the spread is below this; the fifth-order tail
// expansion then contributes O(tol^6) relative error.
const DUP_TOL: f64 = 1e-4;
const MAX_DUP: usize = 100;

/// Carlson R_F(x, y, z); arguments nonnegative, at most one of them zero.
fn carlson_rf(x0: f64, y0: f64, z0: f64) -> f64 {
    let (mut x, mut y, mut z) = (x0, y0, z0);
    let mut ave = 0.0;
    let (mut dx, mut dy, mut dz) = (0.0, 0.0, 0.0);
    for _ in 0..MAX_DUP {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        ave = (x + y + z) / 3.0;
        dx = (ave - x) / ave;
        dy = (ave - y) / ave;
        dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < DUP_TOL {
            break;
        }
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / ave.sqrt()
}

/// Carlson R_D(x, y, z) = R_J(x, y, z, z); z must be positive.
fn carlson_rd(x0: f64, y0: f64, z0: f64) -> f64 {
    let (mut x, mut y, mut z) = (x0, y0, z0);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let mut ave = 0.0;
    let (mut dx, mut dy, mut dz) = (0.0, 0.0, 0.0);
    for _ in 0..MAX_DUP {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        ave = 0.2 * (x + y + 3.0 * z);
        dx = (ave - x) / ave;
        dy = (ave - y) / ave;
        dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < DUP_TOL {
            break;
        }
    }
    let ea = dx * dy;
    let eb = dz * dz;
    let ec = ea - eb;
    let ed = ea - 6.0 * eb;
    let ee = ed + ec + ec;
    3.0 * sum
        + fac
            * (1.0
                + ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (9.0 / 52.0) * dz * ee)
                + dz * (ee / 6.0 + dz * (-(9.0 / 22.0) * ec + dz * (3.0 / 26.0) * ea)))
            / (ave * ave.sqrt())
}

/// Incomplete elliptic integral of the first kind,
/// F(x, m) = ∫₀ˣ dt / √((1−t²)(1−mt²)), with `x = sin φ` and parameter `m`.
///
/// `ellip_f(1, m)` is the complete integral K(m). The corner (1, 1) is a
/// logarithmic divergence and reports an error.
pub fn ellip_f(x: f64, m: f64) -> Result<f64> {
    check_domain("ellip_f", "x", x, (0.0..=1.0).contains(&x), "[0, 1]")?;
    check_domain("ellip_f", "m", m, (0.0..=1.0).contains(&m), "[0, 1]")?;
    if x == 1.0 && m == 1.0 {
        return Err(NumError::Divergent { func: "ellip_f" });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // 1 − x² as (1−x)(1+x) keeps the x → 1 endpoint accurate.
    let cc = (1.0 - x) * (1.0 + x);
    let q = 1.0 - m * x * x;
    Ok(x * carlson_rf(cc, q, 1.0))
}

/// Incomplete elliptic integral of the second kind,
/// E(x, m) = ∫₀ˣ √(1−mt²)/√(1−t²) dt, with `x = sin φ` and parameter `m`.
pub fn ellip_e(x: f64, m: f64) -> Result<f64> {
    check_domain("ellip_e", "x", x, (0.0..=1.0).contains(&x), "[0, 1]")?;
    check_domain("ellip_e", "m", m, (0.0..=1.0).contains(&m), "[0, 1]")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 && m == 1.0 {
        // Integrand collapses to 1.
        return Ok(1.0);
    }
    let cc = (1.0 - x) * (1.0 + x);
    let q = 1.0 - m * x * x;
    Ok(x * carlson_rf(cc, q, 1.0) - (m / 3.0) * x.powi(3) * carlson_rd(cc, q, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_kind_reduces_to_arcsin_at_m_zero() {
        assert_relative_eq!(ellip_f(0.5, 0.0).unwrap(), 0.5f64.asin(), max_relative = 1e-14);
        assert_relative_eq!(
            ellip_f(1.0, 0.0).unwrap(),
            std::f64::consts::FRAC_PI_2,
            max_relative = 1e-14
        );
    }

    #[test]
    fn complete_first_kind_spot_values() {
        // Reference values for K(m) and F(sin φ | m).
        assert_relative_eq!(ellip_f(1.0, 0.5).unwrap(), 1.854_074_677_301_371_9, max_relative = 1e-12);
        assert_relative_eq!(ellip_f(0.5, 0.25).unwrap(), 0.529_428_627_051_905_85, max_relative = 1e-12);
        assert_relative_eq!(ellip_f(0.3, 0.8).unwrap(), 0.308_520_884_615_626_27, max_relative = 1e-12);
        assert_relative_eq!(ellip_f(0.9, 0.9).unwrap(), 1.402_213_798_787_132_1, max_relative = 1e-12);
        assert_relative_eq!(ellip_f(1.0, 0.99).unwrap(), 3.695_637_362_989_875_1, max_relative = 1e-12);
    }

    #[test]
    fn second_kind_spot_values() {
        assert_relative_eq!(ellip_e(1.0, 0.0).unwrap(), std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
        assert_relative_eq!(ellip_e(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(ellip_e(1.0, 0.5).unwrap(), 1.350_643_881_047_675_5, max_relative = 1e-12);
        assert_relative_eq!(ellip_e(0.7, 0.3).unwrap(), 0.754_234_428_450_029_86, max_relative = 1e-12);
        assert_relative_eq!(ellip_e(0.25, 0.75).unwrap(), 0.250_674_938_524_741_49, max_relative = 1e-12);
        assert_relative_eq!(ellip_e(1.0, 0.99).unwrap(), 1.015_993_545_025_224, max_relative = 1e-12);
        assert_relative_eq!(ellip_e(0.9, 1.0).unwrap(), 0.9, max_relative = 1e-12);
    }

    #[test]
    fn domain_and_divergence_errors() {
        assert!(ellip_f(1.2, 0.5).is_err());
        assert!(ellip_f(0.5, 1.5).is_err());
        assert!(matches!(ellip_f(1.0, 1.0), Err(NumError::Divergent { .. })));
        assert!(ellip_e(-0.1, 0.5).is_err());
    }

    #[test]
    fn monotone_in_x() {
        for &m in &[0.0, 0.3, 0.7, 0.95] {
            let mut prev_f = 0.0;
            let mut prev_e = 0.0;
            for i in 1..=20 {
                let x = i as f64 / 20.0;
                let f = ellip_f(x, m).unwrap();
                let e = ellip_e(x, m).unwrap();
                assert!(f > prev_f, "F not increasing at x={x}, m={m}");
                assert!(e > prev_e, "E not increasing at x={x}, m={m}");
                prev_f = f;
                prev_e = e;
            }
        }
    }
}
