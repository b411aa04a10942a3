//! Digamma and log-gamma for positive real arguments.

use crate::{check_domain, Result};

/// Digamma ψ(x) for x > 0: upward recurrence into the asymptotic regime,
/// then the Bernoulli series through x⁻¹⁴. Relative accuracy ~1e-14.
pub fn digamma(x: f64) -> Result<f64> {
    check_domain("digamma", "x", x, x > 0.0, "(0, inf)")?;
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let series = z
        * (1.0 / 12.0
            - z * (1.0 / 120.0
                - z * (1.0 / 252.0
                    - z * (1.0 / 240.0
                        - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
    Ok(acc + x.ln() - 0.5 / x - series)
}

// Lanczos (g = 7, 9 terms).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Γ(x) for x > 0 via the Lanczos approximation.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_domain("ln_gamma", "x", x, x > 0.0, "(0, inf)")?;
    if x < 0.5 {
        // Recurrence Γ(x) = Γ(x+1)/x keeps the approximation in its sweet spot.
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + 7.5;
    const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;
    Ok(HALF_LN_2PI + (x + 0.5) * t.ln() - t + a.ln())
}
