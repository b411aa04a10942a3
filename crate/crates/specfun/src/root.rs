//! Bracketed scalar root finding: bisection safeguarded with inverse
//! quadratic interpolation (Brent's method).

use crate::{NumError, Result, Tolerances};

/// Finds a root of `f` inside the bracket `[lo, hi]`.
///
/// Requires a sign change (or an exact zero) at the bracket ends; the result
/// is deterministic and invariant under swapping `lo` and `hi`. Succeeds
/// when the bracket shrinks below `abs_tol` (plus roundoff slack) or
/// |f| ≤ `abs_tol`.
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: &Tolerances) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let prod = fa * fb;
    if prod >= 0.0 || prod.is_nan() {
        return Err(NumError::NoBracket { lo: a, hi: b, flo: fa, fhi: fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..tol.max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol.abs_tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 || fb.abs() <= tol.abs_tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic (or secant) interpolation.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let r1 = fa / fc;
                let r2 = fb / fc;
                p = s * (2.0 * xm * r1 * (r1 - r2) - (b - a) * (r2 - 1.0));
                q = (r1 - 1.0) * (r2 - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += if xm >= 0.0 { tol1 } else { -tol1 };
        }
        fb = f(b);
    }
    Err(NumError::NonConvergent { reason: "root bracket did not shrink within max_iter" })
}
