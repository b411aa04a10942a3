//! Golden-section minimization on a bracket.

use crate::{check_domain, Result};

/// Bracket shrink factor per probe, (√5 − 1)/2.
const INV_GOLD: f64 = 0.618_033_988_749_894_9;

/// Minimizes `f` over `[a, b]` by golden-section search and returns the best
/// probe `(x, f(x))`.
///
/// The bracket shrinks by the golden ratio each step until its width drops
/// below `xtol`, so the call always terminates. On a unimodal `f` the result
/// is the global minimum of the bracket to within `xtol`; otherwise it is the
/// best point the fixed probe sequence visited. The search is derivative-free
/// and never evaluates `f` outside `[a, b]`.
pub fn golden_min<F>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    check_domain("golden_min", "a", a, a.is_finite() && b.is_finite() && a < b, "a < b, finite")?;
    check_domain("golden_min", "xtol", xtol, xtol > 0.0 && xtol.is_finite(), "(0, inf)")?;

    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_GOLD * (hi - lo);
    let mut x2 = lo + INV_GOLD * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    // Track the best probe seen; with a unimodal f it coincides with the
    // final bracket, but multimodal inputs keep whatever won outright.
    let (mut best_x, mut best_f) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLD * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLD * (hi - lo);
            f2 = f(x2);
        }
        let (x, fx) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if fx < best_f {
            best_x = x;
            best_f = fx;
        }
        // Rounding can pin the probes once the bracket nears the floating
        // point grid; the width then stops contracting, so bail out.
        if x2 - x1 <= 0.0 {
            break;
        }
    }
    Ok((best_x, best_f))
}
