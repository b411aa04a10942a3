//! Brute-force discrete minimization oracle for slab profile values.

use crate::{Result, UnduloidError};
use isoprofile::BaseProfile;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const MAX_SWEEPS: usize = 2000;
const STRIDES: [usize; 6] = [1, 2, 4, 8, 16, 32];
const STEP_START: f64 = 0.05;
const STEP_FLOOR: f64 = 1e-7;
const IMPROVE_GATE: f64 = -1e-15;
const MONO_SLACK: f64 = 1e-15;

/// Best-effort upper bound on the slab isoperimetric value at mean volume
/// `vbar` in a slab of width `t_span`.
///
/// Discretizes a monotone non-increasing volume function on `n_grid` nodes,
/// scores it by `(1/T) sum sqrt(dv^2 + I0(mid)^2 dt^2)`, and runs a projected
/// pairwise local search (mass transfers between two nodes preserve the
/// trapezoid mean) from five starts: the horizontal line, a vertical step,
/// and three seeded random monotone functions. Fixed seeds and iteration
/// caps make the result bitwise reproducible.
pub fn functional_oracle(p: &BaseProfile, t_span: f64, vbar: f64, n_grid: usize) -> Result<f64> {
    if !(vbar > 0.0 && vbar < 1.0) || !vbar.is_finite() {
        return Err(UnduloidError::Domain {
            func: "functional_oracle",
            arg: "vbar",
            value: vbar,
            domain: "(0, 1)",
        });
    }
    if !(t_span.is_finite() && t_span > 0.0) {
        return Err(UnduloidError::Domain {
            func: "functional_oracle",
            arg: "t_span",
            value: t_span,
            domain: "(0, inf)",
        });
    }
    if n_grid < 50 {
        return Err(UnduloidError::Domain {
            func: "functional_oracle",
            arg: "n_grid",
            value: n_grid as f64,
            domain: "[50, inf)",
        });
    }

    let n = n_grid;
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(5);
    starts.push(vec![vbar; n]);
    let mut step: Vec<f64> = (0..n)
        .map(|i| {
            let t = t_span * i as f64 / (n - 1) as f64;
            if t < vbar * t_span {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    project_mean(&mut step, vbar);
    starts.push(step);
    for seed in [1u64, 2, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r: Vec<f64> = (0..n).map(|_| uniform(&mut rng)).collect();
        r.sort_by(|a, b| b.total_cmp(a));
        project_mean(&mut r, vbar);
        starts.push(r);
    }

    let mut best = f64::INFINITY;
    for mut v in starts {
        let e = local_search(p, &mut v, t_span);
        best = best.min(e);
    }
    Ok(best)
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// End-weighted (trapezoid) node weight.
fn node_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n - 1 {
        0.5
    } else {
        1.0
    }
}

/// Shift-and-clip projection onto the trapezoid-mean constraint; preserves
/// monotonicity because the shift is common and the clip is monotone.
fn project_mean(v: &mut [f64], vbar: f64) {
    let n = v.len();
    let wsum: f64 = (n - 1) as f64;
    let mean = |shift: f64| -> f64 {
        v.iter()
            .enumerate()
            .map(|(i, &x)| node_weight(i, n) * (x + shift).clamp(0.0, 1.0))
            .sum::<f64>()
            / wsum
    };
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mean(mid) < vbar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let shift = 0.5 * (lo + hi);
    for x in v.iter_mut() {
        *x = (*x + shift).clamp(0.0, 1.0);
    }
}

fn seg_cost(p: &BaseProfile, va: f64, vb: f64, dt: f64) -> f64 {
    let dv = va - vb;
    let i0 = p.eval(0.5 * (va + vb));
    (dv * dv + i0 * i0 * dt * dt).sqrt()
}

fn local_search(p: &BaseProfile, v: &mut [f64], t_span: f64) -> f64 {
    let n = v.len();
    let dt = t_span / (n - 1) as f64;
    let mut segs: Vec<f64> = (0..n - 1).map(|k| seg_cost(p, v[k], v[k + 1], dt)).collect();
    let mut step = STEP_START;
    for _ in 0..MAX_SWEEPS {
        let mut improved = false;
        for stride in STRIDES {
            if stride >= n {
                continue;
            }
            for i in 0..n - stride {
                let j = i + stride;
                for sgn in [1.0f64, -1.0] {
                    let a = sgn * step;
                    let b = -a * node_weight(i, n) / node_weight(j, n);
                    let vi = v[i] + a;
                    let vj = v[j] + b;
                    if !(0.0..=1.0).contains(&vi) || !(0.0..=1.0).contains(&vj) {
                        continue;
                    }
                    // Monotone non-increasing, with updated neighbors where
                    // the pair is adjacent.
                    if i > 0 && v[i - 1] < vi - MONO_SLACK {
                        continue;
                    }
                    let below_i = if i + 1 == j { vj } else { v[i + 1] };
                    if vi < below_i - MONO_SLACK {
                        continue;
                    }
                    let above_j = if j - 1 == i { vi } else { v[j - 1] };
                    if above_j < vj - MONO_SLACK {
                        continue;
                    }
                    if j + 1 < n && vj < v[j + 1] - MONO_SLACK {
                        continue;
                    }
                    // Segments whose cost the move touches, deduplicated.
                    let mut touched = [usize::MAX; 4];
                    let mut m = 0;
                    for k in [i.wrapping_sub(1), i, j - 1, j] {
                        if k <= n - 2 && !touched[..m].contains(&k) {
                            touched[m] = k;
                            m += 1;
                        }
                    }
                    let mut old = 0.0;
                    let mut new = 0.0;
                    for &k in &touched[..m] {
                        old += segs[k];
                        let va = if k == i { vi } else if k == j { vj } else { v[k] };
                        let vb = if k + 1 == i {
                            vi
                        } else if k + 1 == j {
                            vj
                        } else {
                            v[k + 1]
                        };
                        new += seg_cost(p, va, vb, dt);
                    }
                    if (new - old) / t_span < IMPROVE_GATE {
                        v[i] = vi;
                        v[j] = vj;
                        for &k in &touched[..m] {
                            segs[k] = seg_cost(p, v[k], v[k + 1], dt);
                        }
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < STEP_FLOOR {
                break;
            }
        }
    }
    (0..n - 1).map(|k| seg_cost(p, v[k], v[k + 1], dt)).sum::<f64>() / t_span
}
