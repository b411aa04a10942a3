//! Gauss-Legendre nodes and weights on [-1, 1].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared nodes and weights of one rule.
pub type Rule = Arc<(Vec<f64>, Vec<f64>)>;

/// Nodes (ascending) and weights of the `n`-point Gauss-Legendre rule on
/// [-1, 1].  Rules are built once per order and cached; the returned value is
/// cheap to clone and safe to share across threads.
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let rule = Arc::new(build(n));
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn build(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "gauss_legendre: order must be at least 2");
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi-style initial guess, then Newton; roots come out descending
        // in i, so the i-th guess is the (n-1-i)-th ascending node.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (p, d) = legendre_pair(n, x);
                dp = d;
                x -= p / d;
                break;
            }
        }
        if n % 2 == 1 && i == half - 1 {
            x = 0.0;
            dp = legendre_pair(n, 0.0).1;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[n - 1 - i] = x;
        xs[i] = -x;
        ws[n - 1 - i] = w;
        ws[i] = w;
    }
    (xs, ws)
}

#[cfg(test)]
mod tests {
    use super::gauss_legendre;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [2usize, 7, 64, 128, 4096] {
            let rule = gauss_legendre(n);
            let total: f64 = rule.1.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}: weight sum {total}");
        }
    }

    #[test]
    fn nodes_are_symmetric_and_sorted() {
        for n in [5usize, 64, 129] {
            let rule = gauss_legendre(n);
            let xs = &rule.0;
            for i in 0..n {
                assert_eq!(xs[i], -xs[n - 1 - i]);
            }
            assert!(xs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn integrates_high_degree_polynomial_exactly() {
        // A 64-point rule is exact through degree 127.
        let rule = gauss_legendre(64);
        let val: f64 = rule.0.iter().zip(&rule.1).map(|(&x, &w)| w * x.powi(100)).sum();
        assert!((val - 2.0 / 101.0).abs() < 1e-15, "got {val}");
    }

    #[test]
    fn integrates_exponential() {
        let rule = gauss_legendre(20);
        let val: f64 = rule.0.iter().zip(&rule.1).map(|(&x, &w)| w * x.exp()).sum();
        let exact = std::f64::consts::E - (-1.0f64).exp();
        assert!((val - exact).abs() < 1e-14, "got {val} want {exact}");
    }
}
