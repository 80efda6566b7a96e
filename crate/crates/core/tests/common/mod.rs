//! Oracles written from the model equations, independent of the library's
//! solver code paths.

#![allow(dead_code)]

use std::time::{Duration, Instant};

/// Automation-regime prices from the two first-order conditions on `K1`
/// and on the effective-labor aggregate, solved directly for `r`.
pub fn oracle_prices(a: f64, b: f64, alpha: f64) -> (f64, f64) {
    let r = alpha * ((1.0 - alpha) * b / alpha).powf(1.0 - alpha);
    (r * a / b, r)
}

/// Output, wage and return at labor `l` and capital `k`: the automation
/// regime when it leaves `K2 >= 0`, Cobb-Douglas otherwise.
pub fn oracle_allocation(k: f64, l: f64, a: f64, b: f64, alpha: f64) -> (f64, f64, f64) {
    let (w, r) = oracle_prices(a, b, alpha);
    let y = w * l + r * k;
    if k - alpha * y / r >= 0.0 {
        return (y, w, r);
    }
    let y = k.powf(alpha) * (a * l).powf(1.0 - alpha);
    (y, (1.0 - alpha) * y / l, alpha * y / k)
}

/// CAP transfer that clears the supply equation at labor `l`, found by
/// bisection on the tax rate.
pub fn oracle_cap_transfer(l: f64, y: f64, w: f64, q: f64, n: f64, delta: f64) -> (f64, f64) {
    let excess = |t: f64| n - delta * (t * y / n) / (w * (1.0 - t) * q) - l;
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-15);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    (t * y / n, t)
}

/// Damped fixed point on the tax rate for a pinned transfer `g` under fixed
/// prices: supply gives `L`, output `wL + rK`, and the budget gives `t`.
pub fn fixed_point_tax(g: f64, w: f64, r: f64, k: f64, q: f64, n: f64, delta: f64) -> Option<f64> {
    let mut t = 0.3;
    for _ in 0..100_000 {
        let l = n - delta * g / (w * (1.0 - t) * q);
        let next = n * g / (w * l + r * k);
        if !next.is_finite() || !(0.0..1.0).contains(&next) {
            return None;
        }
        let damped = 0.5 * t + 0.5 * next;
        if (damped - t).abs() < 1e-15 {
            return Some(damped);
        }
        t = damped;
    }
    None
}

/// True when `value` shows as `printed` at `decimals` places.
pub fn at_printed(value: f64, printed: f64, decimals: u32) -> bool {
    (value - printed).abs() <= 0.5 * 10f64.powi(-(decimals as i32)) + 1e-12
}

/// Fastest of `reps` timed calls.
pub fn best_time<T>(reps: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed()
        })
        .min()
        .expect("reps > 0")
}
