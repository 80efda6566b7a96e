//! Financing of the per-person transfer `G` under the two regimes.
//!
//! CAP taxes all income at `t` (`nG = tY`); MS pays out the return on
//! state-owned capital and taxes wages at `t_w` (`nG = rK + t_w wL`). In both,
//! labor supply is `L = n - δG / (w (1 - tax) Q)`.

use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use crate::error::{Error, Result};

/// Transfer level and the tax rate that finances it. `ubi` and `se` are the
/// cash and in-kind halves of `g`; they are reported only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferSolution {
    pub g: f64,
    pub tax: f64,
    pub ubi: f64,
    pub se: f64,
}

impl TransferSolution {
    pub fn new(g: f64, tax: f64) -> Self {
        let half = 0.5 * g;
        TransferSolution {
            g,
            tax,
            ubi: half,
            se: half,
        }
    }
}

fn check_supply(l: f64, params: &ModelParams) -> Result<()> {
    if !(l >= 0.0 && l <= params.n) {
        return Err(Error::InvalidSupply {
            labor: l,
            population: params.n,
        });
    }
    Ok(())
}

/// CAP transfer that makes supply equal `l`: with
/// `c = (n - L) n w Q / (δ Y)`, `t = c / (1 + c)` and `G = tY / n`.
pub fn solve_cap_transfer(l: f64, y: f64, w: f64, q: f64, params: &ModelParams) -> Result<TransferSolution> {
    check_supply(l, params)?;
    if !(y > 0.0 && w > 0.0) {
        return Err(Error::InvalidParameter {
            name: "Y, w",
            reason: format!("need positive output and wage, got Y = {y}, w = {w}"),
        });
    }
    let n = params.n;
    let c = (n - l) * n * w * q / (params.delta * y);
    let t = c / (1.0 + c);
    Ok(TransferSolution::new(t * y / n, t))
}

/// MS transfer for a given `l`. Substituting the supply equation into the
/// budget gives `1 - t_w = Y / (wL + n (n - L) w Q / δ)`, linear and unique.
pub fn solve_ms_transfer(
    l: f64,
    y: f64,
    w: f64,
    r: f64,
    k: f64,
    q: f64,
    params: &ModelParams,
) -> Result<TransferSolution> {
    check_supply(l, params)?;
    let n = params.n;
    if l == 0.0 {
        return Ok(TransferSolution::new(r * k / n, 0.0));
    }
    let denom = w * l + n * (n - l) * w * q / params.delta;
    let u = y / denom;
    let t_w = 1.0 - u;
    if !(0.0..1.0).contains(&t_w) {
        return Err(Error::InfeasibleMsBudget { required: t_w });
    }
    let g = (n - l) * w * u * q / params.delta;
    Ok(TransferSolution::new(g, t_w))
}

/// CAP transfer in the post-labor stage, where the tax rate is a policy choice.
pub fn post_labor_cap_transfer(y: f64, tax: f64, params: &ModelParams) -> Result<TransferSolution> {
    if !(0.0..=1.0).contains(&tax) {
        return Err(Error::InfeasibleTax { tax });
    }
    Ok(TransferSolution::new(tax * y / params.n, tax))
}

/// Roots in `u = 1 - t` of the pinned-`G` CAP system under reduced-form
/// prices: `C u² + (nG - C - D) u + D = 0`, `C = wn + rK`, `D = δG/Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinnedTransferRoots {
    /// Root kept: the larger `u`, i.e. the lower tax rate.
    pub kept: f64,
    /// Confiscatory far-side root.
    pub rejected: f64,
}

pub fn pinned_transfer_roots(
    g: f64,
    w: f64,
    r: f64,
    k: f64,
    q: f64,
    params: &ModelParams,
) -> Result<PinnedTransferRoots> {
    let n = params.n;
    let c = w * n + r * k;
    let d = params.delta * g / q;
    let b = n * g - c - d;
    let disc = b * b - 4.0 * c * d;
    if disc < 0.0 || b >= 0.0 {
        return Err(Error::InfeasibleTransfer { transfer: g });
    }
    let sq = disc.sqrt();
    // Both roots are positive only when b < 0; use the stable pairing.
    let big = (-b + sq) / (2.0 * c);
    let small = if big != 0.0 { d / (c * big) } else { 0.0 };
    if big > 1.0 {
        return Err(Error::InfeasibleTax { tax: 1.0 - big });
    }
    Ok(PinnedTransferRoots {
        kept: big,
        rejected: small,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams {
            alpha: 0.25,
            n: 100.0,
            s: 0.15,
            theta: 0.02,
            delta: 25.0,
            g_a: 0.01,
            g_b: 0.015,
            g_q: 0.005,
        }
    }

    #[test]
    fn cap_at_calibration() {
        let s = solve_cap_transfer(75.0, 100.0, 1.0, 1.0, &params()).unwrap();
        assert!((s.tax - 0.5).abs() < 1e-15);
        assert!((s.g - 0.5).abs() < 1e-15);
        assert_eq!(s.ubi, s.se);
        assert_eq!(s.ubi + s.se, s.g);
    }

    #[test]
    fn cap_full_employment_needs_no_transfer() {
        let s = solve_cap_transfer(100.0, 120.0, 1.1, 1.2, &params()).unwrap();
        assert_eq!(s.tax, 0.0);
        assert_eq!(s.g, 0.0);
    }

    #[test]
    fn cap_table1_decade_ten() {
        // c = 27 * 100 * 1.0627 * 1.0511 / (25 * 108.4), t = c / (1 + c)
        let s = solve_cap_transfer(73.0, 108.4, 1.0627, 1.0511, &params()).unwrap();
        let c: f64 = 27.0 * 100.0 * 1.0627 * 1.0511 / (25.0 * 108.4);
        assert!((s.tax - c / (1.0 + c)).abs() < 1e-15);
        assert!((s.tax - 0.527).abs() < 5e-4, "t = {}", s.tax);
        assert!((s.g - 0.571).abs() < 5e-4, "G = {}", s.g);
    }

    #[test]
    fn cap_rejects_excess_supply() {
        assert!(matches!(
            solve_cap_transfer(101.0, 100.0, 1.0, 1.0, &params()),
            Err(Error::InvalidSupply { .. })
        ));
    }

    #[test]
    fn cap_supply_round_trip() {
        let p = params();
        let (l, y, w, q) = (61.3, 131.0, 1.21, 1.16);
        let s = solve_cap_transfer(l, y, w, q, &p).unwrap();
        let back = p.n - p.delta * s.g / (w * (1.0 - s.tax) * q);
        assert!((back - l).abs() < 1e-9);
        assert!((p.n * s.g - s.tax * y).abs() < 1e-12);
    }

    #[test]
    fn ms_at_calibration_is_three_sevenths() {
        let s = solve_ms_transfer(75.0, 100.0, 1.0, 0.05, 500.0, 1.0, &params()).unwrap();
        assert!((s.tax - 3.0 / 7.0).abs() < 1e-15);
        assert!((s.g - 4.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn ms_without_labor_pays_out_capital_income() {
        let s = solve_ms_transfer(0.0, 65.0, 1.3, 0.13, 500.0, 1.2, &params()).unwrap();
        assert!((100.0 * s.g - 65.0).abs() < 1e-12);
        assert_eq!(s.tax, 0.0);
    }

    #[test]
    fn ms_full_employment_is_infeasible() {
        // budget would need a wage subsidy
        assert!(matches!(
            solve_ms_transfer(100.0, 125.0, 1.0, 0.05, 500.0, 1.0, &params()),
            Err(Error::InfeasibleMsBudget { .. })
        ));
    }

    #[test]
    fn ms_and_cap_share_disincentive_term() {
        let p = params();
        let (l, y, w, r, k, q) = (71.0, 118.2, 1.13, 0.0625, 605.0, 1.105);
        let cap = solve_cap_transfer(l, y, w, q, &p).unwrap();
        let ms = solve_ms_transfer(l, y, w, r, k, q, &p).unwrap();
        let lhs = cap.g / (1.0 - cap.tax);
        let rhs = ms.g / (1.0 - ms.tax);
        assert!((lhs - rhs).abs() / lhs < 1e-12);
        assert!(ms.g > cap.g && ms.tax < cap.tax);
        assert!(ms.g >= r * k / p.n);
    }

    #[test]
    fn pinned_transfer_quadratic_table2_period5() {
        // w = 1.0255, r = 0.0513, K = 525.1, Q = 1.0253, G = 0.5225
        let p = params();
        let roots = pinned_transfer_roots(0.5225, 1.0255, 0.0513, 525.1, 1.0253, &p).unwrap();
        assert!((1.0 - roots.kept - 0.503).abs() < 1e-3, "u1 = {}", roots.kept);
        assert!((roots.rejected - 0.198).abs() < 1e-3, "u2 = {}", roots.rejected);
        // coefficients by hand: 129.508 u² - 89.998 u + 12.740 = 0
        let (a, b, c) = (129.508, -89.998, 12.740);
        for u in [roots.kept, roots.rejected] {
            assert!((a * u * u + b * u + c).abs() < 2e-2);
        }
    }

    #[test]
    fn pinned_transfer_too_large_is_infeasible() {
        assert!(matches!(
            pinned_transfer_roots(5.0, 1.0, 0.05, 500.0, 1.0, &params()),
            Err(Error::InfeasibleTransfer { .. })
        ));
    }

    #[test]
    fn post_labor_tax_bounds() {
        let p = params();
        let s = post_labor_cap_transfer(160.0, 0.5, &p).unwrap();
        assert!((s.g - 0.8).abs() < 1e-15);
        assert!(post_labor_cap_transfer(160.0, 1.2, &p).is_err());
    }
}
