//! Single-period solution of the economy.
//!
//! Prices come from technology alone once automation is in use, so any one
//! of `L`, `Y`, `G` or `t` pins down the rest of the period. The functions
//! here take that pinned value and return the allocation, choosing between
//! the interior regime (`K2 > 0`), the corner regime (`K2 = 0`, Cobb-Douglas
//! pricing) and the post-labor stage (`L = 0`).

use serde::{Deserialize, Serialize};

use super::params::{ModelParams, TechState};
use super::prices::{corner_prices, reduced_prices, scale_constant};
use super::transfer::{
    pinned_transfer_roots, post_labor_cap_transfer, solve_cap_transfer, solve_ms_transfer, TransferSolution,
};
use crate::error::{Error, Result};
use crate::search::{bisect, golden_section_max};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Corner,
    Interior,
    PostLabor,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Corner => "corner",
            Regime::Interior => "interior",
            Regime::PostLabor => "post_labor",
        }
    }
}

/// Production side of a period: output, factor use and prices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    pub y: f64,
    pub l: f64,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub w: f64,
    pub r: f64,
    pub regime: Regime,
}

/// The variable supplied to [`interior_period`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaborOrOutput {
    Labor(f64),
    Output(f64),
}

/// Outcome of an interior solve. The two signals tell the caller to
/// re-solve in another regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interior {
    Solved(Allocation),
    /// `K2` came out negative: automation is not competitive at these inputs.
    CornerFallback,
    /// Pinned labor or output leaves no room for labor.
    PostLabor,
}

pub fn interior_period(k: f64, tech: &TechState, params: &ModelParams, pinned: LaborOrOutput) -> Result<Interior> {
    let prices = reduced_prices(tech, params.alpha)?;
    let (w, r) = (prices.w, prices.r);
    let (y, l) = match pinned {
        LaborOrOutput::Labor(l) => {
            if l > params.n {
                return Err(Error::InvalidSupply {
                    labor: l,
                    population: params.n,
                });
            }
            if l <= 0.0 {
                return Ok(Interior::PostLabor);
            }
            (w * l + r * k, l)
        }
        LaborOrOutput::Output(y) => {
            let l = (y - r * k) / w;
            if l <= 0.0 {
                return Ok(Interior::PostLabor);
            }
            if l > params.n {
                return Err(Error::InfeasibleOutput {
                    output: y,
                    reason: format!("requires L = {l} above the population {}", params.n),
                });
            }
            (y, l)
        }
    };
    let k1 = params.alpha * y / r;
    let k2 = k - k1;
    if k2 < 0.0 {
        return Ok(Interior::CornerFallback);
    }
    Ok(Interior::Solved(Allocation {
        y,
        l,
        k,
        k1,
        k2,
        w,
        r,
        regime: Regime::Interior,
    }))
}

pub fn corner_allocation(k: f64, l: f64, tech: &TechState, alpha: f64) -> Result<Allocation> {
    let c = corner_prices(k, l, tech.a, alpha)?;
    Ok(Allocation {
        y: c.y,
        l,
        k,
        k1: k,
        k2: 0.0,
        w: c.w,
        r: c.r,
        regime: Regime::Corner,
    })
}

/// `L = 0`: `Y = rK`, `K1 = αK`, `K2 = (1-α)K`.
pub fn post_labor_allocation(k: f64, tech: &TechState, alpha: f64) -> Result<Allocation> {
    let p = reduced_prices(tech, alpha)?;
    Ok(Allocation {
        y: p.r * k,
        l: 0.0,
        k,
        k1: alpha * k,
        k2: (1.0 - alpha) * k,
        w: p.w,
        r: p.r,
        regime: Regime::PostLabor,
    })
}

/// Allocation for a given labor input, with regime detection. `corner`
/// forces the Cobb-Douglas corner regardless of parity.
pub fn allocate_labor(k: f64, tech: &TechState, params: &ModelParams, l: f64, corner: bool) -> Result<Allocation> {
    if !(l >= 0.0 && l <= params.n) {
        return Err(Error::InvalidSupply {
            labor: l,
            population: params.n,
        });
    }
    if corner || tech.b == 0.0 {
        return corner_allocation(k, l, tech, params.alpha);
    }
    match interior_period(k, tech, params, LaborOrOutput::Labor(l))? {
        Interior::Solved(a) => Ok(a),
        Interior::CornerFallback => corner_allocation(k, l, tech, params.alpha),
        Interior::PostLabor => post_labor_allocation(k, tech, params.alpha),
    }
}

/// Allocation for a given output. Output at or below `rK` collapses into
/// the post-labor stage (and output there is `rK`, not the pinned value).
pub fn allocate_output(k: f64, tech: &TechState, params: &ModelParams, y: f64, corner: bool) -> Result<Allocation> {
    let corner_labor = |y: f64| -> Result<Allocation> {
        if !(y > 0.0) {
            return Err(Error::InfeasibleOutput {
                output: y,
                reason: "corner regime needs positive output".into(),
            });
        }
        let alpha = params.alpha;
        let l = (y / k.powf(alpha)).powf(1.0 / (1.0 - alpha)) / tech.a;
        if l > params.n {
            return Err(Error::InfeasibleOutput {
                output: y,
                reason: format!("requires L = {l} above the population {}", params.n),
            });
        }
        corner_allocation(k, l, tech, alpha)
    };
    if corner || tech.b == 0.0 {
        return corner_labor(y);
    }
    match interior_period(k, tech, params, LaborOrOutput::Output(y))? {
        Interior::Solved(a) => Ok(a),
        Interior::CornerFallback => corner_labor(y),
        Interior::PostLabor => post_labor_allocation(k, tech, params.alpha),
    }
}

/// Allocation for a pinned CAP tax rate. Supply `L = n - δtY/(n w (1-t) Q)`
/// is linear in `L` once prices are known. A tax so high that no labor is
/// supplied lands in the post-labor stage at that tax rate.
pub fn allocate_tax(k: f64, tech: &TechState, params: &ModelParams, t: f64, corner: bool) -> Result<Allocation> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InfeasibleTax { tax: t });
    }
    let n = params.n;
    let alpha = params.alpha;
    // In the corner Y/w = L/(1-α), so supply is linear in L as well.
    let corner_solve = || {
        let l = n / (1.0 + params.delta * t / (n * (1.0 - alpha) * (1.0 - t) * tech.q));
        corner_allocation(k, l, tech, alpha)
    };
    if corner || tech.b == 0.0 {
        return corner_solve();
    }
    let p = reduced_prices(tech, alpha)?;
    let kk = params.delta * t / (n * p.w * (1.0 - t) * tech.q);
    let l = (n - kk * p.r * k) / (1.0 + kk * p.w);
    if l <= 0.0 {
        return post_labor_allocation(k, tech, alpha);
    }
    match interior_period(k, tech, params, LaborOrOutput::Labor(l))? {
        Interior::Solved(a) => Ok(a),
        Interior::CornerFallback => corner_solve(),
        Interior::PostLabor => post_labor_allocation(k, tech, alpha),
    }
}

/// CAP transfer implied by the supply equation at labor `l`. Used as the
/// objective of the Laffer search and by the pinned-`G` corner solve.
pub fn transfer_at_labor(k: f64, tech: &TechState, params: &ModelParams, l: f64, corner: bool) -> Result<f64> {
    let a = allocate_labor(k, tech, params, l, corner)?;
    if a.regime == Regime::Corner && l == 0.0 {
        return Ok(0.0);
    }
    Ok(solve_cap_transfer(a.l, a.y, a.w, tech.q, params)?.g)
}

/// Allocation for a pinned CAP transfer `G`. Under reduced-form prices this
/// is the larger-`u` root of the quadratic in [`pinned_transfer_roots`]; in
/// the corner it is the root of `G(L) = G` on the high-labor side of the
/// Laffer peak. Returns the allocation and the CAP tax rate.
pub fn allocate_transfer(
    k: f64,
    tech: &TechState,
    params: &ModelParams,
    g: f64,
    corner: bool,
) -> Result<(Allocation, f64)> {
    if !(g >= 0.0) {
        return Err(Error::InfeasibleTransfer { transfer: g });
    }
    let n = params.n;
    if g == 0.0 {
        let a = allocate_labor(k, tech, params, n, corner)?;
        return Ok((a, 0.0));
    }
    let corner_solve = || -> Result<(Allocation, f64)> {
        let f = |l: f64| transfer_at_labor(k, tech, params, l, true).unwrap_or(0.0);
        let peak = golden_section_max(f, 0.0, n, 1e-10);
        if peak.fx < g {
            return Err(Error::InfeasibleTransfer { transfer: g });
        }
        let l = bisect(|l| f(l) - g, peak.x, n, 1e-12);
        let a = corner_allocation(k, l, tech, params.alpha)?;
        let t = solve_cap_transfer(a.l, a.y, a.w, tech.q, params)?.tax;
        Ok((a, t))
    };
    if corner || tech.b == 0.0 {
        return corner_solve();
    }
    let p = reduced_prices(tech, params.alpha)?;
    let roots = pinned_transfer_roots(g, p.w, p.r, k, tech.q, params)?;
    let u = roots.kept;
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::InfeasibleTransfer { transfer: g });
    }
    let l = n - params.delta * g / (p.w * u * tech.q);
    if l <= 0.0 {
        let a = post_labor_allocation(k, tech, params.alpha)?;
        let t = n * g / a.y;
        if t > 1.0 {
            return Err(Error::InfeasibleTransfer { transfer: g });
        }
        return Ok((a, t));
    }
    match interior_period(k, tech, params, LaborOrOutput::Labor(l))? {
        Interior::Solved(a) => Ok((a, 1.0 - u)),
        Interior::CornerFallback => corner_solve(),
        Interior::PostLabor => unreachable!("positive labor"),
    }
}

/// One period's full solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub period: u32,
    pub tech: TechState,
    pub y: f64,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub l: f64,
    pub r: f64,
    pub w: f64,
    /// Investment `sY`.
    pub investment: f64,
    pub cap: TransferSolution,
    /// `None` when no wage tax in `[0, 1)` balances the MS budget.
    pub ms: Option<TransferSolution>,
    pub regime: Regime,
}

impl Snapshot {
    /// Completes an allocation with both financing regimes. `post_labor_tax`
    /// is the CAP policy rate used when `L = 0`, where the supply equation no
    /// longer determines it.
    pub fn assemble(
        alloc: Allocation,
        tech: TechState,
        params: &ModelParams,
        post_labor_tax: Option<f64>,
    ) -> Result<Snapshot> {
        let cap = if alloc.regime == Regime::PostLabor {
            let tax = post_labor_tax.ok_or_else(|| {
                Error::InvalidScenario(format!(
                    "period {} reaches the post-labor stage; a CAP policy tax rate is required",
                    tech.period
                ))
            })?;
            post_labor_cap_transfer(alloc.y, tax, params)?
        } else {
            solve_cap_transfer(alloc.l, alloc.y, alloc.w, tech.q, params)?
        };
        let ms = solve_ms_transfer(alloc.l, alloc.y, alloc.w, alloc.r, alloc.k, tech.q, params).ok();
        Ok(Snapshot {
            period: tech.period,
            tech,
            y: alloc.y,
            k: alloc.k,
            k1: alloc.k1,
            k2: alloc.k2,
            l: alloc.l,
            r: alloc.r,
            w: alloc.w,
            investment: params.s * alloc.y,
            cap,
            ms,
            regime: alloc.regime,
        })
    }

    pub fn allocation(&self) -> Allocation {
        Allocation {
            y: self.y,
            l: self.l,
            k: self.k,
            k1: self.k1,
            k2: self.k2,
            w: self.w,
            r: self.r,
            regime: self.regime,
        }
    }

    pub fn capital_share(&self) -> f64 {
        self.r * self.k / self.y
    }

    pub fn transfer_share(&self, params: &ModelParams) -> f64 {
        params.n * self.cap.g / self.y
    }

    pub fn net_return(&self) -> f64 {
        self.r * (1.0 - self.cap.tax)
    }

    pub fn net_wage(&self) -> f64 {
        self.w * (1.0 - self.cap.tax)
    }

    /// `h = α^α (1-α)^(1-α) / B^α`, so that `Y = h (A L + B K)` in the
    /// interior and post-labor regimes.
    pub fn h_factor(&self, alpha: f64) -> f64 {
        scale_constant(alpha) / self.tech.b.powf(alpha)
    }

    /// Relative residuals of every equation of the system.
    pub fn residuals(&self, params: &ModelParams) -> Residuals {
        let alpha = params.alpha;
        let (a, b, q) = (self.tech.a, self.tech.b, self.tech.q);
        let n = params.n;
        let eff = a * self.l + b * self.k2;
        let rel = |lhs: f64, rhs: f64| {
            let scale = lhs.abs().max(rhs.abs());
            if scale == 0.0 {
                0.0
            } else {
                (lhs - rhs).abs() / scale
            }
        };
        let production = rel(self.y, self.k1.powf(alpha) * eff.powf(1.0 - alpha));
        let fixed_capital = rel(alpha * self.y, self.r * self.k1);
        let labor_foc = rel((1.0 - alpha) * a * self.y, self.w * eff);
        let automation_foc = match self.regime {
            Regime::Corner => 0.0,
            _ => rel((1.0 - alpha) * b * self.y, self.r * eff),
        };
        let cap_budget = rel(n * self.cap.g, self.cap.tax * self.y);
        let supply = |g: f64, tax: f64| n - params.delta * g / (self.w * (1.0 - tax) * q);
        let cap_supply = match self.regime {
            Regime::PostLabor => 0.0,
            _ => (self.l - supply(self.cap.g, self.cap.tax)).abs() / n,
        };
        let (ms_budget, ms_supply) = match &self.ms {
            Some(ms) => (
                rel(n * ms.g, self.r * self.k + ms.tax * self.w * self.l),
                match self.regime {
                    Regime::PostLabor => 0.0,
                    _ => (self.l - supply(ms.g, ms.tax)).abs() / n,
                },
            ),
            None => (0.0, 0.0),
        };
        Residuals {
            production,
            fixed_capital,
            labor_foc,
            automation_foc,
            cap_budget,
            cap_supply,
            ms_budget,
            ms_supply,
            investment: rel(self.investment, params.s * self.y),
            capital_sum: rel(self.k, self.k1 + self.k2),
            income_identity: rel(self.y, self.w * self.l + self.r * self.k),
        }
    }
}

/// Relative residual of each equation (supply residuals are relative to `n`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub production: f64,
    pub fixed_capital: f64,
    pub labor_foc: f64,
    pub automation_foc: f64,
    pub cap_budget: f64,
    pub cap_supply: f64,
    pub ms_budget: f64,
    pub ms_supply: f64,
    pub investment: f64,
    pub capital_sum: f64,
    pub income_identity: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        [
            self.production,
            self.fixed_capital,
            self.labor_foc,
            self.automation_foc,
            self.cap_budget,
            self.cap_supply,
            self.ms_budget,
            self.ms_supply,
            self.investment,
            self.capital_sum,
            self.income_identity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g_a: f64, g_b: f64) -> ModelParams {
        ModelParams {
            alpha: 0.25,
            n: 100.0,
            s: 0.15,
            theta: 0.02,
            delta: 25.0,
            g_a,
            g_b,
            g_q: 0.005,
        }
    }

    fn tech(a: f64, b: f64, q: f64) -> TechState {
        TechState { a, b, q, period: 10 }
    }

    #[test]
    fn interior_table1_decade_ten() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let Interior::Solved(a) = interior_period(551.0, &t, &p, LaborOrOutput::Labor(73.0)).unwrap() else {
            panic!("expected interior")
        };
        assert_eq!(a.y.round(), 108.0);
        assert_eq!(a.k1.round(), 485.0);
        assert_eq!(a.k2.round(), 66.0);
        let prod = a.k1.powf(0.25) * (t.a * a.l + t.b * a.k2).powf(0.75);
        assert!((a.y - prod).abs() / a.y < 1e-9);
    }

    #[test]
    fn output_at_capital_income_means_no_labor() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let r = reduced_prices(&t, 0.25).unwrap().r;
        let a = allocate_output(551.0, &t, &p, r * 551.0, false).unwrap();
        assert_eq!(a.regime, Regime::PostLabor);
        assert_eq!(a.l, 0.0);
        assert!((a.k1 - 0.25 * 551.0).abs() < 1e-9);
        assert!((a.k2 - 0.75 * 551.0).abs() < 1e-9);
    }

    #[test]
    fn negative_automation_capital_falls_back_to_corner() {
        let p = params(0.0, 0.0);
        // B well below parity: automation not competitive
        let t = tech(0.78, 0.02, 1.0);
        assert_eq!(
            interior_period(500.0, &t, &p, LaborOrOutput::Labor(75.0)).unwrap(),
            Interior::CornerFallback
        );
        let a = allocate_labor(500.0, &t, &p, 75.0, false).unwrap();
        assert_eq!(a.regime, Regime::Corner);
        assert_eq!(a.k2, 0.0);
    }

    #[test]
    fn corner_pinned_tax_reproduces_calibration() {
        let p = params(0.01, 0.015);
        let t = TechState {
            a: 0.779_738_063_523_430_8,
            b: 0.038_986_903_176_171_54,
            q: 1.0,
            period: 0,
        };
        let a = allocate_tax(500.0, &t, &p, 0.5, true).unwrap();
        assert!((a.l - 75.0).abs() < 1e-12);
        assert!((a.y - 100.0).abs() < 1e-9);
    }

    #[test]
    fn interior_tax_and_labor_agree() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let a = allocate_tax(551.0, &t, &p, 0.527, false).unwrap();
        let s = solve_cap_transfer(a.l, a.y, a.w, t.q, &p).unwrap();
        assert!((s.tax - 0.527).abs() < 1e-12);
    }

    #[test]
    fn pinned_transfer_matches_supply() {
        let p = params(0.007, 0.007);
        let t = TechState {
            a: 0.8067,
            b: 0.040385,
            q: 1.0253,
            period: 5,
        };
        let (a, tax) = allocate_transfer(525.1, &t, &p, 0.5225, false).unwrap();
        assert!((tax - 0.503).abs() < 1e-3);
        assert!((a.l - 75.0).abs() < 0.2, "L = {}", a.l);
        assert!((a.y - 103.9).abs() < 0.2, "Y = {}", a.y);
        let s = solve_cap_transfer(a.l, a.y, a.w, t.q, &p).unwrap();
        assert!((s.g - 0.5225).abs() < 1e-12);
    }

    #[test]
    fn zero_transfer_means_full_employment() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let (a, tax) = allocate_transfer(551.0, &t, &p, 0.0, false).unwrap();
        assert_eq!(a.l, 100.0);
        assert_eq!(tax, 0.0);
    }

    #[test]
    fn corner_pinned_transfer_on_high_labor_branch() {
        let p = params(0.01, 0.015);
        let t = TechState {
            a: 0.7797,
            b: 0.039,
            q: 1.0,
            period: 0,
        };
        let (a, tax) = allocate_transfer(500.0, &t, &p, 0.5, true).unwrap();
        assert_eq!(a.regime, Regime::Corner);
        assert!((tax - 0.5).abs() < 1e-3, "t = {tax}");
        assert!((a.l - 75.0).abs() < 0.1);
    }

    #[test]
    fn snapshot_residuals_vanish() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let a = allocate_labor(551.0, &t, &p, 73.0, false).unwrap();
        let s = Snapshot::assemble(a, t, &p, Some(0.5)).unwrap();
        assert!(s.residuals(&p).max() < 1e-12, "{:?}", s.residuals(&p));
        assert!(s.ms.unwrap().g > s.cap.g);
    }

    #[test]
    fn post_labor_needs_policy_tax() {
        let p = params(0.01, 0.015);
        let t = tech(0.8605, 0.04526, 1.0511);
        let a = allocate_labor(551.0, &t, &p, 0.0, false).unwrap();
        assert!(Snapshot::assemble(a, t, &p, None).is_err());
        let s = Snapshot::assemble(a, t, &p, Some(0.7)).unwrap();
        assert!((p.n * s.cap.g - 0.7 * s.y).abs() < 1e-12);
        let ms = s.ms.unwrap();
        assert!((p.n * ms.g - s.y).abs() < 1e-12);
        assert!((s.y - s.r * s.k).abs() < 1e-12);
    }
}
