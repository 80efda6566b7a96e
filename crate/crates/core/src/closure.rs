//! Closure rules.
//!
//! Production, factor pricing, supply and budget leave a one-parameter
//! family of solutions per period. A [`ClosureRule`] supplies the missing
//! scalar: pinned labor, transfer, tax rate or output, or the transfer-
//! maximizing (Laffer) point.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    allocate_labor, allocate_output, allocate_tax, allocate_transfer, solve_cap_transfer, transfer_at_labor,
    ModelParams, Snapshot, TechState,
};
use crate::search::golden_section_max;

/// Post-labor CAP tax rate used when none is configured: the weak-abundance
/// ratio of one half.
pub const DEFAULT_POST_LABOR_TAX: f64 = 0.5;

/// Interval tolerance of the Laffer search.
pub const LAFFER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    PinnedL,
    PinnedG,
    PinnedT,
    PinnedY,
    LafferMax,
}

impl ClosureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosureKind::PinnedL => "pinned_l",
            ClosureKind::PinnedG => "pinned_g",
            ClosureKind::PinnedT => "pinned_t",
            ClosureKind::PinnedY => "pinned_y",
            ClosureKind::LafferMax => "laffer_max",
        }
    }
}

/// Values of the pinned variable over time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    Constant(f64),
    /// Exact per-period values; a missing period is an error.
    Values(BTreeMap<u32, f64>),
    /// Linear interpolation between knots `(period, value)`.
    Linear(Vec<(u32, f64)>),
    /// `initial * (1 + rate)^(T - origin)`.
    Geometric {
        initial: f64,
        rate: f64,
        origin: u32,
    },
}

impl Schedule {
    pub fn value_at(&self, period: u32) -> Result<f64> {
        match self {
            Schedule::Constant(v) => Ok(*v),
            Schedule::Values(map) => map.get(&period).copied().ok_or(Error::MissingSchedule { period }),
            Schedule::Linear(knots) => {
                let first = knots.first().ok_or(Error::MissingSchedule { period })?;
                if period == first.0 {
                    return Ok(first.1);
                }
                for pair in knots.windows(2) {
                    let ((t0, v0), (t1, v1)) = (pair[0], pair[1]);
                    if period >= t0 && period <= t1 {
                        if period == t1 {
                            return Ok(v1);
                        }
                        let frac = (period - t0) as f64 / (t1 - t0) as f64;
                        return Ok(v0 + (v1 - v0) * frac);
                    }
                }
                Err(Error::MissingSchedule { period })
            }
            Schedule::Geometric { initial, rate, origin } => {
                Ok(initial * (1.0 + rate).powi(period as i32 - *origin as i32))
            }
        }
    }

    /// Knots must be strictly increasing in period.
    pub fn validate(&self) -> std::result::Result<(), String> {
        match self {
            Schedule::Linear(knots) => {
                if knots.is_empty() {
                    return Err("linear schedule needs at least one knot".into());
                }
                if knots.windows(2).any(|p| p[1].0 <= p[0].0) {
                    return Err("linear knots must have strictly increasing periods".into());
                }
                if knots.iter().any(|k| !k.1.is_finite()) {
                    return Err("schedule values must be finite".into());
                }
            }
            Schedule::Values(map) => {
                if map.values().any(|v| !v.is_finite()) {
                    return Err("schedule values must be finite".into());
                }
            }
            Schedule::Constant(v) if !v.is_finite() => return Err("schedule values must be finite".into()),
            Schedule::Geometric { initial, rate, .. } if !(initial.is_finite() && *rate > -1.0) => {
                return Err("geometric schedule needs finite initial value and rate > -1".into())
            }
            _ => {}
        }
        Ok(())
    }
}

/// The policy that closes each period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureRule {
    pub kind: ClosureKind,
    /// Required for every kind except [`ClosureKind::LafferMax`].
    pub schedule: Option<Schedule>,
    /// CAP tax rate applied once labor reaches zero.
    pub post_labor_tax: f64,
}

impl ClosureRule {
    fn pinned(kind: ClosureKind, schedule: Schedule) -> Self {
        ClosureRule {
            kind,
            schedule: Some(schedule),
            post_labor_tax: DEFAULT_POST_LABOR_TAX,
        }
    }

    pub fn pinned_labor(schedule: Schedule) -> Self {
        Self::pinned(ClosureKind::PinnedL, schedule)
    }

    pub fn pinned_transfer(schedule: Schedule) -> Self {
        Self::pinned(ClosureKind::PinnedG, schedule)
    }

    pub fn pinned_tax(schedule: Schedule) -> Self {
        Self::pinned(ClosureKind::PinnedT, schedule)
    }

    pub fn pinned_output(schedule: Schedule) -> Self {
        Self::pinned(ClosureKind::PinnedY, schedule)
    }

    pub fn laffer_max() -> Self {
        ClosureRule {
            kind: ClosureKind::LafferMax,
            schedule: None,
            post_labor_tax: DEFAULT_POST_LABOR_TAX,
        }
    }

    pub fn with_post_labor_tax(mut self, tax: f64) -> Self {
        self.post_labor_tax = tax;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.post_labor_tax) {
            return Err(Error::InvalidParameter {
                name: "post_labor_tax",
                reason: format!("{} not in [0, 1]", self.post_labor_tax),
            });
        }
        match (&self.kind, &self.schedule) {
            (ClosureKind::LafferMax, _) => Ok(()),
            (_, None) => Err(Error::InvalidScenario(format!(
                "closure {} needs a schedule",
                self.kind.as_str()
            ))),
            (_, Some(s)) => s.validate().map_err(Error::InvalidScenario),
        }
    }

    fn scheduled(&self, period: u32) -> Result<f64> {
        self.schedule
            .as_ref()
            .ok_or(Error::MissingSchedule { period })?
            .value_at(period)
    }
}

impl fmt::Display for ClosureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.as_str())
    }
}

/// What a closure needs to know about the period being solved.
#[derive(Debug, Clone, Copy)]
pub struct PeriodContext<'a> {
    pub k: f64,
    pub tech: TechState,
    pub params: &'a ModelParams,
    /// Force the Cobb-Douglas corner (no automation capital).
    pub corner: bool,
}

/// The one scalar a closure fixes, tagged by variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pinned {
    Labor(f64),
    Transfer(f64),
    Tax(f64),
    Output(f64),
}

/// The pinned scalar for this period. Laffer-max resolves to the labor level
/// at the transfer peak.
pub fn resolve(closure: &ClosureRule, ctx: &PeriodContext<'_>) -> Result<Pinned> {
    let period = ctx.tech.period;
    Ok(match closure.kind {
        ClosureKind::PinnedL => Pinned::Labor(closure.scheduled(period)?),
        ClosureKind::PinnedG => Pinned::Transfer(closure.scheduled(period)?),
        ClosureKind::PinnedT => Pinned::Tax(closure.scheduled(period)?),
        ClosureKind::PinnedY => Pinned::Output(closure.scheduled(period)?),
        ClosureKind::LafferMax => {
            let peak = laffer_search(ctx, (0.0, ctx.params.n))?;
            Pinned::Labor(peak.labor)
        }
    })
}

/// Solves the period under `closure`.
pub fn solve_period(closure: &ClosureRule, ctx: &PeriodContext<'_>) -> Result<Snapshot> {
    let pinned = resolve(closure, ctx)?;
    solve_pinned(pinned, closure.post_labor_tax, ctx)
}

/// Solves the period for an already-resolved pinned value.
pub fn solve_pinned(pinned: Pinned, post_labor_tax: f64, ctx: &PeriodContext<'_>) -> Result<Snapshot> {
    let PeriodContext {
        k,
        tech,
        params,
        corner,
    } = *ctx;
    match pinned {
        Pinned::Labor(l) => {
            let a = allocate_labor(k, &tech, params, l, corner)?;
            Snapshot::assemble(a, tech, params, Some(post_labor_tax))
        }
        Pinned::Output(y) => {
            let a = allocate_output(k, &tech, params, y, corner)?;
            Snapshot::assemble(a, tech, params, Some(post_labor_tax))
        }
        Pinned::Tax(t) => {
            let a = allocate_tax(k, &tech, params, t, corner)?;
            Snapshot::assemble(a, tech, params, Some(t))
        }
        Pinned::Transfer(g) => {
            let (a, t) = allocate_transfer(k, &tech, params, g, corner)?;
            Snapshot::assemble(a, tech, params, Some(t))
        }
    }
}

/// Period solution with the CAP transfer fixed at `g`.
pub fn solve_with_pinned_g(g: f64, k: f64, tech: &TechState, params: &ModelParams) -> Result<Snapshot> {
    let ctx = PeriodContext {
        k,
        tech: *tech,
        params,
        corner: false,
    };
    solve_pinned(Pinned::Transfer(g), DEFAULT_POST_LABOR_TAX, &ctx)
}

/// Peak of the CAP transfer over labor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LafferPeak {
    pub labor: f64,
    pub transfer: f64,
    pub iterations: usize,
}

/// Golden-section search of `G(L)` over `bracket`, where `G(L)` is the
/// CAP transfer that makes supply equal `L`.
pub fn laffer_search(ctx: &PeriodContext<'_>, bracket: (f64, f64)) -> Result<LafferPeak> {
    let (lo, hi) = bracket;
    let n = ctx.params.n;
    if !(lo >= 0.0 && hi <= n && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "bracket",
            reason: format!("({lo}, {hi}) must lie in [0, {n}]"),
        });
    }
    let f = |l: f64| transfer_at_labor(ctx.k, &ctx.tech, ctx.params, l, ctx.corner).unwrap_or(f64::NEG_INFINITY);
    let m = golden_section_max(f, lo, hi, LAFFER_TOLERANCE);
    Ok(LafferPeak {
        labor: m.x,
        transfer: m.fx,
        iterations: m.iterations,
    })
}

/// Snapshot with the largest CAP transfer that the supply equation admits.
pub fn laffer_max(k: f64, tech: &TechState, params: &ModelParams) -> Result<Snapshot> {
    let ctx = PeriodContext {
        k,
        tech: *tech,
        params,
        corner: false,
    };
    laffer_snapshot(&ctx, (0.0, params.n))
}

pub fn laffer_snapshot(ctx: &PeriodContext<'_>, bracket: (f64, f64)) -> Result<Snapshot> {
    let peak = laffer_search(ctx, bracket)?;
    let a = allocate_labor(ctx.k, &ctx.tech, ctx.params, peak.labor, ctx.corner)?;
    // At L = 0 the supply equation still prices the transfer.
    let tax = solve_cap_transfer(a.l, a.y, a.w, ctx.tech.q, ctx.params)?.tax;
    Snapshot::assemble(a, ctx.tech, ctx.params, Some(tax))
}
