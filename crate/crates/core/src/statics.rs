//! Paired-economy experiments: two savings rates on a shared output path,
//! and two automation productivity levels on a shared capital path.
//!
//! With output pinned, both economies face the same prices each period, so
//! extra capital can only displace labor: `w ΔL + r ΔK = 0`.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::closure::{ClosureKind, ClosureRule, Schedule};
use crate::error::{Error, Result};
use crate::model::Regime;
use crate::scenario::{run_scenario, ScenarioSpec, Trajectory};

/// Relative tolerance for the equalities the pairing makes exact.
pub const EXACT_TOLERANCE: f64 = 1e-9;

/// Differences `high - low` at one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodDelta {
    pub period: u32,
    pub y: f64,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub l: f64,
    pub g: f64,
    pub tax: f64,
    pub capital_share: f64,
    pub r_ratio: f64,
    /// `w ΔL + r ΔK`.
    pub offset: f64,
    /// `r ΔK + A ΔL`, the offset with the technology level in place of the
    /// wage.
    pub offset_with_a: f64,
}

/// One asserted ordering or equality and the periods where it fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
    pub failing_periods: Vec<u32>,
}

impl Verdict {
    fn new(claim: &str, failing_periods: Vec<u32>) -> Self {
        Verdict {
            claim: claim.to_string(),
            holds: failing_periods.is_empty(),
            failing_periods,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub label_low: String,
    pub label_high: String,
    pub low: Trajectory,
    pub high: Trajectory,
    pub deltas: Vec<PeriodDelta>,
    pub verdicts: Vec<Verdict>,
    /// Periods where `r K2 > α (n - L) w` in the low economy, the condition
    /// under which more automation productivity raises the transfer.
    #[serde(default)]
    pub transfer_condition_periods: Vec<u32>,
    /// First period at which one economy can no longer produce the shared
    /// output path (all labor displaced). Verdicts cover earlier periods only.
    pub path_lost_at: Option<u32>,
}

impl ComparisonReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, claim: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }
}

fn run_pair(low: &ScenarioSpec, high: &ScenarioSpec) -> Result<(Trajectory, Trajectory)> {
    thread::scope(|scope| {
        let h = scope.spawn(|| run_scenario(high));
        let l = run_scenario(low);
        let h = h.join().expect("scenario run panicked");
        Ok((l?, h?))
    })
}

fn deltas(low: &Trajectory, high: &Trajectory) -> Vec<PeriodDelta> {
    low.snapshots
        .iter()
        .zip(&high.snapshots)
        .map(|(a, b)| {
            let (dk, dl) = (b.k - a.k, b.l - a.l);
            PeriodDelta {
                period: a.period,
                y: b.y - a.y,
                k: dk,
                k1: b.k1 - a.k1,
                k2: b.k2 - a.k2,
                l: dl,
                g: b.cap.g - a.cap.g,
                tax: b.cap.tax - a.cap.tax,
                capital_share: b.capital_share() - a.capital_share(),
                r_ratio: b.r / a.r,
                offset: a.w * dl + a.r * dk,
                offset_with_a: a.r * dk + a.tech.a * dl,
            }
        })
        .collect()
}

/// First period where either economy has been pushed off the pinned output
/// path into the post-labor corner.
fn path_lost_at(low: &Trajectory, high: &Trajectory) -> Option<u32> {
    low.snapshots
        .iter()
        .zip(&high.snapshots)
        .find(|(a, b)| a.regime == Regime::PostLabor || b.regime == Regime::PostLabor)
        .map(|(a, _)| a.period)
}

fn on_path<'a>(
    low: &'a Trajectory,
    high: &'a Trajectory,
    lost: Option<u32>,
) -> Vec<(&'a crate::model::Snapshot, &'a crate::model::Snapshot)> {
    low.snapshots
        .iter()
        .zip(&high.snapshots)
        .filter(|(a, _)| lost.is_none_or(|t| a.period < t))
        .collect()
}

fn failing<T>(items: &[T], period: impl Fn(&T) -> u32, ok: impl Fn(&T) -> bool) -> Vec<u32> {
    items.iter().filter(|x| !ok(x)).map(period).collect()
}

/// Savings comparison on the output path pinned by `base_spec`, which must
/// close every phase with [`ClosureKind::PinnedY`].
pub fn compare_savings(base_spec: &ScenarioSpec, s_low: f64, s_high: f64) -> Result<ComparisonReport> {
    if let Some(p) = base_spec.phases.iter().find(|p| p.closure.kind != ClosureKind::PinnedY) {
        return Err(Error::InvalidComparison(format!(
            "savings invariance needs a pinned output path; phase {}..={} uses {}",
            p.start, p.end, p.closure
        )));
    }
    if !(s_low <= s_high) {
        return Err(Error::InvalidComparison(format!(
            "s_low = {s_low} must not exceed s_high = {s_high}"
        )));
    }
    let with_s = |s: f64| {
        let mut spec = base_spec.clone();
        spec.params.s = s;
        for phase in &mut spec.phases {
            phase.overrides.s = None;
        }
        spec
    };
    let (low, high) = run_pair(&with_s(s_low), &with_s(s_high))?;
    let d = deltas(&low, &high);
    let lost = path_lost_at(&low, &high);
    let pairs = on_path(&low, &high, lost);
    let rel = |x: f64, scale: f64| x.abs() <= EXACT_TOLERANCE * scale.abs().max(1.0);
    let d_on: Vec<PeriodDelta> = d[..pairs.len()].to_vec();
    let grown: Vec<_> = pairs
        .iter()
        .zip(&d_on)
        .filter(|(_, d)| d.k > 0.0)
        .map(|(p, _)| *p)
        .collect();
    let p = |x: &(&crate::model::Snapshot, &crate::model::Snapshot)| x.0.period;
    let verdicts = vec![
        Verdict::new("Y equal", failing(&pairs, p, |(a, b)| rel(b.y - a.y, a.y))),
        Verdict::new("K1 equal", failing(&pairs, p, |(a, b)| rel(b.k1 - a.k1, a.k1))),
        Verdict::new("dK = dK2", failing(&d_on, |d| d.period, |d| rel(d.k - d.k2, d.k))),
        Verdict::new(
            "w dL + r dK = 0",
            failing(&pairs, p, |(a, b)| rel(a.w * (b.l - a.l) + a.r * (b.k - a.k), a.y)),
        ),
        Verdict::new("G higher", failing(&grown, p, |(a, b)| b.cap.g > a.cap.g)),
        Verdict::new("t higher", failing(&grown, p, |(a, b)| b.cap.tax > a.cap.tax)),
        Verdict::new(
            "capital share higher",
            failing(&grown, p, |(a, b)| b.capital_share() > a.capital_share()),
        ),
    ];
    Ok(ComparisonReport {
        label_low: format!("s={s_low}"),
        label_high: format!("s={s_high}"),
        low,
        high,
        deltas: d,
        verdicts,
        transfer_condition_periods: Vec::new(),
        path_lost_at: lost,
    })
}

/// Productivity comparison: automation productivity scaled by `b_low` and
/// `b_high`. Both economies replay the output path of the `b_low` run of
/// `base_spec`; with a common savings rate their capital paths then agree.
pub fn compare_productivity(base_spec: &ScenarioSpec, b_low: f64, b_high: f64) -> Result<ComparisonReport> {
    if !(b_low > 0.0 && b_low <= b_high) {
        return Err(Error::InvalidComparison(format!(
            "need 0 < b_low <= b_high, got {b_low} and {b_high}"
        )));
    }
    let mut reference = base_spec.clone();
    reference.base_tech.b *= b_low;
    let path = run_scenario(&reference)?;
    let values = path.snapshots.iter().map(|s| (s.period, s.y)).collect();
    let closure = ClosureRule::pinned_output(Schedule::Values(values));
    let with_b = |scale: f64| {
        let mut spec = base_spec.clone();
        spec.base_tech.b *= scale;
        for phase in &mut spec.phases {
            phase.closure = closure.clone().with_post_labor_tax(phase.closure.post_labor_tax);
        }
        spec
    };
    let (low, high) = run_pair(&with_b(b_low), &with_b(b_high))?;
    let d = deltas(&low, &high);
    let alpha = base_spec.params.alpha;
    let expected_ratio = (b_high / b_low).powf(1.0 - alpha);
    let lost = path_lost_at(&low, &high);
    let pairs = on_path(&low, &high, lost);
    // The starting corner prices ignore automation, so orderings are
    // asserted only where both economies price it.
    let interior: Vec<_> = pairs
        .iter()
        .filter(|(a, b)| a.regime != Regime::Corner && b.regime != Regime::Corner)
        .copied()
        .collect();
    let p = |x: &(&crate::model::Snapshot, &crate::model::Snapshot)| x.0.period;
    let strict = b_high > b_low;
    let ordered = |ok: bool| ok || !strict;
    let verdicts = vec![
        Verdict::new(
            "r ratio = (B ratio)^(1-alpha)",
            failing(&interior, p, |(a, b)| {
                ((b.r / a.r) / expected_ratio - 1.0).abs() <= 1e-12
            }),
        ),
        Verdict::new("K equal", failing(&pairs, p, |(a, b)| b.k == a.k)),
        Verdict::new("r higher", failing(&interior, p, |(a, b)| ordered(b.r > a.r))),
        Verdict::new("K1 smaller", failing(&interior, p, |(a, b)| ordered(b.k1 < a.k1))),
        Verdict::new("K2 larger", failing(&interior, p, |(a, b)| ordered(b.k2 > a.k2))),
        Verdict::new("L lower", failing(&interior, p, |(a, b)| ordered(b.l < a.l))),
        Verdict::new("G higher", failing(&interior, p, |(a, b)| ordered(b.cap.g > a.cap.g))),
        Verdict::new(
            "t higher",
            failing(&interior, p, |(a, b)| ordered(b.cap.tax > a.cap.tax)),
        ),
        Verdict::new(
            "capital share higher",
            failing(&interior, p, |(a, b)| ordered(b.capital_share() > a.capital_share())),
        ),
    ];
    let n = base_spec.params.n;
    let transfer_condition_periods = low
        .snapshots
        .iter()
        .filter(|s| s.r * s.k2 > alpha * (n - s.l) * s.w)
        .map(|s| s.period)
        .collect();
    Ok(ComparisonReport {
        label_low: format!("B x{b_low}"),
        label_high: format!("B x{b_high}"),
        low,
        high,
        deltas: d,
        verdicts,
        transfer_condition_periods,
        path_lost_at: lost,
    })
}

/// `base_spec` with every phase replaced by the output path of its own run,
/// ready for [`compare_savings`].
pub fn pin_output_path(base_spec: &ScenarioSpec) -> Result<ScenarioSpec> {
    let traj = run_scenario(base_spec)?;
    let values = traj.snapshots.iter().map(|s| (s.period, s.y)).collect();
    let closure = ClosureRule::pinned_output(Schedule::Values(values));
    let mut spec = base_spec.clone();
    for phase in &mut spec.phases {
        phase.closure = closure.clone().with_post_labor_tax(phase.closure.post_labor_tax);
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::baseline_spec;

    #[test]
    fn savings_needs_pinned_output() {
        assert!(matches!(
            compare_savings(&baseline_spec(), 0.15, 0.25),
            Err(Error::InvalidComparison(_))
        ));
    }

    #[test]
    fn equal_savings_give_zero_deltas() {
        let spec = pin_output_path(&baseline_spec()).unwrap();
        let r = compare_savings(&spec, 0.2, 0.2).unwrap();
        assert!(r.deltas.iter().all(|d| d.k == 0.0 && d.l == 0.0 && d.g == 0.0));
        assert!(r.all_hold());
    }

    #[test]
    fn equal_productivity_gives_zero_deltas() {
        let r = compare_productivity(&baseline_spec(), 1.0, 1.0).unwrap();
        assert!(r.deltas.iter().all(|d| d.k == 0.0 && d.l == 0.0 && d.r_ratio == 1.0));
        assert!(r.all_hold());
    }
}
