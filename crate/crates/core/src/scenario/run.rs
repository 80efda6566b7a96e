use serde::{Deserialize, Serialize};

use super::spec::{Phase, ScenarioSpec, StartState};
use crate::closure::{laffer_search, solve_period, PeriodContext};
use crate::error::{Error, Result};
use crate::model::{step_capital, ModelParams, Snapshot};

/// Snapshots for consecutive periods, with the parameters in force at each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub params: Vec<ModelParams>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn first_period(&self) -> Option<u32> {
        self.snapshots.first().map(|s| s.period)
    }

    pub fn last_period(&self) -> Option<u32> {
        self.snapshots.last().map(|s| s.period)
    }

    fn index(&self, period: u32) -> Option<usize> {
        let first = self.first_period()?;
        let idx = period.checked_sub(first)? as usize;
        (idx < self.snapshots.len()).then_some(idx)
    }

    pub fn get(&self, period: u32) -> Option<&Snapshot> {
        self.index(period).map(|i| &self.snapshots[i])
    }

    pub fn params_at(&self, period: u32) -> Option<&ModelParams> {
        self.index(period).map(|i| &self.params[i])
    }

    /// Output growth rate from the previous period.
    pub fn growth(&self, period: u32) -> Option<f64> {
        let cur = self.get(period)?;
        let prev = self.get(period.checked_sub(1)?)?;
        Some(cur.y / prev.y - 1.0)
    }

    pub fn capital_share(&self, period: u32) -> Option<f64> {
        self.get(period).map(Snapshot::capital_share)
    }

    pub fn net_return(&self, period: u32) -> Option<f64> {
        self.get(period).map(Snapshot::net_return)
    }

    pub fn net_wage(&self, period: u32) -> Option<f64> {
        self.get(period).map(Snapshot::net_wage)
    }

    pub fn transfer_share(&self, period: u32) -> Option<f64> {
        let i = self.index(period)?;
        Some(self.snapshots[i].transfer_share(&self.params[i]))
    }

    /// Periods `from..=to` as a new trajectory.
    pub fn slice(&self, from: u32, to: u32) -> Trajectory {
        let (snapshots, params) = self
            .snapshots
            .iter()
            .zip(&self.params)
            .filter(|(s, _)| s.period >= from && s.period <= to)
            .map(|(s, p)| (*s, *p))
            .unzip();
        Trajectory { snapshots, params }
    }

    /// Appends `suffix`, which must start one period after `self` ends with
    /// the capital stock that accumulation implies.
    pub fn join(mut self, suffix: Trajectory) -> Result<Trajectory> {
        if let (Some(last), Some(first)) = (self.snapshots.last(), suffix.snapshots.first()) {
            let params = self.params.last().expect("aligned");
            let expected = step_capital(last.k, last.y, params);
            if first.period != last.period + 1 || first.k != expected {
                return Err(Error::InvalidScenario(format!(
                    "discontinuous capital stock at period {}: expected {expected}, got {}",
                    first.period, first.k
                )));
            }
        }
        self.snapshots.extend(suffix.snapshots);
        self.params.extend(suffix.params);
        Ok(self)
    }
}

/// Simulates `spec` from its start period to its horizon.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<Trajectory> {
    spec.validate()?;
    let count = (spec.horizon - spec.start.period + 1) as usize;
    let mut snapshots = Vec::with_capacity(count);
    let mut params_log = Vec::with_capacity(count);
    let mut k = spec.start.capital;
    for period in spec.start.period..=spec.horizon {
        let phase = spec.phase_at(period);
        let params = phase.overrides.apply(&spec.params);
        let ctx = PeriodContext {
            k,
            tech: spec.tech_at(period),
            params: &params,
            corner: spec.corner_at_origin && period == 0,
        };
        let snap = solve_period(&phase.closure, &ctx).map_err(|e| Error::PeriodFailed {
            period,
            closure: phase.closure.to_string(),
            source: Box::new(e),
        })?;
        k = step_capital(k, snap.y, &params);
        snapshots.push(snap);
        params_log.push(params);
    }
    Ok(Trajectory {
        snapshots,
        params: params_log,
    })
}

/// Continuation spec that runs `new_phase` from the capital stock reached by
/// `prefix`. Earlier phases of `spec` are kept (truncated at the splice) so
/// that tech anchors can look back at them.
pub fn splice_phase(prefix: &Trajectory, spec: &ScenarioSpec, new_phase: Phase) -> Result<ScenarioSpec> {
    let start = new_phase.start;
    let capital = if let Some(s) = prefix.get(start) {
        s.k
    } else {
        let last = prefix
            .snapshots
            .last()
            .ok_or_else(|| Error::InvalidScenario("empty prefix".into()))?;
        if last.period + 1 != start {
            return Err(Error::InvalidScenario(format!(
                "prefix ends at period {} but the new phase starts at {start}",
                last.period
            )));
        }
        step_capital(last.k, last.y, prefix.params.last().expect("aligned"))
    };
    let mut phases: Vec<Phase> = spec.phases.iter().filter(|p| p.start < start).cloned().collect();
    if let Some(last) = phases.last_mut() {
        last.end = last.end.min(start.saturating_sub(1));
    }
    let horizon = new_phase.end;
    phases.push(new_phase);
    Ok(ScenarioSpec {
        params: spec.params,
        base_tech: spec.base_tech,
        start: StartState { period: start, capital },
        corner_at_origin: spec.corner_at_origin,
        phases,
        horizon,
    })
}

/// Runs `new_phase` after `prefix` and returns the joined trajectory.
pub fn run_spliced(prefix: &Trajectory, spec: &ScenarioSpec, new_phase: Phase) -> Result<Trajectory> {
    let start = new_phase.start;
    let continuation = splice_phase(prefix, spec, new_phase)?;
    let suffix = run_scenario(&continuation)?;
    let head = prefix.slice(prefix.first_period().unwrap_or(0), start.saturating_sub(1));
    if head.is_empty() {
        return Ok(suffix);
    }
    head.join(suffix)
}

/// Spec that replays `spec` from the recorded state at `period`.
pub fn replay_spec(spec: &ScenarioSpec, trajectory: &Trajectory, period: u32) -> Result<ScenarioSpec> {
    let snap = trajectory
        .get(period)
        .ok_or_else(|| Error::InvalidScenario(format!("no snapshot at period {period}")))?;
    let mut replay = spec.clone();
    replay.start = StartState {
        period,
        capital: snap.k,
    };
    Ok(replay)
}

/// Transfer peak next to the realized transfer at one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LafferPoint {
    pub period: u32,
    pub labor: f64,
    pub transfer: f64,
    pub peak_labor: f64,
    pub peak_transfer: f64,
}

/// For every period of `traj`, the labor level that would maximize the CAP
/// transfer given that period's capital stock and technology. The regime is
/// detected at each trial labor level, so automation is priced in even where
/// the run itself started in the corner.
pub fn laffer_path(traj: &Trajectory) -> Result<Vec<LafferPoint>> {
    traj.snapshots
        .iter()
        .zip(&traj.params)
        .map(|(s, params)| {
            let ctx = PeriodContext {
                k: s.k,
                tech: s.tech,
                params,
                corner: false,
            };
            let peak = laffer_search(&ctx, (0.0, params.n))?;
            Ok(LafferPoint {
                period: s.period,
                labor: s.l,
                transfer: s.cap.g,
                peak_labor: peak.labor,
                peak_transfer: peak.transfer,
            })
        })
        .collect()
}
