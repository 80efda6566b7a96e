use serde::{Deserialize, Serialize};

use crate::calibration::Calibration;
use crate::closure::ClosureRule;
use crate::error::{Error, Result};
use crate::model::{ModelParams, TechState};

/// Parameter overrides applied while a phase is active.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamOverrides {
    pub s: Option<f64>,
    pub g_a: Option<f64>,
    pub g_b: Option<f64>,
    pub g_q: Option<f64>,
}

impl ParamOverrides {
    pub fn apply(&self, base: &ModelParams) -> ModelParams {
        ModelParams {
            s: self.s.unwrap_or(base.s),
            g_a: self.g_a.unwrap_or(base.g_a),
            g_b: self.g_b.unwrap_or(base.g_b),
            g_q: self.g_q.unwrap_or(base.g_q),
            ..*base
        }
    }
}

/// Where a phase's technology path is extrapolated from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TechAnchor {
    /// `A(T) = A(0) (1 + g_A)^T` at the phase's own rates.
    #[default]
    Origin,
    /// Compound from the level reached at the end of the previous phase.
    Continue,
}

/// A contiguous block of periods `start..=end` with its own parameters and closure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub start: u32,
    pub end: u32,
    #[serde(default)]
    pub overrides: ParamOverrides,
    #[serde(default)]
    pub tech_anchor: TechAnchor,
    pub closure: ClosureRule,
}

impl Phase {
    pub fn new(start: u32, end: u32, closure: ClosureRule) -> Self {
        Phase {
            start,
            end,
            overrides: ParamOverrides::default(),
            tech_anchor: TechAnchor::Origin,
            closure,
        }
    }

    pub fn with_overrides(mut self, overrides: ParamOverrides) -> Self {
        self.overrides = overrides;
        self
    }

    pub fn with_anchor(mut self, anchor: TechAnchor) -> Self {
        self.tech_anchor = anchor;
        self
    }
}

/// First period of a run and the capital stock it starts with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StartState {
    pub period: u32,
    pub capital: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    /// Parameters before phase overrides.
    pub params: ModelParams,
    /// Technology at period 0.
    pub base_tech: TechState,
    pub start: StartState,
    /// Solve period 0 with no automation capital regardless of parity.
    pub corner_at_origin: bool,
    pub phases: Vec<Phase>,
    /// Last period simulated. The last phase extends to it if needed.
    pub horizon: u32,
}

impl ScenarioSpec {
    /// Scenario starting from a calibrated period 0.
    pub fn calibrated(calibration: &Calibration, params: ModelParams, phases: Vec<Phase>, horizon: u32) -> Self {
        ScenarioSpec {
            params,
            base_tech: calibration.tech(),
            start: StartState {
                period: 0,
                capital: calibration.targets.k0,
            },
            corner_at_origin: true,
            phases,
            horizon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.base_tech.validate()?;
        if self.base_tech.period != 0 {
            return Err(Error::InvalidScenario(
                "base technology must be stated at period 0".into(),
            ));
        }
        if !(self.start.capital >= 0.0 && self.start.capital.is_finite()) {
            return Err(Error::InvalidScenario(format!(
                "starting capital {} must be non-negative",
                self.start.capital
            )));
        }
        let first = self
            .phases
            .first()
            .ok_or_else(|| Error::InvalidScenario("at least one phase is required".into()))?;
        if first.start > self.start.period {
            return Err(Error::InvalidScenario(format!(
                "first phase starts at {} after the start period {}",
                first.start, self.start.period
            )));
        }
        if self.horizon < self.start.period {
            return Err(Error::InvalidScenario(format!(
                "horizon {} precedes start period {}",
                self.horizon, self.start.period
            )));
        }
        for (i, phase) in self.phases.iter().enumerate() {
            if phase.end < phase.start {
                return Err(Error::InvalidScenario(format!(
                    "phase {i} ends ({}) before it starts ({})",
                    phase.end, phase.start
                )));
            }
            if let Some(next) = self.phases.get(i + 1) {
                if next.start != phase.end + 1 {
                    return Err(Error::InvalidScenario(format!(
                        "phases {i} and {} are not contiguous ({}..={} then {}..)",
                        i + 1,
                        phase.start,
                        phase.end,
                        next.start
                    )));
                }
            }
            phase.overrides.apply(&self.params).validate()?;
            phase.closure.validate()?;
        }
        Ok(())
    }

    /// Index of the phase active at `period`.
    pub fn phase_index(&self, period: u32) -> usize {
        self.phases.iter().rposition(|p| p.start <= period).unwrap_or(0)
    }

    pub fn phase_at(&self, period: u32) -> &Phase {
        &self.phases[self.phase_index(period)]
    }

    pub fn params_at(&self, period: u32) -> ModelParams {
        self.phase_at(period).overrides.apply(&self.params)
    }

    /// Technology at `period`; a pure function of the spec.
    pub fn tech_at(&self, period: u32) -> TechState {
        let idx = self.phase_index(period);
        self.tech_in_phase(idx, period)
    }

    fn tech_in_phase(&self, idx: usize, period: u32) -> TechState {
        let phase = &self.phases[idx];
        let params = phase.overrides.apply(&self.params);
        match phase.tech_anchor {
            TechAnchor::Continue if idx > 0 && phase.start > 0 => {
                let prev = self.tech_in_phase(idx - 1, phase.start - 1);
                prev.extrapolate(&params, period)
            }
            _ => self.base_tech.extrapolate(&params, period),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::Schedule;

    fn spec(phases: Vec<Phase>) -> ScenarioSpec {
        ScenarioSpec {
            params: ModelParams {
                alpha: 0.25,
                n: 100.0,
                s: 0.15,
                theta: 0.02,
                delta: 25.0,
                g_a: 0.007,
                g_b: 0.007,
                g_q: 0.005,
            },
            base_tech: TechState {
                a: 0.78,
                b: 0.039,
                q: 1.0,
                period: 0,
            },
            start: StartState {
                period: 0,
                capital: 500.0,
            },
            corner_at_origin: true,
            phases,
            horizon: 30,
        }
    }

    fn labor() -> ClosureRule {
        ClosureRule::pinned_labor(Schedule::Constant(75.0))
    }

    #[test]
    fn rejects_gaps_and_overlaps() {
        let gap = spec(vec![Phase::new(0, 10, labor()), Phase::new(12, 30, labor())]);
        assert!(gap.validate().is_err());
        let overlap = spec(vec![Phase::new(0, 10, labor()), Phase::new(10, 30, labor())]);
        assert!(overlap.validate().is_err());
        let ok = spec(vec![Phase::new(0, 10, labor()), Phase::new(11, 30, labor())]);
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn origin_anchor_re_extrapolates_from_zero() {
        let fast = ParamOverrides {
            g_b: Some(0.025),
            ..Default::default()
        };
        let s = spec(vec![
            Phase::new(0, 19, labor()),
            Phase::new(20, 30, labor()).with_overrides(fast),
        ]);
        let t = s.tech_at(25);
        assert!((t.b - 0.039 * 1.025f64.powi(25)).abs() < 1e-15);
        let s = spec(vec![
            Phase::new(0, 19, labor()),
            Phase::new(20, 30, labor())
                .with_overrides(fast)
                .with_anchor(TechAnchor::Continue),
        ]);
        let t = s.tech_at(25);
        let expected = 0.039 * 1.007f64.powi(19) * 1.025f64.powi(6);
        assert!((t.b - expected).abs() < 1e-14);
    }

    #[test]
    fn overrides_replace_only_given_fields() {
        let s = spec(vec![Phase::new(0, 30, labor()).with_overrides(ParamOverrides {
            s: Some(0.25),
            ..Default::default()
        })]);
        let p = s.params_at(3);
        assert_eq!(p.s, 0.25);
        assert_eq!(p.g_a, 0.007);
    }
}
