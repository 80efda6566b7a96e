//! Shipped scenarios: the baseline run, the first phase, and the slow and
//! fast roads of the second phase.
//!
//! Labor paths follow the published decade values, interpolated linearly.
//! The two roads replay the baseline output path until period 19 and pin
//! labor from period 20 on.

use crate::calibration::{calibrate, Calibration, CalibrationTargets};
use crate::closure::{ClosureRule, Schedule};
use crate::error::Result;
use crate::model::ModelParams;
use crate::scenario::{run_scenario, Phase, ScenarioSpec, Trajectory};

pub const BASELINE_LABOR: [(u32, f64); 11] = [
    (0, 75.0),
    (10, 73.0),
    (20, 71.0),
    (30, 69.0),
    (40, 67.0),
    (50, 64.0),
    (60, 60.0),
    (70, 56.0),
    (80, 51.0),
    (90, 44.0),
    (100, 36.0),
];

pub const SLOW_ROAD_LABOR: [(u32, f64); 7] = [
    (20, 51.0),
    (30, 41.0),
    (40, 30.0),
    (50, 20.0),
    (51, 19.0),
    (60, 10.0),
    (68, 1.0),
];

/// Ends one period past the last printed row, where labor reaches zero.
pub const FAST_ROAD_LABOR: [(u32, f64); 6] = [(20, 60.0), (30, 48.0), (40, 30.0), (50, 4.0), (51, 1.0), (52, 0.0)];

/// First period of the second phase.
pub const ROAD_SPLICE: u32 = 20;

pub const THETA: f64 = 0.02;
pub const G_Q: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Road {
    Slow,
    Fast,
}

impl Road {
    pub fn name(&self) -> &'static str {
        match self {
            Road::Slow => "slow",
            Road::Fast => "fast",
        }
    }

    /// `(s, g_A, g_B)` of the second phase.
    pub fn rates(&self) -> (f64, f64, f64) {
        match self {
            Road::Slow => (0.25, 0.018, 0.018),
            Road::Fast => (0.25, 0.007, 0.025),
        }
    }

    pub fn labor_knots(&self) -> &'static [(u32, f64)] {
        match self {
            Road::Slow => &SLOW_ROAD_LABOR,
            Road::Fast => &FAST_ROAD_LABOR,
        }
    }

    pub fn horizon(&self) -> u32 {
        self.labor_knots().last().expect("non-empty").0
    }
}

pub fn baseline_calibration() -> Calibration {
    calibrate(&CalibrationTargets::baseline()).expect("baseline targets are valid")
}

pub fn baseline_params(cal: &Calibration) -> ModelParams {
    cal.params(0.15, THETA, 0.01, 0.015, G_Q)
}

/// 100 periods with labor pinned to the interpolated baseline path.
pub fn baseline_spec() -> ScenarioSpec {
    let cal = baseline_calibration();
    let closure = ClosureRule::pinned_labor(Schedule::Linear(BASELINE_LABOR.to_vec()));
    ScenarioSpec::calibrated(&cal, baseline_params(&cal), vec![Phase::new(0, 100, closure)], 100)
}

/// Ten periods of slow, balanced technical change at constant labor.
pub fn first_phase_spec() -> ScenarioSpec {
    let cal = baseline_calibration();
    let params = cal.params(0.15, THETA, 0.007, 0.007, G_Q);
    let closure = ClosureRule::pinned_labor(Schedule::Constant(75.0));
    ScenarioSpec::calibrated(&cal, params, vec![Phase::new(0, 10, closure)], 10)
}

/// A road of the second phase, replaying `output_path` (indexed from
/// period 0) before the splice.
pub fn road_spec(road: Road, output_path: &[f64]) -> ScenarioSpec {
    let cal = baseline_calibration();
    let (s, g_a, g_b) = road.rates();
    let params = cal.params(s, THETA, g_a, g_b, G_Q);
    let prefix = Schedule::Values(
        output_path
            .iter()
            .take(ROAD_SPLICE as usize)
            .enumerate()
            .map(|(t, y)| (t as u32, *y))
            .collect(),
    );
    let horizon = road.horizon();
    let phases = vec![
        Phase::new(0, ROAD_SPLICE - 1, ClosureRule::pinned_output(prefix)),
        Phase::new(
            ROAD_SPLICE,
            horizon,
            ClosureRule::pinned_labor(Schedule::Linear(road.labor_knots().to_vec())),
        ),
    ];
    ScenarioSpec::calibrated(&cal, params, phases, horizon)
}

pub fn output_path(traj: &Trajectory) -> Vec<f64> {
    traj.snapshots.iter().map(|s| s.y).collect()
}

/// Road spec built on a fresh baseline run.
pub fn road_spec_from_baseline(road: Road) -> Result<ScenarioSpec> {
    let baseline = run_scenario(&baseline_spec())?;
    Ok(road_spec(road, &output_path(&baseline)))
}
