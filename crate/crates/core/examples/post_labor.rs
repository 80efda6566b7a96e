//! Labor pinned to reach zero: output becomes `rK`, the wage share vanishes
//! and the CAP tax becomes a policy choice.

use sa_growth::closure::{ClosureRule, Schedule};
use sa_growth::model::Regime;
use sa_growth::presets::{baseline_calibration, baseline_params};
use sa_growth::scenario::{run_scenario, Phase, ScenarioSpec};

fn main() -> sa_growth::Result<()> {
    let cal = baseline_calibration();
    let params = baseline_params(&cal);
    for tax in [0.3, 0.5, 0.7] {
        let labor =
            ClosureRule::pinned_labor(Schedule::Linear(vec![(0, 75.0), (30, 0.0), (50, 0.0)])).with_post_labor_tax(tax);
        let spec = ScenarioSpec::calibrated(&cal, params, vec![Phase::new(0, 50, labor)], 50);
        let traj = run_scenario(&spec)?;
        let s = traj.get(40).expect("period 40");
        assert_eq!(s.regime, Regime::PostLabor);
        println!(
            "tax {tax}: T=40 Y={:.2} rK={:.2} K1/K={:.3} G={:.3} r(1-t)={:.4}",
            s.y,
            s.r * s.k,
            s.k1 / s.k,
            s.cap.g,
            s.net_return()
        );
    }
    Ok(())
}
