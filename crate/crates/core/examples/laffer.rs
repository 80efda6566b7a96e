//! Transfer-maximizing labor levels. The first block scans `G(L)` at the
//! starting capital stock; the second runs a scenario that sits on the
//! Laffer peak every period.

use sa_growth::closure::{laffer_max, ClosureRule};
use sa_growth::model::transfer_at_labor;
use sa_growth::presets::{baseline_calibration, baseline_params, baseline_spec};
use sa_growth::scenario::{laffer_path, run_scenario, Phase, ScenarioSpec};

fn main() -> sa_growth::Result<()> {
    let cal = baseline_calibration();
    let params = baseline_params(&cal);
    let tech = cal.tech();
    let k = cal.targets.k0;
    for l in [40.0, 50.0, 55.0, 58.0, 60.0, 65.0, 75.0] {
        let g = transfer_at_labor(k, &tech, &params, l, false)?;
        println!("L = {l:>5.1}  G = {g:.5}");
    }
    let peak = laffer_max(k, &tech, &params)?;
    println!(
        "peak: L* = {:.3}, G* = {:.5}, t = {:.4}\n",
        peak.l, peak.cap.g, peak.cap.tax
    );

    // Distance from the peak along the baseline.
    let traj = run_scenario(&baseline_spec())?;
    for p in laffer_path(&traj)?.iter().step_by(20) {
        println!(
            "T={:>3} L={:>5.1} G={:.3}  peak at L={:.1} G={:.3}",
            p.period, p.labor, p.transfer, p.peak_labor, p.peak_transfer
        );
    }

    let spec = ScenarioSpec {
        corner_at_origin: false,
        ..ScenarioSpec::calibrated(&cal, params, vec![Phase::new(0, 30, ClosureRule::laffer_max())], 30)
    };
    let run = run_scenario(&spec)?;
    let s = run.get(30).expect("period 30");
    println!("\nalways at the peak, T=30: L={:.2} G={:.3} Y={:.2}", s.l, s.cap.g, s.y);
    Ok(())
}
