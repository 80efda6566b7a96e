//! The slow and fast roads to the post-labor economy. Both replay the
//! baseline output path for twenty periods and then follow their own labor
//! paths; the fast road runs out of labor at period 52.

use sa_growth::presets::{road_spec_from_baseline, Road};
use sa_growth::scenario::{evaluate_criteria, run_scenario, CriteriaOptions, Window};

fn main() -> sa_growth::Result<()> {
    for road in [Road::Slow, Road::Fast] {
        let traj = run_scenario(&road_spec_from_baseline(road)?)?;
        let last = traj.snapshots.last().expect("non-empty run");
        println!(
            "{} road: T={} Y={:.2} L={:.1} G={:.3} t={:.3} r(1-t)={:.4}",
            road.name(),
            last.period,
            last.y,
            last.l,
            last.cap.g,
            last.cap.tax,
            last.net_return()
        );
        let to = last.period.saturating_sub(1);
        let report = evaluate_criteria(&traj, Window::new(21, to), &CriteriaOptions::default())?;
        let flags: Vec<_> = report
            .verdicts
            .labeled()
            .iter()
            .map(|(n, ok)| format!("{n}={}", if *ok { "yes" } else { "no" }))
            .collect();
        println!("  criteria over 21..={to}: {}", flags.join(" "));
        if let Some(t) = report.post_labor_period {
            println!("  post-labor from T={t}");
        }
    }
    Ok(())
}
