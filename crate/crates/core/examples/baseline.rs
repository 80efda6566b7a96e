//! The hundred-period baseline with labor pinned to a declining path:
//! prints a decade-by-decade summary and the transition criteria.

use sa_growth::presets::baseline_spec;
use sa_growth::scenario::{evaluate_criteria, run_scenario, CriteriaOptions, Window};

fn main() -> sa_growth::Result<()> {
    let traj = run_scenario(&baseline_spec())?;
    println!(
        "{:>4} {:>9} {:>9} {:>9} {:>6} {:>7} {:>6} {:>9}",
        "T", "Y", "K1", "K2", "L", "G", "t", "regime"
    );
    for s in traj.snapshots.iter().filter(|s| s.period % 10 == 0) {
        println!(
            "{:>4} {:>9.2} {:>9.2} {:>9.2} {:>6.1} {:>7.3} {:>6.3} {:>9}",
            s.period,
            s.y,
            s.k1,
            s.k2,
            s.l,
            s.cap.g,
            s.cap.tax,
            s.regime.as_str()
        );
    }
    let report = evaluate_criteria(&traj, Window::new(1, 100), &CriteriaOptions::default())?;
    for (name, ok) in report.verdicts.labeled() {
        println!("{name}: {}", if ok { "holds" } else { "fails" });
    }
    println!("weak abundance from T = {:?}", report.weak_abundance_period);
    Ok(())
}
