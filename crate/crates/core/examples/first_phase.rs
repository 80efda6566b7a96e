//! The first ten periods at constant labor, where automation capital starts
//! to accumulate. Shows both financing regimes side by side.

use sa_growth::presets::first_phase_spec;
use sa_growth::scenario::run_scenario;

fn main() -> sa_growth::Result<()> {
    let traj = run_scenario(&first_phase_spec())?;
    println!(
        "{:>3} {:>8} {:>8} {:>7} {:>7} {:>7} {:>7}",
        "T", "Y", "K2", "G_cap", "t", "G_ms", "t_w"
    );
    for s in &traj.snapshots {
        let (gm, tw) = s.ms.map_or((f64::NAN, f64::NAN), |m| (m.g, m.tax));
        println!(
            "{:>3} {:>8.3} {:>8.3} {:>7.4} {:>7.4} {:>7.4} {:>7.4}",
            s.period, s.y, s.k2, s.cap.g, s.cap.tax, gm, tw
        );
    }
    Ok(())
}
