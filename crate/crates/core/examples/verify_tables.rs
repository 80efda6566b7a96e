//! Runs the shipped presets and compares them cell by cell with the
//! published tables.

use sa_growth::io::{verify_tables, GoldenTable, TableId, VerifyOptions};
use sa_growth::presets::{baseline_spec, first_phase_spec, road_spec_from_baseline, Road};
use sa_growth::scenario::run_scenario;

fn main() -> sa_growth::Result<()> {
    let runs = [
        (TableId::T1, baseline_spec(), VerifyOptions::loose_transfers()),
        (TableId::T2, first_phase_spec(), VerifyOptions::default()),
        (
            TableId::T3a,
            road_spec_from_baseline(Road::Slow)?,
            VerifyOptions::loose_transfers(),
        ),
        (
            TableId::T3b,
            road_spec_from_baseline(Road::Fast)?,
            VerifyOptions::loose_transfers(),
        ),
    ];
    for (id, spec, opts) in runs {
        let traj = run_scenario(&spec)?;
        let report = verify_tables(&traj, &GoldenTable::load(id), &opts)?;
        let bad: Vec<_> = report.mismatches().collect();
        println!("{id}: {} cells, {} mismatches", report.checks.len(), bad.len());
        for c in bad {
            println!("  {c}");
        }
    }
    Ok(())
}
