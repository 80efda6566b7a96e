//! Paired economies. A higher savings rate on the same output path only
//! displaces labor; higher automation productivity on the same capital path
//! raises the return and shifts capital into automation.

use sa_growth::presets::baseline_spec;
use sa_growth::statics::{compare_productivity, compare_savings, pin_output_path, ComparisonReport};

fn show(report: &ComparisonReport) {
    println!("{} vs {}", report.label_low, report.label_high);
    for v in &report.verdicts {
        let status = if v.holds {
            "holds".to_string()
        } else {
            format!(
                "fails at {} periods, first T={}",
                v.failing_periods.len(),
                v.failing_periods[0]
            )
        };
        println!("  {:<32} {status}", v.claim);
    }
    if let Some(t) = report.path_lost_at {
        println!("  shared output path lost at T={t}");
    }
}

fn main() -> sa_growth::Result<()> {
    let pinned = pin_output_path(&baseline_spec())?;
    let savings = compare_savings(&pinned, 0.15, 0.25)?;
    show(&savings);
    let d = savings.deltas[30];
    println!("  T=30: dK={:.3} dL={:.3} dG={:.5}", d.k, d.l, d.g);

    let productivity = compare_productivity(&baseline_spec(), 1.0, 1.1)?;
    show(&productivity);
    println!(
        "  r K2 > alpha (n-L) w in {} of {} periods",
        productivity.transfer_condition_periods.len(),
        productivity.deltas.len()
    );
    Ok(())
}
