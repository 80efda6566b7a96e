//! Loads a scenario file, runs it and writes the CSV, charts and manifest
//! to a temporary directory.

use std::path::Path;

use sa_growth::io::{emit_outputs, load_config, EmitFlags, Manifest};
use sa_growth::scenario::{evaluate_criteria, run_scenario};

fn main() -> sa_growth::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/slow_road.cfg");
    let cfg = load_config(&path)?;
    println!("config hash {}", cfg.hash());
    let traj = run_scenario(&cfg.scenario)?;
    let criteria = evaluate_criteria(&traj, cfg.criteria.window, &cfg.criteria.options)?;
    let dir = std::env::temp_dir().join("sa-growth-config-run");
    let manifest = Manifest::new(cfg.hash(), traj, Some(criteria));
    let flags = EmitFlags {
        csv: true,
        charts: true,
    };
    for f in emit_outputs(&dir, manifest, flags)? {
        println!("wrote {}", f.display());
    }
    Ok(())
}
