//! Grid over the savings rate and automation growth on the baseline,
//! printed as CSV.

use sa_growth::presets::baseline_spec;
use sa_growth::scenario::{CriteriaOptions, Window};
use sa_growth::sweep::{sweep, sweep_csv, SweepAxis};

fn main() -> sa_growth::Result<()> {
    let axes: Vec<SweepAxis> = vec!["s=0.15:0.3:4".parse()?, "g_b=0.01,0.02,0.03".parse()?];
    let results = sweep(
        &baseline_spec(),
        &axes,
        Window::new(1, 100),
        &CriteriaOptions::default(),
    );
    print!("{}", sweep_csv(&axes, &results));
    Ok(())
}
