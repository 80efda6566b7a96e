//! Calibrates the starting economy from target observables and prints the
//! implied technology levels and supply sensitivity.

use sa_growth::calibration::{calibrate, CalibrationTargets};

fn main() -> sa_growth::Result<()> {
    let targets = CalibrationTargets::baseline();
    let cal = calibrate(&targets)?;
    println!("A0    = {:.10}", cal.a0);
    println!("B0    = {:.10}", cal.b0);
    println!("delta = {:.6}", cal.delta);
    println!(
        "w0 = {:.6}, r0 = {:.6} (w/r = A/B = {:.4})",
        cal.w0,
        cal.r0,
        cal.a0 / cal.b0
    );
    println!("supply elasticity at the start: {:.4}", cal.supply_elasticity());

    // A different starting point: a richer, more unequal economy.
    let alt = CalibrationTargets {
        y0: 150.0,
        k0: 900.0,
        t0: 0.3,
        ..targets
    };
    let cal = calibrate(&alt)?;
    println!(
        "\nalternative: A0 = {:.6}, B0 = {:.6}, delta = {:.4}",
        cal.a0, cal.b0, cal.delta
    );
    Ok(())
}
