//! Initial technology and behavioral parameters from target observables.
//!
//! The starting economy has no automation capital, so output is plain
//! Cobb-Douglas in `K` and `L`. `A` is chosen to hit the output target, `B`
//! is set at the adoption margin (`w/r = A/B`), and `δ` makes the supply
//! equation return the labor target at the target transfer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{corner_prices, ModelParams, TechState};

/// Observables the starting period must reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTargets {
    pub y0: f64,
    pub k0: f64,
    pub l0: f64,
    pub n: f64,
    /// Initial CAP tax share `nG/Y`.
    pub t0: f64,
    /// Initial per-person transfer.
    pub g0: f64,
    pub q0: f64,
    pub alpha: f64,
}

impl CalibrationTargets {
    /// Starting point of the baseline scenario.
    pub fn baseline() -> Self {
        CalibrationTargets {
            y0: 100.0,
            k0: 500.0,
            l0: 75.0,
            n: 100.0,
            t0: 0.5,
            g0: 0.5,
            q0: 1.0,
            alpha: 0.25,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("y0", self.y0),
            ("k0", self.k0),
            ("l0", self.l0),
            ("n", self.n),
            ("q0", self.q0),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("{v} must be positive"),
                });
            }
        }
        if self.l0 > self.n {
            return Err(Error::InconsistentTargets(format!(
                "L0 = {} exceeds population {}",
                self.l0, self.n
            )));
        }
        if !(self.t0 > 0.0 && self.t0 < 1.0) {
            return Err(Error::InvalidParameter {
                name: "t0",
                reason: format!("{} not in (0, 1)", self.t0),
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: format!("{} not in (0, 1)", self.alpha),
            });
        }
        if !(self.g0 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "g0",
                reason: format!("{} must be non-negative", self.g0),
            });
        }
        Ok(())
    }
}

/// Inverts `Y0 = K0^α (A L0)^(1-α)` for `A`.
pub fn calibrate_a(y0: f64, k0: f64, l0: f64, alpha: f64) -> f64 {
    (y0 / k0.powf(alpha)).powf(1.0 / (1.0 - alpha)) / l0
}

/// `B0 = A0 r0 / w0`: automation sits exactly at the adoption margin.
pub fn calibrate_b_parity(a0: f64, r0: f64, w0: f64) -> Result<f64> {
    if !(w0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "w0",
            reason: format!("{w0} must be positive"),
        });
    }
    Ok(a0 * r0 / w0)
}

/// `δ = (n - L0) w0 (1 - t0) Q0 / G0`.
pub fn calibrate_delta(n: f64, l0: f64, w0: f64, t0: f64, q0: f64, g0: f64) -> Result<f64> {
    if g0 == 0.0 {
        if l0 < n {
            return Err(Error::InconsistentTargets(
                "a zero transfer cannot hold labor below the population".into(),
            ));
        }
        return Err(Error::InconsistentTargets(
            "sensitivity is unidentified with zero transfer and full employment".into(),
        ));
    }
    Ok((n - l0) * w0 * (1.0 - t0) * q0 / g0)
}

/// Full calibration result, kept at full precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub targets: CalibrationTargets,
    pub a0: f64,
    pub b0: f64,
    pub delta: f64,
    pub w0: f64,
    pub r0: f64,
    /// `δ` came out as zero (full employment at the start): the supply
    /// equation then carries no information.
    pub degenerate: bool,
}

impl Calibration {
    pub fn tech(&self) -> TechState {
        TechState {
            a: self.a0,
            b: self.b0,
            q: self.targets.q0,
            period: 0,
        }
    }

    /// Model parameters with the calibrated `α`, `n` and `δ` and the given
    /// savings, depreciation and growth rates.
    pub fn params(&self, s: f64, theta: f64, g_a: f64, g_b: f64, g_q: f64) -> ModelParams {
        ModelParams {
            alpha: self.targets.alpha,
            n: self.targets.n,
            s,
            theta,
            delta: self.delta,
            g_a,
            g_b,
            g_q,
        }
    }

    /// Labor-supply elasticity `(n - L0) / L0` at the starting point.
    pub fn supply_elasticity(&self) -> f64 {
        (self.targets.n - self.targets.l0) / self.targets.l0
    }
}

pub fn calibrate(targets: &CalibrationTargets) -> Result<Calibration> {
    targets.validate()?;
    let CalibrationTargets {
        y0,
        k0,
        l0,
        n,
        t0,
        g0,
        q0,
        alpha,
    } = *targets;
    let a0 = calibrate_a(y0, k0, l0, alpha);
    let prices = corner_prices(k0, l0, a0, alpha)?;
    let b0 = calibrate_b_parity(a0, prices.r, prices.w)?;
    let (delta, degenerate) = if l0 == n {
        (0.0, true)
    } else {
        (calibrate_delta(n, l0, prices.w, t0, q0, g0)?, false)
    };
    Ok(Calibration {
        targets: *targets,
        a0,
        b0,
        delta,
        w0: prices.w,
        r0: prices.r,
        degenerate,
    })
}
