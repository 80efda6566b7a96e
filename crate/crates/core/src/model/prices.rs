use serde::{Deserialize, Serialize};

use super::params::{ModelParams, TechState};
use crate::error::{Error, Result};

/// Factor prices: wage per unit of labor and return per unit of capital.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prices {
    pub w: f64,
    pub r: f64,
}

/// `α^α (1-α)^(1-α)`, the constant shared by both reduced forms.
pub fn scale_constant(alpha: f64) -> f64 {
    alpha.powf(alpha) * (1.0 - alpha).powf(1.0 - alpha)
}

/// Prices when automation capital is in use. They depend on technology
/// only, and always satisfy `w / r = A / B`.
pub fn reduced_prices(tech: &TechState, alpha: f64) -> Result<Prices> {
    if !(tech.b > 0.0) {
        return Err(Error::CornerRegimeRequired);
    }
    let h = scale_constant(alpha);
    let w = tech.a * h / tech.b.powf(alpha);
    let r = tech.b.powf(1.0 - alpha) * h;
    Ok(Prices { w, r })
}

/// Output and marginal-product prices of the pure Cobb-Douglas economy
/// (no automation capital): `Y = K^α (A L)^(1-α)`, `r = αY/K`, `w = (1-α)Y/L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerPrices {
    pub y: f64,
    pub w: f64,
    pub r: f64,
}

pub fn corner_prices(k: f64, l: f64, a: f64, alpha: f64) -> Result<CornerPrices> {
    if !(l > 0.0) {
        return Err(Error::NoProduction { labor: l });
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParameter {
            name: "K",
            reason: format!("corner regime needs positive capital, got {k}"),
        });
    }
    let y = k.powf(alpha) * (a * l).powf(1.0 - alpha);
    Ok(CornerPrices {
        y,
        w: (1.0 - alpha) * y / l,
        r: alpha * y / k,
    })
}

/// Capital accumulation: `K' = (1-θ) K + s Y`.
pub fn step_capital(k: f64, y: f64, params: &ModelParams) -> f64 {
    (1.0 - params.theta) * k + params.s * y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tech(a: f64, b: f64) -> TechState {
        TechState {
            a,
            b,
            q: 1.0,
            period: 0,
        }
    }

    #[test]
    fn reduced_prices_table1_decade_ten() {
        let p = reduced_prices(&tech(0.8605, 0.04526), 0.25).unwrap();
        assert!((p.r - 0.0559).abs() < 5e-5, "r = {}", p.r);
        assert!((p.w - 1.0627).abs() < 5e-4, "w = {}", p.w);
    }

    #[test]
    fn reduced_prices_at_calibration() {
        let p = reduced_prices(&tech(0.779_738_063_523_430_8, 0.038_986_903_176_171_54), 0.25).unwrap();
        assert!((p.w - 1.0).abs() < 1e-12, "w = {}", p.w);
        assert!((p.r - 0.05).abs() < 1e-12, "r = {}", p.r);
    }

    #[test]
    fn reduced_prices_need_positive_b() {
        assert!(matches!(
            reduced_prices(&tech(1.0, 0.0), 0.25),
            Err(Error::CornerRegimeRequired)
        ));
    }

    #[test]
    fn scaling_a_scales_wage_only() {
        let p1 = reduced_prices(&tech(0.8, 0.04), 0.3).unwrap();
        let p2 = reduced_prices(&tech(2.4, 0.04), 0.3).unwrap();
        assert!((p2.w / p1.w - 3.0).abs() < 1e-14);
        assert_eq!(p1.r, p2.r);
    }

    #[test]
    fn corner_prices_calibration_point() {
        let c = corner_prices(500.0, 75.0, 0.779, 0.25).unwrap();
        assert!((c.y - 100.0).abs() / 100.0 < 1e-3);
        assert!((c.r - 0.05).abs() / 0.05 < 1e-3);
        assert!((c.w - 1.0).abs() < 1e-3);
    }

    #[test]
    fn corner_homogeneity() {
        let base = corner_prices(500.0, 75.0, 0.779, 0.25).unwrap();
        let doubled_a = corner_prices(500.0, 75.0, 2.0 * 0.779, 0.25).unwrap();
        assert!((doubled_a.y / base.y - 2f64.powf(0.75)).abs() < 1e-12);
        let scaled = corner_prices(1500.0, 225.0, 0.779, 0.25).unwrap();
        assert!((scaled.y / base.y - 3.0).abs() < 1e-12);
        assert!((scaled.w - base.w).abs() < 1e-12);
        assert!((scaled.r - base.r).abs() < 1e-12);
    }

    #[test]
    fn corner_requires_labor() {
        assert!(matches!(
            corner_prices(500.0, 0.0, 0.779, 0.25),
            Err(Error::NoProduction { .. })
        ));
    }

    #[test]
    fn capital_step() {
        let p = ModelParams {
            alpha: 0.25,
            n: 100.0,
            s: 0.15,
            theta: 0.02,
            delta: 25.0,
            g_a: 0.0,
            g_b: 0.0,
            g_q: 0.0,
        };
        assert_eq!(step_capital(500.0, 100.0, &p), 505.0);
        let still = ModelParams {
            s: 0.0,
            theta: 0.0,
            ..p
        };
        assert_eq!(step_capital(731.5, 120.0, &still), 731.5);
    }
}
