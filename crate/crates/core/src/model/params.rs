use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structural constants and technology growth rates of the economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Exponent of fixed capital in production, in (0, 1).
    pub alpha: f64,
    /// Population; each person supplies at most one unit of labor per period.
    pub n: f64,
    /// Savings rate out of total income.
    pub s: f64,
    /// Depreciation rate per period.
    pub theta: f64,
    /// Labor-supply sensitivity to the transfer / net-wage ratio.
    pub delta: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub g_q: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        fn bad(name: &'static str, reason: impl Into<String>) -> Error {
            Error::InvalidParameter {
                name,
                reason: reason.into(),
            }
        }
        let finite = [
            ("alpha", self.alpha),
            ("n", self.n),
            ("s", self.s),
            ("theta", self.theta),
            ("delta", self.delta),
            ("g_a", self.g_a),
            ("g_b", self.g_b),
            ("g_q", self.g_q),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(bad(name, "must be finite"));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(bad("alpha", format!("{} not in (0, 1)", self.alpha)));
        }
        if !(self.s >= 0.0 && self.s < 1.0) {
            return Err(bad("s", format!("{} not in [0, 1)", self.s)));
        }
        if !(self.theta >= 0.0 && self.theta < 1.0) {
            return Err(bad("theta", format!("{} not in [0, 1)", self.theta)));
        }
        if self.delta <= 0.0 {
            return Err(bad("delta", format!("{} must be positive", self.delta)));
        }
        if self.n <= 0.0 {
            return Err(bad("n", format!("{} must be positive", self.n)));
        }
        for (name, g) in [("g_a", self.g_a), ("g_b", self.g_b), ("g_q", self.g_q)] {
            if g <= -1.0 {
                return Err(bad(name, format!("{g} must exceed -1")));
            }
        }
        Ok(())
    }

    /// Elasticity of labor supply at a point on the supply curve, `(n - L) / L`.
    pub fn supply_elasticity(&self, labor: f64) -> f64 {
        (self.n - labor) / labor
    }
}

/// Productivity triple at one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TechState {
    /// Output per unit of labor.
    pub a: f64,
    /// Output per unit of automation capital.
    pub b: f64,
    /// Labor-quality index.
    pub q: f64,
    pub period: u32,
}

impl TechState {
    pub fn new(a: f64, b: f64, q: f64, period: u32) -> Result<Self> {
        let tech = TechState { a, b, q, period };
        tech.validate()?;
        Ok(tech)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "A",
                reason: format!("{} must be positive", self.a),
            });
        }
        if !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "B",
                reason: format!("{} must be non-negative", self.b),
            });
        }
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "Q",
                reason: format!("{} must be positive", self.q),
            });
        }
        Ok(())
    }

    /// Geometric extrapolation of `self` (taken as the level at its own period)
    /// to `period`, at the growth rates in `params`.
    pub fn extrapolate(&self, params: &ModelParams, period: u32) -> TechState {
        let steps = period as i32 - self.period as i32;
        TechState {
            a: self.a * (1.0 + params.g_a).powi(steps),
            b: self.b * (1.0 + params.g_b).powi(steps),
            q: self.q * (1.0 + params.g_q).powi(steps),
            period,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> ModelParams {
        ModelParams {
            alpha: 0.25,
            n: 100.0,
            s: 0.15,
            theta: 0.02,
            delta: 25.0,
            g_a: 0.01,
            g_b: 0.015,
            g_q: 0.005,
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let mut p = table1();
        p.s = 1.5;
        assert!(matches!(p.validate(), Err(Error::InvalidParameter { name: "s", .. })));
        let mut p = table1();
        p.alpha = 1.0;
        assert!(p.validate().is_err());
        let mut p = table1();
        p.delta = 0.0;
        assert!(p.validate().is_err());
        assert!(table1().validate().is_ok());
    }

    #[test]
    fn elasticity_at_calibration_point_is_one_third() {
        let e = table1().supply_elasticity(75.0);
        assert!((e - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn extrapolation_is_geometric() {
        let t0 = TechState::new(0.8, 0.04, 1.0, 0).unwrap();
        let t = t0.extrapolate(&table1(), 100);
        assert!((t.a / 0.8 - 1.01f64.powi(100)).abs() < 1e-12);
        assert!((t.b / 0.04 - 1.015f64.powi(100)).abs() < 1e-12);
        let back = t.extrapolate(&table1(), 0);
        assert!((back.a - 0.8).abs() < 1e-14);
    }

    #[test]
    fn tech_state_rejects_nonpositive_a() {
        assert!(TechState::new(0.0, 0.1, 1.0, 0).is_err());
        assert!(TechState::new(1.0, 0.0, 1.0, 0).is_ok());
    }
}
