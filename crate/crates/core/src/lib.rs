//! Growth model with automation capital that substitutes for labor, two
//! ways of financing a basic income, and tools to run, calibrate and compare
//! multi-phase transition scenarios.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibration;
pub mod closure;
pub mod error;
pub mod io;
pub mod model;
pub mod presets;
pub mod scenario;
pub mod search;
pub mod statics;
pub mod sweep;

pub use error::{Error, Result};
