//! Period-level model: prices, allocation, transfers and capital accumulation.

mod params;
mod period;
mod prices;
mod transfer;

pub use params::{ModelParams, TechState};
pub use period::{
    allocate_labor, allocate_output, allocate_tax, allocate_transfer, corner_allocation, interior_period,
    post_labor_allocation, transfer_at_labor, Allocation, Interior, LaborOrOutput, Regime, Residuals, Snapshot,
};
pub use prices::{corner_prices, reduced_prices, scale_constant, step_capital, CornerPrices, Prices};
pub use transfer::{
    pinned_transfer_roots, post_labor_cap_transfer, solve_cap_transfer, solve_ms_transfer, PinnedTransferRoots,
    TransferSolution,
};
