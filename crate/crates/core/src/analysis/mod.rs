//! Cost accounting against a fully-switched baseline, transfer-time
//! comparison, concatenation counting and timing-error robustness.

mod cost;
mod robustness;

pub use cost::{
    christandl_transfer_bound, concat_cost, core_qft_census, cost_of_program, quadratic_fit, switched_qft_cost,
    switched_qft_schedule, switched_transfer_time, ConcatCost, CostReport, SwitchEvent, TransferTime,
    MAX_CONCAT_LEVELS,
};
pub use robustness::{
    robustness_fit, robustness_fit_with, timing_error, RobustnessReport, TimingProbe, EPSILON_FLOOR, MAX_DELTA_T,
};
