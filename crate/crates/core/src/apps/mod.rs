//! Consequences of the relative-entropy bound for channel capacity, coding,
//! hypothesis testing and thermodynamic processes.

pub mod channel;
pub mod coding;
pub mod hypothesis;
pub mod process;

pub use channel::{
    blahut_arimoto, capacity_lower_bound, entropy_gap_bound, CapacityEstimate,
    CapacityLowerBound, Channel,
};
pub use coding::{wrong_code_penalty, Alphabet, WrongCodePenalty};
pub use hypothesis::{chernoff, universal_exponent_lb, Chernoff};
pub use process::{
    extractable_work, process_along, stepwise_process, ExtractableWork, PathSums, ProcessReport,
};

/// `G²/(2A) - G³/(3A²)` with `A = log²(d-1) + 4`, the cubic lower bound shared
/// by the capacity, redundancy and Chernoff estimates.
pub(crate) fn gap_formula(gap: f64, d: usize) -> f64 {
    let l = ((d - 1) as f64).ln();
    let a = l * l + 4.0;
    gap * gap / (2.0 * a) - gap.powi(3) / (3.0 * a * a)
}
