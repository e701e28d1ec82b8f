//! From outcome products to time differences, adjustments and error predictions.

mod accumulator;
mod central;
mod efficiency;
mod fringe;
mod ghz;
mod report;

pub use accumulator::{CellKey, CellStats, FringeAccumulator};
pub use central::{estimate_dicke_offsets, estimate_pairs_offsets};
pub use efficiency::{analytic_adjustment_stderr, qubit_efficiency};
pub use fringe::{estimate_fringe, invert_phase, two_quadrature_penalty, EstimatorMode, FringeEstimate, PhaseEstimate};
pub use ghz::{
    adjustment_from_estimates, estimate_ghz_adjustments, estimate_time_differences,
    propagate_adjustment_error, sequence_contrast, TimeDifferenceEstimate,
};
pub use report::{recenter_to_standard_clock, AdjustmentReport, PartyAdjustment, Reference};
