//! Entangled-state construction and exact measurement statistics.
//!
//! Three resources are modelled: the balanced GHZ-type energy eigenstate for a
//! given distribution sequence, the Bell pair, and the symmetric Dicke state.
//! Statevector paths are capped at [`DEFAULT_STATEVECTOR_LIMIT`] qubits unless the
//! caller passes a different limit; the closed-form samplers have no cap.

mod closed_form;
mod measure;
mod state;

pub use closed_form::{
    dicke_pair_correlation, dicke_visibility, ghz_fringe_phase, pair_probability,
    sample_bell_pair_outcomes, sample_dicke_pair, sample_ghz_closed_form, GhzParityLaw,
};
pub use measure::{outcome_distribution, sample_outcome, MeasurementAngles, OutcomeSampler, OutcomeString};
pub use state::{
    bits_to_index, build_bell_pair, build_dicke_state, build_ghz_state, PureState,
    DEFAULT_STATEVECTOR_LIMIT,
};
