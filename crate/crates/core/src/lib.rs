//! Simulation of multi-party quantum clock synchronization.
//!
//! Three protocols are modelled end to end:
//!
//! * **GHZ**: every round distributes a balanced GHZ-type energy eigenstate to
//!   all N parties, grouped by a distribution sequence. The product of all N
//!   outcomes carries a fringe in the signed time difference of that grouping,
//!   and combining every grouping yields each party's offset from the average.
//! * **Pairs**: N−1 Bell pairs per round, each shared between one party and
//!   the central clock.
//! * **Dicke**: one N-qubit symmetric Dicke state per round, read out through
//!   pair correlations with the central qubit.
//!
//! The crate is layered bottom up:
//!
//! * [`engine`]: statevectors, exact outcome distributions and closed-form samplers.
//! * [`protocol`]: distribution sequences, schedules, rounds and the broadcast log.
//! * [`estimation`]: fringe inversion, offset reconstruction, error and efficiency formulas.
//! * [`experiments`]: seeded Monte Carlo trials, sweeps and sampler validation.
//! * [`cli`]: the config file format and the `run` / `sweep` / `validate` commands.
//!
//! ```
//! use qclocksync::experiments::{run_trial, ExperimentConfig};
//! use qclocksync::protocol::Protocol;
//!
//! let config = ExperimentConfig::new(Protocol::Ghz, 4, 6 * 256)
//!     .with_offsets(vec![0.1, -0.05, 0.0, 0.02]);
//! let report = run_trial(&config, 0).unwrap();
//! for party in &report.parties {
//!     let err = party.error().unwrap();
//!     assert!(err.abs() < 5.0 * party.analytic_stderr);
//! }
//! ```

pub mod cli;
pub mod engine;
pub mod error;
pub mod estimation;
pub mod experiments;
pub mod protocol;
pub mod seed;

pub use error::{Result, SyncError};
