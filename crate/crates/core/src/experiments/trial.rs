use super::config::{ExperimentConfig, OffsetSpec};
use crate::error::Result;
use crate::estimation::{
    estimate_dicke_offsets, estimate_ghz_adjustments, estimate_pairs_offsets, AdjustmentReport,
    FringeAccumulator,
};
use crate::protocol::{
    make_cell_schedule, run_round_set_pairs, BroadcastLog, ClockEnsemble, DickeRunner, GhzRunner,
    MeasurementRecord, Protocol,
};
use crate::seed::{derive_seed, stream_rng};

const OFFSET_STREAM: u64 = 0;
const SCHEDULE_STREAM: u64 = 1;
const ROUND_STREAM_BASE: u64 = 2;

/// Everything one trial produced.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub ensemble: ClockEnsemble,
    pub accumulator: FringeAccumulator,
    pub log: Option<BroadcastLog>,
    pub report: AdjustmentReport,
}

/// Hidden offsets for trial `trial_index`.
pub fn trial_ensemble(config: &ExperimentConfig, trial_index: usize) -> Result<ClockEnsemble> {
    let trial_seed = derive_seed(config.seed, trial_index as u64);
    match &config.offsets {
        OffsetSpec::Explicit(t) => ClockEnsemble::new(config.omega, t.clone()),
        OffsetSpec::Random { .. } => {
            let spread = config.effective_spread().unwrap_or(0.0);
            ClockEnsemble::random(config.n, config.omega, spread, &mut stream_rng(trial_seed, OFFSET_STREAM))
        }
    }
}

/// One full protocol run. A pure function of `(config, trial_index)`.
pub fn run_trial(config: &ExperimentConfig, trial_index: usize) -> Result<AdjustmentReport> {
    Ok(execute(config, trial_index, false)?.report)
}

/// As [`run_trial`], also keeping the broadcast log and the online accumulator.
pub fn run_trial_with_log(config: &ExperimentConfig, trial_index: usize) -> Result<TrialOutcome> {
    execute(config, trial_index, true)
}

fn execute(config: &ExperimentConfig, trial_index: usize, keep_log: bool) -> Result<TrialOutcome> {
    config.validate()?;
    let trial_seed = derive_seed(config.seed, trial_index as u64);
    let ensemble = trial_ensemble(config, trial_index)?;
    let schedule = make_cell_schedule(
        config.num_sequences(),
        config.k,
        config.schedule,
        config.quadrature_policy(),
        config.nominal_time,
        &mut stream_rng(trial_seed, SCHEDULE_STREAM),
    )?;
    let mut acc = FringeAccumulator::new();
    let mut log = keep_log.then(BroadcastLog::new);
    let mut keep = |records: Vec<MeasurementRecord>, acc: &mut FringeAccumulator| {
        for r in &records {
            acc.record(r);
        }
        if let Some(log) = log.as_mut() {
            log.extend(records);
        }
    };
    let round_rng = |index: usize| stream_rng(trial_seed, ROUND_STREAM_BASE + index as u64);

    let report = match config.protocol {
        Protocol::Ghz => {
            let runner = GhzRunner::new(ensemble.clone(), config.ghz_backend, config.statevector_limit)?;
            for round in &schedule {
                let rec = runner.run_round(round, &mut round_rng(round.index))?;
                keep(vec![rec], &mut acc);
            }
            estimate_ghz_adjustments(&acc, runner.sequences(), config.omega, config.estimator, config.k)?
                .with_truth(&ensemble.true_adjustments())
        }
        Protocol::Pairs => {
            for round in &schedule {
                let recs = run_round_set_pairs(&ensemble, round, &mut round_rng(round.index))?;
                keep(recs, &mut acc);
            }
            estimate_pairs_offsets(&acc, config.n, config.omega, config.estimator, config.k)?
                .with_truth(&ensemble.true_central_offsets())
        }
        Protocol::Dicke => {
            let mut runner = DickeRunner::new(ensemble.clone(), config.dicke_backend, config.statevector_limit)?;
            for round in &schedule {
                let recs = runner.run_round(round, &mut round_rng(round.index))?;
                keep(recs, &mut acc);
            }
            estimate_dicke_offsets(&acc, config.n, config.omega, config.estimator, config.k)?
                .with_truth(&ensemble.true_central_offsets())
        }
    };
    Ok(TrialOutcome { ensemble, accumulator: acc, log, report })
}
