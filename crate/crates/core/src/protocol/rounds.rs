use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ensemble::ClockEnsemble;
use super::schedule::{Quadrature, ScheduledRound};
use super::sequence::{enumerate_sequences, sequence_count, DistributionSequence};
use crate::engine::{
    build_dicke_state, build_ghz_state, dicke_visibility, sample_bell_pair_outcomes,
    sample_dicke_pair, sample_ghz_closed_form, MeasurementAngles, OutcomeSampler, OutcomeString,
    DEFAULT_STATEVECTOR_LIMIT,
};
use crate::error::{Result, SyncError};

/// Who produced a record and how its outcomes are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecordSource {
    /// All N GHZ outcomes, party order.
    Ghz,
    /// Bell pair shared by `party` and the central clock: `(x_party, x_central)`.
    Pair { party: usize },
    /// Full Dicke sample, party order, party 0 central.
    Dicke,
    /// One Dicke pair marginal sample: `(x_central, x_party)`.
    DickePair { party: usize },
}

/// One broadcast measurement result.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    round: ScheduledRound,
    source: RecordSource,
    outcomes: OutcomeString,
    product: i8,
}

impl MeasurementRecord {
    pub fn new(round: ScheduledRound, source: RecordSource, outcomes: OutcomeString) -> Result<Self> {
        let n = outcomes.len();
        let shape_ok = match source {
            RecordSource::Ghz | RecordSource::Dicke => n >= 2 && n.is_multiple_of(2),
            RecordSource::Pair { party } | RecordSource::DickePair { party } => n == 2 && party >= 1,
        };
        if !shape_ok {
            return Err(SyncError::InvalidEnsemble(format!("{n} outcomes do not fit a {source:?} record")));
        }
        if source == RecordSource::Ghz {
            let cells = sequence_count(n).unwrap_or(u64::MAX);
            if round.sequence_index as u64 >= cells {
                return Err(SyncError::InvalidEnsemble(format!(
                    "sequence index {} out of range for N = {n}",
                    round.sequence_index
                )));
            }
        }
        let product = outcomes.product();
        Ok(MeasurementRecord { round, source, outcomes, product })
    }

    pub fn round(&self) -> &ScheduledRound {
        &self.round
    }

    pub fn source(&self) -> RecordSource {
        self.source
    }

    pub fn outcomes(&self) -> &OutcomeString {
        &self.outcomes
    }

    /// Product of every entry in `outcomes`.
    pub fn product(&self) -> i8 {
        self.product
    }
}

/// How GHZ outcomes are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GhzBackend {
    ClosedForm,
    /// Full statevector sampling; for cross-checking the closed form.
    Statevector,
}

/// Angles for GHZ round: ω(τ₀ + t_i), with the designated party shifted in sine rounds.
pub fn ghz_round_angles(ensemble: &ClockEnsemble, seq: &DistributionSequence, round: &ScheduledRound) -> Result<MeasurementAngles> {
    if seq.len() != ensemble.n() {
        return Err(SyncError::DimensionMismatch { expected: ensemble.n(), actual: seq.len() });
    }
    let designated = seq.designated_party();
    let angles = (0..ensemble.n())
        .map(|i| {
            let shift = if i == designated { round.quadrature.shift() } else { 0.0 };
            ensemble.phase(i, round.nominal_time) + shift
        })
        .collect();
    MeasurementAngles::new(angles)
}

/// One GHZ round for an explicit sequence.
pub fn run_round_ghz<R: Rng + ?Sized>(
    ensemble: &ClockEnsemble,
    seq: &DistributionSequence,
    round: &ScheduledRound,
    rng: &mut R,
) -> Result<MeasurementRecord> {
    let angles = ghz_round_angles(ensemble, seq, round)?;
    let outcomes = sample_ghz_closed_form(seq, &angles, rng)?;
    MeasurementRecord::new(*round, RecordSource::Ghz, outcomes)
}

/// GHZ protocol bound to one ensemble, with the sequence table enumerated once.
#[derive(Debug, Clone)]
pub struct GhzRunner {
    ensemble: ClockEnsemble,
    sequences: Vec<DistributionSequence>,
    backend: GhzBackend,
    statevector_limit: usize,
}

impl GhzRunner {
    pub fn new(ensemble: ClockEnsemble, backend: GhzBackend, statevector_limit: usize) -> Result<Self> {
        if backend == GhzBackend::Statevector && ensemble.n() > statevector_limit {
            return Err(SyncError::Capacity { requested: ensemble.n(), limit: statevector_limit });
        }
        let sequences = enumerate_sequences(ensemble.n())?;
        Ok(GhzRunner { ensemble, sequences, backend, statevector_limit })
    }

    pub fn sequences(&self) -> &[DistributionSequence] {
        &self.sequences
    }

    pub fn ensemble(&self) -> &ClockEnsemble {
        &self.ensemble
    }

    pub fn run_round<R: Rng + ?Sized>(&self, round: &ScheduledRound, rng: &mut R) -> Result<MeasurementRecord> {
        let seq = self.sequences.get(round.sequence_index).ok_or_else(|| {
            SyncError::InvalidEnsemble(format!("sequence index {} out of range", round.sequence_index))
        })?;
        match self.backend {
            GhzBackend::ClosedForm => run_round_ghz(&self.ensemble, seq, round, rng),
            GhzBackend::Statevector => {
                let state = build_ghz_state(seq, self.statevector_limit)?;
                let angles = ghz_round_angles(&self.ensemble, seq, round)?;
                let outcomes = OutcomeSampler::new(&state, &angles)?.sample(rng);
                MeasurementRecord::new(*round, RecordSource::Ghz, outcomes)
            }
        }
    }
}

fn check_party(ensemble: &ClockEnsemble, party: usize) -> Result<()> {
    if party == 0 || party >= ensemble.n() {
        return Err(SyncError::UnknownParty { party, n: ensemble.n() });
    }
    Ok(())
}

/// Party `party`'s share of a pairs round; in sine rounds the party (not the
/// central clock) takes the quarter-period delay.
pub fn pair_angles(ensemble: &ClockEnsemble, party: usize, round: &ScheduledRound) -> (f64, f64) {
    let central = ensemble.phase(0, round.nominal_time);
    let own = ensemble.phase(party, round.nominal_time) + round.quadrature.shift();
    (own, central)
}

/// Bell-pair measurement between party `party` (1..N-1) and the central clock, party 0.
pub fn run_round_pairs<R: Rng + ?Sized>(
    ensemble: &ClockEnsemble,
    party: usize,
    round: &ScheduledRound,
    rng: &mut R,
) -> Result<MeasurementRecord> {
    check_party(ensemble, party)?;
    let (theta_p, theta_c) = pair_angles(ensemble, party, round);
    let (xp, xc) = sample_bell_pair_outcomes(theta_p, theta_c, rng);
    MeasurementRecord::new(*round, RecordSource::Pair { party }, OutcomeString::new(vec![xp, xc])?)
}

/// All N-1 pairs of one parallel round, consuming 2(N-1) qubits.
pub fn run_round_set_pairs<R: Rng + ?Sized>(
    ensemble: &ClockEnsemble,
    round: &ScheduledRound,
    rng: &mut R,
) -> Result<Vec<MeasurementRecord>> {
    (1..ensemble.n()).map(|p| run_round_pairs(ensemble, p, round, rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DickeBackend {
    /// Statevector up to the limit, marginal sampler beyond it.
    Auto,
    Statevector,
    /// Independent pair marginals; loses the cross-pair correlations through the central qubit.
    Marginal,
}

/// Dicke angles for every party; non-central parties take the quarter-period delay in sine rounds.
pub fn dicke_round_angles(ensemble: &ClockEnsemble, round: &ScheduledRound) -> Vec<f64> {
    (0..ensemble.n())
        .map(|i| {
            let shift = if i == 0 { 0.0 } else { round.quadrature.shift() };
            ensemble.phase(i, round.nominal_time) + shift
        })
        .collect()
}

/// Dicke protocol bound to one ensemble. Caches the exact outcome table per
/// (quadrature, nominal time) since the angles repeat across rounds.
#[derive(Debug, Clone)]
pub struct DickeRunner {
    ensemble: ClockEnsemble,
    statevector: bool,
    statevector_limit: usize,
    samplers: HashMap<(Quadrature, u64), OutcomeSampler>,
}

impl DickeRunner {
    pub fn new(ensemble: ClockEnsemble, backend: DickeBackend, statevector_limit: usize) -> Result<Self> {
        dicke_visibility(ensemble.n())?;
        let statevector = match backend {
            DickeBackend::Auto => ensemble.n() <= statevector_limit,
            DickeBackend::Statevector => {
                if ensemble.n() > statevector_limit {
                    return Err(SyncError::Capacity { requested: ensemble.n(), limit: statevector_limit });
                }
                true
            }
            DickeBackend::Marginal => false,
        };
        Ok(DickeRunner { ensemble, statevector, statevector_limit, samplers: HashMap::new() })
    }

    pub fn uses_statevector(&self) -> bool {
        self.statevector
    }

    pub fn ensemble(&self) -> &ClockEnsemble {
        &self.ensemble
    }

    /// One round: a single `Dicke` record (statevector) or N-1 `DickePair` records (marginal).
    pub fn run_round<R: Rng + ?Sized>(&mut self, round: &ScheduledRound, rng: &mut R) -> Result<Vec<MeasurementRecord>> {
        let angles = dicke_round_angles(&self.ensemble, round);
        if self.statevector {
            let key = (round.quadrature, round.nominal_time.to_bits());
            if !self.samplers.contains_key(&key) {
                let state = build_dicke_state(self.ensemble.n(), self.statevector_limit)?;
                let sampler = OutcomeSampler::new(&state, &MeasurementAngles::new(angles)?)?;
                self.samplers.insert(key, sampler);
            }
            let outcomes = self.samplers[&key].sample(rng);
            Ok(vec![MeasurementRecord::new(*round, RecordSource::Dicke, outcomes)?])
        } else {
            let n = self.ensemble.n();
            (1..n)
                .map(|party| {
                    let (xc, xi) = sample_dicke_pair(n, angles[0], angles[party], rng)?;
                    MeasurementRecord::new(*round, RecordSource::DickePair { party }, OutcomeString::new(vec![xc, xi])?)
                })
                .collect()
        }
    }
}

/// Single Dicke round with the default backend rules.
pub fn run_round_dicke<R: Rng + ?Sized>(
    ensemble: &ClockEnsemble,
    round: &ScheduledRound,
    rng: &mut R,
) -> Result<Vec<MeasurementRecord>> {
    DickeRunner::new(ensemble.clone(), DickeBackend::Auto, DEFAULT_STATEVECTOR_LIMIT)?.run_round(round, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn round(quadrature: Quadrature, nominal_time: f64) -> ScheduledRound {
        ScheduledRound { index: 0, sequence_index: 0, quadrature, nominal_time }
    }

    fn mean_product(records: impl Iterator<Item = i8>) -> (f64, usize) {
        let (mut sum, mut count) = (0i64, 0usize);
        for p in records {
            sum += i64::from(p);
            count += 1;
        }
        (sum as f64 / count as f64, count)
    }

    #[test]
    fn equal_clocks_give_even_parity() {
        let e = ClockEnsemble::new(1.0, vec![0.4; 4]).unwrap();
        let runner = GhzRunner::new(e, GhzBackend::ClosedForm, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for j in 0..6 {
            let r = ScheduledRound { index: j, sequence_index: j, quadrature: Quadrature::Cosine, nominal_time: 3.0 };
            for _ in 0..50 {
                assert_eq!(runner.run_round(&r, &mut rng).unwrap().product(), 1);
            }
        }
    }

    #[test]
    fn ghz_fringe_follows_single_offset() {
        let delta = 0.7;
        let e = ClockEnsemble::new(1.0, vec![delta, 0.0, 0.0, 0.0]).unwrap();
        let seq = DistributionSequence::from_flags(vec![0, 0, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = round(Quadrature::Cosine, 0.0);
        let draws = 40_000;
        let (mean, _) = mean_product((0..draws).map(|_| run_round_ghz(&e, &seq, &r, &mut rng).unwrap().product()));
        let expected = delta.cos();
        let sigma = ((1.0 - expected * expected) / draws as f64).sqrt();
        assert!((mean - expected).abs() < 4.0 * sigma);
    }

    #[test]
    fn sine_round_shifts_designated_party() {
        let e = ClockEnsemble::new(2.0, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let seq = DistributionSequence::from_flags(vec![1, 0, 1, 0]).unwrap();
        let cos = ghz_round_angles(&e, &seq, &round(Quadrature::Cosine, 0.0)).unwrap();
        let sin = ghz_round_angles(&e, &seq, &round(Quadrature::Sine, 0.0)).unwrap();
        let diff: Vec<f64> = sin.as_slice().iter().zip(cos.as_slice()).map(|(a, b)| a - b).collect();
        assert_eq!(diff, vec![0.0, std::f64::consts::FRAC_PI_2, 0.0, 0.0]);
    }

    #[test]
    fn ghz_backends_agree_on_fringe() {
        let e = ClockEnsemble::new(1.0, vec![0.3, -0.1, 0.2, 0.0]).unwrap();
        let closed = GhzRunner::new(e.clone(), GhzBackend::ClosedForm, 16).unwrap();
        let exact = GhzRunner::new(e, GhzBackend::Statevector, 16).unwrap();
        let r = ScheduledRound { index: 0, sequence_index: 3, quadrature: Quadrature::Sine, nominal_time: 0.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draws = 30_000;
        let (a, _) = mean_product((0..draws).map(|_| closed.run_round(&r, &mut rng).unwrap().product()));
        let (b, _) = mean_product((0..draws).map(|_| exact.run_round(&r, &mut rng).unwrap().product()));
        assert!((a - b).abs() < 5.0 * (2.0 / draws as f64).sqrt());
    }

    #[test]
    fn pairs_round_validation_and_zero_offset() {
        let e = ClockEnsemble::new(1.0, vec![0.2, 0.2, -0.5, 0.1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = round(Quadrature::Cosine, 1.5);
        assert!(matches!(run_round_pairs(&e, 0, &r, &mut rng), Err(SyncError::UnknownParty { .. })));
        assert!(matches!(run_round_pairs(&e, 4, &r, &mut rng), Err(SyncError::UnknownParty { .. })));
        for _ in 0..200 {
            let rec = run_round_pairs(&e, 1, &r, &mut rng).unwrap();
            assert_eq!(rec.product(), 1);
        }
        assert_eq!(run_round_set_pairs(&e, &r, &mut rng).unwrap().len(), 3);
    }

    #[test]
    fn pairs_sine_round_gives_negative_sine() {
        let e = ClockEnsemble::new(1.0, vec![0.0, 0.5, 0.0, 0.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = round(Quadrature::Sine, 0.0);
        let draws = 40_000;
        let (mean, _) = mean_product((0..draws).map(|_| run_round_pairs(&e, 1, &r, &mut rng).unwrap().product()));
        let expected = -(0.5f64).sin();
        assert!((mean - expected).abs() < 4.0 * ((1.0 - expected * expected) / draws as f64).sqrt());
    }

    #[test]
    fn dicke_runner_backends() {
        let e = ClockEnsemble::new(1.0, vec![0.0; 20]).unwrap();
        assert!(matches!(DickeRunner::new(e.clone(), DickeBackend::Statevector, 16), Err(SyncError::Capacity { .. })));
        let mut marginal = DickeRunner::new(e, DickeBackend::Auto, 16).unwrap();
        assert!(!marginal.uses_statevector());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let recs = marginal.run_round(&round(Quadrature::Sine, 0.0), &mut rng).unwrap();
        assert_eq!(recs.len(), 19);
        assert!(recs.iter().all(|r| matches!(r.source(), RecordSource::DickePair { .. })));
    }

    #[test]
    fn dicke_four_party_agreement() {
        let e = ClockEnsemble::new(1.0, vec![0.0; 4]).unwrap();
        let mut runner = DickeRunner::new(e, DickeBackend::Auto, 16).unwrap();
        assert!(runner.uses_statevector());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = round(Quadrature::Cosine, 0.0);
        let draws = 30_000;
        let mut agree = [0usize; 4];
        for _ in 0..draws {
            let rec = &runner.run_round(&r, &mut rng).unwrap()[0];
            let x = rec.outcomes().as_slice();
            for i in 1..4 {
                agree[i] += usize::from(x[0] == x[i]);
            }
        }
        let p = 5.0 / 6.0;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        for a in &agree[1..] {
            assert!((*a as f64 / draws as f64 - p).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn record_validation() {
        let r = ScheduledRound { index: 0, sequence_index: 6, quadrature: Quadrature::Cosine, nominal_time: 0.0 };
        let o = OutcomeString::new(vec![1, 1, -1, 1]).unwrap();
        assert!(MeasurementRecord::new(r, RecordSource::Ghz, o.clone()).is_err());
        assert!(MeasurementRecord::new(r, RecordSource::Pair { party: 1 }, o.clone()).is_err());
        let ok = MeasurementRecord::new(ScheduledRound { sequence_index: 5, ..r }, RecordSource::Ghz, o).unwrap();
        assert_eq!(ok.product(), -1);
    }
}
