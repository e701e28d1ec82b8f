use crate::error::{Result, SyncError};

/// Default ceiling on the number of sequences [`enumerate_sequences`] will materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// `n choose k`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of balanced sequences for `n` parties, C(N, N/2).
pub fn sequence_count(n: usize) -> Option<u64> {
    binomial(n as u64, n as u64 / 2)
}

/// One assignment of parties to the unflipped (`0`) and flipped (`1`) halves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistributionSequence {
    flags: Vec<u8>,
    index: Option<usize>,
}

fn check_balanced(flags: &[u8]) -> Result<()> {
    let n = flags.len();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
    }
    if flags.iter().any(|&f| f > 1) {
        return Err(SyncError::InvalidEnsemble("sequence flags must be 0 or 1".into()));
    }
    let ones = flags.iter().filter(|&&f| f == 1).count();
    if ones != n / 2 {
        return Err(SyncError::InvalidEnsemble(format!(
            "sequence has {ones} flipped qubits, expected {}",
            n / 2
        )));
    }
    Ok(())
}

/// Lexicographic rank of a balanced bitstring among all balanced strings of its length.
fn lexicographic_rank(flags: &[u8]) -> Option<u64> {
    let n = flags.len() as u64;
    let mut ones_left = n / 2;
    let mut rank = 0u64;
    for (pos, &f) in flags.iter().enumerate() {
        let remaining = n - pos as u64 - 1;
        if f == 1 {
            // every string with a 0 here (and same prefix) sorts first
            rank = rank.checked_add(binomial(remaining, ones_left)?)?;
            ones_left -= 1;
        }
    }
    Some(rank)
}

impl DistributionSequence {
    /// Builds a sequence and checks that `index` is its lexicographic rank.
    pub fn new(flags: Vec<u8>, index: usize) -> Result<Self> {
        let seq = Self::from_flags(flags)?;
        if seq.index != Some(index) {
            return Err(SyncError::InvalidEnsemble(format!(
                "sequence index {index} does not match lexicographic rank {}",
                seq.index()
            )));
        }
        Ok(seq)
    }

    pub fn from_flags(flags: Vec<u8>) -> Result<Self> {
        check_balanced(&flags)?;
        let index = lexicographic_rank(&flags).and_then(|r| usize::try_from(r).ok()).ok_or_else(|| {
            SyncError::InvalidEnsemble(format!(
                "the rank of a {}-party sequence does not fit in usize; use DistributionSequence::unranked",
                flags.len()
            ))
        })?;
        Ok(DistributionSequence { flags, index: Some(index) })
    }

    /// A sequence without a rank, for registers too large to enumerate.
    pub fn unranked(flags: Vec<u8>) -> Result<Self> {
        check_balanced(&flags)?;
        Ok(DistributionSequence { flags, index: None })
    }

    pub fn flags(&self) -> &[u8] {
        &self.flags
    }

    /// Lexicographic rank.
    ///
    /// # Panics
    ///
    /// For sequences built with [`DistributionSequence::unranked`].
    pub fn index(&self) -> usize {
        self.index.expect("sequence was built without a rank")
    }

    pub fn rank(&self) -> Option<usize> {
        self.index
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// `(-1)^{f_i}` for party `i`.
    pub fn sign(&self, party: usize) -> f64 {
        if self.flags[party] == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Party whose measurement is delayed by a quarter period in sine rounds.
    pub fn designated_party(&self) -> usize {
        self.flags.iter().position(|&f| f == 0).expect("balanced sequence has an unflipped party")
    }

    /// Signed time difference `Σ (-1)^{f_i} t_i`.
    pub fn time_difference(&self, times: &[f64]) -> f64 {
        self.flags
            .iter()
            .zip(times)
            .map(|(&f, &t)| if f == 0 { t } else { -t })
            .sum()
    }

    pub fn complement(&self) -> DistributionSequence {
        let flags: Vec<u8> = self.flags.iter().map(|&f| 1 - f).collect();
        match self.index {
            Some(_) => Self::from_flags(flags),
            None => Self::unranked(flags),
        }
        .expect("complement stays balanced")
    }
}

/// All balanced sequences for `n` parties in lexicographic order.
pub fn enumerate_sequences(n: usize) -> Result<Vec<DistributionSequence>> {
    enumerate_sequences_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_sequences_capped(n: usize, cap: u64) -> Result<Vec<DistributionSequence>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SyncError::InvalidEnsemble(format!("N must be even and at least 2, got {n}")));
    }
    let count = sequence_count(n).unwrap_or(u64::MAX);
    if count > cap || n > 63 {
        return Err(SyncError::EnumerationCap { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    // Gosper's hack: successive integers with the same popcount, ascending.
    let mut word: u64 = (1u64 << (n / 2)) - 1;
    let limit = 1u64 << n;
    while word < limit {
        let flags = (0..n).map(|q| ((word >> (n - 1 - q)) & 1) as u8).collect();
        out.push(DistributionSequence { flags, index: Some(out.len()) });
        let lowest = word & word.wrapping_neg();
        let ripple = word + lowest;
        word = (((ripple ^ word) >> 2) / lowest) | ripple;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(8, 4), Some(70));
        assert_eq!(binomial(22, 11), Some(705_432));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn two_party_sequences() {
        let seqs = enumerate_sequences(2).unwrap();
        let flags: Vec<&[u8]> = seqs.iter().map(|s| s.flags()).collect();
        assert_eq!(flags, vec![&[0u8, 1][..], &[1, 0][..]]);
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(enumerate_sequences(4).unwrap().len(), 6);
        // brute-force count over all 2^8 strings
        let brute = (0u32..256).filter(|w| w.count_ones() == 4).count();
        let seqs = enumerate_sequences(8).unwrap();
        assert_eq!(seqs.len(), brute);
        assert_eq!(brute, 70);
        for pair in seqs.windows(2) {
            assert!(pair[0].flags() < pair[1].flags());
        }
        for (j, s) in seqs.iter().enumerate() {
            assert_eq!(s.index(), j);
            assert_eq!(DistributionSequence::from_flags(s.flags().to_vec()).unwrap().index(), j);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(enumerate_sequences(5).is_err());
        assert!(enumerate_sequences(0).is_err());
        assert!(matches!(enumerate_sequences(24), Err(SyncError::EnumerationCap { .. })));
        assert!(DistributionSequence::from_flags(vec![0, 0, 0, 1]).is_err());
        assert!(DistributionSequence::new(vec![0, 1, 0, 1], 0).is_err());
    }

    #[test]
    fn complement_and_designated_party() {
        let s = DistributionSequence::from_flags(vec![1, 0, 0, 1]).unwrap();
        assert_eq!(s.designated_party(), 1);
        let c = s.complement();
        assert_eq!(c.flags(), &[0, 1, 1, 0]);
        let t = [0.3, -0.2, 0.5, 0.1];
        assert!((s.time_difference(&t) + c.time_difference(&t)).abs() < 1e-15);
    }

    #[test]
    fn large_registers_are_unranked() {
        let flags: Vec<u8> = (0..200).map(|i| u8::from(i % 2 == 1)).collect();
        assert!(DistributionSequence::from_flags(flags.clone()).is_err());
        let s = DistributionSequence::unranked(flags).unwrap();
        assert_eq!(s.rank(), None);
        assert_eq!(s.complement().rank(), None);
        assert_eq!(s.designated_party(), 0);
    }
}
