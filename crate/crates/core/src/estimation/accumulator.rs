use std::collections::BTreeMap;

use crate::protocol::{MeasurementRecord, Quadrature, RecordSource};

/// Cell of the fringe table: a GHZ distribution sequence, or a non-central party
/// in the pairs and Dicke protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKey {
    Sequence { index: usize, quadrature: Quadrature },
    Party { index: usize, quadrature: Quadrature },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CellStats {
    pub count: u64,
    /// Sum of ±1 products; exact, so merging is associative.
    pub sum: i64,
}

/// Per-cell counts and product sums. Merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FringeAccumulator {
    cells: BTreeMap<CellKey, CellStats>,
}

impl FringeAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: CellKey, product: i8) {
        let cell = self.cells.entry(key).or_default();
        cell.count += 1;
        cell.sum += i64::from(product);
    }

    pub fn record(&mut self, rec: &MeasurementRecord) {
        let quadrature = rec.round().quadrature;
        match rec.source() {
            RecordSource::Ghz => {
                self.add(CellKey::Sequence { index: rec.round().sequence_index, quadrature }, rec.product())
            }
            RecordSource::Pair { party } | RecordSource::DickePair { party } => {
                self.add(CellKey::Party { index: party, quadrature }, rec.product())
            }
            RecordSource::Dicke => {
                let x = rec.outcomes().as_slice();
                for (party, &xi) in x.iter().enumerate().skip(1) {
                    self.add(CellKey::Party { index: party, quadrature }, x[0] * xi);
                }
            }
        }
    }

    pub fn merge(&mut self, other: &FringeAccumulator) {
        for (key, stats) in &other.cells {
            let cell = self.cells.entry(*key).or_default();
            cell.count += stats.count;
            cell.sum += stats.sum;
        }
    }

    pub fn get(&self, key: &CellKey) -> Option<CellStats> {
        self.cells.get(key).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&CellKey, &CellStats)> {
        self.cells.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_count(&self) -> u64 {
        self.cells.values().map(|c| c.count).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(i: usize) -> CellKey {
        CellKey::Sequence { index: i % 3, quadrature: if i.is_multiple_of(2) { Quadrature::Sine } else { Quadrature::Cosine } }
    }

    fn build(entries: &[(usize, bool)]) -> FringeAccumulator {
        let mut acc = FringeAccumulator::new();
        for &(k, plus) in entries {
            acc.add(key(k), if plus { 1 } else { -1 });
        }
        acc
    }

    proptest! {
        #[test]
        fn merge_is_commutative_and_associative(
            a in prop::collection::vec((0usize..6, any::<bool>()), 0..40),
            b in prop::collection::vec((0usize..6, any::<bool>()), 0..40),
            c in prop::collection::vec((0usize..6, any::<bool>()), 0..40),
        ) {
            let (fa, fb, fc) = (build(&a), build(&b), build(&c));
            let mut ab = fa.clone(); ab.merge(&fb);
            let mut ba = fb.clone(); ba.merge(&fa);
            prop_assert_eq!(&ab, &ba);
            let mut ab_c = ab.clone(); ab_c.merge(&fc);
            let mut bc = fb.clone(); bc.merge(&fc);
            let mut a_bc = fa.clone(); a_bc.merge(&bc);
            prop_assert_eq!(&ab_c, &a_bc);
            let all: Vec<_> = a.iter().chain(&b).chain(&c).copied().collect();
            prop_assert_eq!(&ab_c, &build(&all));
            for (_, s) in ab_c.cells() {
                prop_assert!(s.sum.unsigned_abs() <= s.count);
            }
        }
    }
}
