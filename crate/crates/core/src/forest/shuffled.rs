//! A deliberately naive reduction that crimps sequences in random order,
//! re-scanning the whole pattern after every crimp. Quadratic; it exists to
//! cross-check the linear scan, which always takes the leftmost sequence.

use rand::Rng;

use crate::fold::{crimp_with, find_crimpable_sequences, CrimpRecord, FoldError, FoldOp, ReducedPattern, Reduction, ScanStats};
use crate::pattern::{CreaseId, MvPattern};
use crate::scalar::Coord;

use super::CrimpForest;

/// How monocrimps inside one crimp are ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    /// Leftmost opposite-parity pair first, as the scan does.
    Leftmost,
    /// A random available pair each time.
    Random,
}

/// One randomized reduction, plus where each survivor ended up.
#[derive(Clone, Debug)]
pub struct ShuffledReduction<S = i64> {
    pub reduction: Reduction<S>,
    /// Position of each crimp's survivor right after that crimp.
    pub survivor_positions: Vec<Option<S>>,
    /// Final pattern (end sequence) positions, ends included.
    pub final_positions: Vec<S>,
}

impl<S: Coord> ShuffledReduction<S> {
    pub fn forest(&self, p: &MvPattern<S>) -> CrimpForest<S> {
        CrimpForest::from_reduction(&self.reduction, p.pattern.position(0), p.num_creases())
    }
}

/// Reduces `p` by crimping a uniformly random crimpable sequence each round.
pub fn reduce_shuffled<S: Coord, R: Rng>(
    p: &MvPattern<S>,
    order: PairOrder,
    rng: &mut R,
) -> Result<ShuffledReduction<S>, FoldError> {
    let mut current = ReducedPattern::new(&p.pattern);
    let mut crimps = Vec::new();
    let mut survivor_positions = Vec::new();
    loop {
        let seqs = find_crimpable_sequences(&current);
        if seqs.is_empty() {
            break;
        }
        let seq = &seqs[rng.gen_range(0..seqs.len())];
        let before = current.log().len();
        let (next, survivor) = match order {
            PairOrder::Leftmost => crimp_with(&current, &p.mv, seq, |_| 0),
            PairOrder::Random => crimp_with(&current, &p.mv, seq, |pairs| rng.gen_range(0..pairs.len())),
        }
        .map_err(|e| match e {
            FoldError::CountLaw(stuck) => FoldError::Unfoldable(stuck),
            other => other,
        })?;
        let monocrimps = next.log()[before..]
            .iter()
            .map(|op| match op {
                FoldOp::Monocrimp { creases } => *creases,
                FoldOp::EndFold { .. } => unreachable!("crimps only monocrimp"),
            })
            .collect();
        survivor_positions.push(survivor.map(|s| position_of(&next, s)));
        crimps.push(CrimpRecord {
            creases: seq.creases.clone(),
            labels: seq.creases.iter().map(|&c| p.mv.label(c)).collect(),
            interval_distance: seq.interval_distance,
            flanks: seq.flanks,
            survivor,
            monocrimps,
        });
        current = next;
    }
    Ok(ShuffledReduction {
        reduction: Reduction {
            stats: ScanStats { crimps: crimps.len() as u64, ..ScanStats::default() },
            crimps,
            end_creases: current.crease_ids(),
            end_intervals: current.intervals(),
        },
        survivor_positions,
        final_positions: current.positions(),
    })
}

fn position_of<S: Coord>(p: &ReducedPattern<S>, id: CreaseId) -> S {
    p.creases().iter().find(|&&(c, _)| c == id).expect("survivor stays in the pattern").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{build_crimp_forest, forest_isomorphic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nine_crease_any_order_same_forest() {
        let p = MvPattern::from_parts(vec![0, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24], "MMVVVMVMM").unwrap();
        let scan = build_crimp_forest(&p).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = reduce_shuffled(&p, PairOrder::Leftmost, &mut rng).unwrap();
            assert!(forest_isomorphic(&scan, &r.forest(&p)));
            assert_eq!(r.reduction.end_creases, scan.end_sequence);
            assert_eq!(r.final_positions, vec![0, 4, 8]);
        }
    }

    #[test]
    fn unfoldable_reported() {
        let p = MvPattern::from_parts(vec![0, 3, 4, 7], "VV").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(reduce_shuffled(&p, PairOrder::Random, &mut rng), Err(FoldError::Unfoldable(_))));
    }
}
