use serde::Serialize;

use crate::pattern::{CreaseId, Mv, MvPattern};
use crate::scalar::Coord;

use super::scan::{scan, CrimpEvent, CrimpHandler, ScanStats};
use super::{FoldError, FoldOp, Side, StuckSequence};

/// Cancels adjacent opposite-parity pairs with a stack, which folds exactly
/// the pairs that "leftmost opposite pair first" would, in the same order.
/// Returns the pairs and the leftover creases (all sharing one label).
pub fn cancel_pairs(creases: &[CreaseId], label: impl Fn(CreaseId) -> Mv) -> (Vec<[CreaseId; 2]>, Vec<CreaseId>) {
    let mut pairs = Vec::with_capacity(creases.len() / 2);
    let mut stack: Vec<CreaseId> = Vec::with_capacity(creases.len());
    for &c in creases {
        match stack.last() {
            Some(&top) if label(top) != label(c) => {
                stack.pop();
                pairs.push([top, c]);
            }
            _ => stack.push(c),
        }
    }
    (pairs, stack)
}

/// One crimp performed by the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrimpRecord<S = i64> {
    pub creases: Vec<CreaseId>,
    pub labels: Vec<Mv>,
    pub interval_distance: S,
    pub flanks: (S, S),
    pub survivor: Option<CreaseId>,
    /// Monocrimps in the order they are folded.
    pub monocrimps: Vec<[CreaseId; 2]>,
}

/// The result of reducing a foldable pattern to its end sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<S = i64> {
    /// Crimps in execution order (always the leftmost crimpable sequence first).
    pub crimps: Vec<CrimpRecord<S>>,
    pub end_creases: Vec<CreaseId>,
    pub end_intervals: Vec<S>,
    pub stats: ScanStats,
}

impl<S: Coord> Reduction<S> {
    pub fn monocrimp_count(&self) -> usize {
        self.crimps.iter().map(|c| c.monocrimps.len()).sum()
    }

    /// Monocrimps followed by end folds: a complete folding sequence.
    pub fn witness(&self) -> Vec<FoldOp> {
        let mut ops: Vec<FoldOp> = self
            .crimps
            .iter()
            .flat_map(|c| c.monocrimps.iter().map(|&creases| FoldOp::Monocrimp { creases }))
            .collect();
        ops.extend(end_folds(&self.end_creases, &self.end_intervals));
        ops
    }
}

/// Folds an end sequence onto its longest interval (leftmost on ties): the
/// left end is folded over its neighbour until the longest interval is
/// leftmost, then the right end likewise.
pub(crate) fn end_folds<S: Coord>(creases: &[CreaseId], intervals: &[S]) -> Vec<FoldOp> {
    let mut longest = 0;
    for (i, &len) in intervals.iter().enumerate() {
        if len > intervals[longest] {
            longest = i;
        }
    }
    let left = creases[..longest].iter().map(|&crease| FoldOp::EndFold { crease, side: Side::Left });
    let right = creases[longest..].iter().rev().map(|&crease| FoldOp::EndFold { crease, side: Side::Right });
    left.chain(right).collect()
}

struct Recorder<'a, S> {
    pattern: &'a MvPattern<S>,
    crimps: Vec<CrimpRecord<S>>,
}

impl<S: Coord> CrimpHandler<S> for Recorder<'_, S> {
    type Error = StuckSequence;

    fn crimp(&mut self, e: CrimpEvent<'_, S>) -> Result<Option<CreaseId>, StuckSequence> {
        let mv = &self.pattern.mv;
        let labels: Vec<Mv> = e.creases.iter().map(|&c| mv.label(c)).collect();
        let (pairs, rest) = cancel_pairs(e.creases, |c| mv.label(c));
        if rest.len() > 1 {
            return Err(StuckSequence { creases: e.creases.to_vec(), labels, remaining: rest });
        }
        self.crimps.push(CrimpRecord {
            creases: e.creases.to_vec(),
            labels,
            interval_distance: e.interval_distance,
            flanks: e.flanks,
            survivor: rest.first().copied(),
            monocrimps: pairs,
        });
        Ok(rest.first().copied())
    }
}

/// Crimps leftmost crimpable sequences until only an end sequence is left.
/// Fails with the first crimpable sequence whose labels cannot be crimped.
pub fn reduce<S: Coord>(p: &MvPattern<S>) -> Result<Reduction<S>, FoldError> {
    let intervals = p.pattern.intervals();
    let mut rec = Recorder { pattern: p, crimps: Vec::new() };
    let out = scan(intervals.as_slice(), &mut rec).map_err(FoldError::Unfoldable)?;
    Ok(Reduction { crimps: rec.crimps, end_creases: out.end_creases, end_intervals: out.end_intervals, stats: out.stats })
}

/// Outcome of [`is_flat_foldable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum FoldDecision {
    /// Monocrimps and end folds that fold the pattern flat.
    Foldable { witness: Vec<FoldOp> },
    /// A crimpable sequence left with two or more same-label creases.
    Unfoldable { certificate: StuckSequence },
}

impl FoldDecision {
    pub fn is_foldable(&self) -> bool {
        matches!(self, FoldDecision::Foldable { .. })
    }

    pub fn witness(&self) -> Option<&[FoldOp]> {
        match self {
            FoldDecision::Foldable { witness } => Some(witness),
            FoldDecision::Unfoldable { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&StuckSequence> {
        match self {
            FoldDecision::Foldable { .. } => None,
            FoldDecision::Unfoldable { certificate } => Some(certificate),
        }
    }
}

/// Decides flat-foldability in linear time.
pub fn is_flat_foldable<S: Coord>(p: &MvPattern<S>) -> FoldDecision {
    match reduce(p) {
        Ok(r) => FoldDecision::Foldable { witness: r.witness() },
        Err(FoldError::Unfoldable(certificate)) => FoldDecision::Unfoldable { certificate },
        Err(other) => unreachable!("reduction only fails on stuck sequences: {other}"),
    }
}
