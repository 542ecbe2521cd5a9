//! Crimps, end folds, the flat-foldability decision and folded geometry.
//!
//! Two layers live here. [`ReducedPattern`] and the free functions
//! [`find_crimpable_sequences`], [`monocrimp`] and [`crimp`] are the
//! by-value, one-step-at-a-time operations. The linear left-to-right
//! reduction in `scan` drives [`is_flat_foldable`], the crimp forest and
//! the assignment reconstruction.

mod decide;
mod geometry;
mod reduced;
pub(crate) mod scan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::{CreaseId, Mv};

pub use decide::{cancel_pairs, is_flat_foldable, reduce, CrimpRecord, FoldDecision, Reduction};
pub use geometry::{check_layering, fold_point, folded_state, FoldedState, Layer};
pub use reduced::{
    crimp, crimp_with, find_crimpable_sequences, fuse_length, monocrimp, CrimpableSequence, ReducedPattern,
};
pub use scan::ScanStats;

/// Which paper end an end fold acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One step of a folding sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum FoldOp {
    /// Fold an adjacent opposite-parity pair inside a crimpable sequence.
    Monocrimp { creases: [CreaseId; 2] },
    /// Fold the end interval at `side` over or under its neighbour about `crease`.
    #[serde(rename = "endfold")]
    EndFold { crease: CreaseId, side: Side },
}

/// A crimpable sequence that cannot be crimped: after cancelling every
/// opposite-parity neighbour pair, two or more equally labeled creases remain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StuckSequence {
    /// The crimpable sequence, left to right.
    pub creases: Vec<CreaseId>,
    pub labels: Vec<Mv>,
    /// Creases left over with no opposite-parity neighbour.
    pub remaining: Vec<CreaseId>,
}

impl StuckSequence {
    pub fn count(&self, mv: Mv) -> usize {
        self.labels.iter().filter(|&&l| l == mv).count()
    }
}

impl std::fmt::Display for StuckSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let seq: Vec<String> = self
            .creases
            .iter()
            .zip(&self.labels)
            .map(|(c, l)| format!("c{c}={l}"))
            .collect();
        let rem: Vec<String> = self.remaining.iter().map(|c| format!("c{c}")).collect();
        write!(f, "crimpable sequence ({}) leaves same-parity creases {{{}}}", seq.join(", "), rem.join(", "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldError {
    #[error("creases c{left} and c{right} have the same label {label}; a monocrimp needs opposite parity")]
    SameParity { left: CreaseId, right: CreaseId, label: Mv },
    #[error("creases c{left} and c{right} are not adjacent in the current pattern")]
    NotAdjacent { left: CreaseId, right: CreaseId },
    #[error("creases c{left} and c{right} do not lie in a crimpable sequence")]
    NotCrimpable { left: CreaseId, right: CreaseId },
    #[error("crease c{0} is not present in the current pattern")]
    UnknownCrease(CreaseId),
    #[error("not crimpable: {0}")]
    CountLaw(StuckSequence),
    #[error("pattern is not flat-foldable: {0}")]
    Unfoldable(StuckSequence),
    #[error("integer overflow while folding")]
    Overflow,
}
