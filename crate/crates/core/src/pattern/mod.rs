//! Crease patterns, mountain-valley assignments and their validation.
//!
//! A pattern is a strictly increasing list of positions `c_0 < c_1 < ... < c_n`.
//! `c_0` and `c_n` are the paper ends; the creases are `c_1 ..= c_{n-1}`, and
//! a crease is identified by its index into the position list, so crease ids
//! run from 1 to `n - 1` exactly as in the usual `c_i` notation.

mod generate;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Coord;

pub use generate::{
    generate_random, generate_random_with, nested_tessellation, tessellation, GenerateError,
    Strategy, REJECTION_ATTEMPTS, REJECTION_MAX_CREASES,
};
pub use text::{parse_pattern, serialize_partial, serialize_pattern, ParsedPattern};

/// Index of a crease in its pattern's position list (`1 ..= n - 1`).
pub type CreaseId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("a crease pattern needs at least two positions (the paper ends), got {0}")]
    TooFewPositions(usize),
    #[error("positions must be strictly increasing: c_{index} = {value} follows {prev}")]
    NotIncreasing { index: usize, prev: String, value: String },
    #[error("mv assignment has {found} labels but the pattern has {expected} creases")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line {line}: position `{token}` is not an integer (scale the pattern to integer units)")]
    NonInteger { line: usize, token: String },
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("invalid mv label `{0}` (expected M, V or ?)")]
    InvalidLabel(char),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error("json: {0}")]
    Json(String),
}

/// Mountain or valley.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mv {
    M,
    V,
}

impl Mv {
    pub fn opposite(self) -> Mv {
        match self {
            Mv::M => Mv::V,
            Mv::V => Mv::M,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Mv::M => 'M',
            Mv::V => 'V',
        }
    }

    pub fn from_char(c: char) -> Result<Mv, PatternError> {
        match c {
            'M' => Ok(Mv::M),
            'V' => Ok(Mv::V),
            other => Err(PatternError::InvalidLabel(other)),
        }
    }
}

impl fmt::Display for Mv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Strictly increasing positions `c_0 .. c_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CreasePattern<S = i64> {
    positions: Vec<S>,
}

impl<S: Coord> CreasePattern<S> {
    pub fn new(positions: Vec<S>) -> Result<Self, PatternError> {
        if positions.len() < 2 {
            return Err(PatternError::TooFewPositions(positions.len()));
        }
        for i in 1..positions.len() {
            if positions[i] <= positions[i - 1] {
                return Err(PatternError::NotIncreasing {
                    index: i,
                    prev: positions[i - 1].to_string(),
                    value: positions[i].to_string(),
                });
            }
        }
        // Every interval and every fused interval is bounded by the total
        // length, so checking it once keeps all later arithmetic in range.
        let (first, last) = (positions[0], positions[positions.len() - 1]);
        if last.sub_checked(first).is_none() {
            return Err(PatternError::Overflow(format!(
                "paper length {last} - {first} does not fit the coordinate type"
            )));
        }
        Ok(CreasePattern { positions })
    }

    /// Builds a pattern starting at `start` from consecutive interval lengths.
    pub fn from_intervals(start: S, lengths: &[S]) -> Result<Self, PatternError> {
        let mut positions = Vec::with_capacity(lengths.len() + 1);
        positions.push(start);
        let mut at = start;
        for &len in lengths {
            at = at
                .add_checked(len)
                .ok_or_else(|| PatternError::Overflow(format!("position after adding interval {len}")))?;
            positions.push(at);
        }
        Self::new(positions)
    }

    pub fn positions(&self) -> &[S] {
        &self.positions
    }

    pub fn position(&self, index: usize) -> S {
        self.positions[index]
    }

    pub fn num_creases(&self) -> usize {
        self.positions.len() - 2
    }

    pub fn crease_ids(&self) -> std::ops::Range<CreaseId> {
        1..self.positions.len() - 1
    }

    pub fn num_intervals(&self) -> usize {
        self.positions.len() - 1
    }

    /// Length of `[c_i, c_{i+1}]`.
    pub fn interval(&self, i: usize) -> S {
        self.positions[i + 1] - self.positions[i]
    }

    pub fn intervals(&self) -> IntervalSequence<S> {
        IntervalSequence {
            lengths: self.positions.windows(2).map(|w| w[1] - w[0]).collect(),
        }
    }

    pub fn total_length(&self) -> S {
        self.positions[self.positions.len() - 1] - self.positions[0]
    }
}

/// Interval lengths `λ_i = c_{i+1} - c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSequence<S = i64> {
    lengths: Vec<S>,
}

impl<S: Coord> IntervalSequence<S> {
    pub fn as_slice(&self) -> &[S] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn into_vec(self) -> Vec<S> {
        self.lengths
    }
}

/// One label per crease, `labels[i - 1]` belonging to crease `c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MvAssignment {
    labels: Vec<Mv>,
}

impl MvAssignment {
    pub fn new(labels: Vec<Mv>) -> Self {
        MvAssignment { labels }
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        text.chars().map(Mv::from_char).collect::<Result<Vec<_>, _>>().map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of crease `c_id` (1-based).
    pub fn label(&self, id: CreaseId) -> Mv {
        self.labels[id - 1]
    }

    pub fn labels(&self) -> &[Mv] {
        &self.labels
    }

    pub fn set(&mut self, id: CreaseId, mv: Mv) {
        self.labels[id - 1] = mv;
    }

    /// Keeps only the labels of `creases`; every other crease becomes unknown.
    pub fn restrict_to(&self, creases: impl IntoIterator<Item = CreaseId>) -> PartialMvAssignment {
        let mut labels = vec![None; self.labels.len()];
        for id in creases {
            labels[id - 1] = Some(self.labels[id - 1]);
        }
        PartialMvAssignment { labels }
    }

    /// Enumerates every assignment on `n` creases, bit `i` of the mask
    /// deciding crease `i + 1` (set = V).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::new((0..n).map(|i| if mask >> i & 1 == 1 { Mv::V } else { Mv::M }).collect())
    }
}

impl fmt::Display for MvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels.iter().try_for_each(|l| write!(f, "{l}"))
    }
}

/// Per-crease labels where `None` marks an unknown (`?`) crease.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialMvAssignment {
    labels: Vec<Option<Mv>>,
}

impl PartialMvAssignment {
    pub fn new(labels: Vec<Option<Mv>>) -> Self {
        PartialMvAssignment { labels }
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        text.chars()
            .map(|c| if c == '?' { Ok(None) } else { Mv::from_char(c).map(Some) })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, id: CreaseId) -> Option<Mv> {
        self.labels[id - 1]
    }

    pub fn labels(&self) -> &[Option<Mv>] {
        &self.labels
    }

    pub fn known(&self) -> impl Iterator<Item = CreaseId> + '_ {
        self.labels.iter().enumerate().filter(|(_, l)| l.is_some()).map(|(i, _)| i + 1)
    }

    /// The full assignment, if no label is unknown.
    pub fn complete(&self) -> Option<MvAssignment> {
        self.labels.iter().copied().collect::<Option<Vec<_>>>().map(MvAssignment::new)
    }
}

impl fmt::Display for PartialMvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels
            .iter()
            .try_for_each(|l| write!(f, "{}", l.map_or('?', Mv::as_char)))
    }
}

/// A crease pattern together with a full MV assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MvPattern<S = i64> {
    pub pattern: CreasePattern<S>,
    pub mv: MvAssignment,
}

impl<S: Coord> MvPattern<S> {
    pub fn new(pattern: CreasePattern<S>, mv: MvAssignment) -> Result<Self, PatternError> {
        if mv.len() != pattern.num_creases() {
            return Err(PatternError::LengthMismatch { expected: pattern.num_creases(), found: mv.len() });
        }
        Ok(MvPattern { pattern, mv })
    }

    /// Shorthand for tests and examples: positions plus an `"MV.."` string.
    pub fn from_parts(positions: Vec<S>, mv: &str) -> Result<Self, PatternError> {
        Self::new(CreasePattern::new(positions)?, MvAssignment::parse(mv)?)
    }

    pub fn label(&self, id: CreaseId) -> Mv {
        self.mv.label(id)
    }

    pub fn num_creases(&self) -> usize {
        self.pattern.num_creases()
    }

    pub fn with_mv(&self, mv: MvAssignment) -> Result<Self, PatternError> {
        Self::new(self.pattern.clone(), mv)
    }
}

/// A crease pattern with some labels unknown.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialMvPattern<S = i64> {
    pub pattern: CreasePattern<S>,
    pub partial: PartialMvAssignment,
}

impl<S: Coord> PartialMvPattern<S> {
    pub fn new(pattern: CreasePattern<S>, partial: PartialMvAssignment) -> Result<Self, PatternError> {
        if partial.len() != pattern.num_creases() {
            return Err(PatternError::LengthMismatch {
                expected: pattern.num_creases(),
                found: partial.len(),
            });
        }
        Ok(PartialMvPattern { pattern, partial })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_are_consecutive_differences() {
        let p = CreasePattern::new(vec![0i64, 3, 4, 7]).unwrap();
        assert_eq!(p.intervals().as_slice(), &[3, 1, 3]);
        let p = CreasePattern::new(vec![0i64, 5]).unwrap();
        assert_eq!(p.intervals().as_slice(), &[5]);
        assert_eq!(p.num_creases(), 0);
        assert!(p.crease_ids().is_empty());
    }

    #[test]
    fn nine_crease_intervals() {
        let p = CreasePattern::new(vec![0i64, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24]).unwrap();
        assert_eq!(p.intervals().as_slice(), &[4, 1, 1, 2, 2, 3, 2, 2, 3, 4]);
        assert_eq!(p.crease_ids(), 1..10);
    }

    #[test]
    fn rejects_bad_positions() {
        assert_eq!(CreasePattern::<i64>::new(vec![1]), Err(PatternError::TooFewPositions(1)));
        assert!(matches!(
            CreasePattern::new(vec![0i64, 3, 3, 7]),
            Err(PatternError::NotIncreasing { index: 2, .. })
        ));
        assert!(matches!(CreasePattern::new(vec![i64::MIN, 0, i64::MAX]), Err(PatternError::Overflow(_))));
        assert!(CreasePattern::new(vec![i32::MIN / 2, i32::MAX / 2]).is_ok());
    }

    #[test]
    fn assignment_length_must_match() {
        let err = MvPattern::from_parts(vec![0i64, 3, 4, 7], "M").unwrap_err();
        assert_eq!(err, PatternError::LengthMismatch { expected: 2, found: 1 });
        assert!(MvPattern::from_parts(vec![0i64, 5], "").is_ok());
    }

    #[test]
    fn restriction_keeps_only_chosen_labels() {
        let mv = MvAssignment::parse("MVVM").unwrap();
        let partial = mv.restrict_to([2, 4]);
        assert_eq!(partial.to_string(), "?V?M");
        assert_eq!(partial.known().collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(partial.complete(), None);
        assert_eq!(mv.restrict_to(1..=4).complete(), Some(mv));
    }
}
