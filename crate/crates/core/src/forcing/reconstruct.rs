use thiserror::Error;

use crate::fold::cancel_pairs;
use crate::fold::scan::{scan, CrimpEvent, CrimpHandler};
use crate::fold::{is_flat_foldable, StuckSequence};
use crate::pattern::{CreaseId, CreasePattern, Mv, MvAssignment, MvPattern, PartialMvAssignment};
use crate::scalar::Coord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("{found} labels for a pattern with {expected} creases")]
    LengthMismatch { expected: usize, found: usize },
    #[error("end crease c{0} is unlabeled")]
    UnlabeledEndCrease(CreaseId),
    #[error("crimpable sequence {creases:?} has fewer than {needed} labeled creases of one type")]
    UnderLabeled { creases: Vec<CreaseId>, needed: usize },
    #[error("crimpable sequence {creases:?} has labeled creases of both types and unlabeled ones; the completion is ambiguous")]
    Ambiguous { creases: Vec<CreaseId> },
    #[error("crease c{crease} is {found} from an earlier crimp but the sequence containing it needs {needed}")]
    Conflict { crease: CreaseId, found: Mv, needed: Mv },
    #[error("the labels cannot fold: {0}")]
    Unfoldable(StuckSequence),
}

struct Resolver<'a> {
    given: &'a PartialMvAssignment,
    labels: Vec<Option<Mv>>,
}

impl<S: Coord> CrimpHandler<S> for Resolver<'_> {
    type Error = ReconstructError;

    fn crimp(&mut self, e: CrimpEvent<'_, S>) -> Result<Option<CreaseId>, ReconstructError> {
        let needed = e.creases.len() / 2;
        if e.creases.iter().any(|&c| self.labels[c - 1].is_none()) {
            // Labels given for this sequence must all share one type T
            // (at least ⌊size/2⌋ of them); everything else is the opposite.
            let given: Vec<Mv> = e.creases.iter().filter_map(|&c| self.given.label(c)).collect();
            let Some(&t) = given.first() else {
                return Err(ReconstructError::UnderLabeled { creases: e.creases.to_vec(), needed });
            };
            if given.iter().any(|&l| l != t) {
                return Err(ReconstructError::Ambiguous { creases: e.creases.to_vec() });
            }
            if given.len() < needed {
                return Err(ReconstructError::UnderLabeled { creases: e.creases.to_vec(), needed });
            }
            for &c in e.creases {
                if self.given.label(c).is_some() {
                    continue;
                }
                match self.labels[c - 1] {
                    None => self.labels[c - 1] = Some(t.opposite()),
                    Some(found) if found != t.opposite() => {
                        return Err(ReconstructError::Conflict { crease: c, found, needed: t.opposite() })
                    }
                    Some(_) => {}
                }
            }
        }
        let label = |c: CreaseId| self.labels[c - 1].expect("resolved above");
        let (_, rest) = cancel_pairs(e.creases, label);
        if rest.len() > 1 {
            return Err(ReconstructError::Unfoldable(StuckSequence {
                creases: e.creases.to_vec(),
                labels: e.creases.iter().map(|&c| label(c)).collect(),
                remaining: rest,
            }));
        }
        Ok(rest.first().copied())
    }
}

/// Completes `partial` to the foldable assignment it forces, assuming the
/// labeled creases are a forcing set as produced by
/// [`forcing_set`](super::forcing_set).
///
/// The crimp forest depends only on interval lengths, so the reduction can
/// run before the labels are known. At each crimpable sequence the given
/// labels all share one type; every other crease of the sequence gets the
/// opposite type.
pub fn reconstruct_mv<S: Coord>(
    c: &CreasePattern<S>,
    partial: &PartialMvAssignment,
) -> Result<MvAssignment, ReconstructError> {
    if partial.len() != c.num_creases() {
        return Err(ReconstructError::LengthMismatch { expected: c.num_creases(), found: partial.len() });
    }
    let mut resolver = Resolver { given: partial, labels: partial.labels().to_vec() };
    let out = scan(c.intervals().as_slice(), &mut resolver)?;
    if let Some(&end) = out.end_creases.iter().find(|&&e| partial.label(e).is_none()) {
        return Err(ReconstructError::UnlabeledEndCrease(end));
    }
    let mv = MvAssignment::new(
        resolver.labels.into_iter().map(|l| l.expect("every crease is crimped or an end crease")).collect(),
    );
    let p = MvPattern { pattern: c.clone(), mv };
    match is_flat_foldable(&p).certificate() {
        None => Ok(p.mv),
        Some(stuck) => Err(ReconstructError::Unfoldable(stuck.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::forcing_set;

    fn nine() -> CreasePattern {
        CreasePattern::new(vec![0, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24]).unwrap()
    }

    #[test]
    fn nine_crease_round_trip() {
        let mv = MvAssignment::parse("MMVVVMVMM").unwrap();
        let p = MvPattern { pattern: nine(), mv: mv.clone() };
        let f = forcing_set(&p).unwrap();
        let partial = mv.restrict_to(f.creases.iter().copied());
        assert_eq!(partial.to_string(), "MM???M?MM");
        assert_eq!(reconstruct_mv(&nine(), &partial).unwrap(), mv);
    }

    #[test]
    fn fully_labeled_returned_verbatim() {
        let mv = MvAssignment::parse("MMVVVMVMM").unwrap();
        assert_eq!(reconstruct_mv(&nine(), &mv.restrict_to(1..=9)).unwrap(), mv);
        let bad = MvAssignment::parse("MMMVVMVMM").unwrap();
        assert!(matches!(reconstruct_mv(&nine(), &bad.restrict_to(1..=9)), Err(ReconstructError::Unfoldable(_))));
    }

    #[test]
    fn precondition_errors() {
        let partial = PartialMvAssignment::parse("MM???M?M?").unwrap();
        assert_eq!(reconstruct_mv(&nine(), &partial), Err(ReconstructError::UnlabeledEndCrease(9)));
        let partial = PartialMvAssignment::parse("?????????").unwrap();
        assert!(matches!(reconstruct_mv(&nine(), &partial), Err(ReconstructError::UnderLabeled { .. })));
        let partial = PartialMvAssignment::parse("MV?VVMVMM").unwrap();
        assert!(matches!(reconstruct_mv(&nine(), &partial), Err(ReconstructError::Ambiguous { .. })));
        let partial = PartialMvAssignment::parse("M?").unwrap();
        assert!(matches!(reconstruct_mv(&nine(), &partial), Err(ReconstructError::LengthMismatch { .. })));
    }

    #[test]
    fn single_crimp_completion() {
        let c = CreasePattern::new(vec![0, 3, 4, 7]).unwrap();
        let got = reconstruct_mv(&c, &PartialMvAssignment::parse("M?").unwrap()).unwrap();
        assert_eq!(got.to_string(), "MV");
        let got = reconstruct_mv(&c, &PartialMvAssignment::parse("?M").unwrap()).unwrap();
        assert_eq!(got.to_string(), "VM");
    }
}
