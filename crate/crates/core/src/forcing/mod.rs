//! Minimum forcing sets and reconstruction of an assignment from one.

mod reconstruct;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::fold::FoldError;
use crate::forest::{build_crimp_forest, CrimpForest, NodeId};
use crate::oracle::{self, ForcingVerdict, OracleBudget, OracleError};
use crate::pattern::{CreaseId, Mv, MvPattern};
use crate::scalar::Coord;

pub use reconstruct::{reconstruct_mv, ReconstructError};

/// Why a crease was put into the forcing set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// A crease of the end sequence.
    EndCrease,
    /// An M crease of an even-size node.
    EvenNodeM(NodeId),
    /// A majority crease of an odd node whose survivor was already forced.
    MajorityAtNode(NodeId),
    /// A minority crease of an odd node whose survivor was not forced.
    MinorityAtNode(NodeId),
}

impl Source {
    pub fn node(&self) -> Option<NodeId> {
        match *self {
            Source::EndCrease => None,
            Source::EvenNodeM(n) | Source::MajorityAtNode(n) | Source::MinorityAtNode(n) => Some(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingSet {
    /// Sorted crease ids.
    pub creases: Vec<CreaseId>,
    pub sources: BTreeMap<CreaseId, Source>,
    /// Monocrimps in the reduction.
    pub m: usize,
    /// End creases.
    pub e: usize,
}

impl ForcingSet {
    pub fn len(&self) -> usize {
        self.creases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.creases.is_empty()
    }

    pub fn contains(&self, c: CreaseId) -> bool {
        self.sources.contains_key(&c)
    }

    /// `{"creases":[...],"m":..,"e":..,"sources":{"9":"end_crease","1":{"minority_at_node":2},...}}`,
    /// node numbers 1-based in crimp order.
    pub fn to_json(&self) -> serde_json::Value {
        let sources: serde_json::Map<String, serde_json::Value> = self
            .sources
            .iter()
            .map(|(c, s)| {
                let v = match *s {
                    Source::EndCrease => json!("end_crease"),
                    Source::EvenNodeM(n) => json!({ "even_node_m": n + 1 }),
                    Source::MajorityAtNode(n) => json!({ "majority_at_node": n + 1 }),
                    Source::MinorityAtNode(n) => json!({ "minority_at_node": n + 1 }),
                };
                (c.to_string(), v)
            })
            .collect();
        json!({ "creases": self.creases, "m": self.m, "e": self.e, "sources": sources })
    }
}

/// Walks the forest in preorder: end creases first, then per node its M
/// creases (even size), its majority (survivor already forced) or its
/// minority (survivor not forced). Each node adds `⌊size/2⌋` creases.
pub fn forcing_set_from_forest<S: Coord>(f: &CrimpForest<S>) -> ForcingSet {
    let mut sources: BTreeMap<CreaseId, Source> = f.end_sequence.iter().map(|&c| (c, Source::EndCrease)).collect();
    for id in f.preorder() {
        let node = f.node(id);
        let (pick, source) = if node.size() % 2 == 0 {
            (Mv::M, Source::EvenNodeM(id))
        } else {
            let survivor = node.survivor.expect("odd node has a survivor");
            let majority = node.labels[node.creases.iter().position(|&c| c == survivor).unwrap()];
            if sources.contains_key(&survivor) {
                (majority, Source::MajorityAtNode(id))
            } else {
                (majority.opposite(), Source::MinorityAtNode(id))
            }
        };
        let mut added = 0;
        for (&c, &l) in node.creases.iter().zip(&node.labels) {
            if l == pick && !sources.contains_key(&c) {
                sources.insert(c, source);
                added += 1;
            }
        }
        debug_assert_eq!(added, node.size() / 2, "node {id} added {added} creases");
    }
    ForcingSet {
        creases: sources.keys().copied().collect(),
        sources,
        m: f.monocrimps,
        e: f.end_count(),
    }
}

/// A minimum forcing set of a foldable pattern, in linear time.
pub fn forcing_set<S: Coord>(p: &MvPattern<S>) -> Result<ForcingSet, FoldError> {
    Ok(forcing_set_from_forest(&build_crimp_forest(p)?))
}

/// Exhaustively checks that `f` forces `p`'s assignment (see [`oracle::is_forcing`]).
pub fn verify_forcing<S: Coord>(
    p: &MvPattern<S>,
    f: &[CreaseId],
    budget: &OracleBudget,
) -> Result<ForcingVerdict, OracleError> {
    oracle::is_forcing(p, f, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_crease_walkthrough() {
        let p = MvPattern::from_parts(vec![0, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24], "MMVVVMVMM").unwrap();
        let f = forcing_set(&p).unwrap();
        assert_eq!(f.creases, vec![1, 2, 6, 8, 9]);
        assert_eq!((f.m, f.e, f.len()), (4, 1, 5));
        assert_eq!(f.sources[&9], Source::EndCrease);
        assert_eq!(f.sources[&8], Source::MajorityAtNode(3));
        assert_eq!(f.sources[&1], Source::MinorityAtNode(1));
        let json = f.to_json();
        assert_eq!(json["sources"]["9"], "end_crease");
        assert_eq!(json["sources"]["1"]["minority_at_node"], 2);
    }

    #[test]
    fn small_cases() {
        let z = forcing_set(&MvPattern::from_parts(vec![0, 5], "").unwrap()).unwrap();
        assert!(z.is_empty());
        let one = forcing_set(&MvPattern::from_parts(vec![0, 2, 5], "M").unwrap()).unwrap();
        assert_eq!(one.creases, vec![1]);
        let single_crimp = forcing_set(&MvPattern::from_parts(vec![0, 3, 4, 7], "MV").unwrap()).unwrap();
        assert_eq!(single_crimp.creases, vec![1]);
        assert_eq!(single_crimp.sources[&1], Source::EvenNodeM(0));
        assert_eq!((single_crimp.m, single_crimp.e), (1, 0));
    }

    #[test]
    fn verify_delegates_to_oracle() {
        let p = MvPattern::from_parts(vec![0, 3, 4, 7], "MV").unwrap();
        let b = OracleBudget::default();
        assert!(verify_forcing(&p, &[2], &b).unwrap().forcing);
        assert!(!verify_forcing(&p, &[], &b).unwrap().forcing);
        assert!(verify_forcing(&p, &[1, 2], &b).unwrap().forcing);
    }

    #[test]
    fn unfoldable_rejected() {
        let p = MvPattern::from_parts(vec![0, 3, 4, 7], "MM").unwrap();
        assert!(matches!(forcing_set(&p), Err(FoldError::Unfoldable(_))));
    }
}
