//! The crimp forest: one node per crimped sequence, with a node's parent
//! being the later crimp that consumed its survivor.

pub mod shuffled;

use serde::Serialize;
use serde_json::{json, Value};

use crate::fold::{reduce, FoldError, Reduction, ScanStats};
use crate::pattern::{CreaseId, Mv, MvPattern};
use crate::scalar::Coord;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestNode<S = i64> {
    /// Position in crimp order (the node was the `id + 1`-th crimp).
    pub id: NodeId,
    /// Original crease ids, left to right.
    pub creases: Vec<CreaseId>,
    /// Labels of `creases` at crimp time.
    pub labels: Vec<Mv>,
    pub interval_distance: S,
    pub survivor: Option<CreaseId>,
    /// Children ordered by leftmost crease.
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    /// `first_time[i]` is false when `creases[i]` is a child's survivor.
    pub first_time: Vec<bool>,
}

impl<S> ForestNode<S> {
    pub fn size(&self) -> usize {
        self.creases.len()
    }

    /// Label used in exports: `(c_i,...,c_j) d=...`.
    pub fn label(&self) -> String
    where
        S: std::fmt::Display,
    {
        let cs: Vec<String> = self.creases.iter().map(|c| format!("c{c}")).collect();
        format!("({}) d={}", cs.join(","), self.interval_distance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrimpForest<S = i64> {
    pub nodes: Vec<ForestNode<S>>,
    /// Roots ordered by leftmost crease.
    pub roots: Vec<NodeId>,
    /// Creases surviving every crimp, left to right.
    pub end_sequence: Vec<CreaseId>,
    /// Positions of the end creases in the fully crimped pattern.
    pub end_positions: Vec<S>,
    /// Interval lengths of the fully crimped pattern.
    pub end_intervals: Vec<S>,
    /// Total monocrimps, `m = Σ ⌊size / 2⌋`.
    pub monocrimps: usize,
    pub num_creases: usize,
    pub stats: ScanStats,
}

impl<S: Coord> CrimpForest<S> {
    /// `e`, the number of end creases.
    pub fn end_count(&self) -> usize {
        self.end_sequence.len()
    }

    pub fn node(&self, id: NodeId) -> &ForestNode<S> {
        &self.nodes[id]
    }

    /// Node ids in preorder, roots and children left to right.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<NodeId> = self.roots.iter().rev().copied().collect();
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.nodes[id].children.iter().rev());
        }
        out
    }

    /// Assembles the forest from crimps listed in execution order.
    pub fn from_reduction(r: &Reduction<S>, start: S, num_creases: usize) -> Self {
        let mut owner: Vec<Option<NodeId>> = vec![None; num_creases + 1];
        let mut nodes: Vec<ForestNode<S>> = Vec::with_capacity(r.crimps.len());
        for (id, c) in r.crimps.iter().enumerate() {
            let mut children = Vec::new();
            let mut first_time = Vec::with_capacity(c.creases.len());
            for &crease in &c.creases {
                match owner[crease].take() {
                    Some(child) => {
                        nodes[child].parent = Some(id);
                        children.push(child);
                        first_time.push(false);
                    }
                    None => first_time.push(true),
                }
            }
            if let Some(s) = c.survivor {
                owner[s] = Some(id);
            }
            children.sort_by_key(|&ch| nodes[ch].creases[0]);
            nodes.push(ForestNode {
                id,
                creases: c.creases.clone(),
                labels: c.labels.clone(),
                interval_distance: c.interval_distance,
                survivor: c.survivor,
                children,
                parent: None,
                first_time,
            });
        }
        let mut roots: Vec<NodeId> = nodes.iter().filter(|n| n.parent.is_none()).map(|n| n.id).collect();
        roots.sort_by_key(|&id| nodes[id].creases[0]);
        let mut end_positions = Vec::with_capacity(r.end_creases.len());
        let mut at = start;
        for &len in &r.end_intervals[..r.end_creases.len()] {
            at = at + len;
            end_positions.push(at);
        }
        CrimpForest {
            monocrimps: nodes.iter().map(|n| n.size() / 2).sum(),
            nodes,
            roots,
            end_sequence: r.end_creases.clone(),
            end_positions,
            end_intervals: r.end_intervals.clone(),
            num_creases,
            stats: r.stats,
        }
    }
}

/// Builds the crimp forest with the linear left-to-right scan.
pub fn build_crimp_forest<S: Coord>(p: &MvPattern<S>) -> Result<CrimpForest<S>, FoldError> {
    let r = reduce(p)?;
    Ok(CrimpForest::from_reduction(&r, p.pattern.position(0), p.num_creases()))
}

/// Whether two forests of the same crease pattern have the same shape,
/// matching node sizes and interval distances, and first-time creases in
/// the same places.
pub fn forest_isomorphic<S: Coord>(a: &CrimpForest<S>, b: &CrimpForest<S>) -> bool {
    if a.num_creases != b.num_creases || a.roots.len() != b.roots.len() || a.nodes.len() != b.nodes.len() {
        return false;
    }
    let mut pairs: Vec<(NodeId, NodeId)> = a.roots.iter().copied().zip(b.roots.iter().copied()).collect();
    while let Some((x, y)) = pairs.pop() {
        let (nx, ny) = (&a.nodes[x], &b.nodes[y]);
        let first = |n: &ForestNode<S>| -> Vec<Option<CreaseId>> {
            n.creases.iter().zip(&n.first_time).map(|(&c, &f)| f.then_some(c)).collect()
        };
        if nx.size() != ny.size()
            || nx.interval_distance != ny.interval_distance
            || nx.children.len() != ny.children.len()
            || first(nx) != first(ny)
        {
            return false;
        }
        pairs.extend(nx.children.iter().copied().zip(ny.children.iter().copied()));
    }
    a.end_sequence.len() == b.end_sequence.len() && a.end_intervals == b.end_intervals
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// DOT digraph (edges parent -> child, nodes named `a1, a2, ...` in crimp
/// order) or JSON `{"roots":[...]}` with nested `children`.
pub fn export_forest<S: Coord + Serialize>(f: &CrimpForest<S>, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut out = String::from("digraph crimp_forest {\n");
            for n in &f.nodes {
                out.push_str(&format!("  a{} [label=\"{}\"];\n", n.id + 1, n.label()));
            }
            for id in f.preorder() {
                for &ch in &f.nodes[id].children {
                    out.push_str(&format!("  a{} -> a{};\n", id + 1, ch + 1));
                }
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            fn tree<S: Coord + Serialize>(f: &CrimpForest<S>, id: NodeId) -> Value {
                let n = &f.nodes[id];
                let labels: String = n.labels.iter().map(|l| l.as_char()).collect();
                json!({
                    "id": id + 1,
                    "label": n.label(),
                    "creases": n.creases,
                    "mv": labels,
                    "d": n.interval_distance,
                    "survivor": n.survivor,
                    "children": n.children.iter().map(|&c| tree(f, c)).collect::<Vec<_>>(),
                })
            }
            let roots: Vec<Value> = f.roots.iter().map(|&r| tree(f, r)).collect();
            json!({ "roots": roots }).to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nine(mv: &str) -> MvPattern {
        MvPattern::from_parts(vec![0, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24], mv).unwrap()
    }

    #[test]
    fn nine_crease_structure() {
        let f = build_crimp_forest(&nine("MMVVVMVMM")).unwrap();
        let seqs: Vec<_> = f.nodes.iter().map(|n| n.creases.clone()).collect();
        assert_eq!(seqs, vec![vec![1, 2, 3], vec![1, 4, 5], vec![6, 7, 8], vec![5, 8, 9]]);
        assert_eq!(f.roots, vec![3]);
        assert_eq!(f.nodes[3].children, vec![1, 2]);
        assert_eq!(f.nodes[1].children, vec![0]);
        assert_eq!(f.end_sequence, vec![9]);
        assert_eq!(f.monocrimps, 4);
        assert_eq!(f.nodes[3].first_time, vec![false, false, true]);
        assert_eq!(f.end_positions, vec![4]);
    }

    #[test]
    fn survivors_differ_but_forests_match() {
        let a = build_crimp_forest(&nine("MMVVVMVMM")).unwrap();
        let b = build_crimp_forest(&nine("VMMVVMVMM")).unwrap();
        assert_eq!(a.nodes[0].survivor, Some(1));
        assert_eq!(b.nodes[0].survivor, Some(3));
        assert!(forest_isomorphic(&a, &b));
        assert!(forest_isomorphic(&a, &a));
        let c = build_crimp_forest(&MvPattern::from_parts(vec![0, 3, 4, 7], "MV").unwrap()).unwrap();
        assert!(!forest_isomorphic(&a, &c));
    }

    #[test]
    fn end_sequences_have_no_nodes() {
        let f = build_crimp_forest(&MvPattern::from_parts(vec![0, 1, 3, 6, 8, 9], "MMMM").unwrap()).unwrap();
        assert!(f.nodes.is_empty());
        assert_eq!(f.end_sequence, vec![1, 2, 3, 4]);
        let f = build_crimp_forest(&MvPattern::from_parts(vec![0, 2, 4, 6, 8], "MVM").unwrap()).unwrap();
        assert!(f.nodes.is_empty());
        assert_eq!(f.end_count(), 3);
    }

    #[test]
    fn exports() {
        let empty = build_crimp_forest(&MvPattern::from_parts(vec![0, 5], "").unwrap()).unwrap();
        assert_eq!(export_forest(&empty, ExportFormat::Json), r#"{"roots":[]}"#);
        assert_eq!(export_forest(&empty, ExportFormat::Dot), "digraph crimp_forest {\n}\n");

        let f = build_crimp_forest(&nine("MMVVVMVMM")).unwrap();
        let dot = export_forest(&f, ExportFormat::Dot);
        assert!(dot.contains("a4 [label=\"(c5,c8,c9) d=3\"]"));
        let edges: Vec<_> = dot.lines().filter(|l| l.contains("->")).map(str::trim).collect();
        assert_eq!(edges, vec!["a4 -> a2;", "a4 -> a3;", "a2 -> a1;"]);

        let single = build_crimp_forest(&MvPattern::from_parts(vec![0, 3, 4, 7], "MV").unwrap()).unwrap();
        let dot = export_forest(&single, ExportFormat::Dot);
        assert!(!dot.contains("->"));
        let v: Value = serde_json::from_str(&export_forest(&single, ExportFormat::Json)).unwrap();
        assert_eq!(v["roots"][0]["label"], "(c1,c2) d=1");
        assert_eq!(v["roots"][0]["children"].as_array().unwrap().len(), 0);
    }
}
