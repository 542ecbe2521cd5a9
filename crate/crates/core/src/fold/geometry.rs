//! Folded geometry: where every interval lands and how the layers stack.
//!
//! Coordinates come from the folding map: with the first interval held
//! fixed, each crease reflects everything to its right, so crease images
//! alternate `c_1, 2c_1 - c_2, 2c_1 - 2c_2 + c_3, ...`. Stack levels come
//! from replaying a witness: each monocrimp or end fold glues neighbouring
//! blocks into one, stacking the blocks whole (never interleaving them).
//! Both halves are checked against each other.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::pattern::{CreaseId, Mv, MvAssignment, MvPattern};
use crate::scalar::Coord;

use super::{decide, FoldError, FoldOp, Side};

/// Image of `x` after folding about each of `creases[1..]` in turn, with
/// `[creases[0], creases[1]]` held fixed:
/// `2a_2 - 2a_3 + 2a_4 - ... ± x`. `None` on overflow.
pub fn fold_point<S: Coord>(creases: &[S], x: S) -> Option<S> {
    if creases.len() < 2 {
        return Some(x);
    }
    let mut acc = S::zero();
    let mut sign_pos = true;
    for &a in &creases[1..] {
        let twice = a.double_checked()?;
        acc = if sign_pos { acc.add_checked(twice)? } else { acc.sub_checked(twice)? };
        sign_pos = !sign_pos;
    }
    if sign_pos {
        acc.add_checked(x)
    } else {
        acc.sub_checked(x)
    }
}

/// One original interval in the folded state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Layer<S = i64> {
    /// Image segment `[lo, hi]`.
    pub lo: S,
    pub hi: S,
    /// Whether the interval runs right-to-left in the folded state.
    pub flipped: bool,
    /// Stack level, 0 at the bottom.
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldedState<S = i64> {
    /// One layer per original interval, in paper order.
    pub layers: Vec<Layer<S>>,
    /// Folded point of crease `c_i` at index `i - 1`.
    pub crease_points: Vec<S>,
}

impl<S: Coord> FoldedState<S> {
    /// Whether every layer keeps its original length.
    pub fn preserves_lengths(&self, pattern: &crate::pattern::CreasePattern<S>) -> bool {
        self.layers.len() == pattern.num_intervals()
            && self.layers.iter().enumerate().all(|(i, l)| l.hi - l.lo == pattern.interval(i))
    }

    /// Whether the stacking realizes `mv`: a valley brings the next layer
    /// above an unflipped (below a flipped) previous layer.
    pub fn agrees_with(&self, mv: &MvAssignment) -> bool {
        (1..self.layers.len()).all(|j| {
            let (a, b) = (&self.layers[j - 1], &self.layers[j]);
            let valley = (b.level > a.level) != a.flipped;
            (mv.label(j) == Mv::V) == valley
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Place<S> {
    reflect: bool,
    offset: S,
}

enum Node<S> {
    Leaf(usize),
    /// Children bottom to top, each placed in the parent's frame.
    Join(Vec<(usize, Place<S>)>),
}

#[derive(Clone, Copy)]
struct Block<S> {
    node: usize,
    len: S,
    left: Option<CreaseId>,
    right: Option<CreaseId>,
}

/// Folds a foldable pattern along its witness.
pub fn folded_state<S: Coord>(p: &MvPattern<S>) -> Result<FoldedState<S>, FoldError> {
    let reduction = decide::reduce(p)?;
    let pattern = &p.pattern;
    let n = pattern.num_intervals();

    // Stack levels by replay.
    let mut nodes: Vec<Node<S>> = (0..n).map(Node::Leaf).collect();
    let mut blocks: Vec<Block<S>> = (0..n)
        .map(|i| Block {
            node: i,
            len: pattern.interval(i),
            left: (i > 0).then_some(i),
            right: (i + 1 < n).then_some(i + 1),
        })
        .collect();
    // crease -> (block on its left, block on its right)
    let mut around: Vec<(usize, usize)> = (0..n).map(|c| (c.wrapping_sub(1), c)).collect();
    let ov = |v: Option<S>| v.ok_or(FoldError::Overflow);
    let keep = Place { reflect: false, offset: S::zero() };

    let mut last = 0;
    for op in reduction.witness() {
        let (children, len, left, right) = match op {
            FoldOp::Monocrimp { creases: [la, lb] } => {
                let (a, b) = around[la];
                let c = around[lb].1;
                let (ba, bb, bc) = (blocks[a], blocks[b], blocks[c]);
                let shift = ov(ba.len.sub_checked(bb.len))?;
                let mut kids = vec![
                    (ba.node, keep),
                    (bb.node, Place { reflect: true, offset: ba.len }),
                    (bc.node, Place { reflect: false, offset: shift }),
                ];
                if p.mv.label(la) == Mv::M {
                    kids.reverse();
                }
                (kids, ov(shift.add_checked(bc.len))?, ba.left, bc.right)
            }
            FoldOp::EndFold { crease, side } => {
                let (l, r) = around[crease];
                let (x, y) = match side {
                    Side::Left => (l, r),
                    Side::Right => (r, l),
                };
                let (bx, by) = (blocks[x], blocks[y]);
                let place_x = match side {
                    Side::Left => Place { reflect: true, offset: bx.len },
                    Side::Right => Place { reflect: true, offset: by.len },
                };
                let mut kids = vec![(by.node, keep), (bx.node, place_x)];
                if p.mv.label(crease) == Mv::M {
                    kids.reverse();
                }
                let (left, right) = match side {
                    Side::Left => (None, by.right),
                    Side::Right => (by.left, None),
                };
                (kids, by.len, left, right)
            }
        };
        nodes.push(Node::Join(children));
        let id = blocks.len();
        blocks.push(Block { node: nodes.len() - 1, len, left, right });
        if let Some(c) = left {
            around[c].1 = id;
        }
        if let Some(c) = right {
            around[c].0 = id;
        }
        last = id;
    }
    let root = blocks[last].node;

    // Walk the tree top-down composing placements; visiting order is the
    // stack order (a reflected subtree is upside down).
    let mut local: Vec<Option<(bool, S)>> = vec![None; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut work: Vec<(usize, bool, S)> = vec![(root, false, S::zero())];
    while let Some((node, reflect, offset)) = work.pop() {
        match &nodes[node] {
            Node::Leaf(i) => {
                local[*i] = Some((reflect, offset));
                order.push(*i);
            }
            Node::Join(kids) => {
                // push in reverse of visiting order
                let visit: Box<dyn Iterator<Item = &(usize, Place<S>)>> =
                    if reflect { Box::new(kids.iter()) } else { Box::new(kids.iter().rev()) };
                for &(child, place) in visit {
                    let moved = if reflect { offset - place.offset } else { offset + place.offset };
                    work.push((child, reflect != place.reflect, moved));
                }
            }
        }
    }
    let mut level = vec![0; n];
    for (lvl, &i) in order.iter().enumerate() {
        level[i] = lvl;
    }

    // Coordinates by the folding map, first interval fixed.
    let pos = pattern.positions();
    let mut layers = Vec::with_capacity(n);
    let mut crease_points = Vec::with_capacity(n.saturating_sub(1));
    let mut at = pos[0];
    let flip0 = local[0].is_some_and(|(r, _)| r);
    for i in 0..n {
        let len = pattern.interval(i);
        let flipped = i % 2 == 1;
        let next = if flipped { ov(at.sub_checked(len))? } else { ov(at.add_checked(len))? };
        let (lo, hi) = if flipped { (next, at) } else { (at, next) };
        let lvl = if flip0 { n - 1 - level[i] } else { level[i] };
        layers.push(Layer { lo, hi, flipped, level: lvl });
        if i + 1 < n {
            crease_points.push(next);
        }
        at = next;
    }

    debug_assert!(replay_matches(&local, flip0, pattern, &layers), "replay disagrees with the folding map");
    Ok(FoldedState { layers, crease_points })
}

/// The replayed placements, after the same normalization as the folding
/// map (interval 0 unflipped at its original place), give the same layers.
fn replay_matches<S: Coord>(
    local: &[Option<(bool, S)>],
    flip0: bool,
    pattern: &crate::pattern::CreasePattern<S>,
    layers: &[Layer<S>],
) -> bool {
    let image = |i: usize| {
        let (r, off) = local[i].expect("every interval placed");
        let (a, b) = if r { (off - pattern.interval(i), off) } else { (off, off + pattern.interval(i)) };
        if flip0 {
            (-b, -a, !r)
        } else {
            (a, b, r)
        }
    };
    let shift = layers[0].lo - image(0).0;
    (0..layers.len()).all(|i| {
        let (a, b, r) = image(i);
        (a + shift, b + shift, r) == (layers[i].lo, layers[i].hi, layers[i].flipped)
    })
}

/// Whether the stack order is physically realizable: consecutive layers
/// meet at their crease points, and
/// (a) no layer strictly between the two layers of a fold reaches past the
///     fold point on the fold's closed side, and
/// (b) folds at the same point on the same side nest rather than interleave.
pub fn check_layering<S: Coord>(s: &FoldedState<S>) -> bool {
    let n = s.layers.len();
    if n == 0 || s.crease_points.len() + 1 != n {
        return false;
    }
    let mut seen = vec![false; n];
    for l in &s.layers {
        if l.lo >= l.hi || l.level >= n || std::mem::replace(&mut seen[l.level], true) {
            return false;
        }
    }
    // (point, closes to the right, lower level, upper level)
    let mut folds: Vec<(S, bool, usize, usize)> = Vec::with_capacity(n - 1);
    for j in 1..n {
        let (a, b) = (&s.layers[j - 1], &s.layers[j]);
        let q = s.crease_points[j - 1];
        let a_end = if a.flipped { a.lo } else { a.hi };
        let b_start = if b.flipped { b.hi } else { b.lo };
        if a.flipped == b.flipped || a_end != q || b_start != q {
            return false;
        }
        let (lo, hi) = (a.level.min(b.level), a.level.max(b.level));
        folds.push((q, !a.flipped, lo, hi));
    }

    // (a) sweep: right-closed folds from the largest point down, inserting
    // layers that reach past q; left-closed folds symmetrically.
    for closes_right in [true, false] {
        let mut fs: Vec<_> = folds.iter().filter(|f| f.1 == closes_right).collect();
        let mut ls: Vec<&Layer<S>> = s.layers.iter().collect();
        if closes_right {
            fs.sort_by_key(|x| std::cmp::Reverse(x.0));
            ls.sort_by_key(|x| std::cmp::Reverse(x.hi));
        } else {
            fs.sort_by_key(|x| x.0);
            ls.sort_by_key(|x| x.lo);
        }
        let mut levels = BTreeSet::new();
        let mut k = 0;
        for &&(q, _, lo, hi) in &fs {
            while k < ls.len() && (if closes_right { ls[k].hi > q } else { ls[k].lo < q }) {
                levels.insert(ls[k].level);
                k += 1;
            }
            if hi > lo + 1 && levels.range(lo + 1..hi).next().is_some() {
                return false;
            }
        }
    }

    // (b) laminarity per (point, side).
    folds.sort_by_key(|x| (x.0, x.1, x.2));
    let mut i = 0;
    while i < folds.len() {
        let mut j = i;
        while j < folds.len() && folds[j].0 == folds[i].0 && folds[j].1 == folds[i].1 {
            j += 1;
        }
        let mut open: Vec<usize> = Vec::new();
        for &(_, _, lo, hi) in &folds[i..j] {
            while open.last().is_some_and(|&top| top < lo) {
                open.pop();
            }
            if open.last().is_some_and(|&top| hi > top) {
                return false;
            }
            open.push(hi);
        }
        i = j;
    }
    true
}
