use crate::pattern::{CreaseId, CreasePattern, MvAssignment};
use crate::scalar::Coord;

use super::{FoldError, FoldOp, StuckSequence};

/// A pattern in the middle of a reduction: surviving creases keep their
/// original ids, positions right of every monocrimp shift left by twice the
/// crimped interval, and the operations applied so far are logged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedPattern<S = i64> {
    start: S,
    end: S,
    creases: Vec<(CreaseId, S)>,
    log: Vec<FoldOp>,
}

impl<S: Coord> ReducedPattern<S> {
    pub fn new(pattern: &CreasePattern<S>) -> Self {
        let pos = pattern.positions();
        ReducedPattern {
            start: pos[0],
            end: pos[pos.len() - 1],
            creases: pattern.crease_ids().map(|i| (i, pos[i])).collect(),
            log: Vec::new(),
        }
    }

    pub fn crease_ids(&self) -> Vec<CreaseId> {
        self.creases.iter().map(|&(id, _)| id).collect()
    }

    pub fn num_creases(&self) -> usize {
        self.creases.len()
    }

    /// Current positions, ends included.
    pub fn positions(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(self.creases.len() + 2);
        out.push(self.start);
        out.extend(self.creases.iter().map(|&(_, p)| p));
        out.push(self.end);
        out
    }

    /// `(id, position)` for each remaining crease.
    pub fn creases(&self) -> &[(CreaseId, S)] {
        &self.creases
    }

    pub fn intervals(&self) -> Vec<S> {
        self.positions().windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn log(&self) -> &[FoldOp] {
        &self.log
    }

    pub fn is_end_sequence(&self) -> bool {
        find_crimpable_sequences(self).is_empty()
    }

    fn slot(&self, id: CreaseId) -> Result<usize, FoldError> {
        self.creases.iter().position(|&(c, _)| c == id).ok_or(FoldError::UnknownCrease(id))
    }
}

/// A maximal run of equally spaced creases whose two flanking intervals are
/// strictly longer than the spacing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrimpableSequence<S = i64> {
    pub creases: Vec<CreaseId>,
    pub interval_distance: S,
    /// Lengths of the intervals left and right of the sequence.
    pub flanks: (S, S),
    /// Index of the first crease among the pattern's remaining creases.
    pub start: usize,
}

impl<S> CrimpableSequence<S> {
    pub fn len(&self) -> usize {
        self.creases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.creases.is_empty()
    }
}

/// All crimpable sequences, left to right. Empty exactly for end sequences.
pub fn find_crimpable_sequences<S: Coord>(p: &ReducedPattern<S>) -> Vec<CrimpableSequence<S>> {
    let lens = p.intervals();
    let mut out = Vec::new();
    let mut a = 0;
    while a < lens.len() {
        let mut b = a;
        while b + 1 < lens.len() && lens[b + 1] == lens[a] {
            b += 1;
        }
        // Interval run a..=b; creases a-1 ..= b bound it.
        if a >= 1 && b + 1 < lens.len() && lens[a - 1] > lens[a] && lens[b + 1] > lens[a] {
            out.push(CrimpableSequence {
                creases: p.creases[a - 1..=b].iter().map(|&(id, _)| id).collect(),
                interval_distance: lens[a],
                flanks: (lens[a - 1], lens[b + 1]),
                start: a - 1,
            });
        }
        a = b + 1;
    }
    out
}

/// Length of the interval left after crimping the pair at `c_i`, `c_{i+1}`:
/// `c_{i+2} - 2 c_{i+1} + 2 c_i - c_{i-1}`.
pub fn fuse_length<S: Coord>(c_im1: S, c_i: S, c_ip1: S, c_ip2: S) -> Result<S, FoldError> {
    let left = c_i.sub_checked(c_im1);
    let mid = c_ip1.sub_checked(c_i);
    let right = c_ip2.sub_checked(c_ip1);
    left.zip(mid)
        .and_then(|(l, m)| l.sub_checked(m))
        .zip(right)
        .and_then(|(lm, r)| lm.add_checked(r))
        .ok_or(FoldError::Overflow)
}

/// Folds the adjacent pair `(left, right)` and fuses the three intervals
/// around it into one.
pub fn monocrimp<S: Coord>(
    p: &ReducedPattern<S>,
    mv: &MvAssignment,
    (left, right): (CreaseId, CreaseId),
) -> Result<ReducedPattern<S>, FoldError> {
    let i = p.slot(left)?;
    let j = p.slot(right)?;
    if j != i + 1 {
        return Err(FoldError::NotAdjacent { left, right });
    }
    let inside = find_crimpable_sequences(p)
        .iter()
        .any(|s| s.start <= i && j < s.start + s.len());
    if !inside {
        return Err(FoldError::NotCrimpable { left, right });
    }
    if mv.label(left) == mv.label(right) {
        return Err(FoldError::SameParity { left, right, label: mv.label(left) });
    }
    let pos = p.positions();
    // positions index = slot + 1
    let (prev, a, b, next) = (pos[i], pos[i + 1], pos[i + 2], pos[i + 3]);
    let fused = fuse_length(prev, a, b, next)?;
    debug_assert!(
        fused >= a - prev && fused >= next - b,
        "fused interval {fused} shorter than a flank ({} / {})",
        a - prev,
        next - b
    );
    let shift = (b - a).double_checked().ok_or(FoldError::Overflow)?;
    let mut creases = Vec::with_capacity(p.creases.len() - 2);
    creases.extend_from_slice(&p.creases[..i]);
    for &(id, at) in &p.creases[j + 1..] {
        creases.push((id, at.sub_checked(shift).ok_or(FoldError::Overflow)?));
    }
    let mut log = p.log.clone();
    log.push(FoldOp::Monocrimp { creases: [left, right] });
    Ok(ReducedPattern {
        start: p.start,
        end: p.end.sub_checked(shift).ok_or(FoldError::Overflow)?,
        creases,
        log,
    })
}

/// Crimps `seq` exhaustively, always folding the leftmost opposite-parity pair.
/// Returns the reduced pattern and the survivor for odd-length sequences.
pub fn crimp<S: Coord>(
    p: &ReducedPattern<S>,
    mv: &MvAssignment,
    seq: &CrimpableSequence<S>,
) -> Result<(ReducedPattern<S>, Option<CreaseId>), FoldError> {
    crimp_with(p, mv, seq, |_| 0)
}

/// Like [`crimp`], but `choose` picks which of the currently available
/// opposite-parity pairs (listed left to right) is folded next.
pub fn crimp_with<S: Coord>(
    p: &ReducedPattern<S>,
    mv: &MvAssignment,
    seq: &CrimpableSequence<S>,
    mut choose: impl FnMut(&[(CreaseId, CreaseId)]) -> usize,
) -> Result<(ReducedPattern<S>, Option<CreaseId>), FoldError> {
    let labels: Vec<_> = seq.creases.iter().map(|&c| mv.label(c)).collect();
    let m = labels.iter().filter(|&&l| l == crate::pattern::Mv::M).count();
    let v = labels.len() - m;
    if m.abs_diff(v) != labels.len() % 2 {
        let (_, remaining) = super::decide::cancel_pairs(&seq.creases, |c| mv.label(c));
        return Err(FoldError::CountLaw(StuckSequence { creases: seq.creases.clone(), labels, remaining }));
    }
    let mut current = p.clone();
    let mut rest = seq.creases.clone();
    while rest.len() >= 2 {
        let pairs: Vec<_> = rest
            .windows(2)
            .filter(|w| mv.label(w[0]) != mv.label(w[1]))
            .map(|w| (w[0], w[1]))
            .collect();
        // The count law guarantees an opposite pair while two or more remain.
        let pick = pairs[choose(&pairs).min(pairs.len() - 1)];
        current = monocrimp(&current, mv, pick)?;
        rest.retain(|&c| c != pick.0 && c != pick.1);
    }
    Ok((current, rest.first().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::MvPattern;

    fn reduced(positions: Vec<i64>) -> ReducedPattern {
        ReducedPattern::new(&CreasePattern::new(positions).unwrap())
    }

    fn from_intervals(lens: &[i64]) -> ReducedPattern {
        ReducedPattern::new(&CreasePattern::from_intervals(0, lens).unwrap())
    }

    /// Brute force: every window of consecutive creases checked against the
    /// definition, keeping only windows not contained in a longer one.
    fn brute_sequences(lens: &[i64]) -> Vec<Vec<CreaseId>> {
        let n = lens.len(); // creases 1..n-1, crease c between lens[c-1] and lens[c]
        let mut found = Vec::new();
        for i in 1..n {
            for k in i + 1..n {
                let d = lens[i];
                let equal = (i..k).all(|t| lens[t] == d);
                if equal && lens[i - 1] > d && lens[k] > d {
                    found.push((i..=k).collect::<Vec<_>>());
                }
            }
        }
        found
    }

    #[test]
    fn nine_crease_leftmost_sequence() {
        let p = from_intervals(&[4, 1, 1, 2, 2, 3, 2, 2, 3, 4]);
        let seqs = find_crimpable_sequences(&p);
        assert_eq!(seqs[0].creases, vec![1, 2, 3]);
        assert_eq!(seqs[0].interval_distance, 1);
        assert_eq!(seqs[0].flanks, (4, 2));
        assert_eq!(seqs.len(), 2);
        assert_eq!(seqs[1].creases, vec![6, 7, 8]);
    }

    #[test]
    fn no_sequences_without_strict_flanks() {
        assert!(from_intervals(&[1, 1, 1]).is_end_sequence());
        assert!(from_intervals(&[2, 2, 2, 2]).is_end_sequence());
        assert!(from_intervals(&[1, 2, 3, 2, 1]).is_end_sequence());
    }

    #[test]
    fn two_separate_sequences() {
        let lens = [3, 1, 3, 1, 3];
        let got: Vec<_> = find_crimpable_sequences(&from_intervals(&lens)).into_iter().map(|s| s.creases).collect();
        assert_eq!(got, brute_sequences(&lens));
        assert_eq!(got, vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn fuse_length_examples() {
        assert_eq!(fuse_length(0i64, 3, 4, 7), Ok(5));
        assert_eq!(fuse_length(0i64, 2, 3, 5), Ok(3));
        assert_eq!(fuse_length(0i64, 1, 2, 3), Ok(1));
        assert_eq!(fuse_length(i64::MIN, 0, 1, 2), Err(FoldError::Overflow));
    }

    #[test]
    fn monocrimp_single_crimp() {
        let p = MvPattern::from_parts(vec![0i64, 3, 4, 7], "MV").unwrap();
        let r = monocrimp(&ReducedPattern::new(&p.pattern), &p.mv, (1, 2)).unwrap();
        assert_eq!(r.positions(), vec![0, 5]);
        assert_eq!(r.num_creases(), 0);
        assert_eq!(r.log(), &[FoldOp::Monocrimp { creases: [1, 2] }]);
    }

    #[test]
    fn monocrimp_rejects_equal_parity() {
        let p = MvPattern::from_parts(vec![0i64, 3, 4, 7], "MM").unwrap();
        let err = monocrimp(&ReducedPattern::new(&p.pattern), &p.mv, (1, 2)).unwrap_err();
        assert_eq!(err, FoldError::SameParity { left: 1, right: 2, label: crate::pattern::Mv::M });
    }

    #[test]
    fn monocrimp_rejects_pairs_outside_sequences() {
        let p = MvPattern::from_parts(vec![0i64, 1, 2, 3], "MV").unwrap();
        let err = monocrimp(&ReducedPattern::new(&p.pattern), &p.mv, (1, 2)).unwrap_err();
        assert_eq!(err, FoldError::NotCrimpable { left: 1, right: 2 });
        let p = MvPattern::from_parts(vec![0i64, 3, 4, 5, 8], "MVM").unwrap();
        let err = monocrimp(&ReducedPattern::new(&p.pattern), &p.mv, (1, 3)).unwrap_err();
        assert_eq!(err, FoldError::NotAdjacent { left: 1, right: 3 });
    }

    #[test]
    fn three_crease_sequence_leaves_one_survivor() {
        let p = MvPattern::from_parts(vec![0i64, 3, 4, 5, 8], "MVV").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let seq = &find_crimpable_sequences(&r)[0];
        let (after, survivor) = crimp(&r, &p.mv, seq).unwrap();
        assert_eq!(survivor, Some(3));
        assert_eq!(after.positions(), vec![0, 3, 6]);
    }

    #[test]
    fn crimp_survivor_examples() {
        // (M,M,V): the leftmost opposite pair is (c2,c3), so c1 survives.
        let p = MvPattern::from_parts(vec![0i64, 4, 5, 6, 8], "MMV").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let seq = &find_crimpable_sequences(&r)[0];
        assert_eq!(crimp(&r, &p.mv, seq).unwrap().1, Some(1));

        // Five creases, three V and two M: the survivor is a V.
        let p = MvPattern::from_parts(vec![0i64, 5, 6, 7, 8, 9, 14], "VMVMV").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let seq = &find_crimpable_sequences(&r)[0];
        let (after, s) = crimp(&r, &p.mv, seq).unwrap();
        assert_eq!(p.mv.label(s.unwrap()), crate::pattern::Mv::V);
        assert_eq!(after.intervals(), vec![5, 5]);
    }

    #[test]
    fn even_crimp_fuses_into_one_interval() {
        let p = MvPattern::from_parts(vec![0i64, 5, 6, 7, 8, 9, 10, 15], "MVVMMV").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let seq = &find_crimpable_sequences(&r)[0];
        let (after, s) = crimp(&r, &p.mv, seq).unwrap();
        assert_eq!(s, None);
        assert_eq!(after.intervals(), vec![9]);
        assert_eq!(after.log().len(), 3);
    }

    #[test]
    fn crimp_rejects_count_law_violation() {
        let p = MvPattern::from_parts(vec![0i64, 5, 6, 7, 8, 13], "MMVM").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let seq = &find_crimpable_sequences(&r)[0];
        match crimp(&r, &p.mv, seq) {
            Err(FoldError::CountLaw(stuck)) => {
                assert_eq!(stuck.creases, vec![1, 2, 3, 4]);
                assert_eq!(stuck.remaining, vec![1, 4]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_monocrimp_shortens_sequence_by_two() {
        let p = MvPattern::from_parts(vec![0i64, 5, 6, 7, 8, 9, 14], "MVMVM").unwrap();
        let r = ReducedPattern::new(&p.pattern);
        let before = find_crimpable_sequences(&r);
        let after = monocrimp(&r, &p.mv, (2, 3)).unwrap();
        let seqs = find_crimpable_sequences(&after);
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].len(), before[0].len() - 2);
        assert_eq!(seqs[0].creases, vec![1, 4, 5]);
    }

    #[test]
    fn matches_brute_force_on_small_interval_words() {
        // every word over {1,2,3} of length up to 7
        for len in 1..=7u32 {
            for code in 0..3usize.pow(len) {
                let mut c = code;
                let lens: Vec<i64> = (0..len)
                    .map(|_| {
                        let v = (c % 3) as i64 + 1;
                        c /= 3;
                        v
                    })
                    .collect();
                let got: Vec<_> =
                    find_crimpable_sequences(&from_intervals(&lens)).into_iter().map(|s| s.creases).collect();
                assert_eq!(got, brute_sequences(&lens), "intervals {lens:?}");
            }
        }
    }

    #[test]
    fn works_on_other_widths() {
        let r = ReducedPattern::new(&CreasePattern::new(vec![0i32, 3, 4, 7]).unwrap());
        assert_eq!(find_crimpable_sequences(&r)[0].creases, vec![1, 2]);
        let r = ReducedPattern::new(&CreasePattern::new(vec![-10i128, -7, -6, -3]).unwrap());
        assert_eq!(find_crimpable_sequences(&r)[0].interval_distance, 1);
        let _ = reduced(vec![0, 1]);
    }
}
