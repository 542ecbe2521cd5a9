//! Left-to-right reduction in linear time.
//!
//! The scan keeps a stack of runs of equal interval lengths. Nothing on the
//! stack is ever a valley (a run with strictly longer runs on both sides),
//! so the stack is rising-then-falling. Reading the next interval `x`:
//!
//! * equal to the top run: extend it;
//! * shorter: push a new run;
//! * longer, and the run below the top is also longer than the top: the top
//!   run is now a crimpable sequence. Crimp it, then compare again.
//!
//! A crimp with an odd number of creases leaves its survivor between the two
//! untouched flanks. An even one fuses left flank, sequence and `x` into a
//! single interval of length `left + x - d`, which then takes the place of
//! `x`. Every crimp removes a run, so the whole scan is linear and it always
//! crimps the leftmost crimpable sequence of the current pattern.

use crate::pattern::CreaseId;
use crate::scalar::Coord;

/// Counters from one scan, used to check the running time empirically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ScanStats {
    /// Interval-length comparisons performed.
    pub comparisons: u64,
    /// Crimpable sequences crimped.
    pub crimps: u64,
    /// Intervals read.
    pub intervals: u64,
}

/// A crimpable sequence the scan is about to crimp.
#[derive(Debug)]
pub(crate) struct CrimpEvent<'a, S> {
    pub creases: &'a [CreaseId],
    pub interval_distance: S,
    pub flanks: (S, S),
}

pub(crate) trait CrimpHandler<S> {
    type Error;

    /// Crimps `event`, returning the survivor when the sequence has an odd
    /// number of creases and `None` otherwise.
    fn crimp(&mut self, event: CrimpEvent<'_, S>) -> Result<Option<CreaseId>, Self::Error>;
}

pub(crate) struct ScanOutcome<S> {
    pub end_creases: Vec<CreaseId>,
    pub end_intervals: Vec<S>,
    pub stats: ScanStats,
}

/// Runs the reduction over `intervals` (`λ_0, λ_1, ...`; crease `i` sits
/// between `λ_{i-1}` and `λ_i`).
pub(crate) fn scan<S: Coord, H: CrimpHandler<S>>(
    intervals: &[S],
    handler: &mut H,
) -> Result<ScanOutcome<S>, H::Error> {
    let mut stats = ScanStats::default();
    // (length, count) runs and the creases between stacked intervals.
    let mut runs: Vec<(S, usize)> = Vec::new();
    let mut creases: Vec<CreaseId> = Vec::new();
    let mut seq: Vec<CreaseId> = Vec::new();

    for (i, &len) in intervals.iter().enumerate() {
        stats.intervals += 1;
        let mut x = len;
        // crease between the stack and x; None only while the stack is empty
        let mut incoming = if i == 0 { None } else { Some(i) };
        loop {
            let Some(&(top, count)) = runs.last() else {
                runs.push((x, 1));
                break;
            };
            let incoming_crease = incoming.expect("non-empty stack has a crease before x");
            stats.comparisons += 1;
            if x == top {
                runs.last_mut().unwrap().1 += 1;
                creases.push(incoming_crease);
                break;
            }
            if x < top {
                runs.push((x, 1));
                creases.push(incoming_crease);
                break;
            }
            let below = runs.len().checked_sub(2).map(|k| runs[k].0);
            stats.comparisons += 1;
            let Some(left) = below.filter(|&b| b > top) else {
                runs.push((x, 1));
                creases.push(incoming_crease);
                break;
            };

            seq.clear();
            seq.extend_from_slice(&creases[creases.len() - count..]);
            seq.push(incoming_crease);
            stats.crimps += 1;
            let survivor = handler.crimp(CrimpEvent { creases: &seq, interval_distance: top, flanks: (left, x) })?;
            runs.pop();
            creases.truncate(creases.len() - count);

            if count % 2 == 0 {
                incoming = Some(survivor.expect("odd crimp has a survivor"));
            } else {
                debug_assert!(survivor.is_none());
                let fused = left - top + x;
                debug_assert!(fused >= left && fused >= x, "crimp shrank an interval");
                let prev = runs.last_mut().unwrap();
                prev.1 -= 1;
                if prev.1 == 0 {
                    runs.pop();
                }
                incoming = creases.pop();
                x = fused;
            }
        }
    }

    let mut end_intervals = Vec::with_capacity(creases.len() + 1);
    for &(len, count) in &runs {
        end_intervals.extend(std::iter::repeat_n(len, count));
    }
    Ok(ScanOutcome { end_creases: creases, end_intervals, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Records events; survivors are the first crease of each odd sequence.
    #[derive(Default)]
    struct Log(Vec<(Vec<CreaseId>, i64, (i64, i64))>);

    impl CrimpHandler<i64> for Log {
        type Error = ();
        fn crimp(&mut self, e: CrimpEvent<'_, i64>) -> Result<Option<CreaseId>, ()> {
            self.0.push((e.creases.to_vec(), e.interval_distance, e.flanks));
            Ok((e.creases.len() % 2 == 1).then(|| e.creases[0]))
        }
    }

    #[test]
    fn nine_crease_events() {
        let mut log = Log::default();
        let out = scan(&[4i64, 1, 1, 2, 2, 3, 2, 2, 3, 4], &mut log).unwrap();
        let seqs: Vec<_> = log.0.iter().map(|e| e.0.clone()).collect();
        assert_eq!(seqs, vec![vec![1, 2, 3], vec![1, 4, 5], vec![6, 7, 8], vec![1, 6, 9]]);
        assert_eq!(log.0[0].2, (4, 2));
        assert_eq!(out.end_creases, vec![1]);
        assert_eq!(out.end_intervals, vec![4, 4]);
    }

    #[test]
    fn even_crimp_fuses_with_flank() {
        let mut log = Log::default();
        let out = scan(&[3i64, 1, 3], &mut log).unwrap();
        assert_eq!(log.0, vec![(vec![1, 2], 1, (3, 3))]);
        assert!(out.end_creases.is_empty());
        assert_eq!(out.end_intervals, vec![5]);
    }

    #[test]
    fn cascade_through_fused_intervals() {
        let mut log = Log::default();
        let out = scan(&[5i64, 2, 1, 2, 7], &mut log).unwrap();
        // (c2,c3) around the 1 fuses 2,1,2 into 3; then 5,3,7 crimps (c1,c4)
        assert_eq!(log.0[0].0, vec![2, 3]);
        assert_eq!(log.0[1], (vec![1, 4], 3, (5, 7)));
        assert_eq!(out.end_intervals, vec![9]);
    }

    #[test]
    fn end_sequences_pass_through() {
        let mut log = Log::default();
        let out = scan(&[1i64, 2, 3, 2, 1], &mut log).unwrap();
        assert!(log.0.is_empty());
        assert_eq!(out.end_creases, vec![1, 2, 3, 4]);
        let out = scan(&[2i64, 2, 2, 2], &mut log).unwrap();
        assert_eq!(out.end_creases, vec![1, 2, 3]);
        assert_eq!(out.end_intervals, vec![2, 2, 2, 2]);
        let out = scan(&[7i64], &mut log).unwrap();
        assert!(out.end_creases.is_empty());
    }
}
