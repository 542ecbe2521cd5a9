//! Seeded generators of flat-foldable patterns.
//!
//! Small patterns are rejection-sampled. Larger ones are grown backwards:
//! start from an end sequence (foldable under any labels) and repeatedly
//! insert a crimpable sequence that crimps straight back to what was there.
//! Undoing the insertions in reverse order is then a valid reduction, so
//! every output folds flat.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{CreasePattern, Mv, MvAssignment, MvPattern};
use crate::fold::is_flat_foldable;

/// Largest crease count handled by rejection sampling under [`Strategy::Auto`].
pub const REJECTION_MAX_CREASES: usize = 20;
/// Attempts before rejection sampling gives up.
pub const REJECTION_ATTEMPTS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Rejection sampling up to [`REJECTION_MAX_CREASES`], inverse crimping above.
    #[default]
    Auto,
    Rejection,
    InverseCrimp,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("no foldable pattern with {creases} creases found in {attempts} attempts")]
    BudgetExhausted { creases: usize, attempts: usize },
    #[error("ran out of room to insert crimps after {placed} of {wanted} creases")]
    NoRoom { placed: usize, wanted: usize },
}

/// A random flat-foldable pattern with `num_creases` creases, deterministic per seed.
pub fn generate_random(num_creases: usize, seed: u64) -> Result<MvPattern, GenerateError> {
    generate_random_with(num_creases, seed, Strategy::Auto)
}

pub fn generate_random_with(num_creases: usize, seed: u64, strategy: Strategy) -> Result<MvPattern, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match strategy {
        Strategy::Rejection => rejection(num_creases, &mut rng),
        Strategy::Auto if num_creases <= REJECTION_MAX_CREASES => rejection(num_creases, &mut rng),
        _ => inverse_crimp(num_creases, &mut rng),
    }
}

fn random_label(rng: &mut ChaCha8Rng) -> Mv {
    if rng.gen() {
        Mv::V
    } else {
        Mv::M
    }
}

fn rejection(n: usize, rng: &mut ChaCha8Rng) -> Result<MvPattern, GenerateError> {
    for _ in 0..REJECTION_ATTEMPTS {
        // Short lengths make equal neighbours, hence crimps, common.
        let max_len = rng.gen_range(2..=4);
        let lengths: Vec<i64> = (0..=n).map(|_| rng.gen_range(1..=max_len)).collect();
        let labels: Vec<Mv> = (0..n).map(|_| random_label(rng)).collect();
        let pattern = CreasePattern::from_intervals(0, &lengths).expect("small lengths");
        let p = MvPattern { pattern, mv: MvAssignment::new(labels) };
        if is_flat_foldable(&p).is_foldable() {
            return Ok(p);
        }
    }
    Err(GenerateError::BudgetExhausted { creases: n, attempts: REJECTION_ATTEMPTS })
}

#[derive(Clone, Copy)]
enum Tok {
    Interval(i64),
    Crease(Mv),
}

/// Doubly linked token list: intervals and creases alternate.
struct Strip {
    toks: Vec<Tok>,
    prev: Vec<usize>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Strip {
    fn push(&mut self, t: Tok) -> usize {
        self.toks.push(t);
        self.prev.push(NIL);
        self.next.push(NIL);
        self.toks.len() - 1
    }

    /// Inserts `new` (already linked among themselves in order) after `at`.
    fn splice_after(&mut self, at: usize, new: &[usize]) {
        let after = self.next[at];
        let mut cur = at;
        for &t in new {
            self.next[cur] = t;
            self.prev[t] = cur;
            cur = t;
        }
        self.next[cur] = after;
        if after != NIL {
            self.prev[after] = cur;
        }
    }

    fn interval(&self, t: usize) -> Option<i64> {
        match self.toks.get(t) {
            Some(Tok::Interval(len)) => Some(*len),
            _ => None,
        }
    }
}

/// Labels for a crimpable sequence of `count` creases whose survivor (odd
/// counts) is `majority`; shuffled, so any legal arrangement can occur.
fn crimp_labels(count: usize, majority: Mv, rng: &mut ChaCha8Rng) -> Vec<Mv> {
    let mut labels: Vec<Mv> = (0..count).map(|i| if i % 2 == 0 { majority } else { majority.opposite() }).collect();
    labels.shuffle(rng);
    labels
}

fn inverse_crimp(n: usize, rng: &mut ChaCha8Rng) -> Result<MvPattern, GenerateError> {
    let mut strip = Strip { toks: Vec::new(), prev: Vec::new(), next: Vec::new() };
    // End sequence with the parity of n and at most a handful of creases.
    let e = if n <= 4 { n } else { (n % 2) + 2 * rng.gen_range(0..=2usize) };
    let mut lengths: Vec<i64> = (0..=e).map(|_| rng.gen_range(1i64 << 29..=1i64 << 30)).collect();
    lengths.sort_unstable();
    let mut rising = Vec::new();
    let mut falling = Vec::new();
    for len in lengths {
        if rng.gen() {
            rising.push(len)
        } else {
            falling.push(len)
        }
    }
    falling.reverse();
    let mut candidates = Vec::new();
    let mut first = NIL;
    let mut last = NIL;
    for (i, len) in rising.into_iter().chain(falling).enumerate() {
        if i > 0 {
            let c = strip.push(Tok::Crease(random_label(rng)));
            strip.splice_after(last, &[c]);
            last = c;
            candidates.push(c);
        }
        let t = strip.push(Tok::Interval(len));
        if last == NIL {
            first = t;
        } else {
            strip.splice_after(last, &[t]);
        }
        last = t;
        candidates.push(t);
    }

    let mut placed = e;
    while placed < n {
        if candidates.is_empty() {
            return Err(GenerateError::NoRoom { placed, wanted: n });
        }
        let k = rng.gen_range(0..candidates.len());
        let t = candidates[k];
        // Each insertion adds an even number of creases; keep most of them small.
        let room = (n - placed) / 2;
        let pairs = if rng.gen_ratio(1, 8) { rng.gen_range(1..=room.min(4)) } else { 1 };
        let mut new = Vec::new();
        match strip.toks[t] {
            Tok::Interval(len) => {
                if len < 3 {
                    candidates.swap_remove(k);
                    continue;
                }
                // Replace len by l, d x (2*pairs - 1), r with l + r - d = len.
                let d = rng.gen_range(1..=(len / 8).max(1));
                let lo = (len / 4).max(d + 1);
                let hi = (3 * len / 4).min(len - 1);
                if lo > hi {
                    candidates.swap_remove(k);
                    continue;
                }
                let l = rng.gen_range(lo..=hi);
                let r = len + d - l;
                strip.toks[t] = Tok::Interval(l);
                let count = 2 * pairs;
                let labels = crimp_labels(count, random_label(rng), rng);
                for (i, mv) in labels.into_iter().enumerate() {
                    new.push(strip.push(Tok::Crease(mv)));
                    new.push(strip.push(Tok::Interval(if i + 1 == count { r } else { d })));
                }
                placed += count;
            }
            Tok::Crease(mv) => {
                let (Some(a), Some(b)) = (strip.interval(strip.prev[t]), strip.interval(strip.next[t])) else {
                    unreachable!("creases sit between intervals")
                };
                let flank = a.min(b);
                if flank < 2 {
                    candidates.swap_remove(k);
                    continue;
                }
                // Replace the crease by 2*pairs + 1 creases spaced d apart
                // whose survivor keeps its label.
                let d = rng.gen_range(1..=(flank / 8).max(1));
                let labels = crimp_labels(2 * pairs + 1, mv, rng);
                strip.toks[t] = Tok::Crease(labels[0]);
                for &l in &labels[1..] {
                    new.push(strip.push(Tok::Interval(d)));
                    new.push(strip.push(Tok::Crease(l)));
                }
                placed += 2 * pairs;
            }
        }
        strip.splice_after(t, &new);
        candidates.extend(new);
    }

    let mut positions = vec![0i64];
    let mut labels = Vec::with_capacity(n);
    let mut cur = first;
    while cur != NIL {
        match strip.toks[cur] {
            Tok::Interval(len) => positions.push(positions[positions.len() - 1] + len),
            Tok::Crease(mv) => labels.push(mv),
        }
        cur = strip.next[cur];
    }
    let pattern = CreasePattern::new(positions).expect("positive lengths well inside range");
    Ok(MvPattern { pattern, mv: MvAssignment::new(labels) })
}

/// A foldable pattern of `n` creases built from self-similar gadgets: a
/// level-`j` gadget is three level-`j-1` gadgets `j` apart, labelled so the
/// three survivors read `(t, t, not t)`. Crimping peels the levels off one
/// at a time, which makes the reduction backtrack as deeply as possible.
pub fn nested_tessellation(n: usize) -> MvPattern {
    let mut level = 0u32;
    while level < 8 && 3usize.pow(level + 1) <= n {
        level += 1;
    }
    let gap = level as i64 + 1;
    let size = 3usize.pow(level);

    fn gadget(level: u32, t: Mv, lengths: &mut Vec<i64>, labels: &mut Vec<Mv>) {
        if level == 0 {
            labels.push(t);
            return;
        }
        let d = level as i64;
        gadget(level - 1, t, lengths, labels);
        lengths.push(d);
        gadget(level - 1, t, lengths, labels);
        lengths.push(d);
        gadget(level - 1, t.opposite(), lengths, labels);
    }

    let mut lengths = vec![gap];
    let mut labels = Vec::with_capacity(n);
    let mut t = Mv::M;
    for _ in 0..n / size {
        gadget(level, t, &mut lengths, &mut labels);
        lengths.push(gap);
        t = t.opposite();
    }
    for _ in 0..n % size {
        labels.push(t);
        lengths.push(gap);
        t = t.opposite();
    }
    let pattern = CreasePattern::from_intervals(0, &lengths).expect("small lengths");
    MvPattern { pattern, mv: MvAssignment::new(labels) }
}

/// Evenly repeated crimps: intervals `3,1,3,1,...,3` with `(M,V)` pairs
/// around each short interval; an odd `n` gets one extra crease at the end.
pub fn tessellation(n: usize) -> MvPattern {
    let mut lengths = vec![3i64];
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        lengths.extend([1, 3]);
        labels.extend([Mv::M, Mv::V]);
    }
    if n % 2 == 1 {
        lengths.push(3);
        labels.push(Mv::M);
    }
    let pattern = CreasePattern::from_intervals(0, &lengths).expect("small lengths");
    MvPattern { pattern, mv: MvAssignment::new(labels) }
}
