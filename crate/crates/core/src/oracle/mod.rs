//! Brute-force ground truth.
//!
//! Foldability here is a depth-first search over every legal monocrimp and
//! end fold, memoized on the reduced state. It shares nothing with the fold
//! engine except the pattern types; the engine's answer is only consulted
//! to cross-check, and any disagreement is an error.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fold::is_flat_foldable;
use crate::pattern::{CreaseId, Mv, MvAssignment, MvPattern};
use crate::scalar::Coord;

/// Environment variable overriding [`OracleBudget::max_free_creases`].
pub const BUDGET_ENV: &str = "ORIGAMI_FORCE_BUDGET";
/// Largest pattern [`minimum_forcing_size`] accepts.
pub const MAX_SUBSET_CREASES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Most creases left free when enumerating completions (`2^free` runs).
    pub max_free_creases: usize,
    /// Most distinct states one search may visit.
    pub max_dfs_states: u64,
    /// Wall-clock ceiling for one oracle call.
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_free_creases: 25, max_dfs_states: 10_000_000, time_limit: Duration::from_secs(600) }
    }
}

impl OracleBudget {
    /// The default budget, with `max_free_creases` taken from
    /// `ORIGAMI_FORCE_BUDGET` when set.
    pub fn from_env() -> Result<Self, OracleError> {
        let mut b = Self::default();
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            b.max_free_creases = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| OracleError::BadBudget(format!("{BUDGET_ENV}={v}")))?;
        }
        Ok(b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{free} free creases exceed the budget of {max}")]
    TooManyFree { free: usize, max: usize },
    #[error("{creases} creases exceed the subset-search limit of {max}")]
    TooManyCreases { creases: usize, max: usize },
    #[error("search visited more than {0} states")]
    StateBudget(u64),
    #[error("search exceeded the time limit of {0:?}")]
    Timeout(Duration),
    #[error("oracle and fold engine disagree on assignment {mv}: oracle says {oracle}")]
    Disagreement { mv: String, oracle: bool },
    #[error("the pattern's own assignment is not foldable")]
    NotFoldable,
    #[error("invalid budget: {0}")]
    BadBudget(String),
}

struct Search<'a, S> {
    failed: HashSet<(Vec<S>, Vec<Mv>)>,
    states: u64,
    budget: &'a OracleBudget,
    started: Instant,
}

impl<S: Coord> Search<'_, S> {
    fn foldable(&mut self, lens: &[S], labels: &[Mv]) -> Result<bool, OracleError> {
        if lens.len() == 1 {
            return Ok(true);
        }
        let key = (lens.to_vec(), labels.to_vec());
        if self.failed.contains(&key) {
            return Ok(false);
        }
        self.states += 1;
        if self.states > self.budget.max_dfs_states {
            return Err(OracleError::StateBudget(self.budget.max_dfs_states));
        }
        if self.states % 1024 == 0 && self.started.elapsed() > self.budget.time_limit {
            return Err(OracleError::Timeout(self.budget.time_limit));
        }
        let n = lens.len();
        // End folds: an end interval no longer than its neighbour.
        if lens[0] <= lens[1] && self.foldable(&lens[1..], &labels[1..])? {
            return Ok(true);
        }
        if lens[n - 1] <= lens[n - 2] && self.foldable(&lens[..n - 1], &labels[..n - 2])? {
            return Ok(true);
        }
        // Monocrimps: creases i, i+1 (between lens[i]|lens[i+1]|lens[i+2]).
        for i in 0..labels.len().saturating_sub(1) {
            let (a, b, c) = (lens[i], lens[i + 1], lens[i + 2]);
            if labels[i] == labels[i + 1] || b > a || b > c {
                continue;
            }
            let mut next_lens = Vec::with_capacity(n - 2);
            next_lens.extend_from_slice(&lens[..i]);
            next_lens.push(a - b + c);
            next_lens.extend_from_slice(&lens[i + 3..]);
            let mut next_labels = Vec::with_capacity(labels.len() - 2);
            next_labels.extend_from_slice(&labels[..i]);
            next_labels.extend_from_slice(&labels[i + 2..]);
            if self.foldable(&next_lens, &next_labels)? {
                return Ok(true);
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

/// Exhaustive foldability decision with the number of states visited.
pub fn dfs_foldable_counted<S: Coord>(p: &MvPattern<S>, budget: &OracleBudget) -> Result<(bool, u64), OracleError> {
    let lens = p.pattern.intervals().into_vec();
    let mut search = Search { failed: HashSet::new(), states: 0, budget, started: Instant::now() };
    let ok = search.foldable(&lens, p.mv.labels())?;
    Ok((ok, search.states))
}

/// Whether some sequence of monocrimps (adjacent opposite pair, middle
/// interval no longer than either neighbour) and end folds (end interval no
/// longer than its neighbour) folds `p` down to one interval.
pub fn dfs_foldable<S: Coord>(p: &MvPattern<S>, budget: &OracleBudget) -> Result<bool, OracleError> {
    dfs_foldable_counted(p, budget).map(|(ok, _)| ok)
}

/// DFS verdict for `p`, refusing to continue if the fold engine disagrees.
fn checked_foldable<S: Coord>(p: &MvPattern<S>, budget: &OracleBudget) -> Result<(bool, u64), OracleError> {
    let (ok, states) = dfs_foldable_counted(p, budget)?;
    if ok != is_flat_foldable(p).is_foldable() {
        return Err(OracleError::Disagreement { mv: p.mv.to_string(), oracle: ok });
    }
    Ok((ok, states))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingVerdict {
    pub forcing: bool,
    /// Completions enumerated (`2^free`).
    pub completions: u64,
    /// How many of them fold flat.
    pub foldable: u64,
    /// Total search states visited.
    pub states: u64,
    /// Smallest (by bitmask) foldable completion other than the original, if any.
    pub rival: Option<String>,
}

fn with_free_bits(base: &MvAssignment, free: &[CreaseId], bits: u64) -> MvAssignment {
    let mut mv = base.clone();
    for (k, &c) in free.iter().enumerate() {
        mv.set(c, if bits >> k & 1 == 1 { Mv::V } else { Mv::M });
    }
    mv
}

/// Whether `p.mv` is the only foldable assignment agreeing with it on `f`.
pub fn is_forcing<S: Coord>(p: &MvPattern<S>, f: &[CreaseId], budget: &OracleBudget) -> Result<ForcingVerdict, OracleError> {
    let fixed: HashSet<CreaseId> = f.iter().copied().collect();
    let free: Vec<CreaseId> = p.pattern.crease_ids().filter(|c| !fixed.contains(c)).collect();
    if free.len() > budget.max_free_creases {
        return Err(OracleError::TooManyFree { free: free.len(), max: budget.max_free_creases });
    }
    let started = Instant::now();
    let total = 1u64 << free.len();
    let states = AtomicU64::new(0);
    let results: Vec<(u64, bool)> = (0..total)
        .into_par_iter()
        .map(|bits| {
            if started.elapsed() > budget.time_limit {
                return Err(OracleError::Timeout(budget.time_limit));
            }
            let q = MvPattern { pattern: p.pattern.clone(), mv: with_free_bits(&p.mv, &free, bits) };
            let (ok, s) = checked_foldable(&q, budget)?;
            states.fetch_add(s, Ordering::Relaxed);
            Ok((bits, ok))
        })
        .filter(|r| !matches!(r, Ok((_, false))))
        .collect::<Result<_, _>>()?;
    let own: Vec<bool> = free.iter().map(|&c| p.mv.label(c) == Mv::V).collect();
    let is_own = |bits: u64| own.iter().enumerate().all(|(k, &v)| (bits >> k & 1 == 1) == v);
    let rival = results.iter().filter(|(b, _)| !is_own(*b)).map(|(b, _)| *b).min();
    let own_foldable = results.iter().any(|(b, _)| is_own(*b));
    Ok(ForcingVerdict {
        forcing: own_foldable && rival.is_none(),
        completions: total,
        foldable: results.len() as u64,
        states: states.into_inner(),
        rival: rival.map(|b| with_free_bits(&p.mv, &free, b).to_string()),
    })
}

/// Bitmasks (bit `i - 1` set = `c_i` is V) of every foldable assignment on
/// `p`'s crease pattern.
pub fn foldable_assignments<S: Coord>(p: &MvPattern<S>, budget: &OracleBudget) -> Result<Vec<u64>, OracleError> {
    let n = p.num_creases();
    if n > MAX_SUBSET_CREASES {
        return Err(OracleError::TooManyCreases { creases: n, max: MAX_SUBSET_CREASES });
    }
    let all: Vec<CreaseId> = p.pattern.crease_ids().collect();
    let base = p.mv.clone();
    let mut masks: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let q = MvPattern { pattern: p.pattern.clone(), mv: with_free_bits(&base, &all, bits) };
            checked_foldable(&q, budget).map(|(ok, _)| ok.then_some(bits))
        })
        .filter_map(Result::transpose)
        .collect::<Result<_, _>>()?;
    masks.sort_unstable();
    Ok(masks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimumForcing {
    pub size: usize,
    /// The first minimum forcing set in cardinality-lexicographic order.
    pub witness: Vec<CreaseId>,
    /// Foldable assignments on the crease pattern.
    pub foldable: usize,
}

/// Size of a smallest forcing set for `p`, found by trying subsets in
/// increasing size (lexicographically within a size).
pub fn minimum_forcing_size<S: Coord>(p: &MvPattern<S>, budget: &OracleBudget) -> Result<MinimumForcing, OracleError> {
    let n = p.num_creases();
    let masks = foldable_assignments(p, budget)?;
    let own: u64 = (1..=n).filter(|&c| p.mv.label(c) == Mv::V).map(|c| 1u64 << (c - 1)).sum();
    if masks.binary_search(&own).is_err() {
        return Err(OracleError::NotFoldable);
    }
    // F is forcing iff it hits every difference to another foldable assignment.
    let diffs: Vec<u64> = masks.iter().filter(|&&m| m != own).map(|&m| m ^ own).collect();
    let started = Instant::now();
    for k in 0..=n {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mask: u64 = subset.iter().map(|&i| 1u64 << i).sum();
            if diffs.iter().all(|&d| d & mask != 0) {
                return Ok(MinimumForcing {
                    size: k,
                    witness: subset.iter().map(|&i| i + 1).collect(),
                    foldable: masks.len(),
                });
            }
            if started.elapsed() > budget.time_limit {
                return Err(OracleError::Timeout(budget.time_limit));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("the full crease set is always forcing")
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}
