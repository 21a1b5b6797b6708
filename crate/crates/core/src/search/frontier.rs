//! Level-by-level search for the longest counterexample.
//!
//! Counterexamples are closed under taking sub-multisets, so every
//! counterexample of length `ℓ + 1` arises by adding one element to a
//! counterexample of length `ℓ`, and all of its one-element deletions are
//! counterexamples of length `ℓ`. Levels hold canonical forms only, sorted,
//! which makes the result independent of how work is scheduled.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use super::canon::Canonicalizer;
use super::zero_sub::{Evaluator, Scratch, Target};
use crate::error::{Error, Result};

type Key = Box<[u8]>;

pub(crate) struct SearchContext {
    pub(crate) canon: Canonicalizer,
    pub(crate) eval: Evaluator,
    pub(crate) target: Target,
    pub(crate) card: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct LevelResult {
    /// Longest counterexample length found (≤ cap).
    pub(crate) max_len: usize,
    /// Smallest canonical counterexample of that length.
    pub(crate) witness: Key,
    /// The search proved no counterexample of length `max_len + 1` exists.
    pub(crate) closed: bool,
    pub(crate) level_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RunConfig {
    pub(crate) parallel: bool,
    pub(crate) deadline: Option<Instant>,
}

impl SearchContext {
    fn threshold(&self) -> usize {
        match self.target {
            Target::Egz { t } => t,
            Target::Davenport => self.eval.degree(),
        }
    }

    pub(crate) fn is_counterexample(&self, v: &[u8], scratch: &mut Scratch) -> bool {
        self.eval.find_zero(v, self.target, scratch).is_none()
    }

    fn survives_deletions(&self, v: &[u8], prev: &[Key], bufs: &mut Bufs) -> bool {
        bufs.work.clear();
        bufs.work.extend_from_slice(v);
        for (g, &count) in v.iter().enumerate() {
            if count == 0 {
                continue;
            }
            bufs.work[g] -= 1;
            self.canon
                .canonicalize_into(&bufs.work, &mut bufs.out, &mut bufs.perm);
            bufs.work[g] += 1;
            if prev
                .binary_search_by(|k| k.as_ref().cmp(bufs.out.as_slice()))
                .is_err()
            {
                return false;
            }
        }
        true
    }
}

#[derive(Default)]
struct Bufs {
    work: Vec<u8>,
    out: Vec<u8>,
    perm: Vec<u8>,
    scratch: Scratch,
}

fn deadline_passed(cfg: &RunConfig) -> bool {
    cfg.deadline.is_some_and(|d| Instant::now() >= d)
}

/// Frontier search up to length `cap`.
pub(crate) fn frontier_search(ctx: &SearchContext, cap: usize, cfg: RunConfig) -> Result<LevelResult> {
    let mut prev: Vec<Key> = vec![vec![0u8; ctx.card].into_boxed_slice()];
    let mut level_sizes = vec![1];
    let threshold = ctx.threshold();
    for len in 1..=cap {
        if deadline_passed(&cfg) {
            return Err(Error::DeadlineExceeded {
                level: len,
                lower_bound: len as u64,
            });
        }
        let mut candidates = extend_level(ctx, &prev, cfg.parallel);
        let check_deletions = len > threshold;
        let timed_out = AtomicBool::new(false);
        let keep = |bufs: &mut Bufs, v: &Key| -> bool {
            if timed_out.load(Ordering::Relaxed) {
                return false;
            }
            if deadline_passed(&cfg) {
                timed_out.store(true, Ordering::Relaxed);
                return false;
            }
            if check_deletions && !ctx.survives_deletions(v, &prev, bufs) {
                return false;
            }
            ctx.is_counterexample(v, &mut bufs.scratch)
        };
        let flags = map_with_bufs(&candidates, cfg.parallel, keep);
        if timed_out.load(Ordering::Relaxed) {
            return Err(Error::DeadlineExceeded {
                level: len,
                lower_bound: len as u64,
            });
        }
        let mut flags = flags.into_iter();
        candidates.retain(|_| flags.next().expect("one flag per candidate"));
        if candidates.is_empty() {
            return Ok(LevelResult {
                max_len: len - 1,
                witness: prev.swap_remove(0),
                closed: true,
                level_sizes,
            });
        }
        level_sizes.push(candidates.len());
        prev = candidates;
    }
    Ok(LevelResult {
        max_len: cap,
        witness: prev.swap_remove(0),
        closed: false,
        level_sizes,
    })
}

/// Canonical one-element extensions of every multiset in `prev`, sorted and
/// deduplicated.
fn extend_level(ctx: &SearchContext, prev: &[Key], parallel: bool) -> Vec<Key> {
    let extend = |v: &Key, out: &mut Vec<Key>, bufs: &mut Bufs| {
        bufs.work.clear();
        bufs.work.extend_from_slice(v);
        for g in 0..ctx.card {
            bufs.work[g] += 1;
            ctx.canon
                .canonicalize_into(&bufs.work, &mut bufs.out, &mut bufs.perm);
            bufs.work[g] -= 1;
            out.push(bufs.out.clone().into_boxed_slice());
        }
    };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        let mut all: Vec<Key> = prev
            .par_iter()
            .map_init(Bufs::default, |bufs, v| {
                let mut out = Vec::with_capacity(ctx.card);
                extend(v, &mut out, bufs);
                out
            })
            .flatten_iter()
            .collect();
        all.par_sort_unstable();
        all.dedup();
        return all;
    }
    let _ = parallel;
    let mut bufs = Bufs::default();
    let mut all = Vec::with_capacity(prev.len() * ctx.card);
    for v in prev {
        extend(v, &mut all, &mut bufs);
    }
    all.sort_unstable();
    all.dedup();
    all
}

fn map_with_bufs<F>(items: &[Key], parallel: bool, f: F) -> Vec<bool>
where
    F: Fn(&mut Bufs, &Key) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map_init(Bufs::default, &f).collect();
    }
    let _ = parallel;
    let mut bufs = Bufs::default();
    items.iter().map(|v| f(&mut bufs, v)).collect()
}

/// Reference search without the frontier: every canonical multiset of
/// every length up to `cap` is tested.
pub(crate) fn direct_search(ctx: &SearchContext, cap: usize, cfg: RunConfig) -> Result<LevelResult> {
    let mut scratch = Scratch::new();
    let mut best: Option<(usize, Key)> = None;
    let mut level_sizes = Vec::new();
    let mut v = vec![0u8; ctx.card];
    for len in 0..=cap {
        if deadline_passed(&cfg) {
            return Err(Error::DeadlineExceeded {
                level: len,
                lower_bound: best.as_ref().map_or(0, |(l, _)| *l as u64 + 1),
            });
        }
        let mut found: Vec<Key> = Vec::new();
        for_each_composition(&mut v, 0, len, &mut |v| {
            if ctx.canon.canonical(v).as_ref() == v && ctx.is_counterexample(v, &mut scratch) {
                found.push(v.to_vec().into_boxed_slice());
            }
        });
        level_sizes.push(found.len());
        if let Some(w) = found.into_iter().min() {
            best = Some((len, w));
        }
    }
    let (max_len, witness) = best.expect("the empty multiset is always a counterexample");
    Ok(LevelResult {
        max_len,
        witness,
        closed: max_len < cap,
        level_sizes,
    })
}

fn for_each_composition(v: &mut [u8], pos: usize, rest: usize, f: &mut dyn FnMut(&[u8])) {
    if pos == v.len() - 1 {
        v[pos] = rest as u8;
        f(v);
        v[pos] = 0;
        return;
    }
    for c in 0..=rest {
        v[pos] = c as u8;
        for_each_composition(v, pos + 1, rest - c, f);
    }
    v[pos] = 0;
}
