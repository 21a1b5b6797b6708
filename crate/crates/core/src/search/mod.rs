//! Exhaustive computation of `D_m(G)` and `E(t, G, m)`.
//!
//! Both constants are one more than the length of a longest
//! *counterexample*: a sequence with no sub-multiset of the required length
//! on which `e_m` vanishes. The search walks lengths upward over canonical
//! multiplicity vectors (see [`frontier`]) and stops at the first empty
//! level; that level is the proof of exactness.
//!
//! Sequences related by a unit `c` are identified: `e_m(c·S) = c^m·e_m(S)`
//! and `c^m` is a unit, so one is a counterexample iff the other is.

pub mod brink;
mod canon;
mod frontier;
mod zero_sub;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use zero_sub::{EvalMode, Target};

use crate::error::{Error, Result};
use crate::multiset::MultisetSeq;
use crate::numtheory::{divides_binomial, l_const};
use crate::ring::{RingSpec, RingTables, MAX_TABLE_CARDINALITY};
use crate::theorems::bounds::{davenport_cap, egz_caps};
use canon::Canonicalizer;
use frontier::{direct_search, frontier_search, LevelResult, RunConfig, SearchContext};
use zero_sub::{Evaluator, Scratch};

/// Multiplicities are stored in a byte, so no search goes past this length.
pub const MAX_SEARCH_LENGTH: u64 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeKind {
    Exact,
    AtLeast,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    FrontierExhaustive,
    DirectExhaustive,
    InfinitePrecheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Frontier,
    /// Test every canonical multiset of every length; reference only.
    Direct,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Expand frontier levels in parallel (needs the `parallel` feature).
    pub parallel: bool,
    pub deadline: Option<Instant>,
    /// Identify multisets related by unit scaling.
    pub use_orbits: bool,
    pub strategy: Strategy,
    pub eval_mode: EvalMode,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            parallel: cfg!(feature = "parallel"),
            deadline: None,
            use_orbits: true,
            strategy: Strategy::Frontier,
            eval_mode: EvalMode::Auto,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            parallel: false,
            ..Self::default()
        }
    }

    fn run_config(&self) -> RunConfig {
        RunConfig {
            parallel: self.parallel && cfg!(feature = "parallel") && self.threads != Some(1),
            deadline: self.deadline,
        }
    }
}

/// Which constant a search is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConstantKind {
    Egz { t: u64 },
    Davenport,
}

impl ConstantKind {
    fn target(self) -> Target {
        match self {
            ConstantKind::Egz { t } => Target::Egz { t: t as usize },
            ConstantKind::Davenport => Target::Davenport,
        }
    }
}

/// Result of a constant computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgzOutcome {
    pub kind: OutcomeKind,
    /// The constant (`Exact`), a verified lower bound (`AtLeast`), or `None`
    /// for `Infinite`.
    pub value: Option<u64>,
    /// Longest counterexample found, or `1^t` for `Infinite`.
    pub witness: MultisetSeq,
    pub method: Method,
    pub cap_used: Option<u64>,
    /// Which bound produced `cap_used`.
    pub cap_source: Option<String>,
    /// Number of canonical counterexamples at each length searched.
    pub level_sizes: Vec<usize>,
}

/// Outcome of a single counterexample test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroCheck {
    Counterexample,
    /// A sub-multiset with `e_m = 0` of the required length.
    Zero(MultisetSeq),
}

impl ZeroCheck {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, ZeroCheck::Counterexample)
    }
}

fn check_degree(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("degree m must be at least 1".into()));
    }
    Ok(())
}

fn check_egz_args(m: u64, t: u64) -> Result<()> {
    check_degree(m)?;
    if t < m {
        return Err(Error::InvalidArgument(format!(
            "subsequence length t = {t} is smaller than the degree m = {m}"
        )));
    }
    Ok(())
}

fn tables_for(ring: &RingSpec) -> Result<RingTables> {
    if ring.cardinality() > MAX_TABLE_CARDINALITY {
        return Err(Error::RingTooLarge {
            cardinality: ring.cardinality(),
            limit: MAX_TABLE_CARDINALITY,
        });
    }
    RingTables::new(ring)
}

fn to_bytes(ms: &MultisetSeq) -> Result<Vec<u8>> {
    ms.mult()
        .iter()
        .map(|&c| {
            u8::try_from(c).map_err(|_| {
                Error::InvalidArgument(format!(
                    "multiplicity {c} exceeds the supported maximum {MAX_SEARCH_LENGTH}"
                ))
            })
        })
        .collect()
}

fn check_zero(ms: &MultisetSeq, m: u64, kind: ConstantKind) -> Result<ZeroCheck> {
    let tables = tables_for(ms.ring())?;
    let bytes = to_bytes(ms)?;
    let max_count = match kind {
        ConstantKind::Egz { t } => (t.min(MAX_SEARCH_LENGTH) as usize).max(1),
        ConstantKind::Davenport => 1,
    }
    .max(bytes.iter().copied().max().unwrap_or(0) as usize);
    if let ConstantKind::Egz { t } = kind {
        if t > MAX_SEARCH_LENGTH && ms.length() >= t {
            return Err(Error::InvalidArgument(format!(
                "t = {t} exceeds the supported maximum {MAX_SEARCH_LENGTH}"
            )));
        }
    }
    let eval = Evaluator::new(&tables, m as usize, max_count, EvalMode::Auto);
    let found = eval.find_zero(&bytes, kind.target(), &mut Scratch::new());
    Ok(match found {
        None => ZeroCheck::Counterexample,
        Some(sub) => ZeroCheck::Zero(MultisetSeq::new(ms.ring(), sub)?),
    })
}

/// Whether `ms` has no length-`t` sub-multiset with `e_m = 0`.
pub fn is_counterexample_egz(ms: &MultisetSeq, t: u64, m: u64) -> Result<ZeroCheck> {
    check_egz_args(m, t)?;
    check_zero(ms, m, ConstantKind::Egz { t })
}

/// Whether `ms` has no sub-multiset of length at least `m` with `e_m = 0`.
pub fn is_counterexample_dav(ms: &MultisetSeq, m: u64) -> Result<ZeroCheck> {
    check_degree(m)?;
    check_zero(ms, m, ConstantKind::Davenport)
}

/// Longest counterexample up to `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleSearch {
    pub length: u64,
    /// Lexicographically smallest canonical counterexample of that length.
    pub witness: MultisetSeq,
    /// `false` when counterexamples of length `cap` exist.
    pub closed: bool,
    pub level_sizes: Vec<usize>,
}

/// Searches counterexamples of length at most `cap`.
pub fn max_counterexample_length(
    kind: ConstantKind,
    ring: &RingSpec,
    m: u64,
    cap: u64,
    opts: &SearchOptions,
) -> Result<CounterexampleSearch> {
    match kind {
        ConstantKind::Egz { t } => check_egz_args(m, t)?,
        ConstantKind::Davenport => check_degree(m)?,
    }
    if cap < m {
        return Err(Error::InvalidArgument(format!("cap {cap} is below the degree {m}")));
    }
    if cap > MAX_SEARCH_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "cap {cap} exceeds the supported maximum {MAX_SEARCH_LENGTH}"
        )));
    }
    let tables = tables_for(ring)?;
    let max_count = match kind {
        ConstantKind::Egz { t } => cap.max(t),
        ConstantKind::Davenport => cap,
    }
    .min(MAX_SEARCH_LENGTH) as usize;
    let ctx = SearchContext {
        canon: Canonicalizer::new(&tables, opts.use_orbits),
        eval: Evaluator::new(&tables, m as usize, max_count, opts.eval_mode),
        target: kind.target(),
        card: ring.cardinality(),
    };
    let cfg = opts.run_config();
    let run = || match opts.strategy {
        Strategy::Frontier => frontier_search(&ctx, cap as usize, cfg),
        Strategy::Direct => direct_search(&ctx, cap as usize, cfg),
    };
    let LevelResult {
        max_len,
        witness,
        closed,
        level_sizes,
    } = with_threads(opts, run)?;
    Ok(CounterexampleSearch {
        length: max_len as u64,
        witness: MultisetSeq::new(ring, witness.iter().map(|&c| c as u32).collect())?,
        closed,
        level_sizes,
    })
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(opts: &SearchOptions, f: impl FnOnce() -> R + Send) -> R {
    match opts.threads {
        Some(n) if n > 1 && opts.parallel => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(_opts: &SearchOptions, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn method_of(opts: &SearchOptions) -> Method {
    match opts.strategy {
        Strategy::Frontier => Method::FrontierExhaustive,
        Strategy::Direct => Method::DirectExhaustive,
    }
}

fn outcome_from(search: CounterexampleSearch, cap: u64, source: String, opts: &SearchOptions) -> EgzOutcome {
    let (kind, value) = if search.closed {
        (OutcomeKind::Exact, search.length + 1)
    } else {
        (OutcomeKind::AtLeast, cap + 1)
    };
    EgzOutcome {
        kind,
        value: Some(value),
        witness: search.witness,
        method: method_of(opts),
        cap_used: Some(cap),
        cap_source: Some(source),
        level_sizes: search.level_sizes,
    }
}

/// `1^t`: every length-`t` sub-multiset has `e_m = C(t, m)·1`.
pub fn ones_family_witness(ring: &RingSpec, t: u64) -> Result<MultisetSeq> {
    let one = ring.index_of(&ring.one())?;
    let count = u32::try_from(t).map_err(|_| Error::InvalidArgument(format!("t = {t} too large")))?;
    MultisetSeq::from_counts(ring, &[(one, count)])
}

/// `E(t, ring, m)`.
///
/// Returns `Infinite` exactly when the exponent of the ring does not divide
/// `C(t, m)`. Otherwise the search runs up to the smallest applicable upper
/// bound (and `cap`, if given); the result is `Exact` when a level comes up
/// empty below that limit.
pub fn egz_constant(ring: &RingSpec, m: u64, t: u64, cap: Option<u64>, opts: &SearchOptions) -> Result<EgzOutcome> {
    check_egz_args(m, t)?;
    if !divides_binomial(ring.exponent(), t, m) {
        return Ok(EgzOutcome {
            kind: OutcomeKind::Infinite,
            value: None,
            witness: ones_family_witness(ring, t)?,
            method: Method::InfinitePrecheck,
            cap_used: None,
            cap_source: None,
            level_sizes: Vec::new(),
        });
    }
    let mut candidates = egz_caps(ring, t, m);
    if let Some(c) = cap {
        candidates.push((c, "user cap".to_string()));
    }
    candidates.push((MAX_SEARCH_LENGTH, "length limit".to_string()));
    let (cap, source) = candidates
        .into_iter()
        .min_by_key(|(v, _)| *v)
        .expect("the length limit is always a candidate");
    if cap < m {
        return Err(Error::InvalidArgument(format!("cap {cap} is below the degree {m}")));
    }
    let search = max_counterexample_length(ConstantKind::Egz { t }, ring, m, cap, opts)?;
    Ok(outcome_from(search, cap, source, opts))
}

/// `D_m(ring)`. Without `cap`, the pigeonhole bound is used: a counterexample
/// of length at least `m` has no zero and fewer than `L(exp, m)` copies of
/// any element.
pub fn davenport_m(ring: &RingSpec, m: u64, cap: Option<u64>, opts: &SearchOptions) -> Result<EgzOutcome> {
    check_degree(m)?;
    let (cap, source) = match cap {
        Some(c) => (c, "user cap".to_string()),
        None => {
            let l = l_const(ring.exponent(), m)?;
            (davenport_cap(ring, m, l), "pigeonhole".to_string())
        }
    };
    let (cap, source) = if cap > MAX_SEARCH_LENGTH {
        (MAX_SEARCH_LENGTH, "length limit".to_string())
    } else {
        (cap, source)
    };
    if cap < m {
        return Err(Error::InvalidArgument(format!("cap {cap} is below the degree {m}")));
    }
    let search = max_counterexample_length(ConstantKind::Davenport, ring, m, cap, opts)?;
    Ok(outcome_from(search, cap, source, opts))
}
