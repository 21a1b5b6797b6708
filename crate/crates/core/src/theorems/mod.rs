//! Fixture-driven checks of known values and inequalities.
//!
//! Every fixture recomputes its claim from scratch — exact values by
//! exhaustive search, formulas by the number-theory and symmetric-function
//! modules. Informational fixtures report a comparison without asserting it.

pub mod bounds;
mod fixtures;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::MultisetSeq;
use crate::numtheory::{in_s, l_const, s_members};
use crate::ring::RingSpec;
use crate::search::{davenport_m, egz_constant, is_counterexample_egz, EgzOutcome, OutcomeKind, SearchOptions};

pub use fixtures::fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Slow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TierSelect {
    #[default]
    Fast,
    Slow,
    All,
}

impl TierSelect {
    fn includes(self, tier: Tier) -> bool {
        matches!(
            (self, tier),
            (TierSelect::All, _) | (TierSelect::Fast, Tier::Fast) | (TierSelect::Slow, Tier::Slow)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    ExactValue,
    LowerBound,
    UpperBound,
    Formula,
    Informational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Runtime {
    Milliseconds,
    Seconds,
    Minutes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational fixture; never fails the suite.
    Info,
    Timeout,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
            Status::Timeout => "TIMEOUT",
        })
    }
}

/// Outcome of one fixture body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

impl Check {
    pub fn compare(expected: impl fmt::Display, computed: impl fmt::Display, pass: bool) -> Self {
        Check {
            status: if pass { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    pub fn info(expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        Check {
            status: Status::Info,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    /// Accumulates sub-check failures into one check.
    pub fn all(expected: impl fmt::Display, failures: Vec<String>, total: usize) -> Self {
        let computed = if failures.is_empty() {
            format!("{total} cases, all hold")
        } else {
            format!("{} of {total} cases fail: {}", failures.len(), failures.join("; "))
        };
        Check::compare(expected, computed, failures.is_empty())
    }
}

pub struct Fixture {
    pub id: &'static str,
    pub claim: Claim,
    pub tier: Tier,
    pub statement: &'static str,
    pub expected_runtime: Runtime,
    pub(crate) run: fn(&SuiteCtx) -> Result<Check>,
}

impl fmt::Debug for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fixture")
            .field("id", &self.id)
            .field("claim", &self.claim)
            .field("tier", &self.tier)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub id: String,
    pub claim: Claim,
    pub tier: Tier,
    pub statement: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub results: Vec<FixtureResult>,
}

impl SuiteReport {
    /// No asserting fixture failed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn timed_out(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Timeout)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub search: SearchOptions,
    /// Per-fixture wall-clock limit.
    pub fixture_timeout: Option<Duration>,
}

type MemoKey = (Option<u64>, Vec<u64>, u64);
type MemoCell = Arc<OnceLock<Result<EgzOutcome>>>;

/// Shares exact computations between fixtures of one run.
#[derive(Default)]
pub(crate) struct Memo {
    cells: Mutex<HashMap<MemoKey, MemoCell>>,
}

impl Memo {
    fn cell(&self, key: MemoKey) -> MemoCell {
        let mut cells = self.cells.lock().unwrap_or_else(|e| e.into_inner());
        cells.entry(key).or_default().clone()
    }
}

pub(crate) struct SuiteCtx<'a> {
    pub(crate) opts: SearchOptions,
    memo: &'a Memo,
}

impl SuiteCtx<'_> {
    pub(crate) fn egz(&self, moduli: &[u64], m: u64, t: u64) -> Result<EgzOutcome> {
        let cell = self.memo.cell((Some(t), moduli.to_vec(), m));
        cell.get_or_init(|| egz_constant(&RingSpec::new(moduli)?, m, t, None, &self.opts))
            .clone()
    }

    pub(crate) fn dav(&self, moduli: &[u64], m: u64) -> Result<EgzOutcome> {
        let cell = self.memo.cell((None, moduli.to_vec(), m));
        cell.get_or_init(|| davenport_m(&RingSpec::new(moduli)?, m, None, &self.opts))
            .clone()
    }

    /// The exact value, or `None` if the search did not close.
    pub(crate) fn egz_exact(&self, moduli: &[u64], m: u64, t: u64) -> Result<Option<u64>> {
        let o = self.egz(moduli, m, t)?;
        Ok((o.kind == OutcomeKind::Exact).then_some(o.value).flatten())
    }

    pub(crate) fn dav_exact(&self, moduli: &[u64], m: u64) -> Result<Option<u64>> {
        let o = self.dav(moduli, m)?;
        Ok((o.kind == OutcomeKind::Exact).then_some(o.value).flatten())
    }
}

fn run_fixture(f: &Fixture, suite: &SuiteOptions, memo: &Memo) -> FixtureResult {
    let mut opts = suite.search.clone();
    if let Some(limit) = suite.fixture_timeout {
        let d = Instant::now() + limit;
        opts.deadline = Some(opts.deadline.map_or(d, |e| e.min(d)));
    }
    let ctx = SuiteCtx { opts, memo };
    let check = match (f.run)(&ctx) {
        Ok(c) => c,
        Err(Error::DeadlineExceeded { level, lower_bound }) => Check {
            status: Status::Timeout,
            expected: String::new(),
            computed: format!("deadline reached at length {level} (value ≥ {lower_bound})"),
        },
        Err(e) => Check {
            status: Status::Fail,
            expected: String::new(),
            computed: format!("error: {e}"),
        },
    };
    FixtureResult {
        id: f.id.to_string(),
        claim: f.claim,
        tier: f.tier,
        statement: f.statement.to_string(),
        status: check.status,
        expected: check.expected,
        computed: check.computed,
    }
}

/// Runs every fixture of the selected tier whose id contains `filter`.
/// Results are sorted by fixture id.
pub fn run_suite(tier: TierSelect, filter: Option<&str>, opts: &SuiteOptions) -> SuiteReport {
    let selected: Vec<Fixture> = fixtures()
        .into_iter()
        .filter(|f| tier.includes(f.tier))
        .filter(|f| filter.is_none_or(|s| f.id.contains(s)))
        .collect();
    let memo = Memo::default();
    #[cfg(feature = "parallel")]
    let mut results: Vec<FixtureResult> = if opts.search.parallel {
        use rayon::prelude::*;
        selected.par_iter().map(|f| run_fixture(f, opts, &memo)).collect()
    } else {
        selected.iter().map(|f| run_fixture(f, opts, &memo)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut results: Vec<FixtureResult> = selected.iter().map(|f| run_fixture(f, opts, &memo)).collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    SuiteReport { results }
}

/// Both constants computed exactly for one `(ring, m, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPair {
    pub ring: RingSpec,
    pub m: u64,
    pub t: u64,
    pub davenport: u64,
    pub egz: u64,
    pub davenport_witness: MultisetSeq,
}

/// Rings and degrees of the inequality sweep.
pub const SWEEP_RINGS: &[&[u64]] = &[&[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9], &[2, 2], &[2, 4], &[3, 3]];
pub const SWEEP_DEGREES: &[u64] = &[1, 2, 3];
/// Largest `t` in the sweep; at most two values of `t` per ring and degree.
pub const SWEEP_MAX_T: u64 = 12;

/// Computes every pair of the sweep grid; pairs that do not close are skipped.
pub fn exact_pair_grid(opts: &SearchOptions) -> Result<Vec<ExactPair>> {
    let memo = Memo::default();
    let ctx = SuiteCtx { opts: opts.clone(), memo: &memo };
    exact_pairs(&ctx)
}

pub(crate) fn exact_pairs(ctx: &SuiteCtx) -> Result<Vec<ExactPair>> {
    let mut pairs = Vec::new();
    for &moduli in SWEEP_RINGS {
        let ring = RingSpec::new(moduli)?;
        for &m in SWEEP_DEGREES {
            let dav = ctx.dav(moduli, m)?;
            let Some(d) = (dav.kind == OutcomeKind::Exact).then_some(dav.value).flatten() else {
                continue;
            };
            let ts = s_members(ring.exponent(), m, SWEEP_MAX_T);
            for &t in ts.iter().filter(|&&t| t > m).take(2) {
                if let Some(e) = ctx.egz_exact(moduli, m, t)? {
                    pairs.push(ExactPair {
                        ring: ring.clone(),
                        m,
                        t,
                        davenport: d,
                        egz: e,
                        davenport_witness: dav.witness.clone(),
                    });
                }
            }
        }
    }
    Ok(pairs)
}

/// `E(t) ≥ t + D_m − m`, with `0^{t−m} ∪ S*` checked as a counterexample
/// for the extremal Davenport witness `S*`.
pub fn check_egz_vs_davenport(pair: &ExactPair) -> Result<Option<String>> {
    let ExactPair { ring, m, t, davenport: d, egz: e, .. } = pair;
    let label = format!("{ring}, m={m}, t={t}");
    if t + d - m > *e {
        return Ok(Some(format!("{label}: {t} + {d} − {m} > {e}")));
    }
    let zero = ring.index_of(&ring.zero())?;
    let padded = pair.davenport_witness.with_added(zero, (t - m) as u32)?;
    if padded.length() != t + d - m - 1 || !is_counterexample_egz(&padded, *t, *m)?.is_counterexample() {
        return Ok(Some(format!("{label}: padded witness {padded} is not a counterexample")));
    }
    Ok(None)
}

/// For cyclic rings with `t ∈ S(k, m)`: `E(t) ≤ k(t−1) − m + 2`.
pub fn check_general_upper(pair: &ExactPair) -> Option<String> {
    let ExactPair { ring, m, t, egz: e, .. } = pair;
    let k = ring.moduli()[0];
    if !ring.is_cyclic() || !in_s(k, *m, *t) {
        return None;
    }
    let bound = k * (t - 1) + 2 - m;
    (*e > bound).then(|| format!("{ring}, m={m}, t={t}: {e} > {bound}"))
}

/// For cyclic rings with `t ∈ S(k, m)`: `E(t) ≥ t + L(k, m) − m`.
pub fn check_low_lower(pair: &ExactPair) -> Result<Option<String>> {
    let ExactPair { ring, m, t, egz: e, .. } = pair;
    let k = ring.moduli()[0];
    if !ring.is_cyclic() || !in_s(k, *m, *t) {
        return Ok(None);
    }
    let bound = t + l_const(k, *m)? - m;
    Ok((*e < bound).then(|| format!("{ring}, m={m}, t={t}: {e} < {bound}")))
}
