//! Serializable records of computed constants that can be re-checked
//! independently of the run that produced them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::MultisetSeq;
use crate::numtheory::{binom_mod, divides_binomial};
use crate::ring::RingSpec;
use crate::search::{
    is_counterexample_dav, is_counterexample_egz, max_counterexample_length, ones_family_witness, ConstantKind,
    EgzOutcome, Method, OutcomeKind, SearchOptions,
};

pub const TOOL_VERSION: &str = concat!("egz ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Egz,
    Davenport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub kind: QueryKind,
    pub ring: RingSpec,
    pub m: u64,
    pub t: Option<u64>,
}

impl Query {
    pub fn egz(ring: &RingSpec, m: u64, t: u64) -> Self {
        Query {
            kind: QueryKind::Egz,
            ring: ring.clone(),
            m,
            t: Some(t),
        }
    }

    pub fn davenport(ring: &RingSpec, m: u64) -> Self {
        Query {
            kind: QueryKind::Davenport,
            ring: ring.clone(),
            m,
            t: None,
        }
    }

    fn constant_kind(&self) -> Result<ConstantKind> {
        match (self.kind, self.t) {
            (QueryKind::Egz, Some(t)) => Ok(ConstantKind::Egz { t }),
            (QueryKind::Egz, None) => Err(Error::Certificate("egz query without t".into())),
            (QueryKind::Davenport, None) => Ok(ConstantKind::Davenport),
            (QueryKind::Davenport, Some(_)) => Err(Error::Certificate("davenport query with t".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub kind: OutcomeKind,
    pub value: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Element index → multiplicity; zero counts omitted.
    pub multiplicities: BTreeMap<usize, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub query: Query,
    pub outcome: OutcomeRecord,
    pub witness: WitnessRecord,
    pub method: Method,
    pub cap_used: Option<u64>,
    pub tool_version: String,
}

impl Certificate {
    pub fn new(query: Query, outcome: &EgzOutcome) -> Self {
        Certificate {
            query,
            outcome: OutcomeRecord {
                kind: outcome.kind,
                value: outcome.value,
            },
            witness: WitnessRecord {
                multiplicities: outcome.witness.multiplicities(),
            },
            method: outcome.method,
            cap_used: outcome.cap_used,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn witness_multiset(&self) -> Result<MultisetSeq> {
        let counts: Vec<(usize, u32)> = self.witness.multiplicities.iter().map(|(&i, &c)| (i, c)).collect();
        MultisetSeq::from_counts(&self.query.ring, &counts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub checks: Vec<(String, bool)>,
    /// `Some` when the search was repeated.
    pub rerun_matches: Option<bool>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok) && self.rerun_matches != Some(false)
    }
}

/// Re-checks a certificate: the witness must be a counterexample of the
/// claimed length. With `rerun`, exhaustive results are recomputed up to the
/// claimed value and must close there.
pub fn verify_certificate(cert: &Certificate, rerun: bool, opts: &SearchOptions) -> Result<Verification> {
    let q = &cert.query;
    let kind = q.constant_kind()?;
    let witness = cert.witness_multiset()?;
    let mut checks = Vec::new();
    let is_counterexample = match kind {
        ConstantKind::Egz { t } => is_counterexample_egz(&witness, t, q.m)?,
        ConstantKind::Davenport => is_counterexample_dav(&witness, q.m)?,
    }
    .is_counterexample();
    checks.push(("witness is a counterexample".to_string(), is_counterexample));

    let value = cert.outcome.value;
    match (cert.outcome.kind, cert.method) {
        (OutcomeKind::Infinite, Method::InfinitePrecheck) => {
            let ConstantKind::Egz { t } = kind else {
                return Err(Error::Certificate("infinite davenport constant".into()));
            };
            let residue = binom_mod(t, q.m, q.ring.exponent())?;
            checks.push((
                format!("C({t},{}) ≡ {residue} ≢ 0 (mod {})", q.m, q.ring.exponent()),
                !divides_binomial(q.ring.exponent(), t, q.m),
            ));
            checks.push(("witness is 1^t".to_string(), witness == ones_family_witness(&q.ring, t)?));
            checks.push(("no value recorded".to_string(), value.is_none()));
        }
        (OutcomeKind::Infinite, _) | (_, Method::InfinitePrecheck) => {
            checks.push(("method matches outcome".to_string(), false));
        }
        (kind_out, _) => {
            let Some(value) = value else {
                return Err(Error::Certificate("finite outcome without a value".into()));
            };
            checks.push((
                format!("witness length is {}", value.saturating_sub(1)),
                witness.length() + 1 == value,
            ));
            if let ConstantKind::Egz { t } = kind {
                checks.push((
                    "exponent divides C(t, m)".to_string(),
                    divides_binomial(q.ring.exponent(), t, q.m),
                ));
            }
            if kind_out == OutcomeKind::AtLeast {
                checks.push((
                    "cap recorded".to_string(),
                    cert.cap_used.is_some_and(|c| c + 1 == value),
                ));
            }
        }
    }

    let rerun_matches = if rerun && cert.outcome.kind == OutcomeKind::Exact {
        let value = value.unwrap_or(0);
        let cap = value.max(q.m);
        let search = max_counterexample_length(kind, &q.ring, q.m, cap, opts)?;
        Some(search.closed && search.length + 1 == value && search.witness == witness)
    } else {
        None
    };
    Ok(Verification { checks, rerun_matches })
}
