//! Higher-degree Davenport and Erdős–Ginzburg–Ziv constants over
//! `Z_{n1}⊕…⊕Z_{nr}` by exhaustive search.
//!
//! A sequence is a multiset of ring elements; `e_m` is its elementary
//! symmetric polynomial of degree `m`. `D_m(G)` is the least `z` such that
//! every sequence of length `z` has a subsequence of length at least `m` with
//! `e_m = 0`; `E(t, G, m)` asks for a subsequence of length exactly `t`.

pub mod certificate;
pub mod error;
pub mod multiset;
pub mod numtheory;
pub mod ring;
pub mod search;
pub mod symfun;
pub mod theorems;

pub use certificate::{Certificate, Query, QueryKind, TOOL_VERSION};
pub use error::{Error, Result};
pub use multiset::MultisetSeq;
pub use ring::{RingElem, RingSpec};
pub use search::{davenport_m, egz_constant, EgzOutcome, Method, OutcomeKind, SearchOptions};
pub use symfun::{DominatingSet, SymExpansion};
