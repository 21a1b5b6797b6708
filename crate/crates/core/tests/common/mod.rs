//! Slow, obviously-correct reference implementations used by the tests.
#![allow(dead_code)]

use egz_core::ring::{RingElem, RingSpec};
use egz_core::MultisetSeq;
use num_bigint::BigUint;

/// All multiplicity vectors of length `card` summing to `len`.
pub fn compositions(card: usize, len: u32) -> Vec<Vec<u32>> {
    if card == 1 {
        return vec![vec![len]];
    }
    (0..=len)
        .flat_map(|c| {
            compositions(card - 1, len - c).into_iter().map(move |mut rest| {
                rest.insert(0, c);
                rest
            })
        })
        .collect()
}

/// Index sets of size `m` drawn from `0..n`.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// `e_m` straight from the definition: the sum over `m`-subsets of positions
/// of the product of the entries, coordinate by coordinate.
pub fn naive_e_m(ring: &RingSpec, seq: &[RingElem], m: usize) -> Vec<u64> {
    ring.moduli()
        .iter()
        .enumerate()
        .map(|(c, &n)| {
            subsets(seq.len(), m)
                .iter()
                .map(|idx| idx.iter().fold(1u64, |acc, &i| acc * seq[i].residues()[c] % n))
                .fold(0u64, |acc, x| (acc + x) % n)
        })
        .collect()
}

/// Whether some sub-multiset of the required length has `e_m = 0`, testing
/// every sub-multiset with [`naive_e_m`].
pub fn naive_has_zero(ms: &MultisetSeq, m: usize, egz_t: Option<u64>) -> bool {
    let ring = ms.ring();
    let mut subs: Vec<Vec<u32>> = vec![Vec::new()];
    for &c in ms.mult() {
        subs = subs
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    subs.into_iter().any(|sub| {
        let len: u64 = sub.iter().map(|&c| c as u64).sum();
        let length_ok = match egz_t {
            Some(t) => len == t,
            None => len >= m as u64,
        };
        length_ok && {
            let seq = MultisetSeq::new(ring, sub).unwrap().to_sequence();
            naive_e_m(ring, &seq, m).iter().all(|&r| r == 0)
        }
    })
}

/// `C(n, m)` by the multiplicative formula over big integers.
pub fn big_binomial(n: u64, m: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..m {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `ν_p(x)` for `x > 0`, by repeated division.
pub fn big_valuation(p: u64, x: &BigUint) -> u32 {
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let mut x = x.clone();
    let mut v = 0;
    while &x % &p == zero {
        x /= &p;
        v += 1;
    }
    v
}

/// Longest counterexample by brute force over all multisets up to `cap`,
/// without orbits or pruning.
pub fn naive_max_counterexample(ring: &RingSpec, m: usize, egz_t: Option<u64>, cap: u32) -> u32 {
    let mut best = 0;
    for len in 0..=cap {
        let any = compositions(ring.cardinality(), len)
            .into_iter()
            .any(|mult| !naive_has_zero(&MultisetSeq::new(ring, mult).unwrap(), m, egz_t));
        if any {
            best = len;
        }
    }
    best
}
