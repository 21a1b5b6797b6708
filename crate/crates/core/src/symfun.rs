//! Elementary symmetric polynomials over ring sequences, their power-sum
//! expansion, and minimum dominating sets of power sums.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::MultisetSeq;
use crate::numtheory::binom_mod_big;
use crate::ring::{RingElem, RingSpec};

/// Largest degree accepted by [`newton_girard`] and [`dominating_sets`].
pub const MAX_EXPANSION_DEGREE: u32 = 20;

fn require_degree(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("degree m must be at least 1".into()));
    }
    Ok(())
}

/// `e_m(S)` by the prefix recurrence `E[j] += g·E[j−1]`; zero when `|S| < m`.
pub fn e_m_seq(ring: &RingSpec, seq: &[RingElem], m: u32) -> Result<RingElem> {
    require_degree(m)?;
    let m = m as usize;
    let mut e = vec![ring.zero(); m + 1];
    e[0] = ring.one();
    for (i, g) in seq.iter().enumerate() {
        for j in (1..=m.min(i + 1)).rev() {
            let term = ring.mul(g, &e[j - 1])?;
            e[j] = ring.add(&e[j], &term)?;
        }
    }
    Ok(e.swap_remove(m))
}

/// `e_0 … e_m` of a multiset from the truncated generating product
/// `Π_g (1 + g·x)^{mult(g)}`.
pub fn e_all_coeffs(ring: &RingSpec, ms: &MultisetSeq, m: u32) -> Result<Vec<RingElem>> {
    if ms.ring() != ring {
        return Err(Error::InvalidArgument("multiset belongs to a different ring".into()));
    }
    let m = m as usize;
    let mut acc = vec![ring.zero(); m + 1];
    acc[0] = ring.one();
    for (idx, &count) in ms.mult().iter().enumerate() {
        if count == 0 {
            continue;
        }
        let g = ring.element_at(idx)?;
        // (1 + g x)^c truncated: C(c, j)·g^j, binomials reduced per coordinate.
        let top = m.min(count as usize);
        let mut factor = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let binom = ring
                .moduli()
                .iter()
                .map(|&n| binom_mod_big(count as u64, j as u64, n))
                .collect::<Result<Vec<u64>>>()?;
            let gj = ring.pow(&g, j as u64)?;
            let residues: Vec<u64> = gj
                .residues()
                .iter()
                .zip(&binom)
                .zip(ring.moduli())
                .map(|((&x, &b), &n)| (x as u128 * b as u128 % n as u128) as u64)
                .collect();
            factor.push(ring.element(&residues)?);
        }
        let mut next = vec![ring.zero(); m + 1];
        for (i, a) in acc.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, f) in factor.iter().enumerate().take(m + 1 - i) {
                let prod = ring.mul(a, f)?;
                next[i + j] = ring.add(&next[i + j], &prod)?;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `e_m` of a multiset; the coefficient of `x^m` in the generating product.
pub fn e_m_multiset(ring: &RingSpec, ms: &MultisetSeq, m: u32) -> Result<RingElem> {
    require_degree(m)?;
    let mut all = e_all_coeffs(ring, ms, m)?;
    Ok(all.swap_remove(m as usize))
}

/// The power sum `p_i(S) = Σ g^i`.
pub fn power_sum_eval(ring: &RingSpec, seq: &[RingElem], i: u32) -> Result<RingElem> {
    if i == 0 {
        return Err(Error::InvalidArgument("power-sum index must be at least 1".into()));
    }
    seq.iter().try_fold(ring.zero(), |acc, g| {
        ring.add(&acc, &ring.pow(g, i as u64)?)
    })
}

/// One product of power sums: `coefficient · Π p_i^{partition[i-1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymTerm {
    pub coefficient: i128,
    /// `(j_1, …, j_m)` with `Σ i·j_i = m`.
    pub partition: Vec<u32>,
}

impl SymTerm {
    /// Indices `i` with `j_i > 0`.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.partition
            .iter()
            .enumerate()
            .filter(|(_, &j)| j > 0)
            .map(|(i, _)| i as u32 + 1)
    }
}

/// `scale · e_m = Σ terms`, with `scale = m!` so all coefficients are
/// integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymExpansion {
    pub m: u32,
    pub scale: i128,
    pub terms: Vec<SymTerm>,
}

impl SymExpansion {
    /// Evaluates `Σ terms` given `power_sums[i-1] = p_i`.
    pub fn evaluate(&self, power_sums: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|t| {
                t.partition
                    .iter()
                    .zip(power_sums)
                    .fold(t.coefficient, |acc, (&j, &p)| acc * p.pow(j))
            })
            .sum()
    }

    /// Whether every term contains some `p_i` with `i ∈ indices`.
    pub fn is_dominated_by(&self, indices: &[u32]) -> bool {
        self.terms
            .iter()
            .all(|t| t.support().any(|i| indices.contains(&i)))
    }
}

impl fmt::Display for SymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e_{} =", self.scale, self.m)?;
        for (n, t) in self.terms.iter().enumerate() {
            let (sign, mag) = if t.coefficient < 0 {
                ("-", -t.coefficient)
            } else {
                ("+", t.coefficient)
            };
            if n == 0 {
                write!(f, " {}", if sign == "-" { "-" } else { "" })?;
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}·")?;
            }
            let mut first = true;
            for (i, &j) in t.partition.iter().enumerate() {
                if j == 0 {
                    continue;
                }
                if !first {
                    write!(f, "·")?;
                }
                first = false;
                write!(f, "p{}", i + 1)?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        Ok(())
    }
}

/// Partitions of `m` as multiplicity vectors `(j_1, …, j_m)`, ordered
/// ascending by their parts listed in decreasing order (`1^m` first, `m`
/// last).
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max_part: u32, parts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(parts.clone());
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            parts.push(part);
            rec(rest - part, part, parts, out);
            parts.pop();
        }
    }
    let mut lists = Vec::new();
    rec(m, m, &mut Vec::new(), &mut lists);
    lists.sort();
    lists
        .into_iter()
        .map(|parts| {
            let mut j = vec![0u32; m as usize];
            for p in parts {
                j[p as usize - 1] += 1;
            }
            j
        })
        .collect()
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

/// `m!·e_m` in power sums from the closed form: the term for `(j_i)` has
/// coefficient `(−1)^{m+Σj_i} · m! / Π (j_i!·i^{j_i})`.
pub fn newton_girard(m: u32) -> Result<SymExpansion> {
    require_degree(m)?;
    if m > MAX_EXPANSION_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "degree {m} exceeds the supported maximum {MAX_EXPANSION_DEGREE}"
        )));
    }
    let scale = factorial(m);
    let terms: Vec<SymTerm> = partitions(m)
        .into_iter()
        .map(|partition| {
            let denom: i128 = partition
                .iter()
                .enumerate()
                .map(|(i, &j)| factorial(j) * (i as i128 + 1).pow(j))
                .product();
            let parity = m + partition.iter().sum::<u32>();
            let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
            debug_assert_eq!(scale % denom, 0);
            SymTerm {
                coefficient: sign * (scale / denom),
                partition,
            }
        })
        .collect();
    let expansion = SymExpansion { m, scale, terms };
    debug_assert_eq!(
        expansion,
        newton_girard_recursive(m),
        "closed form disagrees with the recursion at m = {m}"
    );
    Ok(expansion)
}

/// The same expansion built from `k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i`
/// using integer arithmetic only:
/// `k!·e_k = Σ (−1)^{i−1} · (k−1)!/(k−i)! · ((k−i)!·e_{k−i}) · p_i`.
pub fn newton_girard_recursive(m: u32) -> SymExpansion {
    let m_us = m as usize;
    // scaled[k]: partition vector (length m) → coefficient of k!·e_k.
    let mut scaled: Vec<BTreeMap<Vec<u32>, i128>> = Vec::with_capacity(m_us + 1);
    scaled.push(BTreeMap::from([(vec![0u32; m_us], 1i128)]));
    for k in 1..=m_us {
        let mut poly: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        for i in 1..=k {
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            let falling = factorial(k as u32 - 1) / factorial((k - i) as u32);
            for (mono, &c) in &scaled[k - i] {
                let mut mono = mono.clone();
                mono[i - 1] += 1;
                *poly.entry(mono).or_insert(0) += sign * falling * c;
            }
        }
        poly.retain(|_, c| *c != 0);
        scaled.push(poly);
    }
    let order: Vec<Vec<u32>> = partitions(m);
    let top = &scaled[m_us];
    let terms = order
        .into_iter()
        .map(|partition| SymTerm {
            coefficient: top.get(&partition).copied().unwrap_or(0),
            partition,
        })
        .collect();
    SymExpansion {
        m,
        scale: factorial(m),
        terms,
    }
}

/// A set of power-sum indices hitting every term of the expansion of `e_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominatingSet {
    pub m: u32,
    pub indices: Vec<u32>,
}

impl DominatingSet {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

/// `{p_1, …, p_⌊m/2⌋, p_m}`.
pub fn standard_dominating_set(m: u32) -> DominatingSet {
    let mut indices: Vec<u32> = (1..=m / 2).collect();
    if !indices.contains(&m) {
        indices.push(m);
    }
    DominatingSet { m, indices }
}

/// Minimum dominating set by exhaustive search over index subsets in
/// increasing size; within a size the lexicographically first subset wins.
pub fn dominating_sets(m: u32) -> Result<(usize, DominatingSet)> {
    let expansion = newton_girard(m)?;
    let supports: Vec<u32> = expansion
        .terms
        .iter()
        .map(|t| t.support().fold(0u32, |mask, i| mask | 1 << (i - 1)))
        .collect();
    for size in 1..=m as usize {
        let mut found = None;
        for_each_combination(m as usize, size, &mut |combo| {
            let mask = combo.iter().fold(0u32, |acc, &i| acc | 1 << i);
            if supports.iter().all(|&s| s & mask != 0) {
                found = Some(combo.iter().map(|&i| i as u32 + 1).collect::<Vec<_>>());
                return true;
            }
            false
        });
        if let Some(indices) = found {
            return Ok((size, DominatingSet { m, indices }));
        }
    }
    unreachable!("the full index set always dominates")
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it
/// returns `true`.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        if f(&combo) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(ring: &RingSpec, vals: &[u64]) -> Vec<RingElem> {
        vals.iter().map(|&v| ring.element(&[v]).unwrap()).collect()
    }

    #[test]
    fn e_m_seq_examples() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let s = seq(&z3, &[1, 1, 2, 2]);
        assert_eq!(e_m_seq(&z3, &s, 2).unwrap(), z3.element(&[1]).unwrap());

        let z7 = RingSpec::cyclic(7).unwrap();
        let s = seq(&z7, &[3, 0, 5]);
        assert_eq!(e_m_seq(&z7, &s, 3).unwrap(), z7.zero());

        let z2 = RingSpec::cyclic(2).unwrap();
        let s = seq(&z2, &[1; 16]);
        assert_eq!(e_m_seq(&z2, &s, 2).unwrap(), z2.zero());

        assert_eq!(e_m_seq(&z7, &seq(&z7, &[3]), 2).unwrap(), z7.zero());
        assert!(e_m_seq(&z7, &[], 0).is_err());
    }

    #[test]
    fn e_m_multiset_examples() {
        let z3 = RingSpec::cyclic(3).unwrap();
        let ms = MultisetSeq::new(&z3, vec![0, 2, 2]).unwrap();
        assert_eq!(e_m_multiset(&z3, &ms, 2).unwrap(), z3.element(&[1]).unwrap());

        let z8 = RingSpec::cyclic(8).unwrap();
        let ms = MultisetSeq::from_counts(&z8, &[(1, 15)]).unwrap();
        assert_eq!(e_m_multiset(&z8, &ms, 2).unwrap(), z8.element(&[1]).unwrap());

        let ms = MultisetSeq::from_counts(&z8, &[(0, 6)]).unwrap();
        for m in 1..=6 {
            assert_eq!(e_m_multiset(&z8, &ms, m).unwrap(), z8.zero());
        }
        let all = e_all_coeffs(&z8, &ms, 3).unwrap();
        assert_eq!(all[0], z8.one());
    }

    #[test]
    fn power_sum_examples() {
        let z5 = RingSpec::cyclic(5).unwrap();
        let s = seq(&z5, &[2, 3]);
        assert_eq!(power_sum_eval(&z5, &s, 1).unwrap(), z5.zero());
        assert_eq!(power_sum_eval(&z5, &s, 2).unwrap(), z5.element(&[3]).unwrap());
        assert_eq!(power_sum_eval(&z5, &[], 4).unwrap(), z5.zero());
    }

    #[test]
    fn expansions_low_degree() {
        let e2 = newton_girard(2).unwrap();
        assert_eq!(e2.scale, 2);
        assert_eq!(e2.to_string(), "2·e_2 = p1^2 - p2");

        let e3 = newton_girard(3).unwrap();
        assert_eq!(e3.to_string(), "6·e_3 = p1^3 - 3·p1·p2 + 2·p3");

        let e4 = newton_girard(4).unwrap();
        let parts: Vec<_> = e4.terms.iter().map(|t| t.partition.clone()).collect();
        assert_eq!(
            parts,
            vec![
                vec![4, 0, 0, 0],
                vec![2, 1, 0, 0],
                vec![0, 2, 0, 0],
                vec![1, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        // 24·(1/24, −1/4, 1/8, 1/3, −1/4)
        let coeffs: Vec<_> = e4.terms.iter().map(|t| t.coefficient).collect();
        assert_eq!(coeffs, vec![1, -6, 3, 8, -6]);
    }

    #[test]
    fn expansion_term_counts_are_partition_numbers() {
        let p = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (m, &count) in (1..=12).zip(&p) {
            assert_eq!(newton_girard(m).unwrap().terms.len(), count);
        }
        assert!(newton_girard(0).is_err());
        assert!(newton_girard(21).is_err());
    }

    #[test]
    fn dominating_set_examples() {
        let (t, w) = dominating_sets(1).unwrap();
        assert_eq!((t, w.indices), (1, vec![1]));
        let (t, w) = dominating_sets(3).unwrap();
        assert_eq!((t, w.indices), (2, vec![1, 3]));
        let (t, w) = dominating_sets(4).unwrap();
        assert_eq!((t, w.indices), (3, vec![1, 2, 4]));
    }

    #[test]
    fn standard_set_dominates() {
        for m in 1..=14 {
            let e = newton_girard(m).unwrap();
            assert!(e.is_dominated_by(&standard_dominating_set(m).indices), "m = {m}");
        }
        assert_eq!(standard_dominating_set(1).indices, vec![1]);
        assert_eq!(standard_dominating_set(5).indices, vec![1, 2, 5]);
    }
}
