//! Closed-form bounds with machine-checked hypotheses.
//!
//! Each [`BoundQuery`] evaluates one published inequality or identity. The
//! value is always reported; `hypotheses_hold` says whether it is actually
//! guaranteed for the given parameters. Nothing here claims exactness for an
//! instance — that is the search's job.

use serde::{Deserialize, Serialize};

use crate::numtheory::{divides_binomial, gcd, in_s, is_prime, l_const, nu_p, prime_power};
use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "kebab-case")]
pub enum BoundQuery {
    /// `E(t, Z_k, m) ≤ k(t−1) − m + 2` for `t ∈ S(k, m)`.
    GeneralUpper { k: u64, t: u64, m: u64 },
    /// `E(t, Z_k, m) ≥ t + L(k, m) − m` for `t ∈ S(k, m)`.
    LowLower { k: u64, t: u64, m: u64 },
    /// `D_2(Z_k) ≤ k + r` for odd `k` with `r | k | r²`.
    DavenportOddSquare { k: u64, r: u64 },
    /// `E(ℓk, Z_k, 2) ≤ (ℓ+1)k + 2r − 3` for odd `k` with `r | k | r²`.
    EgzUpperOdd { k: u64, r: u64, ell: u64 },
    /// `E(p, Z_p, 2) ≥ 2p − 1`, or `≥ 2p` when `p ≡ 3 (mod 4)`.
    EgzPrimeLower { p: u64 },
    /// `E(k, Z_k, 3) ≤ 4k − 3` for `gcd(k, 3) = 1`.
    DegreeThreeUpper { k: u64 },
    /// `E(q, Z_q, 3) ≥ 2q − 3` for a prime power `q`.
    DegreeThreeLower { q: u64 },
    /// `D_m(Z_2) = m + 2^{ν₂(m)}`.
    BinaryDavenport { m: u64 },
    /// `E(t, Z_2, m) = t + 2^{ν₂(m)}` for `t ∈ S(2, m)`.
    BinaryExact { t: u64, m: u64 },
    /// `E(p^r, Z_{p^s}, m) ≤ p^r + m·p^s − m` for `r ≥ s`, `p^r > m·p^s − m`.
    PrimePowerUpper { p: u64, r: u32, s: u32, m: u64 },
    /// `E(t, Z_{p^s}, p^u) ≥ t + p^{s+u} − p^u` for `t ∈ S(p^s, p^u)`.
    PrimePowerLower { p: u64, s: u32, u: u32, t: u64 },
    /// `E(p^r, Z_{p^s}, p^u) = p^r + p^{s+u} − p^u` for `r ≥ s + u`.
    PrimePowerExact { p: u64, r: u32, s: u32, u: u32 },
    /// `E(p^h, G, m) ≤ p^h + m·Σ(p^{α_j} − 1)` when `p^h` exceeds the sum term.
    PGroupUpper { p: u64, alphas: Vec<u32>, m: u64 },
    /// `E(t, G, p^s) ≥ t + p^s·Σ(p^{α_j} − 1)`.
    PGroupLower { p: u64, alphas: Vec<u32>, s: u32, t: u64 },
    /// `E(p^h, G, p^s) = p^h + p^s·Σ(p^{α_j} − 1)` when `p^h` exceeds the sum term.
    PGroupExact { p: u64, alphas: Vec<u32>, s: u32 },
    /// `E(p^h, G, m) ≤ p^h + (⌊m/2⌋+1)·Σ(p^{α_j} − 1)` for `p > m`.
    HalfDegreePGroup { p: u64, alphas: Vec<u32>, m: u64 },
    /// `E(n₂, Z_{n₁}⊕Z_{n₂}, 1) = 2n₁ + 2n₂ − 3` for `n₁ | n₂`.
    Reiher { n1: u64, n2: u64 },
    /// `D_1(G) = 1 + Σ(n_i − 1)` for p-groups and rank ≤ 2, moduli in divisor-chain form.
    Olson { moduli: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `None` when the expression itself is undefined or overflows.
    pub value: Option<u64>,
    pub kind: BoundKind,
    pub hypotheses: Vec<Hypothesis>,
    pub hypotheses_hold: bool,
    pub warning: Option<String>,
}

fn hyp(statement: impl Into<String>, holds: bool) -> Hypothesis {
    Hypothesis {
        statement: statement.into(),
        holds,
    }
}

fn report(value: Option<u64>, kind: BoundKind, hypotheses: Vec<Hypothesis>) -> BoundReport {
    let hypotheses_hold = value.is_some() && hypotheses.iter().all(|h| h.holds);
    let warning = (!hypotheses_hold).then(|| {
        if value.is_none() {
            "bound expression is undefined for these parameters".to_string()
        } else {
            "hypotheses do not hold; the value is not guaranteed".to_string()
        }
    });
    BoundReport {
        value,
        kind,
        hypotheses,
        hypotheses_hold,
        warning,
    }
}

fn pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

/// `Σ(p^{α_j} − 1)`.
fn excess_sum(p: u64, alphas: &[u32]) -> Option<u64> {
    alphas
        .iter()
        .try_fold(0u64, |acc, &a| acc.checked_add(pow(p, a)?.checked_sub(1)?))
}

fn p_group_hyps(p: u64, alphas: &[u32]) -> Vec<Hypothesis> {
    vec![
        hyp(format!("{p} is prime"), is_prime(p)),
        hyp("every α_j ≥ 1", !alphas.is_empty() && alphas.iter().all(|&a| a >= 1)),
    ]
}

fn nu2(m: u64) -> Option<u32> {
    nu_p(2, m).ok()
}

/// Evaluates a bound and checks its hypotheses.
pub fn bound_calculator(query: &BoundQuery) -> BoundReport {
    use BoundKind::*;
    match *query {
        BoundQuery::GeneralUpper { k, t, m } => {
            let v = k.checked_mul(t.saturating_sub(1)).and_then(|x| (x + 2).checked_sub(m));
            let hyps = vec![
                hyp("k ≥ 2", k >= 2),
                hyp("t ≥ m ≥ 1", m >= 1 && t >= m),
                hyp(format!("{t} ∈ S({k},{m})"), k >= 2 && m >= 1 && in_s(k, m, t)),
            ];
            report(v, Upper, hyps)
        }
        BoundQuery::LowLower { k, t, m } => {
            let l = if k >= 2 && m >= 1 { l_const(k, m).ok() } else { None };
            let v = l.and_then(|l| (t + l).checked_sub(m));
            let hyps = vec![
                hyp("k ≥ 2", k >= 2),
                hyp(format!("{t} ∈ S({k},{m})"), k >= 2 && m >= 1 && in_s(k, m, t)),
            ];
            report(v, Lower, hyps)
        }
        BoundQuery::DavenportOddSquare { k, r } => {
            let hyps = vec![
                hyp(format!("{k} is odd"), k % 2 == 1),
                hyp(format!("{r} | {k} | {r}²"), r >= 1 && k % r == 0 && (r * r) % k == 0),
            ];
            report(k.checked_add(r), Upper, hyps)
        }
        BoundQuery::EgzUpperOdd { k, r, ell } => {
            let v = (ell + 1)
                .checked_mul(k)
                .and_then(|x| x.checked_add(2 * r))
                .and_then(|x| x.checked_sub(3));
            let hyps = vec![
                hyp(format!("{k} is odd"), k % 2 == 1),
                hyp(format!("{r} | {k} | {r}²"), r >= 1 && k % r == 0 && (r * r) % k == 0),
                hyp("ℓ ≥ 1", ell >= 1),
            ];
            report(v, Upper, hyps)
        }
        BoundQuery::EgzPrimeLower { p } => {
            let v = if p % 4 == 3 { Some(2 * p) } else { (2 * p).checked_sub(1) };
            let hyps = vec![hyp(format!("{p} is an odd prime"), p > 2 && is_prime(p))];
            report(v, Lower, hyps)
        }
        BoundQuery::DegreeThreeUpper { k } => {
            let v = (4 * k).checked_sub(3);
            let hyps = vec![
                hyp("k ≥ 1", k >= 1),
                hyp(format!("gcd({k}, 3) = 1"), gcd(k, 3) == 1),
            ];
            report(v, Upper, hyps)
        }
        BoundQuery::DegreeThreeLower { q } => {
            let v = (2 * q).checked_sub(3);
            let hyps = vec![hyp(format!("{q} is a prime power"), prime_power(q).is_some())];
            report(v, Lower, hyps)
        }
        BoundQuery::BinaryDavenport { m } => {
            let v = nu2(m).and_then(|n| pow(2, n)).and_then(|x| x.checked_add(m));
            report(v, Exact, vec![hyp("m ≥ 1", m >= 1)])
        }
        BoundQuery::BinaryExact { t, m } => {
            let v = nu2(m).and_then(|n| pow(2, n)).and_then(|x| x.checked_add(t));
            let hyps = vec![hyp(format!("{t} ∈ S(2,{m})"), m >= 1 && in_s(2, m, t))];
            report(v, Exact, hyps)
        }
        BoundQuery::PrimePowerUpper { p, r, s, m } => {
            let pr = pow(p, r);
            let ps = pow(p, s);
            let tail = ps.and_then(|ps| m.checked_mul(ps)).and_then(|x| x.checked_sub(m));
            let v = pr.zip(tail).and_then(|(a, b)| a.checked_add(b));
            let hyps = vec![
                hyp(format!("{p} is prime"), is_prime(p)),
                hyp("r ≥ s ≥ 1", s >= 1 && r >= s),
                hyp("m ≥ 1", m >= 1),
                hyp("p^r > m·p^s − m", pr.zip(tail).is_some_and(|(a, b)| a > b)),
            ];
            report(v, Upper, hyps)
        }
        BoundQuery::PrimePowerLower { p, s, u, t } => {
            let ps = pow(p, s);
            let pu = pow(p, u);
            let v = pow(p, s + u)
                .zip(pu)
                .and_then(|(a, b)| a.checked_sub(b))
                .and_then(|x| x.checked_add(t));
            let hyps = vec![
                hyp(format!("{p} is prime"), is_prime(p)),
                hyp("s ≥ 1", s >= 1),
                hyp(
                    format!("{t} ∈ S(p^s, p^u)"),
                    ps.zip(pu).is_some_and(|(k, m)| in_s(k, m, t)),
                ),
            ];
            report(v, Lower, hyps)
        }
        BoundQuery::PrimePowerExact { p, r, s, u } => {
            let v = pow(p, r)
                .zip(pow(p, s + u))
                .zip(pow(p, u))
                .and_then(|((a, b), c)| a.checked_add(b)?.checked_sub(c));
            let hyps = vec![
                hyp(format!("{p} is prime"), is_prime(p)),
                hyp("r, s, u ≥ 1", r >= 1 && s >= 1 && u >= 1),
                hyp("r ≥ s + u", r >= s + u),
            ];
            report(v, Exact, hyps)
        }
        BoundQuery::PGroupUpper { p, ref alphas, m } => {
            let h: u32 = alphas.iter().sum();
            let ph = pow(p, h);
            let tail = excess_sum(p, alphas).and_then(|e| e.checked_mul(m));
            let v = ph.zip(tail).and_then(|(a, b)| a.checked_add(b));
            let mut hyps = p_group_hyps(p, alphas);
            hyps.push(hyp("m ≥ 1", m >= 1));
            hyps.push(hyp("p^h > m·Σ(p^α − 1)", ph.zip(tail).is_some_and(|(a, b)| a > b)));
            report(v, Upper, hyps)
        }
        BoundQuery::PGroupLower { p, ref alphas, s, t } => {
            let tail = excess_sum(p, alphas).zip(pow(p, s)).and_then(|(e, ps)| e.checked_mul(ps));
            let v = tail.and_then(|b| b.checked_add(t));
            report(v, Lower, p_group_hyps(p, alphas))
        }
        BoundQuery::PGroupExact { p, ref alphas, s } => {
            let h: u32 = alphas.iter().sum();
            let ph = pow(p, h);
            let tail = excess_sum(p, alphas).zip(pow(p, s)).and_then(|(e, ps)| e.checked_mul(ps));
            let v = ph.zip(tail).and_then(|(a, b)| a.checked_add(b));
            let mut hyps = p_group_hyps(p, alphas);
            hyps.push(hyp("p^h > p^s·Σ(p^α − 1)", ph.zip(tail).is_some_and(|(a, b)| a > b)));
            report(v, Exact, hyps)
        }
        BoundQuery::HalfDegreePGroup { p, ref alphas, m } => {
            let h: u32 = alphas.iter().sum();
            let ph = pow(p, h);
            let factor = m / 2 + 1;
            let tail = excess_sum(p, alphas).and_then(|e| e.checked_mul(factor));
            let v = ph.zip(tail).and_then(|(a, b)| a.checked_add(b));
            let mut hyps = p_group_hyps(p, alphas);
            hyps.push(hyp(format!("{p} > m = {m}"), p > m && m >= 1));
            hyps.push(hyp(
                "p^h > (⌊m/2⌋+1)·Σ(p^α − 1)",
                ph.zip(tail).is_some_and(|(a, b)| a > b),
            ));
            let mut rep = report(v, Upper, hyps);
            if alphas.len() >= 2 {
                let alt = alphas
                    .iter()
                    .try_fold(0u64, |acc, &a| acc.checked_add(pow(p, a)?))
                    .and_then(|s| s.checked_sub(1))
                    .and_then(|s| s.checked_mul(factor))
                    .zip(ph)
                    .and_then(|(b, a)| a.checked_add(b));
                let note = format!(
                    "the sum term is ambiguous for rank ≥ 2: value uses Σ(p^α − 1); \
                     reading it as (Σp^α) − 1 gives {}",
                    alt.map_or_else(|| "overflow".to_string(), |a| a.to_string())
                );
                rep.warning = Some(match rep.warning {
                    Some(w) => format!("{w}; {note}"),
                    None => note,
                });
            }
            rep
        }
        BoundQuery::Reiher { n1, n2 } => {
            let v = (2 * n1 + 2 * n2).checked_sub(3);
            let hyps = vec![hyp(format!("1 ≤ {n1} | {n2}"), n1 >= 1 && n2 % n1 == 0)];
            report(v, Exact, hyps)
        }
        BoundQuery::Olson { ref moduli } => {
            let v = moduli
                .iter()
                .try_fold(1u64, |acc, &n| acc.checked_add(n.checked_sub(1)?));
            let chain = moduli.windows(2).all(|w| w[0] >= 1 && w[1] % w[0] == 0);
            let p_group = p_group_of(moduli).is_some();
            let hyps = vec![
                hyp("every n_i ≥ 2", !moduli.is_empty() && moduli.iter().all(|&n| n >= 2)),
                hyp("n_1 | n_2 | …", chain),
                hyp("p-group or rank ≤ 2", p_group || moduli.len() <= 2),
            ];
            report(v, Exact, hyps)
        }
    }
}

/// `(p, [α_1, …])` when every modulus is a power of the same prime `p`.
pub fn p_group_of(moduli: &[u64]) -> Option<(u64, Vec<u32>)> {
    let mut prime = None;
    let mut alphas = Vec::with_capacity(moduli.len());
    for &n in moduli {
        let (p, a) = prime_power(n)?;
        if *prime.get_or_insert(p) != p {
            return None;
        }
        alphas.push(a);
    }
    prime.map(|p| (p, alphas))
}

/// Upper bounds on `E(t, ring, m)` whose hypotheses hold, each with a label.
///
/// Callers must already know that `exp(ring) | C(t, m)`.
pub fn egz_caps(ring: &RingSpec, t: u64, m: u64) -> Vec<(u64, String)> {
    debug_assert!(divides_binomial(ring.exponent(), t, m));
    let mut caps = Vec::new();
    // t copies of one element sum to C(t,m)·g^m = 0; otherwise at least
    // t − m + 1 zeros are present and pad any m − 1 other elements.
    let card = ring.cardinality() as u64;
    if let Some(v) = card.checked_mul(t - 1).and_then(|x| (x + 2).checked_sub(m)) {
        caps.push((v, "pigeonhole".to_string()));
    }
    let mut push = |query: BoundQuery, label: &str| {
        let rep = bound_calculator(&query);
        if rep.hypotheses_hold && rep.kind != BoundKind::Lower {
            if let Some(v) = rep.value {
                caps.push((v, label.to_string()));
            }
        }
    };
    if let Some((p, alphas)) = p_group_of(ring.moduli()) {
        if let Some((tp, r)) = prime_power(t) {
            if tp == p {
                if alphas.len() == 1 {
                    push(
                        BoundQuery::PrimePowerUpper { p, r, s: alphas[0], m },
                        "prime-power bound",
                    );
                }
                if r == alphas.iter().sum::<u32>() {
                    push(BoundQuery::PGroupUpper { p, alphas: alphas.clone(), m }, "p-group bound");
                    if alphas.len() == 1 {
                        push(BoundQuery::HalfDegreePGroup { p, alphas, m }, "half-degree bound");
                    }
                }
            }
        }
    }
    if ring.is_cyclic() {
        let k = ring.moduli()[0];
        if m == 2 && k % 2 == 1 && t.is_multiple_of(k) {
            if let Some(r) = (1..=k).find(|&r| k.is_multiple_of(r) && (r * r) % k == 0) {
                push(BoundQuery::EgzUpperOdd { k, r, ell: t / k }, "odd-modulus bound");
            }
        }
        if m == 3 && t == k {
            push(BoundQuery::DegreeThreeUpper { k }, "degree-three bound");
        }
    }
    caps
}

/// An upper bound on `D_m(ring)`.
///
/// `l` must be `L(exp(ring), m)`. A counterexample of length at least `m`
/// contains no zero (a zero kills any `m`-subset containing it) and fewer than
/// `l` copies of any element `g`, since `l` copies give `C(l,m)·g^m = 0`.
pub fn davenport_cap(ring: &RingSpec, m: u64, l: u64) -> u64 {
    let nonzero = ring.cardinality() as u64 - 1;
    nonzero.saturating_mul(l - 1).saturating_add(1).max(m)
}
