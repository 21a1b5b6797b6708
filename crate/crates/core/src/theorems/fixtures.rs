use super::bounds::{bound_calculator, BoundQuery};
use super::{check_egz_vs_davenport, check_general_upper, check_low_lower, exact_pairs, Check, Claim, Fixture, Runtime, SuiteCtx, Tier};
use crate::error::Result;
use crate::multiset::MultisetSeq;
use crate::numtheory::{in_s, interval_witness, l_const, nu_p, s_members};
use crate::ring::RingSpec;
use crate::search::brink::{brink_boolean_check, degree_two_egz_instance};
use crate::search::{is_counterexample_egz, OutcomeKind};
use crate::symfun::dominating_sets;

fn fmt_value(v: Option<u64>) -> String {
    v.map_or_else(|| "not closed".to_string(), |v| v.to_string())
}

fn exact(ctx: &SuiteCtx, moduli: &[u64], m: u64, t: u64, expected: u64) -> Result<Check> {
    let got = ctx.egz_exact(moduli, m, t)?;
    Ok(Check::compare(expected, fmt_value(got), got == Some(expected)))
}

fn dav_exact(ctx: &SuiteCtx, moduli: &[u64], m: u64, expected: u64) -> Result<Check> {
    let got = ctx.dav_exact(moduli, m)?;
    Ok(Check::compare(expected, fmt_value(got), got == Some(expected)))
}

fn pow2_nu(m: u64) -> Result<u64> {
    Ok(1 << nu_p(2, m)?)
}

fn dav_z2_family(ctx: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    for m in 1..=16 {
        let want = m + pow2_nu(m)?;
        let got = ctx.dav_exact(&[2], m)?;
        if got != Some(want) {
            failures.push(format!("m={m}: {} ≠ {want}", fmt_value(got)));
        }
    }
    Ok(Check::all("D_m(Z_2) = m + 2^ν₂(m), m ≤ 16", failures, 16))
}

fn egz_z2_family(ctx: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 1..=12 {
        for t in s_members(2, m, 40) {
            total += 1;
            let want = t + pow2_nu(m)?;
            let got = ctx.egz_exact(&[2], m, t)?;
            if got != Some(want) {
                failures.push(format!("t={t}, m={m}: {} ≠ {want}", fmt_value(got)));
            }
        }
    }
    Ok(Check::all("E(t,Z_2,m) = t + 2^ν₂(m) for t ∈ S(2,m), t ≤ 40, m ≤ 12", failures, total))
}

fn egz_3_3_2(ctx: &SuiteCtx) -> Result<Check> {
    let o = ctx.egz(&[3], 2, 3)?;
    let ring = RingSpec::cyclic(3)?;
    let expected_witness = MultisetSeq::new(&ring, vec![1, 2, 2])?;
    let ok = o.kind == OutcomeKind::Exact && o.value == Some(6) && o.witness == expected_witness;
    Ok(Check::compare(
        format!("6 with witness {expected_witness}"),
        format!("{} with witness {}", fmt_value(o.value), o.witness),
        ok,
    ))
}

fn egz_16_8_2_witness(_: &SuiteCtx) -> Result<Check> {
    let ring = RingSpec::cyclic(8)?;
    let w = MultisetSeq::from_counts(&ring, &[(0, 14), (1, 15)])?;
    let ok = is_counterexample_egz(&w, 16, 2)?.is_counterexample();
    Ok(Check::compare(
        "{0:14, 1:15} has no length-16 zero",
        if ok { "counterexample" } else { "has a zero" },
        ok,
    ))
}

fn egz_prime_power(ctx: &SuiteCtx) -> Result<Check> {
    let cases: [(u64, u32, u32, u32); 3] = [(3, 2, 1, 1), (2, 2, 1, 1), (2, 3, 1, 1)];
    let mut failures = Vec::new();
    for (p, r, s, u) in cases {
        let want = bound_calculator(&BoundQuery::PrimePowerExact { p, r, s, u }).value;
        let (t, k, m) = (p.pow(r), p.pow(s), p.pow(u));
        let got = ctx.egz_exact(&[k], m, t)?;
        if got.is_none() || got != want {
            failures.push(format!("E({t},{k},{m}) = {} ≠ {}", fmt_value(got), fmt_value(want)));
        }
    }
    Ok(Check::all("E(9,3,3) = 15, E(4,2,2) = 6, E(8,2,2) = 10", failures, cases.len()))
}

fn egz_prime_lower(ctx: &SuiteCtx, p: u64) -> Result<Check> {
    let bound = bound_calculator(&BoundQuery::EgzPrimeLower { p }).value.unwrap_or(0);
    let got = ctx.egz_exact(&[p], 2, p)?;
    Ok(Check::compare(
        format!("E({p},{p},2) ≥ {bound}"),
        fmt_value(got),
        got.is_some_and(|v| v >= bound),
    ))
}

fn egz_prime_lower_3(ctx: &SuiteCtx) -> Result<Check> {
    egz_prime_lower(ctx, 3)
}

fn egz_prime_lower_5(ctx: &SuiteCtx) -> Result<Check> {
    egz_prime_lower(ctx, 5)
}

fn egz_prime_lower_7(ctx: &SuiteCtx) -> Result<Check> {
    egz_prime_lower(ctx, 7)
}

fn egz_qq3_lower(ctx: &SuiteCtx, qs: &[u64]) -> Result<Check> {
    let mut failures = Vec::new();
    for &q in qs {
        let bound = 2 * q - 3;
        let got = ctx.egz_exact(&[q], 3, q)?;
        if !got.is_some_and(|v| v >= bound) {
            failures.push(format!("E({q},{q},3) = {} < {bound}", fmt_value(got)));
        }
    }
    Ok(Check::all("E(q,q,3) ≥ 2q − 3", failures, qs.len()))
}

fn egz_qq3_lower_small(ctx: &SuiteCtx) -> Result<Check> {
    egz_qq3_lower(ctx, &[4, 5])
}

fn egz_qq3_lower_7(ctx: &SuiteCtx) -> Result<Check> {
    egz_qq3_lower(ctx, &[7])
}

fn egz_5_5_3_upper(ctx: &SuiteCtx) -> Result<Check> {
    let bound = bound_calculator(&BoundQuery::DegreeThreeUpper { k: 5 }).value.unwrap_or(0);
    let got = ctx.egz_exact(&[5], 3, 5)?;
    Ok(Check::compare(
        format!("E(5,5,3) ≤ {bound}"),
        fmt_value(got),
        got.is_some_and(|v| v <= bound),
    ))
}

fn sweep_egz_vs_davenport(ctx: &SuiteCtx) -> Result<Check> {
    let pairs = exact_pairs(ctx)?;
    let mut failures = Vec::new();
    for p in &pairs {
        failures.extend(check_egz_vs_davenport(p)?);
    }
    Ok(Check::all("E(t,G,m) ≥ t + D_m(G) − m on every exact pair", failures, pairs.len()))
}

fn sweep_general_upper(ctx: &SuiteCtx) -> Result<Check> {
    let pairs = exact_pairs(ctx)?;
    let failures = pairs.iter().filter_map(check_general_upper).collect();
    Ok(Check::all("E(t,k,m) ≤ k(t−1) − m + 2 for t ∈ S(k,m)", failures, pairs.len()))
}

fn sweep_low_lower(ctx: &SuiteCtx) -> Result<Check> {
    let pairs = exact_pairs(ctx)?;
    let mut failures = Vec::new();
    for p in &pairs {
        failures.extend(check_low_lower(p)?);
    }
    Ok(Check::all("E(t,k,m) ≥ t + L(k,m) − m for t ∈ S(k,m)", failures, pairs.len()))
}

fn egz_classical(ctx: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    for k in 2..=8 {
        let got = ctx.egz_exact(&[k], 1, k)?;
        if got != Some(2 * k - 1) {
            failures.push(format!("k={k}: {}", fmt_value(got)));
        }
    }
    Ok(Check::all("E(k,k,1) = 2k − 1, k ≤ 8", failures, 7))
}

const OLSON_RINGS: &[&[u64]] = &[
    &[2, 2],
    &[2, 4],
    &[2, 6],
    &[2, 8],
    &[2, 10],
    &[2, 12],
    &[3, 3],
    &[3, 6],
    &[3, 9],
    &[4, 4],
    &[5, 5],
    &[2, 2, 2],
    &[2, 2, 4],
    &[2, 2, 2, 2],
    &[3, 3, 3],
];

fn olson_davenport(ctx: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for &moduli in OLSON_RINGS {
        let rep = bound_calculator(&BoundQuery::Olson { moduli: moduli.to_vec() });
        if !rep.hypotheses_hold {
            continue;
        }
        total += 1;
        let got = ctx.dav_exact(moduli, 1)?;
        if got != rep.value {
            failures.push(format!("{moduli:?}: {} ≠ {}", fmt_value(got), fmt_value(rep.value)));
        }
    }
    Ok(Check::all("D_1(G) = 1 + Σ(n_i − 1)", failures, total))
}

fn dav_2_z3(ctx: &SuiteCtx) -> Result<Check> {
    dav_exact(ctx, &[3], 2, 5)
}

fn dav_2_z9(ctx: &SuiteCtx) -> Result<Check> {
    let bound = bound_calculator(&BoundQuery::DavenportOddSquare { k: 9, r: 3 }).value.unwrap_or(0);
    let got = ctx.dav_exact(&[9], 2)?;
    Ok(Check::compare(
        format!("9 (≤ {bound})"),
        fmt_value(got),
        got == Some(9) && 9 <= bound,
    ))
}

fn egz_16_8_2(ctx: &SuiteCtx) -> Result<Check> {
    exact(ctx, &[8], 2, 16, 30)
}

fn egz_9_9_2(ctx: &SuiteCtx) -> Result<Check> {
    exact(ctx, &[9], 2, 9, 17)
}

fn egz_10_6_6(ctx: &SuiteCtx) -> Result<Check> {
    exact(ctx, &[6], 6, 10, 19)
}

fn egz_25_5_5(ctx: &SuiteCtx) -> Result<Check> {
    exact(ctx, &[5], 5, 25, 45)
}

fn egz_8_z2cubed_2(ctx: &SuiteCtx) -> Result<Check> {
    let want = bound_calculator(&BoundQuery::PGroupExact { p: 2, alphas: vec![1, 1, 1], s: 1 }).value;
    let got = ctx.egz_exact(&[2, 2, 2], 2, 8)?;
    Ok(Check::compare(fmt_value(want), fmt_value(got), got.is_some() && got == want))
}

fn strict(ctx: &SuiteCtx, k: u64, m: u64, t: u64) -> Result<Check> {
    let e = ctx.egz_exact(&[k], m, t)?;
    let d = ctx.dav_exact(&[k], m)?;
    let ok = matches!((e, d), (Some(e), Some(d)) if e > t + d - m);
    Ok(Check::compare(
        format!("E({t},{k},{m}) > {t} + D_{m}(Z_{k}) − {m}"),
        format!("E = {}, D = {}", fmt_value(e), fmt_value(d)),
        ok,
    ))
}

fn strict_9_9_2(ctx: &SuiteCtx) -> Result<Check> {
    strict(ctx, 9, 2, 9)
}

fn strict_10_6_6(ctx: &SuiteCtx) -> Result<Check> {
    strict(ctx, 6, 6, 10)
}

fn conj_qq(ctx: &SuiteCtx) -> Result<Check> {
    let mut agree = Vec::new();
    let mut differ = Vec::new();
    for q in [2u64, 3, 4] {
        for t in s_members(q, q, 16).into_iter().filter(|&t| t > q).take(2) {
            let want = t + q * q - q;
            let got = ctx.egz_exact(&[q], q, t)?;
            let line = format!("E({t},{q},{q}) = {}", fmt_value(got));
            if got == Some(want) {
                agree.push(line);
            } else {
                differ.push(format!("{line} vs {want}"));
            }
        }
    }
    Ok(Check::info(
        "E(t,q,q) = t + q² − q",
        format!("agrees: [{}]; differs: [{}]", agree.join(", "), differ.join(", ")),
    ))
}

fn bound_values(_: &SuiteCtx) -> Result<Check> {
    let cases = [
        (BoundQuery::EgzUpperOdd { k: 9, r: 3, ell: 1 }, 21),
        (BoundQuery::DegreeThreeUpper { k: 5 }, 17),
        (BoundQuery::HalfDegreePGroup { p: 7, alphas: vec![1, 1], m: 2 }, 73),
        (BoundQuery::PGroupExact { p: 2, alphas: vec![1, 1, 1], s: 1 }, 14),
    ];
    let failures = cases
        .iter()
        .filter_map(|(q, want)| {
            let rep = bound_calculator(q);
            (rep.value != Some(*want) || !rep.hypotheses_hold).then(|| format!("{q:?}: {:?}", rep.value))
        })
        .collect();
    Ok(Check::all("bound values 21, 17, 73, 14 with hypotheses", failures, cases.len()))
}

fn lconst_prime_powers(_: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for p in [2u64, 3, 5] {
        for s in 1..=5u32 {
            for u in 0..=(6 - s) {
                total += 1;
                let got = l_const(p.pow(s), p.pow(u))?;
                if got != p.pow(s + u) {
                    failures.push(format!("L({}, {}) = {got}", p.pow(s), p.pow(u)));
                }
            }
        }
    }
    Ok(Check::all("L(p^s, p^u) = p^{s+u}, s + u ≤ 6", failures, total))
}

/// Holds exactly for odd prime powers; other odd `k` split by CRT.
fn lconst_odd_degree_two(_: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for k in (3..=99).step_by(2) {
        let got = l_const(k, 2)?;
        let prime_power = crate::numtheory::prime_power(k).is_some();
        total += 1;
        if (got == k) != prime_power {
            failures.push(format!("L({k},2) = {got}"));
        }
    }
    Ok(Check::all("L(k,2) = k for odd k ≥ 3 exactly when k is a prime power", failures, total))
}

fn s_lower(_: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for k in 2..=30 {
        for m in 1..=6 {
            let l = l_const(k, m)?;
            for t in 0..=200 {
                if in_s(k, m, t) && t != m {
                    total += 1;
                    if t < (m + 1).max(l) {
                        failures.push(format!("t={t} ∈ S({k},{m}) below {l}"));
                    }
                }
            }
        }
    }
    Ok(Check::all("t ∈ S(k,m), t > m ⇒ t ≥ L(k,m)", failures, total))
}

fn dominating(_: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    for m in 1..=12u32 {
        let want = if m % 2 == 0 { (m + 2) / 2 } else { m.div_ceil(2) } as usize;
        let (got, _) = dominating_sets(m)?;
        if got != want {
            failures.push(format!("t({m}) = {got} ≠ {want}"));
        }
    }
    Ok(Check::all("t(m) = (m+2)/2 for even m, (m+1)/2 for odd m", failures, 12))
}

fn interval_lemma(_: &SuiteCtx) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for m in 1..=64u64 {
        let lo = m + pow2_nu(m)?;
        for i in lo..=4096 {
            total += 1;
            if let Err(e) = interval_witness(m, i) {
                failures.push(format!("m={m}, i={i}: {e}"));
            }
        }
    }
    Ok(Check::all("an even C(j,m) in every window [i − 2^ν₂(m), i]", failures, total))
}

fn brink_egz_4_2_2(_: &SuiteCtx) -> Result<Check> {
    let inst = degree_two_egz_instance(2, &[1; 6], 1, 2);
    let rep = brink_boolean_check(&inst, false)?;
    Ok(Check::compare(
        "degree condition holds and ≥ 2 solutions",
        format!("{} solutions, degree sum {}", rep.solutions, inst.degree_sum()),
        rep.degree_condition && rep.solutions >= 2,
    ))
}

macro_rules! fixture {
    ($id:literal, $claim:ident, $tier:ident, $runtime:ident, $statement:literal, $run:path) => {
        Fixture {
            id: $id,
            claim: Claim::$claim,
            tier: Tier::$tier,
            statement: $statement,
            expected_runtime: Runtime::$runtime,
            run: $run,
        }
    };
}

/// All fixtures, in id order.
pub fn fixtures() -> Vec<Fixture> {
    let mut all = vec![
        fixture!("bounds-values", Formula, Fast, Milliseconds, "closed-form bounds at sample parameters", bound_values),
        fixture!("brink-egz-4-2-2", LowerBound, Fast, Milliseconds, "boolean system for E(4,2,2) has ≥ 2 solutions", brink_egz_4_2_2),
        fixture!("conj-qq", Informational, Fast, Seconds, "E(t,q,q) = t + q² − q", conj_qq),
        fixture!("dav-2-z3", ExactValue, Fast, Milliseconds, "D_2(Z_3) = 5", dav_2_z3),
        fixture!("dav-2-z9", ExactValue, Slow, Seconds, "D_2(Z_9) = 9 ≤ 12", dav_2_z9),
        fixture!("dav-z2-family", Formula, Fast, Milliseconds, "D_m(Z_2) = m + 2^ν₂(m)", dav_z2_family),
        fixture!("dominating-sets", Formula, Fast, Milliseconds, "minimum dominating set sizes", dominating),
        fixture!("egz-10-6-6", ExactValue, Slow, Minutes, "E(10,6,6) = 19", egz_10_6_6),
        fixture!("egz-16-8-2", ExactValue, Slow, Minutes, "E(16,8,2) = 30", egz_16_8_2),
        fixture!("egz-16-8-2-witness", LowerBound, Fast, Milliseconds, "E(16,8,2) ≥ 30 via {0:14, 1:15}", egz_16_8_2_witness),
        fixture!("egz-25-5-5", ExactValue, Slow, Minutes, "E(25,5,5) = 45", egz_25_5_5),
        fixture!("egz-3-3-2", ExactValue, Fast, Milliseconds, "E(3,3,2) = 6", egz_3_3_2),
        fixture!("egz-5-5-3-upper", UpperBound, Fast, Seconds, "E(5,5,3) ≤ 4·5 − 3", egz_5_5_3_upper),
        fixture!("egz-8-z2cubed-2", ExactValue, Slow, Minutes, "E(8,Z_2³,2) = 14", egz_8_z2cubed_2),
        fixture!("egz-9-9-2", ExactValue, Slow, Minutes, "E(9,9,2) = 17", egz_9_9_2),
        fixture!("egz-classical", ExactValue, Fast, Seconds, "E(k,k,1) = 2k − 1", egz_classical),
        fixture!("egz-prime-lower-3", LowerBound, Fast, Milliseconds, "E(3,3,2) ≥ 6", egz_prime_lower_3),
        fixture!("egz-prime-lower-5", LowerBound, Fast, Seconds, "E(5,5,2) ≥ 9", egz_prime_lower_5),
        fixture!("egz-prime-lower-7", LowerBound, Slow, Minutes, "E(7,7,2) ≥ 14", egz_prime_lower_7),
        fixture!("egz-prime-power", ExactValue, Fast, Seconds, "E(p^r,p^s,p^u) = p^r + p^{s+u} − p^u", egz_prime_power),
        fixture!("egz-qq3-lower", LowerBound, Fast, Seconds, "E(q,q,3) ≥ 2q − 3 for q = 4, 5", egz_qq3_lower_small),
        fixture!("egz-qq3-lower-7", LowerBound, Slow, Minutes, "E(7,7,3) ≥ 11", egz_qq3_lower_7),
        fixture!("egz-z2-family", Formula, Fast, Seconds, "E(t,Z_2,m) = t + 2^ν₂(m)", egz_z2_family),
        fixture!("interval-lemma", Formula, Fast, Seconds, "C(j,m) even somewhere in each window", interval_lemma),
        fixture!("lconst-odd-degree-two", Formula, Fast, Milliseconds, "L(k,2) = k for odd prime powers k", lconst_odd_degree_two),
        fixture!("lconst-prime-powers", Formula, Fast, Milliseconds, "L(p^s,p^u) = p^{s+u}", lconst_prime_powers),
        fixture!("olson-davenport", ExactValue, Fast, Seconds, "D_1 of p-groups and rank-2 groups", olson_davenport),
        fixture!("s-lower-bound", Formula, Fast, Milliseconds, "members of S(k,m) are at least L(k,m)", s_lower),
        fixture!("strict-10-6-6", LowerBound, Slow, Minutes, "E(10,6,6) > 10 + D_6(Z_6) − 6", strict_10_6_6),
        fixture!("strict-9-9-2", LowerBound, Slow, Minutes, "E(9,9,2) > 9 + D_2(Z_9) − 2", strict_9_9_2),
        fixture!("sweep-egz-vs-davenport", LowerBound, Fast, Seconds, "E(t,G,m) ≥ t + D_m(G) − m", sweep_egz_vs_davenport),
        fixture!("sweep-general-upper", UpperBound, Fast, Seconds, "E(t,k,m) ≤ k(t−1) − m + 2", sweep_general_upper),
        fixture!("sweep-low-lower", LowerBound, Fast, Seconds, "E(t,k,m) ≥ t + L(k,m) − m", sweep_low_lower),
    ];
    all.sort_by_key(|f| f.id);
    all
}
