//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{big_binomial, big_valuation, compositions, naive_e_m, naive_max_counterexample};
use egz_core::numtheory::{kummer_valuation, l_const, nu_p};
use egz_core::search::brink::{brink_boolean_check, degree_two_egz_instance, BrinkInstance, Congruence, Monomial};
use egz_core::search::{max_counterexample_length, ConstantKind, Strategy};
use egz_core::symfun::{dominating_sets, e_m_multiset, e_m_seq, newton_girard, newton_girard_recursive};
use egz_core::theorems::bounds::{bound_calculator, BoundQuery};
use egz_core::theorems::{check_egz_vs_davenport, check_general_upper, check_low_lower, exact_pair_grid};
use egz_core::{davenport_m, egz_constant, EgzOutcome, MultisetSeq, OutcomeKind, RingSpec, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ring(moduli: &[u64]) -> RingSpec {
    RingSpec::new(moduli).unwrap()
}

fn exact(o: &EgzOutcome) -> Option<u64> {
    (o.kind == OutcomeKind::Exact).then_some(o.value).flatten()
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed < limit {
        Ok(format!("{label} in {elapsed:.2?}"))
    } else {
        Err(format!("{label} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn fail_if(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(format!("{} failure(s), first: {}", failures.len(), failures[0]))
    }
}

fn criterion_1() -> Outcome {
    let opts = SearchOptions::default();
    let mut notes = Vec::new();

    let start = Instant::now();
    let o = egz_constant(&ring(&[3]), 2, 3, None, &opts).map_err(|e| e.to_string())?;
    if exact(&o) != Some(6) {
        return Err(format!("E(3,Z_3,2) = {:?} {:?}", o.kind, o.value));
    }
    notes.push(within("E(3,Z_3,2)=6", start.elapsed(), Duration::from_secs(1))?);

    let z2 = ring(&[2]);
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 1..=12u64 {
        let want_excess = 1u64 << nu_p(2, m).unwrap();
        for t in m..=40 {
            if big_valuation(2, &big_binomial(t, m)) == 0 {
                continue;
            }
            let o = egz_constant(&z2, m, t, None, &opts).map_err(|e| e.to_string())?;
            if exact(&o) != Some(t + want_excess) {
                failures.push(format!("E({t},Z_2,{m}) = {:?} {:?}", o.kind, o.value));
            }
        }
    }
    fail_if(failures, String::new())?;
    notes.push(within("Z_2 grid t≤40, m≤12", start.elapsed(), Duration::from_secs(5))?);

    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 1..=16u64 {
        let o = davenport_m(&z2, m, None, &opts).map_err(|e| e.to_string())?;
        let want = m + (1u64 << nu_p(2, m).unwrap());
        if exact(&o) != Some(want) {
            failures.push(format!("D_{m}(Z_2) = {:?}", o.value));
        }
    }
    fail_if(failures, String::new())?;
    notes.push(within("D_m(Z_2), m≤16", start.elapsed(), Duration::from_secs(1))?);
    Ok(notes.join("; "))
}

fn criterion_2() -> Outcome {
    let opts = SearchOptions::default();
    // (moduli, m, t, expected); t = None means D_m
    let cases: [(&[u64], u64, Option<u64>, u64); 8] = [
        (&[9], 2, Some(9), 17),
        (&[6], 6, Some(10), 19),
        (&[8], 2, Some(16), 30),
        (&[5], 5, Some(25), 45),
        (&[3], 3, Some(9), 15),
        (&[2, 2, 2], 2, Some(8), 14),
        (&[9], 2, None, 9),
        (&[3], 2, None, 5),
    ];
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (moduli, m, t, want) in cases {
        let r = ring(moduli);
        let start = Instant::now();
        let o = match t {
            Some(t) => egz_constant(&r, m, t, None, &opts),
            None => davenport_m(&r, m, None, &opts),
        }
        .map_err(|e| e.to_string())?;
        let label = match t {
            Some(t) => format!("E({t},{r},{m})"),
            None => format!("D_{m}({r})"),
        };
        if exact(&o) == Some(want) {
            notes.push(format!("{label}={want} {:.2?}", start.elapsed()));
        } else {
            failures.push(format!("{label} = {:?} {:?}, want {want}", o.kind, o.value));
        }
    }
    fail_if(failures, notes.join(", "))
}

fn criterion_3() -> Outcome {
    let r = ring(&[10]);
    let start = Instant::now();
    let o = egz_constant(&r, 2, 8, None, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if o.kind != OutcomeKind::Infinite {
        return Err(format!("E(8,Z_10,2) reported {:?}", o.kind));
    }
    let ones = MultisetSeq::from_counts(&r, &[(1, 8)]).unwrap();
    if o.witness != ones {
        return Err(format!("witness {} is not 1^8", o.witness));
    }
    within("Infinite with witness 1^8", elapsed, Duration::from_millis(1))
}

fn criterion_4() -> Outcome {
    let pairs = exact_pair_grid(&SearchOptions::default()).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    for p in &pairs {
        let found = [
            check_egz_vs_davenport(p).map_err(|e| e.to_string())?,
            check_general_upper(p),
            check_low_lower(p).map_err(|e| e.to_string())?,
        ];
        failures.extend(found.into_iter().flatten());
    }
    fail_if(failures, format!("{} exact pairs, zero violations", pairs.len()))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for k in 2..=6u64 {
        let r = ring(&[k]);
        for len in 0..=8 {
            for mult in compositions(k as usize, len) {
                let ms = MultisetSeq::new(&r, mult).unwrap();
                let seq = ms.to_sequence();
                for m in 1..=4u32 {
                    checked += 1;
                    let a = e_m_seq(&r, &seq, m).unwrap();
                    let b = e_m_multiset(&r, &ms, m).unwrap();
                    let c = naive_e_m(&r, &seq, m as usize);
                    if a != b || a.residues() != c.as_slice() {
                        failures.push(format!("{r} {ms} m={m}"));
                    }
                }
            }
        }
    }

    let frontier = SearchOptions::sequential();
    let direct = SearchOptions {
        strategy: Strategy::Direct,
        ..SearchOptions::sequential()
    };
    let mut searches = 0usize;
    for moduli in [&[2u64][..], &[3], &[4], &[2, 2]] {
        let r = ring(moduli);
        for m in 1..=3u64 {
            let mut kinds = vec![ConstantKind::Davenport];
            kinds.extend((m..=m + 2).map(|t| ConstantKind::Egz { t }));
            for kind in kinds {
                let cap = 7;
                let a = max_counterexample_length(kind, &r, m, cap, &frontier).map_err(|e| e.to_string())?;
                let b = max_counterexample_length(kind, &r, m, cap, &direct).map_err(|e| e.to_string())?;
                let t = match kind {
                    ConstantKind::Egz { t } => Some(t),
                    ConstantKind::Davenport => None,
                };
                let naive = naive_max_counterexample(&r, m as usize, t, cap as u32) as u64;
                searches += 1;
                if a.length != b.length || a.closed != b.closed || a.witness != b.witness || a.length != naive {
                    failures.push(format!("{r} m={m} {kind:?}: frontier {} direct {} naive {naive}", a.length, b.length));
                }
            }
        }
    }
    fail_if(
        failures,
        format!("{checked} e_m evaluations, {searches} searches agree with the oracles"),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for m in 1..=8u32 {
        match newton_girard(m) {
            Ok(e) if e == newton_girard_recursive(m) => {}
            other => failures.push(format!("m={m}: {other:?}")),
        }
    }
    for m in 1..=12u32 {
        let want = if m % 2 == 0 { (m + 2) / 2 } else { m.div_ceil(2) } as usize;
        let (got, _) = dominating_sets(m).map_err(|e| e.to_string())?;
        if got != want {
            failures.push(format!("t({m}) = {got}, want {want}"));
        }
    }
    fail_if(failures, "expansions m≤8 and t(m), m≤12".into())
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for p in [2u64, 3, 5] {
        for n in 0..=300u64 {
            for m in 0..=n {
                pairs += 1;
                let want = big_valuation(p, &big_binomial(n, m));
                if kummer_valuation(p, n, m) != Ok(want) {
                    failures.push(format!("ν_{p}(C({n},{m}))"));
                }
            }
        }
        for s in 1..=6u32 {
            for u in 0..=(6 - s) {
                if l_const(p.pow(s), p.pow(u)) != Ok(p.pow(s + u)) {
                    failures.push(format!("L({}, {})", p.pow(s), p.pow(u)));
                }
            }
        }
    }
    fail_if(failures, format!("{pairs} valuations and L(p^s,p^u)"))
}

/// A random system over `p` with `Σ(p^v − 1)·deg < n`.
fn random_brink(rng: &mut ChaCha8Rng) -> BrinkInstance {
    loop {
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let n = rng.random_range(2..=16u32);
        let mut system = Vec::new();
        for _ in 0..rng.random_range(1..=3) {
            let v = if p == 2 { rng.random_range(1..=2) } else { 1 };
            let deg = rng.random_range(1..=3u32).min(n);
            let poly = (0..rng.random_range(1..=6))
                .map(|_| Monomial {
                    coeff: rng.random_range(-9..=9),
                    vars: (0..rng.random_range(1..=deg)).map(|_| rng.random_range(0..n)).collect(),
                })
                .collect();
            system.push(Congruence { poly, v });
        }
        let inst = BrinkInstance { n, p, system };
        if inst.degree_condition() {
            return inst;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for i in 0..200 {
        let inst = random_brink(&mut rng);
        let rep = brink_boolean_check(&inst, false).map_err(|e| e.to_string())?;
        if rep.solutions == 1 {
            failures.push(format!("instance {i}: {inst:?}"));
        }
    }
    let egz = degree_two_egz_instance(2, &[1; 6], 1, 2);
    let rep = brink_boolean_check(&egz, false).map_err(|e| e.to_string())?;
    if rep.solutions < 2 {
        failures.push(format!("E(4,2,2) instance has {} solutions", rep.solutions));
    }
    fail_if(failures, format!("200 random systems; E(4,2,2) instance has {} solutions", rep.solutions))
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let r = bound_calculator(&BoundQuery::HalfDegreePGroup {
        p: 7,
        alphas: vec![1, 1],
        m: 2,
    });
    if r.value != Some(73) || !r.hypotheses_hold || r.warning.is_none() {
        failures.push(format!("E(49,Z_7²,2) bound: {r:?}"));
    }
    let r = bound_calculator(&BoundQuery::PGroupExact {
        p: 3,
        alphas: vec![2, 3],
        s: 1,
    });
    if r.value != Some(243 + 3 * (8 + 26)) || !r.hypotheses_hold {
        failures.push(format!("p-group exact at h=5: {r:?}"));
    }
    let r = bound_calculator(&BoundQuery::DegreeThreeUpper { k: 6 });
    if r.hypotheses_hold {
        failures.push("gcd(6,3) ≠ 1 accepted".into());
    }
    let r = bound_calculator(&BoundQuery::PGroupExact {
        p: 2,
        alphas: vec![1, 1, 1, 1],
        s: 2,
    });
    if r.hypotheses_hold {
        failures.push("p^h ≤ p^s·Σ accepted".into());
    }
    fail_if(failures, "bounds reported with checked hypotheses".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact small values", criterion_1),
        ("slow exact values", criterion_2),
        ("infinite detection", criterion_3),
        ("inequality sweeps", criterion_4),
        ("oracle equivalence", criterion_5),
        ("symmetric functions", criterion_6),
        ("Kummer and L", criterion_7),
        ("boolean zero counting", criterion_8),
        ("bound calculator", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
