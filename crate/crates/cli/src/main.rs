use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use egz_core::certificate::verify_certificate;
use egz_core::numtheory::{binom_mod, binomial_big, l_const, s_members};
use egz_core::search::brink::{brink_boolean_check, BrinkInstance};
use egz_core::symfun::{dominating_sets, newton_girard};
use egz_core::theorems::bounds::{bound_calculator, BoundQuery};
use egz_core::theorems::{run_suite, Status, SuiteOptions, TierSelect};
use egz_core::{davenport_m, egz_constant, Certificate, EgzOutcome, OutcomeKind, Query, RingSpec, SearchOptions, TOOL_VERSION};

const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "egz", version = TOOL_VERSION, about = "Higher-degree Davenport and EGZ constants by exhaustive search")]
struct Cli {
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (1 = sequential).
    #[arg(long, global = true, env = "EGZ_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E(t, ring, m).
    Compute {
        #[arg(long, value_parser = parse_ring)]
        ring: RingSpec,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        cap: Option<u64>,
        /// Write a certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// D_m(ring).
    Davenport {
        #[arg(long, value_parser = parse_ring)]
        ring: RingSpec,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// L(n, m): least ℓ ≥ m+1 with n | C(ℓ, m).
    Lconst {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Members of S(k, m) up to a bound.
    Smembers {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long = "max")]
        max: u64,
    },
    /// m!·e_m in power sums, with a minimum dominating set.
    NewtonGirard {
        #[arg(long)]
        m: u32,
    },
    /// Count boolean solutions of a congruence system.
    Brink {
        #[arg(long)]
        instance: PathBuf,
        /// Stop after two solutions.
        #[arg(long)]
        early: bool,
    },
    /// Run the verification fixtures.
    CheckTheorems {
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        #[arg(long)]
        filter: Option<String>,
        /// Per-fixture time limit in seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// Re-check a certificate.
    VerifyCert {
        file: PathBuf,
        /// Repeat the exhaustive search up to the claimed value.
        #[arg(long)]
        rerun: bool,
    },
    /// Evaluate a closed-form bound, e.g. '{"theorem":"degree-three-upper","k":5}'.
    Bound {
        #[arg(long)]
        query: String,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TierArg {
    Fast,
    Slow,
    All,
}

fn parse_ring(s: &str) -> std::result::Result<RingSpec, String> {
    let moduli = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("bad modulus {p:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    RingSpec::new(&moduli).map_err(|e| e.to_string())
}

fn search_options(threads: Option<usize>) -> SearchOptions {
    SearchOptions {
        threads,
        parallel: threads != Some(1) && SearchOptions::default().parallel,
        ..SearchOptions::default()
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn outcome_code(o: &EgzOutcome) -> u8 {
    match o.kind {
        OutcomeKind::AtLeast => EXIT_INCONCLUSIVE,
        OutcomeKind::Exact | OutcomeKind::Infinite => 0,
    }
}

fn report_outcome(cli_json: bool, query: Query, o: &EgzOutcome, cert: Option<&PathBuf>) -> Result<u8> {
    let certificate = Certificate::new(query.clone(), o);
    if let Some(path) = cert {
        fs::write(path, certificate.to_json()? + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if cli_json {
        print_json(&certificate)?;
        return Ok(outcome_code(o));
    }
    match (o.kind, o.value) {
        (OutcomeKind::Infinite, _) => {
            println!("Infinite");
            let t = query.t.unwrap_or(0);
            let k = query.ring.exponent();
            let residue = binom_mod(t, query.m, k)?;
            let exact = binomial_big(t, query.m);
            println!(
                "obstruction: C({t},{}) = {exact} ≡ {residue} (mod {k}), not 0; every length-{t} subsequence of 1^N has e_{} = C({t},{})·1",
                query.m, query.m, query.m
            );
        }
        (kind, Some(v)) => println!("{kind:?} {v}"),
        (kind, None) => println!("{kind:?}"),
    }
    println!("witness: {}", o.witness);
    println!("method: {:?}", o.method);
    if let (Some(cap), Some(src)) = (o.cap_used, &o.cap_source) {
        println!("cap: {cap} ({src})");
    }
    Ok(outcome_code(o))
}

fn run(cli: Cli) -> Result<u8> {
    let opts = search_options(cli.threads);
    match cli.command {
        Command::Compute { ring, m, t, cap, cert } => {
            let o = egz_constant(&ring, m, t, cap, &opts)?;
            report_outcome(cli.json, Query::egz(&ring, m, t), &o, cert.as_ref())
        }
        Command::Davenport { ring, m, cap, cert } => {
            let o = davenport_m(&ring, m, cap, &opts)?;
            report_outcome(cli.json, Query::davenport(&ring, m), &o, cert.as_ref())
        }
        Command::Lconst { n, m } => {
            let l = l_const(n, m)?;
            if cli.json {
                print_json(&json!({ "n": n, "m": m, "L": l }))?;
            } else {
                println!("{l}");
            }
            Ok(0)
        }
        Command::Smembers { k, m, max } => {
            if k < 2 || m < 1 {
                bail!("need k ≥ 2 and m ≥ 1");
            }
            let members = s_members(k, m, max);
            if cli.json {
                print_json(&json!({ "k": k, "m": m, "max": max, "members": members }))?;
            } else {
                for t in members {
                    println!("{t}");
                }
            }
            Ok(0)
        }
        Command::NewtonGirard { m } => {
            let expansion = newton_girard(m)?;
            let (size, set) = dominating_sets(m)?;
            if cli.json {
                print_json(&json!({ "expansion": expansion, "dominating_set": set }))?;
            } else {
                println!("{expansion}");
                let names: Vec<String> = set.indices.iter().map(|i| format!("p{i}")).collect();
                println!("t({m}) = {size}: {{{}}}", names.join(", "));
            }
            Ok(0)
        }
        Command::Brink { instance, early } => {
            let text = fs::read_to_string(&instance).with_context(|| format!("reading {}", instance.display()))?;
            let inst: BrinkInstance = serde_json::from_str(&text).context("parsing instance")?;
            let rep = brink_boolean_check(&inst, early)?;
            if cli.json {
                print_json(&json!({
                    "solutions": rep.solutions,
                    "complete": rep.complete,
                    "degree_sum": inst.degree_sum(),
                    "degree_condition": rep.degree_condition,
                }))?;
            } else {
                let bound = if rep.complete { "" } else { "≥ " };
                println!("solutions: {bound}{}", rep.solutions);
                println!(
                    "degree condition: {} ({} < {})",
                    if rep.degree_condition { "holds" } else { "fails" },
                    inst.degree_sum(),
                    inst.n
                );
            }
            Ok(0)
        }
        Command::CheckTheorems { tier, filter, timeout } => {
            let tier = match tier {
                TierArg::Fast => TierSelect::Fast,
                TierArg::Slow => TierSelect::Slow,
                TierArg::All => TierSelect::All,
            };
            let suite = SuiteOptions {
                search: opts,
                fixture_timeout: timeout.map(Duration::from_secs),
            };
            let report = run_suite(tier, filter.as_deref(), &suite);
            if cli.json {
                print_json(&report)?;
            } else {
                for r in &report.results {
                    println!("{:<7} {:<24} {}", r.status.to_string(), r.id, r.statement);
                    if r.status != Status::Pass {
                        println!("        expected: {}", r.expected);
                    }
                    println!("        computed: {}", r.computed);
                }
            }
            Ok(if !report.passed() {
                1
            } else if report.timed_out() {
                EXIT_INCONCLUSIVE
            } else {
                0
            })
        }
        Command::VerifyCert { file, rerun } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let cert = Certificate::from_json(&text)?;
            let v = verify_certificate(&cert, rerun, &opts)?;
            if cli.json {
                print_json(&json!({ "ok": v.ok(), "checks": v.checks, "rerun_matches": v.rerun_matches }))?;
            } else {
                for (what, ok) in &v.checks {
                    println!("{} {what}", if *ok { "ok  " } else { "FAIL" });
                }
                if let Some(ok) = v.rerun_matches {
                    println!("{} search re-run", if ok { "ok  " } else { "FAIL" });
                }
                println!("{}", if v.ok() { "certificate verified" } else { "certificate REJECTED" });
            }
            Ok(if v.ok() { 0 } else { 1 })
        }
        Command::Bound { query } => {
            let q: BoundQuery = serde_json::from_str(&query).context("parsing bound query")?;
            let rep = bound_calculator(&q);
            if cli.json {
                print_json(&rep)?;
            } else {
                let value = rep.value.map_or_else(|| "undefined".to_string(), |v| v.to_string());
                println!("{:?} {value}", rep.kind);
                for h in &rep.hypotheses {
                    println!("{} {}", if h.holds { "ok  " } else { "FAIL" }, h.statement);
                }
                if let Some(w) = &rep.warning {
                    println!("warning: {w}");
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
