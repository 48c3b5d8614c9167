//! `selmer`: batch front end for the curve, local-reduction, Hessian-family
//! and isogeny checkers.
//!
//! Exit codes: 0 success or certified, 1 verification failure, 2 usage or
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use selmer_core::companions::{
    search_q, table1_class, verify_pair, verify_table1, CompanionReport, CompanionVerdict,
    IsogenyReport, IsogenyVerdict, SearchConfig, SearchRow, Table1Record,
};
use selmer_core::exactmath::int;
use selmer_core::localred::{global_reduction, tate_algorithm};
use selmer_core::modpoly::{find_exceptional_t, ModPolyStore, DEFAULT_WINDOW, EVEN_ISOGENY_LEVELS};
use selmer_core::{ExactRat, LocalData, Prime, WeierstrassCurve};

#[derive(Parser)]
#[command(
    name = "selmer",
    version,
    about = "Exact checks for Hessian families of elliptic curves"
)]
struct Cli {
    /// Directory holding the modular polynomial files and manifest.
    #[arg(long, global = true, env = "SELMER_DATA_DIR", default_value = "data")]
    data_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// b- and c-invariants, discriminant, j and a global minimal model.
    Invariants(CurveArgs),
    /// Tate's algorithm at one prime or at every bad prime.
    Localdata {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, conflicts_with = "all_bad", required_unless_present = "all_bad")]
        prime: Option<u64>,
        #[arg(long)]
        all_bad: bool,
    },
    /// Companion and non-isogeny certificates for (E_{q,t}, H_{q,t}).
    Verify(VerifyArgs),
    /// Integer t in a window where E_{q,t} and H_{q,t} are linked by a
    /// cyclic isogeny of even degree at most 18.
    IsogenyScan {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = DEFAULT_WINDOW, value_parser = clap::value_parser!(u64).range(1..))]
        window: u64,
    },
    /// Sampled companion evidence for every class of t modulo M (heuristic).
    Search {
        #[arg(long, allow_negative_numbers = true)]
        q_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_max: i64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        modulus: u32,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        max_abs_t: u64,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// a1 a2 a3 a4 a6 as integers or fractions.
    #[arg(num_args = 5, required = true, allow_negative_numbers = true, value_names = ["A1", "A2", "A3", "A4", "A6"])]
    coeffs: Vec<ExactRat>,
}

impl CurveArgs {
    fn curve(&self) -> WeierstrassCurve {
        let [a1, a2, a3, a4, a6]: [ExactRat; 5] = self
            .coeffs
            .clone()
            .try_into()
            .expect("clap enforces five values");
        WeierstrassCurve::new(a1, a2, a3, a4, a6)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    q: i64,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "table1",
        conflicts_with = "table1"
    )]
    t: Option<i64>,
    /// Every t in the listed class of q within [t-min, t-max].
    #[arg(long, requires_all = ["t_min", "t_max"])]
    table1: bool,
    #[arg(long, allow_negative_numbers = true)]
    t_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<i64>,
    /// Allow an unlisted q (all t in the range are checked).
    #[arg(long)]
    force: bool,
    /// Skip the modular polynomial check.
    #[arg(long)]
    no_isogeny: bool,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn failed(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Invariants(c) => cmd_invariants(cli, &c.curve()),
        Command::Localdata {
            curve,
            prime,
            all_bad,
        } => cmd_localdata(cli, &curve.curve(), *prime, *all_bad),
        Command::Verify(v) => cmd_verify(cli, v),
        Command::IsogenyScan { q, window } => cmd_isogeny_scan(cli, *q, *window),
        Command::Search {
            q_min,
            q_max,
            modulus,
            samples,
            max_abs_t,
        } => cmd_search(
            cli,
            *q_min,
            *q_max,
            SearchConfig {
                modulus: *modulus,
                samples_per_class: *samples,
                max_abs_t: *max_abs_t,
            },
        ),
    }
}

fn print_json(v: &Value) {
    // serde_json maps are ordered by key, so output is canonical.
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn open_store(cli: &Cli) -> Result<ModPolyStore, Failure> {
    ModPolyStore::open(&cli.data_dir, &EVEN_ISOGENY_LEVELS).map_err(|e| {
        usage(format!(
            "modular polynomial data in {}: {e}",
            cli.data_dir.display()
        ))
    })
}

fn cmd_invariants(cli: &Cli, e: &WeierstrassCurve) -> Outcome {
    let inv = e.invariants();
    let singular = e.is_singular();
    let minimal = if singular {
        None
    } else {
        Some(e.minimal_model().map_err(|err| failed(err.to_string()))?.0)
    };
    match cli.format {
        Format::Json => print_json(&json!({
            "curve": to_value(e),
            "invariants": to_value(&inv),
            "singular": singular,
            "minimal_model": minimal.as_ref().map(to_value),
        })),
        Format::Text => {
            println!("curve {e}");
            for (name, v) in [
                ("b2", &inv.b2),
                ("b4", &inv.b4),
                ("b6", &inv.b6),
                ("b8", &inv.b8),
                ("c4", &inv.c4),
                ("c6", &inv.c6),
                ("disc", &inv.disc),
            ] {
                println!("{name} = {v}");
            }
            match (&inv.j, &minimal) {
                (Some(j), Some(m)) => {
                    println!("j = {j}");
                    println!("minimal model {m}");
                }
                _ => println!("singular (disc = 0): j and minimal model undefined"),
            }
        }
    }
    Ok(!singular)
}

fn local_line(ld: &LocalData) -> String {
    format!(
        "{} {} f={} c={} m={} vdisc={} kind={} pot_mult={}",
        ld.p, ld.kodaira, ld.f, ld.tamagawa, ld.m, ld.vdisc, ld.kind, ld.pot_mult
    )
}

fn cmd_localdata(cli: &Cli, e: &WeierstrassCurve, prime: Option<u64>, all_bad: bool) -> Outcome {
    if e.is_singular() {
        return Err(failed("curve is singular (disc = 0)"));
    }
    let (records, complete) = if all_bad {
        let g = global_reduction(e).map_err(|err| failed(err.to_string()))?;
        let complete = g.is_complete();
        (g.local, complete)
    } else {
        let p = prime.expect("clap requires --prime or --all-bad");
        let p = Prime::small(p).map_err(|err| usage(err.to_string()))?;
        (
            vec![tate_algorithm(e, &p).map_err(|err| failed(err.to_string()))?],
            true,
        )
    };
    match cli.format {
        Format::Json => print_json(&json!({
            "curve": to_value(e),
            "local": to_value(&records),
            "complete": complete,
        })),
        Format::Text => {
            for ld in &records {
                println!("{}", local_line(ld));
            }
            if !complete {
                println!("warning: discriminant not fully factored; bad primes may be missing");
            }
        }
    }
    Ok(complete)
}

fn companion_word(r: &CompanionReport) -> &'static str {
    match r.verdict {
        CompanionVerdict::CompanionsCertified => "companions-certified",
        CompanionVerdict::NotCertified => "not-certified",
        CompanionVerdict::Degenerate => "degenerate",
    }
}

fn isogeny_word(r: &IsogenyReport) -> String {
    match (r.verdict, r.witness_level) {
        (IsogenyVerdict::NotIsogenousCertified, _) => "not-isogenous-certified".into(),
        (IsogenyVerdict::IsogenousWitness, Some(n)) => format!("isogenous (cyclic degree {n})"),
        (IsogenyVerdict::IsogenousWitness, None) => "isogenous".into(),
        (IsogenyVerdict::Inconclusive, _) => "isogeny-inconclusive".into(),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn print_record(r: &Table1Record) {
    let c = &r.companion;
    let mut head = format!("q={} t={}: {}", r.q, r.t, companion_word(c));
    if let Some(i) = &r.isogeny {
        head += &format!(", {}", isogeny_word(i));
    }
    if r.exceptional {
        head += " [exceptional pair]";
    }
    println!("{head}");
    if let Some(note) = &c.note {
        println!("  note: {note}");
        return;
    }
    let failures = c.failures();
    if !failures.is_empty() {
        println!("  failed: {}", failures.join(", "));
    }
    println!(
        "  bad primes: E {{{}}} H {{{}}}",
        join(&c.bad_primes_e),
        join(&c.bad_primes_h)
    );
    println!(
        "  potentially multiplicative: E {{{}}} H {{{}}}",
        join(&c.pot_mult_primes_e),
        join(&c.pot_mult_primes_h)
    );
    for k in &c.kodaira {
        println!("  kodaira at {}: E {} H {}", k.p, k.kodaira_e, k.kodaira_h);
    }
    if let (Some(ne), Some(nh)) = (&c.conductor_e, &c.conductor_h) {
        println!("  conductor: E {ne} H {nh}");
    }
    if let Some(i) = &r.isogeny {
        let sq = i
            .disc_ratio_squarefree_part
            .as_ref()
            .map_or("?".to_string(), |d| d.to_string());
        println!(
            "  isogeny: cm_excluded={} odd_excluded={} (disc ratio is {sq} mod squares)",
            i.cm_excluded, i.odd_excluded
        );
    }
}

fn cmd_verify(cli: &Cli, v: &VerifyArgs) -> Outcome {
    let q = int(v.q);
    let in_table = table1_class(&q).is_some();
    if !in_table && !v.force {
        return Err(usage(format!(
            "q = {} is not a listed family value; pass --force to check anyway, or use `search`",
            v.q
        )));
    }
    let store = if v.no_isogeny {
        None
    } else {
        Some(open_store(cli)?)
    };
    let err = |e: selmer_core::companions::CompanionError| failed(e.to_string());
    let records = if v.table1 {
        let (a, b) = (v.t_min.expect("required"), v.t_max.expect("required"));
        if a > b {
            return Err(usage("--t-min exceeds --t-max"));
        }
        if in_table {
            verify_table1(&q, a, b, store.as_ref()).map_err(err)?
        } else {
            (a..=b)
                .map(|t| verify_pair(&q, &int(t), store.as_ref()))
                .collect::<Result<_, _>>()
                .map_err(err)?
        }
    } else {
        let t = v.t.expect("clap requires --t without --table1");
        vec![verify_pair(&q, &int(t), store.as_ref()).map_err(err)?]
    };
    let ok = records
        .iter()
        .filter(|r| !r.exceptional)
        .all(Table1Record::fully_certified);
    match cli.format {
        Format::Json => print_json(&json!({
            "records": to_value(&records),
            "all_certified": ok,
        })),
        Format::Text => {
            for r in &records {
                print_record(r);
            }
            let flagged: Vec<String> = records
                .iter()
                .filter(|r| r.exceptional)
                .map(|r| r.t.to_string())
                .collect();
            if !flagged.is_empty() {
                println!(
                    "exceptional t (excluded from the verdict): {}",
                    flagged.join(", ")
                );
            }
            println!(
                "{} pairs: {}",
                records.len(),
                if ok {
                    "all certified"
                } else {
                    "NOT all certified"
                }
            );
        }
    }
    Ok(ok)
}

fn cmd_isogeny_scan(cli: &Cli, q: i64, window: u64) -> Outcome {
    if q == 0 {
        return Err(usage("q must be nonzero"));
    }
    let store = open_store(cli)?;
    let levels: Vec<_> = store.polys().cloned().collect();
    let scan = find_exceptional_t(&int(q), &levels, window).map_err(|e| failed(e.to_string()))?;
    match cli.format {
        Format::Json => print_json(&json!({
            "scan": to_value(&scan),
            "exceptional": scan.hits().iter().map(|(n, t)| json!({"level": n, "t": t.to_string()})).collect::<Vec<_>>(),
            "caveat": scan.caveat(),
        })),
        Format::Text => {
            let hits = scan.hits();
            if hits.is_empty() {
                println!("q={q}: no exceptional t");
            }
            for (n, t) in hits {
                println!("q={q} t={t}: Phi_{n} vanishes");
            }
            let singular: Vec<String> = scan.singular_t.iter().map(|t| t.to_string()).collect();
            if !singular.is_empty() {
                println!("singular t: {}", singular.join(", "));
            }
            println!("caveat: {}", scan.caveat());
        }
    }
    Ok(true)
}

fn cmd_search(cli: &Cli, q_min: i64, q_max: i64, config: SearchConfig) -> Outcome {
    let rows: Vec<SearchRow> = search_q(q_min, q_max, config).map_err(|e| usage(e.to_string()))?;
    let note = "heuristic: passing samples are evidence, not a proof for the class";
    match cli.format {
        Format::Json => print_json(&json!({
            "config": to_value(&config),
            "rows": to_value(&rows),
            "note": note,
        })),
        Format::Text => {
            println!("{note}");
            for r in &rows {
                let status = if r.all_pass { "candidate" } else { "fails" };
                let mut line = format!(
                    "q={} t={} mod {}: {} ({}/{})",
                    r.q, r.residue, r.modulus, status, r.passed, r.samples
                );
                if !r.all_pass {
                    let f = to_value(&r.failures);
                    let counts: Vec<String> = f
                        .as_object()
                        .into_iter()
                        .flatten()
                        .filter(|(_, n)| n.as_u64() != Some(0))
                        .map(|(k, n)| format!("{k}={n}"))
                        .collect();
                    line += &format!(" {}", counts.join(" "));
                }
                println!("{line}");
            }
        }
    }
    Ok(true)
}
