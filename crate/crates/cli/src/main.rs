//! `sympshare` command-line front end. Every command prints a JSON report
//! `{command, parameters, results, version, seed}` on stdout.
//!
//! Exit codes: 0 ok, 1 input error, 2 property violated (report carries a
//! witness), 3 enumeration cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sympshare::access::{access_report_with, strong_security_check_with};
use sympshare::gv::{gv_finite, gv_search_with, GVQuery};
use sympshare::io::{scheme_from_json, scheme_to_json};
use sympshare::ms::ms_compare;
use sympshare::qsim::Oracle;
use sympshare::rs::{build_insecure, build_strong_rs, closed_form_info, closed_form_partial, puncture, RsParams};
use sympshare::{Config, Error, IndexSet, Scheme, SympSpace};

#[derive(Parser)]
#[command(
    name = "sympshare",
    version,
    about = "Quantum secret sharing from nested symplectic codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Access structure, bounds and strong security of a scheme file.
    Analyze {
        file: PathBuf,
        /// Classify every subset of shares.
        #[arg(long, conflicts_with = "subset")]
        all_subsets: bool,
        /// Classify one set, e.g. `1,2,3` (shares are numbered from 1).
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        /// Distance and threshold bounds.
        #[arg(long)]
        bounds: bool,
        /// Check strong security; exit 2 with a witness if it fails.
        #[arg(long)]
        strong: bool,
    },
    /// Finite existence condition, optionally with a seeded random search.
    Gv {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        dt: usize,
        #[arg(long)]
        dr: usize,
        /// Number of random trials.
        #[arg(long)]
        search: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reed–Solomon constructions.
    #[command(subcommand)]
    Rs(RsCommand),
    /// McEliece–Sarwate baseline.
    #[command(subcommand)]
    Ms(MsCommand),
    /// Check the linear-algebra predictions against a dense qudit simulation.
    Qverify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        subset: Option<Vec<usize>>,
        #[arg(long)]
        all: bool,
        /// Print the JSON report instead of one line per set.
        #[arg(long)]
        json: bool,
        /// Basis state the stabilizer state is grown from.
        #[arg(long, default_value_t = 0)]
        seed: usize,
    },
}

#[derive(Subcommand)]
enum RsCommand {
    /// Strongly secure scheme with n = q.
    Build {
        #[command(flatten)]
        params: RsArgs,
        /// Keep only the first N shares.
        #[arg(long)]
        punct: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The monomial scheme over even q that fails strong security.
    Insecure {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a scheme file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        strong: bool,
        /// Compare all leakage values with the closed forms (n = q only).
        #[arg(long)]
        closed_forms: bool,
    },
}

#[derive(Subcommand)]
enum MsCommand {
    Compare {
        #[command(flatten)]
        params: RsArgs,
    },
}

#[derive(Args)]
struct RsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationTooLarge { .. } | Error::TooManySubsets(_) | Error::TooLarge(_) => {
                Failure::Cap(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Results plus whether a checked property was violated.
struct Outcome {
    parameters: Value,
    results: Value,
    seed: Option<u64>,
    violated: bool,
    /// Replaces the JSON report on stdout when set.
    text: Option<String>,
}

impl Outcome {
    fn ok(parameters: Value, results: Value) -> Self {
        Outcome {
            parameters,
            results,
            seed: None,
            violated: false,
            text: None,
        }
    }
}

fn read_scheme(path: &Path) -> Result<Scheme, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(scheme_from_json(&text)?)
}

fn write_or_embed(scheme: &Scheme, out: Option<&Path>) -> Result<Value, Failure> {
    let text = scheme_to_json(scheme);
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok(json!(p.display().to_string()))
        }
        None => Ok(serde_json::from_str(&text).expect("own output parses")),
    }
}

fn rows(c: &SympSpace) -> Vec<Vec<u32>> {
    c.rows().map(|r| r.to_vec()).collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn analyze(
    file: &Path,
    all_subsets: bool,
    subset: Option<&[usize]>,
    bounds: bool,
    strong: bool,
    cfg: &Config,
) -> Result<Outcome, Failure> {
    let scheme = read_scheme(file)?;
    let mut results = serde_json::Map::new();
    if all_subsets || bounds || (subset.is_none() && !strong) {
        results.insert(
            "access".into(),
            to_json(&access_report_with(&scheme, all_subsets, cfg)?),
        );
    }
    if let Some(labels) = subset {
        let a = IndexSet::from_labels(labels, scheme.n())?;
        let info = scheme.info_amount(a)?;
        results.insert(
            "subset".into(),
            json!({"set": a.to_labels(), "ell": info.ell, "bits": info.bits, "class": to_json(&scheme.classify(a)?)}),
        );
    }
    let mut violated = false;
    if strong {
        let st = strong_security_check_with(&scheme, cfg)?;
        violated = !st.passed;
        results.insert("strong".into(), to_json(&st));
    }
    let parameters = json!({"file": file.display().to_string(), "n": scheme.n(), "k": scheme.k(), "s": scheme.s(), "q": scheme.field().q()});
    Ok(Outcome {
        violated,
        ..Outcome::ok(parameters, Value::Object(results))
    })
}

fn gv(query: GVQuery, search: Option<u64>, seed: u64, cfg: &Config) -> Result<Outcome, Failure> {
    let finite = gv_finite(&query)?;
    let mut results = json!({"lhs": finite.lhs_string(), "feasible": finite.feasible});
    let mut used_seed = None;
    if let Some(trials) = search {
        used_seed = Some(seed);
        let witness = gv_search_with(&query, trials, seed, cfg)?
            .map(|w| json!({"trial": w.trial, "d_t": w.d_t, "d_r": w.d_r, "c_s": rows(&w.c_s), "c_r": rows(&w.c_r)}));
        results["trials"] = json!(trials);
        results["witness"] = witness.unwrap_or(Value::Null);
    }
    Ok(Outcome {
        seed: used_seed,
        ..Outcome::ok(to_json(&query), results)
    })
}

/// Every info and partial-leakage value of an `n = q` strong RS scheme
/// against the closed forms; returns the number checked and the mismatches.
fn closed_form_mismatches(scheme: &Scheme) -> Result<(usize, Vec<Value>), Failure> {
    let (n, k, s) = (scheme.n(), scheme.k(), scheme.s());
    if n != scheme.field().q() as usize {
        return Err(Failure::Input(format!("closed forms need n = q, got n = {n}")));
    }
    let params = RsParams::new(scheme.field().q() as u64, k, s)?;
    let half = k / 2;
    let mut checked = 0;
    let mut bad = Vec::new();
    let all_b: Vec<IndexSet> = IndexSet::all_subsets(k);
    for a in IndexSet::all_subsets(n) {
        let (got, want) = (scheme.info_dim(a)?, closed_form_info(&params, a.len())?);
        checked += 1;
        if got != want {
            bad.push(json!({"set": a.to_labels(), "secret": null, "got": got, "expected": want}));
        }
        for &b in &all_b {
            let b1 = (0..half).filter(|&i| b.contains(i)).count();
            let b2 = b.len() - b1;
            let (got, want) = (
                scheme.partial_leakage(a, b)?,
                closed_form_partial(&params, a.len(), b1, b2)?,
            );
            checked += 1;
            if got != want {
                bad.push(json!({"set": a.to_labels(), "secret": b.to_labels(), "got": got, "expected": want}));
            }
        }
    }
    Ok((checked, bad))
}

fn rs(cmd: RsCommand, cfg: &Config) -> Result<Outcome, Failure> {
    match cmd {
        RsCommand::Build {
            params: RsArgs { q, k, s },
            punct,
            out,
        } => {
            let p = RsParams::new(q, k, s)?;
            let full = build_strong_rs(&p)?;
            let parameters = json!({"q": q, "k": k, "s": s, "punct": punct});
            let (scheme, extra) = match punct {
                None => (full, json!({})),
                Some(m) => {
                    if m == 0 || m > full.n() {
                        return Err(Failure::Input(format!("--punct {m} outside 1..={}", full.n())));
                    }
                    let kept = IndexSet::from_indices(&(0..m).collect::<Vec<_>>(), full.n())?;
                    let pun = puncture(&full, kept)?;
                    (
                        pun.scheme,
                        json!({"kept": kept.to_labels(), "reps_inherited": pun.reps_inherited}),
                    )
                }
            };
            let results = json!({
                "n": scheme.n(), "k": scheme.k(), "s": scheme.s(),
                "puncture": extra,
                "scheme": write_or_embed(&scheme, out.as_deref())?,
            });
            Ok(Outcome::ok(parameters, results))
        }
        RsCommand::Insecure { q, out } => {
            let scheme = build_insecure(q)?;
            let results = json!({"n": scheme.n(), "k": scheme.k(), "s": scheme.s(), "scheme": write_or_embed(&scheme, out.as_deref())?});
            Ok(Outcome::ok(json!({"q": q}), results))
        }
        RsCommand::Verify {
            file,
            strong,
            closed_forms,
        } => {
            let scheme = read_scheme(&file)?;
            let mut results = json!({"n": scheme.n(), "k": scheme.k(), "s": scheme.s(), "q": scheme.field().q()});
            let mut violated = false;
            if strong {
                let st = strong_security_check_with(&scheme, cfg)?;
                violated |= !st.passed;
                results["strong"] = to_json(&st);
            }
            if closed_forms {
                let (checked, bad) = closed_form_mismatches(&scheme)?;
                violated |= !bad.is_empty();
                results["closed_forms"] = json!({"checked": checked, "mismatches": bad.len(), "witnesses": bad});
            }
            let parameters =
                json!({"file": file.display().to_string(), "strong": strong, "closed_forms": closed_forms});
            Ok(Outcome {
                violated,
                ..Outcome::ok(parameters, results)
            })
        }
    }
}

fn qverify(
    file: &Path,
    subset: Option<&[usize]>,
    seed: usize,
    as_json: bool,
    cfg: &Config,
) -> Result<Outcome, Failure> {
    let scheme = read_scheme(file)?;
    let sets = match subset {
        Some(labels) => vec![IndexSet::from_labels(labels, scheme.n())?],
        None => IndexSet::all_subsets(scheme.n()),
    };
    let oracle = Oracle::with_state(&scheme, seed, *cfg)?;
    let checks = sets.iter().map(|&a| oracle.verify(a)).collect::<Result<Vec<_>, _>>()?;
    let all_match = checks.iter().all(|c| c.matches);
    let text = (!as_json).then(|| {
        let mut lines: Vec<String> = checks
            .iter()
            .map(|c| {
                format!(
                    "{:?} ell={} quantum={:?} distinct={}/{} {}",
                    c.set,
                    c.ell,
                    c.class_quantum,
                    c.distinct,
                    c.expected_distinct,
                    if c.matches { "ok" } else { "MISMATCH" }
                )
            })
            .collect();
        lines.push(format!(
            "{} of {} sets match",
            checks.iter().filter(|c| c.matches).count(),
            checks.len()
        ));
        lines.join("\n")
    });
    let parameters = json!({"file": file.display().to_string(), "state_seed": seed});
    let results = json!({"all_match": all_match, "checks": to_json(&checks)});
    Ok(Outcome {
        violated: !all_match,
        seed: Some(seed as u64),
        text,
        ..Outcome::ok(parameters, results)
    })
}

fn run(cli: Cli, cfg: &Config) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Analyze {
            file,
            all_subsets,
            subset,
            bounds,
            strong,
        } => analyze(&file, all_subsets, subset.as_deref(), bounds, strong, cfg),
        Command::Gv {
            q,
            n,
            k,
            s,
            dt,
            dr,
            search,
            seed,
        } => gv(GVQuery { q, n, k, s, dt, dr }, search, seed, cfg),
        Command::Rs(cmd) => rs(cmd, cfg),
        Command::Ms(MsCommand::Compare {
            params: RsArgs { q, k, s },
        }) => Ok(Outcome::ok(
            json!({"q": q, "k": k, "s": s}),
            to_json(&ms_compare(q, k, s)?),
        )),
        Command::Qverify {
            file,
            subset,
            all: _,
            json,
            seed,
        } => qverify(&file, subset.as_deref(), seed, json, cfg),
    }
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cfg = Config::from_env();
    match run(cli, &cfg) {
        Ok(out) => {
            match out.text {
                Some(t) => println!("{t}"),
                None => {
                    let report = json!({
                        "command": command,
                        "parameters": out.parameters,
                        "results": out.results,
                        "version": env!("CARGO_PKG_VERSION"),
                        "seed": out.seed,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("json values serialize")
                    );
                }
            }
            if out.violated {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg} (raise SYMPSHARE_MAX_ENUM to allow larger enumerations)");
            ExitCode::from(3)
        }
    }
}
