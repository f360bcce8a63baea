//! Command-line front end: singularity tables, (-1)-fibre classification,
//! fibration analysis, the cyclic constructions, and the verification suite.

mod parse;

use clap::{Parser, Subcommand, ValueEnum};
use isofib::fibres::{bound_check, classify_minus_one_fibres, minimal_model_invariants};
use isofib::quotient::{
    theorem_a_construct, verify_theorem_a_postconditions, StandardIsotrivialFibration,
};
use isofib::rational::{fmt_frac, fmt_mixed, Rat};
use isofib::singularities::{appendix_b_table, CyclicQuotientSingularity, TableRow};
use isofib::verify::run_checks;
use parse::{parse_fractions, parse_group, parse_vector};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "isofib", version, about = "Exact invariants of standard isotrivial fibrations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
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
    /// Invariants of one cyclic quotient singularity 1/n(1,q).
    Cqs { n: u64, q: u64 },
    /// The full singularity table for 2 <= n <= max-n.
    AppendixB {
        #[arg(long = "max-n", default_value_t = 14)]
        max_n: u64,
    },
    /// All (-1)-fibre types for one fibre genus.
    Classify {
        #[arg(long)]
        genus: usize,
    },
    /// Full analysis of (C1 x C2)/G given a group and two generating vectors.
    Fibration {
        #[arg(long)]
        group: String,
        #[arg(long)]
        v1: String,
        /// Second vector, or "same" to reuse the first.
        #[arg(long)]
        v2: String,
    },
    /// Build the cyclic fibration attached to a fraction set and analyze it.
    Construct {
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long)]
        q: usize,
    },
    /// Run the verification suite (all checks, or one named check).
    Verify {
        #[arg(long)]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

/// Ok(false) means the command ran but reported failures (verify).
fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Cqs { n, q } => {
            let x = CyclicQuotientSingularity::new(*n, *q).map_err(|e| e.to_string())?;
            let row = TableRow {
                n: *n,
                q: *q,
                expansion: x.expansion(),
                q_prime: x.q_prime(),
                b: isofib::singularities::b_invariant(&x),
                h: isofib::singularities::h_invariant(&x),
            };
            emit(cli.format, &row_text(&row), || row_json(&row));
            Ok(true)
        }
        Command::AppendixB { max_n } => {
            if *max_n < 2 {
                return Err("max-n must be at least 2".into());
            }
            let rows = appendix_b_table(*max_n);
            match cli.format {
                Format::Text => {
                    for row in &rows {
                        println!("{}", row_text(row));
                    }
                }
                Format::Json => print_json(&Value::Array(rows.iter().map(row_json).collect())),
            }
            Ok(true)
        }
        Command::Classify { genus } => {
            let rows = classify_minus_one_fibres(*genus).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => {
                    for r in &rows {
                        let ty = r
                            .fractions
                            .iter()
                            .map(|&(q, n)| format!("{q}/{n}"))
                            .collect::<Vec<_>>()
                            .join(", ");
                        let label = r.label.map(|l| format!("  {l}")).unwrap_or_default();
                        println!(
                            "({ty})  n={}  c={}  delta={}{label}",
                            r.order,
                            r.c,
                            fmt_mixed(&r.delta)
                        );
                    }
                }
                Format::Json => {
                    let arr: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "genus": r.genus,
                                "type": r.fractions.iter().map(|&(q, n)| format!("{q}/{n}")).collect::<Vec<_>>(),
                                "c": r.c,
                                "delta": fmt_frac(&r.delta),
                                "label": r.label,
                            })
                        })
                        .collect();
                    print_json(&Value::Array(arr));
                }
            }
            Ok(true)
        }
        Command::Fibration { group, v1, v2 } => {
            let g = parse_group(group).map_err(|e| e.to_string())?;
            let w1 = parse_vector(&g, v1).map_err(|e| e.to_string())?;
            let w2 = if v2 == "same" {
                w1.clone()
            } else {
                parse_vector(&g, v2).map_err(|e| e.to_string())?
            };
            let f = StandardIsotrivialFibration::new(g, w1, w2).map_err(|e| e.to_string())?;
            analyze(cli.format, &f, None)?;
            Ok(true)
        }
        Command::Construct { set, q } => {
            let fractions = parse_fractions(set).map_err(|e| e.to_string())?;
            let f = theorem_a_construct(&fractions, *q).map_err(|e| e.to_string())?;
            verify_theorem_a_postconditions(&f, &fractions, *q).map_err(|e| e.to_string())?;
            analyze(cli.format, &f, Some((&fractions, *q)))?;
            Ok(true)
        }
        Command::Verify { only } => {
            let reports = run_checks(only.as_deref()).map_err(|e| e.to_string())?;
            let all_pass = reports.iter().all(|r| r.passed());
            match cli.format {
                Format::Text => {
                    for r in &reports {
                        if r.passed() {
                            println!("PASS {}", r.name);
                        } else {
                            println!("FAIL {}: {}", r.name, r.failures.join("; "));
                        }
                    }
                }
                Format::Json => {
                    let arr: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "check": r.name,
                                "passed": r.passed(),
                                "failures": r.failures,
                            })
                        })
                        .collect();
                    print_json(&Value::Array(arr));
                }
            }
            Ok(all_pass)
        }
    }
}

fn emit(format: Format, text: &str, value: impl FnOnce() -> Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => print_json(&value()),
    }
}

/// Canonical compact JSON: insertion-ordered keys, rationals as "p/q".
fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn row_text(row: &TableRow) -> String {
    let e = row
        .expansion
        .terms()
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!(
        "n={} q={} [{}] q'={} B={} h={}",
        row.n,
        row.q,
        e,
        row.q_prime,
        fmt_mixed(&row.b),
        fmt_mixed(&row.h)
    )
}

fn row_json(row: &TableRow) -> Value {
    json!({
        "n": row.n,
        "q": row.q,
        "expansion": row.expansion.terms(),
        "q_prime": row.q_prime,
        "B": fmt_frac(&row.b),
        "h": fmt_frac(&row.h),
    })
}

/// Shared fibration report: invariants, singular locus, per-fibre contraction
/// data, minimal model, and the bound check.
fn analyze(
    format: Format,
    f: &StandardIsotrivialFibration,
    construct: Option<(&[Rat], usize)>,
) -> Result<(), String> {
    let inv = f.invariants().map_err(|e| e.to_string())?;
    let fibres = f.fibres_of(2).map_err(|e| e.to_string())?;
    let contractions = fibres
        .iter()
        .map(|fb| fb.contract())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mm = minimal_model_invariants(f).map_err(|e| e.to_string())?;
    let bound = bound_check(f).map_err(|e| e.to_string())?;
    match format {
        Format::Text => {
            if let Some((fractions, q)) = construct {
                let set = fractions
                    .iter()
                    .map(fmt_frac)
                    .collect::<Vec<_>>()
                    .join(", ");
                println!(
                    "construction: set {{{set}}}, parameter q={q}, n={}, {} (-1)-fibres",
                    f.group.order(),
                    fibres.len()
                );
            }
            println!("group {} of order {}", f.group.name(), f.group.order());
            println!("g(C1)={}  g(C2)={}", f.g1(), f.g2());
            println!("Sing(T): {}", f.singular_locus());
            println!(
                "K^2={}  e={}  q={}  p_g={}  chi={}",
                inv.k2, inv.e, inv.q, inv.pg, inv.chi
            );
            for (fb, r) in fibres.iter().zip(&contractions) {
                let ty = fb
                    .strings()
                    .iter()
                    .map(|s| fmt_frac(&s.fraction()))
                    .collect::<Vec<_>>()
                    .join(", ");
                println!(
                    "fibre over branch point {} of C2/G: type ({ty}), multiplicity {}, central genus {}, Y^2={}, (-1)-fibre: {}, c={}, delta={}",
                    fb.branch_index() + 1,
                    fb.multiplicity(),
                    fb.central_genus(),
                    fb.central_self_intersection(),
                    if fb.is_minus_one_fibre() { "yes" } else { "no" },
                    r.c,
                    fmt_mixed(&r.delta)
                );
            }
            println!("minimal model: K^2={}  e={}", mm.k2_hat, mm.e_hat);
            if bound.quasi_bundle {
                println!("quasi-bundle: K^2 = 8 chi = {}", bound.eight_chi);
            } else {
                println!(
                    "bound: K^2={} <= 8 chi{} (equality: {})",
                    bound.k2_hat,
                    if f.g1() >= 1 { " - 2" } else { "" },
                    if bound.equality { "yes" } else { "no" }
                );
            }
        }
        Format::Json => {
            let sing: Vec<Value> = f
                .singular_locus()
                .iter()
                .map(|(x, m)| json!({"n": x.n(), "q": x.q(), "mult": m}))
                .collect();
            let fibre_vals: Vec<Value> = fibres
                .iter()
                .zip(&contractions)
                .map(|(fb, r)| {
                    json!({
                        "branch": fb.branch_index() + 1,
                        "multiplicity": fb.multiplicity(),
                        "central_genus": fb.central_genus(),
                        "Y2": fb.central_self_intersection(),
                        "strings": fb.strings().iter().map(|s| json!({"n": s.n(), "q": s.q()})).collect::<Vec<_>>(),
                        "minus_one": fb.is_minus_one_fibre(),
                        "c": r.c,
                        "delta": fmt_frac(&r.delta),
                    })
                })
                .collect();
            let mut obj = serde_json::Map::new();
            if let Some((fractions, q)) = construct {
                obj.insert(
                    "set".into(),
                    Value::Array(fractions.iter().map(|x| json!(fmt_frac(x))).collect()),
                );
                obj.insert("q_param".into(), json!(q));
            }
            obj.insert("group".into(), json!(f.group.name()));
            obj.insert("g1".into(), json!(f.g1()));
            obj.insert("g2".into(), json!(f.g2()));
            obj.insert("sing".into(), Value::Array(sing));
            obj.insert(
                "invariants".into(),
                json!({"K2": inv.k2, "e": inv.e, "q": inv.q, "pg": inv.pg, "chi": inv.chi}),
            );
            obj.insert("fibres".into(), Value::Array(fibre_vals));
            obj.insert(
                "minimal_model".into(),
                json!({"K2": mm.k2_hat, "e": mm.e_hat, "contractions": mm.total_contractions}),
            );
            obj.insert(
                "bound".into(),
                json!({
                    "eight_chi": bound.eight_chi,
                    "quasi_bundle": bound.quasi_bundle,
                    "equality": bound.equality,
                }),
            );
            print_json(&Value::Object(obj));
        }
    }
    Ok(())
}
