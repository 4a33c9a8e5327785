//! Command-line front end. Every command is deterministic: fixed orderings,
//! explicit seeds, and sorted JSON keys make identical invocations
//! byte-identical.
//!
//! Exit codes: 0 success/verified, 1 verification failure, 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{self, json as report_json};
use crate::closure::derive_conditions;
use crate::clifford::build_table;
use crate::error::Result;
use crate::render::condition_text;
use crate::scalars::GaussianRational;
use crate::solve::SolveOutcome;
use crate::subspace::{canonical_bases, CanonicalBasis};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "cliffsub",
    about = "Exact classification of codimension-1 subalgebras of complex Clifford algebras",
    version
)]
pub struct Cli {
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
    /// Print the 2^n x 2^n generator product table.
    Table(TableArgs),
    /// List the canonical bases of the N-dimensional algebra.
    Bases(BasesArgs),
    /// Derive the closure-condition system of one canonical basis.
    Conditions(ConditionsArgs),
    /// Run the full classification for g(n, C).
    Classify(ClassifyArgs),
    /// Rebuild and verify the eight known subalgebras of g(3, C).
    Verify(VerifyArgs),
    /// Compare condition evaluation against the elimination oracle on
    /// seeded random parameter assignments.
    Oracle(OracleArgs),
    /// Embed a subalgebra into a larger algebra and re-verify closure.
    Lemma(LemmaArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Generating dimension n.
    #[arg(long, default_value_t = 3)]
    n: u8,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Compare against the built-in g(3) reference grid.
    #[arg(long)]
    check_paper: bool,
}

#[derive(Args)]
struct BasesArgs {
    /// Algebra dimension N (a power of two).
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConditionsArgs {
    /// Canonical basis index, 1..=2^n.
    #[arg(long)]
    basis: usize,
    #[arg(long, default_value_t = 3)]
    n: u8,
    #[arg(long)]
    json: bool,
    /// Print the reduced summary list instead of the raw derived system.
    #[arg(long)]
    reduced: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, default_value_t = 3)]
    n: u8,
    #[arg(long)]
    json: bool,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the oracle evidence attached to unresolved bases.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which subalgebra to verify (h1..h8), or all of them.
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    basis: usize,
    #[arg(long, default_value_t = 3)]
    n: u8,
    #[arg(long, default_value_t = 500)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LemmaArgs {
    /// One of h1..h8.
    #[arg(long)]
    family: String,
    /// How many extra generators to embed into.
    #[arg(long, default_value_t = 1)]
    k: u8,
    /// Free-parameter value for h1..h4, e.g. "0" or "5/4*I".
    #[arg(long)]
    point: Option<String>,
}

/// Parses and runs; returns the process exit code. Output goes to `out`,
/// usage errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Clap help/version are successes; everything else is usage.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Table(args) => table_cmd(args, out),
        Command::Bases(args) => bases_cmd(args, out),
        Command::Conditions(args) => conditions_cmd(args, out),
        Command::Classify(args) => classify_cmd(args, out),
        Command::Verify(args) => verify_cmd(args, out),
        Command::Oracle(args) => oracle_cmd(args, out),
        Command::Lemma(args) => lemma_cmd(args, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

fn table_cmd(args: TableArgs, out: &mut dyn Write) -> Result<i32> {
    let table = build_table(args.n)?;
    if args.check_paper {
        let (matching, mismatches) = table.check_against_reference();
        if mismatches.is_empty() {
            emit(out, &format!("{matching}/64 cells match"));
            return Ok(EXIT_OK);
        }
        emit(out, &format!("{matching}/64 cells match"));
        for (r, c) in mismatches {
            emit(
                out,
                &format!(
                    "mismatch at row {}, column {}: computed {}",
                    table.blades()[r],
                    table.blades()[c],
                    table.cell_text(r, c)
                ),
            );
        }
        return Ok(EXIT_VERIFICATION_FAILED);
    }
    let size = table.blades().len();
    match args.format {
        Format::Text => {
            let header: Vec<String> = table.blades().iter().map(|b| b.name()).collect();
            emit(out, &format!("*\t{}", header.join("\t")));
            for r in 0..size {
                let cells: Vec<String> = (0..size).map(|c| table.cell_text(r, c)).collect();
                emit(out, &format!("{}\t{}", header[r], cells.join("\t")));
            }
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..size)
                .map(|r| (0..size).map(|c| table.cell_text(r, c)).collect())
                .collect();
            let blades: Vec<String> = table.blades().iter().map(|b| b.index_name()).collect();
            let value = serde_json::json!({
                "n": args.n,
                "blades": blades,
                "table": rows,
            });
            emit(out, &serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(EXIT_OK)
}

fn bases_cmd(args: BasesArgs, out: &mut dyn Write) -> Result<i32> {
    let bases = canonical_bases(args.dim)?;
    if args.json {
        let mut items = Vec::new();
        for cb in &bases {
            items.push(serde_json::json!({
                "m": cb.index(),
                "pivot": cb.pivot(),
                "parameters": cb.param_names(),
                "vectors": cb.render()?,
            }));
        }
        let value = serde_json::json!({ "dim": args.dim, "bases": items });
        emit(out, &serde_json::to_string_pretty(&value).expect("serializable"));
        return Ok(EXIT_OK);
    }
    for cb in &bases {
        emit(out, &format!("({}) {}", cb.index(), cb.render()?));
    }
    Ok(EXIT_OK)
}

fn conditions_cmd(args: ConditionsArgs, out: &mut dyn Write) -> Result<i32> {
    let coords = check_dimension(args.n)?;
    let cb = CanonicalBasis::new(coords, args.basis)?;
    let cs = derive_conditions(&cb)?;
    let names = cs.name_fn();
    if args.json {
        let conditions: Vec<serde_json::Value> = if args.reduced {
            cs.reduced()
                .iter()
                .map(|p| serde_json::json!({ "poly": p.text(&names) }))
                .collect()
        } else {
            cs.items
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "poly": c.poly.text(&names),
                        "from_product": [c.product.0, c.product.1],
                    })
                })
                .collect()
        };
        let value = serde_json::json!({
            "basis": args.basis,
            "n": args.n,
            "reduced": args.reduced,
            "conditions": conditions,
        });
        emit(out, &serde_json::to_string_pretty(&value).expect("serializable"));
        return Ok(EXIT_OK);
    }
    if args.reduced {
        for p in cs.reduced() {
            emit(out, &condition_text(&p, &names));
        }
    } else {
        for c in &cs.items {
            emit(
                out,
                &format!(
                    "{}    [from a{}*a{}]",
                    condition_text(&c.poly, &names),
                    c.product.0,
                    c.product.1
                ),
            );
        }
    }
    Ok(EXIT_OK)
}

fn classify_cmd(args: ClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let result = classify::classify(args.n)?;
    if args.json || args.out.is_some() {
        let mut value = report_json::classification_value(&result)?;
        // Attach oracle evidence for unresolved bases: the solver makes no
        // claim there, so sampled agreement is reported instead.
        let evidence: Vec<serde_json::Value> = result
            .bases
            .iter()
            .filter(|b| matches!(b.outcome, SolveOutcome::Unresolved(_)))
            .map(|b| {
                let report =
                    classify::sampling_oracle(args.n, b.basis.index(), 100, args.seed)?;
                Ok(report_json::oracle_value(&report))
            })
            .collect::<Result<_>>()?;
        if !evidence.is_empty() {
            value["oracle_evidence"] = serde_json::Value::Array(evidence);
        }
        let text = serde_json::to_string_pretty(&value).expect("serializable");
        if let Some(path) = args.out {
            std::fs::write(&path, text + "\n").map_err(|e| {
                crate::error::Error::InvalidScalar(format!("cannot write {}: {e}", path.display()))
            })?;
        } else {
            emit(out, &text);
        }
        return Ok(EXIT_OK);
    }
    for report in &result.bases {
        let names = report.conditions.name_fn();
        let m = report.basis.index();
        match &report.outcome {
            SolveOutcome::Contradiction(trace) => {
                emit(
                    out,
                    &format!(
                        "basis ({m}): no subalgebra — condition from product ({}, {}) forces {} = 0",
                        trace.source.product.0, trace.source.product.1, trace.constant
                    ),
                );
            }
            SolveOutcome::Families(families) => {
                emit(out, &format!("basis ({m}): {} families", families.len()));
                for (idx, family) in families.iter().enumerate() {
                    let vectors = classify::family_vectors(&report.basis, family)?;
                    let rendered: Vec<String> =
                        vectors.iter().map(crate::render::mv_ext_text).collect();
                    let label = match &family.extension {
                        Some(q) => format!(
                            "free a (= {}), s^2 = {}",
                            family.free_source.as_deref().unwrap_or("?"),
                            q.text(&|_| "a".to_string())
                        ),
                        None if family.is_one_parameter() => format!(
                            "free a (= {})",
                            family.free_source.as_deref().unwrap_or("?")
                        ),
                        None => "isolated".to_string(),
                    };
                    emit(
                        out,
                        &format!("  family {}: {}; span{{{}}}", idx + 1, label, rendered.join(", ")),
                    );
                }
            }
            SolveOutcome::Unresolved(u) => {
                let oracle = classify::sampling_oracle(args.n, m, 100, args.seed)?;
                emit(
                    out,
                    &format!(
                        "basis ({m}): unresolved ({}); oracle evidence (100 trials, seed {}): \
                         {} agreements, {} disagreements, {} closure hits",
                        u.note,
                        args.seed,
                        oracle.agreements,
                        oracle.disagreements.len(),
                        oracle.closure_hits.len()
                    ),
                );
                for c in &u.remaining {
                    emit(out, &format!("    remaining: {}", condition_text(&c.poly, &names)));
                }
            }
        }
    }
    emit(out, &result.summary_line());
    Ok(EXIT_OK)
}

fn verify_cmd(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let report = classify::verify_theorem()?;
    let selected: Vec<&classify::TheoremCheck> = if args.family == "all" {
        report.checks.iter().collect()
    } else {
        let found: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.name == args.family)
            .collect();
        if found.is_empty() {
            return Err(crate::error::Error::UnknownFamily(args.family));
        }
        found
    };
    if args.json {
        let value = serde_json::json!({
            "families": selected
                .iter()
                .map(|c| serde_json::json!({
                    "name": c.name,
                    "closed": c.closed,
                    "matched_family": c.matched_family,
                    "failure": c.failure,
                }))
                .collect::<Vec<_>>(),
        });
        emit(out, &serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        for check in &selected {
            let status = if check.closed && check.matched_family.is_some() {
                format!(
                    "closed, matches classify family {}",
                    check.matched_family.map(|i| i + 1).unwrap_or(0)
                )
            } else if let Some(f) = &check.failure {
                format!("FAILED: {f}")
            } else {
                "FAILED: no matching classified family".to_string()
            };
            emit(out, &format!("{}: {}", check.name, status));
        }
    }
    let ok = selected.iter().all(|c| c.closed && c.matched_family.is_some());
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

fn oracle_cmd(args: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let report = classify::sampling_oracle(args.n, args.basis, args.trials, args.seed)?;
    if args.json {
        emit(
            out,
            &serde_json::to_string_pretty(&report_json::oracle_value(&report))
                .expect("serializable"),
        );
    } else {
        emit(
            out,
            &format!(
                "closure hits: {}; disagreements: {}",
                report.closure_hits.len(),
                report.disagreements.len()
            ),
        );
        for hit in &report.closure_hits {
            emit(out, &format!("  closed at ({hit})"));
        }
        for d in &report.disagreements {
            emit(out, &format!("  DISAGREEMENT {d}"));
        }
    }
    Ok(if report.disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

fn lemma_cmd(args: LemmaArgs, out: &mut dyn Write) -> Result<i32> {
    let point = match &args.point {
        Some(text) => Some(text.parse::<GaussianRational>()?),
        None => None,
    };
    let report = classify::verify_lemma(&args.family, point.as_ref(), args.k)?;
    let location = match &report.point {
        Some(p) => format!("{} at a = {p}", report.family),
        None => report.family.to_string(),
    };
    if report.closed {
        emit(out, &format!("{location} embedded into g({}): closed", 3 + report.k));
        Ok(EXIT_OK)
    } else {
        emit(
            out,
            &format!(
                "{location} embedded into g({}): NOT closed — {}",
                3 + report.k,
                report.failure.as_deref().unwrap_or("unknown failure")
            ),
        );
        Ok(EXIT_VERIFICATION_FAILED)
    }
}

fn check_dimension(n: u8) -> Result<usize> {
    if !(1..=4).contains(&n) {
        return Err(crate::error::Error::OutOfRange {
            what: "algebra dimension n",
            got: n as i64,
            expected: "1..=4",
        });
    }
    Ok(1usize << n)
}
