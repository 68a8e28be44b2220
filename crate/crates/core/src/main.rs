//! Command-line interface: validate, close, query, batch-evaluate, and
//! export similarity-based knowledge bases.
//!
//! Exit status contract: 0 success, 1 semantic/validation failure, 2 parse
//! failure, 3 usage error. Output is deterministic: identical inputs and
//! flags produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use similog::distributions::validate_table;
use similog::eval::{outcome_json, Evaluator, SetupError};
use similog::kb::{parse_kb, parse_query, serialize_kb, KnowledgeBase};
use similog::similarity::{transitive_closure, SimilarityRelation, Violation};
use similog::tnorm::TNorm;
use similog::world::{PartitionError, Universe};

const EXIT_OK: u8 = 0;
const EXIT_SEMANTIC: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "similog",
    version,
    about = "Similarity-based possibilistic reasoning over finite worlds"
)]
struct Cli {
    /// Override the knowledge base's t-norm: min, lukasiewicz, or product.
    #[arg(long, global = true, value_name = "NORM")]
    tnorm: Option<String>,

    /// Comparison tolerance for validation and alpha cutoffs.
    #[arg(long, global = true, default_value_t = similog::EPSILON, value_name = "EPS")]
    epsilon: f64,

    /// Emit structured JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Print witnesses (argmin/argmax worlds, argmax GMP blocks).
    #[arg(long, global = true)]
    explain: bool,

    /// Apply the transitive closure before evaluating queries.
    #[arg(long, global = true)]
    auto_close: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every similarity, partition, and table property, with witnesses.
    Validate { file: PathBuf },
    /// Emit the transitively closed knowledge base in canonical form.
    Closure {
        file: PathBuf,
        /// Print the number of raised entries instead of the closed KB.
        #[arg(long)]
        check_only: bool,
    },
    /// Evaluate one query, e.g. 'I(p|q)' or 'gmp_nec(P, q)'.
    Query { file: PathBuf, query: String },
    /// Evaluate a file of queries, one per line, in order.
    Eval { file: PathBuf, queries: PathBuf },
    /// Export the knowledge base as JSON, including tight Nec/Poss values.
    Export { file: PathBuf },
}

fn main() -> ExitCode {
    ExitCode::from(run())
}

fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return EXIT_OK;
            }
            eprint!("{err}");
            return EXIT_USAGE;
        }
    };
    if !(cli.epsilon.is_finite() && cli.epsilon > 0.0 && cli.epsilon < 0.5) {
        eprintln!("error: --epsilon must lie in (0, 0.5)");
        return EXIT_USAGE;
    }
    let norm_override = match &cli.tnorm {
        Some(name) => match name.parse::<TNorm>() {
            Ok(norm) => Some(norm),
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_USAGE;
            }
        },
        None => None,
    };
    match &cli.command {
        Command::Validate { file } => with_kb(file, norm_override, |kb| {
            cmd_validate(&kb, cli.epsilon, cli.json)
        }),
        Command::Closure { file, check_only } => with_kb(file, norm_override, |kb| {
            cmd_closure(&kb, cli.epsilon, *check_only)
        }),
        Command::Query { file, query } => {
            with_kb(file, norm_override, |kb| cmd_query(&kb, query, &cli))
        }
        Command::Eval { file, queries } => {
            with_kb(file, norm_override, |kb| cmd_eval(&kb, queries, &cli))
        }
        Command::Export { file } => with_kb(file, norm_override, |kb| cmd_export(&kb, &cli)),
    }
}

fn with_kb(path: &Path, norm_override: Option<TNorm>, run: impl FnOnce(KnowledgeBase) -> u8) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            eprintln!("usage: similog <COMMAND> <FILE> [...]; see similog --help");
            return EXIT_USAGE;
        }
    };
    let mut kb = match parse_kb(&text) {
        Ok(kb) => kb,
        Err(err) => {
            for diagnostic in &err.diagnostics {
                eprintln!("{}: {diagnostic}", path.display());
            }
            return EXIT_PARSE;
        }
    };
    if let Some(norm) = norm_override {
        kb.set_norm(norm);
    }
    run(kb)
}

fn render_violation(v: &Violation, universe: &Universe) -> String {
    let w = |i: usize| universe.label(i).to_string();
    match v {
        Violation::Reflexivity { world, value } => {
            format!("S({0}, {0}) = {1}, expected 1", w(*world), value)
        }
        Violation::Discernibility { a, b, value } => {
            format!(
                "S({}, {}) = {} is not strictly below 1",
                w(*a),
                w(*b),
                value
            )
        }
        Violation::Symmetry {
            a,
            b,
            forward,
            backward,
        } => format!(
            "S({}, {}) = {} but S({}, {}) = {}",
            w(*a),
            w(*b),
            forward,
            w(*b),
            w(*a),
            backward
        ),
        Violation::Transitivity {
            from,
            via,
            to,
            actual,
            required,
        } => format!(
            "S({}, {}) = {} < {} = S({}, {}) ⊗ S({}, {})",
            w(*from),
            w(*to),
            actual,
            required,
            w(*from),
            w(*via),
            w(*via),
            w(*to)
        ),
    }
}

fn render_partition_error(err: &PartitionError, blocks: &[String], universe: &Universe) -> String {
    let block = |i: usize| blocks.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
    match err {
        PartitionError::Overlap {
            first,
            second,
            witness,
        } => format!(
            "blocks {} and {} overlap at world {}",
            block(*first),
            block(*second),
            universe.label(*witness)
        ),
        PartitionError::Coverage { witness } => {
            format!("no block covers world {}", universe.label(*witness))
        }
        PartitionError::EmptyBlock { index } => format!("block {} is empty", block(*index)),
        other => other.to_string(),
    }
}

fn cmd_validate(kb: &KnowledgeBase, eps: f64, json: bool) -> u8 {
    let universe = kb.universe();
    let mut checks: Vec<(String, Vec<String>)> = Vec::new();

    let relation = SimilarityRelation::validate(kb.similarity_matrix().clone(), kb.norm(), eps);
    let similarity_violations = match &relation {
        Ok(_) => Vec::new(),
        Err(report) => report.violations.clone(),
    };
    for property in ["reflexivity", "discernibility", "symmetry", "transitivity"] {
        let witnesses: Vec<String> = similarity_violations
            .iter()
            .filter(|v| v.property() == property)
            .map(|v| render_violation(v, universe))
            .collect();
        checks.push((property.to_string(), witnesses));
    }

    for (name, block_names) in kb.partitions() {
        let witnesses = match kb.partition(name).expect("declared partition") {
            Ok(_) => Vec::new(),
            Err(err) => vec![render_partition_error(&err, block_names, universe)],
        };
        checks.push((format!("partition {name}"), witnesses));
    }

    for ((kind, name), table) in kb.tables() {
        let witnesses = match &relation {
            Ok(relation) => {
                match validate_table(table, kb.propositions(), kb.evidence(), relation, eps) {
                    Ok(()) => Vec::new(),
                    Err(report) => report.problems.iter().map(|p| p.to_string()).collect(),
                }
            }
            Err(_) => vec!["skipped: similarity relation is invalid".to_string()],
        };
        checks.push((format!("table {} {name}", kind.keyword()), witnesses));
    }

    let all_ok = checks.iter().all(|(_, witnesses)| witnesses.is_empty());
    if json {
        let records: Vec<_> = checks
            .iter()
            .map(|(name, witnesses)| {
                json!({"check": name, "ok": witnesses.is_empty(), "witnesses": witnesses})
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string(&json!({"ok": all_ok, "checks": records})).unwrap()
        );
    } else {
        for (name, witnesses) in &checks {
            if witnesses.is_empty() {
                println!("{name}: ok");
            } else {
                println!("{name}: FAIL ({} violation(s))", witnesses.len());
                for witness in witnesses {
                    println!("  {witness}");
                }
            }
        }
        if all_ok {
            println!("all checks passed");
        }
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_SEMANTIC
    }
}

fn cmd_closure(kb: &KnowledgeBase, eps: f64, check_only: bool) -> u8 {
    match transitive_closure(kb.similarity_matrix(), kb.norm(), eps) {
        Ok(closure) => {
            if check_only {
                println!("{} entries raised", closure.raised_entries);
            } else {
                print!(
                    "{}",
                    serialize_kb(&kb.with_similarity(closure.relation.matrix().clone()))
                );
            }
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {}", render_violation(&err.0, kb.universe()));
            eprintln!("the transitive closure can only repair transitivity");
            EXIT_SEMANTIC
        }
    }
}

fn build_evaluator<'a>(kb: &'a KnowledgeBase, cli: &Cli) -> Result<Evaluator<'a>, u8> {
    if cli.auto_close {
        match Evaluator::with_auto_close(kb, cli.epsilon) {
            Ok((evaluator, raised)) => {
                eprintln!("note: applied transitive closure ({raised} entries raised)");
                Ok(evaluator)
            }
            Err(err) => {
                eprintln!("error: {err}");
                Err(EXIT_SEMANTIC)
            }
        }
    } else {
        match Evaluator::new(kb, cli.epsilon) {
            Ok(evaluator) => Ok(evaluator),
            Err(SetupError::Validation(report)) => {
                eprintln!("error: similarity relation failed validation");
                for violation in &report.violations {
                    eprintln!("  {}", render_violation(violation, kb.universe()));
                }
                eprintln!(
                    "hint: run `similog closure` or pass --auto-close to repair transitivity"
                );
                Err(EXIT_SEMANTIC)
            }
            Err(err) => {
                eprintln!("error: {err}");
                Err(EXIT_SEMANTIC)
            }
        }
    }
}

fn cmd_query(kb: &KnowledgeBase, query_text: &str, cli: &Cli) -> u8 {
    let evaluator = match build_evaluator(kb, cli) {
        Ok(evaluator) => evaluator,
        Err(code) => return code,
    };
    let query = match parse_query(query_text, kb) {
        Ok(query) => query,
        Err(err) => {
            for diagnostic in &err.diagnostics {
                eprintln!("query: {diagnostic}");
            }
            return EXIT_PARSE;
        }
    };
    match evaluator.evaluate(&query) {
        Ok(outcome) => {
            if cli.json {
                let mut record = outcome_json(query_text, &query, &outcome, kb.universe());
                if !cli.explain {
                    record.as_object_mut().unwrap().remove("witness");
                }
                println!("{}", serde_json::to_string(&record).unwrap());
            } else {
                println!("{}", outcome.result.render(kb.universe()));
                if cli.explain {
                    if let Some(witness) = &outcome.witness {
                        println!("{}", witness.render(kb.universe()));
                    }
                }
            }
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_SEMANTIC
        }
    }
}

fn cmd_eval(kb: &KnowledgeBase, queries_path: &Path, cli: &Cli) -> u8 {
    let text = match fs::read_to_string(queries_path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", queries_path.display());
            return EXIT_USAGE;
        }
    };
    let evaluator = match build_evaluator(kb, cli) {
        Ok(evaluator) => evaluator,
        Err(code) => return code,
    };
    let mut any_failed = false;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let result = parse_query(trimmed, kb)
            .map_err(|err| {
                let first = &err.diagnostics[0];
                (first.code.as_str(), first.to_string())
            })
            .and_then(|query| {
                evaluator
                    .evaluate(&query)
                    .map(|outcome| (query, outcome))
                    .map_err(|err| ("eval", err.to_string()))
            });
        match result {
            Ok((query, outcome)) => {
                if cli.json {
                    let mut record = outcome_json(trimmed, &query, &outcome, kb.universe());
                    if !cli.explain {
                        record.as_object_mut().unwrap().remove("witness");
                    }
                    println!("{}", serde_json::to_string(&record).unwrap());
                } else {
                    println!("{}", outcome.result.render(kb.universe()));
                }
            }
            Err((code, message)) => {
                any_failed = true;
                if cli.json {
                    println!(
                        "{}",
                        serde_json::to_string(&json!({
                            "query": trimmed,
                            "error": {"code": code, "message": message},
                        }))
                        .unwrap()
                    );
                } else {
                    println!("error[{code}]: {message}");
                }
            }
        }
    }
    if any_failed {
        EXIT_SEMANTIC
    } else {
        EXIT_OK
    }
}

fn cmd_export(kb: &KnowledgeBase, cli: &Cli) -> u8 {
    let evaluator = match build_evaluator(kb, cli) {
        Ok(evaluator) => evaluator,
        Err(code) => return code,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&evaluator.export_json()).unwrap()
    );
    EXIT_OK
}
