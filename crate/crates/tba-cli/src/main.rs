//! Command-line front end: axiom/law suites, equation checking,
//! classification, derived tables, construction from near-rings, and
//! exhaustive enumeration.
//!
//! Exit codes: 0 success/holds, 1 a check failed (counterexample printed),
//! 2 usage/parse/format error, 3 search budget exceeded.

mod files;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use tba::classify::{classify, equivalence_audit};
use tba::construct::{build_model, catalog_presentation, ConstructError, FormulaKind};
use tba::finder::{enumerate, iso_classes, FinderError, SearchOptions};
use tba::laws::{axiom_suite, check_law_by_id, law_suite, LawId};
use tba::model::PointedTernaryAlgebra;
use tba::term::{parse, CheckOutcome, Parsed};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tba",
    version,
    about = "Finite pointed ternary algebras: verify, classify, construct, enumerate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the four axioms T1..T4 on a model file
    Axioms { model: PathBuf },
    /// Check the derived laws L1..L10 and EQ1 (or a single law)
    Laws {
        model: PathBuf,
        /// Check one law by id (T1..T4, L1..L10, EQ1), skipping the axiom gate
        #[arg(long)]
        law: Option<String>,
    },
    /// Check one equation over all assignments
    Check {
        model: PathBuf,
        /// Equation in the term language, e.g. "x*y = y*x"
        #[arg(long)]
        eq: String,
    },
    /// Evaluate every subvariety condition and audit their agreement
    Classify {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Audit intra-theorem condition agreement across several models
    Audit {
        #[arg(required = true)]
        models: Vec<PathBuf>,
    },
    /// Print the four derived operation tables
    Derive { model: PathBuf },
    /// Write a built-in catalog model (or its near-ring presentation)
    Build {
        /// One of: dualnum2, gf2, gf2^2, gf2^3, gf2^4, gf4, n4paper, ut2gf2, z4affine
        name: String,
        /// Formula interpreting p: affine, church, ring2 or nearring2
        #[arg(long, default_value = "affine", conflicts_with = "presentation")]
        formula: String,
        /// Emit the near-ring presentation file instead of the model
        #[arg(long)]
        presentation: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a model from a near-ring presentation file
    FromNearRing {
        file: PathBuf,
        /// Formula interpreting p: affine, church, ring2 or nearring2
        #[arg(long)]
        formula: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate all models on a carrier of the given size
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Deduplicate models up to constant-fixing isomorphism
        #[arg(long)]
        up_to_iso: bool,
        /// Classify each reported model
        #[arg(long)]
        classify: bool,
        /// Abort with exit code 3 when the wall clock exceeds this budget
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Abort with exit code 3 after this many search nodes
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Largest size accepted without editing this flag
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Directory for one model file per isomorphism class
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_model(path: &Path) -> Result<PointedTernaryAlgebra, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    files::parse_model(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_output(output: Option<&Path>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_formula(s: &str) -> Result<FormulaKind, Failure> {
    FormulaKind::from_str(s).map_err(|e| Failure::usage(e.to_string()))
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Axioms { model } => cmd_axioms(&model),
        Command::Laws { model, law } => cmd_laws(&model, law.as_deref()),
        Command::Check { model, eq } => cmd_check(&model, &eq),
        Command::Classify { model, format } => cmd_classify(&model, format),
        Command::Audit { models } => cmd_audit(&models),
        Command::Derive { model } => cmd_derive(&model),
        Command::Build {
            name,
            formula,
            presentation,
            output,
        } => cmd_build(&name, &formula, presentation, output.as_deref()),
        Command::FromNearRing {
            file,
            formula,
            output,
        } => cmd_from_near_ring(&file, &formula, output.as_deref()),
        Command::Enumerate {
            size,
            up_to_iso,
            classify,
            budget_seconds,
            max_nodes,
            max_size,
            output,
        } => cmd_enumerate(
            size,
            up_to_iso,
            classify,
            budget_seconds,
            max_nodes,
            max_size,
            output.as_deref(),
        ),
    }
}

fn cmd_axioms(path: &Path) -> Result<u8, Failure> {
    let m = load_model(path)?;
    let report = axiom_suite(&m);
    print!("{}", render::law_report_text(&m, &report, ""));
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_laws(path: &Path, law_id: Option<&str>) -> Result<u8, Failure> {
    let m = load_model(path)?;
    if let Some(id) = law_id {
        let id = LawId::from_str(id).map_err(|e| Failure::usage(e.to_string()))?;
        let outcome = check_law_by_id(&m, id);
        println!(
            "{}: {}",
            outcome.id,
            render::verdict_text(&m, &outcome.verdict)
        );
        return Ok(if outcome.verdict.is_violated() {
            EXIT_CHECK_FAILED
        } else {
            EXIT_OK
        });
    }
    let axioms = axiom_suite(&m);
    if !axioms.all_passed() {
        print!("{}", render::law_report_text(&m, &axioms, ""));
        println!("law suite not applicable: the axioms fail");
        return Ok(EXIT_CHECK_FAILED);
    }
    let report = law_suite(&m);
    print!("{}", render::law_report_text(&m, &report, ""));
    Ok(if report.no_violations() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_check(path: &Path, eq_src: &str) -> Result<u8, Failure> {
    let m = load_model(path)?;
    let equation = match parse(eq_src) {
        Ok(Parsed::Equation(e)) => e,
        Ok(Parsed::Term(_)) => {
            return Err(Failure::usage("expected an equation (no `=` found)"));
        }
        Err(e) => return Err(Failure::usage(e.to_string())),
    };
    match tba::term::check_equation(&m, &equation) {
        CheckOutcome::Holds => {
            println!("holds");
            Ok(EXIT_OK)
        }
        CheckOutcome::Counterexample(cex) => {
            println!("counterexample {}", cex.display_with(&m));
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn cmd_classify(path: &Path, format: OutputFormat) -> Result<u8, Failure> {
    let m = load_model(path)?;
    let report = classify(&m);
    let laws = report.applicable().then(|| law_suite(&m));
    match format {
        OutputFormat::Text => {
            print!("{}", render::classification_text(&m, &report, laws.as_ref()));
        }
        OutputFormat::Json => {
            let value = render::classification_json(&m, &report, laws.as_ref());
            println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
        }
    }
    let healthy = report.applicable() && report.disagreements.is_empty();
    Ok(if healthy { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_audit(paths: &[PathBuf]) -> Result<u8, Failure> {
    let mut models = Vec::new();
    for path in paths {
        models.push((path, load_model(path)?));
    }
    let mut gate_failed = false;
    for (path, m) in &models {
        let report = axiom_suite(m);
        if !report.all_passed() {
            let failing = report.first_violation().expect("a violated axiom");
            println!(
                "{}: not applicable ({}: {})",
                path.display(),
                failing.id,
                render::verdict_text(m, &failing.verdict)
            );
            gate_failed = true;
        }
    }
    if gate_failed {
        println!("audit not run: some models fail the axioms");
        return Ok(EXIT_CHECK_FAILED);
    }
    let algebras: Vec<PointedTernaryAlgebra> = models.iter().map(|(_, m)| m.clone()).collect();
    let entries = equivalence_audit(&algebras);
    if entries.is_empty() {
        println!("no disagreements");
        return Ok(EXIT_OK);
    }
    for entry in &entries {
        let (path, _) = &models[entry.model_index];
        let values: Vec<String> = entry
            .disagreement
            .values
            .iter()
            .map(|(id, holds)| format!("{id}={holds}"))
            .collect();
        println!(
            "{}: {} disagrees: {}",
            path.display(),
            entry.disagreement.theorem,
            values.join(" ")
        );
    }
    Ok(EXIT_CHECK_FAILED)
}

fn cmd_derive(path: &Path) -> Result<u8, Failure> {
    let m = load_model(path)?;
    print!("{}", render::model_summary_text(&m));
    print!("{}", render::derived_tables_text(&m));
    Ok(EXIT_OK)
}

fn emit_built_model(
    presentation: &tba::construct::NearRingPresentation,
    formula: FormulaKind,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    match build_model(presentation, formula) {
        Ok(built) => {
            for warning in &built.warnings {
                eprintln!("warning: {warning}");
            }
            let text = files::render_model(&built.model)
                .map_err(|e| Failure::usage(e.to_string()))?;
            write_output(output, &text)?;
            Ok(EXIT_OK)
        }
        Err(ConstructError::InvalidPresentation(violations)) => {
            println!("presentation is not a valid near-ring:");
            for v in &violations {
                println!("  {v}");
            }
            Ok(EXIT_CHECK_FAILED)
        }
        Err(e @ ConstructError::NotCharacteristicTwo { .. }) => {
            println!("{e}");
            Ok(EXIT_CHECK_FAILED)
        }
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn cmd_build(
    name: &str,
    formula: &str,
    presentation_only: bool,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let presentation =
        catalog_presentation(name).map_err(|e| Failure::usage(e.to_string()))?;
    if presentation_only {
        let text =
            files::render_near_ring(&presentation).map_err(|e| Failure::usage(e.to_string()))?;
        write_output(output, &text)?;
        return Ok(EXIT_OK);
    }
    let formula = parse_formula(formula)?;
    emit_built_model(&presentation, formula, output)
}

fn cmd_from_near_ring(file: &Path, formula: &str, output: Option<&Path>) -> Result<u8, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
    let presentation = files::parse_near_ring(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let formula = parse_formula(formula)?;
    emit_built_model(&presentation, formula, output)
}

fn cmd_enumerate(
    size: usize,
    up_to_iso: bool,
    classify_each: bool,
    budget_seconds: Option<u64>,
    max_nodes: Option<u64>,
    max_size: usize,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let options = SearchOptions {
        up_to_iso,
        classify_each,
        max_size,
        max_nodes,
        time_budget: budget_seconds.map(Duration::from_secs),
    };
    let result = match enumerate(size, &options) {
        Ok(r) => r,
        Err(e @ FinderError::BudgetExceeded { .. }) => {
            return Err(Failure {
                code: EXIT_BUDGET,
                message: e.to_string(),
            });
        }
        Err(e) => return Err(Failure::usage(e.to_string())),
    };

    println!("size {}", result.size);
    println!("raw count: {}", result.raw_count);
    if up_to_iso {
        println!("classes up to isomorphism: {}", result.models.len());
    }
    println!(
        "nodes: {} propagations: {} conflicts: {}",
        result.stats.nodes, result.stats.propagated, result.stats.conflicts
    );
    for (i, m) in result.models.iter().enumerate() {
        let mut line = format!(
            "model {}: hash={:016x}",
            i + 1,
            render::table_hash(m.table())
        );
        if let Some(reports) = &result.classifications {
            if let Some(v) = reports[i].verdicts {
                line.push_str(&format!(
                    " boolean={} ring2={} nearRing2={}",
                    v.boolean, v.ring2, v.near_ring2
                ));
            }
        }
        println!("{line}");
    }

    if let Some(dir) = output {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        // one file per isomorphism class, named by canonical-table hash
        let canonical: Vec<PointedTernaryAlgebra> = if up_to_iso {
            result.models.clone()
        } else {
            iso_classes(&result.models)
                .map_err(|e| Failure::usage(e.to_string()))?
                .into_iter()
                .map(|c| c.canonical)
                .collect()
        };
        for m in &canonical {
            let name = format!("{:016x}.tba", render::table_hash(m.table()));
            let path = dir.join(name);
            let text = files::render_model(m).map_err(|e| Failure::usage(e.to_string()))?;
            fs::write(&path, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(EXIT_OK)
}
