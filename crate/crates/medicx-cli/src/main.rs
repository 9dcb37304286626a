//! Single executable driving the pipeline: ingest, map, build, export,
//! query, cq, stats. Stage artifacts are plain files (JSONL records, JSON
//! reports, N-Quads graphs), so every stage can also be run on its own
//! against the previous stage's output.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use medicx_core::graph::QuadStore;
use medicx_core::ingest::{self, DropReason};
use medicx_core::normalize::SaltLexicon;
use medicx_core::pipeline::{self, PipelineOutput};
use medicx_core::query::{self, CqReference};
use medicx_core::rdfio;
use medicx_core::report;

const ENV_DATA_DIR: &str = "MEDICX_DATA_DIR";

#[derive(Parser)]
#[command(
    name = "medicx",
    version,
    about = "Build, query, and evaluate the pharmaceutical knowledge graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Directory with the four source files (falls back to MEDICX_DATA_DIR)
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Directory with salts.txt and spelling.tsv overriding the built-in
    /// lexicon
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceKind {
    Mma,
    Bnf,
    Drugbank,
    Pubchem,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Nquads,
    Ntriples,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate, and clean one source dataset
    Ingest {
        #[arg(long, value_enum)]
        source: SourceKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the cleaned records as JSON-Lines
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Resolve every product and write the mapping report
    Map {
        #[arg(long)]
        report: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full pipeline and export the graph as canonical N-Quads
    Build {
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-serialise a graph artifact
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "nquads")]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a query file and print TSV bindings
    Query {
        #[arg(long)]
        file: PathBuf,
        /// Parameter substitution, e.g. --param drugX=http://medicX.org/ingredient/warfarin
        #[arg(long = "param", value_name = "NAME=IRI")]
        params: Vec<String>,
        /// Graph artifact to query (otherwise built from --data-dir)
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Competency-question harness
    Cq {
        #[command(subcommand)]
        command: CqCommand,
    },
    /// Entity and relation statistics
    Stats {
        /// Write the statistics document as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum CqCommand {
    /// Run all referenced competency questions and classify the outcomes
    Run {
        #[arg(long)]
        reference: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Failures carry a stable machine-parseable code and the exit status:
/// 2 for parse/usage problems, 1 for runtime errors.
struct Failure {
    code: &'static str,
    exit: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: "parse",
            exit: 2,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: "usage",
            exit: 2,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: "io",
            exit: 1,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Failure {
        Failure {
            code: "data",
            exit: 1,
            message: message.into(),
        }
    }
}

fn load_lexicon(common: &CommonOpts) -> Result<SaltLexicon, Failure> {
    match &common.lexicon {
        Some(dir) => SaltLexicon::load_dir(dir).map_err(|e| Failure::data(e.to_string())),
        None => Ok(SaltLexicon::builtin()),
    }
}

fn data_dir(common: &CommonOpts) -> Result<PathBuf, Failure> {
    if let Some(dir) = &common.data_dir {
        return Ok(dir.clone());
    }
    if let Ok(dir) = std::env::var(ENV_DATA_DIR) {
        return Ok(PathBuf::from(dir));
    }
    Err(Failure::usage(format!(
        "no data directory: pass --data-dir or set {ENV_DATA_DIR}"
    )))
}

fn run_pipeline(common: &CommonOpts) -> Result<(PipelineOutput, SaltLexicon), Failure> {
    let lexicon = load_lexicon(common)?;
    let dir = data_dir(common)?;
    let output = pipeline::run(&dir, &lexicon).map_err(|e| match e {
        pipeline::PipelineError::Io { .. } => Failure::io(e.to_string()),
        pipeline::PipelineError::Ingest { .. } => Failure::parse(e.to_string()),
        _ => Failure::data(e.to_string()),
    })?;
    Ok((output, lexicon))
}

fn load_store(graph: &Option<PathBuf>, common: &CommonOpts) -> Result<QuadStore, Failure> {
    match graph {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
            rdfio::parse_nquads(&text).map_err(|e| Failure::parse(e.to_string()))
        }
        None => Ok(run_pipeline(common)?.0.store),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

type IngestSummary = (usize, Vec<(DropReason, usize)>, Option<String>);

fn summarise<T: serde::Serialize>(
    outcome: ingest::CleanOutcome<T>,
    want_output: bool,
) -> IngestSummary {
    let dropped = [
        DropReason::Invalid,
        DropReason::Withdrawn,
        DropReason::Duplicate,
    ]
    .into_iter()
    .map(|reason| (reason, outcome.dropped_count(reason)))
    .filter(|(_, count)| *count > 0)
    .collect();
    let output = want_output.then(|| ingest::to_jsonl(&outcome.kept));
    (outcome.kept.len(), dropped, output)
}

fn cmd_ingest(
    source: SourceKind,
    input: &Path,
    out: Option<&Path>,
    common: &CommonOpts,
) -> Result<(), Failure> {
    let lexicon = load_lexicon(common)?;
    let bytes = fs::read(input).map_err(|e| Failure::io(format!("{}: {e}", input.display())))?;
    let reader = bytes.as_slice();

    let (label, (kept, dropped, output)) = match source {
        SourceKind::Mma => {
            let records = ingest::parse_mma(reader).map_err(|e| Failure::parse(e.to_string()))?;
            ("mma", summarise(ingest::clean_mma(records), out.is_some()))
        }
        SourceKind::Bnf => {
            let records = ingest::parse_bnf(reader).map_err(|e| Failure::parse(e.to_string()))?;
            (
                "bnf",
                summarise(ingest::clean_bnf(records, &lexicon), out.is_some()),
            )
        }
        SourceKind::Drugbank => {
            let records =
                ingest::parse_drugbank(reader).map_err(|e| Failure::parse(e.to_string()))?;
            (
                "drugbank",
                summarise(ingest::clean_drugbank(records), out.is_some()),
            )
        }
        SourceKind::Pubchem => {
            let records =
                ingest::parse_pubchem(reader).map_err(|e| Failure::parse(e.to_string()))?;
            (
                "pubchem",
                summarise(ingest::clean_pubchem(records), out.is_some()),
            )
        }
    };

    if let (Some(path), Some(jsonl)) = (out, output) {
        write_file(path, jsonl.as_bytes())?;
    }
    let total_dropped: usize = dropped.iter().map(|(_, n)| n).sum();
    println!("{label}: kept {kept}, dropped {total_dropped}");
    for (reason, count) in dropped {
        println!("  {}: {count}", format!("{reason:?}").to_lowercase());
    }
    Ok(())
}

fn cmd_map(report_path: &Path, common: &CommonOpts) -> Result<(), Failure> {
    let (output, _) = run_pipeline(common)?;
    let json = serde_json::json!({
        "report": output.report,
        "results": output.results,
    });
    write_file(
        report_path,
        serde_json::to_string_pretty(&json).unwrap().as_bytes(),
    )?;
    print!("{}", report::render_mapping_report(&output.report));
    Ok(())
}

fn cmd_build(out: &Path, common: &CommonOpts) -> Result<(), Failure> {
    let (output, _) = run_pipeline(common)?;
    let nquads = rdfio::serialize_nquads(&output.store);
    write_file(out, nquads.as_bytes())?;
    let (invalid, withdrawn, duplicate) = output.drop_counts();
    eprintln!(
        "ingested {} products ({invalid} invalid, {withdrawn} withdrawn, {duplicate} duplicate dropped); \
         {} mapping subjects; {} quads -> {}",
        output.products.len() + invalid + withdrawn + duplicate,
        output.report.subjects,
        output.store.len(),
        out.display(),
    );
    Ok(())
}

fn cmd_export(input: &Path, format: ExportFormat, out: &Path) -> Result<(), Failure> {
    let text =
        fs::read_to_string(input).map_err(|e| Failure::io(format!("{}: {e}", input.display())))?;
    let store = rdfio::parse_nquads(&text).map_err(|e| Failure::parse(e.to_string()))?;
    let serialized = match format {
        ExportFormat::Nquads => rdfio::serialize_nquads(&store),
        ExportFormat::Ntriples => rdfio::serialize_ntriples(&store),
    };
    write_file(out, serialized.as_bytes())
}

fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, Failure> {
    let mut map = BTreeMap::new();
    for param in params {
        let (name, iri) = param
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("bad --param {param:?}, expected NAME=IRI")))?;
        map.insert(name.to_string(), iri.to_string());
    }
    Ok(map)
}

fn cmd_query(
    file: &Path,
    params: &[String],
    graph: &Option<PathBuf>,
    common: &CommonOpts,
) -> Result<(), Failure> {
    let template =
        fs::read_to_string(file).map_err(|e| Failure::io(format!("{}: {e}", file.display())))?;
    let text = query::substitute_params(&template, &parse_params(params)?);
    let plan = query::parse_query(&text).map_err(|e| Failure::parse(e.to_string()))?;
    let store = load_store(graph, common)?;
    let table = query::evaluate(&plan, &store).map_err(|e| Failure::data(e.to_string()))?;
    print!("{}", table.to_tsv());
    Ok(())
}

fn cmd_cq_run(
    reference_path: &Path,
    report_path: Option<&Path>,
    graph: &Option<PathBuf>,
    common: &CommonOpts,
) -> Result<(), Failure> {
    let text = fs::read_to_string(reference_path)
        .map_err(|e| Failure::io(format!("{}: {e}", reference_path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::parse(e.to_string()))?;
    let references: Vec<CqReference> = serde_json::from_value(value["cqs"].clone())
        .map_err(|e| Failure::parse(format!("bad reference file: {e}")))?;
    let base = reference_path.parent().unwrap_or(Path::new("."));

    let store = load_store(graph, common)?;
    let mut outcomes = Vec::new();
    for reference in &references {
        let template_path = base.join(&reference.template);
        let template = fs::read_to_string(&template_path)
            .map_err(|e| Failure::io(format!("{}: {e}", template_path.display())))?;
        let outcome = query::run_cq(&template, reference, &store)
            .map_err(|e| Failure::data(format!("{}: {e}", reference.cq_id)))?;
        outcomes.push(outcome);
    }

    println!("{:<5} {:>7} {:>9}  outcome", "CQ", "manual", "returned");
    for outcome in &outcomes {
        println!(
            "{:<5} {:>7} {:>9}  {}",
            outcome.cq_id,
            outcome.manual_entries,
            outcome.returned.len(),
            outcome.status.label()
        );
    }
    if let Some(path) = report_path {
        let json = serde_json::json!({ "outcomes": outcomes });
        write_file(
            path,
            serde_json::to_string_pretty(&json).unwrap().as_bytes(),
        )?;
    }
    Ok(())
}

fn cmd_stats(
    out: Option<&Path>,
    graph: &Option<PathBuf>,
    common: &CommonOpts,
) -> Result<(), Failure> {
    let store = load_store(graph, common)?;
    let doc = report::kg_stats(&store);
    print!("{}", report::render_stats_text(&doc));
    if let Some(path) = out {
        write_file(path, serde_json::to_string_pretty(&doc).unwrap().as_bytes())?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Ingest {
            source,
            input,
            out,
            common,
        } => cmd_ingest(source, &input, out.as_deref(), &common),
        Command::Map { report, common } => cmd_map(&report, &common),
        Command::Build { out, common } => cmd_build(&out, &common),
        Command::Export { input, format, out } => cmd_export(&input, format, &out),
        Command::Query {
            file,
            params,
            graph,
            common,
        } => cmd_query(&file, &params, &graph, &common),
        Command::Cq { command } => match command {
            CqCommand::Run {
                reference,
                report,
                graph,
                common,
            } => cmd_cq_run(&reference, report.as_deref(), &graph, &common),
        },
        Command::Stats { out, graph, common } => cmd_stats(out.as_deref(), &graph, &common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let mut stderr = std::io::stderr().lock();
            let _ = writeln!(stderr, "error[{}]: {}", failure.code, failure.message);
            ExitCode::from(failure.exit)
        }
    }
}
