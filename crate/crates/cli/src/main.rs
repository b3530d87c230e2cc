//! `corpusqc`: corpus curation, quality scanning, dataset assembly and
//! model comparison as file-connected subcommands.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corpusqc::qualscan::Severity;

use config::PipelineConfig;

#[derive(Debug, Parser)]
#[command(name = "corpusqc", version, about = "Curate code corpora, gate them on quality, and compare model generations")]
struct Cli {
    /// Config file (.toml or .json).
    #[arg(long, global = true, env = "CORPUSQC_CONFIG")]
    config: Option<PathBuf>,

    /// Worker threads (overrides the config).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output directory for default artifact paths (overrides the config).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract functions from Python sources.
    Ingest(IngestArgs),
    /// Clean docstrings and code into description/code pairs.
    Curate(CurateArgs),
    /// Check syntax and run quality rules.
    Scan(ScanArgs),
    /// Split pairs and write the full and cleaned datasets.
    BuildDataset(BuildDatasetArgs),
    /// Score generations against reference code.
    Score(ScoreArgs),
    /// Paired statistical comparison of models.
    Compare(CompareArgs),
    /// Issue breakdowns, Sankey data and comparison tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Directory, single .py file, or manifest listing files (repeatable).
    #[arg(long)]
    pub corpus: Vec<PathBuf>,
    /// Function records [default: <out-dir>/functions.jsonl].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Files that could not be read or parsed [default: <out-dir>/ingest_rejects.jsonl].
    #[arg(long)]
    pub rejects: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurateArgs {
    /// Function records [default: <out-dir>/functions.jsonl].
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Curated pairs [default: <out-dir>/pairs.jsonl].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Rejected functions with their stage [default: <out-dir>/curate_rejects.jsonl].
    #[arg(long)]
    pub rejects: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Records with `func_id` and `code` or `completion` [default: <out-dir>/pairs.jsonl].
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Verdicts [default: <out-dir>/verdicts.jsonl].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 2 when any finding reaches this severity.
    #[arg(long, value_parser = parse_severity)]
    pub gate: Option<Severity>,
    /// Extra rule files (YAML or JSON, repeatable).
    #[arg(long)]
    pub rules: Vec<PathBuf>,
    /// Use only the rules given with --rules.
    #[arg(long)]
    pub no_builtin: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Full,
    Cleaned,
    Both,
}

#[derive(Debug, Args)]
pub struct BuildDatasetArgs {
    /// Curated pairs [default: <out-dir>/pairs.jsonl].
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Verdicts for the pairs [default: <out-dir>/verdicts.jsonl].
    #[arg(long)]
    pub verdicts: Option<PathBuf>,
    /// Dataset directory [default: <out-dir>/dataset].
    #[arg(long)]
    pub dataset_dir: Option<PathBuf>,
    /// Shuffle seed (overrides the config).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    pub variant: VariantArg,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Generation records: func_id, model_id, completion.
    #[arg(long)]
    pub generations: PathBuf,
    /// Reference records (dataset test split).
    #[arg(long)]
    pub targets: PathBuf,
    /// Corpus for trivially shared n-grams (dataset train split).
    #[arg(long)]
    pub train: Option<PathBuf>,
    /// Pass verdicts: model_id, func_id, passed.
    #[arg(long)]
    pub passes: Option<PathBuf>,
    /// Also scan every completion with the rule set.
    #[arg(long)]
    pub scan: bool,
    /// Number of shared n-grams to ignore (overrides the config).
    #[arg(long)]
    pub k: Option<usize>,
    /// Highest n-gram order (overrides the config).
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Per-generation scores [default: <out-dir>/scores.jsonl].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-model summary [default: <out-dir>/score_summary.json].
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Scores from `score` [default: <out-dir>/scores.jsonl].
    #[arg(long)]
    pub scores: Option<PathBuf>,
    /// Pass verdicts: model_id, func_id, passed.
    #[arg(long)]
    pub passes: Option<PathBuf>,
    /// Test results [default: <out-dir>/comparison.json].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Verdict files (repeatable). Records carrying a model_id are grouped by model.
    #[arg(long)]
    pub verdicts: Vec<PathBuf>,
    /// Rules shown per category (overrides the config).
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Per-model summary from `score`, added to the Markdown report.
    #[arg(long)]
    pub score_summary: Option<PathBuf>,
    /// Test results from `compare`, added to the Markdown report.
    #[arg(long)]
    pub comparison: Option<PathBuf>,
    /// Report directory [default: <out-dir>/report].
    #[arg(long)]
    pub report_dir: Option<PathBuf>,
}

fn parse_severity(s: &str) -> Result<Severity, String> {
    s.parse::<Severity>().map_err(|e| e.to_string())
}

/// Outcome of a subcommand that ran to completion.
pub enum Outcome {
    Ok,
    GateFailed,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let mut cfg = PipelineConfig::load(cli.config.as_deref(), std::env::vars())?;
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(d) = cli.out_dir {
        cfg.out_dir = d;
    }
    cfg.validate()?;
    let threads = cfg.threads.unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    match cli.command {
        Command::Ingest(a) => commands::ingest(&cfg, a),
        Command::Curate(a) => commands::curate(&cfg, a),
        Command::Scan(a) => commands::scan(&cfg, a),
        Command::BuildDataset(a) => commands::build_dataset(&cfg, a),
        Command::Score(a) => commands::score(&cfg, a),
        Command::Compare(a) => commands::compare(&cfg, a),
        Command::Report(a) => commands::report(&cfg, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::GateFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
