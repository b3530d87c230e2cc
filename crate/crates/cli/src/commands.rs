//! Subcommand implementations. Stages talk to each other only through the
//! JSONL / JSON files they read and write.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use corpusqc::curate::{self, CuratedPair, RejectRecord};
use corpusqc::dataset::{self, DatasetRecord, ManifestMeta, Variant};
use corpusqc::ids::FuncId;
use corpusqc::ingest::{self, IngestReject, RawFunction};
use corpusqc::jsonl::{self, JsonlReader, JsonlWriter};
use corpusqc::metrics::{self, GenerationRecord, ModelSummary, PassVerdict, ScoreRow};
use corpusqc::qualscan::{self, Registry, ScanVerdict, Severity, Status};
use corpusqc::report::{self, BreakdownAccumulator, Format};
use corpusqc::stats::{self, Comparison, ComparisonResult, PairedOutcomes, PairedScores, Treatments};

use crate::config::PipelineConfig;
use crate::{BuildDatasetArgs, CompareArgs, CurateArgs, IngestArgs, Outcome, ReportArgs, ScanArgs, ScoreArgs, VariantArg};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn or_default(path: Option<PathBuf>, cfg: &PipelineConfig, name: &str) -> PathBuf {
    path.unwrap_or_else(|| cfg.out_dir.join(name))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn summary_line<T: Serialize>(stage: &str, value: &T) {
    eprintln!("{stage}: {}", serde_json::to_string(value).expect("summary serializes"));
}

pub fn ingest(cfg: &PipelineConfig, a: IngestArgs) -> anyhow::Result<Outcome> {
    let corpora = if a.corpus.is_empty() { cfg.corpus.clone() } else { a.corpus };
    ensure!(!corpora.is_empty(), "no corpus given (use --corpus or `corpus` in the config)");
    let mut files = Vec::new();
    for root in &corpora {
        let found = ingest::discover(root)?;
        let prefix = match (corpora.len() > 1, root.file_name()) {
            (true, Some(name)) => format!("{}/", name.to_string_lossy()),
            _ => String::new(),
        };
        files.extend(found.into_iter().map(|(p, rel)| (p, format!("{prefix}{rel}"))));
    }
    let out = or_default(a.out, cfg, "functions.jsonl");
    let rejects_path = or_default(a.rejects, cfg, "ingest_rejects.jsonl");
    let mut w = JsonlWriter::create(&out)?;
    let mut rw = JsonlWriter::create(&rejects_path)?;
    ingest::ingest_streaming(&files, cfg.chunk_size, |outcome| -> anyhow::Result<()> {
        for f in &outcome.functions {
            w.write::<RawFunction>(f)?;
        }
        if let Some(r) = &outcome.reject {
            rw.write::<IngestReject>(r)?;
        }
        Ok(())
    })?;
    let functions = w.finish()?;
    let rejected = rw.finish()?;
    summary_line("ingest", &serde_json::json!({"files": files.len(), "functions": functions, "rejected_files": rejected}));
    Ok(Outcome::Ok)
}

pub fn curate(cfg: &PipelineConfig, a: CurateArgs) -> anyhow::Result<Outcome> {
    let input = or_default(a.input, cfg, "functions.jsonl");
    let mut w = JsonlWriter::create(&or_default(a.out, cfg, "pairs.jsonl"))?;
    let mut rw = JsonlWriter::create(&or_default(a.rejects, cfg, "curate_rejects.jsonl"))?;
    let mut stages: BTreeMap<&'static str, usize> = BTreeMap::new();
    jsonl::for_each_chunk::<RawFunction, anyhow::Error>(&input, cfg.chunk_size, |chunk| {
        let (pairs, rejects) = curate::curate(&chunk, &cfg.curate);
        for p in &pairs {
            w.write::<CuratedPair>(p)?;
        }
        for r in &rejects {
            *stages.entry(r.stage.as_str()).or_default() += 1;
            rw.write::<RejectRecord>(r)?;
        }
        Ok(())
    })?;
    let kept = w.finish()?;
    let rejected = rw.finish()?;
    summary_line("curate", &serde_json::json!({"pairs": kept, "rejected": rejected, "by_stage": stages}));
    Ok(Outcome::Ok)
}

/// Anything with an id and code: curated pairs, dataset records, generations.
#[derive(Debug, Deserialize)]
struct ScanInput {
    func_id: FuncId,
    #[serde(alias = "completion")]
    code: String,
    #[serde(default)]
    model_id: Option<String>,
}

/// A verdict, tagged with the model that produced the code when known.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_id: Option<String>,
    #[serde(flatten)]
    pub verdict: ScanVerdict,
}

fn registry(cfg: &PipelineConfig, extra: &[PathBuf], no_builtin: bool) -> anyhow::Result<Registry> {
    let paths: Vec<&PathBuf> = cfg.rules.iter().chain(extra).collect();
    Ok(Registry::load(&paths, cfg.builtin_rules && !no_builtin)?)
}

pub fn scan(cfg: &PipelineConfig, a: ScanArgs) -> anyhow::Result<Outcome> {
    let reg = registry(cfg, &a.rules, a.no_builtin)?;
    let input = or_default(a.input, cfg, "pairs.jsonl");
    let mut w = JsonlWriter::create(&or_default(a.out, cfg, "verdicts.jsonl"))?;
    let mut status: BTreeMap<Status, usize> = BTreeMap::new();
    let mut findings = 0usize;
    let mut worst: Option<Severity> = None;
    jsonl::for_each_chunk::<ScanInput, anyhow::Error>(&input, cfg.chunk_size, |chunk| {
        let verdicts: Vec<VerdictRecord> = chunk
            .into_par_iter()
            .map(|r| VerdictRecord { model_id: r.model_id, verdict: qualscan::scan_code(r.func_id, &r.code, &reg) })
            .collect();
        for v in &verdicts {
            *status.entry(v.verdict.status).or_default() += 1;
            findings += v.verdict.findings.len();
            worst = worst.max(v.verdict.max_severity());
            w.write(v)?;
        }
        Ok(())
    })?;
    w.finish()?;
    summary_line("scan", &serde_json::json!({"rules": reg.len(), "status": status, "findings": findings}));
    match (a.gate, worst) {
        (Some(gate), Some(w)) if w >= gate => {
            eprintln!("scan: gate failed: highest severity {w} reaches the {gate} gate");
            Ok(Outcome::GateFailed)
        }
        _ => Ok(Outcome::Ok),
    }
}

pub fn build_dataset(cfg: &PipelineConfig, a: BuildDatasetArgs) -> anyhow::Result<Outcome> {
    let pairs_path = or_default(a.pairs, cfg, "pairs.jsonl");
    let verdicts_path = or_default(a.verdicts, cfg, "verdicts.jsonl");
    let dir = or_default(a.dataset_dir, cfg, "dataset");
    let seed = a.seed.unwrap_or(cfg.seed);

    // Byte-identical source files yield identical ids; keep the first copy.
    let mut seen = HashSet::new();
    let mut pairs: Vec<CuratedPair> = Vec::new();
    let mut duplicates = 0usize;
    for p in JsonlReader::<CuratedPair>::open(&pairs_path)? {
        let p = p?;
        if seen.insert(p.func_id) {
            pairs.push(p);
        } else {
            duplicates += 1;
        }
    }
    let mut verdicts: HashMap<FuncId, Status> = HashMap::with_capacity(pairs.len());
    for v in JsonlReader::<VerdictRecord>::open(&verdicts_path)? {
        let v = v?.verdict;
        verdicts.insert(v.func_id, v.status);
    }
    let ids: Vec<FuncId> = pairs.iter().map(|p| p.func_id).collect();
    let plan = dataset::split(&ids, seed)?;
    let mut assignments = dataset::assignments(&plan, &verdicts)?;
    assignments.sort_by_key(|x| x.func_id);
    jsonl::write_all(&dir.join("assignments.jsonl"), &assignments)?;

    let meta = ManifestMeta { seed, thresholds: cfg.curate.clone(), tool_version: TOOL_VERSION.to_string() };
    let variants: &[Variant] = match a.variant {
        VariantArg::Full => &[Variant::Full],
        VariantArg::Cleaned => &[Variant::Cleaned],
        VariantArg::Both => &[Variant::Full, Variant::Cleaned],
    };
    let mut counts = BTreeMap::new();
    for &v in variants {
        let manifest = dataset::emit(&pairs, &assignments, v, &dir, &meta)?;
        counts.insert(v.as_str(), manifest.counts);
    }
    summary_line("build-dataset", &serde_json::json!({"pairs": pairs.len(), "duplicates_dropped": duplicates, "counts": counts}));
    Ok(Outcome::Ok)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PassRecord {
    model_id: String,
    func_id: String,
    passed: bool,
}

fn pass_verdicts(path: &Path) -> anyhow::Result<BTreeMap<String, Vec<PassVerdict>>> {
    let mut by_model: BTreeMap<String, Vec<PassVerdict>> = BTreeMap::new();
    for r in JsonlReader::<PassRecord>::open(path)? {
        let r = r?;
        by_model.entry(r.model_id).or_default().push(PassVerdict { func_id: r.func_id, passed: r.passed });
    }
    Ok(by_model)
}

pub fn score(cfg: &PipelineConfig, a: ScoreArgs) -> anyhow::Result<Outcome> {
    let k = a.k.unwrap_or(cfg.bleu_k);
    let max_n = a.max_n.unwrap_or(cfg.bleu_max_n);
    ensure!(max_n > 0, "--max-n must be positive");
    let generations: Vec<GenerationRecord> = jsonl::read_all(&a.generations)?;
    let mut targets = HashMap::new();
    for r in JsonlReader::<DatasetRecord>::open(&a.targets)? {
        let r = r?;
        targets.insert(r.func_id, r.completion);
    }
    let shared = match &a.train {
        Some(path) if k > 0 => {
            let mut corpus = Vec::new();
            for r in JsonlReader::<DatasetRecord>::open(path)? {
                corpus.push(metrics::code_tokens(&r?.completion));
            }
            metrics::trivially_shared_ngrams(&corpus, k, max_n)
        }
        _ => metrics::SharedNgrams::empty(),
    };
    let reg = if a.scan { Some(registry(cfg, &[], false)?) } else { None };
    let rows = metrics::score_generations(&generations, &targets, &shared, max_n, reg.as_ref())?;
    let mut pass_rates = HashMap::new();
    if let Some(path) = &a.passes {
        for (model, verdicts) in pass_verdicts(path)? {
            let rate = metrics::pass_rate(&verdicts).with_context(|| format!("pass verdicts of {model}"))?;
            pass_rates.insert(model, rate);
        }
    }
    jsonl::write_all(&or_default(a.out, cfg, "scores.jsonl"), &rows)?;
    let summary = metrics::summarize(&rows, &pass_rates);
    write_json(&or_default(a.summary, cfg, "score_summary.json"), &summary)?;
    summary_line("score", &serde_json::json!({"rows": rows.len(), "models": summary.len(), "shared_ngrams": shared.len()}));
    Ok(Outcome::Ok)
}

type ByModel<T> = BTreeMap<String, BTreeMap<String, T>>;

fn pairwise<T: Copy>(
    by_model: &ByModel<T>,
    make: impl Fn(&BTreeMap<String, T>, &BTreeMap<String, T>) -> Result<Treatments, stats::StatsError>,
) -> anyhow::Result<Vec<Comparison>> {
    let models: Vec<&String> = by_model.keys().collect();
    let mut family = Vec::new();
    for i in 0..models.len() {
        for j in i + 1..models.len() {
            let (ma, mb) = (models[i], models[j]);
            let data = make(&by_model[ma], &by_model[mb]).with_context(|| format!("comparing {ma} with {mb}"))?;
            family.push(Comparison { label: format!("{ma} vs {mb}"), data });
        }
    }
    Ok(family)
}

pub fn compare(cfg: &PipelineConfig, a: CompareArgs) -> anyhow::Result<Outcome> {
    let rows: Vec<ScoreRow> = jsonl::read_all(&or_default(a.scores, cfg, "scores.jsonl"))?;
    let mut em: ByModel<bool> = BTreeMap::new();
    let mut bleu: ByModel<f64> = BTreeMap::new();
    let mut low: ByModel<bool> = BTreeMap::new();
    let mut all_scanned = true;
    for r in &rows {
        let id = r.func_id.to_string();
        em.entry(r.model_id.clone()).or_default().insert(id.clone(), r.exact_match);
        bleu.entry(r.model_id.clone()).or_default().insert(id.clone(), r.crystal_bleu);
        match &r.verdict {
            Some(v) => {
                low.entry(r.model_id.clone()).or_default().insert(id, v.status == Status::LowQuality);
            }
            None => all_scanned = false,
        }
    }
    ensure!(em.len() >= 2, "need scores for at least two models, found {}", em.len());
    let binary = |x: &BTreeMap<String, bool>, y: &BTreeMap<String, bool>| PairedOutcomes::from_maps(x, y).map(Treatments::Binary);
    let mut families: BTreeMap<&str, Vec<Comparison>> = BTreeMap::new();
    families.insert("exact_match", pairwise(&em, binary)?);
    families.insert(
        "crystal_bleu",
        pairwise(&bleu, |x, y| PairedScores::from_maps(x, y).map(Treatments::Continuous))?,
    );
    if all_scanned {
        families.insert("low_quality", pairwise(&low, binary)?);
    }
    if let Some(path) = &a.passes {
        let pass: ByModel<bool> = pass_verdicts(path)?
            .into_iter()
            .map(|(m, vs)| (m, vs.into_iter().map(|v| (v.func_id, v.passed)).collect()))
            .collect();
        if pass.len() >= 2 {
            families.insert("pass", pairwise(&pass, binary)?);
        }
    }
    let mut results: BTreeMap<&str, Vec<ComparisonResult>> = BTreeMap::new();
    for (name, family) in families {
        results.insert(name, stats::compare_models(&family)?);
    }
    write_json(&or_default(a.out, cfg, "comparison.json"), &results)?;
    summary_line("compare", &serde_json::json!({"families": results.keys().collect::<Vec<_>>(), "tests": results.values().map(Vec::len).sum::<usize>()}));
    Ok(Outcome::Ok)
}

fn run_key(record: &VerdictRecord, path: &Path) -> String {
    record
        .model_id
        .clone()
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
}

pub fn report(cfg: &PipelineConfig, a: ReportArgs) -> anyhow::Result<Outcome> {
    let top_k = a.top_k.unwrap_or(cfg.top_k);
    let files = if a.verdicts.is_empty() { vec![cfg.out_dir.join("verdicts.jsonl")] } else { a.verdicts };
    let dir = or_default(a.report_dir, cfg, "report");

    let mut acc = BreakdownAccumulator::new();
    let mut runs: HashSet<String> = HashSet::new();
    for path in &files {
        for r in JsonlReader::<VerdictRecord>::open(path)? {
            let r = r?;
            runs.insert(run_key(&r, path));
            acc.add(&r.verdict);
        }
    }
    let b = acc.finish(top_k);
    write_json(&dir.join("breakdown.json"), &b)?;
    fs::write(dir.join("sankey.json"), report::render_breakdown(&b, Format::Sankey))?;
    let mut md = report::render_breakdown(&b, Format::Markdown);

    if runs.len() > 1 {
        let mut by_run: BTreeMap<String, Vec<ScanVerdict>> = BTreeMap::new();
        for path in &files {
            for r in JsonlReader::<VerdictRecord>::open(path)? {
                let r = r?;
                by_run.entry(run_key(&r, path)).or_default().push(r.verdict);
            }
        }
        let table = report::comparison_table(&by_run)?;
        write_json(&dir.join("quality_comparison.json"), &table)?;
        md.push_str("\n## Quality by model\n\n");
        md.push_str(&report::comparison_markdown(&table));
    }
    if let Some(path) = &a.score_summary {
        let summary: Vec<ModelSummary> = read_json(path)?;
        md.push_str("\n## Generation scores\n\n");
        md.push_str(&report::scores_markdown(&summary));
    }
    if let Some(path) = &a.comparison {
        let results: BTreeMap<String, Vec<ComparisonResult>> = read_json(path)?;
        for (family, rows) in &results {
            md.push_str(&format!("\n## Paired tests: {family}\n\n"));
            md.push_str(&report::tests_markdown(rows));
        }
    }
    fs::write(dir.join("report.md"), md)?;
    if b.total_functions == 0 {
        bail!("no verdicts found in {}", files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", "));
    }
    summary_line("report", &serde_json::json!({"functions": b.total_functions, "findings": b.total_findings, "issue_density": b.issue_density}));
    Ok(Outcome::Ok)
}
