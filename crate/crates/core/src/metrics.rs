//! Generation scoring: exact match, CrystalBLEU and pass@1.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::{self, FormatOptions};
use crate::ids::FuncId;
use crate::qualscan::{self, Registry, ScanVerdict};

pub const DEFAULT_MAX_N: usize = 4;
pub const DEFAULT_K: usize = 500;
/// Stand-in match count for orders with no matched n-gram.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("prediction has no n-grams left after removing shared n-grams (defined score {score})")]
    EmptyAfterFiltering { score: f64 },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("no verdicts to aggregate")]
    NoItems,
    #[error("no target for func_id {0}")]
    MissingTarget(FuncId),
}

impl MetricsError {
    /// Score to use when a comparison is degenerate.
    pub fn defined_score(&self) -> Option<f64> {
        match self {
            MetricsError::EmptyAfterFiltering { score } => Some(*score),
            _ => None,
        }
    }
}

fn trailing_normalized(s: &str) -> String {
    let lines: Vec<&str> = s.lines().map(str::trim_end).collect();
    let mut end = lines.len();
    while end > 0 && lines[end - 1].is_empty() {
        end -= 1;
    }
    lines[..end].join("\n")
}

/// Canonical form used for comparisons: formatted code, or the text with
/// trailing whitespace removed when it cannot be formatted.
pub fn canonical(code: &str) -> String {
    format::format_code(code, FormatOptions::default()).unwrap_or_else(|_| trailing_normalized(code))
}

pub fn exact_match(prediction: &str, target: &str) -> bool {
    canonical(prediction) == canonical(target)
}

/// Tokens for n-gram statistics: lexer tokens of the canonical form, or a
/// whitespace split when the code does not lex.
pub fn code_tokens(code: &str) -> Vec<String> {
    format::canonical_tokens(code)
        .unwrap_or_else(|_| code.split_whitespace().map(str::to_string).collect())
}

/// Set of n-grams, each stored as its tokens.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SharedNgrams {
    set: HashSet<Vec<String>>,
}

impl SharedNgrams {
    pub fn empty() -> Self {
        SharedNgrams::default()
    }

    pub fn from_ngrams(ngrams: impl IntoIterator<Item = Vec<String>>) -> Self {
        SharedNgrams { set: ngrams.into_iter().collect() }
    }

    pub fn contains(&self, ngram: &[String]) -> bool {
        self.set.contains(ngram)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// N-grams in lexicographic order.
    pub fn sorted(&self) -> Vec<Vec<String>> {
        let mut v: Vec<_> = self.set.iter().cloned().collect();
        v.sort();
        v
    }
}

/// The `k` most frequent n-grams of orders `1..=max_n` pooled over the
/// corpus, ties broken by lexicographic token order.
pub fn trivially_shared_ngrams(corpus: &[Vec<String>], k: usize, max_n: usize) -> SharedNgrams {
    if k == 0 {
        return SharedNgrams::empty();
    }
    let mut counts: HashMap<&[String], u64> = HashMap::new();
    for seq in corpus {
        for n in 1..=max_n.min(seq.len()) {
            for w in seq.windows(n) {
                *counts.entry(w).or_insert(0) += 1;
            }
        }
    }
    let mut ranked: Vec<(&[String], u64)> = counts.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    SharedNgrams::from_ngrams(ranked.into_iter().take(k).map(|(g, _)| g.to_vec()))
}

fn ngram_counts<'a>(seq: &'a [String], n: usize, shared: &SharedNgrams) -> HashMap<&'a [String], usize> {
    let mut m = HashMap::new();
    if seq.len() >= n {
        for w in seq.windows(n) {
            if !shared.contains(w) {
                *m.entry(w).or_insert(0) += 1;
            }
        }
    }
    m
}

/// BLEU of one prediction against one target after removing `shared`
/// n-grams from both. Orders for which the prediction has no n-grams left
/// are left out of the geometric mean; a zero match count is replaced by
/// [`EPSILON`]. The brevity penalty uses the remaining unigram counts.
pub fn crystal_bleu(
    prediction: &[String],
    target: &[String],
    shared: &SharedNgrams,
    max_n: usize,
) -> Result<f64, MetricsError> {
    let pred_uni: usize = ngram_counts(prediction, 1, shared).values().sum();
    let tgt_uni: usize = ngram_counts(target, 1, shared).values().sum();
    let mut log_sum = 0.0;
    let mut orders = 0usize;
    for n in 1..=max_n.max(1) {
        let pred = ngram_counts(prediction, n, shared);
        let total: usize = pred.values().sum();
        if total == 0 {
            continue;
        }
        let tgt = ngram_counts(target, n, shared);
        let matched: usize = pred.iter().map(|(g, c)| (*c).min(tgt.get(g).copied().unwrap_or(0))).sum();
        let p = if matched == 0 { EPSILON } else { matched as f64 } / total as f64;
        log_sum += p.ln();
        orders += 1;
    }
    if orders == 0 {
        let score = if tgt_uni == 0 && target_has_no_ngrams(target, shared, max_n) { 1.0 } else { 0.0 };
        return Err(MetricsError::EmptyAfterFiltering { score });
    }
    let bp = if pred_uni == 0 {
        if tgt_uni > 0 { 0.0 } else { 1.0 }
    } else if pred_uni > tgt_uni {
        1.0
    } else {
        (1.0 - tgt_uni as f64 / pred_uni as f64).exp()
    };
    Ok(bp * (log_sum / orders as f64).exp())
}

fn target_has_no_ngrams(target: &[String], shared: &SharedNgrams, max_n: usize) -> bool {
    (1..=max_n.max(1)).all(|n| ngram_counts(target, n, shared).is_empty())
}

/// [`crystal_bleu`] with degenerate cases mapped to their defined score.
pub fn crystal_bleu_score(prediction: &[String], target: &[String], shared: &SharedNgrams, max_n: usize) -> f64 {
    crystal_bleu(prediction, target, shared, max_n)
        .unwrap_or_else(|e| e.defined_score().expect("only the empty case fails"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassVerdict {
    pub func_id: String,
    pub passed: bool,
}

/// Fraction of items whose single sample passed.
pub fn pass_rate(verdicts: &[PassVerdict]) -> Result<f64, MetricsError> {
    if verdicts.is_empty() {
        return Err(MetricsError::NoItems);
    }
    let mut seen = HashSet::with_capacity(verdicts.len());
    for v in verdicts {
        if !seen.insert(v.func_id.as_str()) {
            return Err(MetricsError::DuplicateId(v.func_id.clone()));
        }
    }
    Ok(verdicts.iter().filter(|v| v.passed).count() as f64 / verdicts.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub func_id: FuncId,
    pub model_id: String,
    pub completion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub func_id: FuncId,
    pub model_id: String,
    pub exact_match: bool,
    pub crystal_bleu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ScanVerdict>,
}

/// Score generations against targets, scanning completions when a registry
/// is given. Rows come back sorted by (model_id, func_id).
pub fn score_generations(
    generations: &[GenerationRecord],
    targets: &HashMap<FuncId, String>,
    shared: &SharedNgrams,
    max_n: usize,
    registry: Option<&Registry>,
) -> Result<Vec<ScoreRow>, MetricsError> {
    let mut seen = HashSet::with_capacity(generations.len());
    for g in generations {
        if !seen.insert((g.func_id, g.model_id.as_str())) {
            return Err(MetricsError::DuplicateId(format!("{}/{}", g.model_id, g.func_id)));
        }
    }
    let mut rows = generations
        .par_iter()
        .map(|g| {
            let target = targets.get(&g.func_id).ok_or(MetricsError::MissingTarget(g.func_id))?;
            let em = exact_match(&g.completion, target);
            let bleu = crystal_bleu_score(&code_tokens(&g.completion), &code_tokens(target), shared, max_n);
            Ok(ScoreRow {
                func_id: g.func_id,
                model_id: g.model_id.clone(),
                exact_match: em,
                crystal_bleu: bleu,
                verdict: registry.map(|r| qualscan::scan_code(g.func_id, &g.completion, r)),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.model_id.cmp(&b.model_id).then(a.func_id.cmp(&b.func_id)));
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub model_id: String,
    pub n: usize,
    pub exact_match_rate: f64,
    pub crystal_bleu_mean: f64,
    pub crystal_bleu_median: f64,
    pub crystal_bleu_sd: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass_at_1: Option<f64>,
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Sample standard deviation (n - 1 denominator).
pub fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Per-model aggregates, sorted by model id.
pub fn summarize(rows: &[ScoreRow], pass_rates: &HashMap<String, f64>) -> Vec<ModelSummary> {
    let mut by_model: HashMap<&str, Vec<&ScoreRow>> = HashMap::new();
    for r in rows {
        by_model.entry(r.model_id.as_str()).or_default().push(r);
    }
    let mut out: Vec<ModelSummary> = by_model
        .into_iter()
        .map(|(model, rs)| {
            let bleu: Vec<f64> = rs.iter().map(|r| r.crystal_bleu).collect();
            ModelSummary {
                model_id: model.to_string(),
                n: rs.len(),
                exact_match_rate: rs.iter().filter(|r| r.exact_match).count() as f64 / rs.len() as f64,
                crystal_bleu_mean: mean(&bleu),
                crystal_bleu_median: median(&bleu),
                crystal_bleu_sd: sample_sd(&bleu),
                pass_at_1: pass_rates.get(model).copied(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.model_id.cmp(&b.model_id));
    out
}
