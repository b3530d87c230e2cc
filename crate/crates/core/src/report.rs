//! Aggregation of scan verdicts into breakdowns, per-model comparison
//! tables, and their Markdown / JSON / Sankey renderings.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ids::FuncId;
use crate::metrics::ModelSummary;
use crate::qualscan::{Category, ScanVerdict, Severity, Status};
use crate::stats::ComparisonResult;

pub const DEFAULT_TOP_K: usize = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("unsupported format {0:?}")]
    UnsupportedFormat(String),
    #[error("model runs cover different function ids: {0}")]
    MismatchedIds(String),
    #[error("duplicate func_id {func_id} in run {model}")]
    DuplicateId { model: String, func_id: FuncId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Json,
    Sankey,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            "sankey" => Ok(Format::Sankey),
            _ => Err(ReportError::UnsupportedFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CountShare {
    /// Number of findings.
    pub count: u64,
    /// Fraction of all findings.
    pub share: f64,
    /// Functions with at least one finding in this group.
    pub functions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule_id: String,
    pub severity: Severity,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueBreakdown {
    pub total_functions: u64,
    pub clean_count: u64,
    pub low_quality_count: u64,
    pub syntactically_incorrect_count: u64,
    pub total_findings: u64,
    pub issue_density: f64,
    pub per_category: BTreeMap<Category, CountShare>,
    pub per_severity: BTreeMap<Severity, CountShare>,
    /// Most frequent rules in each category, most frequent first.
    pub top_rules: BTreeMap<Category, Vec<RuleCount>>,
    /// Every rule seen, grouped by category, most frequent first.
    pub rules: BTreeMap<Category, Vec<RuleCount>>,
    pub top_k: usize,
}

/// Mergeable running totals; `finish` turns them into a breakdown.
#[derive(Debug, Clone, Default)]
pub struct BreakdownAccumulator {
    total: u64,
    clean: u64,
    low_quality: u64,
    incorrect: u64,
    findings: u64,
    category: HashMap<Category, (u64, u64)>,
    severity: HashMap<Severity, (u64, u64)>,
    rules: HashMap<(Category, String, Severity), u64>,
}

impl BreakdownAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: &ScanVerdict) {
        self.total += 1;
        match v.status {
            Status::Clean => self.clean += 1,
            Status::LowQuality => self.low_quality += 1,
            Status::SyntacticallyIncorrect => self.incorrect += 1,
        }
        let mut cats = BTreeSet::new();
        let mut sevs = BTreeSet::new();
        for f in &v.findings {
            self.findings += 1;
            self.category.entry(f.category).or_default().0 += 1;
            self.severity.entry(f.severity).or_default().0 += 1;
            *self.rules.entry((f.category, f.rule_id.clone(), f.severity)).or_default() += 1;
            cats.insert(f.category);
            sevs.insert(f.severity);
        }
        for c in cats {
            self.category.entry(c).or_default().1 += 1;
        }
        for s in sevs {
            self.severity.entry(s).or_default().1 += 1;
        }
    }

    pub fn merge(mut self, other: BreakdownAccumulator) -> Self {
        self.total += other.total;
        self.clean += other.clean;
        self.low_quality += other.low_quality;
        self.incorrect += other.incorrect;
        self.findings += other.findings;
        for (k, (a, b)) in other.category {
            let e = self.category.entry(k).or_default();
            e.0 += a;
            e.1 += b;
        }
        for (k, (a, b)) in other.severity {
            let e = self.severity.entry(k).or_default();
            e.0 += a;
            e.1 += b;
        }
        for (k, n) in other.rules {
            *self.rules.entry(k).or_default() += n;
        }
        self
    }

    pub fn finish(self, top_k: usize) -> IssueBreakdown {
        let total = self.findings;
        let share = |n: u64| if total == 0 { 0.0 } else { n as f64 / total as f64 };
        let per_category = Category::ALL
            .iter()
            .map(|&c| {
                let (count, functions) = self.category.get(&c).copied().unwrap_or_default();
                (c, CountShare { count, share: share(count), functions })
            })
            .collect();
        let per_severity = Severity::ALL
            .iter()
            .map(|&s| {
                let (count, functions) = self.severity.get(&s).copied().unwrap_or_default();
                (s, CountShare { count, share: share(count), functions })
            })
            .collect();
        let mut rules: BTreeMap<Category, Vec<RuleCount>> = BTreeMap::new();
        for ((cat, rule_id, severity), count) in self.rules {
            rules.entry(cat).or_default().push(RuleCount { rule_id, severity, count });
        }
        for list in rules.values_mut() {
            list.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.rule_id.cmp(&b.rule_id)).then(a.severity.cmp(&b.severity)));
        }
        let top_rules = rules.iter().map(|(c, l)| (*c, l.iter().take(top_k).cloned().collect())).collect();
        IssueBreakdown {
            total_functions: self.total,
            clean_count: self.clean,
            low_quality_count: self.low_quality,
            syntactically_incorrect_count: self.incorrect,
            total_findings: total,
            issue_density: if self.low_quality == 0 { 0.0 } else { total as f64 / self.low_quality as f64 },
            per_category,
            per_severity,
            top_rules,
            rules,
            top_k,
        }
    }
}

pub fn breakdown<'a>(verdicts: impl IntoIterator<Item = &'a ScanVerdict>, top_k: usize) -> IssueBreakdown {
    let mut acc = BreakdownAccumulator::new();
    for v in verdicts {
        acc.add(v);
    }
    acc.finish(top_k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub model_id: String,
    pub total_functions: u64,
    pub syntactically_incorrect: u64,
    pub low_quality: u64,
    pub pct_syntactically_incorrect: f64,
    pub pct_low_quality: f64,
    pub total_findings: u64,
    pub per_category: BTreeMap<Category, CountShare>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

/// One row per model; every run must cover the same function ids.
pub fn comparison_table(runs: &BTreeMap<String, Vec<ScanVerdict>>) -> Result<ComparisonTable, ReportError> {
    let mut reference: Option<(&str, BTreeSet<FuncId>)> = None;
    let mut rows = Vec::with_capacity(runs.len());
    for (model, verdicts) in runs {
        let mut ids = BTreeSet::new();
        for v in verdicts {
            if !ids.insert(v.func_id) {
                return Err(ReportError::DuplicateId { model: model.clone(), func_id: v.func_id });
            }
        }
        match &reference {
            None => reference = Some((model, ids)),
            Some((first, ref_ids)) if *ref_ids != ids => {
                let differ = ref_ids.symmetric_difference(&ids).count();
                return Err(ReportError::MismatchedIds(format!("{first} and {model} differ on {differ} ids")));
            }
            Some(_) => {}
        }
        let b = breakdown(verdicts, 0);
        let pct = |n: u64| if b.total_functions == 0 { 0.0 } else { 100.0 * n as f64 / b.total_functions as f64 };
        rows.push(ComparisonRow {
            model_id: model.clone(),
            total_functions: b.total_functions,
            syntactically_incorrect: b.syntactically_incorrect_count,
            low_quality: b.low_quality_count,
            pct_syntactically_incorrect: pct(b.syntactically_incorrect_count),
            pct_low_quality: pct(b.low_quality_count),
            total_findings: b.total_findings,
            per_category: b.per_category,
        });
    }
    Ok(ComparisonTable { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SankeyNode {
    pub id: String,
    pub label: String,
    pub layer: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SankeyLink {
    pub source: String,
    pub target: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sankey {
    pub nodes: Vec<SankeyNode>,
    pub links: Vec<SankeyLink>,
}

/// Flow data category -> rule -> severity. Rules past the top-k of their
/// category are pooled into an "other" node. With a single category the
/// category layer is dropped.
pub fn sankey(b: &IssueBreakdown) -> Sankey {
    let active: Vec<Category> = b.rules.keys().copied().collect();
    let with_categories = active.len() > 1;
    let mut nodes = Vec::new();
    let mut links = Vec::new();
    let mut severity_in: BTreeMap<Severity, u64> = BTreeMap::new();
    for cat in &active {
        let cat_id = format!("category:{cat}");
        let list = &b.rules[cat];
        if with_categories {
            let value = list.iter().map(|r| r.count).sum();
            nodes.push(SankeyNode { id: cat_id.clone(), label: cat.to_string(), layer: "category".into(), value });
        }
        let mut push_rule = |id: String, label: String, counts: BTreeMap<Severity, u64>| {
            let value = counts.values().sum();
            nodes.push(SankeyNode { id: id.clone(), label, layer: "rule".into(), value });
            if with_categories {
                links.push(SankeyLink { source: cat_id.clone(), target: id.clone(), value });
            }
            for (sev, n) in counts {
                *severity_in.entry(sev).or_default() += n;
                links.push(SankeyLink { source: id.clone(), target: format!("severity:{sev}"), value: n });
            }
        };
        for r in list.iter().take(b.top_k) {
            push_rule(format!("rule:{}/{}", cat, r.rule_id), r.rule_id.clone(), [(r.severity, r.count)].into());
        }
        let mut rest: BTreeMap<Severity, u64> = BTreeMap::new();
        for r in list.iter().skip(b.top_k) {
            *rest.entry(r.severity).or_default() += r.count;
        }
        if !rest.is_empty() {
            push_rule(format!("rule:{cat}/other"), "other".into(), rest);
        }
    }
    for (sev, value) in severity_in {
        nodes.push(SankeyNode { id: format!("severity:{sev}"), label: sev.to_string(), layer: "severity".into(), value });
    }
    Sankey { nodes, links }
}

fn pct2(x: f64) -> String {
    format!("{:.2}", 100.0 * x)
}

pub fn breakdown_markdown(b: &IssueBreakdown) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Quality issue breakdown\n");
    let _ = writeln!(s, "| metric | value |\n|---|---|");
    let _ = writeln!(s, "| functions | {} |", b.total_functions);
    let _ = writeln!(s, "| clean | {} |", b.clean_count);
    let _ = writeln!(s, "| low quality | {} |", b.low_quality_count);
    let _ = writeln!(s, "| syntactically incorrect | {} |", b.syntactically_incorrect_count);
    let _ = writeln!(s, "| findings | {} |", b.total_findings);
    let _ = writeln!(s, "| issue density | {:.3} |", b.issue_density);
    let _ = writeln!(s, "\n## Categories\n\n| category | findings | share (%) | functions |\n|---|---|---|---|");
    for (c, cs) in &b.per_category {
        let _ = writeln!(s, "| {c} | {} | {} | {} |", cs.count, pct2(cs.share), cs.functions);
    }
    let _ = writeln!(s, "\n## Severities\n\n| severity | findings | share (%) | functions |\n|---|---|---|---|");
    for (sev, cs) in b.per_severity.iter().rev() {
        let _ = writeln!(s, "| {sev} | {} | {} | {} |", cs.count, pct2(cs.share), cs.functions);
    }
    let _ = writeln!(s, "\n## Top {} rules per category", b.top_k);
    for (c, list) in &b.top_rules {
        let _ = writeln!(s, "\n### {c}\n\n| rule | severity | findings |\n|---|---|---|");
        for r in list {
            let _ = writeln!(s, "| {} | {} | {} |", r.rule_id, r.severity, r.count);
        }
    }
    s
}

pub fn comparison_markdown(t: &ComparisonTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| model | functions | syntactically incorrect | % | low quality | % | findings |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in &t.rows {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {:.2} | {} | {:.2} | {} |",
            r.model_id,
            r.total_functions,
            r.syntactically_incorrect,
            r.pct_syntactically_incorrect,
            r.low_quality,
            r.pct_low_quality,
            r.total_findings
        );
    }
    s
}

pub fn scores_markdown(rows: &[ModelSummary]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| model | n | pass@1 | EM (%) | CrystalBLEU mean | median | sd |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in rows {
        let pass = r.pass_at_1.map_or("-".to_string(), |p| format!("{p:.2}"));
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {:.4} | {:.4} | {:.4} |",
            r.model_id,
            r.n,
            pass,
            pct2(r.exact_match_rate),
            r.crystal_bleu_mean,
            r.crystal_bleu_median,
            r.crystal_bleu_sd
        );
    }
    s
}

pub fn tests_markdown(rows: &[ComparisonResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| comparison | test | statistic | p-value | adj. p-value | effect |");
    let _ = writeln!(s, "|---|---|---|---|---|---|");
    for r in rows {
        let t = &r.result;
        let adj = t.adjusted_p.map_or("-".to_string(), |p| format!("{p:.4}"));
        let effect = match t.effect_size.kind {
            crate::stats::EffectKind::OddsRatio => format!("OR {:.2}", t.effect_size.value),
            crate::stats::EffectKind::CliffsDelta => format!("|d| {:.3}", t.effect_size.value.abs()),
            crate::stats::EffectKind::None => "-".to_string(),
        };
        let _ = writeln!(s, "| {} | {} | {:.4} | {:.4} | {adj} | {effect} |", r.label, t.test_name, t.statistic, t.p_value);
    }
    s
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

pub fn render_breakdown(b: &IssueBreakdown, format: Format) -> String {
    match format {
        Format::Markdown => breakdown_markdown(b),
        Format::Json => to_json(b),
        Format::Sankey => to_json(&sankey(b)),
    }
}

pub fn render_comparison(t: &ComparisonTable, format: Format) -> Result<String, ReportError> {
    match format {
        Format::Markdown => Ok(comparison_markdown(t)),
        Format::Json => Ok(to_json(t)),
        Format::Sankey => Err(ReportError::UnsupportedFormat("sankey (comparison tables have no flow layout)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qualscan::Finding;

    fn finding(rule: &str, cat: Category, sev: Severity) -> Finding {
        Finding { rule_id: rule.into(), severity: sev, category: cat, lines: (1, 1), message: String::new(), cwe: None }
    }

    fn verdict(i: u128, findings: Vec<Finding>) -> ScanVerdict {
        let status = if findings.is_empty() { Status::Clean } else { Status::LowQuality };
        ScanVerdict { func_id: FuncId::from_u128(i), status, findings }
    }

    #[test]
    fn empty_stream_is_all_zero() {
        let b = breakdown([], 5);
        assert_eq!((b.total_functions, b.total_findings, b.issue_density), (0, 0, 0.0));
        assert!(b.per_category.values().all(|c| c.count == 0 && c.share == 0.0));
    }

    #[test]
    fn single_category_gets_full_share() {
        let vs: Vec<_> = (0..5).map(|i| verdict(i, vec![finding("r", Category::Security, Severity::Error); 2])).collect();
        let b = breakdown(&vs, 5);
        assert_eq!(b.total_findings, 10);
        assert_eq!(b.per_category[&Category::Security].share, 1.0);
        assert_eq!(b.per_category[&Category::Security].functions, 5);
        assert_eq!(b.issue_density, 2.0);
    }

    #[test]
    fn top_k_ties_break_by_rule_id() {
        let f = |r: &str| finding(r, Category::Correctness, Severity::Warning);
        let vs = vec![verdict(1, vec![f("b"), f("a"), f("c"), f("c")])];
        let b = breakdown(&vs, 2);
        let ids: Vec<_> = b.top_rules[&Category::Correctness].iter().map(|r| r.rule_id.as_str()).collect();
        assert_eq!(ids, vec!["c", "a"]);
    }

    #[test]
    fn permutation_invariance_and_merge() {
        let vs: Vec<_> = (0..20)
            .map(|i| {
                let cat = Category::ALL[i as usize % 6];
                let sev = Severity::ALL[i as usize % 3];
                verdict(i, (0..(i % 3)).map(|k| finding(&format!("r{k}"), cat, sev)).collect())
            })
            .collect();
        let a = breakdown(&vs, 5);
        let mut rev = vs.clone();
        rev.reverse();
        assert_eq!(a, breakdown(&rev, 5));
        let mut left = BreakdownAccumulator::new();
        let mut right = BreakdownAccumulator::new();
        for (i, v) in vs.iter().enumerate() {
            if i % 2 == 0 { left.add(v) } else { right.add(v) }
        }
        assert_eq!(a, left.merge(right).finish(5));
    }

    #[test]
    fn sankey_conserves_flow() {
        let vs = vec![
            verdict(1, vec![finding("a", Category::Security, Severity::Error), finding("b", Category::Security, Severity::Warning)]),
            verdict(2, vec![finding("c", Category::Correctness, Severity::Info); 3]),
            verdict(3, vec![finding("d", Category::Security, Severity::Warning)]),
        ];
        let b = breakdown(&vs, 1);
        let s = sankey(&b);
        for n in &s.nodes {
            let inflow: u64 = s.links.iter().filter(|l| l.target == n.id).map(|l| l.value).sum();
            let outflow: u64 = s.links.iter().filter(|l| l.source == n.id).map(|l| l.value).sum();
            match n.layer.as_str() {
                "category" => assert_eq!(outflow, n.value),
                "rule" => assert_eq!((inflow, outflow), (n.value, n.value)),
                _ => assert_eq!(inflow, n.value),
            }
        }
        assert!(s.nodes.iter().any(|n| n.id == "rule:security/other"));
    }

    #[test]
    fn single_category_sankey_has_two_layers() {
        let vs = vec![verdict(1, vec![finding("a", Category::Security, Severity::Error)])];
        let s = sankey(&breakdown(&vs, 5));
        assert!(s.nodes.iter().all(|n| n.layer != "category"));
        let json = render_breakdown(&breakdown(&vs, 5), Format::Sankey);
        assert!(serde_json::from_str::<serde_json::Value>(&json).is_ok());
    }

    #[test]
    fn comparison_table_rows_and_mismatch() {
        let clean: Vec<_> = (0..4).map(|i| verdict(i, vec![])).collect();
        let runs: BTreeMap<_, _> = [("m".to_string(), clean.clone())].into();
        let t = comparison_table(&runs).unwrap();
        assert_eq!((t.rows[0].pct_low_quality, t.rows[0].pct_syntactically_incorrect), (0.0, 0.0));
        let other: Vec<_> = (10..14).map(|i| verdict(i, vec![])).collect();
        let runs: BTreeMap<_, _> = [("a".to_string(), clean), ("b".to_string(), other)].into();
        assert!(matches!(comparison_table(&runs), Err(ReportError::MismatchedIds(_))));
    }

    #[test]
    fn formats() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!(matches!("html".parse::<Format>(), Err(ReportError::UnsupportedFormat(_))));
        let t = ComparisonTable { rows: vec![] };
        assert!(render_comparison(&t, Format::Sankey).is_err());
    }
}
