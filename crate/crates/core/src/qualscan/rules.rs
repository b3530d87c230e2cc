//! Declarative rules: loading from YAML/JSON and formula evaluation.
//!
//! A rule document carries `id`, `category`, `severity`, optional `cwe`,
//! `message`, and exactly one of `pattern`, `pattern-either` or `patterns`.
//! Inside `patterns` (all must hold) the filters `pattern-not`,
//! `pattern-inside`, `pattern-not-inside` and `metavariable-regex` narrow
//! the positive matches.

use std::fmt;
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::pattern::{consistent, Match, Pattern, PatternError};
use crate::syntax::Ast;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Security,
    Correctness,
    BestPractice,
    Compatibility,
    Maintainability,
    Performance,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Security,
        Category::Correctness,
        Category::BestPractice,
        Category::Compatibility,
        Category::Maintainability,
        Category::Performance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Security => "security",
            Category::Correctness => "correctness",
            Category::BestPractice => "best-practice",
            Category::Compatibility => "compatibility",
            Category::Maintainability => "maintainability",
            Category::Performance => "performance",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub const ALL: [Severity; 3] = [Severity::Info, Severity::Warning, Severity::Error];

    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Severity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "info" => Ok(Severity::Info),
            "warning" => Ok(Severity::Warning),
            "error" => Ok(Severity::Error),
            other => Err(format!("unknown severity {other:?} (expected info, warning or error)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RuleError {
    #[error("rule {id}: {source}")]
    Pattern {
        id: String,
        #[source]
        source: PatternError,
    },
    #[error("rule {id}: {msg}")]
    Invalid { id: String, msg: String },
    #[error("cannot read rule file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed rule document in {origin}: {msg}")]
    Parse { origin: String, msg: String },
}

/// A formula clause that may be a bare pattern string or a nested formula.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ClauseSpec {
    Pattern(String),
    Formula(Box<FormulaSpec>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegexSpec {
    metavariable: String,
    regex: String,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FormulaSpec {
    pattern: Option<String>,
    pattern_either: Option<Vec<FormulaSpec>>,
    patterns: Option<Vec<FormulaSpec>>,
    pattern_not: Option<ClauseSpec>,
    pattern_inside: Option<ClauseSpec>,
    pattern_not_inside: Option<ClauseSpec>,
    metavariable_regex: Option<RegexSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RuleSpec {
    id: String,
    category: Category,
    severity: Severity,
    #[serde(default)]
    cwe: Option<String>,
    message: String,
    pattern: Option<String>,
    pattern_either: Option<Vec<FormulaSpec>>,
    patterns: Option<Vec<FormulaSpec>>,
}

#[derive(Debug, Clone)]
pub enum Formula {
    Pattern(Box<Pattern>),
    Either(Vec<Formula>),
    All(Vec<Formula>),
    Not(Box<Formula>),
    Inside(Box<Formula>),
    NotInside(Box<Formula>),
    MetavariableRegex { name: String, regex: Regex },
}

fn compile_clause(id: &str, c: ClauseSpec) -> Result<Formula, RuleError> {
    match c {
        ClauseSpec::Pattern(p) => compile_pattern(id, &p),
        ClauseSpec::Formula(f) => compile_formula(id, *f),
    }
}

fn compile_pattern(id: &str, text: &str) -> Result<Formula, RuleError> {
    Pattern::compile(text)
        .map(|p| Formula::Pattern(Box::new(p)))
        .map_err(|source| RuleError::Pattern { id: id.to_string(), source })
}

fn compile_formula(id: &str, f: FormulaSpec) -> Result<Formula, RuleError> {
    let invalid = |msg: &str| RuleError::Invalid { id: id.to_string(), msg: msg.to_string() };
    let set = [
        f.pattern.is_some(),
        f.pattern_either.is_some(),
        f.patterns.is_some(),
        f.pattern_not.is_some(),
        f.pattern_inside.is_some(),
        f.pattern_not_inside.is_some(),
        f.metavariable_regex.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if set != 1 {
        return Err(invalid("each formula item needs exactly one operator key"));
    }
    if let Some(p) = f.pattern {
        return compile_pattern(id, &p);
    }
    if let Some(items) = f.pattern_either {
        if items.is_empty() {
            return Err(invalid("pattern-either is empty"));
        }
        return items.into_iter().map(|i| compile_formula(id, i)).collect::<Result<_, _>>().map(Formula::Either);
    }
    if let Some(items) = f.patterns {
        let all: Vec<Formula> = items.into_iter().map(|i| compile_formula(id, i)).collect::<Result<_, _>>()?;
        if !all.iter().any(Formula::is_positive) {
            return Err(invalid("patterns needs at least one positive pattern"));
        }
        return Ok(Formula::All(all));
    }
    if let Some(c) = f.pattern_not {
        return Ok(Formula::Not(Box::new(compile_clause(id, c)?)));
    }
    if let Some(c) = f.pattern_inside {
        return Ok(Formula::Inside(Box::new(compile_clause(id, c)?)));
    }
    if let Some(c) = f.pattern_not_inside {
        return Ok(Formula::NotInside(Box::new(compile_clause(id, c)?)));
    }
    let r = f.metavariable_regex.expect("one key is set");
    let name = r.metavariable.trim_start_matches('$').to_string();
    let regex = Regex::new(&r.regex).map_err(|e| invalid(&format!("bad regex: {e}")))?;
    Ok(Formula::MetavariableRegex { name, regex })
}

impl Formula {
    fn is_positive(&self) -> bool {
        matches!(self, Formula::Pattern(_) | Formula::Either(_) | Formula::All(_))
    }

    /// Matches of a positive formula.
    pub fn eval(&self, target: &Ast) -> Vec<Match> {
        match self {
            Formula::Pattern(p) => p.find_all(target),
            Formula::Either(items) => {
                let mut out: Vec<Match> = items.iter().flat_map(|f| f.eval(target)).collect();
                out.sort_by_key(|m| (m.start, m.end));
                out.dedup_by(|a, b| a.range() == b.range() && a.bindings == b.bindings);
                out
            }
            Formula::All(items) => eval_all(items, target),
            // Filters on their own match nothing.
            _ => Vec::new(),
        }
    }
}

fn eval_all(items: &[Formula], target: &Ast) -> Vec<Match> {
    let mut positives = items.iter().filter(|f| f.is_positive());
    let mut current = positives.next().map(|f| f.eval(target)).unwrap_or_default();
    for f in positives {
        let other = f.eval(target);
        current = current
            .into_iter()
            .filter_map(|mut m| {
                let o = other.iter().find(|o| o.range() == m.range() && consistent(&m.bindings, &o.bindings))?;
                merge(&mut m, o);
                Some(m)
            })
            .collect();
    }
    for f in items.iter().filter(|f| !f.is_positive()) {
        if current.is_empty() {
            break;
        }
        match f {
            Formula::Not(neg) => {
                let negs = neg.eval(target);
                current.retain(|m| {
                    !negs.iter().any(|n| n.range() == m.range() && consistent(&m.bindings, &n.bindings))
                });
            }
            Formula::Inside(ctx) => {
                let ctxs = ctx.eval(target);
                current = current
                    .into_iter()
                    .filter_map(|mut m| {
                        let c = ctxs.iter().find(|c| c.contains(&m) && consistent(&m.bindings, &c.bindings))?;
                        merge(&mut m, c);
                        Some(m)
                    })
                    .collect();
            }
            Formula::NotInside(ctx) => {
                let ctxs = ctx.eval(target);
                current.retain(|m| {
                    !ctxs.iter().any(|c| c.contains(m) && consistent(&m.bindings, &c.bindings))
                });
            }
            Formula::MetavariableRegex { name, regex } => {
                current.retain(|m| m.binding(name).is_some_and(|t| regex.is_match(t)));
            }
            _ => unreachable!("positives handled above"),
        }
    }
    current
}

fn merge(m: &mut Match, other: &Match) {
    for (n, t) in &other.bindings {
        if m.binding(n).is_none() {
            m.bindings.push((n.clone(), t.clone()));
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub rule_id: String,
    pub category: Category,
    pub severity: Severity,
    pub cwe: Option<String>,
    pub message: String,
    pub formula: Formula,
}

impl Rule {
    /// Non-overlapping matches: one per range, none nested in another.
    pub fn matches(&self, target: &Ast) -> Vec<Match> {
        let mut all = self.formula.eval(target);
        all.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)));
        all.dedup_by(|a, b| a.range() == b.range());
        let mut kept: Vec<Match> = Vec::with_capacity(all.len());
        for m in all {
            if !kept.iter().any(|k| k.contains(&m)) {
                kept.push(m);
            }
        }
        kept
    }

    /// Message with `$X` replaced by the code bound to `X`.
    pub fn render_message(&self, m: &Match) -> String {
        let mut out = self.message.clone();
        let mut names: Vec<&(String, String)> = m.bindings.iter().collect();
        names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
        for (n, t) in names {
            out = out.replace(&format!("${n}"), t);
        }
        out
    }
}

fn build_rule(spec: RuleSpec) -> Result<Rule, RuleError> {
    let id = spec.id.clone();
    let invalid = |msg: String| RuleError::Invalid { id: id.clone(), msg };
    if id.trim().is_empty() {
        return Err(invalid("empty id".into()));
    }
    if let Some(cwe) = &spec.cwe {
        let ok = cwe.strip_prefix("CWE-").is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()));
        if !ok {
            return Err(invalid(format!("cwe {cwe:?} is not of the form CWE-<number>")));
        }
    }
    let top = FormulaSpec {
        pattern: spec.pattern,
        pattern_either: spec.pattern_either,
        patterns: spec.patterns,
        ..FormulaSpec::default()
    };
    let formula = compile_formula(&id, top)?;
    Ok(Rule {
        rule_id: spec.id,
        category: spec.category,
        severity: spec.severity,
        cwe: spec.cwe,
        message: spec.message,
        formula,
    })
}

/// Parse rules from YAML (one rule per document) or JSON (a rule object or
/// an array of them).
pub fn parse_rules(text: &str, origin: &str) -> Result<Vec<Rule>, RuleError> {
    let perr = |msg: String| RuleError::Parse { origin: origin.to_string(), msg };
    let specs: Vec<RuleSpec> = if text.trim_start().starts_with(['[', '{']) {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
        match v {
            serde_json::Value::Array(items) => items
                .into_iter()
                .map(|i| serde_json::from_value(i).map_err(|e| perr(e.to_string())))
                .collect::<Result<_, _>>()?,
            other => vec![serde_json::from_value(other).map_err(|e| perr(e.to_string()))?],
        }
    } else {
        let mut out = Vec::new();
        for doc in serde_yaml::Deserializer::from_str(text) {
            let v = serde_yaml::Value::deserialize(doc).map_err(|e| perr(e.to_string()))?;
            if v.is_null() {
                continue;
            }
            out.push(serde_yaml::from_value(v).map_err(|e| perr(e.to_string()))?);
        }
        out
    };
    specs.into_iter().map(build_rule).collect()
}

pub fn load_rule_file(path: &Path) -> Result<Vec<Rule>, RuleError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| RuleError::Io { path: origin.clone(), source })?;
    parse_rules(&text, &origin)
}
