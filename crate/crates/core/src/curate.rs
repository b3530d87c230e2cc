//! Docstring and code cleaning: turns raw functions into
//! description/signature/code training pairs or stage-tagged rejects.

use std::fmt;
use std::sync::LazyLock;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::format::{self, FormatOptions};
use crate::ids::{FileId, FuncId};
use crate::ingest::{FunctionKind, RawFunction};
use crate::pylex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurateConfig {
    /// Line prefixes that open a parameter/return/raise section.
    pub header_patterns: Vec<String>,
    pub min_words: usize,
    pub max_desc_tokens: usize,
    pub max_code_tokens: usize,
    pub max_code_chars: usize,
}

impl Default for CurateConfig {
    fn default() -> Self {
        let headers = [
            "Parameters:", "Params:", "Arguments:", "Args:", "Keyword Args:", "Keyword Arguments:",
            "Returns:", "Return:", "Yields:", "Raises:", ":param", ":type", ":return", ":rtype",
            ":raise", ":keyword", "@param", "@type", "@return", "@rtype", "@raise",
        ];
        CurateConfig {
            header_patterns: headers.iter().map(|s| s.to_string()).collect(),
            min_words: 10,
            max_desc_tokens: 50,
            max_code_tokens: 450,
            max_code_chars: 800,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectStage {
    MissingDocstring,
    NonAscii,
    Link,
    MinWords,
    TestFunction,
    FormatFailure,
    PassFunction,
    DescriptionTooLong,
    CodeTooLong,
}

impl RejectStage {
    pub const ALL: [RejectStage; 9] = [
        RejectStage::MissingDocstring,
        RejectStage::NonAscii,
        RejectStage::Link,
        RejectStage::MinWords,
        RejectStage::TestFunction,
        RejectStage::FormatFailure,
        RejectStage::PassFunction,
        RejectStage::DescriptionTooLong,
        RejectStage::CodeTooLong,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RejectStage::MissingDocstring => "missing_docstring",
            RejectStage::NonAscii => "non_ascii",
            RejectStage::Link => "link",
            RejectStage::MinWords => "min_words",
            RejectStage::TestFunction => "test_function",
            RejectStage::FormatFailure => "format_failure",
            RejectStage::PassFunction => "pass_function",
            RejectStage::DescriptionTooLong => "description_too_long",
            RejectStage::CodeTooLong => "code_too_long",
        }
    }
}

impl fmt::Display for RejectStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{stage}: {detail}")]
pub struct Reject {
    pub stage: RejectStage,
    pub detail: String,
}

impl Reject {
    fn new(stage: RejectStage, detail: impl Into<String>) -> Self {
        Reject { stage, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectRecord {
    pub func_id: FuncId,
    pub stage: RejectStage,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub file_id: FileId,
    pub path: String,
    pub start_line: usize,
    pub end_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedPair {
    pub func_id: FuncId,
    pub description: String,
    pub signature: String,
    pub code: String,
    pub provenance: Provenance,
}

impl CuratedPair {
    /// Re-wrap as a raw function whose docstring is the cleaned description.
    pub fn to_raw(&self) -> RawFunction {
        let (signature, body) = match self.code.split_once('\n') {
            Some((head, rest)) => (head.to_string(), rest.to_string()),
            None => (self.code.clone(), String::new()),
        };
        RawFunction {
            func_id: self.func_id,
            name: def_name(&signature).unwrap_or_default(),
            signature,
            docstring: Some(self.description.clone()),
            body,
            start_line: self.provenance.start_line,
            end_line: self.provenance.end_line,
            path: self.provenance.path.clone(),
            file_id: self.provenance.file_id,
            kind: if self.code.starts_with("async") { FunctionKind::AsyncDef } else { FunctionKind::Def },
            has_syntax_error: false,
        }
    }
}

fn def_name(signature: &str) -> Option<String> {
    let after = signature.split_once("def ")?.1;
    Some(after.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect())
}

static TAG: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"</?[A-Za-z][\w-]*(\s[^<>]*)?/?>").unwrap());
static LINK: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)(https?://|www\.)").unwrap());
static EXAMPLE_HEADER: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)^(for\s+)?(examples?|usage|example\s+usage)\s*:{0,2}\s*$").unwrap()
});
static UNDERLINE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\s*(-{3,}|={3,})\s*$").unwrap());

/// `inspect.cleandoc`-style normalization: tabs expanded, common indentation
/// of all lines after the first removed, blank edges trimmed.
pub fn cleandoc(doc: &str) -> String {
    let expanded = doc.replace('\t', "        ");
    let lines: Vec<&str> = expanded.lines().collect();
    let margin = lines
        .iter()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.len() - l.trim_start().len())
        .min()
        .unwrap_or(0);
    let mut out: Vec<String> = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if i == 0 {
            out.push(line.trim_start().to_string());
        } else {
            out.push(line.get(margin..).unwrap_or("").trim_end().to_string());
        }
    }
    while out.first().is_some_and(|l| l.trim().is_empty()) {
        out.remove(0);
    }
    while out.last().is_some_and(|l| l.trim().is_empty()) {
        out.pop();
    }
    out.join("\n")
}

fn indent_of(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

/// Index just past the block owned by the header at `i`: following lines
/// that are blank or indented deeper than the header.
fn end_of_indented_block(lines: &[&str], i: usize) -> usize {
    let base = indent_of(lines[i]);
    let mut j = i + 1;
    let mut last_kept = i + 1;
    while j < lines.len() {
        let l = lines[j];
        if l.trim().is_empty() {
            j += 1;
            continue;
        }
        if indent_of(l) > base {
            j += 1;
            last_kept = j;
        } else {
            break;
        }
    }
    last_kept
}

fn end_of_paragraph(lines: &[&str], mut j: usize) -> usize {
    while j < lines.len() && !lines[j].trim().is_empty() {
        j += 1;
    }
    j
}

fn is_underlined(lines: &[&str], i: usize) -> bool {
    lines.get(i + 1).is_some_and(|l| UNDERLINE.is_match(l))
}

fn drop_header_sections(text: &str, patterns: &[String]) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let lower: Vec<String> = patterns.iter().map(|p| p.to_lowercase()).collect();
    let section_names: Vec<String> =
        lower.iter().filter_map(|p| p.strip_suffix(':')).map(str::to_string).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let t = lines[i].trim().to_lowercase();
        if is_underlined(&lines, i) && section_names.contains(&t) {
            i = end_of_paragraph(&lines, i + 2);
            continue;
        }
        if !t.is_empty() && lower.iter().any(|p| t.starts_with(p.as_str())) {
            i = end_of_indented_block(&lines, i);
            continue;
        }
        out.push(lines[i]);
        i += 1;
    }
    out.join("\n")
}

fn drop_code_examples(text: &str) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let t = lines[i].trim();
        if t.starts_with(">>>") {
            i = end_of_paragraph(&lines, i);
            continue;
        }
        if t.starts_with("```") {
            let close = (i + 1..lines.len()).find(|&j| lines[j].trim().starts_with("```"));
            i = close.map_or(lines.len(), |j| j + 1);
            continue;
        }
        if t.starts_with(".. code-block::") || t.starts_with(".. code::") || t.starts_with(".. doctest::") {
            i = end_of_indented_block(&lines, i);
            continue;
        }
        if EXAMPLE_HEADER.is_match(t) {
            let start = if is_underlined(&lines, i) { i + 1 } else { i };
            i = end_of_indented_block(&lines, start).max(start + 1);
            continue;
        }
        out.push(lines[i]);
        i += 1;
    }
    out.join("\n")
}

fn strip_tags(text: &str) -> String {
    let mut cur = text.to_string();
    loop {
        let next = TAG.replace_all(&cur, " ").into_owned();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Clean a docstring into a one-line description, or reject it.
pub fn clean_description(docstring: &str, cfg: &CurateConfig) -> Result<String, Reject> {
    let text = cleandoc(docstring);
    let text = drop_header_sections(&text, &cfg.header_patterns);
    let text = drop_code_examples(&text);
    let text: String = text.lines().filter(|l| !l.trim().is_empty()).collect::<Vec<_>>().join("\n");
    if let Some(c) = text.chars().find(|c| !c.is_ascii()) {
        return Err(Reject::new(RejectStage::NonAscii, format!("character {c:?}")));
    }
    let text = strip_tags(&text);
    if let Some(m) = LINK.find(&text) {
        return Err(Reject::new(RejectStage::Link, format!("link prefix {:?}", m.as_str())));
    }
    let text = text.split_whitespace().collect::<Vec<_>>().join(" ");
    let words = text.split_whitespace().count();
    if words < cfg.min_words {
        return Err(Reject::new(RejectStage::MinWords, format!("{words} words")));
    }
    Ok(text)
}

/// Words and punctuation marks: whitespace-split, then every leading or
/// trailing ASCII punctuation character counts as its own token.
pub fn description_tokens(text: &str) -> usize {
    text.split_whitespace()
        .map(|word| {
            let core = word.trim_matches(|c: char| c.is_ascii_punctuation());
            if core.is_empty() {
                word.chars().count()
            } else {
                word.chars().count() - core.chars().count() + 1
            }
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanCode {
    /// Canonical header line.
    pub signature: String,
    pub code: String,
}

/// Drop the docstring and comments, canonically format, and reject test and
/// placeholder functions.
pub fn clean_code(func: &RawFunction) -> Result<CleanCode, Reject> {
    if func.name.to_lowercase().contains("test") {
        return Err(Reject::new(RejectStage::TestFunction, format!("name {:?}", func.name)));
    }
    let stripped = RawFunction { docstring: None, ..func.clone() };
    let lines = format::format_lines(&stripped.to_source(), FormatOptions { strip_docstrings: true })
        .map_err(|e| Reject::new(RejectStage::FormatFailure, e.to_string()))?;
    let Some(header) = lines.first() else {
        return Err(Reject::new(RejectStage::FormatFailure, "no code"));
    };
    let body = &lines[1..];
    if body.is_empty() || (body.len() == 1 && body[0].is_placeholder()) {
        return Err(Reject::new(RejectStage::PassFunction, "placeholder body"));
    }
    Ok(CleanCode { signature: header.render(), code: format::render_lines(&lines) })
}

/// Which length bound fails, if any.
pub fn length_violation(description: &str, code: &str, cfg: &CurateConfig) -> Option<Reject> {
    let desc_tokens = description_tokens(description);
    if desc_tokens > cfg.max_desc_tokens {
        return Some(Reject::new(RejectStage::DescriptionTooLong, format!("{desc_tokens} tokens")));
    }
    let code_tokens = pylex::lexical_token_count(code).unwrap_or(usize::MAX);
    let chars = code.chars().count();
    if code_tokens > cfg.max_code_tokens && chars > cfg.max_code_chars {
        return Some(Reject::new(
            RejectStage::CodeTooLong,
            format!("{code_tokens} tokens, {chars} characters"),
        ));
    }
    None
}

/// Description within the token cap and code within the token or the
/// character cap.
pub fn length_gate(description: &str, code: &str, cfg: &CurateConfig) -> bool {
    length_violation(description, code, cfg).is_none()
}

/// Run every filter on one function.
pub fn curate_one(func: &RawFunction, cfg: &CurateConfig) -> Result<CuratedPair, RejectRecord> {
    let reject = |r: Reject| RejectRecord { func_id: func.func_id, stage: r.stage, detail: r.detail };
    let doc = match func.docstring.as_deref() {
        Some(d) if !d.trim().is_empty() => d,
        _ => return Err(reject(Reject::new(RejectStage::MissingDocstring, "no docstring"))),
    };
    let description = clean_description(doc, cfg).map_err(reject)?;
    let clean = clean_code(func).map_err(reject)?;
    if let Some(r) = length_violation(&description, &clean.code, cfg) {
        return Err(reject(r));
    }
    Ok(CuratedPair {
        func_id: func.func_id,
        description,
        signature: clean.signature,
        code: clean.code,
        provenance: Provenance {
            file_id: func.file_id,
            path: func.path.clone(),
            start_line: func.start_line,
            end_line: func.end_line,
        },
    })
}

/// Curate a batch in parallel. Both outputs keep input order; every input
/// lands in exactly one of them.
pub fn curate(funcs: &[RawFunction], cfg: &CurateConfig) -> (Vec<CuratedPair>, Vec<RejectRecord>) {
    let results: Vec<_> = funcs.par_iter().map(|f| curate_one(f, cfg)).collect();
    let mut pairs = Vec::new();
    let mut rejects = Vec::new();
    for r in results {
        match r {
            Ok(p) => pairs.push(p),
            Err(r) => rejects.push(r),
        }
    }
    (pairs, rejects)
}
