//! Source discovery and function extraction.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tree_sitter::Node;
use walkdir::WalkDir;

use crate::ids::{FileId, FuncId};
use crate::syntax;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8")]
    Encoding { path: PathBuf },
    #[error("cannot walk {path}: {source}")]
    Walk {
        path: PathBuf,
        #[source]
        source: walkdir::Error,
    },
}

#[derive(Debug, Clone)]
pub struct SourceFile {
    /// Path relative to the corpus root, `/`-separated.
    pub path: String,
    pub content: String,
    pub file_id: FileId,
}

impl SourceFile {
    pub fn new(path: impl Into<String>, content: impl Into<String>) -> Self {
        let content = content.into();
        SourceFile { path: path.into(), file_id: FileId::of_content(&content), content }
    }

    pub fn load(full_path: &Path, rel: &str) -> Result<Self, IngestError> {
        let bytes = fs::read(full_path)
            .map_err(|source| IngestError::Io { path: full_path.to_path_buf(), source })?;
        let content = String::from_utf8(bytes)
            .map_err(|_| IngestError::Encoding { path: full_path.to_path_buf() })?;
        Ok(SourceFile::new(rel, content))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Def,
    AsyncDef,
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunction {
    pub func_id: FuncId,
    pub name: String,
    pub signature: String,
    pub docstring: Option<String>,
    pub body: String,
    pub start_line: usize,
    pub end_line: usize,
    pub path: String,
    pub file_id: FileId,
    pub kind: FunctionKind,
    pub has_syntax_error: bool,
}

impl RawFunction {
    /// Rebuild standalone source text: signature, docstring statement, body.
    pub fn to_source(&self) -> String {
        let doc = self.docstring.as_deref().map(docstring_literal);
        if self.kind == FunctionKind::Lambda {
            return format!("{} {}", self.signature, self.body);
        }
        if self.body.is_empty() {
            let stmt = doc.unwrap_or_else(|| "pass".to_string());
            return format!("{}\n    {}\n", self.signature, stmt);
        }
        if self.body.starts_with([' ', '\t']) {
            let indent: String = self.body.chars().take_while(|c| *c == ' ' || *c == '\t').collect();
            match doc {
                Some(d) => format!("{}\n{indent}{d}\n{}\n", self.signature, self.body),
                None => format!("{}\n{}\n", self.signature, self.body),
            }
        } else {
            match doc {
                Some(d) => format!("{} {d}; {}\n", self.signature, self.body),
                None => format!("{} {}\n", self.signature, self.body),
            }
        }
    }
}

fn docstring_literal(doc: &str) -> String {
    if doc.contains("\"\"\"") || doc.ends_with('"') {
        format!("'''{doc}'''")
    } else {
        format!("\"\"\"{doc}\"\"\"")
    }
}

/// A discarded or damaged input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReject {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct Extraction {
    pub functions: Vec<RawFunction>,
    /// Set when the file does not parse cleanly; functions from the
    /// parsable regions are still returned.
    pub parse_failed: bool,
}

/// Every function definition in the file, nested ones, methods, async
/// definitions and lambdas included, in source order.
pub fn extract_functions(file: &SourceFile) -> Extraction {
    let tree = syntax::parse(&file.content);
    let root = tree.root_node();
    // Pre-order visits nodes by start position, which is source order.
    let mut functions = Vec::new();
    let mut cursor = root.walk();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match node.kind() {
            "function_definition" => {
                if let Some(f) = extract_def(file, node) {
                    functions.push(f);
                }
            }
            "lambda" => {
                if let Some(f) = extract_lambda(file, node) {
                    functions.push(f);
                }
            }
            _ => {}
        }
        let kids: Vec<Node> = node.children(&mut cursor).collect();
        stack.extend(kids.into_iter().rev());
    }
    Extraction { functions, parse_failed: root.has_error() }
}

fn end_line_of(node: Node<'_>) -> usize {
    let end = node.end_position();
    if end.column == 0 && end.row > node.start_position().row {
        end.row
    } else {
        end.row + 1
    }
}

fn extract_def(file: &SourceFile, node: Node<'_>) -> Option<RawFunction> {
    let src = file.content.as_str();
    let name_node = node.child_by_field_name("name")?;
    let body = node.child_by_field_name("body")?;
    let name = name_node.utf8_text(src.as_bytes()).ok()?.to_string();
    let is_async = node.child(0).is_some_and(|c| c.kind() == "async");

    let colon_end = header_colon_end(node, body)?;
    let signature = src[node.start_byte()..colon_end].to_string();

    let mut cursor = body.walk();
    let stmts: Vec<Node> = body.named_children(&mut cursor).filter(|c| c.kind() != "comment").collect();
    let docstring = stmts.first().and_then(|s| docstring_of(src, *s));
    let rest = if docstring.is_some() { &stmts[1..] } else { &stmts[..] };
    let body_text = match rest.first() {
        Some(first) => {
            let start = extend_to_line_start(src, first.start_byte());
            src[start..body.end_byte().max(first.start_byte())].to_string()
        }
        None => String::new(),
    };

    let start = node.start_position();
    Some(RawFunction {
        func_id: FuncId::new(&file.file_id, start.row + 1, start.column, &name),
        name,
        signature,
        docstring,
        body: body_text,
        start_line: start.row + 1,
        end_line: end_line_of(node),
        path: file.path.clone(),
        file_id: file.file_id,
        kind: if is_async { FunctionKind::AsyncDef } else { FunctionKind::Def },
        has_syntax_error: node.has_error(),
    })
}

/// Byte offset just past the `:` that ends a definition header.
fn header_colon_end(node: Node<'_>, body: Node<'_>) -> Option<usize> {
    let mut cursor = node.walk();
    let colon = node
        .children(&mut cursor)
        .filter(|c| c.kind() == ":" && c.end_byte() <= body.start_byte())
        .last()?;
    Some(colon.end_byte())
}

fn extract_lambda(file: &SourceFile, node: Node<'_>) -> Option<RawFunction> {
    let src = file.content.as_str();
    let body = node.child_by_field_name("body")?;
    let mut cursor = node.walk();
    let colon = node
        .children(&mut cursor)
        .filter(|c| c.kind() == ":" && c.end_byte() <= body.start_byte())
        .last()?;
    let name = "<lambda>".to_string();
    let start = node.start_position();
    Some(RawFunction {
        func_id: FuncId::new(&file.file_id, start.row + 1, start.column, &name),
        name,
        signature: src[node.start_byte()..colon.end_byte()].to_string(),
        docstring: None,
        body: src[body.start_byte()..body.end_byte()].to_string(),
        start_line: start.row + 1,
        end_line: end_line_of(node),
        path: file.path.clone(),
        file_id: file.file_id,
        kind: FunctionKind::Lambda,
        has_syntax_error: node.has_error(),
    })
}

fn extend_to_line_start(src: &str, pos: usize) -> usize {
    let line_start = src[..pos].rfind('\n').map_or(0, |i| i + 1);
    if src[line_start..pos].chars().all(|c| c == ' ' || c == '\t') {
        line_start
    } else {
        pos
    }
}

/// Docstring text when `stmt` is a bare (non f-, non b-) string literal.
fn docstring_of(src: &str, stmt: Node<'_>) -> Option<String> {
    if stmt.kind() != "expression_statement" || stmt.named_child_count() != 1 {
        return None;
    }
    let expr = stmt.named_child(0)?;
    match expr.kind() {
        "string" => literal_content(expr.utf8_text(src.as_bytes()).ok()?),
        "concatenated_string" => {
            let mut cursor = expr.walk();
            let mut out = String::new();
            for part in expr.named_children(&mut cursor) {
                if part.kind() != "string" {
                    continue;
                }
                out.push_str(&literal_content(part.utf8_text(src.as_bytes()).ok()?)?);
            }
            Some(out)
        }
        _ => None,
    }
}

/// Strip prefix and delimiters from a string literal. `None` for f-strings
/// and bytes, which never act as docstrings.
pub fn literal_content(text: &str) -> Option<String> {
    let q = text.find(['\'', '"'])?;
    let prefix = &text[..q];
    if prefix.contains(['f', 'F', 'b', 'B']) {
        return None;
    }
    let rest = &text[q..];
    let delim = if rest.starts_with("\"\"\"") || rest.starts_with("'''") { 3 } else { 1 };
    if rest.len() < 2 * delim {
        return None;
    }
    Some(rest[delim..rest.len() - delim].to_string())
}

/// Functions whose docstring is present and non-blank, order preserved.
pub fn require_docstring(funcs: Vec<RawFunction>) -> Vec<RawFunction> {
    funcs
        .into_iter()
        .filter(|f| f.docstring.as_deref().is_some_and(|d| !d.trim().is_empty()))
        .collect()
}

/// `.py` files under `root` (or the single file itself), sorted by relative
/// path. A non-`.py` file is read as a manifest: one path per line,
/// relative to the manifest's directory.
pub fn discover(root: &Path) -> Result<Vec<(PathBuf, String)>, IngestError> {
    if root.is_file() {
        if root.extension().is_some_and(|e| e == "py") {
            let rel = root.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            return Ok(vec![(root.to_path_buf(), rel)]);
        }
        let text = fs::read_to_string(root)
            .map_err(|source| IngestError::Io { path: root.to_path_buf(), source })?;
        let base = root.parent().unwrap_or(Path::new("."));
        let mut files: Vec<(PathBuf, String)> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| (base.join(l), l.replace('\\', "/")))
            .collect();
        files.sort_by(|a, b| a.1.cmp(&b.1));
        files.dedup_by(|a, b| a.1 == b.1);
        return Ok(files);
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|source| IngestError::Walk { path: root.to_path_buf(), source })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == "py") {
            let rel = entry
                .path()
                .strip_prefix(root)
                .unwrap_or(entry.path())
                .components()
                .map(|c| c.as_os_str().to_string_lossy().into_owned())
                .collect::<Vec<_>>()
                .join("/");
            files.push((entry.path().to_path_buf(), rel));
        }
    }
    files.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(files)
}

/// Outcome of ingesting one file.
#[derive(Debug, Clone, Default)]
pub struct FileOutcome {
    pub functions: Vec<RawFunction>,
    pub reject: Option<IngestReject>,
}

pub fn ingest_file(full_path: &Path, rel: &str) -> FileOutcome {
    match SourceFile::load(full_path, rel) {
        Ok(file) => {
            let ex = extract_functions(&file);
            FileOutcome {
                functions: ex.functions,
                reject: ex
                    .parse_failed
                    .then(|| IngestReject { path: rel.to_string(), reason: "parse_error".into() }),
            }
        }
        Err(IngestError::Encoding { .. }) => FileOutcome {
            functions: Vec::new(),
            reject: Some(IngestReject { path: rel.to_string(), reason: "not_utf8".into() }),
        },
        Err(e) => FileOutcome {
            functions: Vec::new(),
            reject: Some(IngestReject { path: rel.to_string(), reason: format!("io_error: {e}") }),
        },
    }
}

/// Ingest files in parallel chunks, handing each chunk's outcomes to `sink`
/// in path order. Memory is bounded by the chunk size, not the corpus.
pub fn ingest_streaming<E>(
    files: &[(PathBuf, String)],
    chunk: usize,
    mut sink: impl FnMut(FileOutcome) -> Result<(), E>,
) -> Result<(), E> {
    for group in files.chunks(chunk.max(1)) {
        let outcomes: Vec<FileOutcome> = group.par_iter().map(|(p, rel)| ingest_file(p, rel)).collect();
        for outcome in outcomes {
            sink(outcome)?;
        }
    }
    Ok(())
}
