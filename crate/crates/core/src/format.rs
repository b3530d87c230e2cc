//! Canonical, token-driven code formatter.
//!
//! Output is a pure function of the token stream: comments are dropped,
//! every logical line is re-emitted on one physical line with 4-space
//! indentation and fixed operator spacing, compound statements with inline
//! bodies are split, `;`-separated statements get their own lines, single
//! quotes become double quotes where no escaping is needed, and runs of
//! blank lines collapse to one. Formatting formatted code is a no-op.

use crate::pylex::{self, is_keyword, LexError, Token, TokenKind};

#[derive(Debug, Clone, Copy, Default)]
pub struct FormatOptions {
    /// Remove leading string statements of every `def`/`class` body. A body
    /// left empty gets a `pass`.
    pub strip_docstrings: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot format: {0}")]
pub struct FormatError(#[from] pub LexError);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tok {
    pub kind: TokenKind,
    pub text: String,
}

impl Tok {
    fn is_op(&self, s: &str) -> bool {
        self.kind == TokenKind::Op && self.text == s
    }

    fn is_name(&self, s: &str) -> bool {
        self.kind == TokenKind::Name && self.text == s
    }

    fn is_keyword(&self) -> bool {
        self.kind == TokenKind::Name && is_keyword(&self.text)
    }

    fn is_value_keyword(&self) -> bool {
        self.kind == TokenKind::Name && matches!(self.text.as_str(), "True" | "False" | "None")
    }

    fn opens(&self) -> bool {
        self.kind == TokenKind::Op && matches!(self.text.as_str(), "(" | "[" | "{")
    }

    fn closes(&self) -> bool {
        self.kind == TokenKind::Op && matches!(self.text.as_str(), ")" | "]" | "}")
    }
}

/// One logical line of formatted output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalLine {
    pub depth: usize,
    pub tokens: Vec<Tok>,
    pub blank_before: bool,
}

impl LogicalLine {
    /// True for `if ...:`, `def ...:` and other block headers.
    pub fn opens_block(&self) -> bool {
        self.tokens.last().is_some_and(|t| t.is_op(":"))
    }

    fn is_string_only(&self) -> bool {
        !self.tokens.is_empty() && self.tokens.iter().all(|t| t.kind == TokenKind::String)
    }

    fn starts_def_or_class(&self) -> bool {
        match self.tokens.as_slice() {
            [first, second, ..] if first.is_name("async") => second.is_name("def"),
            [first, ..] => first.is_name("def") || first.is_name("class"),
            [] => false,
        }
    }

    pub fn render(&self) -> String {
        let mut out = "    ".repeat(self.depth);
        render_tokens(&self.tokens, &mut out);
        out
    }

    /// Whether the line is a no-op placeholder statement (`pass` or `...`).
    pub fn is_placeholder(&self) -> bool {
        matches!(self.tokens.as_slice(), [t] if t.is_name("pass") || t.is_op("..."))
    }
}

/// Format source text into canonical form (no trailing newline).
pub fn format_code(src: &str, opts: FormatOptions) -> Result<String, FormatError> {
    Ok(render_lines(&format_lines(src, opts)?))
}

pub fn render_lines(lines: &[LogicalLine]) -> String {
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        if i > 0 {
            out.push('\n');
            if line.blank_before && !lines[i - 1].opens_block() {
                out.push('\n');
            }
        }
        out.push_str(&line.render());
    }
    out
}

/// Canonical logical lines of `src`, before rendering.
pub fn format_lines(src: &str, opts: FormatOptions) -> Result<Vec<LogicalLine>, FormatError> {
    let tokens = pylex::tokenize(src)?;
    pylex::check_block_structure(&tokens)?;
    let raw = logical_lines(&tokens);
    let mut lines = Vec::with_capacity(raw.len());
    for line in raw {
        split_statements(line, &mut lines);
    }
    if opts.strip_docstrings {
        strip_docstrings(&mut lines);
    }
    Ok(lines)
}

fn logical_lines(tokens: &[Token<'_>]) -> Vec<LogicalLine> {
    let mut lines = Vec::new();
    let mut depth = 0usize;
    let mut current: Vec<Tok> = Vec::new();
    let mut pending_blank = false;
    let mut prev_kind: Option<TokenKind> = None;
    for tok in tokens {
        match tok.kind {
            TokenKind::Indent => depth += 1,
            TokenKind::Dedent => depth = depth.saturating_sub(1),
            TokenKind::Comment | TokenKind::EndMarker => {}
            TokenKind::Nl => {
                if current.is_empty() && prev_kind != Some(TokenKind::Comment) && !lines.is_empty() {
                    pending_blank = true;
                }
            }
            TokenKind::Newline => {
                if !current.is_empty() {
                    lines.push(LogicalLine {
                        depth,
                        tokens: std::mem::take(&mut current),
                        blank_before: std::mem::take(&mut pending_blank),
                    });
                }
            }
            TokenKind::String => current.push(Tok {
                kind: tok.kind,
                text: normalize_quotes(tok.text),
            }),
            _ => current.push(Tok {
                kind: tok.kind,
                text: tok.text.to_string(),
            }),
        }
        prev_kind = Some(tok.kind);
    }
    lines
}

const COMPOUND_KEYWORDS: [&str; 11] = [
    "if", "elif", "else", "for", "while", "try", "except", "finally", "with", "def", "class",
];

fn is_compound_start(tokens: &[Tok]) -> bool {
    match tokens {
        [first, second, ..] if first.is_name("async") => {
            second.is_name("def") || second.is_name("for") || second.is_name("with")
        }
        [first, ..] => {
            first.kind == TokenKind::Name && COMPOUND_KEYWORDS.contains(&first.text.as_str())
        }
        [] => false,
    }
}

/// Index of the colon ending a compound-statement header.
fn header_colon(tokens: &[Tok]) -> Option<usize> {
    let mut depth = 0usize;
    let mut pending_lambdas = 0usize;
    for (i, t) in tokens.iter().enumerate() {
        if t.opens() {
            depth += 1;
        } else if t.closes() {
            depth = depth.saturating_sub(1);
        } else if depth == 0 && t.is_name("lambda") {
            pending_lambdas += 1;
        } else if depth == 0 && t.is_op(":") {
            if pending_lambdas > 0 {
                pending_lambdas -= 1;
            } else {
                return Some(i);
            }
        }
    }
    None
}

fn split_statements(line: LogicalLine, out: &mut Vec<LogicalLine>) {
    let LogicalLine { depth, tokens, blank_before } = line;
    if is_compound_start(&tokens) {
        if let Some(colon) = header_colon(&tokens) {
            if colon + 1 < tokens.len() {
                let mut header = tokens;
                let body = header.split_off(colon + 1);
                out.push(LogicalLine { depth, tokens: header, blank_before });
                split_statements(
                    LogicalLine { depth: depth + 1, tokens: body, blank_before: false },
                    out,
                );
                return;
            }
        }
        out.push(LogicalLine { depth, tokens, blank_before });
        return;
    }
    let mut bracket = 0usize;
    let mut segment = Vec::new();
    let mut first = true;
    for t in tokens {
        if t.opens() {
            bracket += 1;
        } else if t.closes() {
            bracket = bracket.saturating_sub(1);
        }
        if bracket == 0 && t.is_op(";") {
            if !segment.is_empty() {
                out.push(LogicalLine {
                    depth,
                    tokens: std::mem::take(&mut segment),
                    blank_before: blank_before && first,
                });
                first = false;
            }
            continue;
        }
        segment.push(t);
    }
    if !segment.is_empty() {
        out.push(LogicalLine { depth, tokens: segment, blank_before: blank_before && first });
    }
}

fn strip_docstrings(lines: &mut Vec<LogicalLine>) {
    let mut i = 0;
    while i < lines.len() {
        if lines[i].starts_def_or_class() && lines[i].opens_block() {
            let depth = lines[i].depth;
            while i + 1 < lines.len() && lines[i + 1].depth == depth + 1 && lines[i + 1].is_string_only() {
                lines.remove(i + 1);
            }
            let body_empty = lines.get(i + 1).is_none_or(|l| l.depth <= depth);
            if body_empty {
                lines.insert(
                    i + 1,
                    LogicalLine {
                        depth: depth + 1,
                        tokens: vec![Tok { kind: TokenKind::Name, text: "pass".into() }],
                        blank_before: false,
                    },
                );
            }
        }
        i += 1;
    }
}

/// `'x'` becomes `"x"` when the body holds no double quote. Escapes mean the
/// same thing under either delimiter, so the value is unchanged.
fn normalize_quotes(text: &str) -> String {
    let prefix_len = text.find(['\'', '"']).unwrap_or(0);
    let (prefix, rest) = text.split_at(prefix_len);
    if !rest.starts_with('\'') {
        return text.to_string();
    }
    let q = if rest.starts_with("'''") && rest.len() >= 6 { 3 } else { 1 };
    let body = &rest[q..rest.len() - q];
    if body.contains('"') {
        return text.to_string();
    }
    let quote = if q == 3 { "\"\"\"" } else { "\"" };
    format!("{prefix}{quote}{body}{quote}")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FrameKind {
    Top,
    Call,
    Subscript,
    Other,
}

struct Frame {
    kind: FrameKind,
    /// A `:` appeared in the current comma-separated segment (annotated
    /// parameter), so `=` gets spaces.
    annotated: bool,
    lambda_params: bool,
}

fn is_unary_candidate(t: &Tok) -> bool {
    t.kind == TokenKind::Op && matches!(t.text.as_str(), "-" | "+" | "~" | "*" | "**")
}

fn starts_operand_position(prev: Option<&Tok>) -> bool {
    match prev {
        None => true,
        Some(p) if p.kind == TokenKind::Op => !p.closes() && p.text != "...",
        Some(p) => p.is_keyword() && !p.is_value_keyword(),
    }
}

fn render_tokens(tokens: &[Tok], out: &mut String) {
    let mut frames = vec![Frame { kind: FrameKind::Top, annotated: false, lambda_params: false }];
    let mut prev: Option<&Tok> = None;
    let mut prev_unary = false;
    for (i, tok) in tokens.iter().enumerate() {
        let frame = frames.last().unwrap();
        if let Some(p) = prev {
            if needs_space(p, tok, prev_unary, i == 1, frame) {
                out.push(' ');
            }
        }
        out.push_str(&tok.text);

        let unary = is_unary_candidate(tok) && starts_operand_position(prev);
        if tok.opens() {
            let kind = match (tok.text.as_str(), prev) {
                ("(", Some(p)) if callee_like(p) => FrameKind::Call,
                ("[", Some(p)) if callee_like(p) => FrameKind::Subscript,
                _ => FrameKind::Other,
            };
            frames.push(Frame { kind, annotated: false, lambda_params: false });
        } else if tok.closes() {
            if frames.len() > 1 {
                frames.pop();
            }
        } else {
            let frame = frames.last_mut().unwrap();
            if tok.is_op(",") {
                frame.annotated = false;
            } else if tok.is_name("lambda") {
                frame.lambda_params = true;
            } else if tok.is_op(":") {
                if frame.lambda_params {
                    frame.lambda_params = false;
                } else if frame.kind == FrameKind::Call {
                    frame.annotated = true;
                }
            }
        }
        prev = Some(tok);
        prev_unary = unary;
    }
}

fn callee_like(p: &Tok) -> bool {
    (p.kind == TokenKind::Name && !p.is_keyword()) || p.closes() || p.kind == TokenKind::String
}

fn needs_space(p: &Tok, cur: &Tok, prev_unary: bool, cur_is_second: bool, frame: &Frame) -> bool {
    if prev_unary || p.opens() || cur.closes() {
        return false;
    }
    if cur.is_op(",") || cur.is_op(";") {
        return false;
    }
    if p.is_op(",") {
        return true;
    }
    if cur.is_op(":") {
        return false;
    }
    if p.is_op(":") {
        return frame.kind != FrameKind::Subscript;
    }
    if cur.is_op(".") {
        return p.kind == TokenKind::Number || p.is_keyword() && !p.is_value_keyword();
    }
    if p.is_op(".") {
        return cur.is_name("import");
    }
    if cur.is_op("(") || cur.is_op("[") {
        return !callee_like(p);
    }
    if cur.is_op("=") || p.is_op("=") {
        let tight = (frame.kind == FrameKind::Call && !frame.annotated) || frame.lambda_params;
        return !tight;
    }
    if p.is_op("@") && cur_is_second {
        return false;
    }
    true
}

/// Token texts of the canonical form, used for token-level comparisons.
pub fn canonical_tokens(src: &str) -> Result<Vec<String>, FormatError> {
    let lines = format_lines(src, FormatOptions::default())?;
    Ok(lines
        .into_iter()
        .flat_map(|l| l.tokens.into_iter().map(|t| t.text))
        .collect())
}
