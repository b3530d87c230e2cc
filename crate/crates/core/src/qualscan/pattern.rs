//! Code patterns with metavariables, matched structurally against syntax
//! trees.
//!
//! Pattern syntax is Python plus:
//! - `$X` binds any single node; repeated names must bind equal code,
//! - `$...X` binds any run of list items or statements,
//! - `...` matches any run of arguments, items or statements,
//! - `"..."` matches any string literal (`f"..."` any f-string),
//! - `<... P ...>` matches a node containing `P` anywhere inside it.
//!
//! A multi-statement pattern matches consecutive statements of a block; a
//! `...` line between two statements also lets the next one sit deeper in
//! nested blocks further down.

use std::sync::LazyLock;

use regex::Regex;

use crate::syntax::{Ast, NodeId, ROOT};

const MV: &str = "__mv_";
const MV_SEQ: &str = "__mvs_";
const DEEP: &str = "__deep__";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("pattern does not parse as Python: {0:?}")]
    Syntax(String),
    #[error("pattern is empty")]
    Empty,
}

#[derive(Debug, Clone)]
enum Shape {
    Node(NodeId),
    Seq(Vec<NodeId>),
}

#[derive(Debug, Clone)]
pub struct Pattern {
    ast: Ast,
    shape: Shape,
}

/// Metavariable bindings, append-only during matching.
pub type Bindings = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub start: u32,
    pub end: u32,
    pub start_row: u32,
    pub end_row: u32,
    pub bindings: Bindings,
}

impl Match {
    pub fn range(&self) -> (u32, u32) {
        (self.start, self.end)
    }

    pub fn contains(&self, other: &Match) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn binding(&self, name: &str) -> Option<&str> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }
}

/// True when no metavariable bound in both has different code.
pub fn consistent(a: &Bindings, b: &Bindings) -> bool {
    a.iter()
        .all(|(name, text)| b.iter().all(|(n, t)| n != name || t == text))
}

static SEQ_VAR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\$\.\.\.([A-Z_][A-Z0-9_]*)").unwrap());
static VAR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\$([A-Z_][A-Z0-9_]*)").unwrap());

fn preprocess(text: &str) -> String {
    let s = SEQ_VAR.replace_all(text, format!("{MV_SEQ}$1").as_str());
    let s = VAR.replace_all(&s, format!("{MV}$1").as_str());
    let s = s.replace("<...", &format!("{DEEP}(")).replace("...>", ")");
    dedent(&s)
}

fn dedent(text: &str) -> String {
    let margin = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.len() - l.trim_start().len())
        .min()
        .unwrap_or(0);
    text.lines()
        .map(|l| l.get(margin..).unwrap_or("").trim_end())
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

impl Pattern {
    pub fn compile(text: &str) -> Result<Pattern, PatternError> {
        let src = preprocess(text);
        let ast = Ast::parse(&src);
        if ast.has_error() {
            return Err(PatternError::Syntax(text.trim().to_string()));
        }
        let mut stmts: Vec<NodeId> = ast.children(ROOT).to_vec();
        while stmts.first().is_some_and(|&s| is_gap(&ast, s)) {
            stmts.remove(0);
        }
        while stmts.last().is_some_and(|&s| is_gap(&ast, s)) {
            stmts.pop();
        }
        let shape = match stmts.as_slice() {
            [] => return Err(PatternError::Empty),
            [one] => {
                let kids = ast.children(*one);
                if ast.kind(*one) == "expression_statement"
                    && kids.len() == 1
                    && mv_name(&ast, kids[0]).is_none()
                {
                    Shape::Node(kids[0])
                } else {
                    Shape::Node(*one)
                }
            }
            many => Shape::Seq(many.to_vec()),
        };
        Ok(Pattern { ast, shape })
    }

    /// Every match in `target`, in document order, without duplicates.
    pub fn find_all(&self, target: &Ast) -> Vec<Match> {
        let m = Matcher { pat: &self.ast, tgt: target };
        let mut out = Vec::new();
        match &self.shape {
            Shape::Node(p) => {
                for t in target.preorder() {
                    let mut b = Bindings::new();
                    if m.node(*p, t, &mut b) {
                        let n = target.node(t);
                        out.push(Match {
                            start: n.start,
                            end: n.end,
                            start_row: n.start_row,
                            end_row: n.end_row,
                            bindings: b,
                        });
                    }
                }
            }
            Shape::Seq(ps) => {
                for c in target.preorder() {
                    if !is_container(target, c) {
                        continue;
                    }
                    let stmts = target.children(c);
                    for i in 0..stmts.len() {
                        let first = stmts[i];
                        let mut b = Bindings::new();
                        m.seq(ps, stmts, i, c, None, &mut b, &mut |b, last| {
                            let s = target.node(first);
                            let e = target.node(last);
                            out.push(Match {
                                start: s.start,
                                end: e.end,
                                start_row: s.start_row,
                                end_row: e.end_row,
                                bindings: b.clone(),
                            });
                        });
                    }
                }
            }
        }
        out.sort_by_key(|m| (m.start, m.end));
        out.dedup_by(|a, b| a.range() == b.range() && a.bindings == b.bindings);
        out
    }
}

fn is_container(ast: &Ast, id: NodeId) -> bool {
    matches!(ast.kind(id), "block" | "module")
}

fn mv_name(ast: &Ast, id: NodeId) -> Option<&str> {
    if ast.kind(id) != "identifier" {
        return None;
    }
    ast.text(id).strip_prefix(MV)
}

fn seq_mv_name(ast: &Ast, id: NodeId) -> Option<&str> {
    if ast.kind(id) != "identifier" {
        return None;
    }
    ast.text(id).strip_prefix(MV_SEQ)
}

/// A `...` statement.
fn is_gap(ast: &Ast, id: NodeId) -> bool {
    ast.kind(id) == "expression_statement"
        && matches!(ast.children(id), [c] if ast.kind(*c) == "ellipsis")
}

/// The single child of an expression statement wrapper.
fn stmt_expr(ast: &Ast, id: NodeId) -> Option<NodeId> {
    match ast.children(id) {
        [c] if ast.kind(id) == "expression_statement" => Some(*c),
        _ => None,
    }
}

/// Inner pattern of `<... P ...>`.
fn deep_inner(ast: &Ast, id: NodeId) -> Option<NodeId> {
    if ast.kind(id) != "call" {
        return None;
    }
    let kids = ast.children(id);
    let [func, args] = kids else { return None };
    if ast.kind(*func) != "identifier" || ast.text(*func) != DEEP {
        return None;
    }
    match ast.children(*args) {
        [_, inner, _] => Some(*inner),
        _ => None,
    }
}

/// Literal prefix (lowercased) and body of a string token.
fn string_parts(text: &str) -> (String, &str) {
    let q = text.find(['\'', '"']).unwrap_or(0);
    let prefix = text[..q].to_lowercase();
    let rest = &text[q..];
    let d = if rest.starts_with("\"\"\"") || rest.starts_with("'''") { 3 } else { 1 };
    let body = rest.get(d..rest.len().saturating_sub(d)).unwrap_or("");
    (prefix, body)
}

/// Matching of list items: a `None` name is an anonymous wildcard.
enum ListItem<'a> {
    Wildcard(Option<&'a str>),
    Node(NodeId),
}

struct Matcher<'a> {
    pat: &'a Ast,
    tgt: &'a Ast,
}

impl<'a> Matcher<'a> {
    fn bind(&self, name: &str, nodes: &[NodeId], b: &mut Bindings) -> bool {
        if name == "_" {
            return true;
        }
        let text = nodes
            .iter()
            .map(|&n| self.tgt.normalized_text(n))
            .collect::<Vec<_>>()
            .join(" ; ");
        match b.iter().find(|(n, _)| n == name) {
            Some((_, t)) => *t == text,
            None => {
                b.push((name.to_string(), text));
                true
            }
        }
    }

    fn list_item(&self, p: NodeId) -> ListItem<'a> {
        let pat = self.pat;
        let inner = stmt_expr(pat, p).unwrap_or(p);
        if pat.kind(inner) == "ellipsis" {
            return ListItem::Wildcard(None);
        }
        if let Some(name) = seq_mv_name(pat, inner) {
            return ListItem::Wildcard(Some(name));
        }
        ListItem::Node(p)
    }

    fn deep(&self, inner: NodeId, t: NodeId, b: &mut Bindings) -> bool {
        let mut stack = vec![t];
        while let Some(n) = stack.pop() {
            let mark = b.len();
            if self.node(inner, n, b) {
                return true;
            }
            b.truncate(mark);
            stack.extend(self.tgt.children(n).iter().rev());
        }
        false
    }

    fn node(&self, p: NodeId, t: NodeId, b: &mut Bindings) -> bool {
        let (pat, tgt) = (self.pat, self.tgt);
        if let Some(name) = mv_name(pat, p).or_else(|| seq_mv_name(pat, p)) {
            return tgt.node(t).named && self.bind(name, &[t], b);
        }
        if let Some(inner) = deep_inner(pat, p) {
            return self.deep(inner, t, b);
        }
        if let Some(e) = stmt_expr(pat, p) {
            if let Some(name) = mv_name(pat, e).or_else(|| seq_mv_name(pat, e)) {
                return tgt.node(t).named && self.bind(name, &[t], b);
            }
            if pat.kind(e) == "ellipsis" {
                return true;
            }
            if let Some(inner) = deep_inner(pat, e) {
                return self.deep(inner, t, b);
            }
        }
        let pk = pat.kind(p);
        if pk == "ellipsis" {
            return true;
        }
        if pk == "string" {
            let (pp, pbody) = string_parts(pat.text(p));
            let tk = tgt.kind(t);
            if pbody == "..." {
                let want_f = pp.contains('f');
                return match tk {
                    "string" => !want_f || string_parts(tgt.text(t)).0.contains('f'),
                    "concatenated_string" => !want_f,
                    _ => false,
                };
            }
            if tk != "string" {
                return false;
            }
            let (tp, tbody) = string_parts(tgt.text(t));
            return pbody == tbody && pp.contains('f') == tp.contains('f') && pp.contains('b') == tp.contains('b');
        }
        if pk != tgt.kind(t) {
            return false;
        }
        let pkids = pat.children(p);
        let tkids = tgt.children(t);
        if pkids.is_empty() {
            return tkids.is_empty() && pat.text(p) == tgt.text(t);
        }
        let open_ended = matches!(pk, "if_statement" | "for_statement" | "while_statement" | "try_statement");
        self.list(pkids, tkids, b, open_ended)
    }

    fn list(&self, ps: &[NodeId], ts: &[NodeId], b: &mut Bindings, open_ended: bool) -> bool {
        let Some((&p, rest)) = ps.split_first() else {
            return ts.is_empty() || open_ended;
        };
        match self.list_item(p) {
            ListItem::Wildcard(name) => {
                for k in 0..=ts.len() {
                    let mark = b.len();
                    let bound = name.is_none_or(|n| self.bind(n, &ts[..k], b));
                    if bound && self.list(rest, &ts[k..], b, open_ended) {
                        return true;
                    }
                    b.truncate(mark);
                }
                false
            }
            ListItem::Node(p) => {
                let Some((&t, trest)) = ts.split_first() else { return false };
                let mark = b.len();
                if self.node(p, t, b) && self.list(rest, trest, b, open_ended) {
                    return true;
                }
                b.truncate(mark);
                false
            }
        }
    }

    /// Match statement patterns `ps` starting at `stmts[i]`, reporting every
    /// solution with the last matched statement.
    #[allow(clippy::too_many_arguments)]
    fn seq(
        &self,
        ps: &[NodeId],
        stmts: &[NodeId],
        i: usize,
        outer: NodeId,
        last: Option<NodeId>,
        b: &mut Bindings,
        emit: &mut dyn FnMut(&Bindings, NodeId),
    ) {
        let Some((&p, rest)) = ps.split_first() else {
            if let Some(last) = last {
                emit(b, last);
            }
            return;
        };
        if is_gap(self.pat, p) {
            let after = last.map_or(self.tgt.node(outer).start, |l| self.tgt.node(l).end);
            let candidates: Vec<NodeId> = self
                .tgt
                .preorder()
                .filter(|&s| {
                    let n = self.tgt.node(s);
                    n.start >= after
                        && s != ROOT
                        && is_container(self.tgt, n.parent)
                        && self.tgt.is_descendant_or_self(n.parent, outer)
                })
                .collect();
            for s in candidates {
                let parent = self.tgt.node(s).parent;
                let siblings = self.tgt.children(parent);
                let idx = siblings.iter().position(|&x| x == s).expect("child of its parent");
                self.seq(rest, siblings, idx, outer, last, b, emit);
            }
            return;
        }
        if let ListItem::Wildcard(name) = self.list_item(p) {
            for k in 0..=stmts.len().saturating_sub(i) {
                let mark = b.len();
                if name.is_none_or(|n| self.bind(n, &stmts[i..i + k], b)) {
                    let new_last = if k > 0 { Some(stmts[i + k - 1]) } else { last };
                    self.seq(rest, stmts, i + k, outer, new_last, b, emit);
                }
                b.truncate(mark);
            }
            return;
        }
        let Some(&t) = stmts.get(i) else { return };
        let mark = b.len();
        if self.node(p, t, b) {
            self.seq(rest, stmts, i + 1, outer, Some(t), b, emit);
        }
        b.truncate(mark);
    }
}
