//! Python lexer.
//!
//! Produces the same token classes as CPython's `tokenize` (names, numbers,
//! strings, operators, comments and the layout tokens NEWLINE / NL / INDENT /
//! DEDENT). The formatter, the lexical token counter used by the length gate,
//! and the indentation half of the syntax check are all built on it.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Name,
    Number,
    String,
    Op,
    Comment,
    /// End of a logical line.
    Newline,
    /// Line break that does not end a logical line (blank line, comment-only
    /// line, or a break inside brackets).
    Nl,
    Indent,
    Dedent,
    EndMarker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// 1-based line of the first character.
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl Token<'_> {
    /// Tokens counted by the length gate: everything except comments and
    /// layout tokens.
    pub fn is_lexical(&self) -> bool {
        matches!(
            self.kind,
            TokenKind::Name | TokenKind::Number | TokenKind::String | TokenKind::Op
        )
    }

    pub fn is_op(&self, op: &str) -> bool {
        self.kind == TokenKind::Op && self.text == op
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct LexError {
    pub line: usize,
    pub kind: LexErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexErrorKind {
    UnterminatedString,
    InconsistentDedent,
    UnmatchedBracket,
    UnclosedBracket,
    UnexpectedCharacter(char),
    UnexpectedIndent,
    ExpectedIndentedBlock,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.kind {
            LexErrorKind::UnterminatedString => "unterminated string literal".to_string(),
            LexErrorKind::InconsistentDedent => {
                "unindent does not match any outer indentation level".to_string()
            }
            LexErrorKind::UnmatchedBracket => "unmatched closing bracket".to_string(),
            LexErrorKind::UnclosedBracket => "bracket never closed".to_string(),
            LexErrorKind::UnexpectedCharacter(c) => format!("unexpected character {c:?}"),
            LexErrorKind::UnexpectedIndent => "unexpected indent".to_string(),
            LexErrorKind::ExpectedIndentedBlock => "expected an indented block".to_string(),
        };
        write!(f, "line {}: {}", self.line, what)
    }
}

const OPS3: [&str; 5] = ["**=", "//=", ">>=", "<<=", "..."];
const OPS2: [&str; 20] = [
    "**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
    "^=", "@=", ":=", "<>",
];
const OPS1: &str = "+-*/%@&|^~<>()[]{},:;.=!";

pub const KEYWORDS: [&str; 35] = [
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class", "continue",
    "def", "del", "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in",
    "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while", "with",
    "yield",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn is_name_start(c: char) -> bool {
    c == '_' || c.is_ascii_alphabetic() || (!c.is_ascii() && c.is_alphabetic())
}

fn is_name_continue(c: char) -> bool {
    c == '_' || c.is_ascii_alphanumeric() || (!c.is_ascii() && c.is_alphanumeric())
}

fn is_string_prefix(s: &str) -> bool {
    s.len() <= 2
        && s.chars().all(|c| "rRbBuUfF".contains(c))
        && {
            let lower = s.to_ascii_lowercase();
            matches!(lower.as_str(), "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf")
        }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    tokens: Vec<Token<'a>>,
    indents: Vec<usize>,
    brackets: Vec<u8>,
}

/// Tokenize Python source. The indentation of the first logical line is
/// taken as the base level, so method bodies cut out of a class can be
/// lexed without re-indenting them.
pub fn tokenize(src: &str) -> Result<Vec<Token<'_>>, LexError> {
    let mut lx = Lexer {
        src,
        bytes: src.as_bytes(),
        pos: 0,
        line: 1,
        tokens: Vec::with_capacity(src.len() / 3),
        indents: Vec::new(),
        brackets: Vec::new(),
    };
    lx.run()?;
    Ok(lx.tokens)
}

impl<'a> Lexer<'a> {
    fn err(&self, kind: LexErrorKind) -> LexError {
        LexError { line: self.line, kind }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: usize) {
        self.tokens.push(Token {
            kind,
            text: &self.src[start..self.pos],
            line,
            start,
            end: self.pos,
        });
    }

    fn newline_len(&self) -> usize {
        match self.bytes.get(self.pos) {
            Some(b'\n') => 1,
            Some(b'\r') if self.bytes.get(self.pos + 1) == Some(&b'\n') => 2,
            Some(b'\r') => 1,
            _ => 0,
        }
    }

    /// A lexical token has been emitted since the last NEWLINE.
    fn logical_line_open(&self) -> bool {
        self.tokens
            .iter()
            .rev()
            .find(|t| !matches!(t.kind, TokenKind::Comment | TokenKind::Nl))
            .is_some_and(|t| {
                !matches!(t.kind, TokenKind::Newline | TokenKind::Indent | TokenKind::Dedent)
            })
    }

    fn run(&mut self) -> Result<(), LexError> {
        let mut at_line_start = true;
        while self.pos < self.bytes.len() {
            if std::mem::take(&mut at_line_start) && self.brackets.is_empty()
                && self.handle_line_start()? {
                    at_line_start = true;
                    continue;
                }
            let Some(c) = self.peek() else { break };
            match c {
                ' ' | '\t' | '\x0c' => self.pos += 1,
                '\n' | '\r' => {
                    let start = self.pos;
                    let line = self.line;
                    self.pos += self.newline_len();
                    let kind = if self.brackets.is_empty() && self.logical_line_open() {
                        TokenKind::Newline
                    } else {
                        TokenKind::Nl
                    };
                    self.push(kind, start, line);
                    self.line += 1;
                    at_line_start = true;
                }
                '\\' => {
                    self.pos += 1;
                    let n = self.newline_len();
                    if n == 0 {
                        return Err(self.err(LexErrorKind::UnexpectedCharacter('\\')));
                    }
                    self.pos += n;
                    self.line += 1;
                }
                '#' => self.comment(),
                '"' | '\'' => self.string(self.pos)?,
                c if c.is_ascii_digit() => self.number(),
                '.' if self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                    self.number()
                }
                c if is_name_start(c) => self.name()?,
                _ => self.op()?,
            }
        }
        if !self.brackets.is_empty() {
            return Err(self.err(LexErrorKind::UnclosedBracket));
        }
        if self.logical_line_open() {
            let p = self.pos;
            self.tokens.push(Token { kind: TokenKind::Newline, text: "", line: self.line, start: p, end: p });
        }
        let base_levels = self.indents.len().saturating_sub(1);
        for _ in 0..base_levels {
            let p = self.pos;
            self.tokens.push(Token { kind: TokenKind::Dedent, text: "", line: self.line, start: p, end: p });
        }
        let p = self.pos;
        self.tokens.push(Token { kind: TokenKind::EndMarker, text: "", line: self.line, start: p, end: p });
        Ok(())
    }

    /// Measures indentation at the start of a physical line. Returns true if
    /// the whole line was consumed (blank or comment-only).
    fn handle_line_start(&mut self) -> Result<bool, LexError> {
        let mut col = 0usize;
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b' ' => col += 1,
                b'\t' => col = (col / 8 + 1) * 8,
                b'\x0c' => col = 0,
                _ => break,
            }
            self.pos += 1;
        }
        match self.bytes.get(self.pos) {
            None => return Ok(true),
            Some(b'\n') | Some(b'\r') => {
                let start = self.pos;
                let line = self.line;
                self.pos += self.newline_len();
                self.push(TokenKind::Nl, start, line);
                self.line += 1;
                return Ok(true);
            }
            Some(b'#') => {
                self.comment();
                if self.newline_len() > 0 {
                    let start = self.pos;
                    let line = self.line;
                    self.pos += self.newline_len();
                    self.push(TokenKind::Nl, start, line);
                    self.line += 1;
                }
                return Ok(true);
            }
            Some(b'\\') => return Ok(false),
            _ => {}
        }
        let Some(&top) = self.indents.last() else {
            self.indents.push(col);
            return Ok(false);
        };
        let p = self.pos;
        if col > top {
            self.indents.push(col);
            self.tokens.push(Token { kind: TokenKind::Indent, text: "", line: self.line, start: p, end: p });
        } else if col < top {
            while self.indents.len() > 1 && *self.indents.last().unwrap() > col {
                self.indents.pop();
                self.tokens.push(Token { kind: TokenKind::Dedent, text: "", line: self.line, start: p, end: p });
            }
            if *self.indents.last().unwrap() != col {
                return Err(self.err(LexErrorKind::InconsistentDedent));
            }
        }
        Ok(false)
    }

    fn comment(&mut self) {
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'\n' || b == b'\r' {
                break;
            }
            self.pos += 1;
        }
        // comments may contain arbitrary UTF-8; pos only ever stops on ASCII
        self.push(TokenKind::Comment, start, self.line);
    }

    fn name(&mut self) -> Result<(), LexError> {
        let start = self.pos;
        for c in self.src[self.pos..].chars() {
            if !is_name_continue(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if matches!(self.bytes.get(self.pos), Some(b'"') | Some(b'\''))
            && is_string_prefix(&self.src[start..self.pos])
        {
            return self.string(start);
        }
        self.push(TokenKind::Name, start, self.line);
        Ok(())
    }

    fn number(&mut self) {
        let start = self.pos;
        let b = self.bytes;
        let digits = |pos: &mut usize, pred: fn(u8) -> bool| {
            while b.get(*pos).is_some_and(|&c| pred(c) || c == b'_') {
                *pos += 1;
            }
        };
        if b[self.pos] == b'0' && matches!(b.get(self.pos + 1), Some(b'x' | b'X' | b'o' | b'O' | b'b' | b'B')) {
            self.pos += 2;
            digits(&mut self.pos, |c| c.is_ascii_hexdigit());
        } else {
            digits(&mut self.pos, |c| c.is_ascii_digit());
            if b.get(self.pos) == Some(&b'.') {
                self.pos += 1;
                digits(&mut self.pos, |c| c.is_ascii_digit());
            }
            if matches!(b.get(self.pos), Some(b'e' | b'E')) {
                let save = self.pos;
                self.pos += 1;
                if matches!(b.get(self.pos), Some(b'+' | b'-')) {
                    self.pos += 1;
                }
                if b.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    digits(&mut self.pos, |c| c.is_ascii_digit());
                } else {
                    self.pos = save;
                }
            }
        }
        if matches!(b.get(self.pos), Some(b'j' | b'J' | b'l' | b'L')) {
            self.pos += 1;
        }
        self.push(TokenKind::Number, start, self.line);
    }

    fn string(&mut self, start: usize) -> Result<(), LexError> {
        let line = self.line;
        let quote = self.bytes[self.pos];
        let triple = self.bytes.get(self.pos + 1) == Some(&quote) && self.bytes.get(self.pos + 2) == Some(&quote);
        self.pos += if triple { 3 } else { 1 };
        loop {
            let Some(&b) = self.bytes.get(self.pos) else {
                self.line = line;
                return Err(self.err(LexErrorKind::UnterminatedString));
            };
            match b {
                b'\\' => {
                    self.pos += 1;
                    let n = self.newline_len();
                    if n > 0 {
                        self.pos += n;
                        self.line += 1;
                    } else if let Some(c) = self.peek() {
                        self.pos += c.len_utf8();
                    }
                }
                b'\n' | b'\r' => {
                    if !triple {
                        self.line = line;
                        return Err(self.err(LexErrorKind::UnterminatedString));
                    }
                    self.pos += self.newline_len();
                    self.line += 1;
                }
                _ if b == quote => {
                    if !triple {
                        self.pos += 1;
                        break;
                    }
                    if self.bytes.get(self.pos + 1) == Some(&quote) && self.bytes.get(self.pos + 2) == Some(&quote) {
                        self.pos += 3;
                        break;
                    }
                    self.pos += 1;
                }
                _ => self.pos += 1,
            }
        }
        self.push(TokenKind::String, start, line);
        Ok(())
    }

    fn op(&mut self) -> Result<(), LexError> {
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let len = if OPS3.iter().any(|o| rest.starts_with(o)) {
            3
        } else if OPS2.iter().any(|o| rest.starts_with(o)) {
            2
        } else {
            let c = rest.chars().next().unwrap();
            if !OPS1.contains(c) {
                return Err(self.err(LexErrorKind::UnexpectedCharacter(c)));
            }
            1
        };
        self.pos += len;
        if len == 1 {
            match self.bytes[start] {
                b @ (b'(' | b'[' | b'{') => self.brackets.push(b),
                b @ (b')' | b']' | b'}') => {
                    let open = match b {
                        b')' => b'(',
                        b']' => b'[',
                        _ => b'{',
                    };
                    if self.brackets.pop() != Some(open) {
                        return Err(self.err(LexErrorKind::UnmatchedBracket));
                    }
                }
                _ => {}
            }
        }
        self.push(TokenKind::Op, start, self.line);
        Ok(())
    }
}

/// Number of lexical tokens (names, numbers, strings, operators), i.e. every
/// token except comments and layout.
pub fn lexical_token_count(src: &str) -> Result<usize, LexError> {
    Ok(tokenize(src)?.iter().filter(|t| t.is_lexical()).count())
}

/// Checks the block structure CPython enforces on top of tokenization: an
/// INDENT may only follow a line ending in `:`, and such a line must be
/// followed by an indented block (unless its body is on the same line).
pub fn check_block_structure(tokens: &[Token<'_>]) -> Result<(), LexError> {
    let mut prev_significant: Option<&Token<'_>> = None;
    let mut expect_indent_after: Option<usize> = None;
    for tok in tokens {
        match tok.kind {
            TokenKind::Comment | TokenKind::Nl => continue,
            TokenKind::Newline => {
                if prev_significant.is_some_and(|p| p.is_op(":")) {
                    expect_indent_after = Some(tok.line);
                }
            }
            TokenKind::Indent => {
                if expect_indent_after.take().is_none() {
                    return Err(LexError { line: tok.line, kind: LexErrorKind::UnexpectedIndent });
                }
            }
            _ => {
                if let Some(line) = expect_indent_after.take() {
                    return Err(LexError { line, kind: LexErrorKind::ExpectedIndentedBlock });
                }
            }
        }
        prev_significant = Some(tok);
    }
    Ok(())
}
