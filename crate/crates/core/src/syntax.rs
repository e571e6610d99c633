//! Shared lexer for the textual term and formula syntaxes.

use std::fmt;

use thiserror::Error;

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn new(line: usize, col: usize) -> Self {
        Pos { line, col }
    }

    /// Position of `inner` when it was lexed from text that started at `self`.
    pub(crate) fn offset(self, inner: Pos) -> Pos {
        if inner.line == 1 {
            Pos::new(self.line, self.col + inner.col - 1)
        } else {
            Pos::new(self.line + inner.line - 1, inner.col)
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }

    pub(crate) fn shifted(self, base: Pos) -> Self {
        ParseError {
            pos: base.offset(self.pos),
            message: self.message,
        }
    }
}

/// Words that may not be used as variable, label or binder names. They are
/// either constants of the term language, quantifiers, or the name of ε.
pub const RESERVED: &[&str] = &[
    "lam", "pair", "left", "right", "isZero", "ite", "R", "eps", "forall", "exists",
];

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_')
}

/// An identifier that can name a variable (not reserved).
pub fn is_variable_name(s: &str) -> bool {
    is_identifier(s) && !RESERVED.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Zero,
    One,
    Plus,
    CutMinus,
    Eq,
    Geq,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Comma,
    Dot,
    Backslash,
    Eps,
    Forall,
    Exists,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Plus => "+",
            Tok::CutMinus => "-.",
            Tok::Eq => "=",
            Tok::Geq => ">=",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Arrow => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Backslash => "\\",
            Tok::Eps => "ε",
            Tok::Forall => "∀",
            Tok::Exists => "∃",
        };
        write!(f, "`{s}`")
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_ascii_alphanumeric() || chars[j] == '\'' || chars[j] == '_')
                {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                (Tok::Ident(word), j - start)
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                match &chars[i..j] {
                    ['0'] => (Tok::Zero, 1),
                    ['1'] => (Tok::One, 1),
                    digits => {
                        let lit: String = digits.iter().collect();
                        return Err(ParseError::new(
                            pos,
                            format!("numeric literal `{lit}`: only the constants 0 and 1 exist"),
                        ));
                    }
                }
            }
            '+' => (Tok::Plus, 1),
            '∸' => (Tok::CutMinus, 1),
            '-' if next == Some('.') => (Tok::CutMinus, 2),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '→' => (Tok::Arrow, 1),
            '=' => (Tok::Eq, 1),
            '>' if next == Some('=') => (Tok::Geq, 2),
            '≥' => (Tok::Geq, 1),
            '/' if next == Some('\\') => (Tok::And, 2),
            '∧' => (Tok::And, 1),
            '\\' if next == Some('/') => (Tok::Or, 2),
            '∨' => (Tok::Or, 1),
            '\\' | 'λ' => (Tok::Backslash, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            'ε' => (Tok::Eps, 1),
            '∀' => (Tok::Forall, 1),
            '∃' => (Tok::Exists, 1),
            other => {
                return Err(ParseError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        out.push((tok, pos));
        i += width;
        col += width;
    }
    Ok(out)
}

/// Cursor over a token vector, shared by the term and formula parsers.
pub(crate) struct Cursor {
    toks: Vec<(Tok, Pos)>,
    idx: usize,
    end: Pos,
}

impl Cursor {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        let toks = tokenize(src)?;
        let end = match src.lines().count() {
            0 => Pos::new(1, 1),
            n => Pos::new(n, src.lines().last().map_or(0, |l| l.chars().count()) + 1),
        };
        Ok(Cursor { toks, idx: 0, end })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    pub(crate) fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.idx + ahead).map(|(t, _)| t)
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    pub(crate) fn mark(&self) -> usize {
        self.idx
    }

    pub(crate) fn reset(&mut self, mark: usize) {
        self.idx = mark;
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(w)) if w == word)
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("{tok}")))
        }
    }

    pub(crate) fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.pos(), format!("expected {wanted}, found {t}")),
            None => ParseError::new(self.pos(), format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn variable(&mut self) -> Result<String, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(name)) if !RESERVED.contains(&name.as_str()) => {
                let name = name.clone();
                self.idx += 1;
                Ok(name)
            }
            Some(Tok::Ident(name)) => Err(ParseError::new(
                pos,
                format!("`{name}` is reserved and cannot name a variable"),
            )),
            _ => Err(self.unexpected("a variable name")),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }
}

/// Fresh variant of `base` built by appending primes until `taken` rejects it.
pub(crate) fn prime_until(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = format!("{base}'");
    while taken(&name) {
        name.push('\'');
    }
    name
}
