//! Tokenizer, precedence parser and printer shared by lattice terms and
//! logic formulas.
//!
//! Both languages use the same binary connectives and precedence:
//!
//! ```text
//! ' / ~  (tightest)  >  &  >  |  >  ->i, <->i  >  ==i  (loosest)
//! ```
//!
//! All binary connectives associate to the left. Terms write complement as a
//! postfix `'` and admit the constants `0` and `1`; formulas write negation as
//! a prefix `~` and have no constants.

use std::fmt;

use crate::error::{ParseError, ParseErrorKind};

/// Index of a derived connective (`->i`, `<->i`, `==i`), always in `0..=5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnIndex(u8);

impl ConnIndex {
    pub const ALL: [ConnIndex; 6] = [
        ConnIndex(0),
        ConnIndex(1),
        ConnIndex(2),
        ConnIndex(3),
        ConnIndex(4),
        ConnIndex(5),
    ];

    /// The five "quantum" indices `1..=5`.
    pub const QUANTUM: [ConnIndex; 5] = [
        ConnIndex(1),
        ConnIndex(2),
        ConnIndex(3),
        ConnIndex(4),
        ConnIndex(5),
    ];

    pub fn new(i: u8) -> Option<Self> {
        (i <= 5).then_some(ConnIndex(i))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for ConnIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The three families of indexed connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    /// `->i`
    Impl,
    /// `<->i`
    BiImpl,
    /// `==i`
    Ident,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Impl => "->",
            Connective::BiImpl => "<->",
            Connective::Ident => "==",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BinOp {
    Join,
    Meet,
    Conn(Connective, ConnIndex),
}

impl BinOp {
    fn level(self) -> u8 {
        match self {
            BinOp::Conn(Connective::Ident, _) => 0,
            BinOp::Conn(_, _) => 1,
            BinOp::Join => 2,
            BinOp::Meet => 3,
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinOp::Join => f.write_str("|"),
            BinOp::Meet => f.write_str("&"),
            BinOp::Conn(c, i) => write!(f, "{}{}", c.symbol(), i),
        }
    }
}

const LEVEL_UNARY: u8 = 4;
const LEVEL_ATOM: u8 = 5;

/// Borrowed one-level view of a syntax tree node.
pub(crate) enum View<'a, T> {
    Var(&'a str),
    Zero,
    One,
    Not(&'a T),
    Binary(BinOp, &'a T, &'a T),
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dialect {
    /// Postfix `'`, constants allowed.
    Lattice,
    /// Prefix `~`, no constants.
    Logic,
}

pub(crate) trait Syntax: Sized {
    const DIALECT: Dialect;

    fn var(name: String) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn not(inner: Self) -> Self;
    fn binary(op: BinOp, left: Self, right: Self) -> Self;
    fn view(&self) -> View<'_, Self>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Zero,
    One,
    Prime,
    Tilde,
    LParen,
    RParen,
    Join,
    Meet,
    Conn(Connective, ConnIndex),
    Equals,
    Implies,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::One => f.write_str("`1`"),
            Tok::Prime => f.write_str("`'`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Join => f.write_str("`|`"),
            Tok::Meet => f.write_str("`&`"),
            Tok::Conn(c, i) => write!(f, "`{}{}`", c.symbol(), i),
            Tok::Equals => f.write_str("`=`"),
            Tok::Implies => f.write_str("`=>`"),
            Tok::Comma => f.write_str("`,`"),
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let index_at = |pos: usize, at: usize| -> Result<ConnIndex, ParseError> {
        match bytes.get(at) {
            Some(d) if d.is_ascii_digit() => ConnIndex::new(d - b'0')
                .ok_or_else(|| ParseError::new(pos, ParseErrorKind::UnknownIndex(*d as char))),
            _ => Err(ParseError::new(pos, ParseErrorKind::MissingIndex)),
        }
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'|' => {
                i += 1;
                Tok::Join
            }
            b'&' => {
                i += 1;
                Tok::Meet
            }
            b'\'' => {
                i += 1;
                Tok::Prime
            }
            b'~' => {
                i += 1;
                Tok::Tilde
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                let idx = index_at(start, i + 2)?;
                i += 3;
                Tok::Conn(Connective::Impl, idx)
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                let idx = index_at(start, i + 3)?;
                i += 4;
                Tok::Conn(Connective::BiImpl, idx)
            }
            b'=' if bytes.get(i + 1) == Some(&b'=') => {
                let idx = index_at(start, i + 2)?;
                i += 3;
                Tok::Conn(Connective::Ident, idx)
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            b'=' => {
                i += 1;
                Tok::Equals
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                match &text[start..i] {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    other => {
                        return Err(ParseError::new(
                            start,
                            ParseErrorKind::BadConstant(other.to_string()),
                        ))
                    }
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, ParseErrorKind::UnexpectedChar(ch)));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    dialect: Dialect,
}

impl Parser {
    pub(crate) fn new(text: &str, dialect: Dialect) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.len(),
            dialect,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.offset(), ParseErrorKind::Unexpected(t.to_string())),
            None => ParseError::new(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    pub(crate) fn expr<T: Syntax>(&mut self) -> Result<T, ParseError> {
        debug_assert!(T::DIALECT == self.dialect);
        self.level::<T>(0)
    }

    fn level<T: Syntax>(&mut self, level: u8) -> Result<T, ParseError> {
        if level >= LEVEL_UNARY {
            return self.unary();
        }
        let mut lhs = self.level::<T>(level + 1)?;
        loop {
            let op = match self.peek() {
                Some(Tok::Join) => BinOp::Join,
                Some(Tok::Meet) => BinOp::Meet,
                Some(Tok::Conn(c, i)) => BinOp::Conn(*c, *i),
                _ => break,
            };
            if op.level() != level {
                break;
            }
            self.pos += 1;
            let rhs = self.level::<T>(level + 1)?;
            lhs = T::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary<T: Syntax>(&mut self) -> Result<T, ParseError> {
        if self.dialect == Dialect::Logic && self.eat(&Tok::Tilde) {
            return Ok(T::not(self.unary()?));
        }
        let mut t = self.atom()?;
        if self.dialect == Dialect::Lattice {
            while self.eat(&Tok::Prime) {
                t = T::not(t);
            }
        }
        Ok(t)
    }

    fn atom<T: Syntax>(&mut self) -> Result<T, ParseError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Ident(_)) => match self.bump() {
                Some(Tok::Ident(name)) => Ok(T::var(name)),
                _ => unreachable!(),
            },
            Some(Tok::Zero) | Some(Tok::One) if self.dialect == Dialect::Logic => {
                Err(ParseError::new(at, ParseErrorKind::ConstantInFormula))
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(T::zero())
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(T::one())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.level::<T>(0)?;
                if !self.eat(&Tok::RParen) {
                    return Err(match self.peek() {
                        None => ParseError::new(self.end, ParseErrorKind::UnclosedParen(at)),
                        Some(_) => self.unexpected(),
                    });
                }
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub(crate) fn parse_expr<T: Syntax>(text: &str) -> Result<T, ParseError> {
    let mut p = Parser::new(text, T::DIALECT)?;
    let t = p.expr::<T>()?;
    p.finish()?;
    Ok(t)
}

fn level_of<T: Syntax>(t: &T) -> u8 {
    match t.view() {
        View::Var(_) | View::Zero | View::One => LEVEL_ATOM,
        View::Not(_) => LEVEL_UNARY,
        View::Binary(op, _, _) => op.level(),
    }
}

/// Minimal-parenthesis printer; `parse_expr(print(t)) == t` for every tree.
pub(crate) fn write_expr<T: Syntax>(f: &mut fmt::Formatter<'_>, t: &T, min: u8) -> fmt::Result {
    let paren = level_of(t) < min;
    if paren {
        f.write_str("(")?;
    }
    match t.view() {
        View::Var(name) => f.write_str(name)?,
        View::Zero => f.write_str("0")?,
        View::One => f.write_str("1")?,
        View::Not(inner) => match T::DIALECT {
            Dialect::Lattice => {
                write_expr(f, inner, LEVEL_UNARY)?;
                f.write_str("'")?;
            }
            Dialect::Logic => {
                f.write_str("~")?;
                write_expr(f, inner, LEVEL_UNARY)?;
            }
        },
        View::Binary(op, l, r) => {
            let lvl = op.level();
            write_expr(f, l, lvl)?;
            write!(f, " {op} ")?;
            write_expr(f, r, lvl + 1)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}
