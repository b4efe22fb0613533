//! Lattice terms over the signature `{0, 1, ', |, &, ->i, <->i, ==i}`.

mod expand;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, ParseErrorKind};
use crate::syntax::{self, BinOp, Connective, Dialect, Parser, Syntax, Tok, View};

pub use crate::syntax::ConnIndex;
pub use expand::{identity, implication};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Comp(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Impl(ConnIndex, Box<Term>, Box<Term>),
    BiImpl(ConnIndex, Box<Term>, Box<Term>),
    Ident(ConnIndex, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn comp(self) -> Term {
        Term::Comp(Box::new(self))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn implies(self, i: ConnIndex, other: Term) -> Term {
        Term::Impl(i, Box::new(self), Box::new(other))
    }

    pub fn bi_implies(self, i: ConnIndex, other: Term) -> Term {
        Term::BiImpl(i, Box::new(self), Box::new(other))
    }

    pub fn ident(self, i: ConnIndex, other: Term) -> Term {
        Term::Ident(i, Box::new(self), Box::new(other))
    }

    /// Parses a single term (no `=` or `=>`).
    pub fn parse(text: &str) -> Result<Term, ParseError> {
        syntax::parse_expr(text)
    }

    /// True when the tree uses only `Var`, `Zero`, `One`, `Comp`, `Join`, `Meet`.
    pub fn is_primitive(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero | Term::One => true,
            Term::Comp(t) => t.is_primitive(),
            Term::Join(l, r) | Term::Meet(l, r) => l.is_primitive() && r.is_primitive(),
            Term::Impl(..) | Term::BiImpl(..) | Term::Ident(..) => false,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Comp(t) => t.collect_vars(out),
            Term::Join(l, r)
            | Term::Meet(l, r)
            | Term::Impl(_, l, r)
            | Term::BiImpl(_, l, r)
            | Term::Ident(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Simultaneous substitution; unbound variables are left in place.
    pub fn substitute(&self, bindings: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Zero | Term::One => self.clone(),
            Term::Comp(t) => t.substitute(bindings).comp(),
            Term::Join(l, r) => l.substitute(bindings).join(r.substitute(bindings)),
            Term::Meet(l, r) => l.substitute(bindings).meet(r.substitute(bindings)),
            Term::Impl(i, l, r) => l.substitute(bindings).implies(*i, r.substitute(bindings)),
            Term::BiImpl(i, l, r) => l.substitute(bindings).bi_implies(*i, r.substitute(bindings)),
            Term::Ident(i, l, r) => l.substitute(bindings).ident(*i, r.substitute(bindings)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Comp(t) => 1 + t.size(),
            Term::Join(l, r)
            | Term::Meet(l, r)
            | Term::Impl(_, l, r)
            | Term::BiImpl(_, l, r)
            | Term::Ident(_, l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl Syntax for Term {
    const DIALECT: Dialect = Dialect::Lattice;

    fn var(name: String) -> Self {
        Term::Var(name)
    }
    fn zero() -> Self {
        Term::Zero
    }
    fn one() -> Self {
        Term::One
    }
    fn not(inner: Self) -> Self {
        inner.comp()
    }
    fn binary(op: BinOp, l: Self, r: Self) -> Self {
        match op {
            BinOp::Join => l.join(r),
            BinOp::Meet => l.meet(r),
            BinOp::Conn(Connective::Impl, i) => l.implies(i, r),
            BinOp::Conn(Connective::BiImpl, i) => l.bi_implies(i, r),
            BinOp::Conn(Connective::Ident, i) => l.ident(i, r),
        }
    }
    fn view(&self) -> View<'_, Self> {
        match self {
            Term::Var(v) => View::Var(v),
            Term::Zero => View::Zero,
            Term::One => View::One,
            Term::Comp(t) => View::Not(t),
            Term::Join(l, r) => View::Binary(BinOp::Join, l, r),
            Term::Meet(l, r) => View::Binary(BinOp::Meet, l, r),
            Term::Impl(i, l, r) => View::Binary(BinOp::Conn(Connective::Impl, *i), l, r),
            Term::BiImpl(i, l, r) => View::Binary(BinOp::Conn(Connective::BiImpl, *i), l, r),
            Term::Ident(i, l, r) => View::Binary(BinOp::Conn(Connective::Ident, *i), l, r),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::write_expr(f, self, 0)
    }
}

impl FromStr for Term {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::parse(s)
    }
}

/// `left = right`. A bare term `t` is read as the unit equation `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub left: Term,
    pub right: Term,
}

impl Equation {
    pub fn new(left: Term, right: Term) -> Self {
        Equation { left, right }
    }

    pub fn unit(t: Term) -> Self {
        Equation {
            left: t,
            right: Term::One,
        }
    }

    /// `a <= b`, encoded as `a & b = a`.
    pub fn leq(a: Term, b: Term) -> Self {
        Equation {
            left: a.clone().meet(b),
            right: a,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.right == Term::One
    }

    pub fn parse(text: &str) -> Result<Equation, ParseError> {
        let mut p = Parser::new(text, Dialect::Lattice)?;
        let e = parse_equation(&mut p)?;
        p.finish()?;
        Ok(e)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.left.variables();
        v.extend(self.right.variables());
        v
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Term>) -> Equation {
        Equation::new(self.left.substitute(bindings), self.right.substitute(bindings))
    }
}

fn parse_equation(p: &mut Parser) -> Result<Equation, ParseError> {
    let left: Term = p.expr()?;
    if p.eat(&Tok::Equals) {
        let right: Term = p.expr()?;
        Ok(Equation::new(left, right))
    } else {
        Ok(Equation::unit(left))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

impl FromStr for Equation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Equation::parse(s)
    }
}

/// `h1 , h2 , ... => conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiEquation {
    pub hypotheses: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiEquation {
    pub fn new(hypotheses: Vec<Equation>, conclusion: Equation) -> Self {
        QuasiEquation {
            hypotheses,
            conclusion,
        }
    }

    /// Accepts `e`, `=> e` and `e1 , ... , en => e`.
    pub fn parse(text: &str) -> Result<QuasiEquation, ParseError> {
        let mut p = Parser::new(text, Dialect::Lattice)?;
        let mut hypotheses = Vec::new();
        if !p.eat(&Tok::Implies) {
            hypotheses.push(parse_equation(&mut p)?);
            while p.eat(&Tok::Comma) {
                hypotheses.push(parse_equation(&mut p)?);
            }
            if !p.eat(&Tok::Implies) {
                p.finish()?;
                if hypotheses.len() > 1 {
                    return Err(ParseError::new(text.len(), ParseErrorKind::MissingImplies));
                }
                let conclusion = hypotheses.pop().expect("one equation parsed");
                return Ok(QuasiEquation::new(Vec::new(), conclusion));
            }
        }
        let conclusion = parse_equation(&mut p)?;
        p.finish()?;
        Ok(QuasiEquation::new(hypotheses, conclusion))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.conclusion.variables();
        for h in &self.hypotheses {
            v.extend(h.variables());
        }
        v
    }
}

impl From<Equation> for QuasiEquation {
    fn from(e: Equation) -> Self {
        QuasiEquation::new(Vec::new(), e)
    }
}

impl fmt::Display for QuasiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hypotheses.is_empty() {
            return write!(f, "{}", self.conclusion);
        }
        for (k, h) in self.hypotheses.iter().enumerate() {
            if k > 0 {
                f.write_str(" , ")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, " => {}", self.conclusion)
    }
}

impl FromStr for QuasiEquation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuasiEquation::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    fn idx(i: u8) -> ConnIndex {
        ConnIndex::new(i).unwrap()
    }

    #[test]
    fn parses_postfix_complement() {
        assert_eq!(Term::parse("a'").unwrap(), v("a").comp());
        assert_eq!(Term::parse("a''").unwrap(), v("a").comp().comp());
    }

    #[test]
    fn parses_indexed_implication() {
        assert_eq!(
            Term::parse("a ->1 b").unwrap(),
            v("a").implies(idx(1), v("b"))
        );
    }

    #[test]
    fn parses_parenthesized_meet() {
        assert_eq!(
            Term::parse("(a|b)&b'").unwrap(),
            v("a").join(v("b")).meet(v("b").comp())
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            Term::parse("a | b & c").unwrap(),
            v("a").join(v("b").meet(v("c")))
        );
        assert_eq!(
            Term::parse("a ->1 b ->2 c").unwrap(),
            v("a").implies(idx(1), v("b")).implies(idx(2), v("c"))
        );
        assert_eq!(
            Term::parse("a | b ==5 c ->0 d").unwrap(),
            v("a")
                .join(v("b"))
                .ident(idx(5), v("c").implies(idx(0), v("d")))
        );
    }

    #[test]
    fn prints_canonical_text() {
        assert_eq!(v("a").implies(idx(2), v("b")).to_string(), "a ->2 b");
        assert_eq!(v("a").ident(idx(5), v("b")).to_string(), "a ==5 b");
        assert_eq!(v("a").join(v("b").meet(v("c"))).to_string(), "a | b & c");
        assert_eq!(v("a").join(v("b")).meet(v("c")).to_string(), "(a | b) & c");
        assert_eq!(v("a").join(v("b").join(v("c"))).to_string(), "a | (b | c)");
        assert_eq!(v("a").join(v("b")).comp().to_string(), "(a | b)'");
        assert_eq!(v("a").comp().comp().to_string(), "a''");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = Term::parse("a | (b & c").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnclosedParen(4));
        let e = Term::parse("a | | b").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = Term::parse("a ->9 b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIndex('9'));
        assert!(Term::parse("").is_err());
        assert!(Term::parse("~a").is_err());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let mut b = BTreeMap::new();
        b.insert("a".to_string(), Term::parse("c'").unwrap());
        assert_eq!(Term::parse("a|b").unwrap().substitute(&b).to_string(), "c' | b");

        let mut b = BTreeMap::new();
        b.insert("a".to_string(), v("a"));
        b.insert("b".to_string(), v("a"));
        assert_eq!(
            Term::parse("a ==1 b").unwrap().substitute(&b),
            Term::parse("a ==1 a").unwrap()
        );

        let mut b = BTreeMap::new();
        b.insert("a".to_string(), Term::parse("a|b").unwrap());
        assert_eq!(Term::parse("a'").unwrap().substitute(&b).to_string(), "(a | b)'");

        let mut b = BTreeMap::new();
        b.insert("a".to_string(), v("b"));
        b.insert("b".to_string(), v("a"));
        assert_eq!(
            Term::parse("a & b'").unwrap().substitute(&b),
            Term::parse("b & a'").unwrap()
        );
    }

    #[test]
    fn equation_forms() {
        let e = Equation::parse("a | a'").unwrap();
        assert!(e.is_unit());
        assert_eq!(e.to_string(), "a | a' = 1");
        let e = Equation::parse("a|b = ((a|b)&b')|b").unwrap();
        assert!(!e.is_unit());
        assert_eq!(
            e.variables().into_iter().collect::<Vec<_>>(),
            vec!["a".to_string(), "b".to_string()]
        );
        assert!(Equation::parse("a = b = c").is_err());
    }

    #[test]
    fn quasi_equation_forms() {
        let q = QuasiEquation::parse("a ->1 b => a & b = a").unwrap();
        assert_eq!(q.hypotheses, vec![Equation::parse("a ->1 b").unwrap()]);
        assert_eq!(q.conclusion, Equation::parse("a & b = a").unwrap());

        let q = QuasiEquation::parse("a ==1 b , b ==1 c => a ==1 c").unwrap();
        assert_eq!(q.hypotheses.len(), 2);
        assert_eq!(q.to_string(), "a ==1 b = 1 , b ==1 c = 1 => a ==1 c = 1");

        let q = QuasiEquation::parse("a = a").unwrap();
        assert!(q.hypotheses.is_empty());
        let q = QuasiEquation::parse("=> a | a'").unwrap();
        assert!(q.hypotheses.is_empty());

        let e = QuasiEquation::parse("a , b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingImplies);
    }
}
