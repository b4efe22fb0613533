//! Propositional formulas of the quantum and classical calculi, their
//! axiom schemata and a derivation checker.

mod axioms;
mod derivation;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::check::{CheckReport, Checker};
use crate::error::{CheckError, ParseError};
use crate::lattice::FiniteOrthoLattice;
use crate::syntax::{self, BinOp, Connective, ConnIndex, Dialect, Syntax, View};
use crate::term::{Equation, Term};

pub use axioms::{axiom, axiom_names, cl5, rule_quasi, Direction, Rule, System};
pub use derivation::{
    parse_script, verify_derivation, Derivation, DerivationLine, Justification, Rejection,
};

/// Well-formed formula. Negation is written `~A`; formulas have no constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Wff {
    Var(String),
    Not(Box<Wff>),
    Or(Box<Wff>, Box<Wff>),
    And(Box<Wff>, Box<Wff>),
    Impl(ConnIndex, Box<Wff>, Box<Wff>),
    BiImpl(ConnIndex, Box<Wff>, Box<Wff>),
    Ident(ConnIndex, Box<Wff>, Box<Wff>),
}

impl Wff {
    pub fn var(name: impl Into<String>) -> Wff {
        Wff::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Wff {
        Wff::Not(Box::new(self))
    }

    pub fn or(self, other: Wff) -> Wff {
        Wff::Or(Box::new(self), Box::new(other))
    }

    pub fn and(self, other: Wff) -> Wff {
        Wff::And(Box::new(self), Box::new(other))
    }

    pub fn implies(self, i: ConnIndex, other: Wff) -> Wff {
        Wff::Impl(i, Box::new(self), Box::new(other))
    }

    pub fn bi_implies(self, i: ConnIndex, other: Wff) -> Wff {
        Wff::BiImpl(i, Box::new(self), Box::new(other))
    }

    pub fn ident(self, i: ConnIndex, other: Wff) -> Wff {
        Wff::Ident(i, Box::new(self), Box::new(other))
    }

    pub fn parse(text: &str) -> Result<Wff, ParseError> {
        syntax::parse_expr(text)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Wff::Var(v) => {
                out.insert(v.clone());
            }
            Wff::Not(w) => w.collect_vars(out),
            Wff::Or(l, r)
            | Wff::And(l, r)
            | Wff::Impl(_, l, r)
            | Wff::BiImpl(_, l, r)
            | Wff::Ident(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, bindings: &BTreeMap<String, Wff>) -> Wff {
        let s = |w: &Wff| w.substitute(bindings);
        match self {
            Wff::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Wff::Not(w) => s(w).not(),
            Wff::Or(l, r) => s(l).or(s(r)),
            Wff::And(l, r) => s(l).and(s(r)),
            Wff::Impl(i, l, r) => s(l).implies(*i, s(r)),
            Wff::BiImpl(i, l, r) => s(l).bi_implies(*i, s(r)),
            Wff::Ident(i, l, r) => s(l).ident(*i, s(r)),
        }
    }

    /// The lattice term of the formula: `~` to `'`, `|` and `&` to join and
    /// meet, indexed connectives to themselves, variables lowercased.
    pub fn to_term(&self) -> Term {
        match self {
            Wff::Var(v) => Term::var(v.to_lowercase()),
            Wff::Not(w) => w.to_term().comp(),
            Wff::Or(l, r) => l.to_term().join(r.to_term()),
            Wff::And(l, r) => l.to_term().meet(r.to_term()),
            Wff::Impl(i, l, r) => l.to_term().implies(*i, r.to_term()),
            Wff::BiImpl(i, l, r) => l.to_term().bi_implies(*i, r.to_term()),
            Wff::Ident(i, l, r) => l.to_term().ident(*i, r.to_term()),
        }
    }
}

impl Syntax for Wff {
    const DIALECT: Dialect = Dialect::Logic;

    fn var(name: String) -> Self {
        Wff::Var(name)
    }
    fn zero() -> Self {
        unreachable!("the logic dialect has no constants")
    }
    fn one() -> Self {
        unreachable!("the logic dialect has no constants")
    }
    fn not(inner: Self) -> Self {
        inner.not()
    }
    fn binary(op: BinOp, l: Self, r: Self) -> Self {
        match op {
            BinOp::Join => l.or(r),
            BinOp::Meet => l.and(r),
            BinOp::Conn(Connective::Impl, i) => l.implies(i, r),
            BinOp::Conn(Connective::BiImpl, i) => l.bi_implies(i, r),
            BinOp::Conn(Connective::Ident, i) => l.ident(i, r),
        }
    }
    fn view(&self) -> View<'_, Self> {
        match self {
            Wff::Var(v) => View::Var(v),
            Wff::Not(w) => View::Not(w),
            Wff::Or(l, r) => View::Binary(BinOp::Join, l, r),
            Wff::And(l, r) => View::Binary(BinOp::Meet, l, r),
            Wff::Impl(i, l, r) => View::Binary(BinOp::Conn(Connective::Impl, *i), l, r),
            Wff::BiImpl(i, l, r) => View::Binary(BinOp::Conn(Connective::BiImpl, *i), l, r),
            Wff::Ident(i, l, r) => View::Binary(BinOp::Conn(Connective::Ident, *i), l, r),
        }
    }
}

impl fmt::Display for Wff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::write_expr(f, self, 0)
    }
}

impl FromStr for Wff {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Wff::parse(s)
    }
}

pub fn map_to_lattice(w: &Wff) -> Term {
    w.to_term()
}

/// Checks `f(A) = 1` for each formula under every valuation into `l`.
pub fn soundness_check(
    wffs: &[Wff],
    l: &FiniteOrthoLattice,
) -> Result<Vec<CheckReport>, CheckError> {
    let checker = Checker::default();
    wffs.iter()
        .map(|w| checker.check_equation(l, &Equation::unit(w.to_term())))
        .collect()
}
