use std::fmt;

use super::Wff;
use crate::syntax::ConnIndex;
use crate::term::QuasiEquation;

/// The calculus a derivation is carried out in. The quantum calculus fixes
/// one identity index `i` in `1..=5` for the whole derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Ql(ConnIndex),
    Cl,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Ql(i) => write!(f, "QL i={i}"),
            System::Cl => f.write_str("CL"),
        }
    }
}

const QL: [(&str, &str); 6] = [
    ("QL1", "A | B ==# B | A"),
    ("QL2", "A | (B | C) ==# (A | B) | C"),
    ("QL3", "A ==# ~~A"),
    ("QL4", "~A | A ==# (~A | A) | B"),
    ("QL5", "A | (A & B) ==# A"),
    ("QL6", "(A & B) ==# ~(~A | ~B)"),
];

const CL: [(&str, &str); 4] = [
    ("CL1", "A | A ->0 A"),
    ("CL2", "A ->0 A | B"),
    ("CL3", "A | B ->0 B | A"),
    ("CL4", "(A ->0 B) ->0 (C | A ->0 C | B)"),
];

fn schema(text: &str, i: ConnIndex) -> Wff {
    Wff::parse(&text.replace('#', &i.to_string())).expect("axiom schema literal")
}

/// Axiom schema by name, with metavariables `A`, `B`, `C`.
pub fn axiom(system: System, name: &str) -> Option<Wff> {
    match system {
        System::Ql(i) => QL.iter().find(|(n, _)| *n == name).map(|(_, s)| schema(s, i)),
        System::Cl => CL
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| schema(s, ConnIndex::ALL[0])),
    }
}

pub fn axiom_names(system: System) -> Vec<&'static str> {
    match system {
        System::Ql(_) => QL.iter().map(|(n, _)| *n).collect(),
        System::Cl => CL.iter().map(|(n, _)| *n).collect(),
    }
}

/// Distributivity in identity form, a theorem schema of the classical
/// calculus for every `i` in `0..=5`.
pub fn cl5(i: ConnIndex) -> Wff {
    schema("A | (B & C) ==# (A | B) & (A | C)", i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From the left side of the rule's equivalence to the right.
    Ltr,
    Rtl,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Ltr => "ltr",
            Direction::Rtl => "rtl",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `A ==i B` gives `A | C ==i B | C`.
    Qlr1,
    /// `A ==i B` and `B ==i C` give `A ==i C`.
    Qlr2,
    /// `A ==i B` iff `~A ==i ~B`.
    Qlr3,
    /// `A ==i B` gives `B ==i A`.
    Qlr4,
    /// `~A | A ==i B` iff `B`.
    Qlr5,
    /// `A` and `A ->0 B` give `B`.
    Clr1,
}

impl Rule {
    pub const ALL: [Rule; 6] = [Rule::Qlr1, Rule::Qlr2, Rule::Qlr3, Rule::Qlr4, Rule::Qlr5, Rule::Clr1];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Qlr1 => "QLR1",
            Rule::Qlr2 => "QLR2",
            Rule::Qlr3 => "QLR3",
            Rule::Qlr4 => "QLR4",
            Rule::Qlr5 => "QLR5",
            Rule::Clr1 => "CLR1",
        }
    }

    pub fn parse(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Number of source lines.
    pub fn arity(self) -> usize {
        match self {
            Rule::Qlr2 | Rule::Clr1 => 2,
            _ => 1,
        }
    }

    /// Rules stated as equivalences need a direction.
    pub fn directed(self) -> bool {
        matches!(self, Rule::Qlr3 | Rule::Qlr5)
    }

    pub fn belongs_to(self, system: System) -> bool {
        (self == Rule::Clr1) == (system == System::Cl)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lattice image of a rule: hypotheses at 1 imply the conclusion at 1.
/// `i` is ignored by `CLR1`.
pub fn rule_quasi(rule: Rule, dir: Direction, i: ConnIndex) -> QuasiEquation {
    let (fwd, back) = match rule {
        Rule::Qlr1 => ("a ==# b => (a | c) ==# (b | c)", None),
        Rule::Qlr2 => ("a ==# b , b ==# c => a ==# c", None),
        Rule::Qlr3 => ("a ==# b => a' ==# b'", Some("a' ==# b' => a ==# b")),
        Rule::Qlr4 => ("a ==# b => b ==# a", None),
        Rule::Qlr5 => ("a' | a ==# b => b", Some("b => a' | a ==# b")),
        Rule::Clr1 => ("a , a ->0 b => b", None),
    };
    let text = match (dir, back) {
        (Direction::Rtl, Some(b)) => b,
        _ => fwd,
    };
    QuasiEquation::parse(&text.replace('#', &i.to_string())).expect("rule literal")
}
