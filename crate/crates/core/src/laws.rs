//! Catalogue of named laws, written in the term grammar.

use std::fmt;

use crate::syntax::ConnIndex;
use crate::term::{Equation, QuasiEquation};

/// A named equation or quasi-equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub name: String,
    pub statement: QuasiEquation,
}

impl Law {
    /// Parses `text` as a quasi-equation. Panics on malformed text, so only
    /// use it for literals.
    pub fn new(name: impl Into<String>, text: &str) -> Law {
        let name = name.into();
        let statement = QuasiEquation::parse(text)
            .unwrap_or_else(|e| panic!("law {name}: `{text}`: {e}"));
        Law { name, statement }
    }

    fn indexed(name: &str, i: ConnIndex, template: &str) -> Law {
        Law::new(format!("{name}[{i}]"), &template.replace('#', &i.to_string()))
    }

    pub fn is_equation(&self) -> bool {
        self.statement.hypotheses.is_empty()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.statement)
    }
}

/// L1 to L6, with L2 as plain associativity.
pub fn ol_axioms() -> Vec<Law> {
    vec![
        Law::new("L1", "a | b = b | a"),
        Law::new("L2", "(a | b) | c = a | (b | c)"),
        Law::new("L3", "a'' = a"),
        Law::new("L4", "a | (b | b') = b | b'"),
        Law::new("L5", "a | (a & b) = a"),
        Law::new("L6", "a & b = (a' | b')'"),
    ]
}

/// Orthomodularity in the form `a|b = ((a|b)&b')|b`.
pub fn l7() -> Law {
    Law::new("L7", "a | b = ((a | b) & b') | b")
}

/// Orthomodularity in the form `a | (a' & (a|b)) = a|b`; equivalent to L7
/// as a law but with the witness orientation used for classification.
pub fn om() -> Law {
    Law::new("OM", "a | (a' & (a | b)) = a | b")
}

/// Weak orthomodularity.
pub fn l8() -> Law {
    Law::new("L8", "(a' & (a | b)) | b' | (a & b)")
}

/// Distributivity.
pub fn l9() -> Law {
    Law::new("L9", "a | (b & c) = (a | b) & (a | c)")
}

/// Weak distributivity for one identity.
pub fn l10(i: ConnIndex) -> Law {
    Law::indexed("L10", i, "(a | (b & c)) ==# ((a | b) & (a | c))")
}

/// Join compatibility of `==i` (defined for `i` in 1..5).
pub fn l8_1(i: ConnIndex) -> Law {
    Law::indexed("L8.1", i, "a ==# b => (a | c) ==# (b | c)")
}

pub fn l8_2() -> Law {
    Law::new("L8.2", "a ->1 b => b' ->1 a'")
}

pub fn l8_3() -> Law {
    Law::new("L8.3", "((a ->1 b) ->0 b) ==5 (a | b)")
}

/// `a ->i b = 1` implies `a <= b`.
pub fn implication_order(i: ConnIndex) -> Law {
    Law::indexed("impl-order", i, "a -># b => a & b = a")
}

/// `a ==i b = 1` implies `a = b`.
pub fn identity_equality(i: ConnIndex) -> Law {
    Law::indexed("ident-eq", i, "a ==# b => a = b")
}

/// `a ==i b = (a ->i b) & (b ->0 a)`.
pub fn identity_decomposition(i: ConnIndex) -> Law {
    Law::indexed("ident-decomp", i, "a ==# b = (a -># b) & (b ->0 a)")
}

/// Join recovered from implication alone.
pub fn join_from_implication(i: ConnIndex) -> Law {
    Law::indexed(
        "impl-join",
        i,
        "a | b = (a -># b) -># (((a -># b) -># (b -># a)) -># a)",
    )
}

pub fn complement_as_implication(i: ConnIndex) -> Law {
    Law::indexed("impl-comp", i, "a -># 0 = a'")
}

pub fn biimplication_is_identity5(i: ConnIndex) -> Law {
    Law::indexed("bi-ident5", i, "a <-># b = a ==5 b")
}

/// Transitivity of `==i` as a relation on elements equal to 1.
pub fn identity_transitivity(i: ConnIndex) -> Law {
    Law::indexed("ident-trans", i, "a ==# b , b ==# c => a ==# c")
}

/// Laws valid in every ortholattice.
pub fn ol_battery() -> Vec<Law> {
    let mut out = vec![
        Law {
            name: "half-dist".into(),
            statement: Equation::leq(
                "(a & b) | (a & c)".parse().expect("literal"),
                "a & (b | c)".parse().expect("literal"),
            )
            .into(),
        },
        Law::new("mp", "a , a ->0 b => b"),
        Law::new("ident5-bi1", "(a ==5 b) ->0 (a <->1 b)"),
        Law::new("impl2-ident5", "b ->2 a => a ->2 (a ==5 b) = a ==5 b"),
        Law::new("ident5-impl1-join", "a ==5 b => a ->1 (b | c)"),
        Law::new("impl2-join", "a ->2 (b | c) = (a | c) ->2 (b | c)"),
    ];
    for i in ConnIndex::ALL {
        out.push(Law::indexed("meet-chain-a", i, "a -># (a & b) = a ==# (a & b)"));
        out.push(Law::indexed("meet-chain-b", i, "a ==# (a & b) = (a & b) ==# a"));
        out.push(Law::indexed("meet-chain-c", i, "(a & b) ==# a = a ->1 b"));
        out.push(Law::indexed("join-chain-a", i, "(a | b) -># b = (a | b) ==# b"));
        out.push(Law::indexed("join-chain-b", i, "(a | b) ==# b = b ==# (a | b)"));
        out.push(Law::indexed("join-chain-c", i, "b ==# (a | b) = a ->2 b"));
    }
    out
}

/// Laws valid in every weakly orthomodular lattice.
pub fn woml_battery() -> Vec<Law> {
    vec![
        Law::new("impl1-impl2", "(a ->1 b) ->0 (a ->2 b)"),
        Law::new("impl1-to-impl2", "a ->1 b => a ->2 b"),
        Law::new("impl2-to-impl1", "a ->2 b => a ->1 b"),
        Law::new("impl2-ident5-unit", "a ->2 b => a ->2 (a ==5 b)"),
        Law::new("impl2-antisym", "a ->2 b , b ->2 a => a ==5 b"),
        Law::new("ident5-impl2-join", "a ==5 b => a ->2 (b | c)"),
        Law::new("ident5-join", "a ==5 b => (a | c) ==5 (b | c)"),
    ]
}

/// The four equivalent weak orthomodularity conditions, for each `i` where
/// they are indexed.
pub fn weak_orthomodularity_forms() -> Vec<Law> {
    let mut out = vec![l8()];
    out.extend(ConnIndex::QUANTUM.into_iter().map(l8_1));
    out.push(l8_2());
    out.push(l8_3());
    out
}

/// Resolves a catalogue name such as `L7`, `L10[3]`, `ident-trans[2]`.
pub fn by_name(name: &str) -> Option<Law> {
    let (base, index) = match name.strip_suffix(']').and_then(|s| s.split_once('[')) {
        Some((b, i)) => (b, Some(ConnIndex::new(i.parse().ok()?)?)),
        None => (name, None),
    };
    let fixed = |law: Law| index.is_none().then_some(law);
    let indexed = |f: fn(ConnIndex) -> Law| index.map(f);
    match base {
        "L7" => fixed(l7()),
        "OM" => fixed(om()),
        "L8" => fixed(l8()),
        "L9" => fixed(l9()),
        "L8.2" => fixed(l8_2()),
        "L8.3" => fixed(l8_3()),
        "L10" => indexed(l10),
        "L8.1" => index.filter(|i| i.get() > 0).map(l8_1),
        "impl-order" => indexed(implication_order),
        "ident-eq" => indexed(identity_equality),
        "ident-decomp" => indexed(identity_decomposition),
        "impl-join" => indexed(join_from_implication),
        "impl-comp" => indexed(complement_as_implication),
        "bi-ident5" => indexed(biimplication_is_identity5),
        "ident-trans" => indexed(identity_transitivity),
        _ => ol_axioms()
            .into_iter()
            .chain(ol_battery())
            .chain(woml_battery())
            .find(|l| l.name == name),
    }
}
