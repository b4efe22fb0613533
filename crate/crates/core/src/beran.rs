//! The free orthomodular lattice on two generators and canonical classes
//! of two-variable terms.
//!
//! The free OML on two generators is `2^4 x MO2` (96 elements). A
//! two-variable term is canonicalised by evaluating it at the generating
//! pair; two terms are equal in every OML exactly when their values agree.
//! Class ids are `1 + index`, where elements are ordered by the Boolean
//! component read as a 4-bit integer and then by MO2 in the order
//! `0, p, p', q, q', 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::check::{eval, CheckReport, Checker, Valuation};
use crate::error::{BeranError, CheckError};
use crate::lattice::{stock, Elem, FiniteOrthoLattice};
use crate::laws;
use crate::syntax::ConnIndex;
use crate::term::Term;

/// A class of two-variable terms modulo OML equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeranClass {
    pub id: usize,
    pub value: Elem,
    /// Registered representative term, if any.
    pub label: Option<String>,
    /// The element's label in the 96-element lattice.
    pub element: String,
}

impl fmt::Display for BeranClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "#{} {} {}", self.id, l, self.element),
            None => write!(f, "#{} {}", self.id, self.element),
        }
    }
}

pub struct FreeOml2 {
    lattice: FiniteOrthoLattice,
    ga: Elem,
    gb: Elem,
    labels: Vec<Option<String>>,
}

/// Elements generated from `gens` under complement, join and meet.
pub fn closure(l: &FiniteOrthoLattice, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; l.size()];
    let mut out: Vec<Elem> = Vec::new();
    let mut push = |e: Elem, out: &mut Vec<Elem>| {
        if !seen[e.index()] {
            seen[e.index()] = true;
            out.push(e);
        }
    };
    for &g in gens {
        push(g, &mut out);
    }
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        push(l.ortho(x), &mut out);
        for j in 0..=k {
            let y = out[j];
            push(l.join(x, y), &mut out);
            push(l.meet(x, y), &mut out);
        }
        k += 1;
    }
    out.sort();
    out
}

impl FreeOml2 {
    /// Builds `2^4 x MO2` and checks that the standard generators produce
    /// all of it, falling back to a search over all pairs.
    pub fn build() -> Result<FreeOml2, BeranError> {
        let l = stock("F2").expect("stock F2");
        let find = |s: &str| l.find(s).expect("generator label");
        let (mut ga, mut gb) = (find("(1100,p)"), find("(1010,q)"));
        if closure(&l, &[ga, gb]).len() != l.size() {
            let pair = l
                .elements()
                .flat_map(|x| l.elements().map(move |y| (x, y)))
                .find(|&(x, y)| closure(&l, &[x, y]).len() == l.size())
                .ok_or(BeranError::NoGeneratingPair)?;
            (ga, gb) = pair;
        }
        let mut free = FreeOml2 {
            labels: vec![None; l.size()],
            lattice: l,
            ga,
            gb,
        };
        for t in representatives() {
            let e = free.value(&t).expect("two-variable representative");
            free.labels[e.index()].get_or_insert_with(|| t.to_string());
        }
        Ok(free)
    }

    /// Shared instance.
    pub fn get() -> &'static FreeOml2 {
        static FREE: OnceLock<FreeOml2> = OnceLock::new();
        FREE.get_or_init(|| FreeOml2::build().expect("the free OML is generated"))
    }

    pub fn lattice(&self) -> &FiniteOrthoLattice {
        &self.lattice
    }

    pub fn generators(&self) -> (Elem, Elem) {
        (self.ga, self.gb)
    }

    /// Variable assignment used for `t`: `a`, `b` go to the generators when
    /// the term only uses those names, otherwise the sorted variables do.
    fn valuation(&self, t: &Term) -> Result<Valuation, BeranError> {
        let vars: Vec<String> = t.variables().into_iter().collect();
        if vars.len() > 2 {
            return Err(BeranError::TooManyVariables(vars));
        }
        let names: Vec<&str> = if vars.iter().all(|v| v == "a" || v == "b") {
            vec!["a", "b"]
        } else {
            vars.iter().map(String::as_str).collect()
        };
        let mut v = Valuation::new();
        for (name, g) in names.into_iter().zip([self.ga, self.gb]) {
            v.insert(name, g);
        }
        Ok(v)
    }

    fn value(&self, t: &Term) -> Result<Elem, BeranError> {
        let v = self.valuation(t)?;
        Ok(eval(&self.lattice, &v, t).expect("valuation covers the term"))
    }

    pub fn class_of(&self, e: Elem) -> BeranClass {
        BeranClass {
            id: e.index() + 1,
            value: e,
            label: self.labels[e.index()].clone(),
            element: self.lattice.label(e).to_string(),
        }
    }

    pub fn class_by_id(&self, id: usize) -> Option<BeranClass> {
        (1..=self.lattice.size())
            .contains(&id)
            .then(|| self.class_of(Elem::from_index(id - 1)))
    }

    pub fn canon(&self, t: &Term) -> Result<BeranClass, BeranError> {
        Ok(self.class_of(self.value(t)?))
    }

    pub fn equal_oml(&self, t1: &Term, t2: &Term) -> Result<bool, BeranError> {
        let both = t1.clone().join(t2.clone());
        let v = self.valuation(&both)?;
        let x = eval(&self.lattice, &v, t1).expect("valuation covers the term");
        let y = eval(&self.lattice, &v, t2).expect("valuation covers the term");
        Ok(x == y)
    }

    /// Entry `(i, j)` is the class of `(a ->i b) & (b ->j a)`.
    pub fn table1(&self) -> Table1 {
        let (a, b) = (Term::var("a"), Term::var("b"));
        let idents: Vec<Elem> = ConnIndex::ALL
            .iter()
            .map(|&k| self.value(&a.clone().ident(k, b.clone())).expect("two variables"))
            .collect();
        let mut entries = Vec::with_capacity(6);
        let mut identity = [[None; 6]; 6];
        for i in ConnIndex::ALL {
            let mut row = Vec::with_capacity(6);
            for j in ConnIndex::ALL {
                let t = a.clone().implies(i, b.clone()).meet(b.clone().implies(j, a.clone()));
                let e = self.value(&t).expect("two variables");
                identity[i.get() as usize][j.get() as usize] =
                    idents.iter().position(|&x| x == e).map(|k| k as u8);
                row.push(self.class_of(e));
            }
            entries.push(row);
        }
        Table1 { entries, identity }
    }

    /// All 96 classes in id order.
    pub fn classes(&self) -> Vec<BeranClass> {
        self.lattice.elements().map(|e| self.class_of(e)).collect()
    }
}

/// Representatives in label priority order: constants, variables,
/// complements, identities, implications, biimplications.
fn representatives() -> Vec<Term> {
    let (a, b) = (Term::var("a"), Term::var("b"));
    let mut out = vec![Term::Zero, Term::One, a.clone(), b.clone(), a.clone().comp(), b.clone().comp()];
    for k in ConnIndex::ALL {
        out.push(a.clone().ident(k, b.clone()));
    }
    for k in ConnIndex::ALL {
        out.push(a.clone().implies(k, b.clone()));
        out.push(b.clone().implies(k, a.clone()));
    }
    for k in ConnIndex::ALL {
        out.push(a.clone().bi_implies(k, b.clone()));
    }
    out
}

/// The `6 x 6` table of products `(a ->i b) & (b ->j a)`.
#[derive(Clone, Debug)]
pub struct Table1 {
    /// `entries[i][j]`, rows `i`, columns `j`.
    pub entries: Vec<Vec<BeranClass>>,
    /// The `k` with `entries[i][j]` equal to the class of `a ==k b`.
    pub identity: [[Option<u8>; 6]; 6],
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8}", "i \\ j")?;
        for j in 0..6 {
            write!(f, " {:<6}", format!("b->{j}a"))?;
        }
        writeln!(f)?;
        for (i, row) in self.identity.iter().enumerate() {
            write!(f, "{:<8}", format!("a->{i}b"))?;
            for (j, k) in row.iter().enumerate() {
                let cell = match k {
                    Some(k) => format!("≡{k}"),
                    None => format!("#{}", self.entries[i][j].id),
                };
                write!(f, " {cell:<6}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn build_free_oml() -> Result<FreeOml2, BeranError> {
    FreeOml2::build()
}

pub fn canon(t: &Term) -> Result<BeranClass, BeranError> {
    FreeOml2::get().canon(t)
}

pub fn equal_oml(t1: &Term, t2: &Term) -> Result<bool, BeranError> {
    FreeOml2::get().equal_oml(t1, t2)
}

pub fn table1() -> Table1 {
    FreeOml2::get().table1()
}

/// Checks `a ==i b = (a ->i b) & (b ->0 a)` for `i = 0..5`.
pub fn eq8_pattern(l: &FiniteOrthoLattice) -> Result<Vec<CheckReport>, CheckError> {
    let checker = Checker::default();
    ConnIndex::ALL
        .iter()
        .map(|&i| checker.check_quasi(l, &laws::identity_decomposition(i).statement))
        .collect()
}

/// Class id of every registered label, for listing.
pub fn labelled_classes() -> BTreeMap<usize, String> {
    FreeOml2::get()
        .classes()
        .into_iter()
        .filter_map(|c| c.label.map(|l| (c.id, l)))
        .collect()
}
