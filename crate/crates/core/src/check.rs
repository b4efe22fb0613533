//! Exhaustive valuation semantics over finite ortholattices.
//!
//! Valuations are enumerated with variables in lexical order, the first
//! variable most significant, and elements in the lattice's own order. The
//! reported countermodel is always the least failing valuation in that
//! order, whether or not the search runs in parallel.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::CheckError;
use crate::lattice::{Elem, FiniteOrthoLattice};
use crate::laws;
use crate::syntax::{ConnIndex, Connective};
use crate::term::{Equation, QuasiEquation, Term};

/// Default number of valuations a single check may examine.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Total assignment of lattice elements to variable names.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Valuation {
    map: BTreeMap<String, Elem>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, e: Elem) -> Self {
        self.map.insert(var.into(), e);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, e: Elem) {
        self.map.insert(var.into(), e);
    }

    pub fn get(&self, var: &str) -> Option<Elem> {
        self.map.get(var).copied()
    }

    /// Variables in lexical order with their values.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Elem)> {
        self.map.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Builds a valuation from labels, e.g. `[("a", "x"), ("b", "y")]`.
    pub fn from_labels<'a>(
        l: &FiniteOrthoLattice,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Option<Self> {
        let mut v = Valuation::new();
        for (var, label) in pairs {
            v.insert(var, l.find(label)?);
        }
        Some(v)
    }

    /// `a=x b=y` using the lattice's labels.
    pub fn display<'a>(&'a self, l: &'a FiniteOrthoLattice) -> impl fmt::Display + 'a {
        DisplayValuation { v: self, l }
    }
}

struct DisplayValuation<'a> {
    v: &'a Valuation,
    l: &'a FiniteOrthoLattice,
}

impl fmt::Display for DisplayValuation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (var, e)) in self.v.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{var}={}", self.l.label(e))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

/// A falsifying valuation with the two sides it separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub valuation: Valuation,
    pub left: Elem,
    pub right: Elem,
    /// `var=label` pairs, ready for printing.
    pub witness: Vec<(String, String)>,
    pub left_label: String,
    pub right_label: String,
}

impl Countermodel {
    fn new(l: &FiniteOrthoLattice, valuation: Valuation, left: Elem, right: Elem) -> Self {
        let witness = valuation
            .iter()
            .map(|(v, e)| (v.to_string(), l.label(e).to_string()))
            .collect();
        Countermodel {
            valuation,
            left,
            right,
            witness,
            left_label: l.label(left).to_string(),
            right_label: l.label(right).to_string(),
        }
    }

    pub fn witness_string(&self) -> String {
        self.witness
            .iter()
            .map(|(v, e)| format!("{v}={e}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub lattice: String,
    pub verdict: Verdict,
    pub countermodel: Option<Countermodel>,
    /// Valuations visited before the verdict was reached.
    pub examined: u64,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    /// `VERDICT <holds|fails> LATTICE <name> [WITNESS var=elem ...]`
    pub fn machine_line(&self) -> String {
        let mut s = format!("VERDICT {} LATTICE {}", self.verdict, self.lattice);
        if let Some(cm) = &self.countermodel {
            s.push_str(" WITNESS");
            for (v, e) in &cm.witness {
                s.push_str(&format!(" {v}={e}"));
            }
        }
        s
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.countermodel {
            None => write!(
                f,
                "holds in {} ({} valuations)",
                self.lattice, self.examined
            ),
            Some(cm) => write!(
                f,
                "fails in {} at {}: left = {}, right = {}",
                self.lattice,
                cm.witness_string(),
                cm.left_label,
                cm.right_label
            ),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Load(u8),
    Push(u16),
    Comp,
    Join,
    Meet,
    /// Binary operation read from a precomputed `n x n` table.
    Table(u8),
}

/// A term compiled against one lattice. Derived connectives are evaluated
/// through tables built from their primitive expansions.
struct Program {
    ops: Vec<Op>,
}

struct Compiler<'l> {
    l: &'l FiniteOrthoLattice,
    vars: &'l [String],
    tables: Vec<(Connective, ConnIndex, Vec<u16>)>,
}

impl<'l> Compiler<'l> {
    fn new(l: &'l FiniteOrthoLattice, vars: &'l [String]) -> Self {
        Compiler {
            l,
            vars,
            tables: Vec::new(),
        }
    }

    fn compile(&mut self, t: &Term) -> Result<Program, CheckError> {
        let mut ops = Vec::new();
        self.emit(t, &mut ops)?;
        Ok(Program { ops })
    }

    fn emit(&mut self, t: &Term, ops: &mut Vec<Op>) -> Result<(), CheckError> {
        match t {
            Term::Var(v) => {
                let k = self
                    .vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| CheckError::Unassigned(v.clone()))?;
                ops.push(Op::Load(k as u8));
            }
            Term::Zero => ops.push(Op::Push(self.l.bottom().index() as u16)),
            Term::One => ops.push(Op::Push(self.l.top().index() as u16)),
            Term::Comp(c) => {
                self.emit(c, ops)?;
                ops.push(Op::Comp);
            }
            Term::Join(a, b) | Term::Meet(a, b) => {
                self.emit(a, ops)?;
                self.emit(b, ops)?;
                ops.push(if matches!(t, Term::Join(..)) {
                    Op::Join
                } else {
                    Op::Meet
                });
            }
            Term::Impl(i, a, b) | Term::BiImpl(i, a, b) | Term::Ident(i, a, b) => {
                let kind = match t {
                    Term::Impl(..) => Connective::Impl,
                    Term::BiImpl(..) => Connective::BiImpl,
                    _ => Connective::Ident,
                };
                self.emit(a, ops)?;
                self.emit(b, ops)?;
                let k = self.table(kind, *i);
                ops.push(Op::Table(k as u8));
            }
        }
        Ok(())
    }

    fn table(&mut self, kind: Connective, i: ConnIndex) -> usize {
        if let Some(k) = self.tables.iter().position(|(c, j, _)| *c == kind && *j == i) {
            return k;
        }
        let (a, b) = (Term::var("a"), Term::var("b"));
        let def = match kind {
            Connective::Impl => a.implies(i, b),
            Connective::BiImpl => a.bi_implies(i, b),
            Connective::Ident => a.ident(i, b),
        }
        .expand();
        let vars = ["a".to_string(), "b".to_string()];
        let prog = Compiler::new(self.l, &vars)
            .compile(&def)
            .expect("primitive two-variable definition");
        let n = self.l.size();
        let mut stack = Vec::new();
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = prog.run(self.l, &[], &[x as u16, y as u16], &mut stack);
            }
        }
        self.tables.push((kind, i, table));
        self.tables.len() - 1
    }

    fn finish(self) -> Vec<Vec<u16>> {
        self.tables.into_iter().map(|(_, _, t)| t).collect()
    }
}

impl Program {
    #[inline]
    fn run(
        &self,
        l: &FiniteOrthoLattice,
        tables: &[Vec<u16>],
        vals: &[u16],
        stack: &mut Vec<u16>,
    ) -> u16 {
        let n = l.size();
        let (join, meet, ortho) = (l.join_table(), l.meet_table(), l.ortho_table());
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Load(k) => stack.push(vals[k as usize]),
                Op::Push(c) => stack.push(c),
                Op::Comp => {
                    let top = stack.last_mut().expect("operand");
                    *top = ortho[*top as usize];
                }
                Op::Join | Op::Meet | Op::Table(_) => {
                    let y = stack.pop().expect("operand") as usize;
                    let x = stack.pop().expect("operand") as usize;
                    let r = match *op {
                        Op::Join => join[x * n + y],
                        Op::Meet => meet[x * n + y],
                        Op::Table(k) => tables[k as usize][x * n + y],
                        _ => unreachable!(),
                    };
                    stack.push(r);
                }
            }
        }
        stack.pop().expect("program leaves one value")
    }
}

/// Equations compiled together over a shared variable list.
struct CompiledSet<'l> {
    l: &'l FiniteOrthoLattice,
    vars: Vec<String>,
    /// `(left, right)` per equation.
    eqs: Vec<(Program, Program)>,
    tables: Vec<Vec<u16>>,
}

impl<'l> CompiledSet<'l> {
    fn new(
        l: &'l FiniteOrthoLattice,
        vars: BTreeSet<String>,
        eqs: &[&Equation],
    ) -> Result<Self, CheckError> {
        let vars: Vec<String> = vars.into_iter().collect();
        let mut c = Compiler::new(l, &vars);
        let mut progs = Vec::with_capacity(eqs.len());
        for e in eqs {
            progs.push((c.compile(&e.left)?, c.compile(&e.right)?));
        }
        let tables = c.finish();
        Ok(CompiledSet {
            l,
            vars,
            eqs: progs,
            tables,
        })
    }

    #[inline]
    fn sides(&self, k: usize, vals: &[u16], stack: &mut Vec<u16>) -> (u16, u16) {
        let (p, q) = &self.eqs[k];
        (
            p.run(self.l, &self.tables, vals, stack),
            q.run(self.l, &self.tables, vals, stack),
        )
    }

    fn valuation(&self, vals: &[u16]) -> Valuation {
        let mut v = Valuation::new();
        for (name, &x) in self.vars.iter().zip(vals) {
            v.insert(name.clone(), Elem::from_index(x as usize));
        }
        v
    }
}

/// Decodes valuation number `idx` into element indices, first variable
/// most significant.
fn decode(mut idx: u64, n: u64, out: &mut [u16]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % n) as u16;
        idx /= n;
    }
}

/// Exhaustive equation and quasi-equation checker.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub budget: u64,
    pub parallel: bool,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl Checker {
    pub fn new(budget: u64) -> Self {
        Checker {
            budget,
            ..Self::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    /// Finds the least valuation index rejected by `ok`, scanning all
    /// `n^k` valuations. Returns that index or `None` with the total count.
    fn scan<F>(&self, n: usize, k: usize, ok: F) -> Result<(Option<u64>, u64), CheckError>
    where
        F: Fn(&[u16], &mut Vec<u16>) -> bool + Sync,
    {
        let required = (n as u128).pow(k as u32);
        if required > self.budget as u128 {
            return Err(CheckError::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        let total = required as u64;
        let n64 = n as u64;
        let run_block = |start: u64, len: u64| -> Option<u64> {
            let mut vals = vec![0u16; k];
            let mut stack = Vec::with_capacity(32);
            decode(start, n64, &mut vals);
            for idx in start..start + len {
                if !ok(&vals, &mut stack) {
                    return Some(idx);
                }
                // odometer increment
                for slot in vals.iter_mut().rev() {
                    *slot += 1;
                    if (*slot as usize) < n {
                        break;
                    }
                    *slot = 0;
                }
            }
            None
        };
        const BLOCK: u64 = 1 << 12;
        let found = if !self.parallel || total <= BLOCK {
            run_block(0, total)
        } else {
            let blocks = total.div_ceil(BLOCK);
            (0..blocks).into_par_iter().find_map_first(|b| {
                let start = b * BLOCK;
                run_block(start, BLOCK.min(total - start))
            })
        };
        Ok((found, found.map_or(total, |i| i + 1)))
    }

    pub fn check_equation(
        &self,
        l: &FiniteOrthoLattice,
        e: &Equation,
    ) -> Result<CheckReport, CheckError> {
        self.check_quasi(l, &QuasiEquation::from(e.clone()))
    }

    /// Holds iff every valuation satisfying all hypotheses satisfies the
    /// conclusion.
    pub fn check_quasi(
        &self,
        l: &FiniteOrthoLattice,
        q: &QuasiEquation,
    ) -> Result<CheckReport, CheckError> {
        let mut eqs: Vec<&Equation> = q.hypotheses.iter().collect();
        eqs.push(&q.conclusion);
        let set = CompiledSet::new(l, q.variables(), &eqs)?;
        let last = eqs.len() - 1;
        let (found, examined) = self.scan(l.size(), set.vars.len(), |vals, stack| {
            for h in 0..last {
                let (x, y) = set.sides(h, vals, stack);
                if x != y {
                    return true;
                }
            }
            let (x, y) = set.sides(last, vals, stack);
            x == y
        })?;
        Ok(self.report(&set, last, found, examined))
    }

    /// Holds iff every valuation sending all premises to 1 gives `a` and
    /// `b` equal values.
    pub fn congruence(
        &self,
        l: &FiniteOrthoLattice,
        a: &Term,
        b: &Term,
        premises: &[Term],
    ) -> Result<CheckReport, CheckError> {
        let q = QuasiEquation::new(
            premises.iter().cloned().map(Equation::unit).collect(),
            Equation::new(a.clone(), b.clone()),
        );
        self.check_quasi(l, &q)
    }

    fn report(
        &self,
        set: &CompiledSet<'_>,
        conclusion: usize,
        found: Option<u64>,
        examined: u64,
    ) -> CheckReport {
        let l = set.l;
        let countermodel = found.map(|idx| {
            let mut vals = vec![0u16; set.vars.len()];
            decode(idx, l.size() as u64, &mut vals);
            let mut stack = Vec::new();
            let (x, y) = set.sides(conclusion, &vals, &mut stack);
            Countermodel::new(
                l,
                set.valuation(&vals),
                Elem::from_index(x as usize),
                Elem::from_index(y as usize),
            )
        });
        CheckReport {
            lattice: l.name().to_string(),
            verdict: if countermodel.is_some() {
                Verdict::Fails
            } else {
                Verdict::Holds
            },
            countermodel,
            examined,
        }
    }

    pub fn classify(&self, l: &FiniteOrthoLattice) -> Result<ClassFlags, CheckError> {
        let run = |law: &laws::Law| -> Result<Flag, CheckError> {
            let r = self.check_quasi(l, &law.statement)?;
            Ok(Flag {
                holds: r.holds(),
                law: law.name.clone(),
                report: r,
            })
        };
        let ol = Flag {
            holds: true,
            law: "L1-L6".into(),
            report: CheckReport {
                lattice: l.name().to_string(),
                verdict: Verdict::Holds,
                countermodel: None,
                examined: 0,
            },
        };
        let woml = run(&laws::l8())?;
        let oml = run(&laws::om())?;
        let dl = run(&laws::l9())?;
        let mut wdl = woml.clone();
        if wdl.holds {
            for i in ConnIndex::ALL {
                let f = run(&laws::l10(i))?;
                if !f.holds {
                    wdl = f;
                    break;
                }
                wdl = Flag {
                    law: "L8, L10".into(),
                    ..f
                };
            }
        }
        Ok(ClassFlags {
            lattice: l.name().to_string(),
            ol,
            woml,
            oml,
            wdl,
            dl,
        })
    }
}

/// Outcome of one defining law in a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    /// The law decided; for a failing flag, the law that failed.
    pub law: String,
    pub report: CheckReport,
}

/// Membership of a lattice in OL, WOML, OML, WDL and DL.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFlags {
    pub lattice: String,
    pub ol: Flag,
    pub woml: Flag,
    pub oml: Flag,
    pub wdl: Flag,
    pub dl: Flag,
}

impl ClassFlags {
    /// `(class name, flag)` in hierarchy order.
    pub fn entries(&self) -> [(&'static str, &Flag); 5] {
        [
            ("OL", &self.ol),
            ("WOML", &self.woml),
            ("OML", &self.oml),
            ("WDL", &self.wdl),
            ("DL", &self.dl),
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.entries().iter().all(|(_, f)| f.holds)
    }
}

impl fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, flag) in self.entries() {
            match &flag.report.countermodel {
                None if flag.holds => writeln!(f, "{name:<5} yes")?,
                None => writeln!(f, "{name:<5} no")?,
                Some(cm) => writeln!(
                    f,
                    "{name:<5} no   {} fails at {}",
                    flag.law,
                    cm.witness_string()
                )?,
            }
        }
        Ok(())
    }
}

/// Value of `t` under `v`, computed on the expansion of `t`.
pub fn eval(l: &FiniteOrthoLattice, v: &Valuation, t: &Term) -> Result<Elem, CheckError> {
    let vars: Vec<String> = t.variables().into_iter().collect();
    let mut vals = Vec::with_capacity(vars.len());
    for name in &vars {
        let e = v
            .get(name)
            .ok_or_else(|| CheckError::Unassigned(name.clone()))?;
        vals.push(e.index() as u16);
    }
    let expanded = t.expand();
    let prog = Compiler::new(l, &vars).compile(&expanded)?;
    let x = prog.run(l, &[], &vals, &mut Vec::new());
    Ok(Elem::from_index(x as usize))
}

pub fn check_equation(l: &FiniteOrthoLattice, e: &Equation) -> Result<CheckReport, CheckError> {
    Checker::default().check_equation(l, e)
}

pub fn check_quasi(l: &FiniteOrthoLattice, q: &QuasiEquation) -> Result<CheckReport, CheckError> {
    Checker::default().check_quasi(l, q)
}

pub fn classify(l: &FiniteOrthoLattice) -> Result<ClassFlags, CheckError> {
    Checker::default().classify(l)
}

/// Congruence condition: for every valuation with all premises at 1,
/// `a` and `b` take equal values.
pub fn congruence_sem_check(
    a: &Term,
    b: &Term,
    premises: &[Term],
    l: &FiniteOrthoLattice,
) -> Result<CheckReport, CheckError> {
    Checker::default().congruence(l, a, b, premises)
}
