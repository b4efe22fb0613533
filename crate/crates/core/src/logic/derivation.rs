//! Derivation scripts and their verification.
//!
//! ```text
//! system QL i=5
//! premise A
//! 1 A | B ==5 B | A        axiom QL1 A:=A B:=B
//! 2 B | A ==5 A | B        rule QLR4 1
//! 3 A                      premise 1
//! 4 ~B | B ==5 A           rule QLR5 rtl 3
//! ```
//!
//! Lines are numbered `1, 2, ...` in order. Rule sources are line numbers;
//! a premise enters the derivation through a `premise k` line. Axiom lines
//! bind every metavariable of the schema and nothing else. `QLR3` and
//! `QLR5` take a direction, `ltr` or `rtl`. Blank lines and lines starting
//! with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;

use super::axioms::{axiom, Direction, Rule, System};
use super::Wff;
use crate::error::ScriptError;
use crate::syntax::ConnIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        name: String,
        bindings: Vec<(String, Wff)>,
    },
    /// 1-based index into the derivation's premises.
    Premise(usize),
    Rule {
        name: String,
        direction: Option<Direction>,
        sources: Vec<usize>,
    },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { name, bindings } => {
                write!(f, "axiom {name}")?;
                for (v, w) in bindings {
                    write!(f, " {v}:={w}")?;
                }
                Ok(())
            }
            Justification::Premise(k) => write!(f, "premise {k}"),
            Justification::Rule {
                name,
                direction,
                sources,
            } => {
                write!(f, "rule {name}")?;
                if let Some(d) = direction {
                    write!(f, " {d}")?;
                }
                for s in sources {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationLine {
    pub number: usize,
    pub formula: Wff,
    pub justification: Justification,
}

impl fmt::Display for DerivationLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.number, self.formula, self.justification)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub system: System,
    pub premises: Vec<Wff>,
    pub lines: Vec<DerivationLine>,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {}", self.system)?;
        for p in &self.premises {
            writeln!(f, "premise {p}")?;
        }
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// First line of a derivation that does not verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Derivation line number; 0 when the derivation as a whole is at fault.
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

/// Splits `s` at the first whitespace-separated token found in `keywords`.
fn split_keyword<'a>(s: &'a str, keywords: &[&str]) -> Option<(&'a str, &'a str, &'a str)> {
    let base = s.as_ptr() as usize;
    for tok in s.split_whitespace() {
        if keywords.contains(&tok) {
            let at = tok.as_ptr() as usize - base;
            return Some((s[..at].trim(), tok, s[at + tok.len()..].trim()));
        }
    }
    None
}

/// Parses `A:=<wff> B:=<wff> ...`.
fn parse_bindings(s: &str) -> Result<Vec<(String, Wff)>, String> {
    let bytes = s.as_bytes();
    let is_ident = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    // (name start, value start)
    let mut marks = Vec::new();
    for (p, _) in s.match_indices(":=") {
        let mut start = p;
        while start > 0 && is_ident(bytes[start - 1]) {
            start -= 1;
        }
        if start == p || (start > 0 && !bytes[start - 1].is_ascii_whitespace()) {
            return Err(format!("malformed binding near `{}`", &s[start..]));
        }
        marks.push((start, p));
    }
    if let Some(&(first, _)) = marks.first() {
        if !s[..first].trim().is_empty() {
            return Err(format!("unexpected `{}` before bindings", s[..first].trim()));
        }
    } else if !s.trim().is_empty() {
        return Err(format!("expected `Var:=formula` bindings, found `{}`", s.trim()));
    }
    let mut out = Vec::new();
    for (k, &(start, p)) in marks.iter().enumerate() {
        let end = marks.get(k + 1).map_or(s.len(), |&(next, _)| next);
        let name = &s[start..p];
        let value = s[p + 2..end].trim();
        let w = Wff::parse(value).map_err(|e| format!("binding for {name}: {e}"))?;
        out.push((name.to_string(), w));
    }
    Ok(out)
}

fn parse_system(rest: &str) -> Result<System, String> {
    let mut it = rest.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some("CL"), None, None) => Ok(System::Cl),
        (Some("QL"), Some(idx), None) => idx
            .strip_prefix("i=")
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|&d| (1..=5).contains(&d))
            .and_then(ConnIndex::new)
            .map(System::Ql)
            .ok_or_else(|| format!("expected `i=1` .. `i=5`, found `{idx}`")),
        _ => Err(format!("expected `system QL i=<1..5>` or `system CL`, found `system {rest}`")),
    }
}

fn parse_number(tok: &str, what: &str) -> Result<usize, String> {
    tok.parse::<usize>()
        .map_err(|_| format!("expected {what}, found `{tok}`"))
}

/// Parses a derivation script. Only the textual form is checked here;
/// [`verify_derivation`] decides whether the steps are valid.
pub fn parse_script(text: &str) -> Result<Derivation, ScriptError> {
    let mut system = None;
    let mut premises = Vec::new();
    let mut lines: Vec<DerivationLine> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let err = |msg: String| ScriptError { line: k + 1, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line
            .split_once(char::is_whitespace)
            .map_or((line, ""), |(h, r)| (h, r.trim()));
        match head {
            "system" => {
                if system.is_some() || !premises.is_empty() || !lines.is_empty() {
                    return Err(err("`system` must come first and only once".into()));
                }
                system = Some(parse_system(rest).map_err(err)?);
            }
            "premise" => {
                if system.is_none() {
                    return Err(err("missing `system` line".into()));
                }
                if !lines.is_empty() {
                    return Err(err("premises must precede the numbered lines".into()));
                }
                premises.push(Wff::parse(rest).map_err(|e| err(e.to_string()))?);
            }
            num => {
                if system.is_none() {
                    return Err(err("missing `system` line".into()));
                }
                let number = parse_number(num, "a line number").map_err(err)?;
                if number != lines.len() + 1 {
                    return Err(err(format!(
                        "expected line number {}, found {number}",
                        lines.len() + 1
                    )));
                }
                let (wff, kw, args) = split_keyword(rest, &["axiom", "rule", "premise"])
                    .ok_or_else(|| err("expected `axiom`, `rule` or `premise` justification".into()))?;
                let formula = Wff::parse(wff).map_err(|e| err(e.to_string()))?;
                let justification = match kw {
                    "axiom" => {
                        let (name, binds) = args
                            .split_once(char::is_whitespace)
                            .map_or((args, ""), |(n, b)| (n, b));
                        if name.is_empty() {
                            return Err(err("`axiom` needs a name".into()));
                        }
                        Justification::Axiom {
                            name: name.to_string(),
                            bindings: parse_bindings(binds).map_err(err)?,
                        }
                    }
                    "premise" => Justification::Premise(
                        parse_number(args, "a premise number").map_err(err)?,
                    ),
                    _ => {
                        let mut toks = args.split_whitespace();
                        let name = toks
                            .next()
                            .ok_or_else(|| err("`rule` needs a name".into()))?
                            .to_string();
                        let mut direction = None;
                        let mut sources = Vec::new();
                        for t in toks {
                            match t {
                                "ltr" | "rtl" if direction.is_none() && sources.is_empty() => {
                                    direction = Some(if t == "ltr" {
                                        Direction::Ltr
                                    } else {
                                        Direction::Rtl
                                    });
                                }
                                _ => sources.push(parse_number(t, "a source line").map_err(err)?),
                            }
                        }
                        Justification::Rule {
                            name,
                            direction,
                            sources,
                        }
                    }
                };
                lines.push(DerivationLine {
                    number,
                    formula,
                    justification,
                });
            }
        }
    }
    let system = system.ok_or(ScriptError {
        line: 0,
        msg: "missing `system` line".into(),
    })?;
    Ok(Derivation {
        system,
        premises,
        lines,
    })
}

fn ident_parts(w: &Wff, i: ConnIndex) -> Option<(&Wff, &Wff)> {
    match w {
        Wff::Ident(j, l, r) if *j == i => Some((l, r)),
        _ => None,
    }
}

/// Checks every line and returns the derived formula (the last line).
pub fn verify_derivation(d: &Derivation) -> Result<Wff, Rejection> {
    for (k, line) in d.lines.iter().enumerate() {
        let reject = |reason: String| Rejection {
            line: line.number,
            reason,
        };
        match &line.justification {
            Justification::Axiom { name, bindings } => {
                let schema = axiom(d.system, name)
                    .ok_or_else(|| reject(format!("no axiom `{name}` in {}", d.system)))?;
                let mut map = BTreeMap::new();
                for (v, w) in bindings {
                    if map.insert(v.clone(), w.clone()).is_some() {
                        return Err(reject(format!("`{v}` is bound twice")));
                    }
                }
                let needed = schema.variables();
                if let Some(v) = needed.iter().find(|v| !map.contains_key(*v)) {
                    return Err(reject(format!("{name} needs a binding for `{v}`")));
                }
                if let Some(v) = map.keys().find(|v| !needed.contains(*v)) {
                    return Err(reject(format!("`{v}` does not occur in {name}")));
                }
                let instance = schema.substitute(&map);
                if instance != line.formula {
                    return Err(reject(format!(
                        "schema mismatch: {name} gives `{instance}`, found `{}`",
                        line.formula
                    )));
                }
            }
            Justification::Premise(p) => {
                let premise = p
                    .checked_sub(1)
                    .and_then(|i| d.premises.get(i))
                    .ok_or_else(|| reject(format!("there is no premise {p}")))?;
                if *premise != line.formula {
                    return Err(reject(format!(
                        "premise {p} is `{premise}`, found `{}`",
                        line.formula
                    )));
                }
            }
            Justification::Rule {
                name,
                direction,
                sources,
            } => {
                let rule = Rule::parse(name)
                    .filter(|r| r.belongs_to(d.system))
                    .ok_or_else(|| reject(format!("no rule `{name}` in {}", d.system)))?;
                let dir = match (rule.directed(), direction) {
                    (true, Some(dir)) => *dir,
                    (true, None) => return Err(reject(format!("{rule} needs `ltr` or `rtl`"))),
                    (false, None) => Direction::Ltr,
                    (false, Some(_)) => return Err(reject(format!("{rule} takes no direction"))),
                };
                if sources.len() != rule.arity() {
                    return Err(reject(format!(
                        "{rule} takes {} source line(s), found {}",
                        rule.arity(),
                        sources.len()
                    )));
                }
                let mut srcs = Vec::with_capacity(sources.len());
                for &s in sources {
                    if s == 0 || s > k {
                        return Err(reject(format!(
                            "source {s} is not an earlier line (forward reference)"
                        )));
                    }
                    srcs.push(&d.lines[s - 1].formula);
                }
                let i = match d.system {
                    System::Ql(i) => i,
                    System::Cl => ConnIndex::ALL[0],
                };
                apply_rule(rule, dir, i, &srcs, &line.formula).map_err(reject)?;
            }
        }
    }
    d.lines.last().map(|l| l.formula.clone()).ok_or(Rejection {
        line: 0,
        reason: "the derivation has no lines".into(),
    })
}

fn apply_rule(
    rule: Rule,
    dir: Direction,
    i: ConnIndex,
    srcs: &[&Wff],
    concl: &Wff,
) -> Result<(), String> {
    fn shape(w: &Wff, i: ConnIndex) -> Result<(&Wff, &Wff), String> {
        ident_parts(w, i).ok_or_else(|| format!("`{w}` is not of the form A =={i} B"))
    }
    let mismatch = |expected: &Wff| {
        if expected == concl {
            Ok(())
        } else {
            Err(format!("{rule} gives `{expected}`, found `{concl}`"))
        }
    };
    match (rule, dir) {
        (Rule::Qlr1, _) => {
            let (a, b) = shape(srcs[0], i)?;
            let (l, _) = shape(concl, i)?;
            let c = match l {
                Wff::Or(_, c) => c,
                _ => return Err(format!("`{l}` is not of the form {a} | C")),
            };
            mismatch(&a.clone().or((**c).clone()).ident(i, b.clone().or((**c).clone())))
        }
        (Rule::Qlr2, _) => {
            let (a1, b1) = shape(srcs[0], i)?;
            let (a2, b2) = shape(srcs[1], i)?;
            let candidates = [(a1, b1, a2, b2), (a2, b2, a1, b1)];
            let ok = candidates
                .iter()
                .filter(|(_, b, b_, _)| b == b_)
                .map(|(a, _, _, c)| (*a).clone().ident(i, (*c).clone()))
                .find(|w| w == concl);
            match ok {
                Some(_) => Ok(()),
                None if b1 == a2 => mismatch(&a1.clone().ident(i, b2.clone())),
                None if b2 == a1 => mismatch(&a2.clone().ident(i, b1.clone())),
                None => Err(format!(
                    "`{}` and `{}` do not share a middle term",
                    srcs[0], srcs[1]
                )),
            }
        }
        (Rule::Qlr3, Direction::Ltr) => {
            let (a, b) = shape(srcs[0], i)?;
            mismatch(&a.clone().not().ident(i, b.clone().not()))
        }
        (Rule::Qlr3, Direction::Rtl) => {
            let (na, nb) = shape(srcs[0], i)?;
            match (na, nb) {
                (Wff::Not(a), Wff::Not(b)) => mismatch(&(**a).clone().ident(i, (**b).clone())),
                _ => Err(format!("`{}` is not of the form ~A =={i} ~B", srcs[0])),
            }
        }
        (Rule::Qlr4, _) => {
            let (a, b) = shape(srcs[0], i)?;
            mismatch(&b.clone().ident(i, a.clone()))
        }
        (Rule::Qlr5, Direction::Ltr) => {
            let (taut, b) = shape(srcs[0], i)?;
            match taut {
                Wff::Or(na, a) if **na == (**a).clone().not() => mismatch(b),
                _ => Err(format!("`{taut}` is not of the form ~A | A")),
            }
        }
        (Rule::Qlr5, Direction::Rtl) => {
            let (taut, b) = shape(concl, i)?;
            match taut {
                Wff::Or(na, a) if **na == (**a).clone().not() => {
                    if b == srcs[0] {
                        Ok(())
                    } else {
                        Err(format!("{rule} needs `{b}` as its source, found `{}`", srcs[0]))
                    }
                }
                _ => Err(format!("`{taut}` is not of the form ~A | A")),
            }
        }
        (Rule::Clr1, _) => {
            let i0 = ConnIndex::ALL[0];
            let fits = |minor: &Wff, major: &Wff| {
                matches!(major, Wff::Impl(j, a, b) if *j == i0 && **a == *minor && **b == *concl)
            };
            if fits(srcs[0], srcs[1]) || fits(srcs[1], srcs[0]) {
                Ok(())
            } else {
                Err(format!(
                    "CLR1 needs `A` and `A ->0 {concl}`, found `{}` and `{}`",
                    srcs[0], srcs[1]
                ))
            }
        }
    }
}
