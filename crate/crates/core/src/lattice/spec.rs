//! Line-oriented lattice files.
//!
//! ```text
//! lattice O6
//! elements: 0 x y y' x' 1
//! ortho: x:x' y:y'
//! covers: 0<x x<y y<1 0<y' y'<x' x'<1
//! ```
//!
//! `0` and `1` name the bounds, so `0<x` and `x<1` never need listing, and
//! `0:1` is implied when omitted. A label is any run of non-blank characters
//! other than `:` and `<`. Blank lines and lines starting with `#` are
//! ignored, and one file may hold several lattices.
//! Keys may repeat within a block; their entries accumulate.

use std::collections::HashMap;
use std::fmt;

use super::FiniteOrthoLattice;
use crate::error::LatticeError;

/// Textual description of an ortholattice: labels, complement pairs and
/// order pairs (normally Hasse edges).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LatticeSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub ortho: Vec<(String, String)>,
    pub covers: Vec<(String, String)>,
}

impl LatticeSpec {
    /// Validates the spec and builds the lattice.
    pub fn build(&self) -> Result<FiniteOrthoLattice, LatticeError> {
        let index: HashMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| LatticeError::UnknownLabel(l.to_string()))
        };
        let zero = lookup("0").map_err(|_| LatticeError::Bounds("0".into(), "least element"))?;
        let one = lookup("1").map_err(|_| LatticeError::Bounds("1".into(), "greatest element"))?;

        let n = self.elements.len();
        let mut ortho = vec![usize::MAX; n];
        let mut pairs = self.ortho.clone();
        if !pairs.iter().any(|(a, b)| a == "0" || b == "0") {
            pairs.push(("0".into(), "1".into()));
        }
        for (a, b) in &pairs {
            let (ia, ib) = (lookup(a)?, lookup(b)?);
            for (x, y) in [(ia, ib), (ib, ia)] {
                if ortho[x] != usize::MAX && ortho[x] != y {
                    return Err(LatticeError::OrthoInvalid {
                        reason: format!("`{}` is given two complements", self.elements[x]),
                    });
                }
                ortho[x] = y;
            }
        }
        if let Some(x) = ortho.iter().position(|&o| o == usize::MAX) {
            return Err(LatticeError::OrthoInvalid {
                reason: format!("`{}` has no complement", self.elements[x]),
            });
        }
        let mut related = self
            .covers
            .iter()
            .map(|(p, q)| Ok((lookup(p)?, lookup(q)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        related.extend((0..n).flat_map(|x| [(zero, x), (x, one)]));
        let l = FiniteOrthoLattice::from_relation(
            self.name.clone(),
            self.elements.clone(),
            &related,
            &ortho,
        )?;
        if l.bottom().index() != zero {
            return Err(LatticeError::Bounds("0".into(), "least element"));
        }
        if l.top().index() != one {
            return Err(LatticeError::Bounds("1".into(), "greatest element"));
        }
        Ok(l)
    }

    /// Spec listing the lattice's labels in element order and its Hasse edges.
    pub fn from_lattice(l: &FiniteOrthoLattice) -> Self {
        let mut ortho = Vec::new();
        for e in l.elements() {
            let o = l.ortho(e);
            if e < o && e != l.bottom() {
                ortho.push((l.label(e).to_string(), l.label(o).to_string()));
            }
        }
        LatticeSpec {
            name: l.name().to_string(),
            elements: l.labels().to_vec(),
            ortho,
            covers: l
                .covers()
                .into_iter()
                .map(|(p, q)| (l.label(p).to_string(), l.label(q).to_string()))
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<LatticeSpec, LatticeError> {
        let mut all = parse_lattice_file(text)?;
        match all.len() {
            1 => Ok(all.pop().expect("one spec")),
            k => Err(LatticeError::Format {
                line: 1,
                msg: format!("expected exactly one lattice, found {k}"),
            }),
        }
    }
}

/// Reads every lattice block in a file.
pub fn parse_lattice_file(text: &str) -> Result<Vec<LatticeSpec>, LatticeError> {
    let mut out: Vec<LatticeSpec> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| LatticeError::Format { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("lattice") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(err(format!("unknown directive `{line}`")));
            }
            let name = rest.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err("`lattice` needs a single name".into()));
            }
            out.push(LatticeSpec {
                name: name.to_string(),
                ..LatticeSpec::default()
            });
            continue;
        }
        let (key, body) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected `key: ...`, found `{line}`")))?;
        let spec = out
            .last_mut()
            .ok_or_else(|| err("entry before any `lattice` line".into()))?;
        let items = body.split_whitespace();
        match key.trim() {
            "elements" => spec.elements.extend(items.map(str::to_string)),
            "ortho" => {
                for item in items {
                    let (a, b) = item
                        .split_once(':')
                        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains(':'))
                        .ok_or_else(|| err(format!("bad ortho pair `{item}`")))?;
                    spec.ortho.push((a.to_string(), b.to_string()));
                }
            }
            "covers" => {
                for item in items {
                    let (a, b) = item
                        .split_once('<')
                        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('<'))
                        .ok_or_else(|| err(format!("bad cover `{item}`")))?;
                    spec.covers.push((a.to_string(), b.to_string()));
                }
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(out)
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lattice {}", self.name)?;
        writeln!(f, "elements: {}", self.elements.join(" "))?;
        let ortho: Vec<String> = self.ortho.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        writeln!(f, "ortho: {}", ortho.join(" "))?;
        let covers: Vec<String> = self.covers.iter().map(|(a, b)| format!("{a}<{b}")).collect();
        writeln!(f, "covers: {}", covers.join(" "))
    }
}

impl FiniteOrthoLattice {
    /// Hasse diagram in Graphviz DOT, bottom at the bottom.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph \"{}\" {{\n", self.name().replace('"', "\\\"")));
        s.push_str("  rankdir=BT;\n  edge [arrowhead=none];\n  node [shape=circle, width=0.3];\n");
        for e in self.elements() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", e.index(), self.label(e)));
        }
        for (p, q) in self.covers() {
            s.push_str(&format!("  n{} -> n{};\n", p.index(), q.index()));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const O6: &str = "lattice O6\nelements: 0 x y y' x' 1\northo: x:x' y:y'\ncovers: 0<x x<y y<1 0<y' y'<x' x'<1\n";

    #[test]
    fn o6_builds() {
        let l = LatticeSpec::parse(O6).unwrap().build().unwrap();
        assert_eq!(l.size(), 6);
        let (x, y) = (l.find("x").unwrap(), l.find("y").unwrap());
        assert!(l.leq(x, y));
        assert_eq!(l.join(x, l.find("y'").unwrap()), l.top());
    }

    #[test]
    fn swapped_complements_are_rejected() {
        let bad = O6.replace("ortho: x:x' y:y'", "ortho: x:y x':y'");
        let err = LatticeSpec::parse(&bad).unwrap().build().unwrap_err();
        assert!(matches!(err, LatticeError::OrthoInvalid { .. }), "{err}");
    }

    #[test]
    fn minimal_boolean_lattice() {
        let l = LatticeSpec::parse("lattice two\nelements: 0 1\ncovers: 0<1\n")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!(l.ortho(l.bottom()), l.top());
    }

    #[test]
    fn format_errors() {
        assert!(matches!(
            parse_lattice_file("elements: 0 1"),
            Err(LatticeError::Format { line: 1, .. })
        ));
        assert!(matches!(
            parse_lattice_file("lattice a\ncovers: 0<1<2"),
            Err(LatticeError::Format { line: 2, .. })
        ));
        assert!(matches!(
            parse_lattice_file("lattice a\nfoo: bar"),
            Err(LatticeError::Format { line: 2, .. })
        ));
        let spec = LatticeSpec::parse("lattice a\nelements: 0 1 q\ncovers: 0<1 0<q q<1").unwrap();
        assert!(matches!(spec.build(), Err(LatticeError::OrthoInvalid { .. })));
        let spec = LatticeSpec::parse("lattice a\nelements: 0 1\ncovers: 0<z").unwrap();
        assert_eq!(spec.build().unwrap_err(), LatticeError::UnknownLabel("z".into()));
        let spec = LatticeSpec::parse("lattice a\nelements: bot 1\ncovers: bot<1").unwrap();
        assert!(matches!(spec.build(), Err(LatticeError::Bounds(..))));
    }

    #[test]
    fn round_trip_through_text() {
        let l = LatticeSpec::parse(O6).unwrap().build().unwrap();
        let text = LatticeSpec::from_lattice(&l).to_string();
        let again = LatticeSpec::parse(&text).unwrap().build().unwrap();
        assert_eq!(again.labels(), l.labels());
        assert!(crate::lattice::isomorphic(&l, &again));
    }

    #[test]
    fn dot_lists_every_edge() {
        let l = LatticeSpec::parse(O6).unwrap().build().unwrap();
        let dot = l.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert!(dot.contains("label=\"y'\""));
    }
}
