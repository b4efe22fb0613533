//! Definitions of the indexed connectives in terms of `'`, `|`, `&`.

use super::{ConnIndex, Term};

/// `a ->i b` written over the primitive signature.
///
/// | i | definition                               |
/// |---|------------------------------------------|
/// | 0 | `a' | b`                                 |
/// | 1 | `a' | (a & b)`                           |
/// | 2 | `b' ->1 a'`, i.e. `b | (a' & b')`        |
/// | 3 | `(a' & b) | (a' & b') | (a & (a' | b))`  |
/// | 4 | `b' ->3 a'`, i.e. `(b & a') | (b & a) | (b' & (b | a'))` |
/// | 5 | `(a & b) | (a' & b) | (a' & b')`         |
pub fn implication(i: ConnIndex, a: Term, b: Term) -> Term {
    let na = a.clone().comp();
    let nb = b.clone().comp();
    match i.get() {
        0 => na.join(b),
        1 => na.join(a.meet(b)),
        2 => b.join(na.meet(nb)),
        3 => na
            .clone()
            .meet(b.clone())
            .join(na.clone().meet(nb))
            .join(a.meet(na.join(b))),
        4 => b
            .clone()
            .meet(na.clone())
            .join(b.clone().meet(a))
            .join(nb.meet(b.join(na))),
        5 => a
            .meet(b.clone())
            .join(na.clone().meet(b))
            .join(na.meet(nb)),
        _ => unreachable!("ConnIndex is always 0..=5"),
    }
}

/// `a ==i b` written over the primitive signature.
pub fn identity(i: ConnIndex, a: Term, b: Term) -> Term {
    let na = a.clone().comp();
    let nb = b.clone().comp();
    match i.get() {
        0 => na.join(b).meet(nb.join(a)),
        1 => a.clone().join(nb).meet(na.join(a.meet(b))),
        2 => a.join(nb.clone()).meet(b.join(na.meet(nb))),
        3 => na.clone().join(b).meet(a.join(na.meet(nb))),
        4 => na.join(b.clone()).meet(nb.join(a.meet(b))),
        5 => a.meet(b).join(na.meet(nb)),
        _ => unreachable!("ConnIndex is always 0..=5"),
    }
}

impl Term {
    /// Replaces every `->i`, `<->i`, `==i` by its definition. The result is
    /// primitive, and expanding it again returns it unchanged.
    pub fn expand(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Comp(t) => t.expand().comp(),
            Term::Join(l, r) => l.expand().join(r.expand()),
            Term::Meet(l, r) => l.expand().meet(r.expand()),
            Term::Impl(i, l, r) => implication(*i, l.expand(), r.expand()),
            Term::BiImpl(i, l, r) => {
                let (a, b) = (l.expand(), r.expand());
                implication(*i, a.clone(), b.clone()).meet(implication(*i, b, a))
            }
            Term::Ident(i, l, r) => identity(*i, l.expand(), r.expand()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(s: &str) -> String {
        Term::parse(s).unwrap().expand().to_string()
    }

    #[test]
    fn classical_implication() {
        assert_eq!(ex("a ->0 b"), "a' | b");
    }

    #[test]
    fn symmetric_identity() {
        assert_eq!(ex("a ==5 b"), "a & b | a' & b'");
        assert_eq!(
            Term::parse("a ==5 b").unwrap().expand(),
            Term::parse("(a & b) | (a' & b')").unwrap()
        );
    }

    #[test]
    fn kalmbach_implication() {
        assert_eq!(
            Term::parse("a ->3 b").unwrap().expand(),
            Term::parse("(a'&b) | (a'&b') | (a & (a' | b))").unwrap()
        );
    }

    #[test]
    fn contrapositive_forms() {
        // ->2 and ->4 are the contrapositives of ->1 and ->3 with a'' = a folded in.
        assert_eq!(
            Term::parse("a ->2 b").unwrap().expand(),
            Term::parse("b | (a' & b')").unwrap()
        );
        assert_eq!(
            Term::parse("a ->4 b").unwrap().expand(),
            Term::parse("(b & a') | (b & a) | (b' & (b | a'))").unwrap()
        );
    }

    #[test]
    fn asymmetric_identities() {
        assert_eq!(
            Term::parse("a ==1 b").unwrap().expand(),
            Term::parse("(a | b') & (a' | (a & b))").unwrap()
        );
        assert_eq!(
            Term::parse("a ==0 b").unwrap().expand(),
            Term::parse("(a' | b) & (b' | a)").unwrap()
        );
    }

    #[test]
    fn biimplication_is_meet_of_both_directions() {
        assert_eq!(
            Term::parse("a <->0 b").unwrap().expand(),
            Term::parse("(a' | b) & (b' | a)").unwrap()
        );
    }

    #[test]
    fn nested_expansion_is_primitive() {
        let t = Term::parse("(a ->3 b) <->4 (c ==2 a')").unwrap();
        let e = t.expand();
        assert!(e.is_primitive());
        assert_eq!(e.expand(), e);
        assert_eq!(e.variables(), t.variables());
    }
}
