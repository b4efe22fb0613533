//! Named lattices used throughout the crate.

use super::{FiniteOrthoLattice, LatticeSpec};
use crate::error::LatticeError;

/// Every name accepted by [`stock`], in a fixed order.
pub const STOCK_NAMES: &[&str] = &["2", "2^2", "2^3", "2^4", "MO2", "O6", "F9G", "F3B", "M12", "F2"];

const MO2: &str = "\
lattice MO2
elements: 0 p p' q q' 1
ortho: p:p' q:q'
covers: 0<p 0<p' 0<q 0<q' p<1 p'<1 q<1 q'<1
";

const O6: &str = "\
lattice O6
elements: 0 x y' y x' 1
ortho: x:x' y:y'
covers: 0<x x<y y<1 0<y' y'<x' x'<1
";

const F9G: &str = "\
lattice F9G
elements: 0 x y z' z y' x' 1
ortho: x:x' y:y' z:z'
covers: 0<x 0<y 0<z' x<z y<z z'<y' z'<x' z<1 y'<1 x'<1
";

const M12: &str = "\
lattice M12
elements: 0 x w z' v' y v w' z x' y' 1
ortho: x:x' y:y' z:z' w:w' v:v'
covers: 0<x 0<w 0<z' 0<v' x<y x<v x<w' w<z w<x' z'<w' z'<y' y<z y'<x' v'<x' v<1 z<1 w'<1 x'<1
";

const F3B: &str = "\
lattice F3B
elements: 0 x w z' y w' z x' y' 1
ortho: x:x' y:y' z:z' w:w'
covers: 0<x 0<w 0<z' x<y x<w' w<z w<x' z'<w' z'<y' y<z y'<x' z<1 w'<1 x'<1
";

/// Looks up a stock lattice by name.
///
/// `2^k` is accepted for any `k` from 1 to 12; `F2` is `2^4 x MO2`.
pub fn stock(name: &str) -> Result<FiniteOrthoLattice, LatticeError> {
    let text = match name {
        "MO2" => MO2,
        "O6" => O6,
        "F9G" => F9G,
        "F3B" => F3B,
        "M12" => M12,
        "2" => return FiniteOrthoLattice::boolean(1),
        "F2" => {
            let b4 = FiniteOrthoLattice::boolean(4)?;
            return Ok(b4.product(&stock("MO2")?)?.with_name("F2"));
        }
        _ => {
            return name
                .strip_prefix("2^")
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| (1..=12).contains(k))
                .ok_or_else(|| LatticeError::UnknownStock(name.to_string()))
                .and_then(FiniteOrthoLattice::boolean)
        }
    };
    LatticeSpec::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::isomorphic;

    #[test]
    fn every_stock_lattice_builds_and_validates() {
        let sizes = [2, 4, 8, 16, 6, 6, 8, 10, 12, 96];
        for (&name, &n) in STOCK_NAMES.iter().zip(&sizes) {
            let l = stock(name).unwrap();
            assert_eq!(l.size(), n, "{name}");
            l.validate().unwrap();
        }
    }

    #[test]
    fn covers_are_ortho_symmetric() {
        for &name in STOCK_NAMES {
            let l = stock(name).unwrap();
            let covers = l.covers();
            for &(p, q) in &covers {
                assert!(covers.contains(&(l.ortho(q), l.ortho(p))), "{name}");
            }
        }
    }

    #[test]
    fn o6_is_a_hexagon() {
        let l = stock("O6").unwrap();
        let f = |s| l.find(s).unwrap();
        assert!(l.leq(f("x"), f("y")));
        assert!(l.leq(f("y'"), f("x'")));
        assert_eq!(l.join(f("x"), f("y'")), l.top());
        assert_eq!(l.atoms().len(), 2);
    }

    #[test]
    fn mo2_atoms_are_incomparable() {
        let l = stock("MO2").unwrap();
        let atoms = l.atoms();
        assert_eq!(atoms.len(), 4);
        for &a in &atoms {
            for &b in &atoms {
                assert!(a == b || (!l.leq(a, b) && l.join(a, b) == l.top()));
            }
        }
    }

    #[test]
    fn f3b_is_m12_without_v() {
        let m12 = stock("M12").unwrap();
        let f3b = stock("F3B").unwrap();
        for e in f3b.elements() {
            let m = m12.find(f3b.label(e)).unwrap();
            for g in f3b.elements() {
                let n = m12.find(f3b.label(g)).unwrap();
                assert_eq!(f3b.leq(e, g), m12.leq(m, n));
            }
        }
    }

    #[test]
    fn distinct_stock_shapes() {
        let ls: Vec<_> = STOCK_NAMES.iter().map(|n| stock(n).unwrap()).collect();
        for (i, a) in ls.iter().enumerate() {
            for (j, b) in ls.iter().enumerate() {
                assert_eq!(isomorphic(a, b), i == j, "{} vs {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(stock("O7"), Err(LatticeError::UnknownStock(_))));
        assert!(matches!(stock("2^13"), Err(LatticeError::UnknownStock(_))));
        assert_eq!(stock("2^1").unwrap().size(), 2);
    }
}
