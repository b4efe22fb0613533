//! Finite ortholattices: construction, validation, products.

mod atlas;
mod iso;
mod spec;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::LatticeError;

pub use atlas::{stock, STOCK_NAMES};
pub use iso::{canonical_code, isomorphic, isomorphism};
pub use spec::{parse_lattice_file, LatticeSpec};

/// Largest lattice the crate will build.
pub const MAX_ELEMENTS: usize = 4096;

/// Element handle, an index into the owning lattice's tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Elem {
        debug_assert!(i < MAX_ELEMENTS);
        Elem(i as u16)
    }
}

/// A finite bounded lattice with an orthocomplementation.
///
/// Instances are only produced by constructors that verify every
/// ortholattice law, so downstream code may rely on them.
#[derive(Clone)]
pub struct FiniteOrthoLattice {
    name: String,
    labels: Vec<String>,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<FixedBitSet>,
    join: Vec<u16>,
    meet: Vec<u16>,
    ortho: Vec<u16>,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for FiniteOrthoLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteOrthoLattice")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FiniteOrthoLattice {
    /// Builds a lattice from any relation whose reflexive-transitive closure
    /// is the intended order. `related` lists pairs `(x, y)` meaning `x <= y`.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        related: &[(usize, usize)],
        ortho: &[usize],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        check_size(n)?;
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                s
            })
            .collect();
        for &(x, y) in related {
            up[x].insert(y);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_order(name, labels, up, ortho)
    }

    /// Builds a lattice from a complete order given as up-set rows.
    pub(crate) fn from_order(
        name: impl Into<String>,
        labels: Vec<String>,
        up: Vec<FixedBitSet>,
        ortho: &[usize],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        check_size(n)?;
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(LatticeError::Cycle {
                        a: labels[x].clone(),
                        b: labels[y].clone(),
                    });
                }
            }
        }
        let down = transpose(&up);
        let bottom = (0..n).find(|&x| up[x].count_ones(..) == n);
        let top = (0..n).find(|&x| down[x].count_ones(..) == n);
        let (bottom, top) = match (bottom, top) {
            (Some(b), Some(t)) => (b, t),
            (None, _) => return Err(LatticeError::Bounds("some element".into(), "least element")),
            (_, None) => {
                return Err(LatticeError::Bounds("some element".into(), "greatest element"))
            }
        };
        let down_size: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let up_size: Vec<usize> = up.iter().map(|u| u.count_ones(..)).collect();

        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let mut common = up[a].clone();
                common.intersect_with(&up[b]);
                let lub = common
                    .ones()
                    .min_by_key(|&c| down_size[c])
                    .filter(|&c| up[c] == common)
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: "least upper bound",
                    })?;
                let mut common = down[a].clone();
                common.intersect_with(&down[b]);
                let glb = common
                    .ones()
                    .min_by_key(|&c| up_size[c])
                    .filter(|&c| down[c] == common)
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: "greatest lower bound",
                    })?;
                join[a * n + b] = lub as u16;
                join[b * n + a] = lub as u16;
                meet[a * n + b] = glb as u16;
                meet[b * n + a] = glb as u16;
            }
        }
        if ortho.len() != n || ortho.iter().any(|&o| o >= n) {
            return Err(LatticeError::OrthoInvalid {
                reason: "complement table is not total on the elements".into(),
            });
        }
        let l = FiniteOrthoLattice {
            name: name.into(),
            labels,
            up,
            join,
            meet,
            ortho: ortho.iter().map(|&o| o as u16).collect(),
            bottom: Elem::from_index(bottom),
            top: Elem::from_index(top),
        };
        l.check_ortho()?;
        Ok(l)
    }

    fn check_ortho(&self) -> Result<(), LatticeError> {
        let bad = |reason: String| Err(LatticeError::OrthoInvalid { reason });
        for a in self.elements() {
            let oa = self.ortho(a);
            if self.ortho(oa) != a {
                return bad(format!(
                    "{}'' = {} is not {}",
                    self.label(a),
                    self.label(self.ortho(oa)),
                    self.label(a)
                ));
            }
            if self.join(a, oa) != self.top {
                return bad(format!(
                    "{} | {}' = {} is not 1",
                    self.label(a),
                    self.label(a),
                    self.label(self.join(a, oa))
                ));
            }
            if self.meet(a, oa) != self.bottom {
                return bad(format!(
                    "{} & {}' = {} is not 0",
                    self.label(a),
                    self.label(a),
                    self.label(self.meet(a, oa))
                ));
            }
            for b in self.up[a.index()].ones().map(Elem::from_index) {
                if !self.leq(self.ortho(b), oa) {
                    return bad(format!(
                        "{} <= {} but {}' is not below {}'",
                        self.label(a),
                        self.label(b),
                        self.label(b),
                        self.label(a)
                    ));
                }
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let dm = self.ortho(self.join(self.ortho(a), self.ortho(b)));
                if self.meet(a, b) != dm {
                    return bad(format!(
                        "De Morgan fails at {}, {}",
                        self.label(a),
                        self.label(b)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Re-verifies every invariant from the stored tables.
    pub fn validate(&self) -> Result<(), LatticeError> {
        let n = self.size();
        let rebuilt = Self::from_order(
            self.name.clone(),
            self.labels.clone(),
            self.up.clone(),
            &self.ortho.iter().map(|&o| o as usize).collect::<Vec<_>>(),
        )?;
        debug_assert_eq!(rebuilt.size(), n);
        if rebuilt.join != self.join || rebuilt.meet != self.meet {
            return Err(LatticeError::NotALattice {
                a: self.name.clone(),
                b: self.name.clone(),
                kind: "join/meet table consistent with its order",
            });
        }
        Ok(())
    }

    /// The Boolean algebra `2^k` on bit vectors of length `k`.
    ///
    /// Elements are ordered by their value as `k`-bit integers, the first
    /// coordinate being the most significant bit. Labels are the bit strings,
    /// except that the bounds are `0` and `1`.
    pub fn boolean(k: u32) -> Result<Self, LatticeError> {
        if k == 0 {
            return Err(LatticeError::TooSmall);
        }
        let n = 1usize
            .checked_shl(k)
            .filter(|&n| n <= MAX_ELEMENTS)
            .ok_or(LatticeError::TooLarge(usize::MAX))?;
        let full = n - 1;
        let labels = (0..n)
            .map(|x| match x {
                0 => "0".to_string(),
                x if x == full => "1".to_string(),
                x => format!("{:0width$b}", x, width = k as usize),
            })
            .collect();
        let up = (0..n)
            .map(|x| {
                let mut s = FixedBitSet::with_capacity(n);
                for y in 0..n {
                    if x & y == x {
                        s.insert(y);
                    }
                }
                s
            })
            .collect();
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = (a | b) as u16;
                meet[a * n + b] = (a & b) as u16;
            }
        }
        let name = if k == 1 {
            "2".to_string()
        } else {
            format!("2^{k}")
        };
        Ok(FiniteOrthoLattice {
            name,
            labels,
            up,
            join,
            meet,
            ortho: (0..n).map(|x| (full ^ x) as u16).collect(),
            bottom: Elem(0),
            top: Elem(full as u16),
        })
    }

    /// Componentwise product. Element `(x, y)` has index
    /// `x * |other| + y`; labels are `(x,y)` apart from the bounds.
    pub fn product(&self, other: &FiniteOrthoLattice) -> Result<Self, LatticeError> {
        let (n1, n2) = (self.size(), other.size());
        let n = n1 * n2;
        check_size(n)?;
        let pair = |x: usize, y: usize| x * n2 + y;
        let bottom = pair(self.bottom.index(), other.bottom.index());
        let top = pair(self.top.index(), other.top.index());
        let mut labels = Vec::with_capacity(n);
        for x in 0..n1 {
            for y in 0..n2 {
                let i = pair(x, y);
                labels.push(if i == bottom {
                    "0".to_string()
                } else if i == top {
                    "1".to_string()
                } else {
                    format!("({},{})", self.labels[x], other.labels[y])
                });
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        let mut ortho = vec![0u16; n];
        for x1 in 0..n1 {
            for y1 in 0..n2 {
                let i = pair(x1, y1);
                ortho[i] = pair(self.ortho[x1] as usize, other.ortho[y1] as usize) as u16;
                for x2 in 0..n1 {
                    for y2 in 0..n2 {
                        let j = pair(x2, y2);
                        if self.up[x1].contains(x2) && other.up[y1].contains(y2) {
                            up[i].insert(j);
                        }
                        join[i * n + j] = pair(
                            self.join[x1 * n1 + x2] as usize,
                            other.join[y1 * n2 + y2] as usize,
                        ) as u16;
                        meet[i * n + j] = pair(
                            self.meet[x1 * n1 + x2] as usize,
                            other.meet[y1 * n2 + y2] as usize,
                        ) as u16;
                    }
                }
            }
        }
        Ok(FiniteOrthoLattice {
            name: format!("{}x{}", self.name, other.name),
            labels,
            up,
            join,
            meet,
            ortho,
            bottom: Elem::from_index(bottom),
            top: Elem::from_index(top),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.size() as u16).map(Elem)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Elem::from_index)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a.index()].contains(b.index())
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        Elem(self.ortho[a.index()])
    }

    pub(crate) fn join_table(&self) -> &[u16] {
        &self.join
    }

    pub(crate) fn meet_table(&self) -> &[u16] {
        &self.meet
    }

    pub(crate) fn ortho_table(&self) -> &[u16] {
        &self.ortho
    }

    pub(crate) fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a.index()]
    }

    /// Hasse edges `(x, y)` with `x` covered by `y`, in element order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            let above: Vec<usize> = self.up[x.index()].ones().filter(|&y| y != x.index()).collect();
            for &y in &above {
                let direct = above
                    .iter()
                    .all(|&z| z == y || !self.up[z].contains(y));
                if direct {
                    out.push((x, Elem::from_index(y)));
                }
            }
        }
        out
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.covers()
            .into_iter()
            .filter(|&(x, _)| x == self.bottom)
            .map(|(_, y)| y)
            .collect()
    }

    /// Copy with elements permuted and relabelled: new element `k` is old
    /// element `order[k]` and carries `labels[k]`.
    ///
    /// Panics unless `order` is a permutation of the elements and `labels`
    /// has one distinct entry per element.
    pub fn permuted(&self, order: &[usize], labels: Vec<String>) -> Self {
        let n = self.size();
        assert!(order.len() == n && labels.len() == n, "permutation size");
        let mut pos = vec![usize::MAX; n];
        for (k, &old) in order.iter().enumerate() {
            assert!(pos[old] == usize::MAX, "order repeats element {old}");
            pos[old] = k;
        }
        for (i, l) in labels.iter().enumerate() {
            assert!(!labels[..i].contains(l), "duplicate label {l}");
        }
        let up = order
            .iter()
            .map(|&old| {
                let mut s = FixedBitSet::with_capacity(n);
                for y in self.up[old].ones() {
                    s.insert(pos[y]);
                }
                s
            })
            .collect();
        let mut join = vec![0u16; n * n];
        let mut meet = vec![0u16; n * n];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                join[i * n + j] = pos[self.join[a * n + b] as usize] as u16;
                meet[i * n + j] = pos[self.meet[a * n + b] as usize] as u16;
            }
        }
        FiniteOrthoLattice {
            name: self.name.clone(),
            labels,
            up,
            join,
            meet,
            ortho: order
                .iter()
                .map(|&old| pos[self.ortho[old] as usize] as u16)
                .collect(),
            bottom: Elem::from_index(pos[self.bottom.index()]),
            top: Elem::from_index(pos[self.top.index()]),
        }
    }
}

fn check_size(n: usize) -> Result<(), LatticeError> {
    if n < 2 {
        Err(LatticeError::TooSmall)
    } else if n > MAX_ELEMENTS {
        Err(LatticeError::TooLarge(n))
    } else {
        Ok(())
    }
}

fn transpose(up: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = up.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (x, row) in up.iter().enumerate() {
        for y in row.ones() {
            down[y].insert(x);
        }
    }
    down
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn two_element_chain() {
        let l = FiniteOrthoLattice::from_relation("2", labels("0 1"), &[(0, 1)], &[1, 0]).unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!(l.join(l.bottom(), l.top()), l.top());
        assert_eq!(l.ortho(l.bottom()), l.top());
    }

    #[test]
    fn chain_of_four_is_not_orthocomplemented() {
        // 0 < a < b < 1 with a' = b: a | b = b, not 1.
        let err = FiniteOrthoLattice::from_relation(
            "C4",
            labels("0 a b 1"),
            &[(0, 1), (1, 2), (2, 3)],
            &[3, 2, 1, 0],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::OrthoInvalid { .. }), "{err}");
    }

    #[test]
    fn missing_join_is_reported() {
        // Two incomparable maximal-below-top pairs: a, b < c, d < 1.
        let err = FiniteOrthoLattice::from_relation(
            "bowtie",
            labels("0 a b c d 1"),
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
            &[5, 4, 3, 2, 1, 0],
        )
        .unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                a: "a".into(),
                b: "b".into(),
                kind: "least upper bound"
            }
        );
    }

    #[test]
    fn cycle_is_reported() {
        let err = FiniteOrthoLattice::from_relation(
            "cyc",
            labels("0 a b 1"),
            &[(0, 1), (1, 2), (2, 1), (2, 3)],
            &[3, 2, 1, 0],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::Cycle { .. }));
    }

    #[test]
    fn sizes_are_guarded() {
        assert_eq!(
            FiniteOrthoLattice::from_relation("1", labels("0"), &[], &[0]).unwrap_err(),
            LatticeError::TooSmall
        );
        assert!(FiniteOrthoLattice::boolean(13).is_err());
        assert!(FiniteOrthoLattice::boolean(0).is_err());
    }

    #[test]
    fn boolean_cubes() {
        let b = FiniteOrthoLattice::boolean(3).unwrap();
        assert_eq!(b.size(), 8);
        assert_eq!(b.atoms().len(), 3);
        assert_eq!(b.label(Elem(0b110)), "110");
        b.validate().unwrap();
        assert_eq!(FiniteOrthoLattice::boolean(1).unwrap().labels(), &["0", "1"]);
    }

    #[test]
    fn square_product() {
        let two = FiniteOrthoLattice::boolean(1).unwrap();
        let sq = two.product(&two).unwrap();
        assert_eq!(sq.size(), 4);
        assert_eq!(sq.labels(), &["0", "(0,1)", "(1,0)", "1"]);
        sq.validate().unwrap();
        assert!(super::isomorphic(&sq, &FiniteOrthoLattice::boolean(2).unwrap()));
    }

    #[test]
    fn product_size_guard() {
        let big = FiniteOrthoLattice::boolean(12).unwrap();
        let two = FiniteOrthoLattice::boolean(1).unwrap();
        assert_eq!(big.product(&two).unwrap_err(), LatticeError::TooLarge(8192));
    }

    #[test]
    fn covers_of_square() {
        let b = FiniteOrthoLattice::boolean(2).unwrap();
        let c: Vec<(usize, usize)> = b
            .covers()
            .into_iter()
            .map(|(x, y)| (x.index(), y.index()))
            .collect();
        assert_eq!(c, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
