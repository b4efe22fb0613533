//! Isomorphism of ortholattices and canonical codes.

use super::{Elem, FiniteOrthoLattice};

/// Per-element invariant preserved by any order- and ortho-isomorphism.
fn invariants(l: &FiniteOrthoLattice) -> Vec<[usize; 4]> {
    let n = l.size();
    let mut down = vec![0usize; n];
    let mut up = vec![0usize; n];
    let mut lower_covers = vec![0usize; n];
    let mut upper_covers = vec![0usize; n];
    for x in l.elements() {
        for y in l.up_set(x).ones() {
            up[x.index()] += 1;
            down[y] += 1;
        }
    }
    for (p, q) in l.covers() {
        upper_covers[p.index()] += 1;
        lower_covers[q.index()] += 1;
    }
    (0..n)
        .map(|x| [down[x], up[x], lower_covers[x], upper_covers[x]])
        .collect()
}

/// An order- and complement-preserving bijection `l1 -> l2`, if one exists.
/// Entry `k` of the result is the image of element `k` of `l1`.
pub fn isomorphism(l1: &FiniteOrthoLattice, l2: &FiniteOrthoLattice) -> Option<Vec<Elem>> {
    let n = l1.size();
    if n != l2.size() {
        return None;
    }
    let (inv1, inv2) = (invariants(l1), invariants(l2));
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    // Assign rarest invariant classes first.
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |x: usize| inv1.iter().filter(|&&v| v == inv1[x]).count();
    order.sort_by_key(|&x| (class_size(x), inv1[x][0], x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(l1, l2, &inv1, &inv2, &order, 0, &mut map, &mut used) {
        Some(map.into_iter().map(Elem::from_index).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    l1: &FiniteOrthoLattice,
    l2: &FiniteOrthoLattice,
    inv1: &[[usize; 4]],
    inv2: &[[usize; 4]],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(k) else {
        return true;
    };
    if map[x] != usize::MAX {
        return extend(l1, l2, inv1, inv2, order, k + 1, map, used);
    }
    let ox = l1.ortho(Elem::from_index(x)).index();
    for y in 0..map.len() {
        if used[y] || inv2[y] != inv1[x] {
            continue;
        }
        let oy = l2.ortho(Elem::from_index(y)).index();
        if ox != x && (used[oy] || inv2[oy] != inv1[ox] || oy == y) {
            continue;
        }
        let pairs: &[(usize, usize)] = if ox == x { &[(x, y)] } else { &[(x, y), (ox, oy)] };
        if !pairs.iter().all(|&(a, b)| consistent(l1, l2, map, a, b)) {
            continue;
        }
        if pairs.len() == 2 && !consistent_pair(l1, l2, x, y, ox, oy) {
            continue;
        }
        for &(a, b) in pairs {
            map[a] = b;
            used[b] = true;
        }
        if extend(l1, l2, inv1, inv2, order, k + 1, map, used) {
            return true;
        }
        for &(a, b) in pairs {
            map[a] = usize::MAX;
            used[b] = false;
        }
    }
    false
}

fn consistent(l1: &FiniteOrthoLattice, l2: &FiniteOrthoLattice, map: &[usize], a: usize, b: usize) -> bool {
    let (ea, eb) = (Elem::from_index(a), Elem::from_index(b));
    map.iter().enumerate().all(|(u, &v)| {
        v == usize::MAX || {
            let (eu, ev) = (Elem::from_index(u), Elem::from_index(v));
            l1.leq(ea, eu) == l2.leq(eb, ev) && l1.leq(eu, ea) == l2.leq(ev, eb)
        }
    })
}

fn consistent_pair(
    l1: &FiniteOrthoLattice,
    l2: &FiniteOrthoLattice,
    x: usize,
    y: usize,
    ox: usize,
    oy: usize,
) -> bool {
    let e = Elem::from_index;
    l1.leq(e(x), e(ox)) == l2.leq(e(y), e(oy)) && l1.leq(e(ox), e(x)) == l2.leq(e(oy), e(y))
}

pub fn isomorphic(l1: &FiniteOrthoLattice, l2: &FiniteOrthoLattice) -> bool {
    isomorphism(l1, l2).is_some()
}

/// Canonical code of an ortholattice: equal codes iff isomorphic.
///
/// Elements are placed pairwise from both ends, `x` at the lowest free
/// position and `x'` at the highest, with `x` minimal among the unplaced
/// elements; each placement appends the order bits against everything
/// placed before it. The code is the lexicographically least such bit string.
/// Meant for the small lattices produced by enumeration: the number of
/// placements grows like `2^k k!` for `k` complement pairs of atoms.
pub fn canonical_code(l: &FiniteOrthoLattice) -> Vec<bool> {
    canonical_form(l).0
}

/// Canonical code plus the placement order realising it (element at
/// position `k` of the returned order).
pub(crate) fn canonical_form(l: &FiniteOrthoLattice) -> (Vec<bool>, Vec<usize>) {
    let n = l.size();
    let mut state = Canon {
        l,
        best: None,
        placed: Vec::with_capacity(n),
        code: Vec::new(),
        is_placed: vec![false; n],
    };
    state.place(l.bottom().index());
    state.place(l.top().index());
    state.search();
    let (code, placed) = state.best.expect("a symmetric linear extension always exists");
    // placement order 0, n-1, 1, n-2, ... back to positions
    let mut order = vec![0usize; n];
    for (k, &x) in placed.iter().enumerate() {
        let pos = if k % 2 == 0 { k / 2 } else { n - 1 - k / 2 };
        order[pos] = x;
    }
    (code, order)
}

struct Canon<'a> {
    l: &'a FiniteOrthoLattice,
    best: Option<(Vec<bool>, Vec<usize>)>,
    placed: Vec<usize>,
    code: Vec<bool>,
    is_placed: Vec<bool>,
}

impl Canon<'_> {
    fn place(&mut self, x: usize) {
        let ex = Elem::from_index(x);
        for &p in &self.placed {
            let ep = Elem::from_index(p);
            self.code.push(self.l.leq(ep, ex));
            self.code.push(self.l.leq(ex, ep));
        }
        self.placed.push(x);
        self.is_placed[x] = true;
    }

    fn unplace(&mut self) {
        let x = self.placed.pop().expect("placed element");
        self.is_placed[x] = false;
        let k = self.placed.len();
        self.code.truncate(self.code.len() - 2 * k);
    }

    /// Compares the current partial code with the best code's prefix.
    fn prefix_cmp(&self) -> std::cmp::Ordering {
        match &self.best {
            None => std::cmp::Ordering::Less,
            Some((best, _)) => self.code[..].cmp(&best[..self.code.len()]),
        }
    }

    fn search(&mut self) {
        if self.prefix_cmp() == std::cmp::Ordering::Greater {
            return;
        }
        if self.placed.len() == self.l.size() {
            self.best = Some((self.code.clone(), self.placed.clone()));
            return;
        }
        let n = self.l.size();
        for x in 0..n {
            if self.is_placed[x] {
                continue;
            }
            let ex = Elem::from_index(x);
            // every element strictly below x must already sit in a low position
            let minimal = (0..n).all(|y| {
                y == x || !self.l.leq(Elem::from_index(y), ex) || self.is_placed[y]
            });
            if !minimal {
                continue;
            }
            let ox = self.l.ortho(ex).index();
            self.place(x);
            self.place(ox);
            self.search();
            self.unplace();
            self.unplace();
        }
    }
}
