//! Enumeration of small ortholattices and countermodel hunting.
//!
//! Every ortholattice with `n = 2k + 2` elements has a linear extension
//! `0, e1, .., ek, ek', .., e1', 1` in which complementation reverses the
//! positions. Enumeration fixes that layout and tries every order relation
//! between the middle positions that respects it. A pair `(p, q)` with
//! `p < q` determines the mirrored pair `(n-1-q, n-1-p)`, and `e` is never
//! comparable with `e'`, which leaves `k(k-1)` free bits. Candidates that are
//! transitively closed, form an ortholattice and are already in canonical
//! form are kept, one per isomorphism class. Odd sizes have none, since
//! complementation pairs off every element.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::check::{CheckReport, Checker};
use crate::error::SearchError;
use crate::lattice::{canonical_code, FiniteOrthoLattice};
use crate::term::QuasiEquation;

pub const MAX_SEARCH_ELEMENTS: usize = 12;
pub const DEFAULT_MAX_ELEMENTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Lattices in which the target fails.
    Failing,
    /// Lattices in which the target holds.
    Satisfying,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub target: QuasiEquation,
    pub mode: Mode,
    pub max_elements: usize,
    pub limit: Option<usize>,
}

impl SearchTask {
    pub fn failing(target: impl Into<QuasiEquation>) -> Self {
        SearchTask {
            target: target.into(),
            mode: Mode::Failing,
            max_elements: DEFAULT_MAX_ELEMENTS,
            limit: None,
        }
    }

    pub fn satisfying(target: impl Into<QuasiEquation>) -> Self {
        SearchTask {
            mode: Mode::Satisfying,
            ..Self::failing(target)
        }
    }

    pub fn max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

/// The free pairs `(p, q)` of middle positions, one per mirror orbit.
fn free_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 1..n - 1 {
        for q in p + 1..n - 1 {
            let mirror = (n - 1 - q, n - 1 - p);
            if q != n - 1 - p && (p, q) <= mirror {
                out.push((p, q));
            }
        }
    }
    out
}

/// Up-set rows for a bit pattern over the free pairs, or `None` when the
/// relation is not transitive.
fn relation(n: usize, pairs: &[(usize, usize)], bits: u64) -> Option<Vec<FixedBitSet>> {
    let mut up: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(x);
            s.insert(n - 1);
            s
        })
        .collect();
    up[0].insert_range(..);
    for (b, &(p, q)) in pairs.iter().enumerate() {
        if bits >> b & 1 == 1 {
            up[p].insert(q);
            up[n - 1 - q].insert(n - 1 - p);
        }
    }
    for x in 0..n {
        for y in up[x].ones() {
            if !up[y].is_subset(&up[x]) {
                return None;
            }
        }
    }
    Some(up)
}

/// Code of the lattice under its own layout, in the placement order used
/// by [`canonical_code`].
fn own_code(l: &FiniteOrthoLattice) -> Vec<bool> {
    let n = l.size();
    let seq: Vec<usize> = (0..n)
        .map(|k| if k % 2 == 0 { k / 2 } else { n - 1 - k / 2 })
        .collect();
    let elems: Vec<_> = l.elements().collect();
    let mut code = Vec::with_capacity(n * n);
    for (k, &x) in seq.iter().enumerate() {
        for &p in &seq[..k] {
            code.push(l.leq(elems[p], elems[x]));
            code.push(l.leq(elems[x], elems[p]));
        }
    }
    code
}

fn layout_labels(n: usize) -> Vec<String> {
    let k = (n - 2) / 2;
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=k).map(|i| format!("e{i}")));
    labels.extend((1..=k).rev().map(|i| format!("e{i}'")));
    labels.push("1".into());
    labels
}

/// All ortholattices with exactly `n` elements, one per isomorphism class,
/// named `OL{n}_{k}` and sorted by canonical code.
pub fn enumerate_ortholattices(n: usize) -> Result<Vec<FiniteOrthoLattice>, SearchError> {
    if !(2..=MAX_SEARCH_ELEMENTS).contains(&n) {
        return Err(SearchError::BoundExceeded(n));
    }
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    let pairs = free_pairs(n);
    let labels = layout_labels(n);
    let ortho: Vec<usize> = (0..n).rev().collect();
    let mut found: Vec<(Vec<bool>, FiniteOrthoLattice)> = (0..1u64 << pairs.len())
        .into_par_iter()
        .filter_map(|bits| {
            let up = relation(n, &pairs, bits)?;
            let l = FiniteOrthoLattice::from_order("", labels.clone(), up, &ortho).ok()?;
            let code = own_code(&l);
            (canonical_code(&l) == code).then_some((code, l))
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(k, (_, l))| l.with_name(format!("OL{n}_{}", k + 1)))
        .collect())
}

/// Scans every ortholattice of size `2..=max_elements` in enumeration order
/// and keeps those matching the task's mode, up to `limit`.
pub fn hunt_countermodel(
    task: &SearchTask,
) -> Result<Vec<(FiniteOrthoLattice, CheckReport)>, SearchError> {
    hunt_with(&Checker::default(), task)
}

pub fn hunt_with(
    checker: &Checker,
    task: &SearchTask,
) -> Result<Vec<(FiniteOrthoLattice, CheckReport)>, SearchError> {
    if !(2..=MAX_SEARCH_ELEMENTS).contains(&task.max_elements) {
        return Err(SearchError::BoundExceeded(task.max_elements));
    }
    let limit = task.limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for n in 2..=task.max_elements {
        for l in enumerate_ortholattices(n)? {
            if out.len() >= limit {
                return Ok(out);
            }
            let report = checker.check_quasi(&l, &task.target)?;
            let keep = match task.mode {
                Mode::Failing => report.fails(),
                Mode::Satisfying => report.holds(),
            };
            if keep {
                out.push((l, report));
            }
        }
    }
    Ok(out)
}
