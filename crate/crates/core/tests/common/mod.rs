//! Reference model shared by the integration tests.
//!
//! Lattices are rebuilt from their Hasse diagrams by brute force and terms
//! are evaluated by direct recursion over the connective definitions, so
//! nothing here goes through the library's tables or compiled evaluator.

#![allow(dead_code)]

use orthokit_core::term::Term;

#[derive(Clone, Debug)]
pub struct Model {
    pub names: Vec<String>,
    leq: Vec<Vec<bool>>,
    comp: Vec<usize>,
    joins: Vec<Vec<usize>>,
    meets: Vec<Vec<usize>>,
}

impl Model {
    pub fn from_covers(elements: &str, ortho: &[(&str, &str)], covers: &str) -> Model {
        let names: Vec<String> = elements.split_whitespace().map(String::from).collect();
        let n = names.len();
        let idx = |s: &str| names.iter().position(|x| x == s).unwrap_or_else(|| panic!("{s}"));
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
            row[idx("1")] = true;
        }
        leq[idx("0")] = vec![true; n];
        for c in covers.split_whitespace() {
            let (a, b) = c.split_once('<').unwrap();
            leq[idx(a)][idx(b)] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if leq[a][b] && leq[b][c] && !leq[a][c] {
                            leq[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut comp = vec![usize::MAX; n];
        comp[idx("0")] = idx("1");
        comp[idx("1")] = idx("0");
        for (a, b) in ortho {
            comp[idx(a)] = idx(b);
            comp[idx(b)] = idx(a);
        }
        assert!(comp.iter().all(|&c| c < n));
        Model::finish(names, leq, comp)
    }

    /// Subsets of a `k`-element set, numbered as integers with the first
    /// coordinate most significant.
    pub fn boolean(k: u32) -> Model {
        let n = 1usize << k;
        let names = (0..n)
            .map(|x| match x {
                0 => "0".to_string(),
                x if x == n - 1 => "1".to_string(),
                x => format!("{:0w$b}", x, w = k as usize),
            })
            .collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a & b == a).collect()).collect();
        let comp = (0..n).map(|a| (n - 1) ^ a).collect();
        Model::finish(names, leq, comp)
    }

    pub fn product(&self, other: &Model) -> Model {
        let (n1, n2) = (self.size(), other.size());
        let mut names = Vec::new();
        let mut comp = Vec::new();
        for x in 0..n1 {
            for y in 0..n2 {
                let i = x * n2 + y;
                names.push(if i == 0 {
                    "0".to_string()
                } else if i == n1 * n2 - 1 {
                    "1".to_string()
                } else {
                    format!("({},{})", self.names[x], other.names[y])
                });
                comp.push(self.comp[x] * n2 + other.comp[y]);
            }
        }
        let leq = (0..n1 * n2)
            .map(|i| {
                (0..n1 * n2)
                    .map(|j| self.leq[i / n2][j / n2] && other.leq[i % n2][j % n2])
                    .collect()
            })
            .collect();
        Model::finish(names, leq, comp)
    }

    /// Model over an order given as a matrix, for lattices found by search.
    pub fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>, comp: Vec<usize>) -> Model {
        Model::finish(names, leq, comp)
    }

    fn finish(names: Vec<String>, leq: Vec<Vec<bool>>, comp: Vec<usize>) -> Model {
        let n = names.len();
        let ub = |a: usize, b: usize| -> Vec<usize> {
            (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect()
        };
        let lb = |a: usize, b: usize| -> Vec<usize> {
            (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect()
        };
        let joins = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let u = ub(a, b);
                        *u.iter().find(|&&c| u.iter().all(|&d| leq[c][d])).expect("join")
                    })
                    .collect()
            })
            .collect();
        let meets = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let l = lb(a, b);
                        *l.iter().find(|&&c| l.iter().all(|&d| leq[d][c])).expect("meet")
                    })
                    .collect()
            })
            .collect();
        Model {
            names,
            leq,
            comp,
            joins,
            meets,
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn idx(&self, name: &str) -> usize {
        self.names.iter().position(|x| x == name).unwrap()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn zero(&self) -> usize {
        (0..self.size()).find(|&z| (0..self.size()).all(|x| self.leq[z][x])).unwrap()
    }

    pub fn one(&self) -> usize {
        (0..self.size()).find(|&z| (0..self.size()).all(|x| self.leq[x][z])).unwrap()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.joins[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meets[a][b]
    }

    pub fn comp(&self, a: usize) -> usize {
        self.comp[a]
    }

    /// `a ->i b`.
    pub fn imp(&self, i: u8, a: usize, b: usize) -> usize {
        let (j, m, c) = (|x, y| self.join(x, y), |x, y| self.meet(x, y), |x| self.comp(x));
        match i {
            0 => j(c(a), b),
            1 => j(c(a), m(a, b)),
            2 => j(b, m(c(a), c(b))),
            3 => j(j(m(c(a), b), m(c(a), c(b))), m(a, j(c(a), b))),
            4 => j(j(m(b, c(a)), m(b, a)), m(c(b), j(b, c(a)))),
            5 => j(j(m(a, b), m(c(a), b)), m(c(a), c(b))),
            _ => unreachable!(),
        }
    }

    /// `a ==i b`.
    pub fn ident(&self, i: u8, a: usize, b: usize) -> usize {
        let (j, m, c) = (|x, y| self.join(x, y), |x, y| self.meet(x, y), |x| self.comp(x));
        match i {
            0 => m(j(c(a), b), j(a, c(b))),
            1 => m(j(a, c(b)), j(c(a), m(a, b))),
            2 => m(j(a, c(b)), j(b, m(c(a), c(b)))),
            3 => m(j(c(a), b), j(a, m(c(a), c(b)))),
            4 => m(j(c(a), b), j(c(b), m(a, b))),
            5 => j(m(a, b), m(c(a), c(b))),
            _ => unreachable!(),
        }
    }

    pub fn eval(&self, t: &Term, env: &[(String, usize)]) -> usize {
        match t {
            Term::Var(v) => env.iter().find(|(n, _)| n == v).expect("bound variable").1,
            Term::Zero => self.zero(),
            Term::One => self.one(),
            Term::Comp(x) => self.comp(self.eval(x, env)),
            Term::Join(x, y) => self.join(self.eval(x, env), self.eval(y, env)),
            Term::Meet(x, y) => self.meet(self.eval(x, env), self.eval(y, env)),
            Term::Impl(i, x, y) => self.imp(i.get(), self.eval(x, env), self.eval(y, env)),
            Term::BiImpl(i, x, y) => {
                let (a, b) = (self.eval(x, env), self.eval(y, env));
                self.meet(self.imp(i.get(), a, b), self.imp(i.get(), b, a))
            }
            Term::Ident(i, x, y) => self.ident(i.get(), self.eval(x, env), self.eval(y, env)),
        }
    }

    /// First valuation, in lexicographic order of the sorted variables with
    /// the first one most significant, where all `hyps` hold and `concl`
    /// does not. Sides are `(left, right)` pairs of terms.
    pub fn counterexample(
        &self,
        hyps: &[(Term, Term)],
        concl: &(Term, Term),
    ) -> Option<Vec<(String, String)>> {
        let mut vars: Vec<String> = Vec::new();
        for (l, r) in hyps.iter().chain(std::iter::once(concl)) {
            vars.extend(l.variables());
            vars.extend(r.variables());
        }
        vars.sort();
        vars.dedup();
        let n = self.size();
        let total = n.pow(vars.len() as u32);
        for code in 0..total {
            let mut env = Vec::new();
            let mut rest = code;
            for v in vars.iter().rev() {
                env.push((v.clone(), rest % n));
                rest /= n;
            }
            env.reverse();
            let sat = |(l, r): &(Term, Term)| self.eval(l, &env) == self.eval(r, &env);
            if hyps.iter().all(sat) && !sat(concl) {
                return Some(env.into_iter().map(|(v, e)| (v, self.names[e].clone())).collect());
            }
        }
        None
    }
}

fn sides(e: &orthokit_core::Equation) -> (Term, Term) {
    (e.left.clone(), e.right.clone())
}

/// Reference verdict for a quasi-equation: `None` when it holds.
pub fn oracle_check(m: &Model, q: &orthokit_core::QuasiEquation) -> Option<Vec<(String, String)>> {
    let hyps: Vec<(Term, Term)> = q.hypotheses.iter().map(sides).collect();
    m.counterexample(&hyps, &sides(&q.conclusion))
}

pub fn o6() -> Model {
    Model::from_covers(
        "0 x y' y x' 1",
        &[("x", "x'"), ("y", "y'")],
        "0<x x<y y<1 0<y' y'<x' x'<1",
    )
}

pub fn mo2() -> Model {
    Model::from_covers(
        "0 p p' q q' 1",
        &[("p", "p'"), ("q", "q'")],
        "0<p 0<p' 0<q 0<q' p<1 p'<1 q<1 q'<1",
    )
}

pub fn m12() -> Model {
    Model::from_covers(
        "0 x w z' v' y v w' z x' y' 1",
        &[("x", "x'"), ("y", "y'"), ("z", "z'"), ("w", "w'"), ("v", "v'")],
        "0<x 0<w 0<z' 0<v' x<y x<v x<w' w<z w<x' z'<w' z'<y' y<z y'<x' v'<x' v<1",
    )
}

pub fn f3b() -> Model {
    Model::from_covers(
        "0 x w z' y w' z x' y' 1",
        &[("x", "x'"), ("y", "y'"), ("z", "z'"), ("w", "w'")],
        "0<x 0<w 0<z' x<y x<w' w<z w<x' z'<w' z'<y' y<z y'<x'",
    )
}

pub fn f9g() -> Model {
    Model::from_covers(
        "0 x y z' z y' x' 1",
        &[("x", "x'"), ("y", "y'"), ("z", "z'")],
        "0<x 0<y 0<z' x<z y<z z'<y' z'<x'",
    )
}

pub fn f2() -> Model {
    Model::boolean(4).product(&mo2())
}

/// Reference models for every stock lattice, by atlas name.
pub fn stock_models() -> Vec<(&'static str, Model)> {
    vec![
        ("2", Model::boolean(1)),
        ("2^2", Model::boolean(2)),
        ("2^3", Model::boolean(3)),
        ("2^4", Model::boolean(4)),
        ("MO2", mo2()),
        ("O6", o6()),
        ("F9G", f9g()),
        ("F3B", f3b()),
        ("M12", m12()),
        ("F2", f2()),
    ]
}
