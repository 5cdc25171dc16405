//! Test-side oracles: deliberately naive re-implementations that share no
//! code with the library beyond the formula syntax tree.

#![allow(dead_code)]

use std::collections::BTreeMap;

use medlat_core::Formula;

/// A finite poset as a plain boolean matrix.
#[derive(Clone, Debug)]
pub struct NaivePoset {
    pub labels: Vec<String>,
    pub le: Vec<Vec<bool>>,
}

impl NaivePoset {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Nonempty subsets of `{0..n-1}`, largest first, then lexicographic;
    /// `S <= T` iff `S ⊇ T`.
    pub fn powerset(n: usize) -> Self {
        let mut sets: Vec<Vec<usize>> = (1u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let le = sets.iter().map(|s| sets.iter().map(|t| t.iter().all(|x| s.contains(x))).collect()).collect();
        let labels = sets.iter().map(|s| s.iter().map(|i| i.to_string()).collect::<String>()).collect();
        NaivePoset { labels, le }
    }

    pub fn from_library(p: &medlat_core::Poset) -> Self {
        let n = p.size();
        NaivePoset { labels: p.labels().to_vec(), le: (0..n).map(|i| (0..n).map(|j| p.leq(i, j)).collect()).collect() }
    }
}

/// `B(P)` computed on explicit membership vectors.
#[derive(Clone, Debug)]
pub struct SetAlgebra {
    pub poset: NaivePoset,
    /// Opens, sorted by membership vector in decreasing order.
    pub opens: Vec<Vec<bool>>,
}

impl SetAlgebra {
    pub fn new(poset: NaivePoset) -> Self {
        let n = poset.size();
        let mut opens: Vec<Vec<bool>> = (0u64..1 << n)
            .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|u| (0..n).all(|x| !u[x] || (0..n).all(|y| !poset.le[x][y] || u[y])))
            .collect();
        opens.sort();
        opens.reverse();
        SetAlgebra { poset, opens }
    }

    pub fn size(&self) -> usize {
        self.opens.len()
    }

    pub fn index(&self, u: &[bool]) -> usize {
        self.opens.iter().position(|o| o == u).expect("result is open")
    }

    pub fn label(&self, i: usize) -> String {
        let names: Vec<&str> =
            (0..self.poset.size()).filter(|&x| self.opens[i][x]).map(|x| self.poset.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// `U ≤ V` iff `U ⊇ V`.
    pub fn leq(&self, u: usize, v: usize) -> bool {
        (0..self.poset.size()).all(|x| !self.opens[v][x] || self.opens[u][x])
    }

    pub fn join(&self, u: usize, v: usize) -> usize {
        let w: Vec<bool> = self.opens[u].iter().zip(&self.opens[v]).map(|(a, b)| *a && *b).collect();
        self.index(&w)
    }

    pub fn meet(&self, u: usize, v: usize) -> usize {
        let w: Vec<bool> = self.opens[u].iter().zip(&self.opens[v]).map(|(a, b)| *a || *b).collect();
        self.index(&w)
    }

    /// `{x : every y >= x in U is in V}`.
    pub fn imp(&self, u: usize, v: usize) -> usize {
        let n = self.poset.size();
        let w: Vec<bool> =
            (0..n).map(|x| (0..n).all(|y| !self.poset.le[x][y] || !self.opens[u][y] || self.opens[v][y])).collect();
        self.index(&w)
    }

    pub fn bottom(&self) -> usize {
        self.index(&vec![true; self.poset.size()])
    }

    pub fn top(&self) -> usize {
        self.index(&vec![false; self.poset.size()])
    }
}

/// An algebra small enough to evaluate formulas by brute force.
pub trait Oracle {
    fn size(&self) -> usize;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn imp(&self, a: usize, b: usize) -> usize;
    fn label(&self, a: usize) -> String;
}

impl Oracle for SetAlgebra {
    fn size(&self) -> usize {
        SetAlgebra::size(self)
    }
    fn bottom(&self) -> usize {
        SetAlgebra::bottom(self)
    }
    fn top(&self) -> usize {
        SetAlgebra::top(self)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        SetAlgebra::join(self, a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        SetAlgebra::meet(self, a, b)
    }
    fn imp(&self, a: usize, b: usize) -> usize {
        SetAlgebra::imp(self, a, b)
    }
    fn label(&self, a: usize) -> String {
        SetAlgebra::label(self, a)
    }
}

/// The chain `c0 < ... < c(m-1)` with integer operations.
pub struct IntChain(pub usize);

impl Oracle for IntChain {
    fn size(&self) -> usize {
        self.0
    }
    fn bottom(&self) -> usize {
        0
    }
    fn top(&self) -> usize {
        self.0 - 1
    }
    fn join(&self, a: usize, b: usize) -> usize {
        a.max(b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        a.min(b)
    }
    fn imp(&self, a: usize, b: usize) -> usize {
        if a >= b {
            0
        } else {
            b
        }
    }
    fn label(&self, a: usize) -> String {
        format!("c{a}")
    }
}

pub fn eval_oracle(o: &dyn Oracle, f: &Formula, v: &BTreeMap<String, usize>) -> usize {
    match f {
        Formula::Var(x) => v[x],
        Formula::Top => o.bottom(),
        Formula::Bot => o.top(),
        Formula::And(a, b) => o.join(eval_oracle(o, a, v), eval_oracle(o, b, v)),
        Formula::Or(a, b) => o.meet(eval_oracle(o, a, v), eval_oracle(o, b, v)),
        Formula::Imp(a, b) => o.imp(eval_oracle(o, a, v), eval_oracle(o, b, v)),
        Formula::Not(a) => o.imp(eval_oracle(o, a, v), o.top()),
    }
}

/// First falsifying valuation in lexicographic order of value tuples
/// (variables sorted by name), as variable → label.
pub fn first_countermodel(o: &dyn Oracle, f: &Formula) -> Option<BTreeMap<String, String>> {
    let vars = f.variables();
    let m = o.size();
    let mut vals = vec![0usize; vars.len()];
    loop {
        let v: BTreeMap<String, usize> = vars.iter().cloned().zip(vals.iter().copied()).collect();
        if eval_oracle(o, f, &v) != o.bottom() {
            return Some(v.into_iter().map(|(k, x)| (k, o.label(x))).collect());
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < m {
                break;
            }
            vals[i] = 0;
        }
    }
}

/// Truth tables, written out separately from the library.
pub fn truth_table_valid(f: &Formula) -> bool {
    fn t(f: &Formula, v: &BTreeMap<String, bool>) -> bool {
        match f {
            Formula::Var(x) => v[x],
            Formula::Top => true,
            Formula::Bot => false,
            Formula::And(a, b) => t(a, v) & t(b, v),
            Formula::Or(a, b) => t(a, v) | t(b, v),
            Formula::Imp(a, b) => !t(a, v) | t(b, v),
            Formula::Not(a) => !t(a, v),
        }
    }
    let vars = f.variables();
    (0u32..1 << vars.len()).all(|row| {
        let v = vars.iter().enumerate().map(|(i, x)| (x.clone(), row >> i & 1 == 1)).collect();
        t(f, &v)
    })
}

/// Random formula over the first `vars` of `p, q, r, s`, nesting at most `depth`.
pub fn random_formula(rng: &mut impl rand::Rng, vars: usize, depth: usize) -> Formula {
    const NAMES: [&str; 4] = ["p", "q", "r", "s"];
    if depth <= 1 || rng.gen_range(0..4) == 0 {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::var(NAMES[rng.gen_range(0..vars)]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Formula::and(random_formula(rng, vars, d), random_formula(rng, vars, d)),
        1 => Formula::or(random_formula(rng, vars, d), random_formula(rng, vars, d)),
        2 => Formula::imp(random_formula(rng, vars, d), random_formula(rng, vars, d)),
        _ => Formula::not(random_formula(rng, vars, d)),
    }
}
