//! Finite Brouwer algebras backed by precomputed operation tables.
//!
//! Conventions: `join` is the lattice `+`, `meet` is `×`, `imp(a, b)` is the
//! least `c` with `a + c ≥ b`. The least element `bottom` is the designated
//! truth value; `neg(a) = imp(a, top)`.

mod construct;
mod export;
mod morphism;
mod structure;
mod validate;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{open_sets_with, powerset_poset_with_cap, OpenSetLimits, Poset, UpSet};

pub use construct::{Factor, PlusMap};
pub use export::AlgebraJson;
pub use morphism::{is_b_homomorphism, is_isomorphic, AlgebraMap, HomViolation, MapOp};
pub use structure::{Irreducibles, Ops};
pub use validate::{Law, ValidationReport, Violation};

/// Tables store element indices as `u16`.
pub const MAX_ALGEBRA_SIZE: usize = u16::MAX as usize;

/// Largest `n` for which [`bn`] builds `B_n` (|B_5| = 7580).
pub const BN_CAP: usize = 5;

#[derive(Debug, Clone, Copy)]
pub struct AlgebraLimits {
    /// Passed through to open-set enumeration.
    pub max_poset_size: usize,
    /// Largest accepted carrier.
    pub max_size: usize,
}

impl Default for AlgebraLimits {
    fn default() -> Self {
        AlgebraLimits { max_poset_size: OpenSetLimits::default().max_poset_size, max_size: 8192 }
    }
}

/// The poset an algebra was built from, with the open set behind each element.
#[derive(Debug)]
pub struct PosetOrigin {
    pub poset: Poset,
    pub opens: Vec<UpSet>,
}

#[derive(Clone)]
pub struct BrouwerAlgebra {
    size: usize,
    le: BitMatrix,
    join: Vec<u16>,
    meet: Vec<u16>,
    imp: Vec<u16>,
    bottom: usize,
    top: usize,
    labels: Vec<String>,
    provenance: String,
    origin: Option<Arc<PosetOrigin>>,
    ge: OnceLock<BitMatrix>,
    covers: OnceLock<Arc<structure::Covers>>,
    distributive: OnceLock<bool>,
}

impl std::fmt::Debug for BrouwerAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BrouwerAlgebra({}, {} elements)", self.provenance, self.size)
    }
}

impl BrouwerAlgebra {
    /// Assemble an algebra from flat row-major tables without checking any
    /// law; only dimensions and index ranges are verified. Use
    /// [`BrouwerAlgebra::validate`] to check the laws.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables_unchecked(
        le: BitMatrix,
        join: Vec<usize>,
        meet: Vec<usize>,
        imp: Vec<usize>,
        bottom: usize,
        top: usize,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let m = le.dim();
        if m == 0 {
            return Err(Error::input("algebra carrier is empty"));
        }
        if m > MAX_ALGEBRA_SIZE {
            return Err(Error::resource("algebra size", MAX_ALGEBRA_SIZE as u64));
        }
        for (name, t) in [("join", &join), ("meet", &meet), ("imp", &imp)] {
            if t.len() != m * m {
                return Err(Error::input(format!("{name} table is not {m}x{m}")));
            }
            if let Some(pos) = t.iter().position(|&v| v >= m) {
                return Err(Error::input(format!(
                    "{name} table entry ({}, {}) = {} is out of range",
                    pos / m,
                    pos % m,
                    t[pos]
                )));
            }
        }
        if bottom >= m || top >= m {
            return Err(Error::input("bottom/top index out of range"));
        }
        if labels.len() != m {
            return Err(Error::input(format!("expected {m} labels, got {}", labels.len())));
        }
        let pack = |t: Vec<usize>| t.into_iter().map(|v| v as u16).collect();
        Ok(Self::from_packed(le, pack(join), pack(meet), pack(imp), bottom, top, labels, provenance.into(), None))
    }

    /// Like [`BrouwerAlgebra::from_tables_unchecked`], but rejects tables that
    /// violate any Brouwer-algebra law.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        le: BitMatrix,
        join: Vec<usize>,
        meet: Vec<usize>,
        imp: Vec<usize>,
        bottom: usize,
        top: usize,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let a = Self::from_tables_unchecked(le, join, meet, imp, bottom, top, labels, provenance)?;
        let report = a.validate();
        if !report.is_ok() {
            return Err(Error::Precondition(format!("not a Brouwer algebra: {report}")));
        }
        Ok(a)
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_packed(
        le: BitMatrix,
        join: Vec<u16>,
        meet: Vec<u16>,
        imp: Vec<u16>,
        bottom: usize,
        top: usize,
        labels: Vec<String>,
        provenance: String,
        origin: Option<Arc<PosetOrigin>>,
    ) -> Self {
        BrouwerAlgebra {
            size: le.dim(),
            le,
            join,
            meet,
            imp,
            bottom,
            top,
            labels,
            provenance,
            origin,
            ge: OnceLock::new(),
            covers: OnceLock::new(),
            distributive: OnceLock::new(),
        }
    }

    /// Build an algebra from a bounded lattice given by its order alone; the
    /// join, meet and implication tables are derived by scanning the order.
    /// Fails when the order is not a lattice or implication does not exist.
    pub fn from_lattice_order(le: BitMatrix, labels: Vec<String>, provenance: impl Into<String>) -> Result<Self> {
        let m = le.dim();
        if m == 0 {
            return Err(Error::input("empty order"));
        }
        let ge = le.transpose();
        let least_of = |mask: &[u64], rows: &BitMatrix| -> Option<usize> {
            // element of `mask` whose up-row (resp. down-row) contains all of `mask`
            crate::bits::iter_ones(mask).find(|&c| mask.iter().zip(rows.row(c)).all(|(s, r)| s & !r == 0))
        };
        let and_rows = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| x & y).collect() };
        let mut join = vec![0usize; m * m];
        let mut meet = vec![0usize; m * m];
        for a in 0..m {
            for b in 0..m {
                let ub = and_rows(le.row(a), le.row(b));
                join[a * m + b] =
                    least_of(&ub, &le).ok_or_else(|| Error::input(format!("elements {a}, {b} have no join")))?;
                let lb = and_rows(ge.row(a), ge.row(b));
                meet[a * m + b] =
                    least_of(&lb, &ge).ok_or_else(|| Error::input(format!("elements {a}, {b} have no meet")))?;
            }
        }
        let all: Vec<u64> = {
            let mut v = vec![0u64; le.words()];
            for i in 0..m {
                v[i / 64] |= 1 << (i % 64);
            }
            v
        };
        let bottom = least_of(&all, &le).ok_or_else(|| Error::input("order has no least element"))?;
        let top = least_of(&all, &ge).ok_or_else(|| Error::input("order has no greatest element"))?;
        let mut imp = vec![0usize; m * m];
        for a in 0..m {
            for b in 0..m {
                imp[a * m + b] = validate::min_scan(&le, m, |c| le.get(b, join[a * m + c]))
                    .ok_or_else(|| Error::input(format!("implication {a} -> {b} does not exist")))?;
            }
        }
        Self::from_tables(le, join, meet, imp, bottom, top, labels, provenance)
    }

    /// `B(P)`: the open sets of `p` ordered by reverse inclusion.
    pub fn from_poset(p: &Poset) -> Result<Self> {
        Self::from_poset_with(p, AlgebraLimits::default())
    }

    pub fn from_poset_with(p: &Poset, limits: AlgebraLimits) -> Result<Self> {
        let opens = open_sets_with(p, OpenSetLimits { max_poset_size: limits.max_poset_size })?;
        let m = opens.len();
        if m > limits.max_size.min(MAX_ALGEBRA_SIZE) {
            return Err(Error::resource(
                format!("algebra of {} ({m} opens)", p.name()),
                limits.max_size.min(MAX_ALGEBRA_SIZE) as u64,
            ));
        }
        let masks: Vec<u64> = opens.iter().map(UpSet::bits).collect();
        let index: HashMap<u64, u16> = masks.iter().enumerate().map(|(i, &u)| (u, i as u16)).collect();
        let carrier = p.carrier_mask();
        // per open: join, meet and implication rows, then its order row
        let rows: Vec<TableRows> = masks
            .par_iter()
            .map(|&u| {
                let mut j = Vec::with_capacity(m);
                let mut mt = Vec::with_capacity(m);
                let mut im = Vec::with_capacity(m);
                let mut le_row = vec![0u64; m.div_ceil(64)];
                for (k, &v) in masks.iter().enumerate() {
                    j.push(index[&(u & v)]);
                    mt.push(index[&(u | v)]);
                    // U → V = {x : [x) ∩ U ⊆ V} = P minus the down-closure of U \ V
                    im.push(index[&(carrier & !p.down_closure_mask(u & !v))]);
                    if v & !u == 0 {
                        le_row[k / 64] |= 1 << (k % 64);
                    }
                }
                (j, mt, im, le_row)
            })
            .collect();
        let mut join = Vec::with_capacity(m * m);
        let mut meet = Vec::with_capacity(m * m);
        let mut imp = Vec::with_capacity(m * m);
        let mut le_rows = Vec::with_capacity(m);
        for (j, mt, im, le_row) in rows {
            join.extend(j);
            meet.extend(mt);
            imp.extend(im);
            le_rows.push(le_row);
        }
        let le = BitMatrix::from_rows(m, le_rows);
        let labels = masks.iter().map(|&u| p.render_subset(u)).collect();
        let bottom = index[&carrier] as usize;
        let top = index[&0] as usize;
        Ok(Self::from_packed(
            le,
            join,
            meet,
            imp,
            bottom,
            top,
            labels,
            format!("B({})", p.name()),
            Some(Arc::new(PosetOrigin { poset: p.clone(), opens })),
        ))
    }

    /// The `m`-element chain `c0 < c1 < ... `, `c0` the bottom.
    pub fn chain(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("chain needs at least one element"));
        }
        if m > MAX_ALGEBRA_SIZE {
            return Err(Error::resource("chain size", MAX_ALGEBRA_SIZE as u64));
        }
        let le = BitMatrix::from_fn(m, |i, j| i <= j);
        let mut join = Vec::with_capacity(m * m);
        let mut meet = Vec::with_capacity(m * m);
        let mut imp = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                join.push(a.max(b) as u16);
                meet.push(a.min(b) as u16);
                imp.push(if a >= b { 0 } else { b as u16 });
            }
        }
        let labels = (0..m).map(|i| format!("c{i}")).collect();
        Ok(Self::from_packed(le, join, meet, imp, 0, m - 1, labels, format!("chain:{m}"), None))
    }

    /// The two-element Boolean algebra `{0, 1}`.
    pub fn two() -> Self {
        let mut a = Self::chain(2).expect("2-chain");
        a.labels = vec!["0".into(), "1".into()];
        a.provenance = "two".into();
        a
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn origin(&self) -> Option<&PosetOrigin> {
        self.origin.as_deref()
    }

    pub fn order(&self) -> &BitMatrix {
        &self.le
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b] as usize
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.top)
    }

    /// The reverse order, `ge.get(a, b)` iff `b <= a`.
    pub fn reverse_order(&self) -> &BitMatrix {
        self.ge.get_or_init(|| self.le.transpose())
    }

    pub fn check_element(&self, x: usize) -> Result<usize> {
        if x < self.size {
            Ok(x)
        } else {
            Err(Error::input(format!("element {x} out of range for algebra of size {}", self.size)))
        }
    }

    /// The least `c` with `a + c ≥ b`, found by scanning the carrier.
    /// Independent of the stored implication table.
    pub fn imp_by_min_scan(&self, a: usize, b: usize) -> Option<usize> {
        validate::min_scan(&self.le, self.size, |c| self.leq(b, self.join(a, c)))
    }

    /// Resolve a command-line element reference: `#k` is an index,
    /// `top`/`bottom` are keywords, anything else must match exactly one
    /// label. A bare number is an index only if no label equals it.
    pub fn resolve_element(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(idx) = token.strip_prefix('#') {
            let k: usize = idx.parse().map_err(|_| Error::input(format!("bad element index {token:?}")))?;
            return self.check_element(k);
        }
        let by_label: Vec<usize> = (0..self.size).filter(|&i| self.labels[i] == token).collect();
        let keyword = match token {
            "top" => Some(self.top),
            "bottom" => Some(self.bottom),
            _ => None,
        };
        let numeric = token.parse::<usize>().ok().filter(|&k| k < self.size);
        let mut candidates: Vec<usize> = by_label;
        if candidates.is_empty() {
            candidates.extend(keyword);
        }
        if let Some(k) = numeric {
            if !candidates.is_empty() && !candidates.contains(&k) {
                return Err(Error::input(format!(
                    "element {token:?} is ambiguous: label of #{} and index #{k}",
                    candidates[0]
                )));
            }
            candidates.push(k);
        }
        candidates.sort_unstable();
        candidates.dedup();
        match candidates.as_slice() {
            [x] => Ok(*x),
            [] => Err(Error::input(format!("no element {token:?} in {}", self.provenance))),
            _ => Err(Error::input(format!("element {token:?} is ambiguous"))),
        }
    }

    /// Element whose open set is `mask`, for poset-built algebras.
    pub fn element_of_open(&self, mask: u64) -> Result<usize> {
        let origin = self
            .origin()
            .ok_or_else(|| Error::Precondition(format!("{} was not built from a poset", self.provenance)))?;
        origin
            .opens
            .iter()
            .position(|u| u.bits() == mask)
            .ok_or_else(|| Error::input(format!("{} is not an open set", origin.poset.render_subset(mask))))
    }

    /// Open set behind element `x`, for poset-built algebras.
    pub fn open_of(&self, x: usize) -> Option<UpSet> {
        self.origin().map(|o| o.opens[x])
    }

    pub(crate) fn up_set_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        crate::bits::iter_ones(self.le.row(x))
    }
}

type TableRows = (Vec<u16>, Vec<u16>, Vec<u16>, Vec<u64>);

fn bn_cache() -> &'static Mutex<HashMap<usize, Arc<BrouwerAlgebra>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BrouwerAlgebra>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `B_n = B(2^n − {∅})`, built once per process.
pub fn bn(n: usize) -> Result<Arc<BrouwerAlgebra>> {
    if n == 0 {
        return Err(Error::input("B_n needs n >= 1"));
    }
    if n > BN_CAP {
        return Err(Error::resource(format!("B_{n}"), BN_CAP as u64));
    }
    if let Some(a) = bn_cache().lock().expect("bn cache").get(&n) {
        return Ok(Arc::clone(a));
    }
    // Built outside the lock so small levels are not blocked behind B_5.
    let p = powerset_poset_with_cap(n, BN_CAP)?;
    let a = BrouwerAlgebra::from_poset_with(&p, AlgebraLimits { max_poset_size: 32, max_size: MAX_ALGEBRA_SIZE })?
        .with_provenance(format!("bn:{n}"));
    let a = Arc::new(a);
    Ok(Arc::clone(bn_cache().lock().expect("bn cache").entry(n).or_insert(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &BrouwerAlgebra, label: &str) -> usize {
        a.resolve_element(label).unwrap()
    }

    #[test]
    fn one_point_poset_is_boolean() {
        let a = BrouwerAlgebra::from_poset(&Poset::chain(1).unwrap()).unwrap();
        assert_eq!(a.size(), 2);
        assert!(a.validate().is_ok());
        assert_eq!(a.neg(a.bottom()), a.top());
        assert_eq!(a.neg(a.top()), a.bottom());
    }

    #[test]
    fn fork_negation() {
        let a = BrouwerAlgebra::from_poset(&Poset::fork()).unwrap();
        assert_eq!(a.size(), 5);
        assert_eq!(a.labels(), &["{r,a,b}", "{a,b}", "{a}", "{b}", "{}"]);
        // ¬{a} = {x : [x) ∩ {a} ⊆ ∅} = {b}
        assert_eq!(a.imp(el(&a, "{a}"), a.top()), el(&a, "{b}"));
        assert_eq!(a.neg(el(&a, "{a,b}")), a.top());
        assert!(a.validate().is_ok());
    }

    #[test]
    fn two_chain_poset_gives_three_chain() {
        let a = BrouwerAlgebra::from_poset(&Poset::chain(2).unwrap()).unwrap();
        assert_eq!(a.size(), 3);
        for x in 0..3 {
            for y in 0..3 {
                assert!(a.leq(x, y) || a.leq(y, x));
            }
        }
    }

    #[test]
    fn bn_sizes() {
        assert_eq!(bn(1).unwrap().size(), 2);
        assert_eq!(bn(2).unwrap().size(), 5);
        assert_eq!(bn(3).unwrap().size(), 19);
        assert!(bn(6).is_err());
        assert!(bn(0).is_err());
    }

    #[test]
    fn chain_tables() {
        let c = BrouwerAlgebra::chain(3).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.neg(1), 2);
        assert_eq!(c.imp(2, 1), 0);
    }

    #[test]
    fn imp_table_matches_min_scan_on_bn3() {
        let a = bn(3).unwrap();
        for x in 0..a.size() {
            for y in 0..a.size() {
                assert_eq!(Some(a.imp(x, y)), a.imp_by_min_scan(x, y));
            }
        }
    }

    #[test]
    fn lattice_order_constructor() {
        let m = BrouwerAlgebra::from_lattice_order(
            BitMatrix::from_fn(4, |i, j| i == j || i == 0 || j == 3),
            vec!["0".into(), "x".into(), "y".into(), "1".into()],
            "2x2",
        )
        .unwrap();
        assert_eq!(m.join(1, 2), 3);
        assert_eq!(m.neg(1), 2);
    }

    #[test]
    fn element_resolution() {
        let c = BrouwerAlgebra::chain(3).unwrap();
        assert_eq!(c.resolve_element("c1").unwrap(), 1);
        assert_eq!(c.resolve_element("#2").unwrap(), 2);
        assert_eq!(c.resolve_element("top").unwrap(), 2);
        assert_eq!(c.resolve_element("1").unwrap(), 1);
        assert!(c.resolve_element("#3").is_err());
        assert!(c.resolve_element("zz").is_err());
        let two = BrouwerAlgebra::two();
        // label "1" is element #1, same as index 1: fine
        assert_eq!(two.resolve_element("1").unwrap(), 1);
        let mut swapped = BrouwerAlgebra::two();
        swapped.labels = vec!["1".into(), "0".into()];
        assert!(swapped.resolve_element("1").is_err());
    }
}
