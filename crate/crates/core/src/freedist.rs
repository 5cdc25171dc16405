//! The free distributive lattice on `n` generators with a new bottom,
//! `F_n = 0 ⊕ Fr(n)`, in antichain normal form.
//!
//! An element is a join `⋁_j ∏A_j` of meets of generator sets. The family
//! `{A_j}` is kept `⊆`-minimal (a smaller set gives a larger meet), which makes
//! the representation unique and equality structural. The bottom is the empty
//! family and the top is the family of all singletons.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::algebra::{bn, is_b_homomorphism, is_isomorphic, AlgebraMap, BrouwerAlgebra, HomViolation};
use crate::bits::{ones, BitMatrix};
use crate::error::{Error, Result};
use crate::poset::powerset_subsets;

/// Largest generator count for [`free_enumerate`] (`|F_5| = 7580`).
pub const MAX_FREE_ENUMERATE: usize = 5;
/// Largest generator count for which full operation tables are built.
pub const MAX_FREE_TABLES: usize = 4;

/// An element of `F_n`: a `⊆`-antichain of nonempty generator sets (bitmasks),
/// sorted lexicographically by member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeElement {
    n: usize,
    family: Vec<u32>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("F_n needs n >= 1"));
    }
    if n > MAX_FREE_ENUMERATE {
        return Err(Error::input(format!("F_n supports n <= {MAX_FREE_ENUMERATE}, got {n}")));
    }
    Ok(())
}

/// Lexicographic order on the sorted member lists of two sets.
fn lex(a: u32, b: u32) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Drop every set that has a proper subset in the family, dedup and sort.
fn normalize(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_unstable();
    sets.dedup();
    let minimal: Vec<u32> = sets.iter().copied().filter(|&s| !sets.iter().any(|&t| t != s && t & !s == 0)).collect();
    let mut minimal = minimal;
    minimal.sort_by(|&a, &b| lex(a, b));
    minimal
}

impl FreeElement {
    /// Build from an arbitrary family of nonempty generator sets, normalizing.
    pub fn from_family(n: usize, sets: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_n(n)?;
        let sets: Vec<u32> = sets.into_iter().collect();
        if let Some(&s) = sets.iter().find(|&&s| s == 0 || s >> n != 0) {
            return Err(Error::input(format!("generator set {s:#b} is empty or out of range for n = {n}")));
        }
        Ok(FreeElement { n, family: normalize(sets) })
    }

    pub fn bottom(n: usize) -> Result<Self> {
        Self::from_family(n, [])
    }

    pub fn top(n: usize) -> Result<Self> {
        Self::from_family(n, (0..n).map(|i| 1 << i))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::input(format!("generator a{i} out of range for n = {n}")));
        }
        Self::from_family(n, [1 << i])
    }

    /// `∏_{i∈I} a_i` for a nonempty index mask.
    pub fn product(n: usize, set: u32) -> Result<Self> {
        Self::from_family(n, [set])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The components `A_j` as bitmasks.
    pub fn family(&self) -> &[u32] {
        &self.family
    }

    pub fn is_bottom(&self) -> bool {
        self.family.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.family.len() == self.n && self.family.iter().all(|s| s.count_ones() == 1)
    }

    /// Parse `0`, `1`, or a sum of products like `a0*a1 + a2`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_n(n)?;
        let t = text.trim();
        match t {
            "0" => return Self::bottom(n),
            "1" => return Self::top(n),
            _ => {}
        }
        let mut sets = Vec::new();
        for term in t.split('+') {
            let mut set = 0u32;
            for factor in term.split('*') {
                let f = factor.trim();
                let i: usize = f
                    .strip_prefix('a')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::input(format!("bad generator {f:?} in {text:?}")))?;
                if i >= n {
                    return Err(Error::input(format!("generator a{i} out of range for n = {n}")));
                }
                set |= 1 << i;
            }
            sets.push(set);
        }
        Self::from_family(n, sets)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return f.write_str("0");
        }
        if self.is_top() {
            return f.write_str("1");
        }
        for (j, &s) in self.family.iter().enumerate() {
            if j > 0 {
                f.write_str(" + ")?;
            }
            for (k, i) in ones(s as u64).enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write!(f, "a{i}")?;
            }
        }
        Ok(())
    }
}

fn same_n(a: &FreeElement, b: &FreeElement) -> Result<usize> {
    if a.n != b.n {
        return Err(Error::input(format!("mixed generator counts {} and {}", a.n, b.n)));
    }
    Ok(a.n)
}

/// `a <= b` iff every component of `a` lies below some component of `b`,
/// i.e. each `A_i` contains some `B_j`.
pub fn free_leq(a: &FreeElement, b: &FreeElement) -> Result<bool> {
    same_n(a, b)?;
    Ok(leq_raw(&a.family, &b.family))
}

fn leq_raw(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|&s| b.iter().any(|&t| t & !s == 0))
}

pub fn free_join(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    let n = same_n(a, b)?;
    Ok(FreeElement { n, family: normalize(a.family.iter().chain(&b.family).copied().collect()) })
}

pub fn free_meet(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    let n = same_n(a, b)?;
    let sets = a.family.iter().flat_map(|&s| b.family.iter().map(move |&t| s | t)).collect();
    Ok(FreeElement { n, family: normalize(sets) })
}

/// The components of `b` that are not below `a`.
pub fn free_imp(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    let n = same_n(a, b)?;
    Ok(FreeElement {
        n,
        family: b.family.iter().copied().filter(|&t| !a.family.iter().any(|&s| s & !t == 0)).collect(),
    })
}

pub fn free_neg(a: &FreeElement) -> FreeElement {
    free_imp(a, &FreeElement::top(a.n).expect("valid n")).expect("same n")
}

/// All elements of `F_n`, sorted by family.
pub fn free_enumerate(n: usize) -> Result<Vec<FreeElement>> {
    if n > MAX_FREE_ENUMERATE {
        return Err(Error::resource(format!("F_{n} enumeration"), MAX_FREE_ENUMERATE as u64));
    }
    check_n(n)?;
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn grow(subsets: &[u32], start: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(chosen.clone());
        for k in start..subsets.len() {
            let s = subsets[k];
            if chosen.iter().all(|&t| t & !s != 0 && s & !t != 0) {
                chosen.push(s);
                grow(subsets, k + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    grow(&subsets, 0, &mut chosen, &mut out);
    let mut elems: Vec<FreeElement> = out.into_iter().map(|f| FreeElement { n, family: normalize(f) }).collect();
    elems.sort_by(|x, y| cmp_family(&x.family, &y.family));
    Ok(elems)
}

fn cmp_family(a: &[u32], b: &[u32]) -> Ordering {
    for (&s, &t) in a.iter().zip(b) {
        match lex(s, t) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// `F_n` as a table-backed algebra, with the elements it was built from.
pub struct FreeAlgebra {
    pub algebra: BrouwerAlgebra,
    pub elements: Vec<FreeElement>,
}

impl FreeAlgebra {
    pub fn index_of(&self, x: &FreeElement) -> Option<usize> {
        self.elements.binary_search_by(|e| cmp_family(&e.family, &x.family)).ok()
    }
}

/// Operation tables of `F_n` computed from the normal forms.
pub fn free_algebra(n: usize) -> Result<FreeAlgebra> {
    if n > MAX_FREE_TABLES {
        return Err(Error::resource(format!("F_{n} tables"), MAX_FREE_TABLES as u64));
    }
    let elements = free_enumerate(n)?;
    let m = elements.len();
    let find = |fam: &[u32]| -> usize {
        elements.binary_search_by(|e| cmp_family(&e.family, fam)).expect("normal forms are closed under the operations")
    };
    let le = BitMatrix::from_fn(m, |i, j| leq_raw(&elements[i].family, &elements[j].family));
    let mut join = Vec::with_capacity(m * m);
    let mut meet = Vec::with_capacity(m * m);
    let mut imp = Vec::with_capacity(m * m);
    for x in &elements {
        for y in &elements {
            join.push(find(&free_join(x, y)?.family));
            meet.push(find(&free_meet(x, y)?.family));
            imp.push(find(&free_imp(x, y)?.family));
        }
    }
    let bottom = find(&[]);
    let top = find(&FreeElement::top(n)?.family);
    let labels = elements.iter().map(ToString::to_string).collect();
    let algebra = BrouwerAlgebra::from_tables_unchecked(le, join, meet, imp, bottom, top, labels, format!("free:{n}"))?;
    Ok(FreeAlgebra { algebra, elements })
}

/// The structural isomorphism `F_n → B_n` and its verification.
#[derive(Debug, Clone, Serialize)]
pub struct IsoToBn {
    pub n: usize,
    pub map: AlgebraMap,
    pub bijective: bool,
    pub homomorphism: std::result::Result<(), HomViolation>,
    /// The witness found by the generic isomorphism search.
    pub search_witness: Option<AlgebraMap>,
    /// Whether the search returned the same map.
    pub search_agrees: bool,
}

impl IsoToBn {
    pub fn is_verified(&self) -> bool {
        self.bijective && self.homomorphism.is_ok()
    }
}

/// Open set of `B_n` (as a mask over the powerset poset) that `x` maps to:
/// `a_i ↦ {S : i ∉ S}`, products go to unions and joins to intersections.
fn bn_open_mask(x: &FreeElement, subsets: &[u32]) -> u64 {
    let all: u64 = if subsets.len() == 64 { !0 } else { (1u64 << subsets.len()) - 1 };
    x.family.iter().fold(all, |acc, &a| {
        // ∏A ↦ ⋃_{i∈A} {S : i ∉ S} = {S : A ⊄ S}
        let comp = subsets.iter().enumerate().filter(|&(_, &s)| a & !s != 0).fold(0u64, |m, (k, _)| m | 1 << k);
        acc & comp
    })
}

pub fn iso_to_bn(n: usize) -> Result<IsoToBn> {
    if n > MAX_FREE_TABLES {
        return Err(Error::resource(format!("F_{n} isomorphism check"), MAX_FREE_TABLES as u64));
    }
    let f = free_algebra(n)?;
    let b = bn(n)?;
    let subsets = powerset_subsets(n);
    let image = f.elements.iter().map(|x| b.element_of_open(bn_open_mask(x, &subsets))).collect::<Result<Vec<_>>>()?;
    let map = AlgebraMap::new(&f.algebra, &b, image);
    let bijective = map.is_injective() && map.is_surjective_onto(b.size());
    let homomorphism = is_b_homomorphism(&f.algebra, &b, &map);
    let search_witness = is_isomorphic(&f.algebra, &b);
    let search_agrees = search_witness.as_ref() == Some(&map);
    Ok(IsoToBn { n, map, bijective, homomorphism, search_witness, search_agrees })
}

/// Whether `a_i <= ⋁_{j∈I} a_j`; freeness says never.
pub fn independence_check(n: usize, i: usize, set: u32) -> Result<bool> {
    check_n(n)?;
    if set >> i & 1 == 1 {
        return Err(Error::input(format!("index {i} is in the set")));
    }
    let gen = FreeElement::generator(n, i)?;
    let join = FreeElement::from_family(n, ones(set as u64).map(|j| 1u32 << j))?;
    free_leq(&gen, &join)
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorNegation {
    pub i: usize,
    pub neg: String,
    pub neg_neg: String,
    /// `¬a_i = ⋁_{j≠i} a_j`
    pub neg_is_other_generators: bool,
    /// `¬¬a_i = a_i`
    pub double_neg_fixed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorNegationReport {
    pub n: usize,
    pub rows: Vec<GeneratorNegation>,
}

impl GeneratorNegationReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.neg_is_other_generators && r.double_neg_fixed)
    }
}

pub fn generator_negations(n: usize) -> Result<GeneratorNegationReport> {
    check_n(n)?;
    if n < 2 {
        return Err(Error::input("generator negations need n >= 2"));
    }
    let rows = (0..n)
        .map(|i| {
            let a = FreeElement::generator(n, i)?;
            let neg = free_neg(&a);
            let neg_neg = free_neg(&neg);
            let others = FreeElement::from_family(n, (0..n).filter(|&j| j != i).map(|j| 1u32 << j))?;
            Ok(GeneratorNegation {
                i,
                neg_is_other_generators: neg == others,
                double_neg_fixed: neg_neg == a,
                neg: neg.to_string(),
                neg_neg: neg_neg.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorNegationReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, s: &str) -> FreeElement {
        FreeElement::parse(n, s).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(FreeElement::top(2).unwrap().family(), &[0b01, 0b10]);
        assert_eq!(FreeElement::top(1).unwrap(), FreeElement::generator(1, 0).unwrap());
        assert!(FreeElement::bottom(3).unwrap().family().is_empty());
        assert!(FreeElement::generator(2, 2).is_err());
    }

    #[test]
    fn order_and_operations() {
        let a0 = el(2, "a0");
        let a1 = el(2, "a1");
        let p = el(2, "a0*a1");
        assert!(free_leq(&p, &a0).unwrap());
        assert!(!free_leq(&a0, &a1).unwrap());
        assert!(free_leq(&FreeElement::bottom(2).unwrap(), &a1).unwrap());
        assert!(free_join(&a0, &a1).unwrap().is_top());
        assert_eq!(free_meet(&a0, &a1).unwrap(), p);
        assert_eq!(free_join(&a0, &p).unwrap(), a0);
        assert!(free_leq(&a0, &el(3, "a0")).is_err());
    }

    #[test]
    fn implication() {
        for x in free_enumerate(3).unwrap() {
            assert!(free_imp(&x, &x).unwrap().is_bottom());
            assert_eq!(free_imp(&FreeElement::bottom(3).unwrap(), &x).unwrap(), x);
        }
        assert_eq!(free_neg(&el(2, "a0")), el(2, "a1"));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| free_enumerate(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 5, 19, 167]);
        assert!(free_enumerate(6).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let e = free_enumerate(4).unwrap();
        for w in e.windows(2) {
            assert_eq!(cmp_family(&w[0].family, &w[1].family), Ordering::Less);
        }
        // normal-form uniqueness: no two distinct forms are mutually below each other
        for x in &e {
            for y in &e {
                if x != y {
                    assert!(!(free_leq(x, y).unwrap() && free_leq(y, x).unwrap()));
                }
            }
        }
    }

    #[test]
    fn render_and_parse() {
        for n in 1..=3 {
            for x in free_enumerate(n).unwrap() {
                assert_eq!(FreeElement::parse(n, &x.to_string()).unwrap(), x, "{x}");
            }
        }
        assert_eq!(el(3, "a2 + a1*a0").to_string(), "a0*a1 + a2");
        assert_eq!(el(3, "a0 + a0*a1").to_string(), "a0");
        assert!(FreeElement::parse(2, "a3").is_err());
        assert!(FreeElement::parse(2, "b0").is_err());
    }

    #[test]
    fn iso_small() {
        for n in 1..=3 {
            let r = iso_to_bn(n).unwrap();
            assert!(r.is_verified(), "n = {n}: {:?}", r.homomorphism);
            assert!(r.search_witness.is_some());
        }
        let r = iso_to_bn(1).unwrap();
        let b = bn(1).unwrap();
        let f = free_algebra(1).unwrap();
        let a0 = f.index_of(&FreeElement::generator(1, 0).unwrap()).unwrap();
        assert_eq!(r.map.apply(a0), b.top());
    }

    #[test]
    fn irreducibles_of_free_algebra() {
        for n in 1..=4 {
            let f = free_algebra(n).unwrap();
            let irr = f.algebra.irreducibles();
            let mut gen_joins: Vec<usize> = (0..1u32 << n)
                .map(|set| {
                    let x = FreeElement::from_family(n, ones(set as u64).map(|j| 1u32 << j)).unwrap();
                    f.index_of(&x).unwrap()
                })
                .collect();
            gen_joins.sort_unstable();
            gen_joins.dedup();
            assert_eq!(irr.meet_irreducibles, gen_joins, "n = {n}");
            let mut products: Vec<usize> =
                (1..1u32 << n).map(|set| f.index_of(&FreeElement::product(n, set).unwrap()).unwrap()).collect();
            products.sort_unstable();
            assert_eq!(irr.join_irreducibles_nonzero(), products, "n = {n}");
        }
    }

    #[test]
    fn independence() {
        assert!(!independence_check(2, 0, 0b10).unwrap());
        assert!(!independence_check(3, 0, 0b110).unwrap());
        assert!(!independence_check(3, 0, 0).unwrap());
        assert!(independence_check(3, 0, 0b011).is_err());
    }

    #[test]
    fn negations_of_generators() {
        for n in 2..=4 {
            assert!(generator_negations(n).unwrap().all_hold());
        }
        let r = generator_negations(3).unwrap();
        assert_eq!(r.rows[0].neg, "a1 + a2");
        assert!(generator_negations(1).is_err());
    }
}
