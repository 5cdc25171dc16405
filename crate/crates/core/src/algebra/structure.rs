//! Covers, irreducible elements, decompositions and generated subalgebras.

use std::sync::Arc;

use serde::Serialize;

use super::BrouwerAlgebra;
use crate::bits::iter_ones;
use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct Covers {
    pub upper: Vec<Vec<usize>>,
    pub lower: Vec<Vec<usize>>,
}

/// Irreducible elements under the strict rule: `x` is join-reducible iff
/// `x = b + c` for some `b, c < x`, dually for meets. Under that rule the
/// bottom is always join-irreducible and the top always meet-irreducible;
/// the lattice-theory convention (`0 = ⋁∅` reducible) is available through
/// [`Irreducibles::join_irreducibles_nonzero`] and its dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducibles {
    pub meet_irreducibles: Vec<usize>,
    pub join_irreducibles: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl Irreducibles {
    pub fn join_irreducibles_nonzero(&self) -> Vec<usize> {
        self.join_irreducibles.iter().copied().filter(|&x| x != self.bottom).collect()
    }

    pub fn meet_irreducibles_proper(&self) -> Vec<usize> {
        self.meet_irreducibles.iter().copied().filter(|&x| x != self.top).collect()
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.meet_irreducibles.binary_search(&x).is_ok()
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.join_irreducibles.binary_search(&x).is_ok()
    }
}

/// Operations used to close a seed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ops {
    pub join: bool,
    pub meet: bool,
    pub neg: bool,
    pub imp: bool,
}

impl Ops {
    pub const ALL: Ops = Ops { join: true, meet: true, neg: true, imp: true };
    pub const LATTICE_NEG: Ops = Ops { join: true, meet: true, neg: true, imp: false };
}

impl BrouwerAlgebra {
    pub(crate) fn covers(&self) -> Arc<Covers> {
        Arc::clone(self.covers.get_or_init(|| {
            let m = self.size();
            let ge = self.reverse_order();
            let mut upper = vec![Vec::new(); m];
            let mut lower = vec![Vec::new(); m];
            for x in 0..m {
                let strict_up: Vec<u64> = {
                    let mut r = self.order().row(x).to_vec();
                    r[x / 64] &= !(1 << (x % 64));
                    r
                };
                for y in iter_ones(&strict_up) {
                    // y covers x iff nothing strictly above x is strictly below y
                    let between = strict_up.iter().zip(ge.row(y)).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
                    if between == 1 {
                        upper[x].push(y);
                        lower[y].push(x);
                    }
                }
            }
            Arc::new(Covers { upper, lower })
        }))
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.covers().upper[x].clone()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.covers().lower[x].clone()
    }

    /// In a lattice `x` is join-reducible exactly when it has two or more
    /// lower covers (their join is then `x`); dually for meets.
    pub fn irreducibles(&self) -> Irreducibles {
        let c = self.covers();
        let m = self.size();
        Irreducibles {
            meet_irreducibles: (0..m).filter(|&x| c.upper[x].len() <= 1).collect(),
            join_irreducibles: (0..m).filter(|&x| c.lower[x].len() <= 1).collect(),
            bottom: self.bottom(),
            top: self.top(),
        }
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.covers().upper[x].len() <= 1
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.covers().lower[x].len() <= 1
    }

    /// The antichain of meet-irreducibles whose meet is `x`: the minimal
    /// meet-irreducible elements above `x`.
    pub fn meet_irreducible_decomposition(&self, x: usize) -> Result<Vec<usize>> {
        self.check_element(x)?;
        if !self.is_distributive() {
            return Err(Error::Precondition(format!("{} is not distributive", self.provenance())));
        }
        let above: Vec<usize> = self.up_set_of(x).filter(|&y| self.is_meet_irreducible(y)).collect();
        let minimal: Vec<usize> =
            above.iter().copied().filter(|&y| !above.iter().any(|&z| z != y && self.leq(z, y))).collect();
        let product = minimal.iter().fold(self.top(), |acc, &y| self.meet(acc, y));
        if product != x {
            return Err(Error::Precondition(format!("element {x} is not the meet of the meet-irreducibles above it")));
        }
        Ok(minimal)
    }

    /// The antichain of minimal points of the open set `mask`, for
    /// poset-built algebras; `[antichain) = mask`.
    pub fn open_antichain_representation(&self, mask: u64) -> Result<Vec<usize>> {
        let origin = self
            .origin()
            .ok_or_else(|| Error::Precondition(format!("{} was not built from a poset", self.provenance())))?;
        let open = origin.poset.up_set(mask)?;
        Ok(crate::bits::ones(origin.poset.minimal_in(open.bits())).collect())
    }

    /// The element `[antichain)` of a poset-built algebra.
    pub fn open_from_antichain(&self, antichain: &[usize]) -> Result<usize> {
        let origin = self
            .origin()
            .ok_or_else(|| Error::Precondition(format!("{} was not built from a poset", self.provenance())))?;
        let u = origin.poset.up_closure(antichain)?;
        self.element_of_open(u.bits())
    }

    /// First element whose negation is meet-reducible, if any.
    pub fn negation_witness(&self) -> Option<usize> {
        (0..self.size()).find(|&x| !self.is_meet_irreducible(self.neg(x)))
    }

    pub fn all_negations_meet_irreducible(&self) -> bool {
        self.negation_witness().is_none()
    }

    /// Closure of `seeds ∪ {bottom, top}` under the selected operations,
    /// ascending.
    pub fn generated_subalgebra(&self, seeds: &[usize], ops: Ops) -> Result<Vec<usize>> {
        if seeds.is_empty() {
            return Err(Error::input("generated subalgebra needs at least one seed"));
        }
        let m = self.size();
        let mut member = vec![false; m];
        let mut elems = Vec::new();
        let add = |x: usize, member: &mut Vec<bool>, elems: &mut Vec<usize>| {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        };
        for &s in seeds {
            add(self.check_element(s)?, &mut member, &mut elems);
        }
        add(self.bottom(), &mut member, &mut elems);
        add(self.top(), &mut member, &mut elems);
        // elems[..done] have been combined with each other already
        let mut done = 0;
        while done < elems.len() {
            let x = elems[done];
            if ops.neg {
                add(self.neg(x), &mut member, &mut elems);
            }
            for k in 0..=done {
                let y = elems[k];
                if ops.join {
                    add(self.join(x, y), &mut member, &mut elems);
                }
                if ops.meet {
                    add(self.meet(x, y), &mut member, &mut elems);
                }
                if ops.imp {
                    add(self.imp(x, y), &mut member, &mut elems);
                    add(self.imp(y, x), &mut member, &mut elems);
                }
            }
            done += 1;
        }
        elems.sort_unstable();
        Ok(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bn;
    use crate::poset::Poset;

    /// Strict definition, straight from the quantifiers.
    fn brute_join_reducible(a: &BrouwerAlgebra, x: usize) -> bool {
        let m = a.size();
        (0..m).any(|b| (0..m).any(|c| b != x && c != x && a.leq(b, x) && a.leq(c, x) && a.join(b, c) == x))
    }

    fn brute_meet_reducible(a: &BrouwerAlgebra, x: usize) -> bool {
        let m = a.size();
        (0..m).any(|b| (0..m).any(|c| b != x && c != x && a.leq(x, b) && a.leq(x, c) && a.meet(b, c) == x))
    }

    #[test]
    fn cover_rule_matches_strict_definition() {
        for n in 1..=4 {
            for p in crate::poset::enumerate_posets(n).unwrap() {
                let a = BrouwerAlgebra::from_poset(&p).unwrap();
                let irr = a.irreducibles();
                for x in 0..a.size() {
                    assert_eq!(irr.is_join_irreducible(x), !brute_join_reducible(&a, x));
                    assert_eq!(irr.is_meet_irreducible(x), !brute_meet_reducible(&a, x));
                }
            }
        }
    }

    #[test]
    fn chain_elements_all_irreducible() {
        let c = BrouwerAlgebra::chain(3).unwrap();
        let irr = c.irreducibles();
        assert_eq!(irr.meet_irreducibles, vec![0, 1, 2]);
        assert_eq!(irr.join_irreducibles, vec![0, 1, 2]);
    }

    #[test]
    fn b2_irreducibles() {
        let a = bn(2).unwrap();
        let e = |l: &str| a.resolve_element(l).unwrap();
        let irr = a.irreducibles();
        let mut expect = vec![a.bottom(), e("{0}"), e("{1}"), a.top()];
        expect.sort();
        assert_eq!(irr.meet_irreducibles, expect);
        assert!(!irr.is_meet_irreducible(e("{0,1}")));
        assert!(irr.is_join_irreducible(e("{0,1}")));
        assert_eq!(irr.join_irreducibles_nonzero().len(), irr.join_irreducibles.len() - 1);
    }

    #[test]
    fn decompositions() {
        let a = bn(2).unwrap();
        let e = |l: &str| a.resolve_element(l).unwrap();
        assert_eq!(a.meet_irreducible_decomposition(a.top()).unwrap(), vec![a.top()]);
        let mut d = a.meet_irreducible_decomposition(e("{0,1}")).unwrap();
        d.sort();
        let mut expect = vec![e("{0}"), e("{1}")];
        expect.sort();
        assert_eq!(d, expect);
        let c = BrouwerAlgebra::chain(3).unwrap();
        assert_eq!(c.meet_irreducible_decomposition(1).unwrap(), vec![1]);
    }

    /// Every antichain of meet-irreducibles, by brute force.
    fn antichains_with_meet(a: &BrouwerAlgebra, x: usize) -> Vec<Vec<usize>> {
        let irr = a.irreducibles().meet_irreducibles;
        let k = irr.len();
        let mut out = Vec::new();
        for s in 1u64..(1 << k) {
            let set: Vec<usize> = (0..k).filter(|&i| s >> i & 1 == 1).map(|i| irr[i]).collect();
            let anti = set.iter().all(|&p| set.iter().all(|&q| p == q || !a.leq(p, q)));
            if anti && set.iter().fold(a.top(), |acc, &y| a.meet(acc, y)) == x {
                out.push(set);
            }
        }
        out
    }

    #[test]
    fn decomposition_is_unique() {
        let mut algebras: Vec<BrouwerAlgebra> = vec![(*bn(2).unwrap()).clone(), (*bn(3).unwrap()).clone()];
        for p in crate::poset::enumerate_posets(4).unwrap() {
            algebras.push(BrouwerAlgebra::from_poset(&p).unwrap());
        }
        for a in algebras.iter().filter(|a| a.size() <= 19) {
            for x in 0..a.size() {
                let all = antichains_with_meet(a, x);
                assert_eq!(all.len(), 1, "{a:?} element {x}: {all:?}");
                let mut d = a.meet_irreducible_decomposition(x).unwrap();
                d.sort();
                assert_eq!(d, all[0]);
            }
        }
    }

    #[test]
    fn open_representations() {
        let b3 = bn(3).unwrap();
        let p = &b3.origin().unwrap().poset;
        let idx = |l: &str| p.labels().iter().position(|s| s == l).unwrap();
        let whole = p.carrier_mask();
        assert_eq!(b3.open_antichain_representation(whole).unwrap(), p.minimal_elements());
        let singles = (1u64 << idx("0")) | (1 << idx("1"));
        let mut rep = b3.open_antichain_representation(singles).unwrap();
        rep.sort();
        let mut expect = vec![idx("0"), idx("1")];
        expect.sort();
        assert_eq!(rep, expect);
        assert!(b3.open_antichain_representation(0).unwrap().is_empty());
        assert!(b3.open_antichain_representation(1 << idx("01")).is_err());
        for x in 0..b3.size() {
            let mask = b3.open_of(x).unwrap().bits();
            let rep = b3.open_antichain_representation(mask).unwrap();
            assert_eq!(b3.open_from_antichain(&rep).unwrap(), x);
        }
        assert!(BrouwerAlgebra::chain(3).unwrap().open_antichain_representation(0).is_err());
    }

    #[test]
    fn negation_irreducibility() {
        assert!(BrouwerAlgebra::two().all_negations_meet_irreducible());
        assert!(bn(2).unwrap().all_negations_meet_irreducible());
        // 2x2 Boolean algebra: ¬top is the bottom, the meet of the two atoms
        let b = BrouwerAlgebra::from_poset(&Poset::antichain(2).unwrap()).unwrap();
        assert_eq!(b.negation_witness(), Some(b.top()));
    }

    #[test]
    fn generated_subalgebras() {
        let two = BrouwerAlgebra::two();
        assert_eq!(two.generated_subalgebra(&[0], Ops::ALL).unwrap(), vec![0, 1]);
        let a = bn(2).unwrap();
        let e = |l: &str| a.resolve_element(l).unwrap();
        let mut expect = vec![a.bottom(), e("{0}"), e("{1}"), e("{0,1}"), a.top()];
        expect.sort();
        assert_eq!(a.generated_subalgebra(&[e("{0}")], Ops::LATTICE_NEG).unwrap(), expect);
        let all: Vec<usize> = (0..a.size()).collect();
        assert_eq!(a.generated_subalgebra(&all, Ops::ALL).unwrap(), all);
        assert!(a.generated_subalgebra(&[], Ops::ALL).is_err());
    }
}
