//! Structure-preserving maps between algebras.

use std::fmt;

use serde::Serialize;

use super::BrouwerAlgebra;

/// A total map on element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraMap {
    pub source: String,
    pub target: String,
    pub image: Vec<usize>,
}

impl AlgebraMap {
    pub fn new(source: &BrouwerAlgebra, target: &BrouwerAlgebra, image: Vec<usize>) -> Self {
        AlgebraMap { source: source.provenance().to_string(), target: target.provenance().to_string(), image }
    }

    pub fn identity(a: &BrouwerAlgebra) -> Self {
        Self::new(a, a, (0..a.size()).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.image.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_surjective_onto(&self, target_size: usize) -> bool {
        let mut hit = vec![false; target_size];
        for &y in &self.image {
            if y < target_size {
                hit[y] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub fn compose(&self, then: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            source: self.source.clone(),
            target: then.target.clone(),
            image: self.image.iter().map(|&y| then.image[y]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MapOp {
    Totality,
    Bottom,
    Top,
    Join,
    Meet,
    Imp,
}

/// The first operation and argument pair a map fails to preserve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub op: MapOp,
    pub args: Vec<usize>,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} not preserved at {:?}", self.op, self.args)
    }
}

/// Check that `map` preserves bottom, top, join, meet and implication on
/// every pair.
pub fn is_b_homomorphism(
    source: &BrouwerAlgebra,
    target: &BrouwerAlgebra,
    map: &AlgebraMap,
) -> Result<(), HomViolation> {
    let m = source.size();
    if map.image.len() != m {
        return Err(HomViolation { op: MapOp::Totality, args: vec![map.image.len()] });
    }
    if let Some(x) = map.image.iter().position(|&y| y >= target.size()) {
        return Err(HomViolation { op: MapOp::Totality, args: vec![x] });
    }
    let f = |x: usize| map.image[x];
    if f(source.bottom()) != target.bottom() {
        return Err(HomViolation { op: MapOp::Bottom, args: vec![source.bottom()] });
    }
    if f(source.top()) != target.top() {
        return Err(HomViolation { op: MapOp::Top, args: vec![source.top()] });
    }
    for a in 0..m {
        for b in 0..m {
            let checks = [
                (MapOp::Join, f(source.join(a, b)), target.join(f(a), f(b))),
                (MapOp::Meet, f(source.meet(a, b)), target.meet(f(a), f(b))),
                (MapOp::Imp, f(source.imp(a, b)), target.imp(f(a), f(b))),
            ];
            for (op, lhs, rhs) in checks {
                if lhs != rhs {
                    return Err(HomViolation { op, args: vec![a, b] });
                }
            }
        }
    }
    Ok(())
}

/// Per-element invariant used to prune candidate images.
fn fingerprint(a: &BrouwerAlgebra, x: usize, jis: &[usize]) -> (usize, usize, usize, usize) {
    let below_ji = jis.iter().filter(|&&j| a.leq(j, x)).count();
    let above_ji = jis.iter().filter(|&&j| a.leq(x, j)).count();
    (below_ji, above_ji, a.reverse_order().row_count(x), a.order().row_count(x))
}

/// A bijective B-homomorphism `a1 → a2`, if one exists.
///
/// Both algebras are distributive, so a lattice isomorphism is determined by
/// an order isomorphism between the nonzero join-irreducibles; candidates are
/// found by backtracking over those and extended by joins. Every candidate
/// is checked on all operations, including implication, before it is returned.
pub fn is_isomorphic(a1: &BrouwerAlgebra, a2: &BrouwerAlgebra) -> Option<AlgebraMap> {
    if a1.size() != a2.size() {
        return None;
    }
    let j1 = a1.irreducibles().join_irreducibles_nonzero();
    let j2 = a2.irreducibles().join_irreducibles_nonzero();
    if j1.len() != j2.len() {
        return None;
    }
    let f1: Vec<_> = j1.iter().map(|&x| fingerprint(a1, x, &j1)).collect();
    let f2: Vec<_> = j2.iter().map(|&x| fingerprint(a2, x, &j2)).collect();
    {
        let mut s1 = f1.clone();
        let mut s2 = f2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
    }
    // assign the rarest fingerprints first
    let mut order: Vec<usize> = (0..j1.len()).collect();
    order.sort_by_key(|&i| (f1.iter().filter(|&&f| f == f1[i]).count(), i));

    struct Search<'a> {
        a1: &'a BrouwerAlgebra,
        a2: &'a BrouwerAlgebra,
        j1: &'a [usize],
        j2: &'a [usize],
        f1: &'a [(usize, usize, usize, usize)],
        f2: &'a [(usize, usize, usize, usize)],
        order: &'a [usize],
        assign: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, k: usize) -> Option<AlgebraMap> {
            if k == self.order.len() {
                return self.extend();
            }
            let i = self.order[k];
            for t in 0..self.j2.len() {
                if self.used[t] || self.f2[t] != self.f1[i] {
                    continue;
                }
                let consistent = self.order[..k].iter().all(|&p| {
                    let q = self.assign[p].expect("assigned");
                    self.a1.leq(self.j1[p], self.j1[i]) == self.a2.leq(self.j2[q], self.j2[t])
                        && self.a1.leq(self.j1[i], self.j1[p]) == self.a2.leq(self.j2[t], self.j2[q])
                });
                if !consistent {
                    continue;
                }
                self.assign[i] = Some(t);
                self.used[t] = true;
                if let Some(found) = self.go(k + 1) {
                    return Some(found);
                }
                self.used[t] = false;
                self.assign[i] = None;
            }
            None
        }

        fn extend(&self) -> Option<AlgebraMap> {
            let image: Vec<usize> = (0..self.a1.size())
                .map(|x| {
                    self.j1
                        .iter()
                        .enumerate()
                        .filter(|&(_, &j)| self.a1.leq(j, x))
                        .fold(self.a2.bottom(), |acc, (i, _)| {
                            self.a2.join(acc, self.j2[self.assign[i].expect("complete")])
                        })
                })
                .collect();
            let map = AlgebraMap::new(self.a1, self.a2, image);
            if map.is_injective() && is_b_homomorphism(self.a1, self.a2, &map).is_ok() {
                Some(map)
            } else {
                None
            }
        }
    }

    let mut search = Search {
        a1,
        a2,
        j1: &j1,
        j2: &j2,
        f1: &f1,
        f2: &f2,
        order: &order,
        assign: vec![None; j1.len()],
        used: vec![false; j2.len()],
    };
    search.go(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bn;
    use crate::poset::Poset;

    #[test]
    fn identity_and_constant() {
        let a = bn(2).unwrap();
        assert!(is_b_homomorphism(&a, &a, &AlgebraMap::identity(&a)).is_ok());
        let constant = AlgebraMap::new(&a, &a, vec![a.bottom(); a.size()]);
        let err = is_b_homomorphism(&a, &a, &constant).unwrap_err();
        assert_eq!(err.op, MapOp::Top);
        let short = AlgebraMap::new(&a, &a, vec![0]);
        assert_eq!(is_b_homomorphism(&a, &a, &short).unwrap_err().op, MapOp::Totality);
    }

    #[test]
    fn iso_search() {
        let a = bn(2).unwrap();
        let found = is_isomorphic(&a, &a).unwrap();
        assert!(is_b_homomorphism(&a, &a, &found).is_ok());
        assert!(is_isomorphic(&a, &crate::algebra::BrouwerAlgebra::chain(5).unwrap()).is_none());
        // same size, different shape
        let b3 = bn(3).unwrap();
        let other = crate::algebra::BrouwerAlgebra::from_poset(&Poset::chain(18).unwrap()).unwrap();
        assert_eq!(other.size(), 19);
        assert!(is_isomorphic(&b3, &other).is_none());
    }

    #[test]
    fn relabelled_copy_is_found() {
        // B(fork) built from a differently ordered fork
        let a = crate::algebra::BrouwerAlgebra::from_poset(&Poset::fork()).unwrap();
        let p = Poset::from_pairs("v", vec!["x".into(), "y".into(), "z".into()], [(2, 0), (2, 1)]).unwrap();
        let b = crate::algebra::BrouwerAlgebra::from_poset(&p).unwrap();
        let f = is_isomorphic(&a, &b).unwrap();
        assert!(f.is_injective() && f.is_surjective_onto(b.size()));
    }
}
