//! Intervals, principal-filter factors and the `u ↦ u + a` map.

use serde::Serialize;

use super::morphism::{is_b_homomorphism, is_isomorphic, AlgebraMap, HomViolation};
use super::validate::min_scan;
use super::BrouwerAlgebra;
use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Quotient of an algebra by the principal filter `[a)`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub algebra: BrouwerAlgebra,
    /// Class index of every element of the parent algebra.
    pub quotient: Vec<usize>,
    /// Every element collapsed into one class (`a` was the bottom).
    pub degenerate: bool,
    /// Whether the parent's `→` respects the classes, i.e. `[b → c]` is the
    /// factor's `[b] → [c]` for all `b, c`. It need not: in the 3-chain
    /// modulo `[c1)`, `c1 ~ c2` but `c1 → c2 = c2` and `c2 → c2 = c0`.
    pub imp_compatible: bool,
    /// An isomorphism onto `interval(bottom, a)`.
    pub iso_to_interval: Option<AlgebraMap>,
}

/// `u ↦ u + a` from `[bottom, c]` to `[a, c + a]`.
#[derive(Debug, Clone)]
pub struct PlusMap {
    pub source: BrouwerAlgebra,
    pub target: BrouwerAlgebra,
    pub map: AlgebraMap,
    pub surjective: bool,
}

impl PlusMap {
    pub fn check_homomorphism(&self) -> std::result::Result<(), HomViolation> {
        is_b_homomorphism(&self.source, &self.target, &self.map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
enum Slot {
    Join,
    Meet,
}

impl BrouwerAlgebra {
    /// Elements `x` with `a <= x <= b`, ascending.
    pub fn interval_carrier(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check_element(a)?;
        self.check_element(b)?;
        if !self.leq(a, b) {
            return Err(Error::input(format!(
                "interval bounds {} and {} are not ordered",
                self.label(a),
                self.label(b)
            )));
        }
        Ok((0..self.size()).filter(|&x| self.leq(a, x) && self.leq(x, b)).collect())
    }

    /// The interval `[a, b]` with inherited `+`, `×` and `u → v := (u → v) + a`.
    pub fn interval(&self, a: usize, b: usize) -> Result<BrouwerAlgebra> {
        let carrier = self.interval_carrier(a, b)?;
        let k = carrier.len();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in carrier.iter().enumerate() {
            pos[x] = i;
        }
        let le = BitMatrix::from_fn(k, |i, j| self.leq(carrier[i], carrier[j]));
        let mut join = Vec::with_capacity(k * k);
        let mut meet = Vec::with_capacity(k * k);
        let mut imp = Vec::with_capacity(k * k);
        for &u in &carrier {
            for &v in &carrier {
                join.push(pos[self.join(u, v)] as u16);
                meet.push(pos[self.meet(u, v)] as u16);
                imp.push(pos[self.join(self.imp(u, v), a)] as u16);
            }
        }
        debug_assert!(join.iter().chain(&meet).chain(&imp).all(|&x| (x as usize) < k));
        let labels = carrier.iter().map(|&x| self.label(x).to_string()).collect();
        Ok(BrouwerAlgebra::from_packed(
            le,
            join,
            meet,
            imp,
            pos[a],
            pos[b],
            labels,
            format!("interval:{},{},{}", self.provenance(), self.label(a), self.label(b)),
            None,
        ))
    }

    /// Quotient by the principal filter `[a)`: `b <= c` in the factor iff
    /// `b × d <= c` for some `d >= a`. Join and meet pass to classes through
    /// representatives; implication is the residual of the quotient order.
    pub fn factor_by_principal_filter(&self, a: usize) -> Result<Factor> {
        self.check_element(a)?;
        let m = self.size();
        let filter: Vec<usize> = self.up_set_of(a).collect();
        let pre = BitMatrix::from_fn(m, |b, c| filter.iter().any(|&d| self.leq(self.meet(b, d), c)));

        let mut class = vec![usize::MAX; m];
        let mut reps: Vec<usize> = Vec::new();
        for b in 0..m {
            if class[b] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(b);
            for (c, slot) in class.iter_mut().enumerate().skip(b) {
                if pre.get(b, c) && pre.get(c, b) {
                    *slot = id;
                }
            }
        }
        let k = reps.len();

        // join and meet must be compatible with the classes
        let mut join = vec![u16::MAX; k * k];
        let mut meet = vec![u16::MAX; k * k];
        for b in 0..m {
            for c in 0..m {
                for (slot, table, value) in
                    [(Slot::Join, &mut join, class[self.join(b, c)]), (Slot::Meet, &mut meet, class[self.meet(b, c)])]
                {
                    let cell = &mut table[class[b] * k + class[c]];
                    if *cell == u16::MAX {
                        *cell = value as u16;
                    } else if *cell as usize != value {
                        return Err(Error::Precondition(format!(
                            "{slot:?} is not compatible with the factor classes at ({b}, {c})"
                        )));
                    }
                }
            }
        }
        let le = BitMatrix::from_fn(k, |i, j| pre.get(reps[i], reps[j]));
        let mut imp = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let r = min_scan(&le, k, |x| le.get(j, join[i * k + x] as usize))
                    .ok_or_else(|| Error::Precondition(format!("factor implication {i} -> {j} does not exist")))?;
                imp.push(r as u16);
            }
        }
        let imp_compatible =
            (0..m).all(|b| (0..m).all(|c| class[self.imp(b, c)] == imp[class[b] * k + class[c]] as usize));
        let labels = reps.iter().map(|&x| format!("[{}]", self.label(x))).collect();
        let algebra = BrouwerAlgebra::from_packed(
            le,
            join,
            meet,
            imp,
            class[self.bottom()],
            class[self.top()],
            labels,
            format!("factor:{},{}", self.provenance(), self.label(a)),
            None,
        );
        let interval = self.interval(self.bottom(), a)?;
        let iso_to_interval = is_isomorphic(&algebra, &interval);
        Ok(Factor { degenerate: k == 1, algebra, quotient: class, imp_compatible, iso_to_interval })
    }

    /// `u ↦ u + a` from `[bottom, c]` onto `[a, c + a]`.
    pub fn plus_a_map(&self, a: usize, c: usize) -> Result<PlusMap> {
        self.check_element(a)?;
        self.check_element(c)?;
        let b = self.join(c, a);
        let source_carrier = self.interval_carrier(self.bottom(), c)?;
        let target_carrier = self.interval_carrier(a, b)?;
        let source = self.interval(self.bottom(), c)?;
        let target = self.interval(a, b)?;
        let image = source_carrier
            .iter()
            .map(|&u| {
                let v = self.join(u, a);
                target_carrier.binary_search(&v).expect("u + a lies in [a, c + a]")
            })
            .collect();
        let map = AlgebraMap::new(&source, &target, image);
        let surjective = map.is_surjective_onto(target.size());
        Ok(PlusMap { source, target, map, surjective })
    }
}
