//! Posets up to isomorphism.
//!
//! A poset's canonical form is the lexicographically least row-major relation
//! matrix among all relabelings that list elements by increasing
//! `(|down-set|, |up-set|)`. That signature is isomorphism-invariant, so two
//! posets share a canonical form iff they are isomorphic.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{bit, numeric_labels, open_sets, Poset};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_SIZE: usize = 7;

/// Canonical relation matrix: entry `(i, j)` lives at bit `63 - (i*n + j)`,
/// so smaller codes are lexicographically smaller matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
}

impl CanonicalForm {
    pub fn to_poset(&self) -> Poset {
        let n = self.n;
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| self.code >> (63 - (i * n + j)) & 1 == 1).fold(0u64, |acc, j| acc | bit(j)))
            .collect();
        Poset::from_up_unchecked(format!("P{}:{:x}", n, self.code), numeric_labels(n), up)
    }
}

fn code_of(p: &Poset, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for (i, &x) in perm.iter().enumerate() {
        for (j, &y) in perm.iter().enumerate() {
            if p.leq(x, y) {
                code |= 1u64 << (63 - (i * n + j));
            }
        }
    }
    code
}

/// Canonical form; posets larger than 8 elements do not fit the code.
pub fn canonical_form(p: &Poset) -> CanonicalForm {
    let n = p.size();
    assert!(n <= 8, "canonical form supports at most 8 elements");
    let key = |x: usize| (p.down_mask(x).count_ones(), p.up_mask(x).count_ones());
    let mut elems: Vec<usize> = (0..n).collect();
    elems.sort_by_key(|&x| key(x));
    // block[i] = index of the first position sharing position i's signature
    let mut block_start = vec![0usize; n];
    for i in 1..n {
        block_start[i] = if key(elems[i]) == key(elems[i - 1]) { block_start[i - 1] } else { i };
    }
    let mut block_end = vec![n; n];
    for i in (0..n.saturating_sub(1)).rev() {
        block_end[i] = if block_start[i + 1] == block_start[i] { block_end[i + 1] } else { i + 1 };
    }

    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u64;
    fn go(
        p: &Poset,
        elems: &[usize],
        starts: &[usize],
        ends: &[usize],
        perm: &mut Vec<usize>,
        used: &mut u64,
        best: &mut u64,
    ) {
        let pos = perm.len();
        if pos == elems.len() {
            *best = (*best).min(code_of(p, perm));
            return;
        }
        for &x in &elems[starts[pos]..ends[pos]] {
            if *used & bit(x) == 0 {
                *used |= bit(x);
                perm.push(x);
                go(p, elems, starts, ends, perm, used, best);
                perm.pop();
                *used &= !bit(x);
            }
        }
    }
    if n == 0 {
        best = 0;
    } else {
        go(p, &elems, &block_start, &block_end, &mut perm, &mut used, &mut best);
    }
    CanonicalForm { n, code: best }
}

pub fn canonicalize(p: &Poset) -> Poset {
    canonical_form(p).to_poset()
}

/// One representative per isomorphism class of `n`-element posets, sorted
/// by canonical form.
///
/// Every `n`-poset arises from an `(n-1)`-poset by adding a new maximal
/// element above some down-set, so classes are grown one level at a time.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 {
        return Err(Error::input("poset enumeration needs n >= 1"));
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::resource(format!("enumeration of {n}-element posets"), MAX_ENUMERATION_SIZE as u64));
    }
    let mut level: Vec<CanonicalForm> = vec![canonical_form(&Poset::chain(1)?)];
    for size in 2..=n {
        let next: BTreeSet<CanonicalForm> = level
            .par_iter()
            .map(|form| extensions(&form.to_poset()))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        debug_assert!(next.iter().all(|f| f.n == size));
        level = next.into_iter().collect();
    }
    Ok(level.iter().map(CanonicalForm::to_poset).collect())
}

fn extensions(p: &Poset) -> Vec<CanonicalForm> {
    let n = p.size();
    let carrier = p.carrier_mask();
    let opens = open_sets(p).expect("enumeration sizes are under the open-set cap");
    opens
        .iter()
        .map(|u| {
            let below = carrier & !u.bits();
            let mut up: Vec<u64> =
                (0..n).map(|x| if below & bit(x) != 0 { p.up_mask(x) | bit(n) } else { p.up_mask(x) }).collect();
            up.push(bit(n));
            canonical_form(&Poset::from_up_unchecked(String::new(), numeric_labels(n + 1), up))
        })
        .collect()
}
