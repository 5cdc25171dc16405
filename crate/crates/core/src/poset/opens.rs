//! Enumeration of the open (up-closed) subsets of a poset.

use rayon::prelude::*;

use super::{bit, full_mask, Poset, UpSet};
use crate::error::{Error, Result};

/// Posets up to this size are handled by filtering every subset.
pub const FILTER_THRESHOLD: usize = 20;

#[derive(Debug, Clone, Copy)]
pub struct OpenSetLimits {
    pub max_poset_size: usize,
}

impl Default for OpenSetLimits {
    fn default() -> Self {
        OpenSetLimits { max_poset_size: 20 }
    }
}

/// All open subsets of `p` under the default size cap.
pub fn open_sets(p: &Poset) -> Result<Vec<UpSet>> {
    open_sets_with(p, OpenSetLimits::default())
}

/// All open subsets, sorted by decreasing membership vector: the whole
/// carrier comes first and `∅` last.
pub fn open_sets_with(p: &Poset, limits: OpenSetLimits) -> Result<Vec<UpSet>> {
    let n = p.size();
    if n > limits.max_poset_size {
        return Err(Error::resource(
            format!("open-set enumeration of a {n}-element poset"),
            limits.max_poset_size as u64,
        ));
    }
    let mut masks = if n <= FILTER_THRESHOLD { filter_subsets(p) } else { branch_opens(p) };
    masks.sort_unstable_by_key(|&m| std::cmp::Reverse(UpSet::vector_key(m, n)));
    Ok(masks.into_iter().map(|bits| UpSet { bits, size: n }).collect())
}

fn filter_subsets(p: &Poset) -> Vec<u64> {
    let n = p.size();
    let total = 1u64 << n;
    if total >= 1 << 14 {
        (0..total).into_par_iter().filter(|&m| p.is_up_closed(m)).collect()
    } else {
        (0..total).filter(|&m| p.is_up_closed(m)).collect()
    }
}

/// Decide elements from the top down; an element may join the set only when
/// everything strictly above it already has, so every leaf is an up-set.
pub(crate) fn branch_opens(p: &Poset) -> Vec<u64> {
    let n = p.size();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(p.down_mask(x).count_ones()));
    let mut out = Vec::new();
    fn go(p: &Poset, order: &[usize], k: usize, cur: u64, out: &mut Vec<u64>) {
        if k == order.len() {
            out.push(cur);
            return;
        }
        let x = order[k];
        go(p, order, k + 1, cur, out);
        if p.up_mask(x) & !bit(x) & !cur == 0 {
            go(p, order, k + 1, cur | bit(x), out);
        }
    }
    go(p, &order, 0, 0, &mut out);
    debug_assert!(out.iter().all(|&m| m & !full_mask(n) == 0));
    out
}
