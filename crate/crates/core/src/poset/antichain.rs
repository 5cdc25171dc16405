//! Largest antichains of an arbitrary finite order via Dilworth/König:
//! the width equals `m` minus a maximum matching in the comparability
//! bipartite graph.

use crate::bits::{iter_ones, BitMatrix};
use crate::error::{Error, Result};

fn check_order(le: &BitMatrix) -> Result<()> {
    let m = le.dim();
    for x in 0..m {
        if !le.get(x, x) {
            return Err(Error::input(format!("order is not reflexive at {x}")));
        }
        for y in iter_ones(le.row(x)) {
            if y != x && le.get(y, x) {
                return Err(Error::input(format!("order is not antisymmetric at ({x}, {y})")));
            }
            let row_x = le.row(x);
            if le.row(y).iter().zip(row_x).any(|(ry, rx)| ry & !rx != 0) {
                return Err(Error::input(format!("order is not transitive through ({x}, {y})")));
            }
        }
    }
    Ok(())
}

pub fn max_antichain_size(le: &BitMatrix) -> Result<usize> {
    Ok(max_antichain(le)?.len())
}

/// A maximum antichain, ascending.
pub fn max_antichain(le: &BitMatrix) -> Result<Vec<usize>> {
    check_order(le)?;
    let m = le.dim();
    let succ: Vec<Vec<usize>> = (0..m).map(|x| iter_ones(le.row(x)).filter(|&y| y != x).collect()).collect();

    // Kuhn's augmenting paths: match_r[y] = left partner of right copy y.
    let mut match_r: Vec<Option<usize>> = vec![None; m];
    let mut match_l: Vec<Option<usize>> = vec![None; m];
    for x in 0..m {
        let mut seen = vec![false; m];
        augment(x, &succ, &mut seen, &mut match_l, &mut match_r);
    }

    // König: Z = vertices reachable from free left vertices by alternating paths.
    let mut z_left = vec![false; m];
    let mut z_right = vec![false; m];
    let mut stack: Vec<usize> = (0..m).filter(|&x| match_l[x].is_none()).collect();
    for &x in &stack {
        z_left[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in &succ[x] {
            if !z_right[y] {
                z_right[y] = true;
                if let Some(x2) = match_r[y] {
                    if !z_left[x2] {
                        z_left[x2] = true;
                        stack.push(x2);
                    }
                }
            }
        }
    }
    // cover = (L \ Z) ∪ (R ∩ Z); the antichain avoids the cover on both sides
    let antichain: Vec<usize> = (0..m).filter(|&x| z_left[x] && !z_right[x]).collect();
    let matching = match_l.iter().filter(|p| p.is_some()).count();
    debug_assert_eq!(antichain.len(), m - matching);
    Ok(antichain)
}

fn augment(
    x: usize,
    succ: &[Vec<usize>],
    seen: &mut [bool],
    match_l: &mut [Option<usize>],
    match_r: &mut [Option<usize>],
) -> bool {
    for &y in &succ[x] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        let free = match match_r[y] {
            None => true,
            Some(x2) => augment(x2, succ, seen, match_l, match_r),
        };
        if free {
            match_r[y] = Some(x);
            match_l[x] = Some(y);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{powerset_poset, Poset};

    fn order_of(p: &Poset) -> BitMatrix {
        BitMatrix::from_fn(p.size(), |i, j| p.leq(i, j))
    }

    fn brute_width(le: &BitMatrix) -> usize {
        let m = le.dim();
        (0u64..1 << m)
            .filter(|&s| {
                let xs: Vec<usize> = (0..m).filter(|&i| s >> i & 1 == 1).collect();
                xs.iter().all(|&a| xs.iter().all(|&b| a == b || !le.get(a, b)))
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn named_widths() {
        assert_eq!(max_antichain_size(&order_of(&Poset::chain(3).unwrap())).unwrap(), 1);
        assert_eq!(max_antichain_size(&order_of(&Poset::fork())).unwrap(), 2);
        assert_eq!(max_antichain_size(&order_of(&Poset::antichain(4).unwrap())).unwrap(), 4);
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..=5 {
            for p in crate::poset::enumerate_posets(n).unwrap() {
                let le = order_of(&p);
                let w = max_antichain(&le).unwrap();
                assert_eq!(w.len(), brute_width(&le), "{p:?}");
                assert!(w.iter().all(|&a| w.iter().all(|&b| a == b || !le.get(a, b))));
            }
        }
        let le = order_of(&powerset_poset(3).unwrap());
        assert_eq!(max_antichain_size(&le).unwrap(), brute_width(&le));
    }

    #[test]
    fn rejects_non_orders() {
        let mut le = BitMatrix::from_fn(3, |i, j| i == j);
        le.set(0, 1);
        le.set(1, 2);
        assert!(max_antichain_size(&le).is_err());
        let cyc = BitMatrix::from_fn(2, |_, _| true);
        assert!(max_antichain_size(&cyc).is_err());
    }
}
