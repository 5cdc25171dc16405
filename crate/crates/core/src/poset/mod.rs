//! Finite posets, their up-sets, and the antichain/enumeration machinery
//! that feeds the algebra constructions.
//!
//! Elements are dense indices `0..size`. Every poset keeps, for each element,
//! a bitmask of the elements above it (`x <= y`) and below it, so posets are
//! limited to [`MAX_POSET_SIZE`] points.

mod antichain;
mod enumerate;
mod opens;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::ones;
use crate::error::{Error, Result};

pub use antichain::{max_antichain, max_antichain_size};
pub use enumerate::{canonical_form, canonicalize, enumerate_posets, CanonicalForm, MAX_ENUMERATION_SIZE};
pub use opens::{open_sets, open_sets_with, OpenSetLimits, FILTER_THRESHOLD};

pub const MAX_POSET_SIZE: usize = 64;

/// Largest `n` accepted by [`powerset_poset`] under default limits.
pub const DEFAULT_POWERSET_CAP: usize = 6;

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    name: String,
    labels: Vec<String>,
    /// `up[x]` has bit `y` set iff `x <= y`.
    up: Vec<u64>,
    /// `down[y]` has bit `x` set iff `x <= y`.
    down: Vec<u64>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset({:?}; ", self.name)?;
        let mut first = true;
        for x in 0..self.size() {
            for y in self.strict_up_elems(x) {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}<{}", self.labels[x], self.labels[y])?;
            }
        }
        write!(f, ")")
    }
}

impl Poset {
    /// Build from up-masks, checking the partial-order axioms.
    pub fn from_up_masks(name: impl Into<String>, labels: Vec<String>, up: Vec<u64>) -> Result<Self> {
        let n = up.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::resource("poset size", MAX_POSET_SIZE as u64));
        }
        if labels.len() != n {
            return Err(Error::input(format!("poset has {n} elements but {} labels", labels.len())));
        }
        let all = full_mask(n);
        for (x, &mask) in up.iter().enumerate() {
            if mask & !all != 0 {
                return Err(Error::input(format!("relation of element {x} leaves the carrier")));
            }
            if mask & bit(x) == 0 {
                return Err(Error::input(format!("not reflexive at element {x}")));
            }
            for y in ones(mask) {
                if y != x && up[y] & bit(x) != 0 {
                    return Err(Error::input(format!("cycle between elements {x} and {y} (antisymmetry fails)")));
                }
                if up[y] & !mask != 0 {
                    let z = (up[y] & !mask).trailing_zeros();
                    return Err(Error::input(format!("not transitive: {x} <= {y} <= {z} but not {x} <= {z}")));
                }
            }
        }
        Ok(Self::from_up_unchecked(name.into(), labels, up))
    }

    pub(crate) fn from_up_unchecked(name: String, labels: Vec<String>, up: Vec<u64>) -> Self {
        let n = up.len();
        let mut down = vec![0u64; n];
        for (x, &mask) in up.iter().enumerate() {
            for y in ones(mask) {
                down[y] |= bit(x);
            }
        }
        Poset { name, labels, up, down }
    }

    /// Build from `(i, j)` pairs meaning `i <= j`. Reflexive pairs are added;
    /// the remaining axioms are validated, not repaired.
    pub fn from_pairs(
        name: impl Into<String>,
        labels: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::resource("poset size", MAX_POSET_SIZE as u64));
        }
        let mut up: Vec<u64> = (0..n).map(bit).collect();
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::input(format!("pair ({i}, {j}) out of range for {n} elements")));
            }
            up[i] |= bit(j);
        }
        Self::from_up_masks(name, labels, up)
    }

    pub fn chain(n: usize) -> Result<Self> {
        let up = (0..n).map(|i| full_mask(n) & !(bit(i) - 1)).collect();
        Self::from_up_masks(format!("chain{n}"), numeric_labels(n), up)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_up_masks(format!("antichain{n}"), numeric_labels(n), (0..n).map(bit).collect())
    }

    /// The three-element fork `r < a`, `r < b`.
    pub fn fork() -> Self {
        Self::from_pairs("fork", vec!["r".into(), "a".into(), "b".into()], [(0, 1), (0, 2)]).expect("fork is a poset")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] & bit(y) != 0
    }

    /// `[x)` as a bitmask.
    #[inline]
    pub fn up_mask(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// `(x]` as a bitmask.
    #[inline]
    pub fn down_mask(&self, x: usize) -> u64 {
        self.down[x]
    }

    pub fn carrier_mask(&self) -> u64 {
        full_mask(self.size())
    }

    fn strict_up_elems(&self, x: usize) -> impl Iterator<Item = usize> {
        ones(self.up[x] & !bit(x))
    }

    /// Minimal elements of the subset `mask`.
    pub fn minimal_in(&self, mask: u64) -> u64 {
        ones(mask).filter(|&x| self.down[x] & mask == bit(x)).fold(0, |acc, x| acc | bit(x))
    }

    pub fn maximal_in(&self, mask: u64) -> u64 {
        ones(mask).filter(|&x| self.up[x] & mask == bit(x)).fold(0, |acc, x| acc | bit(x))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        ones(self.minimal_in(self.carrier_mask())).collect()
    }

    pub fn is_up_closed(&self, mask: u64) -> bool {
        ones(mask).all(|x| self.up[x] & !mask == 0)
    }

    /// Union of `[x)` over the mask; no range checks.
    pub fn up_closure_mask(&self, mask: u64) -> u64 {
        ones(mask).fold(0, |acc, x| acc | self.up[x])
    }

    pub fn down_closure_mask(&self, mask: u64) -> u64 {
        ones(mask).fold(0, |acc, x| acc | self.down[x])
    }

    /// `[A)`: the least up-closed superset of `seed`. `[∅) = ∅`.
    pub fn up_closure(&self, seed: &[usize]) -> Result<UpSet> {
        let mut mask = 0;
        for &x in seed {
            if x >= self.size() {
                return Err(Error::input(format!("element {x} out of range for poset of size {}", self.size())));
            }
            mask |= bit(x);
        }
        Ok(UpSet { bits: self.up_closure_mask(mask), size: self.size() })
    }

    /// Wrap a mask as an up-set after checking closure.
    pub fn up_set(&self, mask: u64) -> Result<UpSet> {
        if mask & !self.carrier_mask() != 0 {
            return Err(Error::input("subset leaves the carrier"));
        }
        if !self.is_up_closed(mask) {
            return Err(Error::input(format!("{} is not an open (up-closed) set", self.render_subset(mask))));
        }
        Ok(UpSet { bits: mask, size: self.size() })
    }

    /// Render a subset as `{x,y}` using element labels.
    pub fn render_subset(&self, mask: u64) -> String {
        let mut s = String::from("{");
        for (k, x) in ones(mask).enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.labels[x]);
        }
        s.push('}');
        s
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", self.name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=BT;");
        for x in 0..self.size() {
            let _ = writeln!(out, "  n{x} [label=\"{}\"];", self.labels[x]);
        }
        for x in 0..self.size() {
            let above = self.up[x] & !bit(x);
            for y in ones(self.minimal_in(above)) {
                let _ = writeln!(out, "  n{x} -> n{y};");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_file_format(&self) -> PosetFile {
        let mut le = Vec::new();
        for x in 0..self.size() {
            for y in ones(self.up[x]) {
                le.push([x, y]);
            }
        }
        PosetFile { name: self.name.clone(), elements: self.labels.clone(), le }
    }

    pub fn from_file_format(file: PosetFile) -> Result<Self> {
        Self::from_pairs(file.name, file.elements, file.le.into_iter().map(|[i, j]| (i, j)))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file_format(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file_format()).expect("poset serializes")
    }
}

/// On-disk poset description: every pair `[i, j]` with `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub name: String,
    pub elements: Vec<String>,
    pub le: Vec<[usize; 2]>,
}

pub(crate) fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// An up-closed subset of a poset's carrier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UpSet {
    bits: u64,
    size: usize,
}

impl UpSet {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn carrier_size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.size && self.bits & bit(x) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn members(&self) -> Vec<bool> {
        (0..self.size).map(|x| self.contains(x)).collect()
    }

    pub fn elements(&self) -> Vec<usize> {
        ones(self.bits).collect()
    }

    pub fn union(&self, other: &UpSet) -> UpSet {
        UpSet { bits: self.bits | other.bits, size: self.size }
    }

    pub fn intersection(&self, other: &UpSet) -> UpSet {
        UpSet { bits: self.bits & other.bits, size: self.size }
    }

    /// Key whose numeric order is the lexicographic order of [`UpSet::members`].
    pub(crate) fn vector_key(bits: u64, size: usize) -> u64 {
        if size == 0 {
            0
        } else {
            bits.reverse_bits() >> (64 - size)
        }
    }
}

/// `2^n − {∅}`: nonempty subsets of `{0..n-1}` ordered by reverse inclusion.
///
/// Elements are listed by decreasing cardinality and then lexicographically,
/// so the full set (the unique minimum) is element 0. Labels concatenate the
/// member digits, e.g. `"01"`.
pub fn powerset_poset(n: usize) -> Result<Poset> {
    powerset_poset_with_cap(n, DEFAULT_POWERSET_CAP)
}

pub fn powerset_poset_with_cap(n: usize, cap: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::input("powerset poset needs n >= 1"));
    }
    if n > cap {
        return Err(Error::input(format!("powerset poset n = {n} exceeds cap {cap}")));
    }
    let subsets = powerset_subsets(n);
    let labels =
        subsets.iter().map(|&s| ones(s as u64).map(|i| char::from(b'0' + i as u8)).collect::<String>()).collect();
    let up = subsets
        .iter()
        .map(|&s| subsets.iter().enumerate().filter(|&(_, &t)| t & !s == 0).fold(0u64, |acc, (j, _)| acc | bit(j)))
        .collect();
    Ok(Poset::from_up_unchecked(format!("2^{n}-{{}}"), labels, up))
}

/// The nonempty subsets of `{0..n-1}` (as bitmasks) in powerset-poset order.
pub fn powerset_subsets(n: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
    subsets.sort_by_key(|&s| {
        let members: Vec<usize> = ones(s as u64).collect();
        (std::cmp::Reverse(members.len()), members)
    });
    subsets
}
