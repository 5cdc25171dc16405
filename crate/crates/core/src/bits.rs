//! Dense square boolean matrix, one bit-row per element.

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, data: vec![0; n * words] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    /// Build from independently computed rows (each row given as `words` u64s).
    pub(crate) fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut data = Vec::with_capacity(n * words);
        for row in rows {
            debug_assert_eq!(row.len(), words);
            data.extend_from_slice(&row);
        }
        BitMatrix { n, words, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in iter_ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(
                (0..self.n).map(|i| (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect::<String>()),
            )
            .finish()
    }
}

/// Indices of set bits in a multi-word row, ascending.
pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// Indices of set bits of a single word, ascending.
pub fn ones(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_transpose() {
        let m = BitMatrix::from_fn(70, |i, j| i <= j);
        assert!(m.get(3, 69));
        assert!(!m.get(69, 3));
        let t = m.transpose();
        assert!(t.get(69, 3));
        assert_eq!(m.row_count(0), 70);
        assert_eq!(iter_ones(m.row(68)).collect::<Vec<_>>(), vec![68, 69]);
    }

    #[test]
    fn word_ones() {
        assert_eq!(ones(0b1010_0001).collect::<Vec<_>>(), vec![0, 5, 7]);
    }
}
