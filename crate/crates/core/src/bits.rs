//! Word-packed vertex sets and a symmetric adjacency matrix built on them.
//!
//! Every row is `words` 64-bit words long, so neighbourhood intersection in the
//! embedding search is a word-parallel AND.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn test(set: &[u64], i: usize) -> bool {
    (set[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
}

#[inline]
pub(crate) fn set(set: &mut [u64], i: usize) {
    set[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline]
pub(crate) fn clear(set: &mut [u64], i: usize) {
    set[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
}

#[inline]
pub(crate) fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

/// Fills `out` with the first `n` bits set.
pub(crate) fn fill(out: &mut [u64], n: usize) {
    for (i, w) in out.iter_mut().enumerate() {
        let lo = i * WORD_BITS;
        *w = if n >= lo + WORD_BITS {
            u64::MAX
        } else if n > lo {
            (1u64 << (n - lo)) - 1
        } else {
            0
        };
    }
}

/// Iterates the indices of set bits in ascending order.
pub(crate) fn ones(set: &[u64]) -> Ones<'_> {
    Ones {
        words: set,
        index: 0,
        current: set.first().copied().unwrap_or(0),
    }
}

pub(crate) struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Symmetric, irreflexive adjacency relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub(crate) fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        test(self.row(u), v)
    }

    #[inline]
    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let w = self.words;
        set(&mut self.data[u * w..(u + 1) * w], v);
        set(&mut self.data[v * w..(v + 1) * w], u);
    }

    #[inline]
    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        let w = self.words;
        clear(&mut self.data[u * w..(u + 1) * w], v);
        clear(&mut self.data[v * w..(v + 1) * w], u);
    }

    #[inline]
    pub(crate) fn degree(&self, v: usize) -> usize {
        count(self.row(v))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub(crate) fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in ones(self.row(u)) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub(crate) fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }
}
