//! Packed bit-matrix graphs and vertex sets.

use std::fmt;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `{0..n-1}` stored as a bit set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, bits: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds a set over `{0..n-1}`.
    ///
    /// Panics if a member is out of range.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    /// Low-word constructor used by the switching-class enumeration (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let mut s = Self::empty(n);
        if n > 0 {
            s.bits[0] = mask & low_mask(n);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.bits[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet { n: self.n, bits: self.bits.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(&self.bits)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.bits
    }

    fn trim(&mut self) {
        if let Some(last) = self.bits.last_mut() {
            let rem = self.n % 64;
            if rem != 0 {
                *last &= low_mask(rem);
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over set bits of a word slice.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Simple undirected graph on vertices `0..n`, adjacency packed as bit rows.
///
/// Rows use `ceil(n/64)` words each; the matrix is kept symmetric with a zero
/// diagonal by every mutating method.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, rows: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// Builds a graph from single-word rows; `n <= 64`.
    pub(crate) fn from_word_rows(n: usize, rows: &[u64]) -> Self {
        debug_assert!(n <= 64 && rows.len() == n);
        let mut g = Self::empty(n);
        if n > 0 {
            g.rows.copy_from_slice(rows);
        }
        g
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "edge ({a},{b}) out of range for n = {}", self.n);
        assert_ne!(a, b, "loops are not allowed");
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
    }

    pub fn set_edge(&mut self, a: usize, b: usize, on: bool) {
        if on {
            self.add_edge(a, b)
        } else {
            self.remove_edge(a, b)
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet { n: self.n, bits: self.row(v).to_vec() }
    }

    /// Number of common neighbours of `a` and `b`.
    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        self.row(a).iter().zip(self.row(b)).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.neighbors(a).filter(move |&b| b > a).map(move |b| (a, b)))
    }

    /// Adjacency matrix as row-major integers.
    pub fn adjacency_matrix(&self) -> Vec<i64> {
        let n = self.n;
        let mut m = vec![0i64; n * n];
        for (a, b) in self.edges() {
            m[a * n + b] = 1;
            m[b * n + a] = 1;
        }
        m
    }

    /// Seidel matrix `J - I - 2A`, row-major.
    pub fn seidel_matrix(&self) -> Vec<i64> {
        let n = self.n;
        let mut m = vec![0i64; n * n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    m[a * n + b] = if self.has_edge(a, b) { -1 } else { 1 };
                }
            }
        }
        m
    }

    /// Applies a vertex permutation: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (a, b)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_complement_respects_universe() {
        let s = VertexSet::from_members(70, [0, 65, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 67);
        assert!(!c.contains(65));
        assert!(c.contains(68));
        assert_eq!(c.complement(), s);
    }

    #[test]
    fn multiword_rows() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.degree(129), 1);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![65]);
        g.remove_edge(0, 129);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    #[should_panic(expected = "loops")]
    fn loops_rejected() {
        Graph::empty(3).add_edge(1, 1);
    }

    #[test]
    fn zero_vertices() {
        let g = Graph::empty(0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.degrees().is_empty());
        assert!(VertexSet::full(0).is_empty());
    }
}
