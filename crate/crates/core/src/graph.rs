//! Bit-row adjacency graphs and the neighbourhood-edge invariants.
//!
//! Every graph in this crate is a [`SmallGraph`]: a simple undirected graph on
//! vertices `0..n` whose adjacency is stored as one fixed-width bit row per
//! vertex. Link sizes `e(v)` reduce to popcounts of row intersections.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the order of a graph.
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order must be at least 1")]
    EmptyOrder,
    #[error("graph order {n} exceeds the cap of {cap}")]
    OrderCapExceeded { n: usize, cap: usize },
    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph with adjacency stored as bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// The `(r, c)` pair of a regular graph whose every link has `c` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RcSignature {
    pub r: usize,
    pub c: usize,
}

impl RcSignature {
    pub fn new(r: usize, c: usize) -> Option<Self> {
        (c <= choose2(r)).then_some(Self { r, c })
    }
}

impl fmt::Display for RcSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.c)
    }
}

#[inline]
pub const fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterates over the set bits of a bit row.
pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

impl SmallGraph {
    /// Edgeless graph on `n` vertices, subject to [`DEFAULT_ORDER_CAP`].
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::empty_with_cap(n, DEFAULT_ORDER_CAP)
    }

    pub fn empty_with_cap(n: usize, cap: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        if n > cap {
            return Err(GraphError::OrderCapExceeded { n, cap });
        }
        let words = words_for(n);
        Ok(Self {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edges_with_cap(n, edges, DEFAULT_ORDER_CAP)
    }

    pub fn from_edges_with_cap(
        n: usize,
        edges: &[(usize, usize)],
        cap: usize,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty_with_cap(n, cap)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds `{u, v}`. Panics on out-of-range vertices or a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge {{{u},{v}}}");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges in the subgraph induced by the open neighbourhood of `v`.
    pub fn neighborhood_edges(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        Ok(self.link_size(v))
    }

    /// `e(v)` without the range check.
    #[inline]
    pub(crate) fn link_size(&self, v: usize) -> usize {
        let nv = self.row(v);
        let twice: usize = iter_bits(nv).map(|u| and_count(nv, self.row(u))).sum();
        twice / 2
    }

    /// `Some((r, c))` iff the graph is `r`-regular and every link has `c` edges.
    pub fn rc_signature(&self) -> Option<RcSignature> {
        let r = self.degree(0);
        if (1..self.n).any(|v| self.degree(v) != r) {
            return None;
        }
        let c = self.link_size(0);
        if (1..self.n).any(|v| self.link_size(v) != c) {
            return None;
        }
        Some(RcSignature { r, c })
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        let mut above = vec![0u64; self.words];
        for (u, v) in self.edges() {
            // common neighbours w > v
            above.iter_mut().for_each(|w| *w = 0);
            for w in v + 1..self.n {
                above[w / 64] |= 1 << (w % 64);
            }
            let (ru, rv) = (self.row(u), self.row(v));
            t += ru
                .iter()
                .zip(rv)
                .zip(&above)
                .map(|((a, b), m)| (a & b & m).count_ones() as usize)
                .sum::<usize>();
        }
        t
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn complement(&self) -> SmallGraph {
        let mut g = self.clone();
        for v in 0..self.n {
            let row = &mut g.rows[v * self.words..(v + 1) * self.words];
            for (wi, w) in row.iter_mut().enumerate() {
                *w = !*w;
                let lo = wi * 64;
                if lo + 64 > self.n {
                    let keep = self.n.saturating_sub(lo);
                    *w &= if keep == 0 { 0 } else { u64::MAX >> (64 - keep) };
                }
            }
            row[v / 64] &= !(1 << (v % 64));
        }
        g
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<SmallGraph, GraphError> {
        let mut g = SmallGraph::empty_with_cap(vertices.len(), usize::MAX)?;
        for (i, &a) in vertices.iter().enumerate() {
            if a >= self.n {
                return Err(GraphError::VertexOutOfRange { v: a, n: self.n });
            }
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// The link of `v`: the subgraph induced by `N(v)` (neighbours in increasing order).
    pub fn link(&self, v: usize) -> Result<SmallGraph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        self.induced_subgraph(&nbrs)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> SmallGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = SmallGraph {
            n: self.n,
            words: self.words,
            rows: vec![0; self.rows.len()],
        };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Copy of the graph with one extra vertex `n` joined to `neighbors`.
    pub fn with_new_vertex(&self, neighbors: &[usize]) -> SmallGraph {
        let n = self.n + 1;
        let words = words_for(n);
        let mut g = SmallGraph {
            n,
            words,
            rows: vec![0; n * words],
        };
        for v in 0..self.n {
            g.rows[v * words..v * words + self.words].copy_from_slice(self.row(v));
        }
        for &u in neighbors {
            g.add_edge(u, self.n);
        }
        g
    }

    /// Vertex-disjoint union.
    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<SmallGraph, GraphError> {
        let mut g = SmallGraph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn brute_link(g: &SmallGraph, v: usize) -> usize {
        let nb: Vec<usize> = (0..g.order()).filter(|&u| g.has_edge(u, v)).collect();
        let mut e = 0;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if g.has_edge(nb[i], nb[j]) {
                    e += 1;
                }
            }
        }
        e
    }

    #[test]
    fn link_sizes_of_small_named_graphs() {
        let k4 = complete(4).unwrap();
        assert!((0..4).all(|v| k4.neighborhood_edges(v).unwrap() == 3));
        let p = petersen();
        assert!((0..10).all(|v| p.neighborhood_edges(v).unwrap() == 0));
        assert_eq!(
            k4.neighborhood_edges(4),
            Err(GraphError::VertexOutOfRange { v: 4, n: 4 })
        );
    }

    #[test]
    fn link_size_matches_pair_scan_on_all_graphs_up_to_six_vertices() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = SmallGraph::from_edges(n, &edges).unwrap();
                for v in 0..n {
                    assert_eq!(g.link_size(v), brute_link(&g, v));
                }
            }
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(complete(4).unwrap().rc_signature(), RcSignature::new(3, 3));
        assert_eq!(prism(3).unwrap().rc_signature(), RcSignature::new(3, 1));
        assert_eq!(path(3).unwrap().rc_signature(), None);
        assert_eq!(SmallGraph::empty(1).unwrap().rc_signature(), RcSignature::new(0, 0));
        assert_eq!(SmallGraph::empty(7).unwrap().rc_signature(), RcSignature::new(0, 0));
    }

    #[test]
    fn triangles_and_girth() {
        assert_eq!(complete(4).unwrap().triangle_count(), 4);
        assert_eq!(petersen().triangle_count(), 0);
        assert_eq!(cycle(5).unwrap().girth(), Some(5));
        assert_eq!(complete(4).unwrap().girth(), Some(3));
        assert_eq!(complete(2).unwrap().girth(), None);
        assert_eq!(petersen().girth(), Some(5));
        assert_eq!(hypercube(3).unwrap().girth(), Some(4));
    }

    #[test]
    fn complement_clears_padding_bits() {
        for n in [1, 5, 63, 64, 65, 130] {
            let g = SmallGraph::empty(n).unwrap().complement();
            assert_eq!(g.edge_count(), choose2(n));
            assert!((0..n).all(|v| g.degree(v) == n - 1));
        }
    }

    #[test]
    fn order_cap_and_bad_edges() {
        assert_eq!(SmallGraph::empty(0), Err(GraphError::EmptyOrder));
        assert_eq!(
            SmallGraph::empty(513),
            Err(GraphError::OrderCapExceeded { n: 513, cap: 512 })
        );
        assert!(SmallGraph::empty_with_cap(1024, 1024).is_ok());
        assert_eq!(
            SmallGraph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(SmallGraph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn wide_rows_work_past_one_word() {
        let g = cycle(200).unwrap();
        assert_eq!(g.rc_signature(), RcSignature::new(2, 0));
        assert_eq!(g.girth(), Some(200));
        let h = g.with_new_vertex(&[0, 199]);
        assert_eq!(h.order(), 201);
        assert_eq!(h.neighborhood_edges(200).unwrap(), 1);
    }
}
