//! Left-right planarity test.
//!
//! A DFS orients the graph and computes lowpoints and nesting depths; a second
//! DFS, visiting children by nesting depth, maintains a stack of conflict pairs
//! of return-edge intervals. The graph is planar iff every pair of conflicting
//! intervals can be placed on opposite sides.

use crate::graph::SmallGraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    const EMPTY: ConflictPair = ConflictPair {
        left: Interval::EMPTY,
        right: Interval::EMPTY,
    };

    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    g: &'a SmallGraph,
    /// Oriented edges `(tail, head)`.
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    oriented: Vec<bool>,
    // testing phase
    refs: Vec<usize>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

/// Whether `g` has a plane embedding.
pub fn is_planar(g: &SmallGraph) -> bool {
    let n = g.order();
    let m = g.edge_count();
    if n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let mut st = LrState {
        g,
        edges: Vec::with_capacity(m),
        out: vec![Vec::new(); n],
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        oriented: vec![false; n * n],
        refs: Vec::new(),
        lowpt_edge: Vec::new(),
        stack_bottom: Vec::new(),
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let nesting = &st.nesting;
        st.out[v].sort_by_key(|&e| nesting[e]);
    }
    let m = st.edges.len();
    st.refs = vec![NONE; m];
    st.lowpt_edge = vec![NONE; m];
    st.stack_bottom = vec![0; m];
    roots.into_iter().all(|v| st.test(v))
}

impl LrState<'_> {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        let n = self.g.order();
        let nbrs: Vec<usize> = self.g.neighbors(v).collect();
        for w in nbrs {
            if self.oriented[v * n + w] {
                continue;
            }
            self.oriented[v * n + w] = true;
            self.oriented[w * n + v] = true;
            let vw = self.edges.len();
            self.edges.push((v, w));
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw];
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
            }
            if e != NONE {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn set_ref(&mut self, edge: usize, target: usize) {
        if edge != NONE {
            self.refs[edge] = target;
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let out = self.out[v].clone();
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.edges[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::EMPTY;
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.set_ref(q.right.low, self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.edges[e].0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.edges[p.left.high].1 == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.edges[p.right.high].1 == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return edge");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                hl
            } else {
                hr
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, CanonicalForm};
    use crate::families::*;
    use std::collections::HashMap;

    /// Wagner oracle: K5 and K3,3 are the only minor-minimal nonplanar graphs, so a
    /// graph is nonplanar iff it is one of them (up to isolated vertices) or some
    /// single edge deletion or contraction is nonplanar.
    pub(crate) fn kuratowski_nonplanar(g: &SmallGraph, memo: &mut HashMap<CanonicalForm, bool>) -> bool {
        let keep: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) > 0).collect();
        if keep.len() < 5 || g.edge_count() < 9 {
            return false;
        }
        let core = g.induced_subgraph(&keep).unwrap();
        let key = canonical_form(&core).unwrap();
        if let Some(&ans) = memo.get(&key) {
            return ans;
        }
        let k5 = canonical_form(&complete(5).unwrap()).unwrap();
        let k33 = canonical_form(&complete_bipartite(3, 3).unwrap()).unwrap();
        let mut ans = key == k5 || key == k33;
        let edges: Vec<(usize, usize)> = core.edges().collect();
        for &(u, v) in &edges {
            if ans {
                break;
            }
            let mut del = core.clone();
            del.remove_edge(u, v);
            ans = kuratowski_nonplanar(&del, memo);
            if !ans {
                ans = kuratowski_nonplanar(&contract(&core, u, v), memo);
            }
        }
        memo.insert(key, ans);
        ans
    }

    /// Merges `v` into `u` and drops `v`.
    fn contract(g: &SmallGraph, u: usize, v: usize) -> SmallGraph {
        let rest: Vec<usize> = (0..g.order()).filter(|&x| x != v).collect();
        let mut h = g.induced_subgraph(&rest).unwrap();
        let iu = rest.iter().position(|&x| x == u).unwrap();
        for w in g.neighbors(v) {
            if w != u {
                let iw = rest.iter().position(|&x| x == w).unwrap();
                h.add_edge(iu, iw);
            }
        }
        h
    }

    #[test]
    fn named_graphs() {
        assert!(is_planar(&complete(4).unwrap()));
        assert!(!is_planar(&complete(5).unwrap()));
        assert!(!is_planar(&complete_bipartite(3, 3).unwrap()));
        assert!(!is_planar(&petersen()));
        assert!(is_planar(&icosahedron()));
        assert!(is_planar(&cuboctahedron()));
        assert!(is_planar(&rhombicuboctahedron()));
        assert!(is_planar(&snub_cube()));
        assert!(is_planar(&hypercube(3).unwrap()));
        assert!(!is_planar(&hypercube(4).unwrap()));
        assert!(is_planar(&antiprism(7).unwrap()));
        assert!(is_planar(&cycle(40).unwrap()));
    }

    #[test]
    fn dominated_six_vertex_graphs_with_twelve_edges() {
        // complements of K3, P4, K1,3 and P3 ∪ K2, each with a sixth isolated vertex
        let complements: [&[(usize, usize)]; 4] = [
            &[(0, 1), (1, 2), (0, 2)],
            &[(0, 1), (1, 2), (2, 3)],
            &[(0, 1), (0, 2), (0, 3)],
            &[(0, 1), (1, 2), (3, 4)],
        ];
        let mut memo = HashMap::new();
        let planar: Vec<bool> = complements
            .iter()
            .map(|e| {
                let g = SmallGraph::from_edges(6, e).unwrap().complement();
                assert_eq!((g.edge_count(), g.max_degree()), (12, 5));
                assert_eq!(is_planar(&g), !kuratowski_nonplanar(&g, &mut memo));
                is_planar(&g)
            })
            .collect();
        // only K2 + P4 embeds
        assert_eq!(planar, vec![false, true, false, false]);
    }

    #[test]
    fn disconnected_inputs() {
        let two_k4 = complete(4).unwrap().disjoint_union(&complete(4).unwrap()).unwrap();
        assert!(is_planar(&two_k4));
        let k33_plus = complete_bipartite(3, 3).unwrap().disjoint_union(&cycle(5).unwrap()).unwrap();
        assert!(!is_planar(&k33_plus));
    }

    #[test]
    fn subdivided_k33_and_k5() {
        // K3,3 with one edge subdivided: 7 vertices, 9+1 edges
        let mut g = SmallGraph::empty(7).unwrap();
        for a in 0..3 {
            for b in 3..6 {
                if (a, b) != (0, 3) {
                    g.add_edge(a, b);
                }
            }
        }
        g.add_edge(0, 6);
        g.add_edge(6, 3);
        assert!(!is_planar(&g));
        assert!(kuratowski_nonplanar(&g, &mut HashMap::new()));
        let mut k5 = complete(5).unwrap().with_new_vertex(&[]);
        k5.remove_edge(0, 1);
        k5.add_edge(0, 5);
        k5.add_edge(5, 1);
        assert!(!is_planar(&k5));
    }

    #[test]
    fn agrees_with_minor_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let mut memo = HashMap::new();
        for _ in 0..300 {
            let n = rng.gen_range(5..=8);
            let p = rng.gen_range(0.25..0.75);
            let mut g = SmallGraph::empty(n).unwrap();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(i, j);
                    }
                }
            }
            assert_eq!(is_planar(&g), !kuratowski_nonplanar(&g, &mut memo), "{g:?}");
        }
    }
}
