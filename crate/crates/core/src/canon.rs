//! Canonical labelling by individualisation and refinement.
//!
//! The ordered partition is refined to an equitable one, a vertex of the first
//! smallest non-trivial cell is individualised, and the process recurses until
//! the partition is discrete. Each leaf yields a labelling; the canonical one
//! has the lexicographically least relabelled adjacency matrix. Automorphisms
//! discovered along the way prune the tree (orbit pruning on the pointwise
//! stabiliser of the current path, and the jump back to the first path when a
//! leaf matches the first leaf).

use std::fmt;

use crate::graph::{and_count, GraphError, SmallGraph, DEFAULT_ORDER_CAP};
use crate::graph6;

/// Relabelling-invariant encoding: the graph6 bytes of the canonically relabelled graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    pub fn into_graph(&self) -> SmallGraph {
        graph6::decode_with_cap(self.as_str(), usize::MAX).expect("canonical forms are valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn canonical_form(g: &SmallGraph) -> Result<CanonicalForm, GraphError> {
    canonical_form_with_cap(g, DEFAULT_ORDER_CAP)
}

pub fn canonical_form_with_cap(g: &SmallGraph, cap: usize) -> Result<CanonicalForm, GraphError> {
    if g.order() > cap {
        return Err(GraphError::OrderCapExceeded { n: g.order(), cap });
    }
    Ok(canonical_form_unchecked(g))
}

pub(crate) fn canonical_form_unchecked(g: &SmallGraph) -> CanonicalForm {
    let lab = canonical_labeling(g);
    CanonicalForm(graph6::encode_bytes(&relabel(g, &lab)))
}

/// Returns `lab` with `lab[i]` the vertex placed at canonical position `i`.
pub fn canonical_labeling(g: &SmallGraph) -> Vec<usize> {
    let n = g.order();
    let cells = refine(g, vec![(0..n).collect()]);
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    search.best.expect("at least one leaf").1
}

pub fn relabel(g: &SmallGraph, lab: &[usize]) -> SmallGraph {
    let mut pos = vec![0; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    g.permuted(&pos)
}

pub fn are_isomorphic(a: &SmallGraph, b: &SmallGraph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form_unchecked(a) == canonical_form_unchecked(b)
}

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into each splitter cell until the partition is equitable.
/// Sub-cells are ordered by increasing count, which keeps the refinement label-invariant.
fn refine(g: &SmallGraph, mut cells: Cells) -> Cells {
    let words = g.words();
    let mut mask = vec![0u64; words];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            mask.iter_mut().for_each(|w| *w = 0);
            for &v in &cells[s] {
                mask[v / 64] |= 1 << (v % 64);
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> =
                    cell.iter().map(|&v| (and_count(g.row(v), &mask), v)).collect();
                if keyed.iter().all(|k| k.0 == keyed[0].0) {
                    next.push(cell);
                    continue;
                }
                changed = true;
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|k| k.1).collect());
                        start = i;
                    }
                }
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a SmallGraph,
    first: Option<Leaf>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    /// Automorphisms as vertex maps.
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, lab: &[usize]) -> Vec<u64> {
        let n = lab.len();
        let words = n.div_ceil(64);
        let mut pos = vec![0; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let mut cert = vec![0u64; n * words];
        for (i, &v) in lab.iter().enumerate() {
            for w in self.g.neighbors(v) {
                let p = pos[w];
                cert[i * words + p / 64] |= 1 << (p % 64);
            }
        }
        cert
    }

    fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
        let mut map = vec![0; from.len()];
        for (a, b) in from.iter().zip(to) {
            map[*a] = *b;
        }
        map
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn descend(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let level = path.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            return self.leaf(cells.into_iter().map(|c| c[0]).collect(), path);
        };
        let mut tried: Vec<usize> = Vec::new();
        let candidates = cells[t].clone();
        for &v in &candidates {
            if !tried.is_empty() && self.in_explored_orbit(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[t].iter().copied().filter(|&u| u != v).collect();
            child[t] = vec![v];
            child.insert(t + 1, rest);
            let child = refine(self.g, child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < level {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: Vec<usize>, path: &[usize]) -> Option<usize> {
        let cert = self.certificate(&lab);
        let Some(first) = &self.first else {
            self.best = Some((cert.clone(), lab.clone()));
            self.first = Some(Leaf {
                cert,
                lab,
                path: path.to_vec(),
            });
            return None;
        };
        if cert == first.cert {
            let gamma = Self::automorphism(&first.lab, &lab);
            let common = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            self.generators.push(gamma);
            return Some(common);
        }
        let (best_cert, best_lab) = self.best.as_ref().expect("best set with first");
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Less => self.best = Some((cert, lab)),
            std::cmp::Ordering::Equal => {
                let gamma = Self::automorphism(best_lab, &lab);
                self.generators.push(gamma);
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Whether `v` shares an orbit with an explored sibling under the automorphisms found
    /// so far that fix `path` pointwise.
    fn in_explored_orbit(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == root)
    }
}
