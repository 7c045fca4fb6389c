//! Cartesian products, complements and the clique-product construction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::complete;
use crate::graph::{choose2, GraphError, RcSignature, SmallGraph, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no partition x_1 + ... + x_m = {r} with sum of C(x_j,2) equal to {c}")]
    NoPartition { r: usize, c: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parts `x_1 >= ... >= x_m >= 1` with `Σ x_j = r` and `Σ C(x_j, 2) = c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePartition {
    pub parts: Vec<usize>,
}

impl CliquePartition {
    pub fn signature(&self) -> RcSignature {
        RcSignature {
            r: self.parts.iter().sum(),
            c: self.parts.iter().map(|&x| choose2(x)).sum(),
        }
    }

    /// Order of the product of the cliques `K_{x_j + 1}`.
    pub fn product_order(&self) -> u128 {
        self.parts.iter().map(|&x| x as u128 + 1).product()
    }
}

pub fn cartesian_product(g: &SmallGraph, h: &SmallGraph) -> Result<SmallGraph, GraphError> {
    cartesian_product_with_cap(g, h, DEFAULT_ORDER_CAP)
}

/// `G □ H` with vertex `(a, b)` numbered `a·|V(H)| + b`.
pub fn cartesian_product_with_cap(
    g: &SmallGraph,
    h: &SmallGraph,
    cap: usize,
) -> Result<SmallGraph, GraphError> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng.checked_mul(nh).ok_or(GraphError::OrderCapExceeded { n: usize::MAX, cap })?;
    let mut p = SmallGraph::empty_with_cap(n, cap)?;
    for a in 0..ng {
        for (b1, b2) in h.edges() {
            p.add_edge(a * nh + b1, a * nh + b2);
        }
    }
    for (a1, a2) in g.edges() {
        for b in 0..nh {
            p.add_edge(a1 * nh + b, a2 * nh + b);
        }
    }
    Ok(p)
}

pub fn complement_transform(g: &SmallGraph) -> SmallGraph {
    g.complement()
}

/// Signature of the complement of an `(r, c)`-graph on `n` vertices.
pub fn complement_signature(n: usize, sig: RcSignature) -> RcSignature {
    let RcSignature { r, c } = sig;
    let rc = n - 1 - r;
    RcSignature {
        r: rc,
        c: choose2(n - 1) - 3 * r * rc / 2 - c,
    }
}

/// Searches partitions of `r` (parts in non-increasing order, visited in
/// reverse-lexicographic order) for `Σ C(x_j, 2) = c`; among matches the one
/// with the smallest product order wins, ties going to the first visited.
pub fn solve_clique_partition(r: usize, c: usize) -> Option<CliquePartition> {
    if c > choose2(r) {
        return None;
    }
    if r == 0 {
        return Some(CliquePartition { parts: Vec::new() });
    }
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut parts = Vec::new();
    partitions(r, r, c, &mut parts, &mut best);
    best.map(|(_, parts)| CliquePartition { parts })
}

fn partitions(
    remaining: usize,
    max_part: usize,
    c_left: usize,
    parts: &mut Vec<usize>,
    best: &mut Option<(u128, Vec<usize>)>,
) {
    if remaining == 0 {
        if c_left == 0 {
            let order: u128 = parts.iter().map(|&x| x as u128 + 1).product();
            if best.as_ref().is_none_or(|(o, _)| order < *o) {
                *best = Some((order, parts.clone()));
            }
        }
        return;
    }
    // the largest reachable link count from here uses parts as big as allowed
    let full = remaining / max_part;
    let reach = full * choose2(max_part) + choose2(remaining - full * max_part);
    if reach < c_left {
        return;
    }
    for x in (1..=max_part.min(remaining)).rev() {
        let cx = choose2(x);
        if cx > c_left {
            continue;
        }
        parts.push(x);
        partitions(remaining - x, x, c_left - cx, parts, best);
        parts.pop();
    }
}

pub fn fact2_construct(r: usize, c: usize) -> Result<SmallGraph, ConstructionError> {
    fact2_construct_with_cap(r, c, DEFAULT_ORDER_CAP)
}

/// `K_{x_1+1} □ ... □ K_{x_m+1}` for the partition chosen by [`solve_clique_partition`].
/// Every link is the disjoint union of the cliques `K_{x_j}`.
pub fn fact2_construct_with_cap(r: usize, c: usize, cap: usize) -> Result<SmallGraph, ConstructionError> {
    let part = solve_clique_partition(r, c).ok_or(ConstructionError::NoPartition { r, c })?;
    let order = part.product_order();
    if order > cap as u128 {
        return Err(GraphError::OrderCapExceeded {
            n: usize::try_from(order).unwrap_or(usize::MAX),
            cap,
        }
        .into());
    }
    let mut g = SmallGraph::empty(1)?;
    for &x in &part.parts {
        g = cartesian_product_with_cap(&g, &complete(x + 1)?, cap)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::families::*;

    fn sig(r: usize, c: usize) -> Option<RcSignature> {
        RcSignature::new(r, c)
    }

    #[test]
    fn products() {
        let k3k2 = cartesian_product(&complete(3).unwrap(), &complete(2).unwrap()).unwrap();
        assert!(are_isomorphic(&k3k2, &prism(3).unwrap()));
        assert_eq!(k3k2.rc_signature(), sig(3, 1));
        let c4 = cartesian_product(&complete(2).unwrap(), &complete(2).unwrap()).unwrap();
        assert!(are_isomorphic(&c4, &cycle(4).unwrap()));
        let k4k3 = cartesian_product(&complete(4).unwrap(), &complete(3).unwrap()).unwrap();
        assert_eq!(k4k3.order(), 12);
        assert_eq!(k4k3.rc_signature(), sig(5, 4));
        let big = SmallGraph::empty(30).unwrap();
        assert!(matches!(
            cartesian_product(&big, &big),
            Err(GraphError::OrderCapExceeded { n: 900, cap: 512 })
        ));
    }

    #[test]
    fn product_vertex_numbering() {
        let p = cartesian_product(&path(2).unwrap(), &path(3).unwrap()).unwrap();
        // (0,b)-(1,b) rungs and (a,0)-(a,1)-(a,2) paths
        for e in [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)] {
            assert!(p.has_edge(e.0, e.1));
        }
        assert_eq!(p.edge_count(), 7);
    }

    #[test]
    fn complements() {
        let c5 = cycle(5).unwrap();
        assert!(are_isomorphic(&complement_transform(&c5), &c5));
        assert_eq!(complement_signature(5, RcSignature { r: 2, c: 0 }), RcSignature { r: 2, c: 0 });
        let c6c = complement_transform(&cycle(6).unwrap());
        assert!(are_isomorphic(&c6c, &prism(3).unwrap()));
        assert_eq!(c6c.rc_signature(), sig(3, 1));
        assert_eq!(complement_signature(6, RcSignature { r: 2, c: 0 }), RcSignature { r: 3, c: 1 });
        let pc = complement_transform(&petersen());
        assert_eq!(pc.rc_signature(), sig(6, 9));
        assert_eq!(complement_signature(10, RcSignature { r: 3, c: 0 }), RcSignature { r: 6, c: 9 });
    }

    #[test]
    fn clique_partitions() {
        assert_eq!(solve_clique_partition(5, 4).unwrap().parts, vec![3, 2]);
        assert_eq!(solve_clique_partition(4, 0).unwrap().parts, vec![1, 1, 1, 1]);
        assert_eq!(solve_clique_partition(3, 2), None);
        assert_eq!(solve_clique_partition(3, 4), None);
        assert_eq!(solve_clique_partition(0, 0).unwrap().parts, Vec::<usize>::new());
        // (6,6): (4,1,1) has order 20, (3,3) has order 16
        assert_eq!(solve_clique_partition(6, 6).unwrap().parts, vec![3, 3]);
    }

    #[test]
    fn clique_partition_matches_exhaustive_scan() {
        fn all_partitions(r: usize, max: usize) -> Vec<Vec<usize>> {
            if r == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for x in (1..=max.min(r)).rev() {
                for mut rest in all_partitions(r - x, x) {
                    rest.insert(0, x);
                    out.push(rest);
                }
            }
            out
        }
        for r in 1..=14 {
            let all = all_partitions(r, r);
            for c in 0..=choose2(r) {
                let matching: Vec<&Vec<usize>> =
                    all.iter().filter(|p| p.iter().map(|&x| choose2(x)).sum::<usize>() == c).collect();
                let got = solve_clique_partition(r, c);
                match matching.iter().map(|p| p.iter().map(|&x| x as u128 + 1).product::<u128>()).min() {
                    None => assert_eq!(got, None, "({r},{c})"),
                    Some(min) => {
                        let first = matching
                            .iter()
                            .find(|p| p.iter().map(|&x| x as u128 + 1).product::<u128>() == min)
                            .unwrap();
                        assert_eq!(&got.unwrap().parts, *first, "({r},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn fact2_graphs() {
        let g = fact2_construct(5, 4).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.rc_signature(), sig(5, 4));
        let q4 = fact2_construct(4, 0).unwrap();
        assert!(are_isomorphic(&q4, &hypercube(4).unwrap()));
        assert_eq!(fact2_construct(3, 2), Err(ConstructionError::NoPartition { r: 3, c: 2 }));
        assert!(matches!(
            fact2_construct(10, 0),
            Err(ConstructionError::Graph(GraphError::OrderCapExceeded { n: 1024, cap: 512 }))
        ));
        assert_eq!(fact2_construct_with_cap(10, 0, 1024).unwrap().rc_signature(), sig(10, 0));
    }

    #[test]
    fn fact2_range_is_covered() {
        for r in 1..=12usize {
            let bound = (r * r) as f64 / 2.0 - 5.0 * (r as f64).powf(1.5);
            if bound < 0.0 {
                continue;
            }
            for c in 0..=bound.floor() as usize {
                assert!(solve_clique_partition(r, c).is_some(), "({r},{c})");
            }
        }
    }
}
