//! Standard graphs used as inputs, witnesses and test fixtures.

use crate::graph::{GraphError, SmallGraph};

pub fn complete(n: usize) -> Result<SmallGraph, GraphError> {
    SmallGraph::empty(n).map(|g| g.complement())
}

pub fn cycle(n: usize) -> Result<SmallGraph, GraphError> {
    let mut g = SmallGraph::empty(n)?;
    if n >= 3 {
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<SmallGraph, GraphError> {
    let mut g = SmallGraph::empty(n)?;
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    Ok(g)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<SmallGraph, GraphError> {
    let mut g = SmallGraph::empty(a + b)?;
    for i in 0..a {
        for j in 0..b {
            g.add_edge(i, a + j);
        }
    }
    Ok(g)
}

pub fn petersen() -> SmallGraph {
    let mut g = SmallGraph::empty(10).expect("order 10");
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// `C_n □ K_2`.
pub fn prism(n: usize) -> Result<SmallGraph, GraphError> {
    let mut g = SmallGraph::empty(2 * n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(n + i, n + (i + 1) % n);
        g.add_edge(i, n + i);
    }
    Ok(g)
}

/// Two `n`-cycles joined by a band of `2n` triangles. The 3-antiprism is the octahedron.
pub fn antiprism(n: usize) -> Result<SmallGraph, GraphError> {
    let mut g = SmallGraph::empty(2 * n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(n + i, n + (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(i, n + (i + 1) % n);
    }
    Ok(g)
}

pub fn hypercube(d: usize) -> Result<SmallGraph, GraphError> {
    let n = 1usize
        .checked_shl(d as u32)
        .ok_or(GraphError::OrderCapExceeded { n: usize::MAX, cap: crate::graph::DEFAULT_ORDER_CAP })?;
    let mut g = SmallGraph::empty(n)?;
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                g.add_edge(v, w);
            }
        }
    }
    Ok(g)
}

pub fn line_graph(g: &SmallGraph) -> Result<SmallGraph, GraphError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut l = SmallGraph::empty(edges.len())?;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                l.add_edge(i, j);
            }
        }
    }
    Ok(l)
}

pub fn octahedron() -> SmallGraph {
    antiprism(3).expect("order 6")
}

pub fn icosahedron() -> SmallGraph {
    // apex 0, upper ring 1..=5, lower ring 6..=10, apex 11
    let mut g = SmallGraph::empty(12).expect("order 12");
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        g.add_edge(0, up);
        g.add_edge(up, up_next);
        g.add_edge(up, low);
        g.add_edge(up, low_next);
        g.add_edge(low, low_next);
        g.add_edge(11, low);
    }
    g
}

/// The cuboctahedron, built as the line graph of the cube.
pub fn cuboctahedron() -> SmallGraph {
    line_graph(&hypercube(3).expect("order 8")).expect("order 12")
}

/// Joins every pair of points at the minimum pairwise distance.
fn unit_distance_graph(points: &[[f64; 3]]) -> SmallGraph {
    let d2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>();
    let mut min = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            min = min.min(d2(&points[i], &points[j]));
        }
    }
    let mut g = SmallGraph::empty(points.len()).expect("small point set");
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (d2(&points[i], &points[j]) - min).abs() < 1e-6 * min {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Rhombicuboctahedron: all permutations of `(±1, ±1, ±(1+√2))`.
pub fn rhombicuboctahedron() -> SmallGraph {
    let a = 1.0 + std::f64::consts::SQRT_2;
    let mut pts = Vec::with_capacity(24);
    for big in 0..3 {
        for signs in 0..8u8 {
            let mut p = [1.0f64; 3];
            p[big] = a;
            for (i, x) in p.iter_mut().enumerate() {
                if signs >> i & 1 == 1 {
                    *x = -*x;
                }
            }
            pts.push(p);
        }
    }
    unit_distance_graph(&pts)
}

/// Snub cube: even permutations of `(±1, ±1/t, ±t)` with an even number of plus
/// signs together with odd permutations with an odd number, `t` the tribonacci constant.
pub fn snub_cube() -> SmallGraph {
    // t^3 = t^2 + t + 1
    let mut t = 1.8f64;
    for _ in 0..60 {
        t -= (t * t * t - t * t - t - 1.0) / (3.0 * t * t - 2.0 * t - 1.0);
    }
    let base = [1.0, 1.0 / t, t];
    let even: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let odd: [[usize; 3]; 3] = [[1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let mut pts = Vec::with_capacity(24);
    for (perms, parity) in [(even, 0u32), (odd, 1u32)] {
        for p in perms {
            for signs in 0..8u8 {
                let plus = 3 - signs.count_ones();
                if plus % 2 != parity {
                    continue;
                }
                let mut q = [0.0; 3];
                for i in 0..3 {
                    q[i] = if signs >> i & 1 == 1 { -base[p[i]] } else { base[p[i]] };
                }
                pts.push(q);
            }
        }
    }
    unit_distance_graph(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RcSignature;

    #[test]
    fn polyhedra_shapes() {
        for (g, n, e) in [
            (octahedron(), 6, 12),
            (icosahedron(), 12, 30),
            (cuboctahedron(), 12, 24),
            (rhombicuboctahedron(), 24, 48),
            (snub_cube(), 24, 60),
        ] {
            assert_eq!(g.order(), n);
            assert_eq!(g.edge_count(), e);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn small_family_signatures() {
        assert_eq!(cycle(4).unwrap().rc_signature(), RcSignature::new(2, 0));
        assert_eq!(complete(3).unwrap().rc_signature(), RcSignature::new(2, 1));
        assert_eq!(hypercube(3).unwrap().rc_signature(), RcSignature::new(3, 0));
        assert_eq!(octahedron().rc_signature(), RcSignature::new(4, 4));
        assert_eq!(antiprism(4).unwrap().rc_signature(), RcSignature::new(4, 3));
        assert_eq!(complete_bipartite(3, 3).unwrap().rc_signature(), RcSignature::new(3, 0));
    }
}
