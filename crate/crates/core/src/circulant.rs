//! Circulants `Circ(n, S)`, the orbit structure of their links, and the
//! synthesis of `(r, c)`-circulants from the `S_{k,j,l}` jump-set family.
//!
//! Residues are always normalised to `0..n`; `-x` means `n - x`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{choose2, GraphError, RcSignature, SmallGraph, DEFAULT_ORDER_CAP};

/// Largest order tried when scanning for a verifying circulant.
pub const SCAN_ORDER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CirculantError {
    #[error("circulant order must be at least 1")]
    EmptyOrder,
    #[error("jump {jump} outside 1..={max} for order {n}")]
    JumpOutOfRange { jump: usize, n: usize, max: usize },
    #[error("duplicate jump {0}")]
    DuplicateJump(usize),
    #[error("{{{0},{1}}} is not an edge of the link of 0")]
    EdgeNotInLink(usize, usize),
    #[error("jump-set family needs k > j >= 0 and k >= 1 (got k={k}, j={j})")]
    BadFamily { k: usize, j: usize },
    #[error("no circulant has c = {c}: link sizes of circulants are 0 or 1 mod 3")]
    Mod3Impossible { c: usize },
    #[error("c = {c} exceeds C(r,2) for r = {r}")]
    LinkTooLarge { r: usize, c: usize },
    #[error("r = {r} is below {min_r}, the smallest degree the constructions reach for c = {c}")]
    BelowBound { r: usize, c: usize, min_r: usize },
    #[error("no verifying order up to {cap} for ({r},{c})")]
    NoVerifiedOrder { r: usize, c: usize, cap: usize },
    #[error("cannot parse circulant spec {0:?}; expected \"n:s1,s2,...\"")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Order `n` and jump set `S ⊆ 1..=⌊n/2⌋`; stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CirculantSpec {
    n: usize,
    jumps: Vec<usize>,
}

impl CirculantSpec {
    pub fn new(n: usize, jumps: impl IntoIterator<Item = usize>) -> Result<Self, CirculantError> {
        if n == 0 {
            return Err(CirculantError::EmptyOrder);
        }
        let mut jumps: Vec<usize> = jumps.into_iter().collect();
        for &s in &jumps {
            if s == 0 || s > n / 2 {
                return Err(CirculantError::JumpOutOfRange { jump: s, n, max: n / 2 });
            }
        }
        jumps.sort_unstable();
        if let Some(w) = jumps.windows(2).find(|w| w[0] == w[1]) {
            return Err(CirculantError::DuplicateJump(w[0]));
        }
        Ok(Self { n, jumps })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    fn is_involution(&self, s: usize) -> bool {
        (2 * s) % self.n == 0
    }

    pub fn degree(&self) -> usize {
        let halves = self.jumps.iter().filter(|&&s| self.is_involution(s)).count();
        2 * self.jumps.len() - halves
    }

    fn neg(&self, x: usize) -> usize {
        (self.n - x % self.n) % self.n
    }

    fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        (a + self.n - b % self.n) % self.n
    }

    /// Membership bitmap of `S ∪ -S`, i.e. of `N(0)`.
    fn connection_set(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &s in &self.jumps {
            m[s] = true;
            m[self.neg(s)] = true;
        }
        m
    }

    fn in_jumps(&self, x: usize) -> bool {
        self.jumps.binary_search(&x).is_ok()
    }

    /// Edges `{a, b}` (`a < b`) of the subgraph induced by `N(0)`.
    pub fn link_edges(&self) -> Vec<(usize, usize)> {
        let conn = self.connection_set();
        let nbrs: Vec<usize> = (0..self.n).filter(|&x| conn[x]).collect();
        let mut out = Vec::new();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if conn[b - a] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `e(0)`, which equals `e(v)` for every vertex.
    pub fn link_size(&self) -> usize {
        self.link_edges().len()
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, s) in self.jumps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for CirculantSpec {
    type Err = CirculantError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || CirculantError::Parse(text.to_string());
        let (n, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let jumps = rest
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        CirculantSpec::new(n, jumps)
    }
}

impl TryFrom<String> for CirculantSpec {
    type Error = CirculantError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CirculantSpec> for String {
    fn from(s: CirculantSpec) -> String {
        s.to_string()
    }
}

pub fn make_circulant(spec: &CirculantSpec) -> Result<SmallGraph, CirculantError> {
    make_circulant_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn make_circulant_with_cap(spec: &CirculantSpec, cap: usize) -> Result<SmallGraph, CirculantError> {
    let n = spec.n;
    let mut g = SmallGraph::empty_with_cap(n, cap)?;
    for i in 0..n {
        for &s in &spec.jumps {
            let j = (i + s) % n;
            if i != j && !g.has_edge(i, j) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// An edge `{x, x + y}` of the link of 0 with `x ∈ S ∪ -S`, `y ∈ S`, and `x ∈ S`
/// whenever `y` is an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalEdge {
    pub x: usize,
    pub y: usize,
}

pub fn canonical_edge(spec: &CirculantSpec, edge: (usize, usize)) -> Result<CanonicalEdge, CirculantError> {
    let (a, b) = (edge.0 % spec.n, edge.1 % spec.n);
    let conn = spec.connection_set();
    if a == b || a == 0 || b == 0 || !conn[a] || !conn[b] {
        return Err(CirculantError::EdgeNotInLink(edge.0, edge.1));
    }
    let mut found = None;
    for (x, other) in [(a, b), (b, a)] {
        let y = spec.sub(other, x);
        if !spec.in_jumps(y) {
            continue;
        }
        if spec.is_involution(y) && !spec.in_jumps(x) {
            continue;
        }
        debug_assert!(found.is_none(), "two canonical forms for {{{a},{b}}}");
        found = Some(CanonicalEdge { x, y });
    }
    found.ok_or(CirculantError::EdgeNotInLink(edge.0, edge.1))
}

/// The edges of the link of 0 generated from one triangle `{0, x, x+y}` by
/// moving each of its vertices to 0 and by negation; sorted, each as `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeOrbit {
    pub edges: Vec<(usize, usize)>,
}

impl EdgeOrbit {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: (usize, usize)) -> bool {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.edges.binary_search(&e).is_ok()
    }
}

pub fn edge_orbit(spec: &CirculantSpec, e: CanonicalEdge) -> EdgeOrbit {
    let (x, y) = (e.x, e.y);
    let nx = spec.neg(x);
    let ny = spec.neg(y);
    let xy = spec.add(x, y);
    let nxy = spec.neg(xy);
    let mut edges: Vec<(usize, usize)> = [(x, xy), (y, xy), (x, ny), (y, nx), (nx, nxy), (ny, nxy)]
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    EdgeOrbit { edges }
}

/// Partitions the link edges of 0 into orbits, in order of each orbit's least edge.
pub fn orbit_partition(spec: &CirculantSpec) -> Vec<EdgeOrbit> {
    let edges = spec.link_edges();
    let mut covered = vec![false; edges.len()];
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        if covered[i] {
            continue;
        }
        let ce = canonical_edge(spec, e).expect("link edges have canonical forms");
        let orbit = edge_orbit(spec, ce);
        for f in &orbit.edges {
            if let Ok(k) = edges.binary_search(f) {
                covered[k] = true;
            }
        }
        out.push(orbit);
    }
    out
}

/// `e(0) mod 3`.
pub fn mod3_class(spec: &CirculantSpec) -> usize {
    spec.link_size() % 3
}

/// Parameters of `S_{k,j,l} = {1, …, k−1, k+j} ∪ {the first l terms of 2(k+j)+1, step k+j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSetFamily {
    pub k: usize,
    pub j: usize,
    pub l: usize,
}

impl JumpSetFamily {
    pub fn new(k: usize, j: usize, l: usize) -> Result<Self, CirculantError> {
        if k == 0 || j >= k {
            return Err(CirculantError::BadFamily { k, j });
        }
        Ok(Self { k, j, l })
    }
}

pub fn build_jump_set(f: JumpSetFamily) -> Result<Vec<usize>, CirculantError> {
    let JumpSetFamily { k, j, l } = JumpSetFamily::new(f.k, f.j, f.l)?;
    let mut s: Vec<usize> = (1..k).collect();
    s.push(k + j);
    let (start, step) = (2 * (k + j) + 1, k + j + 1);
    s.extend((0..l).map(|i| start + i * step));
    Ok(s)
}

/// `3·C(k−1, 2) + 3(k−1−j)`, plus one for the unit orbit.
pub fn link_edge_formula(k: usize, j: usize, with_unit_orbit: bool) -> usize {
    assert!(k > j, "need k > j");
    3 * choose2(k - 1) + 3 * (k - 1 - j) + with_unit_orbit as usize
}

/// The least `k` with `3·C(k−1,2) <= base <= 3·C(k,2)` and the `j` giving exactly `base`.
/// `base` must be a multiple of 3.
pub fn family_for_link(base: usize) -> (usize, usize) {
    debug_assert_eq!(base % 3, 0);
    let mut k = 1;
    while 3 * choose2(k) < base {
        k += 1;
    }
    let j = k - 1 - (base - 3 * choose2(k - 1)) / 3;
    (k, j)
}

/// Builds the circulant and checks it is an `(r, c)`-graph.
fn verifies(spec: &CirculantSpec, sig: RcSignature) -> bool {
    spec.degree() == sig.r
        && spec.link_size() == sig.c
        && make_circulant_with_cap(spec, SCAN_ORDER_CAP)
            .map(|g| g.rc_signature() == Some(sig))
            .unwrap_or(false)
}

/// Jump set for a given `n`; extra entries are `n/3` or `n/2`.
#[derive(Clone, Copy)]
enum Extra {
    Third,
    Half,
}

fn scan(
    sig: RcSignature,
    base: &[usize],
    extras: &[Extra],
    start: usize,
    step: usize,
) -> Result<CirculantSpec, CirculantError> {
    let mut n = start;
    while n <= SCAN_ORDER_CAP {
        let mut jumps = base.to_vec();
        jumps.extend(extras.iter().map(|e| match e {
            Extra::Third => n / 3,
            Extra::Half => n / 2,
        }));
        if let Ok(spec) = CirculantSpec::new(n, jumps) {
            if verifies(&spec, sig) {
                return Ok(spec);
            }
        }
        n += step;
    }
    Err(CirculantError::NoVerifiedOrder {
        r: sig.r,
        c: sig.c,
        cap: SCAN_ORDER_CAP,
    })
}

fn round_up(x: usize, m: usize) -> usize {
    x.div_ceil(m) * m
}

/// An `(r, c)`-circulant built from the `S_{k,j,l}` family, with the smallest
/// order within the recipe that verifies.
///
/// * `c ≡ 0 (mod 3)`: `S_{k,j,l}` with `r = 2(k+l)`, or `S_{k,j,l} ∪ {n/2}` with `r = 2(k+l)+1`.
/// * `c ≡ 1 (mod 3)`, `r` even: `S_{k,j,l−1} ∪ {n/3}` with `3 | n`, `n/3 > max`; for
///   `l = 0` the orders `3k` and `3(k+j)` are tried with `S_{k,j,0}`.
/// * `c ≡ 1 (mod 3)`, `r` odd: `S_{k,j,l−1} ∪ {n/3, n/2}` with `6 | n`, `n/6 > max`.
/// * `r = 1`, `c = 0`: `Circ(2, {1})`.
pub fn construct_rc_circulant(r: usize, c: usize) -> Result<CirculantSpec, CirculantError> {
    if c > choose2(r) {
        return Err(CirculantError::LinkTooLarge { r, c });
    }
    let sig = RcSignature { r, c };
    match c % 3 {
        2 => Err(CirculantError::Mod3Impossible { c }),
        _ if r == 0 => Ok(CirculantSpec::new(1, [])?),
        _ if r == 1 => Ok(CirculantSpec::new(2, [1])?),
        0 => {
            let (k, j) = family_for_link(c);
            if r < 2 * k {
                return Err(CirculantError::BelowBound { r, c, min_r: 2 * k });
            }
            let l = r / 2 - k;
            let base = build_jump_set(JumpSetFamily::new(k, j, l)?)?;
            let max = *base.last().expect("S_{k,j} is non-empty");
            if r % 2 == 0 {
                scan(sig, &base, &[], 2 * max + 1, 1)
            } else {
                scan(sig, &base, &[Extra::Half], 2 * max + 2, 2)
            }
        }
        _ => {
            let (k, j) = family_for_link(c - 1);
            if r % 2 == 0 {
                if r < 2 * k {
                    return Err(CirculantError::BelowBound { r, c, min_r: 2 * k });
                }
                let l = r / 2 - k;
                if l == 0 {
                    let base = build_jump_set(JumpSetFamily::new(k, j, 0)?)?;
                    for n in [3 * k, 3 * (k + j)] {
                        if let Ok(spec) = CirculantSpec::new(n, base.clone()) {
                            if verifies(&spec, sig) {
                                return Ok(spec);
                            }
                        }
                    }
                    return Err(CirculantError::BelowBound { r, c, min_r: 2 * k + 2 });
                }
                let base = build_jump_set(JumpSetFamily::new(k, j, l - 1)?)?;
                let max = *base.last().expect("non-empty");
                scan(sig, &base, &[Extra::Third], 3 * (max + 1), 3)
            } else {
                if r < 2 * k + 3 {
                    return Err(CirculantError::BelowBound { r, c, min_r: 2 * k + 3 });
                }
                let l = (r - 1) / 2 - k;
                let base = build_jump_set(JumpSetFamily::new(k, j, l - 1)?)?;
                let max = *base.last().expect("non-empty");
                scan(sig, &base, &[Extra::Third, Extra::Half], round_up(6 * (max + 1), 6), 6)
            }
        }
    }
}
