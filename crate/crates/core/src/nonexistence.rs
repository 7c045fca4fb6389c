//! Nonexistence certificates for `(r, c)`-graphs and `(r, c)`-planar graphs.
//!
//! Every certificate records enough to be re-derived by [`verify_certificate`]
//! without any search beyond re-enumerating the candidate links.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form_unchecked, CanonicalForm};
use crate::graph::{choose2, SmallGraph};
use crate::graph6;
use crate::planarity::is_planar;

/// Largest link order [`enumerate_links`] accepts.
pub const MAX_LINK_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonexistenceError {
    #[error("link order {r} exceeds {max}")]
    LinkOrderTooLarge { r: usize, max: usize },
    #[error("c = {c} exceeds C(r,2) for r = {r}")]
    LinkTooLarge { r: usize, c: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `c = C(r,2) − k` with `k >= 1` and `r >= 3k`.
    Fact3,
    /// Every candidate link has a vertex whose own link cannot reach `c` edges.
    BadLinks,
    /// Average-degree arithmetic for planar graphs; `case` is `i`, `ii` or `iii`.
    PlanarArithmetic,
    /// Planar graphs have a vertex of degree at most 5.
    PlanarMinDegree,
    /// The closed neighbourhood cannot be planar.
    PlanarClosedNbhd,
    /// `r·n` is odd.
    Handshake,
    /// Circulant links have `e(0) ≡ 0, 1 (mod 3)`.
    Mod3Circulant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanarCase {
    I,
    Ii,
    Iii,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateParams {
    pub r: usize,
    pub c: usize,
    /// Only planar graphs are ruled out.
    #[serde(default)]
    pub planar: bool,
    /// Only circulants are ruled out.
    #[serde(default)]
    pub circulant: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<PlanarCase>,
    /// Order ruled out by a handshake certificate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Edges of `N[v]` against the planar limit `3(r+1) − 6`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planar_edge_limit: Option<usize>,
    /// Number of candidate links checked (each with a dominating vertex added).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
}

impl CertificateParams {
    fn new(r: usize, c: usize) -> Self {
        Self {
            r,
            c,
            ..Self::default()
        }
    }
}

/// A candidate link with the vertex `a` ruling it out and the bound on `e(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkWitness {
    /// Canonical graph6 of the link; `bad_vertex` indexes into this labelling.
    pub graph6: String,
    pub bad_vertex: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonexistenceCertificate {
    pub kind: CertificateKind,
    pub params: CertificateParams,
    #[serde(default)]
    pub links: Vec<LinkWitness>,
}

impl NonexistenceCertificate {
    fn bare(kind: CertificateKind, params: CertificateParams) -> Self {
        Self {
            kind,
            params,
            links: Vec::new(),
        }
    }
}

/// No `(r, C(r,2) − k)`-graph exists when `k >= 1` and `r >= 3k`.
pub fn fact3_check(r: usize, c: usize) -> Option<NonexistenceCertificate> {
    let k = choose2(r).checked_sub(c)?;
    (k >= 1 && r >= 3 * k).then(|| {
        NonexistenceCertificate::bare(
            CertificateKind::Fact3,
            CertificateParams {
                k: Some(k),
                ..CertificateParams::new(r, c)
            },
        )
    })
}

/// No graph of order `n` is `r`-regular when `r·n` is odd.
pub fn handshake_check(r: usize, n: usize) -> Option<NonexistenceCertificate> {
    ((r * n) % 2 == 1).then(|| {
        NonexistenceCertificate::bare(
            CertificateKind::Handshake,
            CertificateParams {
                n: Some(n),
                ..CertificateParams::new(r, 0)
            },
        )
    })
}

/// No `(r, c)`-circulant exists when `c ≡ 2 (mod 3)`.
pub fn mod3_circulant_check(r: usize, c: usize) -> Option<NonexistenceCertificate> {
    (c % 3 == 2 && c <= choose2(r)).then(|| {
        NonexistenceCertificate::bare(
            CertificateKind::Mod3Circulant,
            CertificateParams {
                circulant: true,
                ..CertificateParams::new(r, c)
            },
        )
    })
}

/// All graphs on `r` vertices with `c` edges up to isomorphism, sorted by canonical form.
pub fn enumerate_links(r: usize, c: usize) -> Result<Vec<SmallGraph>, NonexistenceError> {
    if r > MAX_LINK_ORDER {
        return Err(NonexistenceError::LinkOrderTooLarge {
            r,
            max: MAX_LINK_ORDER,
        });
    }
    if c > choose2(r) {
        return Err(NonexistenceError::LinkTooLarge { r, c });
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form_unchecked(&SmallGraph::empty(1).expect("order 1")));
    for k in 1..r {
        // edges still addable once this vertex and the rest are placed
        let addable_after = choose2(r) - choose2(k + 1);
        let mut next = BTreeSet::new();
        for cf in &level {
            let g = cf.into_graph();
            let m = g.edge_count();
            for mask in 0u32..1 << k {
                let e = m + mask.count_ones() as usize;
                if e > c || e + addable_after < c {
                    continue;
                }
                let nbrs: Vec<usize> = (0..k).filter(|&v| mask >> v & 1 == 1).collect();
                next.insert(canonical_form_unchecked(&g.with_new_vertex(&nbrs)));
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|cf| cf.into_graph()).collect())
}

/// Upper bound on `e(a)` for `a` in the link `H = G[N(v)]` of an `r`-regular host `G`:
/// `deg_H(a) + |E(H[N_H(a)])| + Σ_{b ∈ N_H(a)} min(|Z|, max(0, r−1−deg_H(b))) + C(|Z|, 2)`
/// with `|Z| = r − 1 − deg_H(a)`.
pub fn bad_vertex_bound(h: &SmallGraph, a: usize, r: usize) -> usize {
    let da = h.degree(a);
    let z = (r - 1).saturating_sub(da);
    let among = h.link_size(a);
    let outside: usize = h
        .neighbors(a)
        .map(|b| z.min((r - 1).saturating_sub(h.degree(b))))
        .sum();
    da + among + outside + choose2(z)
}

/// The vertex of `h` with the least bound, ties to the smallest index.
fn worst_vertex(h: &SmallGraph, r: usize) -> (usize, usize) {
    (0..h.order())
        .map(|a| (a, bad_vertex_bound(h, a, r)))
        .min_by_key(|&(a, b)| (b, a))
        .expect("links are non-empty")
}

/// A [`CertificateKind::BadLinks`] certificate when every candidate link has a
/// vertex whose bound falls below `c`.
pub fn bad_link_certificate(r: usize, c: usize) -> Option<NonexistenceCertificate> {
    if r == 0 {
        return None;
    }
    let links = enumerate_links(r, c).ok()?;
    let mut witnesses = Vec::with_capacity(links.len());
    for h in &links {
        let (a, bound) = worst_vertex(h, r);
        if bound >= c {
            return None;
        }
        witnesses.push(LinkWitness {
            graph6: graph6::encode(h),
            bad_vertex: a,
            bound,
        });
    }
    Some(NonexistenceCertificate {
        kind: CertificateKind::BadLinks,
        params: CertificateParams::new(r, c),
        links: witnesses,
    })
}

/// The `C(r,2) − k` bound, then the bad-link argument.
pub fn certify_nonexistence(r: usize, c: usize) -> Option<NonexistenceCertificate> {
    fact3_check(r, c).or_else(|| bad_link_certificate(r, c))
}

/// The link `H` joined to a dominating vertex.
fn with_apex(h: &SmallGraph) -> SmallGraph {
    let all: Vec<usize> = (0..h.order()).collect();
    h.with_new_vertex(&all)
}

fn planar(kind: CertificateKind, params: CertificateParams) -> NonexistenceCertificate {
    NonexistenceCertificate::bare(
        kind,
        CertificateParams {
            planar: true,
            ..params
        },
    )
}

/// Certificates that no `(r, c)`-planar graph exists. Checks, in order: minimum
/// degree (`r >= 6`), cases i–iii, the `C(r,2) − k` bound, an edge excess in `N[v]`, that no
/// candidate link plus a dominating vertex is planar, and finally bad links.
pub fn planar_arithmetic(r: usize, c: usize) -> Option<NonexistenceCertificate> {
    if c > choose2(r) {
        return None;
    }
    let base = CertificateParams::new(r, c);
    if r >= 6 {
        return Some(planar(CertificateKind::PlanarMinDegree, base));
    }
    let case = match (r, c) {
        (4..=5, 0) => Some(PlanarCase::I),
        (5, 1..=3) => Some(PlanarCase::Ii),
        (_, 6) => Some(PlanarCase::Iii),
        _ => None,
    };
    if let Some(case) = case {
        return Some(planar(
            CertificateKind::PlanarArithmetic,
            CertificateParams {
                case: Some(case),
                ..base
            },
        ));
    }
    if let Some(mut cert) = fact3_check(r, c) {
        cert.params.planar = true;
        return Some(cert);
    }
    let closed = r + c;
    let limit = (3 * (r + 1)).saturating_sub(6);
    if r + 1 >= 3 && closed > limit {
        return Some(planar(
            CertificateKind::PlanarClosedNbhd,
            CertificateParams {
                closed_edges: Some(closed),
                planar_edge_limit: Some(limit),
                ..base
            },
        ));
    }
    let links = enumerate_links(r, c).ok()?;
    if r >= 1 && links.iter().all(|h| !is_planar(&with_apex(h))) {
        return Some(planar(
            CertificateKind::PlanarClosedNbhd,
            CertificateParams {
                candidates: Some(links.len()),
                ..base
            },
        ));
    }
    // no (r, c)-graph at all
    bad_link_certificate(r, c).map(|mut cert| {
        cert.params.planar = true;
        cert
    })
}

/// Re-derives `cert` from scratch and checks it rules out `(r, c)`.
pub fn verify_certificate(cert: &NonexistenceCertificate, r: usize, c: usize) -> bool {
    let p = &cert.params;
    if p.r != r || (p.c != c && cert.kind != CertificateKind::Handshake) {
        return false;
    }
    if c > choose2(r) {
        return false;
    }
    let limit = (3 * (r + 1)).saturating_sub(6);
    match cert.kind {
        CertificateKind::Fact3 => {
            let k = choose2(r) - c;
            p.k == Some(k) && k >= 1 && r >= 3 * k
        }
        CertificateKind::Handshake => p.n.is_some_and(|n| (r * n) % 2 == 1),
        CertificateKind::Mod3Circulant => p.circulant && c % 3 == 2,
        CertificateKind::PlanarMinDegree => p.planar && r >= 6,
        CertificateKind::PlanarArithmetic => {
            p.planar
                && match p.case {
                    Some(PlanarCase::I) => r >= 4 && c == 0,
                    Some(PlanarCase::Ii) => r == 5 && (1..=3).contains(&c),
                    Some(PlanarCase::Iii) => c == 6 && r <= 5,
                    None => false,
                }
        }
        CertificateKind::PlanarClosedNbhd => {
            if !p.planar {
                return false;
            }
            if let (Some(closed), Some(lim)) = (p.closed_edges, p.planar_edge_limit) {
                return r + 1 >= 3 && closed == r + c && lim == limit && closed > lim;
            }
            match (p.candidates, enumerate_links(r, c)) {
                (Some(count), Ok(links)) => {
                    r >= 1 && links.len() == count && links.iter().all(|h| !is_planar(&with_apex(h)))
                }
                _ => false,
            }
        }
        CertificateKind::BadLinks => verify_bad_links(cert, r, c),
    }
}

fn verify_bad_links(cert: &NonexistenceCertificate, r: usize, c: usize) -> bool {
    let Ok(links) = enumerate_links(r, c) else {
        return false;
    };
    if r == 0 || links.len() != cert.links.len() {
        return false;
    }
    let mut covered = BTreeSet::new();
    for w in &cert.links {
        let Ok(h) = graph6::decode(&w.graph6) else {
            return false;
        };
        if h.order() != r || h.edge_count() != c || w.bad_vertex >= r {
            return false;
        }
        let bound = bad_vertex_bound(&h, w.bad_vertex, r);
        if bound != w.bound || bound >= c {
            return false;
        }
        covered.insert(canonical_form_unchecked(&h));
    }
    links.iter().all(|h| covered.contains(&canonical_form_unchecked(h)))
}
