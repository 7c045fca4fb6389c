//! Exhaustive generation of `(r, c)`-graphs by adding vertices one at a time.
//!
//! Each level holds the pairwise non-isomorphic partial graphs on `k` vertices
//! that survive [`prune`]; the next level is every surviving one-vertex
//! extension, canonicalised and deduplicated. Levels are processed with rayon
//! and sorted by canonical form, so results do not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::canon::{canonical_form_unchecked, CanonicalForm};
use crate::graph::{choose2, RcSignature, SmallGraph};
use crate::planarity::is_planar;

/// Neighbour sets are `u64` masks.
pub const MAX_SEARCH_ORDER: usize = 64;
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
pub const DEFAULT_MAX_SECONDS: u64 = 600;
pub const BUDGET_ENV: &str = "RC_BUDGET_SECONDS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search order {n} exceeds {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("c = {c} exceeds C(r,2) for r = {r}")]
    LinkTooLarge { r: usize, c: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    AllGraphs,
    /// Only the witness with the least canonical form is kept.
    FirstFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_nodes: u64::MAX,
            max_time: Duration::MAX,
        }
    }
}

impl Default for Budget {
    /// `10^8` nodes or 600 s; the time part can be overridden through `RC_BUDGET_SECONDS`.
    fn default() -> Self {
        let secs = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .unwrap_or(DEFAULT_MAX_SECONDS);
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            max_time: Duration::from_secs(secs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub planar_only: bool,
    /// Maximum number of results; 0 keeps all.
    pub limit: usize,
    pub mode: SearchMode,
    pub budget: Budget,
}

impl SearchConfig {
    pub fn new(n: usize, r: usize, c: usize) -> Self {
        Self {
            n,
            r,
            c,
            planar_only: false,
            limit: 0,
            mode: SearchMode::AllGraphs,
            budget: Budget::default(),
        }
    }

    pub fn planar(mut self, planar_only: bool) -> Self {
        self.planar_only = planar_only;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n > MAX_SEARCH_ORDER {
            return Err(SearchError::OrderTooLarge {
                n: self.n,
                max: MAX_SEARCH_ORDER,
            });
        }
        if self.c > choose2(self.r) {
            return Err(SearchError::LinkTooLarge { r: self.r, c: self.c });
        }
        Ok(())
    }

    /// No graph can exist: empty order, degree too large, or odd degree sum.
    fn trivially_empty(&self) -> bool {
        self.n == 0 || self.r >= self.n || (self.r * self.n) % 2 == 1
    }
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub pruned_degree: u64,
    pub pruned_link: u64,
    pub pruned_feasibility: u64,
    pub isomorphs_rejected: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.pruned_degree += other.pruned_degree;
        self.pruned_link += other.pruned_link;
        self.pruned_feasibility += other.pruned_feasibility;
        self.isomorphs_rejected += other.isomorphs_rejected;
        self.elapsed += other.elapsed;
    }
}

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    degree: AtomicU64,
    link: AtomicU64,
    feasibility: AtomicU64,
}

impl Counters {
    fn record(&self, reason: CutReason) {
        let slot = match reason {
            CutReason::Degree => &self.degree,
            CutReason::Link => &self.link,
            // planarity is a feasibility condition on the completion
            CutReason::Feasibility | CutReason::Planar => &self.feasibility,
        };
        slot.fetch_add(1, Ordering::Relaxed);
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Sorted by canonical form.
    pub graphs: Vec<SmallGraph>,
    pub stats: SearchStats,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutReason {
    Degree,
    Link,
    Feasibility,
    Planar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prune {
    Keep,
    Cut(CutReason),
}

/// Decides whether `partial` (the first `k` of `cfg.n` vertices) can still be
/// completed by adding vertices only.
///
/// Cuts when some vertex has degree above `r`, `e(v) > c`, `deg(v) = r` with
/// `e(v) != c`, when `v` cannot reach `c` link edges even if every possible
/// future edge lands in its link, when residual degrees cannot be met by the
/// remaining vertices, or (planar searches) when `partial` is nonplanar.
pub fn prune(partial: &SmallGraph, cfg: &SearchConfig) -> Prune {
    let k = partial.order();
    let (r, c) = (cfg.r, cfg.c);
    let left = cfg.n.saturating_sub(k);
    let degrees = partial.degrees();
    if degrees.iter().any(|&d| d > r) {
        return Prune::Cut(CutReason::Degree);
    }
    let mut link_cut = false;
    for v in 0..k {
        let d = degrees[v];
        let e = partial.link_size(v);
        if e > c || (d == r && e != c) {
            return Prune::Cut(CutReason::Link);
        }
        let free = r - d;
        let reach = e
            + partial
                .neighbors(v)
                .map(|u| free.min(r - degrees[u]))
                .sum::<usize>()
            + choose2(free);
        link_cut |= reach < c;
    }
    if link_cut {
        return Prune::Cut(CutReason::Link);
    }
    let residual: usize = degrees.iter().map(|&d| r - d).sum();
    if degrees.iter().any(|&d| r - d > left) || residual > r * left {
        return Prune::Cut(CutReason::Feasibility);
    }
    if cfg.planar_only && !is_planar(partial) {
        return Prune::Cut(CutReason::Planar);
    }
    Prune::Keep
}

/// Neighbour masks for a new vertex among `eligible`, with size in `lo..=hi`,
/// in increasing numeric order.
fn neighbour_masks(eligible: &[usize], lo: usize, hi: usize) -> Vec<u64> {
    fn rec(eligible: &[usize], from: usize, mask: u64, size: usize, lo: usize, hi: usize, out: &mut Vec<u64>) {
        if size >= lo {
            out.push(mask);
        }
        if size == hi {
            return;
        }
        for i in from..eligible.len() {
            rec(eligible, i + 1, mask | 1 << eligible[i], size + 1, lo, hi, out);
        }
    }
    let mut out = Vec::new();
    if lo <= hi.min(eligible.len()) {
        rec(eligible, 0, 0, 0, lo, hi.min(eligible.len()), &mut out);
    }
    out.sort_unstable();
    out
}

fn extend_counted(partial: &SmallGraph, cfg: &SearchConfig, counters: &Counters) -> Vec<SmallGraph> {
    counters.nodes.fetch_add(1, Ordering::Relaxed);
    let k = partial.order();
    if k >= cfg.n {
        return Vec::new();
    }
    let eligible: Vec<usize> = (0..k).filter(|&v| partial.degree(v) < cfg.r).collect();
    let after = cfg.n - k - 1;
    let lo = cfg.r.saturating_sub(after);
    let mut out = Vec::new();
    let mut nbrs = Vec::with_capacity(cfg.r);
    for mask in neighbour_masks(&eligible, lo, cfg.r) {
        nbrs.clear();
        nbrs.extend((0..k).filter(|&v| mask >> v & 1 == 1));
        let child = partial.with_new_vertex(&nbrs);
        match prune(&child, cfg) {
            Prune::Keep => out.push(child),
            Prune::Cut(reason) => counters.record(reason),
        }
    }
    out
}

/// All one-vertex extensions of `partial` that survive [`prune`].
pub fn extend_one_vertex(partial: &SmallGraph, cfg: &SearchConfig) -> Vec<SmallGraph> {
    extend_counted(partial, cfg, &Counters::default())
}

/// All pairwise non-isomorphic `(r, c)`-graphs of order `cfg.n`, planar ones
/// only when requested, sorted by canonical form and truncated to `cfg.limit`.
pub fn generate_rc_graphs(cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    cfg.validate()?;
    let start = Instant::now();
    let counters = Counters::default();
    let mut stats = SearchStats::default();
    if cfg.trivially_empty() {
        stats.elapsed = start.elapsed();
        return Ok(SearchOutcome {
            graphs: Vec::new(),
            stats,
            complete: true,
        });
    }

    let root = SmallGraph::empty(1).expect("order 1");
    let mut level: Vec<(CanonicalForm, SmallGraph)> = match prune(&root, cfg) {
        Prune::Keep => vec![(canonical_form_unchecked(&root), root)],
        Prune::Cut(reason) => {
            counters.record(reason);
            Vec::new()
        }
    };
    let exhausted = AtomicBool::new(false);
    let over_budget = || {
        counters.nodes.load(Ordering::Relaxed) >= cfg.budget.max_nodes || start.elapsed() >= cfg.budget.max_time
    };

    for _ in 1..cfg.n {
        if level.is_empty() {
            break;
        }
        let mut children: Vec<(CanonicalForm, SmallGraph)> = level
            .par_iter()
            .flat_map_iter(|(_, g)| {
                if exhausted.load(Ordering::Relaxed) || over_budget() {
                    exhausted.store(true, Ordering::Relaxed);
                    return Vec::new();
                }
                extend_counted(g, cfg, &counters)
                    .into_iter()
                    .map(|h| {
                        let cf = canonical_form_unchecked(&h);
                        let canon = cf.into_graph();
                        (cf, canon)
                    })
                    .collect()
            })
            .collect();
        let before = children.len();
        children.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        children.dedup_by(|a, b| a.0 == b.0);
        stats.isomorphs_rejected += (before - children.len()) as u64;
        level = children;
        if exhausted.load(Ordering::Relaxed) {
            break;
        }
    }

    let complete = !exhausted.load(Ordering::Relaxed);
    let target = RcSignature { r: cfg.r, c: cfg.c };
    let mut graphs: Vec<SmallGraph> = level
        .into_iter()
        .filter(|(_, g)| g.order() == cfg.n)
        .map(|(_, g)| g)
        .collect();
    debug_assert!(graphs.iter().all(|g| g.rc_signature() == Some(target)));
    graphs.retain(|g| g.rc_signature() == Some(target));
    let keep = match (cfg.mode, cfg.limit) {
        (SearchMode::FirstFound, _) => 1,
        (_, 0) => usize::MAX,
        (_, l) => l,
    };
    graphs.truncate(keep);

    stats.nodes_expanded = counters.nodes.load(Ordering::Relaxed);
    stats.pruned_degree = counters.degree.load(Ordering::Relaxed);
    stats.pruned_link = counters.link.load(Ordering::Relaxed);
    stats.pruned_feasibility = counters.feasibility.load(Ordering::Relaxed);
    stats.elapsed = start.elapsed();
    Ok(SearchOutcome {
        graphs,
        stats,
        complete,
    })
}

#[derive(Debug, Clone)]
pub struct SmallestOutcome {
    /// Witness with the least canonical form at the smallest order found.
    pub witness: Option<(SmallGraph, usize)>,
    /// Largest order whose search finished; every order up to it below the
    /// witness order holds no `(r, c)`-graph.
    pub last_completed_n: Option<usize>,
    pub complete: bool,
    pub stats: SearchStats,
}

/// Smallest `n <= n_max` admitting an `(r, c)`-graph (planar if requested).
/// The budget applies to each order separately.
pub fn smallest_rc_graph(
    r: usize,
    c: usize,
    n_max: usize,
    planar_only: bool,
    budget: Budget,
) -> Result<SmallestOutcome, SearchError> {
    if c > choose2(r) {
        return Err(SearchError::LinkTooLarge { r, c });
    }
    let mut stats = SearchStats::default();
    let mut last_completed_n = None;
    for n in (r + 1)..=n_max {
        let cfg = SearchConfig::new(n, r, c)
            .planar(planar_only)
            .mode(SearchMode::FirstFound)
            .budget(budget);
        let out = generate_rc_graphs(&cfg)?;
        stats.absorb(&out.stats);
        if let Some(g) = out.graphs.into_iter().next() {
            return Ok(SmallestOutcome {
                witness: Some((g, n)),
                last_completed_n,
                complete: out.complete,
                stats,
            });
        }
        if !out.complete {
            return Ok(SmallestOutcome {
                witness: None,
                last_completed_n,
                complete: false,
                stats,
            });
        }
        last_completed_n = Some(n);
    }
    Ok(SmallestOutcome {
        witness: None,
        last_completed_n,
        complete: true,
        stats,
    })
}
