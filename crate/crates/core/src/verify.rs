//! Exact checks on layouts and the closed-form crossing bounds.
//!
//! Two edges cross iff they are routed on the same side, share no endpoint,
//! and their endpoints interleave around the circle. Inner and outer edges
//! never cross.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::layout::{ConvexDrawing, Edge, Side};
use crate::packing::PackingLayout;

/// Per-edge crossing counts of a layout plus its host-graph summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub k: usize,
    pub multi_edges: Vec<(usize, usize)>,
    pub per_edge: Vec<(usize, usize, usize)>,
    pub degrees: Vec<usize>,
}

impl CrossingReport {
    pub fn total_crossings(&self) -> usize {
        self.per_edge.iter().map(|e| e.2).sum::<usize>() / 2
    }

    pub fn count_of(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.per_edge
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .ok()
            .map(|i| self.per_edge[i].2)
    }
}

/// How [`crossing_counts_with`] enumerates crossing pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Test every pair of edges.
    #[default]
    Pairwise,
    /// Interval counting with a Fenwick tree, `O(m log m)`.
    Sweep,
}

/// Whether two drawn edges cross.
pub fn edges_cross(e: &Edge, f: &Edge) -> bool {
    e.side == f.side
        && !e.shares_endpoint(f)
        && ((e.a < f.a && f.a < e.b && e.b < f.b) || (f.a < e.a && e.a < f.b && f.b < e.b))
}

fn all_edges(layout: &PackingLayout) -> Vec<Edge> {
    layout.drawings.iter().flat_map(|d| d.edges.iter().copied()).collect()
}

/// Every position pair drawn more than once, sorted.
pub fn has_multi_edges(layout: &PackingLayout) -> Vec<(usize, usize)> {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in all_edges(layout) {
        *count.entry(e.pair()).or_default() += 1;
    }
    count.into_iter().filter(|&(_, c)| c >= 2).map(|(p, _)| p).collect()
}

pub fn crossing_counts(layout: &PackingLayout) -> Result<CrossingReport> {
    crossing_counts_with(layout, CountMode::Pairwise)
}

pub fn crossing_counts_with(layout: &PackingLayout, mode: CountMode) -> Result<CrossingReport> {
    let multi = has_multi_edges(layout);
    if !multi.is_empty() {
        return Err(Error::MultiEdges(multi.len()));
    }
    let edges = all_edges(layout);
    let counts = match mode {
        CountMode::Pairwise => pairwise_counts(&edges),
        CountMode::Sweep => sweep_counts(&edges, layout.n),
    };
    let mut per_edge: Vec<(usize, usize, usize)> =
        edges.iter().zip(&counts).map(|(e, &c)| (e.a, e.b, c)).collect();
    per_edge.sort_unstable();
    Ok(CrossingReport {
        k: counts.iter().copied().max().unwrap_or(0),
        multi_edges: multi,
        per_edge,
        degrees: host_graph(layout).degrees,
    })
}

fn pairwise_counts(edges: &[Edge]) -> Vec<usize> {
    edges
        .par_iter()
        .map(|e| edges.iter().filter(|f| edges_cross(e, f)).count())
        .collect()
}

struct Fenwick(Vec<usize>);

impl Fenwick {
    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over indices `< i`.
    fn prefix(&self, i: usize) -> usize {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

// chi(e) = (endpoints strictly inside e) - 2 * (edges nested inside e)
//          - (edges sharing an endpoint with e whose other end is inside e)
fn sweep_counts(edges: &[Edge], n: usize) -> Vec<usize> {
    let mut out = vec![0; edges.len()];
    for side in [Side::Inner, Side::Outer] {
        let idx: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].side == side).collect();
        if idx.is_empty() {
            continue;
        }
        let mut prefix = vec![0usize; n + 1];
        let mut starts = vec![Vec::new(); n];
        let mut ends = vec![Vec::new(); n];
        for &i in &idx {
            let e = edges[i];
            prefix[e.a + 1] += 1;
            prefix[e.b + 1] += 1;
            starts[e.a].push(e.b);
            ends[e.b].push(e.a);
        }
        for x in 0..n {
            prefix[x + 1] += prefix[x];
        }
        starts.iter_mut().for_each(|v| v.sort_unstable());
        ends.iter_mut().for_each(|v| v.sort_unstable());

        let mut nested = vec![0; edges.len()];
        let mut by_a = idx.clone();
        by_a.sort_unstable_by_key(|&i| std::cmp::Reverse(edges[i].a));
        let mut tree = Fenwick(vec![0; n + 1]);
        let mut g = 0;
        while g < by_a.len() {
            let a = edges[by_a[g]].a;
            let mut h = g;
            while h < by_a.len() && edges[by_a[h]].a == a {
                h += 1;
            }
            for &i in &by_a[g..h] {
                nested[i] = tree.prefix(edges[i].b);
            }
            for &i in &by_a[g..h] {
                tree.add(edges[i].b);
            }
            g = h;
        }

        for &i in &idx {
            let e = edges[i];
            let inside = prefix[e.b] - prefix[e.a + 1];
            let touch = starts[e.a].partition_point(|&b| b < e.b)
                + (ends[e.b].len() - ends[e.b].partition_point(|&a| a <= e.a));
            out[i] = inside - 2 * nested[i] - touch;
        }
    }
    out
}

/// Maximum number of crossings on any edge.
pub fn k_of(layout: &PackingLayout) -> Result<usize> {
    Ok(crossing_counts(layout)?.k)
}

/// Crossings on each edge of `d1` caused by edges of `d2`, and vice versa.
pub fn pair_crossings(d1: &ConvexDrawing, d2: &ConvexDrawing) -> (Vec<usize>, Vec<usize>) {
    let count = |e: &Edge, other: &ConvexDrawing| other.edges.iter().filter(|f| edges_cross(e, f)).count();
    (
        d1.edges.iter().map(|e| count(e, d2)).collect(),
        d2.edges.iter().map(|e| count(e, d1)).collect(),
    )
}

/// Largest per-edge crossing count between two drawings.
pub fn max_pair_crossings(d1: &ConvexDrawing, d2: &ConvexDrawing) -> usize {
    let (x, y) = pair_crossings(d1, d2);
    x.into_iter().chain(y).max().unwrap_or(0)
}

/// Union-graph summary of a layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostGraph {
    pub degrees: Vec<usize>,
    pub simple: bool,
    /// Positions whose degree exceeds `n - 1`.
    pub over_degree: Vec<usize>,
    pub edge_count: usize,
}

pub fn host_graph(layout: &PackingLayout) -> HostGraph {
    let n = layout.n;
    let mut degrees = vec![0; n];
    let edges = all_edges(layout);
    for e in &edges {
        degrees[e.a] += 1;
        degrees[e.b] += 1;
    }
    let over_degree = (0..n).filter(|&p| degrees[p] + 1 > n).collect();
    HostGraph {
        degrees,
        simple: has_multi_edges(layout).is_empty(),
        over_degree,
        edge_count: edges.len(),
    }
}

/// Checks the spine index structure of a zig-zag drawing: upper-part spine
/// vertices sit at `start + c(Δ-1)`, lower-part ones at `r + d(Δ-1)`, and
/// adjacent spine vertices have `c + d` equal to `⌈σ/2⌉ - 1` or `⌈σ/2⌉`.
pub fn spine_index_check(d: &ConvexDrawing) -> bool {
    let Ok((delta, sigma)) = d.params() else {
        return false;
    };
    if delta < 2 || sigma < 2 {
        return false;
    }
    let n = d.n;
    let half = crate::layout::half_span(n, delta, sigma);
    let r = (d.start + half) % n;
    let step = delta - 1;
    // (upper?, c or d) per spine position
    let mut index: BTreeMap<usize, (bool, usize)> = BTreeMap::new();
    for p in d.spine_positions() {
        let off = (p + n - d.start) % n;
        let (upper, rel) = if off < half { (true, off) } else { (false, (p + n - r) % n) };
        if rel % step != 0 {
            return false;
        }
        index.insert(p, (upper, rel / step));
    }
    let hi = sigma.div_ceil(2);
    d.edges.iter().all(|e| match (index.get(&e.a), index.get(&e.b)) {
        (Some(&(ua, ca)), Some(&(ub, cb))) => ua != ub && (ca + cb == hi || ca + cb + 1 == hi),
        _ => true,
    })
}

/// Per-edge crossing bound for the union of two zig-zag drawings whose
/// starting points differ by `gap`.
pub fn bound_pair_crossings(delta1: usize, delta2: usize, gap: usize) -> u64 {
    2 * (delta1 + delta2) as u64 + 4 * gap as u64
}

/// Per-edge crossing bound for `h` rotated copies at offsets `0..h`.
pub fn bound_placement_crossings(delta: usize, h: usize) -> u64 {
    let (d, h) = (delta as u64, h as u64);
    (4 * d - 2) * h + 2 * h * h - 4 * d
}

/// Per-edge crossing bound for mixed-degree packings with largest degree `delta1`.
pub fn bound_mixed_crossings(delta1: usize, h: usize) -> u64 {
    let (d, h) = (delta1 as u64, h as u64);
    (d + 2) * h * h + 4 * d * (h.saturating_sub(1))
}

/// Quoted range for three copies with `Δ ∈ [4, 7]`. Direct substitution into
/// [`bound_placement_crossings`] gives [`three_placement_range`] instead, so
/// the `bounds` command flags the mismatch.
pub const PRINTED_THREE_PLACEMENT_RANGE: (u64, u64) = (86, 137);

/// Range of [`bound_placement_crossings`] over `Δ ∈ [4, 7]` at `h = 3`.
pub fn three_placement_range() -> (u64, u64) {
    (bound_placement_crossings(4, 3), bound_placement_crossings(7, 3))
}

pub type Rational = Ratio<i128>;

/// Lower bounds on `k` for a `k`-planar `h`-packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    /// `h²m² / (14.6 n²)`.
    pub general: (i128, i128),
    /// `h² / 58.4`, present for trees.
    pub trees: Option<(i128, i128)>,
    /// Smallest integer `k` compatible with every bound above.
    pub min_k: u64,
}

impl LowerBound {
    pub fn general_ratio(&self) -> Rational {
        Rational::new(self.general.0, self.general.1)
    }

    pub fn trees_ratio(&self) -> Option<Rational> {
        self.trees.map(|(a, b)| Rational::new(a, b))
    }
}

fn ceil_nonneg(r: Rational) -> u64 {
    r.ceil().to_integer() as u64
}

/// Evaluates the edge-density lower bound. The constants 14.6 and 58.4 are
/// taken as exact decimals.
pub fn lower_bound_k(n: usize, m: usize, h: usize, trees: bool) -> Result<LowerBound> {
    if n == 0 || m == 0 || h == 0 {
        return param("n, m and h must be positive");
    }
    if trees && m + 1 != n {
        return param(format!("a tree on {n} vertices has {} edges, not {m}", n - 1));
    }
    let (n, m, h) = (n as i128, m as i128, h as i128);
    let general = Rational::new(10 * h * h * m * m, 146 * n * n);
    let tree = trees.then(|| Rational::new(10 * h * h, 584));
    let min_k = tree.iter().chain([&general]).map(|&r| ceil_nonneg(r)).max().unwrap_or(0);
    Ok(LowerBound {
        general: (*general.numer(), *general.denom()),
        trees: tree.map(|r| (*r.numer(), *r.denom())),
        min_k,
    })
}

/// Lower bound on `k` for placing `h` copies of the center caterpillar, for `h ∈ {3, 4, 5}`.
pub fn small_h_lower_bound(h: usize) -> Option<u64> {
    match h {
        3 | 4 => Some(h as u64 - 1),
        5 => Some(5),
        _ => None,
    }
}

/// All closed-form bounds evaluated for one parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSheet {
    pub n: usize,
    pub deltas: Vec<usize>,
    pub h: usize,
    pub offset_gap: usize,
    pub pair_bound: Option<u64>,
    pub placement_bound: u64,
    pub mixed_bound: u64,
    pub lower_bound_general: (i128, i128),
    pub lower_bound_trees: (i128, i128),
    pub lower_bound_min_k: u64,
    pub small_h_bound: Option<u64>,
}

impl BoundSheet {
    /// `deltas` lists one spine degree per caterpillar, largest first.
    pub fn evaluate(n: usize, deltas: &[usize], offset_gap: usize) -> Result<Self> {
        let h = deltas.len();
        let Some(&d1) = deltas.first() else {
            return param("need at least one caterpillar");
        };
        if n < 3 {
            return param("n must be at least 3");
        }
        let lb = lower_bound_k(n, n - 1, h, true)?;
        Ok(BoundSheet {
            n,
            deltas: deltas.to_vec(),
            h,
            offset_gap,
            pair_bound: deltas.get(1).map(|&d2| bound_pair_crossings(d1, d2, offset_gap)),
            placement_bound: bound_placement_crossings(d1, h),
            mixed_bound: bound_mixed_crossings(d1, h),
            lower_bound_general: lb.general,
            lower_bound_trees: lb.trees.expect("trees bound requested"),
            lower_bound_min_k: lb.min_k,
            small_h_bound: small_h_lower_bound(h),
        })
    }
}
