//! Brute-force ground truth: exhaustive packing search, a coordinate-based
//! crossing counter, and an offset-schedule optimizer for small instances.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::caterpillar::{make_regular_caterpillar, placement_violations, Caterpillar};
use crate::error::{param, Error, Result};
use crate::layout::{half_span, rotate, zigzag_drawing, ConvexDrawing, Edge, Side};
use crate::packing::PackingLayout;
use crate::verify::{has_multi_edges, host_graph, k_of, CrossingReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Stop at the first packing found.
    #[default]
    ExistsPacking,
    /// Enumerate every canonical packing.
    CountSolutions,
}

#[derive(Debug, Clone)]
pub struct SearchInstance {
    pub caterpillars: Vec<Caterpillar>,
    pub mode: SearchMode,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

impl SearchInstance {
    pub fn new(caterpillars: Vec<Caterpillar>) -> Self {
        SearchInstance {
            caterpillars,
            mode: SearchMode::ExistsPacking,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
        }
    }

    /// `h` copies of the `delta`-regular caterpillar with `sigma` spine vertices.
    pub fn copies(delta: usize, sigma: usize, h: usize) -> Result<Self> {
        if h == 0 {
            return param("need at least one copy");
        }
        let c = make_regular_caterpillar(delta, sigma)?;
        Ok(SearchInstance::new(vec![c; h]))
    }

    pub fn n(&self) -> usize {
        self.caterpillars.first().map_or(0, Caterpillar::n)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.caterpillars.is_empty() {
            return param("instance has no caterpillars");
        }
        if self.caterpillars.iter().any(|c| c.n() != n) {
            return param("caterpillars must share n");
        }
        if n > 64 {
            return param(format!("n = {n} exceeds the search limit of 64"));
        }
        if self.node_budget == 0 || self.time_budget.is_some_and(|t| t.is_zero()) {
            return param("budgets must be positive");
        }
        Ok(())
    }
}

/// Vertex-to-slot mapping of every caterpillar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub mappings: Vec<Vec<usize>>,
}

impl Certificate {
    /// The packing as a layout, every edge drawn inside.
    pub fn to_layout(&self, caterpillars: &[Caterpillar]) -> Result<PackingLayout> {
        let drawings = caterpillars
            .iter()
            .zip(&self.mappings)
            .map(|(c, m)| ConvexDrawing {
                n: self.n,
                start: m[c.spine()[0]],
                edges: c
                    .edges()
                    .into_iter()
                    .map(|(a, b)| Edge::new(m[a], m[b], Side::Inner))
                    .collect(),
                delta: c.regularity(),
                sigma: Some(c.sigma()),
                assign: Some(m.clone()),
            })
            .collect();
        PackingLayout::new(self.n, drawings)
    }

    /// No repeated edge, every copy spanning, no slot over degree `n - 1`.
    pub fn check(&self, caterpillars: &[Caterpillar]) -> Result<()> {
        let layout = self.to_layout(caterpillars)?;
        let multi = has_multi_edges(&layout);
        if !multi.is_empty() {
            return Err(Error::Verification(format!("duplicated edges {multi:?}")));
        }
        if !layout.drawings.iter().all(ConvexDrawing::is_spanning_tree) {
            return Err(Error::Verification("a copy does not span".into()));
        }
        if !host_graph(&layout).over_degree.is_empty() {
            return Err(Error::Verification("host degree exceeds n - 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Exists { certificate: Certificate, nodes: u64 },
    Impossible { nodes: u64 },
    BudgetExhausted { nodes: u64 },
    Counted { solutions: u64, nodes: u64 },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Exists { .. } => "exists",
            Verdict::Impossible { .. } => "impossible",
            Verdict::BudgetExhausted { .. } => "budget-exhausted",
            Verdict::Counted { .. } => "counted",
        }
    }
}

/// Backtracking search for an edge-disjoint placement of the instance's
/// caterpillars into `n` slots.
///
/// The first caterpillar is pinned to the identity mapping. Later copies map
/// spine first, then leaves; sibling leaves take increasing slots and
/// consecutive identical caterpillars (after the first) take lexicographically
/// increasing mappings. Slots are tried in increasing order, so the search
/// is deterministic and the certificate is the first canonical packing.
pub fn brute_force_placement_exists(inst: &SearchInstance) -> Result<Verdict> {
    inst.validate()?;
    let n = inst.n();
    let h = inst.caterpillars.len();
    let mut s = Search::new(inst);

    // the host has at most n(n-1)/2 edges
    let total: usize = inst.caterpillars.iter().map(|c| c.n() - 1).sum();
    if 2 * total > n * (n - 1) {
        return Ok(match inst.mode {
            SearchMode::ExistsPacking => Verdict::Impossible { nodes: 0 },
            SearchMode::CountSolutions => Verdict::Counted { solutions: 0, nodes: 0 },
        });
    }
    let first = &inst.caterpillars[0];
    let ident: Vec<usize> = (0..n).collect();
    for (v, &d) in first.degrees().iter().enumerate() {
        s.deg[v] += d;
        if s.deg[v] + (h - 1) > n - 1 {
            return Ok(Verdict::Impossible { nodes: 0 });
        }
    }
    for (a, b) in first.edges() {
        s.adj[a] |= 1 << b;
        s.adj[b] |= 1 << a;
    }
    s.maps[0] = ident;

    let outcome = if h == 1 { Step::Found } else { s.place(1, 0, false) };
    let nodes = s.nodes;
    Ok(match (outcome, inst.mode) {
        (Step::OutOfBudget, _) => Verdict::BudgetExhausted { nodes },
        (_, SearchMode::CountSolutions) => Verdict::Counted {
            solutions: s.solutions + u64::from(h == 1),
            nodes,
        },
        (Step::Found, _) => Verdict::Exists {
            certificate: Certificate { n, mappings: s.maps },
            nodes,
        },
        (Step::Exhausted, _) => Verdict::Impossible { nodes },
    })
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Plan {
    order: Vec<usize>,
    /// Already-placed neighbour of each vertex in `order`.
    anchor: Vec<Option<usize>>,
    /// Previous sibling leaf, whose slot bounds this one from below.
    sibling: Vec<Option<usize>>,
    degree: Vec<usize>,
    /// Degrees of `order[t..]`, largest first.
    suffix_degrees: Vec<Vec<usize>>,
    /// Same caterpillar as the previous one (and not the pinned first).
    ordered_after_prev: bool,
    /// Sum of the maximum degrees of all later caterpillars.
    later_cap: usize,
}

struct Search<'a> {
    inst: &'a SearchInstance,
    n: usize,
    plans: Vec<Plan>,
    adj: Vec<u64>,
    deg: Vec<usize>,
    maps: Vec<Vec<usize>>,
    used: u64,
    /// Host degree left unused once every copy is placed.
    slack: usize,
    nodes: u64,
    solutions: u64,
    started: Instant,
}

impl<'a> Search<'a> {
    fn new(inst: &'a SearchInstance) -> Self {
        let n = inst.n();
        let plans = inst
            .caterpillars
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut order = Vec::with_capacity(n);
                let mut anchor = Vec::with_capacity(n);
                let mut sibling = Vec::with_capacity(n);
                for (i, &s) in c.spine().iter().enumerate() {
                    order.push(s);
                    anchor.push(i.checked_sub(1).map(|p| c.spine()[p]));
                    sibling.push(None);
                }
                for (i, ls) in c.leaves().iter().enumerate() {
                    for (l, &leaf) in ls.iter().enumerate() {
                        order.push(leaf);
                        anchor.push(Some(c.spine()[i]));
                        sibling.push(l.checked_sub(1).map(|p| ls[p]));
                    }
                }
                let degree = c.degrees();
                let suffix_degrees = (0..=n)
                    .map(|t| {
                        let mut d: Vec<usize> = order[t..].iter().map(|&v| degree[v]).collect();
                        d.sort_unstable_by(|a, b| b.cmp(a));
                        d
                    })
                    .collect();
                Plan {
                    order,
                    suffix_degrees,
                    anchor,
                    sibling,
                    degree,
                    ordered_after_prev: ci >= 2 && inst.caterpillars[ci - 1] == *c,
                    later_cap: inst.caterpillars[ci + 1..].iter().map(Caterpillar::max_degree).sum(),
                }
            })
            .collect();
        Search {
            inst,
            n,
            plans,
            adj: vec![0; n],
            deg: vec![0; n],
            maps: vec![vec![usize::MAX; n]; inst.caterpillars.len()],
            used: 0,
            slack: (n * (n - 1)).saturating_sub(2 * inst.caterpillars.iter().map(|c| c.n() - 1).sum::<usize>()),
            nodes: 0,
            solutions: 0,
            started: Instant::now(),
        }
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.inst.node_budget {
            return true;
        }
        match self.inst.time_budget {
            Some(t) if self.nodes.is_multiple_of(4096) => self.started.elapsed() > t,
            _ => false,
        }
    }

    /// Whether the unplaced vertices of copy `ci` can still be matched to
    /// free slots by degree, keeping one unit per slot for each later copy.
    fn residual_fits(&self, ci: usize, t: usize) -> bool {
        let n = self.n;
        let later = self.plans.len() - 1 - ci;
        let mut room: Vec<usize> = (0..n)
            .filter(|&s| self.used >> s & 1 == 0)
            .map(|s| (n - 1).saturating_sub(self.deg[s] + later))
            .collect();
        room.sort_unstable_by(|a, b| b.cmp(a));
        let plan = &self.plans[ci];
        if !plan.suffix_degrees[t].iter().zip(&room).all(|(d, r)| d <= r) {
            return false;
        }
        // degree no later vertex can take is left over for good
        let next = plan.suffix_degrees[t].first().copied().unwrap_or(0);
        let excess: usize = (0..n)
            .map(|s| {
                let cap = plan.later_cap + if self.used >> s & 1 == 0 { next } else { 0 };
                (n - 1 - self.deg[s]).saturating_sub(cap)
            })
            .sum();
        excess <= self.slack
    }

    /// Places vertex `t` (in plan order) of caterpillar `ci`. `tied` is true
    /// while this copy's slots so far equal the previous copy's.
    fn place(&mut self, ci: usize, t: usize, tied: bool) -> Step {
        let n = self.n;
        let h = self.plans.len();
        if t == n {
            if ci + 1 == h {
                self.solutions += 1;
                return match self.inst.mode {
                    SearchMode::ExistsPacking => Step::Found,
                    SearchMode::CountSolutions => Step::Exhausted,
                };
            }
            self.used = 0;
            let next_tied = self.plans[ci + 1].ordered_after_prev;
            let r = self.place(ci + 1, 0, next_tied);
            if !matches!(r, Step::Found) {
                self.used = (0..n).fold(0, |m, v| m | 1 << self.maps[ci][v]);
            }
            return r;
        }
        if !self.residual_fits(ci, t) {
            return Step::Exhausted;
        }
        let plan = &self.plans[ci];
        let x = plan.order[t];
        let dx = plan.degree[x];
        let anchor = plan.anchor[t].map(|y| self.maps[ci][y]);
        let mut lo = plan.sibling[t].map_or(0, |y| self.maps[ci][y] + 1);
        let prev_slot = if tied { Some(self.maps[ci - 1][x]) } else { None };
        if let Some(p) = prev_slot {
            lo = lo.max(p);
        }
        let later = h - 1 - ci;

        for s in lo..n {
            if self.used >> s & 1 == 1 || self.deg[s] + dx + later > n - 1 {
                continue;
            }
            if let Some(a) = anchor {
                if self.adj[a] >> s & 1 == 1 {
                    continue;
                }
            }
            if self.out_of_budget() {
                return Step::OutOfBudget;
            }
            self.used |= 1 << s;
            self.deg[s] += dx;
            if let Some(a) = anchor {
                self.adj[a] |= 1 << s;
                self.adj[s] |= 1 << a;
            }
            self.maps[ci][x] = s;

            let r = self.place(ci, t + 1, prev_slot == Some(s));

            if matches!(r, Step::Found | Step::OutOfBudget) {
                return r;
            }
            self.maps[ci][x] = usize::MAX;
            if let Some(a) = anchor {
                self.adj[a] &= !(1 << s);
                self.adj[s] &= !(1 << a);
            }
            self.deg[s] -= dx;
            self.used &= !(1 << s);
        }
        Step::Exhausted
    }
}

// ---------------------------------------------------------------------------
// geometric crossing oracle

const KAPPA: f64 = 0.1;
/// Sample offsets within each unit step of an outer arc. Their reduced
/// denominators exceed 80, so no crossing of two arcs on up to 40 positions
/// lands exactly on a sample.
const SAMPLES: [f64; 8] = [0.061, 0.186, 0.311, 0.436, 0.561, 0.686, 0.811, 0.936];
const EPS: f64 = 1e-9;

type Pt = (f64, f64);

fn point_at(x: f64, radius: f64, n: usize) -> Pt {
    let th = -TAU * x / n as f64;
    (radius * th.cos(), radius * th.sin())
}

fn orient(p: Pt, q: Pt, r: Pt) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

/// Outer edges bulge outward with a parabolic radius profile in the angle
/// parameter. The curve of `e` is sampled over `[lo, hi]` at both ends and at
/// the fractional offsets in between, so two edges compared over the same
/// range share every sample angle.
fn outer_polyline(e: &Edge, lo: usize, hi: usize, n: usize) -> Vec<(f64, Pt)> {
    let scale = (TAU / n as f64).powi(2);
    let (a, b) = (e.a as f64, e.b as f64);
    let mut xs = Vec::with_capacity((hi - lo) * SAMPLES.len() + 2);
    xs.push(lo as f64);
    for i in lo..hi {
        xs.extend(SAMPLES.iter().map(|t| i as f64 + t));
    }
    xs.push(hi as f64);
    xs.into_iter()
        .map(|x| {
            let rad = if x == a || x == b { 1.0 } else { 1.0 + KAPPA * (x - a) * (b - x) * scale };
            (x, point_at(x, rad, n))
        })
        .collect()
}

/// Whether segments `pq` and `rs` meet. `shared` marks a common endpoint
/// (`p == r`) that does not count as a crossing.
fn segments_meet(p: Pt, q: Pt, r: Pt, s: Pt, shared: bool) -> Result<bool> {
    let d1 = orient(p, q, r);
    let d2 = orient(p, q, s);
    let d3 = orient(r, s, p);
    let d4 = orient(r, s, q);
    if shared {
        if d2.abs() < EPS && (s.0 - p.0) * (q.0 - p.0) + (s.1 - p.1) * (q.1 - p.1) > 0.0 {
            return Err(Error::Degenerate("edges overlap at a shared vertex".into()));
        }
        return Ok(false);
    }
    if [d1, d2, d3, d4].iter().any(|d| d.abs() < EPS) {
        return Err(Error::Degenerate(format!(
            "near-collinear segments {p:?}-{q:?} and {r:?}-{s:?}"
        )));
    }
    Ok((d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0))
}

fn inner_cross(e: &Edge, f: &Edge, n: usize) -> Result<bool> {
    let pts = |g: &Edge| (point_at(g.a as f64, 1.0, n), point_at(g.b as f64, 1.0, n));
    let (p, q) = pts(e);
    let (r, s) = pts(f);
    if e.a == f.a {
        segments_meet(p, q, r, s, true)
    } else if e.a == f.b {
        segments_meet(p, q, s, r, true)
    } else if e.b == f.a {
        segments_meet(q, p, r, s, true)
    } else if e.b == f.b {
        segments_meet(q, p, s, r, true)
    } else {
        segments_meet(p, q, r, s, false)
    }
}

fn outer_cross(e: &Edge, f: &Edge, n: usize) -> Result<bool> {
    let lo = e.a.max(f.a);
    let hi = e.b.min(f.b);
    if lo >= hi {
        return Ok(false);
    }
    let pe = outer_polyline(e, lo, hi, n);
    let pf = outer_polyline(f, lo, hi, n);
    let last = pe.len() - 2;
    let mut hits = 0;
    for (i, (we, wf)) in pe.windows(2).zip(pf.windows(2)).enumerate() {
        let (p, q, r, s) = (we[0].1, we[1].1, wf[0].1, wf[1].1);
        let hit = if i == 0 && e.a == f.a {
            segments_meet(p, q, r, s, true)?
        } else if i == last && e.b == f.b {
            segments_meet(q, p, s, r, true)?
        } else {
            segments_meet(p, q, r, s, false)?
        };
        hits += usize::from(hit);
    }
    if hits > 1 {
        return Err(Error::Degenerate(format!(
            "outer edges ({}, {}) and ({}, {}) meet {hits} times",
            e.a, e.b, f.a, f.b
        )));
    }
    Ok(hits == 1)
}

/// Counts crossings from explicit coordinates: position `i` at angle
/// `-2πi/n` on the unit circle, inner edges as chords, outer edges as
/// polylines outside the circle that avoid position 0's side of the cut.
pub fn geometric_crossing_oracle(layout: &PackingLayout) -> Result<CrossingReport> {
    let n = layout.n;
    if n > 1000 {
        return param(format!("n = {n} exceeds 1000"));
    }
    let multi = has_multi_edges(layout);
    if !multi.is_empty() {
        return Err(Error::MultiEdges(multi.len()));
    }
    let edges: Vec<Edge> = layout.drawings.iter().flat_map(|d| d.edges.iter().copied()).collect();
    let mut counts = vec![0usize; edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (&edges[i], &edges[j]);
            // the circle separates inner from outer curves
            let hit = match (e.side, f.side) {
                (Side::Inner, Side::Inner) => inner_cross(e, f, n)?,
                (Side::Outer, Side::Outer) => outer_cross(e, f, n)?,
                _ => false,
            };
            if hit {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
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

// ---------------------------------------------------------------------------

/// Smallest `k` over all offset tuples `0 = j_1 < j_2 < … < j_h` whose
/// pairwise gaps stay below the half span. Ties keep the first tuple in
/// lexicographic order.
pub fn min_k_over_offsets(delta: usize, sigma: usize, h: usize) -> Result<(Vec<usize>, usize)> {
    let violated = placement_violations(delta, sigma, h)?;
    if !violated.is_empty() {
        return Err(Error::Infeasible(violated));
    }
    let c = make_regular_caterpillar(delta, sigma)?;
    let n = c.n();
    if n > 20 || h > 4 {
        return param(format!("search limited to n <= 20 and h <= 4, got n = {n}, h = {h}"));
    }
    let base = zigzag_drawing(&c, 0, Side::Inner)?;
    let half = half_span(n, delta, sigma);
    let mut best: Option<(Vec<usize>, usize)> = None;
    let mut tuple = vec![0usize];
    explore(&base, n, half, h, &mut tuple, &mut best)?;
    best.ok_or_else(|| Error::Construction("no admissible offset tuple".into()))
}

fn explore(
    base: &ConvexDrawing,
    n: usize,
    half: usize,
    h: usize,
    tuple: &mut Vec<usize>,
    best: &mut Option<(Vec<usize>, usize)>,
) -> Result<()> {
    if tuple.len() == h {
        let drawings = tuple.iter().map(|&j| rotate(base, j as i64)).collect();
        let layout = PackingLayout::new(n, drawings)?;
        if !has_multi_edges(&layout).is_empty() {
            return Ok(());
        }
        let k = k_of(&layout)?;
        if best.as_ref().is_none_or(|b| k < b.1) {
            *best = Some((tuple.clone(), k));
        }
        return Ok(());
    }
    let last = *tuple.last().unwrap();
    for j in last + 1..half {
        tuple.push(j);
        explore(base, n, half, h, tuple, best)?;
        tuple.pop();
    }
    Ok(())
}
