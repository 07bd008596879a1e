//! Constructive placements and packings built from zig-zag drawings.

use serde::{Deserialize, Serialize};

use crate::caterpillar::{
    make_regular_caterpillar, placement_violations, spine_length_for, Caterpillar,
};
use crate::error::{param, Condition, Error, Result};
use crate::layout::{half_span, rotate, zigzag_drawing, ConvexDrawing, Edge, Side};
use crate::verify::{
    bound_mixed_crossings, bound_pair_crossings, bound_placement_crossings, crossing_counts,
    edges_cross, has_multi_edges, host_graph, max_pair_crossings,
};

/// Drawings of several caterpillars on one shared set of `n` positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLayout")]
pub struct PackingLayout {
    pub n: usize,
    pub drawings: Vec<ConvexDrawing>,
}

#[derive(Deserialize)]
struct RawLayout {
    n: usize,
    drawings: Vec<ConvexDrawing>,
}

impl TryFrom<RawLayout> for PackingLayout {
    type Error = Error;

    fn try_from(r: RawLayout) -> Result<Self> {
        PackingLayout::new(r.n, r.drawings)
    }
}

impl PackingLayout {
    pub fn new(n: usize, drawings: Vec<ConvexDrawing>) -> Result<Self> {
        if drawings.is_empty() {
            return param("layout has no drawings");
        }
        for (i, d) in drawings.iter().enumerate() {
            if d.n != n {
                return param(format!("drawing {i} has n = {}, layout has n = {n}", d.n));
            }
            d.validate()?;
        }
        Ok(PackingLayout { n, drawings })
    }

    pub fn h(&self) -> usize {
        self.drawings.len()
    }

    /// Starting index of each drawing.
    pub fn offsets(&self) -> Vec<usize> {
        self.drawings.iter().map(|d| d.start).collect()
    }

    pub fn offsets_strictly_increase(&self) -> bool {
        self.offsets().windows(2).all(|w| w[0] < w[1])
    }
}

/// Whether constructors certify their output before returning it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Checks {
    #[default]
    Verified,
    Unchecked,
}

struct Expectation<'a> {
    max_k: u64,
    pair_bounds: bool,
    signatures: &'a [Vec<usize>],
}

fn certify(layout: &PackingLayout, expect: Expectation<'_>) -> Result<()> {
    let multi = has_multi_edges(layout);
    if !multi.is_empty() {
        return Err(Error::Verification(format!("duplicated edges {multi:?}")));
    }
    for (i, d) in layout.drawings.iter().enumerate() {
        if !d.is_spanning_tree() {
            return Err(Error::Verification(format!("drawing {i} is not a spanning tree")));
        }
        let pairs: Vec<(usize, usize)> = d.edges.iter().map(Edge::pair).collect();
        let c = Caterpillar::from_edges(d.n, &pairs)
            .map_err(|e| Error::Verification(format!("drawing {i}: {e}")))?;
        if c.signature() != expect.signatures[i] {
            return Err(Error::Verification(format!(
                "drawing {i} is not a copy of the requested caterpillar"
            )));
        }
    }
    let host = host_graph(layout);
    if !host.over_degree.is_empty() {
        return Err(Error::Verification(format!(
            "positions {:?} exceed degree n - 1",
            host.over_degree
        )));
    }
    let k = crossing_counts(layout)?.k as u64;
    if k > expect.max_k {
        return Err(Error::Verification(format!(
            "an edge is crossed {k} times, bound is {}",
            expect.max_k
        )));
    }
    if expect.pair_bounds {
        let n = layout.n;
        for (i, d1) in layout.drawings.iter().enumerate() {
            for d2 in &layout.drawings[i + 1..] {
                let gap = (d2.start + n - d1.start) % n;
                let (delta1, _) = d1.params()?;
                let (delta2, _) = d2.params()?;
                let bound = bound_pair_crossings(delta1, delta2, gap);
                let got = max_pair_crossings(d1, d2) as u64;
                if got > bound {
                    return Err(Error::Verification(format!(
                        "drawings at offsets {} and {} cross {got} times on one edge, bound {bound}",
                        d1.start, d2.start
                    )));
                }
            }
        }
    }
    Ok(())
}

fn finish(layout: PackingLayout, checks: Checks, expect: Expectation<'_>) -> Result<PackingLayout> {
    if checks == Checks::Verified {
        certify(&layout, expect)?;
    }
    Ok(layout)
}

/// `h` copies of the `delta`-regular caterpillar with `sigma` spine vertices,
/// copy `i` being the base zig-zag drawing rotated by `i` steps.
pub fn place_copies(delta: usize, sigma: usize, h: usize, checks: Checks) -> Result<PackingLayout> {
    let violated = placement_violations(delta, sigma, h)?;
    if !violated.is_empty() {
        return Err(Error::Infeasible(violated));
    }
    let c = make_regular_caterpillar(delta, sigma)?;
    let n = c.n();
    let base = zigzag_drawing(&c, 0, Side::Inner)?;
    let half = half_span(n, delta, sigma);
    // every pairwise offset gap is at most h - 1
    if h > half {
        return Err(Error::Construction(format!("offset gap {} reaches {half}", h - 1)));
    }
    let drawings = (0..h).map(|i| rotate(&base, i as i64)).collect();
    let layout = PackingLayout::new(n, drawings)?;
    let sig = vec![c.signature(); h];
    finish(
        layout,
        checks,
        Expectation {
            max_k: bound_placement_crossings(delta, h),
            pair_bounds: true,
            signatures: &sig,
        },
    )
}

fn regular_family(deltas: &[usize], n: usize) -> Result<Vec<Caterpillar>> {
    if deltas.is_empty() {
        return param("need at least one degree");
    }
    if deltas.windows(2).any(|w| w[0] < w[1]) {
        return param(format!("degrees must be non-increasing, got {deltas:?}"));
    }
    deltas
        .iter()
        .map(|&delta| match spine_length_for(delta, n) {
            Some(sigma) if sigma >= 2 => make_regular_caterpillar(delta, sigma),
            _ => param(format!(
                "no {delta}-regular caterpillar with at least two spine vertices has {n} vertices"
            )),
        })
        .collect()
}

fn build(family: &[Caterpillar], offsets: &[usize]) -> Result<PackingLayout> {
    let n = family[0].n();
    let drawings = family
        .iter()
        .zip(offsets)
        .map(|(c, &j)| zigzag_drawing(c, j % n, Side::Inner))
        .collect::<Result<Vec<_>>>()?;
    PackingLayout::new(n, drawings)
}

/// Packs caterpillars of spine degrees `deltas` (non-increasing) on `n`
/// vertices, placing drawing `i` at offset `j_{i-1} + ⌈Δ_i/2⌉`.
pub fn pack_mixed(deltas: &[usize], n: usize, checks: Checks) -> Result<PackingLayout> {
    let family = regular_family(deltas, n)?;
    let h = deltas.len();
    let d1 = deltas[0];
    let mut violated = Vec::new();
    if d1 + h > n {
        violated.push(Condition::DegreeAtMostNMinusH { delta: d1, n, h });
    }
    let sum: usize = deltas.iter().sum();
    if sum + 1 > n {
        violated.push(Condition::DegreeSum { sum, n });
    }
    let span: usize = deltas[1..].iter().map(|d| d.div_ceil(2)).sum();
    if 2 * span >= n - (d1 - 1) {
        violated.push(Condition::OffsetSpan { span, n, delta_max: d1 });
    }
    if !violated.is_empty() {
        return Err(Error::Infeasible(violated));
    }

    let mut offsets = vec![0];
    for d in &deltas[1..] {
        offsets.push(offsets.last().unwrap() + d.div_ceil(2));
    }
    // slope windows stay disjoint only for gaps in [delta_k / 2, (n - delta_i + 1) / 2)
    for i in 0..h {
        for k in i + 1..h {
            let gap = offsets[k] - offsets[i];
            if deltas[k] > 2 * gap || 2 * gap >= n - (deltas[i] - 1) {
                return Err(Error::Construction(format!(
                    "offsets {} and {} violate the slope-window separation",
                    offsets[i], offsets[k]
                )));
            }
        }
    }
    let layout = build(&family, &offsets)?;
    let sig: Vec<_> = family.iter().map(Caterpillar::signature).collect();
    finish(
        layout,
        checks,
        Expectation {
            max_k: bound_mixed_crossings(d1, h),
            pair_bounds: true,
            signatures: &sig,
        },
    )
}

/// Packs caterpillars whose `Δ_i - 1` is a multiple of `Δ_{i+1} - 1`, at
/// offsets `0, 1, …, h-1`.
pub fn pack_divisible(deltas: &[usize], n: usize, checks: Checks) -> Result<PackingLayout> {
    let family = regular_family(deltas, n)?;
    if let Some(w) = deltas.windows(2).find(|w| (w[0] - 1) % (w[1] - 1) != 0) {
        return param(format!("{} - 1 is not a multiple of {} - 1", w[0], w[1]));
    }
    let h = deltas.len();
    let d1 = deltas[0];
    let mut violated: Vec<Condition> = deltas
        .iter()
        .filter(|&&d| d + h > n)
        .map(|&delta| Condition::DegreeAtMostNMinusH { delta, n, h })
        .collect();
    let required = 2 * h + (d1 - 1);
    if n < required {
        violated.push(Condition::EnoughVertices { n, required });
    }
    if !violated.is_empty() {
        return Err(Error::Infeasible(violated));
    }
    let offsets: Vec<usize> = (0..h).collect();
    for (i, &d) in deltas.iter().enumerate() {
        for k in i + 1..h {
            if 2 * (k - i) >= n - (d - 1) {
                return Err(Error::Construction(format!("offset gap {} too large", k - i)));
            }
        }
    }
    let layout = build(&family, &offsets)?;
    let sig: Vec<_> = family.iter().map(Caterpillar::signature).collect();
    finish(
        layout,
        checks,
        Expectation {
            max_k: bound_placement_crossings(d1, h),
            pair_bounds: true,
            signatures: &sig,
        },
    )
}

/// Puts the first `⌈h/2⌉` drawings inside the circle and the rest outside.
pub fn halve_by_sides(layout: &PackingLayout) -> PackingLayout {
    let inner = layout.h().div_ceil(2);
    let drawings = layout
        .drawings
        .iter()
        .enumerate()
        .map(|(i, d)| d.clone().with_side(if i < inner { Side::Inner } else { Side::Outer }))
        .collect();
    PackingLayout { n: layout.n, drawings }
}

/// Node budget for the leaf-assignment search used when `Δ = 7`.
pub const THREE_PLACEMENT_SEARCH_BUDGET: u64 = 20_000_000;

/// Three copies of the `delta`-regular caterpillar (`4 ≤ Δ ≤ 7`) whose union
/// has at most two crossings per edge.
///
/// The first copy is drawn outside with every spine vertex followed clockwise
/// by its leaves, the second is the first shifted one step and drawn inside,
/// and the third has its spine outside on the points `(i+1)(Δ-1)` with its
/// leaves inside. For `Δ ≤ 6` the third copy's leaves follow a fixed rule;
/// for `Δ = 7` they come from [`search_three_placement`].
pub fn place_three_2planar(delta: usize, sigma: usize, checks: Checks) -> Result<PackingLayout> {
    if !(4..=7).contains(&delta) {
        return param(format!("delta must be in 4..=7, got {delta}"));
    }
    if sigma < 2 {
        return param("sigma must be at least 2");
    }
    let c = make_regular_caterpillar(delta, sigma)?;
    let layout = if delta <= 6 {
        let third = third_copy_by_rule(&c, delta);
        three_layout(&c, delta, third)?
    } else {
        match search_three_placement(delta, sigma, ThirdCopySpace::FixedSpine, THREE_PLACEMENT_SEARCH_BUDGET)? {
            SearchOutcome::Found(layout) => layout,
            SearchOutcome::Exhausted => {
                return Err(Error::Construction(format!(
                    "no leaf assignment for delta = {delta}, sigma = {sigma} keeps every edge within two crossings"
                )))
            }
            SearchOutcome::BudgetExhausted => {
                return Err(Error::Construction(format!(
                    "leaf assignment search for delta = {delta}, sigma = {sigma} ran out of budget"
                )))
            }
        }
    };
    let sig = vec![c.signature(); 3];
    finish(
        layout,
        checks,
        Expectation {
            max_k: 2,
            pair_bounds: false,
            signatures: &sig,
        },
    )
}

/// The fixed leaf rule of [`place_three_2planar`] applied to any
/// `delta >= 4`, without certification.
pub fn place_three_by_rule(delta: usize, sigma: usize) -> Result<PackingLayout> {
    if delta < 4 || sigma < 2 {
        return param("need delta >= 4 and sigma >= 2");
    }
    let c = make_regular_caterpillar(delta, sigma)?;
    three_layout(&c, delta, third_copy_by_rule(&c, delta))
}

fn first_copy_positions(c: &Caterpillar, delta: usize) -> Vec<usize> {
    let mut pos = vec![0; c.n()];
    for (i, (&s, ls)) in c.spine().iter().zip(c.leaves()).enumerate() {
        let base = if i == 0 { 0 } else { i * (delta - 1) + 1 };
        pos[s] = base;
        for (l, &leaf) in ls.iter().enumerate() {
            pos[leaf] = base + 1 + l;
        }
    }
    pos
}

fn third_spine_positions(sigma: usize, delta: usize) -> Vec<usize> {
    (0..sigma).map(|i| (i + 1) * (delta - 1)).collect()
}

/// Placement of the third copy: spine positions, spine edge sides, and
/// per spine vertex the positions and edge sides of its leaves.
#[derive(Debug, Clone)]
struct ThirdCopy {
    spine: Vec<usize>,
    spine_sides: Vec<Side>,
    leaves: Vec<Vec<(usize, Side)>>,
}

fn third_copy_by_rule(c: &Caterpillar, delta: usize) -> ThirdCopy {
    let sigma = c.sigma();
    let n = c.n();
    let spine = third_spine_positions(sigma, delta);
    let mut leaves = vec![Vec::new(); sigma];
    for i in 0..sigma - 1 {
        for (t, p) in (spine[i] + 1..spine[i + 1]).enumerate() {
            leaves[if t < 2 { i } else { i + 1 }].push((p, Side::Inner));
        }
    }
    // the Δ points from after the last spine vertex round to the first one
    let wrap: Vec<usize> = (spine[sigma - 1] + 1..spine[0] + n).map(|p| p % n).collect();
    for (t, &p) in wrap.iter().enumerate() {
        leaves[if t < 3 { sigma - 1 } else { 0 }].push((p, Side::Inner));
    }
    ThirdCopy {
        spine,
        spine_sides: vec![Side::Outer; sigma - 1],
        leaves,
    }
}

fn first_two_copies(c: &Caterpillar, delta: usize) -> (ConvexDrawing, ConvexDrawing) {
    let n = c.n();
    let first = first_copy_positions(c, delta);
    let second: Vec<usize> = first.iter().map(|&p| (p + 1) % n).collect();
    let m = c.edges().len();
    (
        drawing_of(c, delta, first, 0, vec![Side::Outer; m]),
        drawing_of(c, delta, second, 1, vec![Side::Inner; m]),
    )
}

/// `sides` follows the order of [`Caterpillar::edges`].
fn drawing_of(c: &Caterpillar, delta: usize, assign: Vec<usize>, start: usize, sides: Vec<Side>) -> ConvexDrawing {
    let edges = c
        .edges()
        .into_iter()
        .zip(sides)
        .map(|((a, b), side)| Edge::new(assign[a], assign[b], side))
        .collect();
    ConvexDrawing {
        n: c.n(),
        start,
        edges,
        delta: Some(delta),
        sigma: Some(c.sigma()),
        assign: Some(assign),
    }
}

fn three_layout(c: &Caterpillar, delta: usize, third: ThirdCopy) -> Result<PackingLayout> {
    let n = c.n();
    let (d1, d2) = first_two_copies(c, delta);
    let mut assign = vec![usize::MAX; n];
    let mut sides = third.spine_sides.clone();
    for (i, (&s, ls)) in c.spine().iter().zip(c.leaves()).enumerate() {
        assign[s] = third.spine[i];
        if third.leaves[i].len() != ls.len() {
            return Err(Error::Construction(format!(
                "spine vertex {i} of the third copy got {} leaves, needs {}",
                third.leaves[i].len(),
                ls.len()
            )));
        }
        for (&leaf, &(p, side)) in ls.iter().zip(&third.leaves[i]) {
            assign[leaf] = p;
            sides.push(side);
        }
    }
    let d3 = drawing_of(c, delta, assign, third.spine[0], sides);
    d3.validate()?;
    PackingLayout::new(n, vec![d1, d2, d3])
}

/// Search space for the third copy in [`search_three_placement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThirdCopySpace {
    /// Spine outside on the points `(i+1)(Δ-1)`, leaf edges inside.
    FixedSpine,
    /// Any spine positions; every edge may go inside or outside.
    FreeSpine,
}

/// Result of [`search_three_placement`].
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(PackingLayout),
    /// Every assignment was examined; none stays within two crossings.
    Exhausted,
    BudgetExhausted,
}

/// Depth-first search for the third copy with the first two copies fixed as
/// in [`place_three_2planar`].
///
/// Spine vertices are placed first in spine order, then free points are
/// given to spine vertices in increasing position order. Candidates are tried
/// in increasing position (or spine index), inner before outer, so the first
/// assignment found is the lexicographically smallest in that order. The
/// result is certified before it is returned.
pub fn search_three_placement(
    delta: usize,
    sigma: usize,
    space: ThirdCopySpace,
    budget: u64,
) -> Result<SearchOutcome> {
    if delta < 3 || sigma < 2 {
        return param("need delta >= 3 and sigma >= 2");
    }
    let c = make_regular_caterpillar(delta, sigma)?;
    let n = c.n();
    let (d1, d2) = first_two_copies(&c, delta);
    let mut state = ThirdSearch {
        n,
        edges: Vec::new(),
        counts: Vec::new(),
        used: vec![vec![false; n]; n],
        occupied: vec![false; n],
        fixed_spine: (space == ThirdCopySpace::FixedSpine).then(|| third_spine_positions(sigma, delta)),
        sides: match space {
            ThirdCopySpace::FixedSpine => &[Side::Inner],
            ThirdCopySpace::FreeSpine => &[Side::Inner, Side::Outer],
        },
        spine: Vec::new(),
        spine_sides: Vec::new(),
        capacity: c.leaves().iter().map(Vec::len).collect(),
        free: Vec::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    for e in d1.edges.iter().chain(&d2.edges) {
        if state.try_add(*e).is_none() {
            return Ok(SearchOutcome::Exhausted);
        }
    }
    match state.spine_dfs() {
        Some(true) => {}
        Some(false) => return Ok(SearchOutcome::Exhausted),
        None => return Ok(SearchOutcome::BudgetExhausted),
    }
    let mut leaves = vec![Vec::new(); sigma];
    for (&p, &(s, side)) in state.free.iter().zip(&state.chosen) {
        leaves[s].push((p, side));
    }
    let third = ThirdCopy {
        spine: state.spine,
        spine_sides: state.spine_sides,
        leaves,
    };
    let layout = three_layout(&c, delta, third)?;
    let sig = vec![c.signature(); 3];
    certify(
        &layout,
        Expectation {
            max_k: 2,
            pair_bounds: false,
            signatures: &sig,
        },
    )?;
    Ok(SearchOutcome::Found(layout))
}

struct ThirdSearch {
    n: usize,
    edges: Vec<Edge>,
    counts: Vec<usize>,
    used: Vec<Vec<bool>>,
    occupied: Vec<bool>,
    fixed_spine: Option<Vec<usize>>,
    sides: &'static [Side],
    spine: Vec<usize>,
    spine_sides: Vec<Side>,
    capacity: Vec<usize>,
    free: Vec<usize>,
    chosen: Vec<(usize, Side)>,
    nodes: u64,
    budget: u64,
}

impl ThirdSearch {
    /// Adds `e` if it repeats no edge and keeps every count at most two;
    /// returns the indices of the edges it crosses.
    fn try_add(&mut self, e: Edge) -> Option<Vec<usize>> {
        if self.used[e.a][e.b] {
            return None;
        }
        let crossed: Vec<usize> =
            (0..self.edges.len()).filter(|&i| edges_cross(&e, &self.edges[i])).collect();
        if crossed.len() > 2 || crossed.iter().any(|&i| self.counts[i] >= 2) {
            return None;
        }
        for &i in &crossed {
            self.counts[i] += 1;
        }
        self.edges.push(e);
        self.counts.push(crossed.len());
        self.used[e.a][e.b] = true;
        Some(crossed)
    }

    fn undo(&mut self, crossed: &[usize]) {
        let e = self.edges.pop().unwrap();
        self.counts.pop();
        self.used[e.a][e.b] = false;
        for &i in crossed {
            self.counts[i] -= 1;
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.budget
    }

    /// `Some(true)` found, `Some(false)` subtree exhausted, `None` out of budget.
    fn spine_dfs(&mut self) -> Option<bool> {
        let i = self.spine.len();
        if i == self.capacity.len() {
            self.free = (0..self.n).filter(|&p| !self.occupied[p]).collect();
            return self.leaf_dfs(0);
        }
        let candidates: Vec<usize> = match &self.fixed_spine {
            Some(f) => vec![f[i]],
            None => (0..self.n).filter(|&p| !self.occupied[p]).collect(),
        };
        let sides: &[Side] = if self.fixed_spine.is_some() { &[Side::Outer] } else { self.sides };
        for p in candidates {
            if self.occupied[p] {
                continue;
            }
            for &side in if i == 0 { &[Side::Outer][..] } else { sides } {
                if self.tick() {
                    return None;
                }
                let crossed = match self.spine.last() {
                    Some(&q) => match self.try_add(Edge::new(q, p, side)) {
                        Some(x) => Some(x),
                        None => continue,
                    },
                    None => None,
                };
                self.occupied[p] = true;
                self.spine.push(p);
                if i > 0 {
                    self.spine_sides.push(side);
                }
                match self.spine_dfs() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                if i > 0 {
                    self.spine_sides.pop();
                }
                self.spine.pop();
                self.occupied[p] = false;
                if let Some(x) = crossed {
                    self.undo(&x);
                }
            }
        }
        Some(false)
    }

    fn leaf_dfs(&mut self, depth: usize) -> Option<bool> {
        if depth == self.free.len() {
            return Some(true);
        }
        let p = self.free[depth];
        for s in 0..self.spine.len() {
            if self.capacity[s] == 0 {
                continue;
            }
            for &side in self.sides {
                if self.tick() {
                    return None;
                }
                let Some(crossed) = self.try_add(Edge::new(p, self.spine[s], side)) else {
                    continue;
                };
                self.capacity[s] -= 1;
                self.chosen.push((s, side));
                match self.leaf_dfs(depth + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.chosen.pop();
                self.capacity[s] += 1;
                self.undo(&crossed);
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::k_of;

    #[test]
    fn copies_of_small_caterpillar_fill_k6() {
        let l = place_copies(3, 2, 3, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 1, 2]);
        let host = host_graph(&l);
        assert!(host.simple);
        assert_eq!(host.edge_count, 15);
        assert!(host.degrees.iter().all(|&d| d == 5));
    }

    #[test]
    fn two_copies_one_step_apart() {
        let l = place_copies(4, 4, 2, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 1]);
        assert!(has_multi_edges(&l).is_empty());
        assert!(k_of(&l).unwrap() as u64 <= bound_placement_crossings(4, 2));
    }

    #[test]
    fn infeasible_placement_names_condition() {
        match place_copies(3, 3, 4, Checks::Verified) {
            Err(Error::Infeasible(v)) => {
                assert_eq!(v, vec![Condition::EnoughVertices { n: 8, required: 10 }])
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn mixed_offsets() {
        let l = pack_mixed(&[5, 3], 14, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 2]);
        let l = pack_mixed(&[3, 3, 3], 14, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 2, 4]);
    }

    #[test]
    fn mixed_rejects_wide_family() {
        match pack_mixed(&[17, 9, 9], 34, Checks::Verified) {
            Err(Error::Infeasible(v)) => {
                assert!(v.contains(&Condition::OffsetSpan { span: 10, n: 34, delta_max: 17 }))
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert!(matches!(pack_mixed(&[3, 5], 14, Checks::Verified), Err(Error::Parameter(_))));
        assert!(matches!(pack_mixed(&[4], 15, Checks::Verified), Err(Error::Parameter(_))));
    }

    #[test]
    fn divisible_family() {
        let l = pack_divisible(&[17, 9, 9], 34, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 1, 2]);
        let l = pack_divisible(&[5, 3], 14, Checks::Verified).unwrap();
        assert_eq!(l.offsets(), vec![0, 1]);
        assert!(matches!(pack_divisible(&[9, 17], 34, Checks::Verified), Err(Error::Parameter(_))));
        assert!(matches!(pack_divisible(&[5, 4], 14, Checks::Verified), Err(Error::Parameter(_))));
    }

    #[test]
    fn halving() {
        let l = place_copies(3, 2, 3, Checks::Verified).unwrap();
        let half = halve_by_sides(&l);
        let sides: Vec<Side> = half.drawings.iter().map(|d| d.edges[0].side).collect();
        assert_eq!(sides, vec![Side::Inner, Side::Inner, Side::Outer]);
        assert!(k_of(&half).unwrap() <= k_of(&l).unwrap());

        let two = place_copies(4, 4, 2, Checks::Verified).unwrap();
        assert_eq!(k_of(&halve_by_sides(&two)).unwrap(), 0);

        let one = place_copies(4, 4, 1, Checks::Verified).unwrap();
        assert_eq!(halve_by_sides(&one), one);
    }

    #[test]
    fn three_placement_small_degrees() {
        for (delta, sigma) in [(4, 4), (5, 3), (6, 4)] {
            let l = place_three_2planar(delta, sigma, Checks::Verified).unwrap();
            assert!(has_multi_edges(&l).is_empty());
            assert!(k_of(&l).unwrap() <= 2, "delta {delta} sigma {sigma}");
        }
        assert!(place_three_2planar(3, 4, Checks::Verified).is_err());
        assert!(place_three_2planar(8, 4, Checks::Verified).is_err());
    }

    #[test]
    fn layout_json_rejects_mismatched_n() {
        let l = place_copies(3, 2, 2, Checks::Verified).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        let back: PackingLayout = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        let bad = s.replacen("\"n\":6", "\"n\":7", 1);
        assert!(serde_json::from_str::<PackingLayout>(&bad).is_err());
        assert!(serde_json::from_str::<PackingLayout>(r#"{"n":4,"drawings":[]}"#).is_err());
    }
}
