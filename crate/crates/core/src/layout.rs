//! Zig-zag drawings of regular caterpillars on `n` equally spaced circle points.
//!
//! Positions are indexed `0..n` clockwise, so all geometry here is integer
//! arithmetic modulo `n`. A chord between positions `a` and `b` has slope
//! class `(a + b) mod n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::caterpillar::Caterpillar;
use crate::error::{param, Error, Result};

/// Which face of the circle an edge is routed through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inner" => Ok(Side::Inner),
            "outer" => Ok(Side::Outer),
            _ => param(format!("unknown side {s:?}")),
        }
    }
}

/// A drawn edge between two positions; stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize, Side)", into = "(usize, usize, Side)")]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub side: Side,
}

impl Edge {
    pub fn new(p: usize, q: usize, side: Side) -> Self {
        Edge { a: p.min(q), b: p.max(q), side }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn touches(&self, p: usize) -> bool {
        self.a == p || self.b == p
    }

    pub fn shares_endpoint(&self, o: &Edge) -> bool {
        self.touches(o.a) || self.touches(o.b)
    }
}

impl From<(usize, usize, Side)> for Edge {
    fn from((a, b, side): (usize, usize, Side)) -> Self {
        Edge::new(a, b, side)
    }
}

impl From<Edge> for (usize, usize, Side) {
    fn from(e: Edge) -> Self {
        (e.a, e.b, e.side)
    }
}

/// Slope class `s_i` of a chord between equally spaced points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlopeClass(pub usize);

impl SlopeClass {
    pub fn of(a: usize, b: usize, n: usize) -> Self {
        SlopeClass((a + b) % n)
    }
}

/// One caterpillar drawn on the shared circle positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDrawing")]
pub struct ConvexDrawing {
    pub n: usize,
    pub start: usize,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    /// Vertex id to position, when the drawing came from a known caterpillar.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assign: Option<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawDrawing {
    n: usize,
    start: usize,
    edges: Vec<Edge>,
    #[serde(default)]
    delta: Option<usize>,
    #[serde(default)]
    sigma: Option<usize>,
    #[serde(default)]
    assign: Option<Vec<usize>>,
}

impl TryFrom<RawDrawing> for ConvexDrawing {
    type Error = Error;

    fn try_from(r: RawDrawing) -> Result<Self> {
        let d = ConvexDrawing {
            n: r.n,
            start: r.start,
            edges: r.edges,
            delta: r.delta,
            sigma: r.sigma,
            assign: r.assign,
        };
        d.validate()?;
        Ok(d)
    }
}

impl ConvexDrawing {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return param("drawing has no positions");
        }
        if self.start >= self.n {
            return param(format!("start {} out of range for n = {}", self.start, self.n));
        }
        for e in &self.edges {
            if e.b >= self.n || e.a == e.b {
                return param(format!("edge ({}, {}) invalid for n = {}", e.a, e.b, self.n));
            }
        }
        if let Some(assign) = &self.assign {
            let mut seen = vec![false; self.n];
            if assign.len() != self.n {
                return param("assign must map every vertex");
            }
            for &p in assign {
                if p >= self.n || std::mem::replace(&mut seen[p], true) {
                    return param("assign is not a bijection onto the positions");
                }
            }
        }
        Ok(())
    }

    /// Degree of every position within this drawing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    /// Whether the edges form a spanning tree of the `n` positions.
    pub fn is_spanning_tree(&self) -> bool {
        if self.edges.len() + 1 != self.n {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Positions hosting spine vertices (degree at least two).
    pub fn spine_positions(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >= 2)
            .map(|(p, _)| p)
            .collect()
    }

    /// `(delta, sigma)`, taken from the stored fields or recovered from degrees.
    pub fn params(&self) -> Result<(usize, usize)> {
        if let (Some(d), Some(s)) = (self.delta, self.sigma) {
            return Ok((d, s));
        }
        let deg = self.degrees();
        let spine: Vec<usize> = deg.iter().copied().filter(|&d| d >= 2).collect();
        match spine.first() {
            Some(&d) if spine.iter().all(|&x| x == d) => Ok((d, spine.len())),
            _ => Err(Error::Structure("drawing is not of a regular caterpillar".into())),
        }
    }

    /// Half-turn length `(n - (delta-1)(sigma mod 2)) / 2`: the ending point
    /// sits this many steps after the starting point.
    pub fn half_span(&self) -> Result<usize> {
        let (delta, sigma) = self.params()?;
        Ok(half_span(self.n, delta, sigma))
    }

    /// Position of the ending point (first vertex of the lower part).
    pub fn ending_point(&self) -> Result<usize> {
        Ok((self.start + self.half_span()?) % self.n)
    }

    /// Whether position `p` is in the upper part (`start ..= r-1`, cyclically).
    pub fn in_upper_part(&self, p: usize) -> Result<bool> {
        let offset = (p + self.n - self.start) % self.n;
        Ok(offset < self.half_span()?)
    }

    pub fn with_side(mut self, side: Side) -> Self {
        for e in &mut self.edges {
            e.side = side;
        }
        self
    }

    /// Edge pairs mapped back to caterpillar vertex ids through `assign`.
    pub fn vertex_edges(&self) -> Option<Vec<(usize, usize)>> {
        let assign = self.assign.as_ref()?;
        let mut at = vec![0; self.n];
        for (v, &p) in assign.iter().enumerate() {
            at[p] = v;
        }
        Some(self.edges.iter().map(|e| (at[e.a], at[e.b])).collect())
    }
}

pub(crate) fn half_span(n: usize, delta: usize, sigma: usize) -> usize {
    (n - (delta - 1) * (sigma % 2)) / 2
}

/// Builds the zig-zag drawing of a regular caterpillar with its starting
/// point at `start`, every edge routed on `side`.
///
/// Spine points `u_1..u_σ` are connected in the order `u_1, u_σ, u_2,
/// u_{σ-1}, ...`; the leaves of `u_k` fill the gap between `u_{σ-k+1}` and
/// `u_{σ-k+2}` (the gap between `u_σ` and `u_1` for `k = 1`).
pub fn zigzag_drawing(c: &Caterpillar, start: usize, side: Side) -> Result<ConvexDrawing> {
    let delta = c
        .regularity()
        .ok_or_else(|| Error::Parameter("caterpillar is not regular".into()))?;
    let sigma = c.sigma();
    if sigma < 2 {
        return param("zig-zag drawings need at least two spine vertices");
    }
    let n = c.n();
    if start >= n {
        return param(format!("start {start} out of range for n = {n}"));
    }

    // spine path position t -> 1-based point index k
    let point_of = |t: usize| if t.is_multiple_of(2) { t / 2 + 1 } else { sigma - (t - 1) / 2 };
    // 1-based point index k -> spine path position t
    let mut path_of = vec![0; sigma + 1];
    for t in 0..sigma {
        path_of[point_of(t)] = t;
    }

    let mut assign = vec![usize::MAX; n];
    let mut pos = 0;
    for i in 1..=sigma {
        assign[c.spine()[path_of[i]]] = pos;
        pos += 1;
        // gap after u_i belongs to u_{σ-i+1}
        let owner = path_of[sigma - i + 1];
        for &leaf in &c.leaves()[owner] {
            assign[leaf] = pos;
            pos += 1;
        }
    }
    debug_assert_eq!(pos, n);
    for p in &mut assign {
        *p = (*p + start) % n;
    }

    let edges = c
        .edges()
        .into_iter()
        .map(|(a, b)| Edge::new(assign[a], assign[b], side))
        .collect();
    Ok(ConvexDrawing {
        n,
        start,
        edges,
        delta: Some(delta),
        sigma: Some(sigma),
        assign: Some(assign),
    })
}

/// Rotates a drawing clockwise by `steps` positions (taken mod `n`).
pub fn rotate(d: &ConvexDrawing, steps: i64) -> ConvexDrawing {
    let n = d.n;
    let l = steps.rem_euclid(n as i64) as usize;
    let shift = |p: usize| (p + l) % n;
    ConvexDrawing {
        n,
        start: shift(d.start),
        edges: d.edges.iter().map(|e| Edge::new(shift(e.a), shift(e.b), e.side)).collect(),
        delta: d.delta,
        sigma: d.sigma,
        assign: d.assign.as_ref().map(|a| a.iter().map(|&p| shift(p)).collect()),
    }
}

/// The `delta` slope classes used by a zig-zag drawing, in circular order.
///
/// Fails unless the classes form one contiguous circular window of size
/// `delta` and every spine vertex realizes all of them.
pub fn used_slope_window(d: &ConvexDrawing) -> Result<Vec<SlopeClass>> {
    let (delta, _) = d.params()?;
    let n = d.n;
    let classes: BTreeSet<usize> = d.edges.iter().map(|e| SlopeClass::of(e.a, e.b, n).0).collect();
    if classes.len() != delta {
        return Err(Error::Structure(format!(
            "{} slope classes used, expected {delta}",
            classes.len()
        )));
    }
    let first = classes
        .iter()
        .copied()
        .find(|&c| !classes.contains(&((c + n - 1) % n)))
        .ok_or_else(|| Error::Structure("slope classes cover the whole circle".into()))?;
    let window: Vec<usize> = (0..delta).map(|i| (first + i) % n).collect();
    if window.iter().any(|c| !classes.contains(c)) {
        return Err(Error::Structure("slope classes are not contiguous".into()));
    }
    for p in d.spine_positions() {
        let at: BTreeSet<usize> = d
            .edges
            .iter()
            .filter(|e| e.touches(p))
            .map(|e| SlopeClass::of(e.a, e.b, n).0)
            .collect();
        if at != classes {
            return Err(Error::Structure(format!(
                "spine vertex at position {p} does not use every slope class"
            )));
        }
    }
    Ok(window.into_iter().map(SlopeClass).collect())
}

/// The two edges on the convex hull: the one ending at the starting point
/// first, then the one ending at the ending point.
pub fn short_edges(d: &ConvexDrawing) -> Result<(Edge, Edge)> {
    let n = d.n;
    let hull: Vec<Edge> = d
        .edges
        .iter()
        .copied()
        .filter(|e| e.b - e.a == 1 || e.b - e.a == n - 1)
        .collect();
    if hull.len() != 2 {
        return Err(Error::Structure(format!("{} hull edges, expected 2", hull.len())));
    }
    let prev = (d.start + n - 1) % n;
    let first = Edge::new(prev, d.start, hull[0].side);
    if hull[1].pair() == first.pair() {
        Ok((hull[1], hull[0]))
    } else {
        Ok((hull[0], hull[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caterpillar::make_regular_caterpillar;

    fn zz(delta: usize, sigma: usize, start: usize) -> ConvexDrawing {
        zigzag_drawing(&make_regular_caterpillar(delta, sigma).unwrap(), start, Side::Inner).unwrap()
    }

    fn pairs(d: &ConvexDrawing) -> BTreeSet<(usize, usize)> {
        d.edges.iter().map(Edge::pair).collect()
    }

    #[test]
    fn hand_executed_delta3_sigma2() {
        // v1..v6 are positions 0..5
        let d = zz(3, 2, 0);
        let want: BTreeSet<_> = [(0, 3), (1, 3), (2, 3), (0, 4), (0, 5)].into_iter().collect();
        assert_eq!(pairs(&d), want);
        let (s1, s2) = short_edges(&d).unwrap();
        assert_eq!(s1.pair(), (0, 5));
        assert_eq!(s2.pair(), (2, 3));
        assert_eq!(d.ending_point().unwrap(), 3);
    }

    #[test]
    fn ending_points() {
        // v1 -> v8 on 14 points; rotated copy v2 -> v9
        let d = zz(4, 4, 0);
        assert_eq!(d.n, 14);
        assert_eq!(d.ending_point().unwrap(), 7);
        let r = rotate(&d, 1);
        assert_eq!(r.start, 1);
        assert_eq!(r.ending_point().unwrap(), 8);
        assert_eq!(zz(3, 3, 0).ending_point().unwrap(), 3);
    }

    #[test]
    fn degree_one_vertex_on_first_short_edge() {
        let d = zz(4, 4, 0);
        let (s1, _) = short_edges(&d).unwrap();
        assert_eq!(s1.pair(), (0, 13));
        assert_eq!(d.degrees()[13], 1);
    }

    #[test]
    fn rotation_group_action() {
        let d = zz(4, 3, 2);
        assert_eq!(rotate(&d, 0), d);
        assert_eq!(rotate(&rotate(&d, 5), 7), rotate(&d, 12));
        assert_eq!(rotate(&d, -3), rotate(&d, d.n as i64 - 3));
        let (a, b) = short_edges(&d).unwrap();
        let (ra, rb) = short_edges(&rotate(&d, 4)).unwrap();
        let n = d.n;
        assert_eq!(ra.pair(), Edge::new((a.a + 4) % n, (a.b + 4) % n, a.side).pair());
        assert_eq!(rb.pair(), Edge::new((b.a + 4) % n, (b.b + 4) % n, b.side).pair());
    }

    #[test]
    fn slope_window_small() {
        let w = used_slope_window(&zz(3, 2, 0)).unwrap();
        assert_eq!(w, vec![SlopeClass(3), SlopeClass(4), SlopeClass(5)]);
    }

    #[test]
    fn disjoint_windows_under_offset_gap() {
        let a = zz(5, 3, 0);
        let b = zz(3, 6, 2);
        assert_eq!(a.n, 14);
        assert_eq!(b.n, 14);
        let wa: BTreeSet<_> = used_slope_window(&a).unwrap().into_iter().collect();
        let wb: BTreeSet<_> = used_slope_window(&b).unwrap().into_iter().collect();
        assert!(wa.is_disjoint(&wb));
    }

    #[test]
    fn non_zigzag_rejected() {
        let c = make_regular_caterpillar(3, 2).unwrap();
        let mut d = zigzag_drawing(&c, 0, Side::Inner).unwrap();
        // a star-ish drawing whose classes are not contiguous
        d.edges = vec![
            Edge::new(0, 1, Side::Inner),
            Edge::new(0, 2, Side::Inner),
            Edge::new(0, 4, Side::Inner),
            Edge::new(3, 4, Side::Inner),
            Edge::new(4, 5, Side::Inner),
        ];
        d.delta = None;
        d.sigma = None;
        assert!(used_slope_window(&d).is_err());
        assert!(zigzag_drawing(&make_regular_caterpillar(3, 1).unwrap(), 0, Side::Inner).is_err());
        assert!(zigzag_drawing(&c, 6, Side::Inner).is_err());
    }

    #[test]
    fn json_shape() {
        let d = zz(3, 2, 0);
        let mut bare = d.clone();
        bare.delta = None;
        bare.sigma = None;
        bare.assign = None;
        let s = serde_json::to_string(&bare).unwrap();
        assert!(s.starts_with(r#"{"n":6,"start":0,"edges":[[0,3,"inner"],"#), "{s}");
        let back: ConvexDrawing = serde_json::from_str(&s).unwrap();
        assert_eq!(back, bare);
        assert_eq!(back.params().unwrap(), (3, 2));
        let full: ConvexDrawing = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(full, d);
        assert!(serde_json::from_str::<ConvexDrawing>(r#"{"n":3,"start":3,"edges":[]}"#).is_err());
        assert!(serde_json::from_str::<ConvexDrawing>(r#"{"n":3,"start":0,"edges":[[0,3,"inner"]]}"#).is_err());
    }
}
