//! Caterpillars and the feasibility predicates stated about them.
//!
//! A caterpillar is stored spine-major: spine vertices first, in path order,
//! then the leaves of each spine vertex in spine order. All constructors in
//! this module produce that canonical labeling, which keeps every downstream
//! output byte-reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{param, Condition, Error, Result};

/// A tree whose non-leaf vertices form a path (the spine).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCaterpillar")]
pub struct Caterpillar {
    n: usize,
    spine: Vec<usize>,
    leaves: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawCaterpillar {
    n: usize,
    spine: Vec<usize>,
    leaves: Vec<Vec<usize>>,
}

impl TryFrom<RawCaterpillar> for Caterpillar {
    type Error = Error;

    fn try_from(raw: RawCaterpillar) -> Result<Self> {
        let c = Caterpillar::new(raw.spine, raw.leaves)?;
        if c.n != raw.n {
            return param(format!("declared n = {} but the tree has {} vertices", raw.n, c.n));
        }
        Ok(c)
    }
}

impl Caterpillar {
    /// Validates and builds a caterpillar from a spine path and per-spine leaf lists.
    pub fn new(spine: Vec<usize>, leaves: Vec<Vec<usize>>) -> Result<Self> {
        if spine.is_empty() {
            return param("spine must be non-empty");
        }
        if leaves.len() != spine.len() {
            return param(format!(
                "{} leaf lists for {} spine vertices",
                leaves.len(),
                spine.len()
            ));
        }
        let n = spine.len() + leaves.iter().map(Vec::len).sum::<usize>();
        let mut seen = vec![false; n];
        for &v in spine.iter().chain(leaves.iter().flatten()) {
            if v >= n {
                return param(format!("vertex id {v} out of range 0..{n}"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return param(format!("vertex id {v} appears twice"));
            }
        }
        // Removing the leaves must leave exactly the spine: every spine end needs a leaf
        // of its own, and a lone spine vertex needs at least two.
        let sigma = spine.len();
        if sigma == 1 && leaves[0].len() < 2 {
            return param("a single spine vertex needs at least two leaves");
        }
        if sigma >= 2 && (leaves[0].is_empty() || leaves[sigma - 1].is_empty()) {
            return param("spine end vertices must carry at least one leaf");
        }
        Ok(Caterpillar { n, spine, leaves })
    }

    /// Recognizes a caterpillar from an edge list on vertices `0..n`.
    ///
    /// Labels are kept; the spine is oriented so its first vertex is the smaller
    /// of the two ends.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 3 {
            return param("caterpillars need at least three vertices");
        }
        if edges.len() != n - 1 {
            return Err(Error::Structure(format!(
                "{} edges on {n} vertices is not a tree",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Structure(format!("bad edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let is_spine: Vec<bool> = adj.iter().map(|nb| nb.len() >= 2).collect();
        let spine_deg = |v: usize| adj[v].iter().filter(|&&w| is_spine[w]).count();
        let spine_vertices: Vec<usize> = (0..n).filter(|&v| is_spine[v]).collect();
        if spine_vertices.iter().any(|&v| spine_deg(v) > 2) {
            return Err(Error::Structure("non-leaf vertices do not form a path".into()));
        }
        let first = spine_vertices
            .iter()
            .copied()
            .find(|&v| spine_deg(v) <= 1)
            .ok_or_else(|| Error::Structure("non-leaf vertices contain a cycle".into()))?;
        let mut spine = vec![first];
        let mut prev = usize::MAX;
        let mut cur = first;
        while let Some(&next) = adj[cur].iter().find(|&&w| is_spine[w] && w != prev) {
            prev = cur;
            cur = next;
            spine.push(cur);
            if spine.len() > spine_vertices.len() {
                return Err(Error::Structure("non-leaf vertices contain a cycle".into()));
            }
        }
        if spine.len() != spine_vertices.len() {
            return Err(Error::Structure("graph is disconnected".into()));
        }
        let leaves = spine
            .iter()
            .map(|&s| {
                let mut l: Vec<usize> = adj[s].iter().copied().filter(|&w| !is_spine[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Caterpillar::new(spine, leaves)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn leaves(&self) -> &[Vec<usize>] {
        &self.leaves
    }

    pub fn sigma(&self) -> usize {
        self.spine.len()
    }

    /// Degree of the `i`-th spine vertex.
    pub fn spine_degree(&self, i: usize) -> usize {
        let sigma = self.spine.len();
        let path = match sigma {
            1 => 0,
            _ if i == 0 || i == sigma - 1 => 1,
            _ => 2,
        };
        self.leaves[i].len() + path
    }

    /// Degree of every vertex, indexed by vertex id.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![1; self.n];
        for (i, &s) in self.spine.iter().enumerate() {
            deg[s] = self.spine_degree(i);
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        (0..self.sigma()).map(|i| self.spine_degree(i)).max().unwrap_or(0)
    }

    /// Edge list: spine path edges first, then spine-to-leaf edges in spine order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.spine.windows(2).map(|w| (w[0], w[1])).collect();
        for (s, ls) in self.spine.iter().zip(&self.leaves) {
            out.extend(ls.iter().map(|&l| (*s, l)));
        }
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Isomorphism invariant: the leaf counts along the spine, read from the
    /// end that gives the lexicographically smaller sequence.
    ///
    /// Two caterpillars are isomorphic iff their signatures are equal.
    pub fn signature(&self) -> Vec<usize> {
        let fwd: Vec<usize> = self.leaves.iter().map(Vec::len).collect();
        let rev: Vec<usize> = fwd.iter().rev().copied().collect();
        fwd.min(rev)
    }

    /// The common spine degree, if all spine vertices share one.
    pub fn regularity(&self) -> Option<usize> {
        let d0 = self.spine_degree(0);
        (1..self.sigma()).all(|i| self.spine_degree(i) == d0).then_some(d0)
    }
}

/// Vertex count of a `delta`-regular caterpillar with `sigma` spine vertices.
pub fn regular_vertex_count(delta: usize, sigma: usize) -> usize {
    sigma * (delta - 1) + 2
}

/// Spine length of a `delta`-regular caterpillar on `n` vertices, if one exists.
pub fn spine_length_for(delta: usize, n: usize) -> Option<usize> {
    if delta < 2 || n < 2 || !(n - 2).is_multiple_of(delta - 1) {
        return None;
    }
    let sigma = (n - 2) / (delta - 1);
    (sigma >= 1).then_some(sigma)
}

/// Builds the `delta`-regular caterpillar with `sigma` spine vertices.
pub fn make_regular_caterpillar(delta: usize, sigma: usize) -> Result<Caterpillar> {
    if delta < 2 {
        return param(format!("delta must be at least 2, got {delta}"));
    }
    if sigma < 1 {
        return param("sigma must be at least 1");
    }
    let spine: Vec<usize> = (0..sigma).collect();
    let mut next = sigma;
    let leaves = (0..sigma)
        .map(|i| {
            let count = match sigma {
                1 => delta,
                _ if i == 0 || i == sigma - 1 => delta - 1,
                _ => delta - 2,
            };
            let ls: Vec<usize> = (next..next + count).collect();
            next += count;
            ls
        })
        .collect();
    Caterpillar::new(spine, leaves)
}

pub fn regularity_of(c: &Caterpillar) -> Option<usize> {
    c.regularity()
}

/// Necessary condition for packing `h` connected `n`-vertex graphs with the
/// given maximum degrees.
pub fn check_packing_necessary(n: usize, h: usize, max_degrees: &[usize]) -> bool {
    n >= 2 * h && max_degrees.iter().all(|&d| d + h <= n)
}

/// Lists which of the two placement conditions fail for `h` copies of the
/// `delta`-regular caterpillar with `sigma` spine vertices.
pub fn placement_violations(delta: usize, sigma: usize, h: usize) -> Result<Vec<Condition>> {
    if delta < 2 {
        return param(format!("delta must be at least 2, got {delta}"));
    }
    if sigma < 2 {
        return param("sigma = 1 makes the spine vertex adjacent to every other vertex");
    }
    if h < 1 {
        return param("h must be at least 1");
    }
    let n = regular_vertex_count(delta, sigma);
    let mut out = Vec::new();
    if delta + h > n {
        out.push(Condition::DegreeAtMostNMinusH { delta, n, h });
    }
    let required = 2 * h + (delta - 1) * (sigma % 2);
    if n < required {
        out.push(Condition::EnoughVertices { n, required });
    }
    Ok(out)
}

/// Whether `h` copies of the `delta`-regular caterpillar with `sigma` spine
/// vertices admit a placement.
pub fn placement_exists(delta: usize, sigma: usize, h: usize) -> Result<bool> {
    Ok(placement_violations(delta, sigma, h)?.is_empty())
}

/// True when `h` copies of a `delta`-regular caterpillar on exactly `2h`
/// vertices cannot be placed in any graph, i.e. `(h-1)/(delta-1)` is fractional.
pub fn forbids_n_eq_2h(delta: usize, h: usize) -> Result<bool> {
    if delta < 2 || h < 2 {
        return param("need delta >= 2 and h >= 2");
    }
    if spine_length_for(delta, 2 * h).is_none() {
        return param(format!("no {delta}-regular caterpillar has {} vertices", 2 * h));
    }
    Ok(!(h - 1).is_multiple_of(delta - 1))
}

/// Caterpillar on `n` vertices whose center has degree `n - h`: the center
/// carries `n - h - 1` leaves and starts a pendant path of `h` further vertices.
pub fn make_center_caterpillar(n: usize, h: usize) -> Result<Caterpillar> {
    let min_n = match h {
        3 | 4 => h + 7,
        5 => 24,
        _ => return param(format!("h must be 3, 4 or 5, got {h}")),
    };
    if n < min_n {
        return param(format!("n must be at least {min_n} for h = {h}, got {n}"));
    }
    // spine: center, p_1 .. p_{h-1}; p_h hangs off p_{h-1}
    let spine: Vec<usize> = (0..h).collect();
    let mut leaves = vec![Vec::new(); h];
    leaves[0] = (h..n - 1).collect();
    leaves[h - 1] = vec![n - 1];
    Caterpillar::new(spine, leaves)
}

/// Degree of the center (first spine vertex) of a caterpillar built by
/// [`make_center_caterpillar`].
pub fn center_degree(c: &Caterpillar) -> usize {
    c.spine_degree(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_regular_shapes() {
        let c = make_regular_caterpillar(3, 2).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.spine(), &[0, 1]);
        assert_eq!(c.leaves(), &[vec![2, 3], vec![4, 5]]);
        assert_eq!(make_regular_caterpillar(4, 4).unwrap().n(), 14);
        assert_eq!(make_regular_caterpillar(17, 2).unwrap().n(), 34);
    }

    #[test]
    fn single_spine_vertex_is_a_star() {
        let c = make_regular_caterpillar(4, 1).unwrap();
        assert_eq!(c.n(), 5);
        assert_eq!(c.spine_degree(0), 4);
        assert!(placement_exists(4, 1, 2).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert!(make_regular_caterpillar(1, 3).is_err());
        assert!(make_regular_caterpillar(3, 0).is_err());
        assert!(make_center_caterpillar(9, 3).is_err());
        assert!(make_center_caterpillar(23, 5).is_err());
        assert!(make_center_caterpillar(30, 6).is_err());
        assert!(forbids_n_eq_2h(4, 3).is_err()); // 4 vertices: 4 - 2 not divisible by 3
    }

    #[test]
    fn regularity() {
        assert_eq!(regularity_of(&make_regular_caterpillar(4, 4).unwrap()), Some(4));
        assert_eq!(regularity_of(&make_regular_caterpillar(2, 2).unwrap()), Some(2));
        let c = make_center_caterpillar(10, 3).unwrap();
        // center 7, p_1 and p_2 both 2
        assert_eq!(c.degrees()[0], 7);
        assert_eq!(c.spine_degree(1), 2);
        assert_eq!(c.spine_degree(2), 2);
        assert_eq!(regularity_of(&c), None);
    }

    #[test]
    fn center_degrees() {
        assert_eq!(center_degree(&make_center_caterpillar(10, 3).unwrap()), 7);
        assert_eq!(center_degree(&make_center_caterpillar(11, 4).unwrap()), 7);
        let c = make_center_caterpillar(24, 5).unwrap();
        assert_eq!(c.n(), 24);
        assert_eq!(center_degree(&c), 19);
    }

    #[test]
    fn necessary_condition() {
        assert!(check_packing_necessary(6, 3, &[3, 3, 3]));
        assert!(check_packing_necessary(8, 4, &[3, 3, 3, 3]));
        assert!(!check_packing_necessary(10, 3, &[8, 1, 1]));
        assert!(!check_packing_necessary(7, 4, &[2, 2, 2, 2]));
    }

    #[test]
    fn characterization_examples() {
        assert!(placement_exists(3, 2, 3).unwrap());
        assert!(!placement_exists(3, 3, 4).unwrap());
        assert!(placement_exists(4, 4, 7).unwrap());
        let v = placement_violations(3, 3, 4).unwrap();
        assert_eq!(v, vec![Condition::EnoughVertices { n: 8, required: 10 }]);
    }

    #[test]
    fn n_eq_2h() {
        assert!(forbids_n_eq_2h(3, 4).unwrap());
        assert!(!forbids_n_eq_2h(3, 3).unwrap());
        assert!(!forbids_n_eq_2h(2, 2).unwrap());
    }

    #[test]
    fn json_shape_and_validation() {
        let c = make_regular_caterpillar(3, 2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"n":6,"spine":[0,1],"leaves":[[2,3],[4,5]]}"#);
        let back: Caterpillar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let dup = r#"{"n":4,"spine":[0,1],"leaves":[[2],[2]]}"#;
        assert!(serde_json::from_str::<Caterpillar>(dup).is_err());
        let wrong_n = r#"{"n":5,"spine":[0,1],"leaves":[[2],[3]]}"#;
        assert!(serde_json::from_str::<Caterpillar>(wrong_n).is_err());
        let bare_end = r#"{"n":3,"spine":[0,1],"leaves":[[2],[]]}"#;
        assert!(serde_json::from_str::<Caterpillar>(bare_end).is_err());
    }

    #[test]
    fn recognition_and_signature() {
        let c = make_regular_caterpillar(4, 3).unwrap();
        // relabel by reversing ids
        let n = c.n();
        let edges: Vec<_> = c.edges().into_iter().map(|(a, b)| (n - 1 - a, n - 1 - b)).collect();
        let d = Caterpillar::from_edges(n, &edges).unwrap();
        assert_eq!(d.signature(), c.signature());
        assert_eq!(d.regularity(), Some(4));

        let star_path = make_center_caterpillar(10, 3).unwrap();
        assert_ne!(star_path.signature(), c.signature());

        // a spider with three legs is a tree but not a caterpillar
        let spider = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
        assert!(Caterpillar::from_edges(7, &spider).is_err());
    }
}
