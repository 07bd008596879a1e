use std::collections::BTreeSet;

use caterpack::caterpillar::{make_regular_caterpillar, placement_exists, regular_vertex_count};
use caterpack::oracle::{
    brute_force_placement_exists, geometric_crossing_oracle, min_k_over_offsets, SearchInstance,
    SearchMode, Verdict,
};
use caterpack::packing::{halve_by_sides, place_copies, place_three_2planar, Checks};
use caterpack::verify::{bound_placement_crossings, crossing_counts};
use caterpack::Caterpillar;

fn run(delta: usize, sigma: usize, h: usize) -> Verdict {
    brute_force_placement_exists(&SearchInstance::copies(delta, sigma, h).unwrap()).unwrap()
}

#[test]
fn oracle_agrees_with_characterization_up_to_ten_vertices() {
    for delta in 2..=9 {
        for sigma in 2..=8 {
            let n = regular_vertex_count(delta, sigma);
            if n > 10 {
                continue;
            }
            for h in 1..=n / 2 + 1 {
                let v = run(delta, sigma, h);
                let want = if placement_exists(delta, sigma, h).unwrap() { "exists" } else { "impossible" };
                assert_eq!(v.name(), want, "delta {delta} sigma {sigma} h {h}");
                if let Verdict::Exists { certificate, .. } = v {
                    let cats = vec![make_regular_caterpillar(delta, sigma).unwrap(); h];
                    certificate.check(&cats).unwrap();
                }
            }
        }
    }
}

#[test]
fn four_copies_on_eight_vertices_refuted() {
    assert!(matches!(run(3, 3, 4), Verdict::Impossible { .. }));
}

fn edge_sets(layout_edges: Vec<Vec<(usize, usize)>>) -> BTreeSet<BTreeSet<(usize, usize)>> {
    layout_edges.into_iter().map(|es| es.into_iter().collect()).collect()
}

#[test]
fn k6_certificate_is_a_relabeling_of_the_construction() {
    let Verdict::Exists { certificate, .. } = run(3, 2, 3) else { panic!("expected exists") };
    let cats = vec![make_regular_caterpillar(3, 2).unwrap(); 3];
    let found = certificate.to_layout(&cats).unwrap();
    let built = place_copies(3, 2, 3, Checks::Verified).unwrap();
    let target = edge_sets(
        built.drawings.iter().map(|d| d.edges.iter().map(|e| e.pair()).collect()).collect(),
    );
    let mut perm: Vec<usize> = (0..6).collect();
    let mut matched = false;
    loop {
        let mapped = edge_sets(
            found
                .drawings
                .iter()
                .map(|d| {
                    d.edges
                        .iter()
                        .map(|e| {
                            let (a, b) = (perm[e.a], perm[e.b]);
                            (a.min(b), a.max(b))
                        })
                        .collect()
                })
                .collect(),
        );
        if mapped == target {
            matched = true;
            break;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    assert!(matched);
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Counts edge-disjoint mapping tuples with the first copy fixed and no
/// other symmetry removed.
fn naive_count(cats: &[Caterpillar]) -> u64 {
    let n = cats[0].n();
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let edges_of = |c: &Caterpillar, m: &[usize]| -> Vec<(usize, usize)> {
        c.edges().into_iter().map(|(a, b)| (m[a].min(m[b]), m[a].max(m[b]))).collect()
    };
    type EdgesOf = dyn Fn(&Caterpillar, &[usize]) -> Vec<(usize, usize)>;
    fn go(
        i: usize,
        cats: &[Caterpillar],
        perms: &[Vec<usize>],
        used: &mut BTreeSet<(usize, usize)>,
        edges_of: &EdgesOf,
    ) -> u64 {
        if i == cats.len() {
            return 1;
        }
        let mut total = 0;
        for m in perms {
            let es = edges_of(&cats[i], m);
            if es.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(es.iter().copied());
            total += go(i + 1, cats, perms, used, edges_of);
            for e in &es {
                used.remove(e);
            }
        }
        total
    }
    let mut used: BTreeSet<(usize, usize)> = edges_of(&cats[0], &(0..n).collect::<Vec<_>>()).into_iter().collect();
    go(1, cats, &perms, &mut used, &edges_of)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

#[test]
fn canonical_count_matches_naive_enumeration() {
    for (delta, sigma, h) in [(2, 2, 2), (3, 2, 2), (3, 2, 3), (2, 3, 2)] {
        let c = make_regular_caterpillar(delta, sigma).unwrap();
        let cats = vec![c.clone(); h];
        let mut inst = SearchInstance::new(cats.clone());
        inst.mode = SearchMode::CountSolutions;
        let Verdict::Counted { solutions, .. } = brute_force_placement_exists(&inst).unwrap() else {
            panic!("expected a count")
        };
        let leaf_orders: u64 = c.leaves().iter().map(|l| factorial(l.len())).product();
        let factor = leaf_orders.pow(h as u32 - 1) * factorial(h - 1);
        assert_eq!(solutions * factor, naive_count(&cats), "delta {delta} sigma {sigma} h {h}");
    }
}

#[test]
fn search_is_deterministic() {
    assert_eq!(run(4, 2, 4), run(4, 2, 4));
}

#[test]
fn mixed_family_search() {
    // a 5-regular and a 3-regular caterpillar on 10 vertices
    let cats = vec![make_regular_caterpillar(5, 2).unwrap(), make_regular_caterpillar(3, 4).unwrap()];
    let v = brute_force_placement_exists(&SearchInstance::new(cats.clone())).unwrap();
    let Verdict::Exists { certificate, .. } = v else { panic!("expected exists") };
    certificate.check(&cats).unwrap();
}

#[test]
fn geometric_oracle_on_constructions() {
    for (delta, sigma, h) in [(4, 4, 3), (3, 6, 4), (8, 3, 5)] {
        let l = place_copies(delta, sigma, h, Checks::Verified).unwrap();
        assert_eq!(geometric_crossing_oracle(&l).unwrap(), crossing_counts(&l).unwrap());
        let half = halve_by_sides(&l);
        assert_eq!(geometric_crossing_oracle(&half).unwrap(), crossing_counts(&half).unwrap());
    }
    let three = place_three_2planar(5, 4, Checks::Verified).unwrap();
    assert_eq!(geometric_crossing_oracle(&three).unwrap(), crossing_counts(&three).unwrap());
}

#[test]
fn best_offsets_within_closed_form() {
    for (delta, sigma, h) in [(3, 2, 2), (4, 4, 2), (3, 4, 3), (4, 4, 4)] {
        let (offsets, k) = min_k_over_offsets(delta, sigma, h).unwrap();
        assert_eq!(offsets.len(), h);
        assert!(k as u64 <= bound_placement_crossings(delta, h));
    }
}
