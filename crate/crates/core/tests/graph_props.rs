#![allow(clippy::needless_range_loop)]
use std::collections::BTreeMap;

use kdl_core::graphs::{
    betti1, classify_gluing, enumerate_gluings, induced_morphism, neron_polygon_graph,
    pullback_rank, triple_line_graph, BicolouredGraph, GluingClass, GraphMorphism, PolygonGluing,
};
use proptest::prelude::*;

/// Fraction-free rank over Q of a small integer matrix.
fn rank(mut a: Vec<Vec<i128>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            let (x, y) = (a[r][c], a[i][c]);
            for j in 0..cols {
                a[i][j] = a[i][j] * x - a[r][j] * y;
            }
            let g = a[i].iter().fold(0, |g, &v| num_integer::gcd(g, v));
            if g > 1 {
                a[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        r += 1;
    }
    r
}

/// `dim H¹ = #edges - rank(incidence matrix)`.
fn betti1_oracle(g: &BicolouredGraph) -> usize {
    let nw = g.white().len();
    let wpos: BTreeMap<u32, usize> = g.white().iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let bpos: BTreeMap<u32, usize> = g
        .black()
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, nw + i))
        .collect();
    let rows: Vec<Vec<i128>> = g
        .edges()
        .iter()
        .map(|(w, b)| {
            let mut row = vec![0; g.vertex_count()];
            row[wpos[w]] -= 1;
            row[bpos[b]] += 1;
            row
        })
        .collect();
    g.edges().len() - rank(rows)
}

fn graph() -> impl Strategy<Value = BicolouredGraph> {
    (1u32..=4, 0u32..=3).prop_flat_map(|(nw, nb)| {
        let branches = prop::collection::vec(prop::collection::vec(0..nw, 2..=4), nb as usize);
        (Just(nw), branches).prop_map(|(nw, branches)| {
            let edges = branches
                .iter()
                .enumerate()
                .flat_map(|(b, ws)| ws.iter().map(move |&w| (w, b as u32)))
                .collect();
            BicolouredGraph::new(
                (0..nw).collect(),
                (0..branches.len() as u32).collect(),
                edges,
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn betti1_matches_incidence_rank(g in graph()) {
        prop_assert_eq!(betti1(&g), betti1_oracle(&g));
    }

    #[test]
    fn betti1_is_additive(g in graph(), h in graph()) {
        prop_assert_eq!(betti1(&g.disjoint_union(&h)), betti1(&g) + betti1(&h));
    }

    #[test]
    fn identity_pullback_is_full_rank(g in graph()) {
        prop_assert_eq!(pullback_rank(&GraphMorphism::identity(&g)).unwrap(), betti1(&g));
    }
}

/// Rank of `φ_*` on the fundamental cycle of the hexagon: push the signed
/// edge chain forward and test whether it vanishes. By duality this equals
/// the rank of `φ*` on `H¹`.
fn pushforward_rank(m: &GraphMorphism) -> usize {
    let mut image = vec![0i64; m.target.edges().len()];
    for (k, &f) in m.edge_map.iter().enumerate() {
        // Edge 2i runs C_i → p_i, edge 2i+1 runs p_i → C_{i+1} backwards.
        image[f] += if k % 2 == 0 { 1 } else { -1 };
    }
    usize::from(image.iter().any(|&x| x != 0))
}

#[test]
fn untwisted_iff_pullback_vanishes() {
    let mut seen = [0usize; 2];
    for g in PolygonGluing::all_candidates() {
        let class = classify_gluing(&g);
        if class == GluingClass::Invalid {
            continue;
        }
        let m = induced_morphism(&g).unwrap();
        let r = pullback_rank(&m).unwrap();
        assert_eq!(r, pushforward_rank(&m), "{g:?}");
        assert!(r <= 1);
        assert_eq!(r == 0, class == GluingClass::Untwisted, "{g:?}");
        seen[r] += 1;
    }
    assert_eq!(seen, [12, 36]);
}

#[test]
fn enumeration_summary() {
    let e = enumerate_gluings().unwrap();
    assert_eq!(
        (e.candidates, e.valid, e.untwisted, e.twisted),
        (46656, 48, 12, 36)
    );
    assert_eq!(e.orbits.len(), 2);
    assert_eq!(e.orbits.iter().map(|o| o.size).sum::<usize>(), 48);
}

#[test]
fn curve_graphs() {
    assert_eq!(betti1(&neron_polygon_graph(6)), 1);
    assert_eq!(betti1(&triple_line_graph()), 2);
    for k in 1..=12 {
        let g = neron_polygon_graph(k);
        assert_eq!(g.edges().len(), 2 * g.black().len());
        assert_eq!(g.edges().len(), 2 * g.white().len());
        assert_eq!(betti1(&g), 1);
        assert_eq!(betti1_oracle(&g), 1);
    }
}
