use proptest::prelude::*;

use spiderweb_core::generators::{gen_dyadic_web, gen_random_ab_tree, gen_random_spiderweb};
use spiderweb_core::geodesics::{
    four_point_delta, four_point_delta_at_base, horizontal_bound_report, standard_geodesic, BoundVerdict, DeltaMode,
    GeodesicSource, HalfInt,
};
use spiderweb_core::graph::bfs_distances;
use spiderweb_core::{SpiderWeb, VertexId};

fn floyd_warshall(g: &SpiderWeb) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut d = vec![vec![i64::MAX / 4; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for v in g.neighbors(VertexId::from(i)) {
            row[v.index()] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Doubled four-point constant by direct enumeration.
fn brute_delta_doubled(d: &[Vec<i64>], base: Option<usize>) -> i64 {
    let n = d.len();
    let bases: Vec<usize> = base.map_or((0..n).collect(), |w| vec![w]);
    let mut best = 0;
    for &w in &bases {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let p = |a: usize, b: usize| d[w][a] + d[w][b] - d[a][b];
                    best = best.max(p(x, y).min(p(y, z)) - p(x, z));
                }
            }
        }
    }
    best
}

fn small_web() -> impl Strategy<Value = SpiderWeb> {
    (0u32..=1, 2u32..=3, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(extra, depth, density, seed)| gen_random_spiderweb(2, 2 + extra, depth, density, seed).unwrap())
        .prop_filter("exhaustive size", |g| g.len() <= 40)
}

fn medium_web() -> impl Strategy<Value = SpiderWeb> {
    (2u32..=3, 0u32..=1, 2u32..=6, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(a, extra, depth, density, seed)| gen_random_spiderweb(a, a + extra, depth, density, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exhaustive_delta_matches_brute_force(g in small_web()) {
        let d = floyd_warshall(&g);
        let est = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0).unwrap();
        prop_assert_eq!(est.delta, HalfInt::from_doubled(brute_delta_doubled(&d, None)));
        let w = VertexId::from(g.len() / 2);
        let at_w = four_point_delta_at_base(&g, w).unwrap().delta;
        prop_assert_eq!(at_w, HalfInt::from_doubled(brute_delta_doubled(&d, Some(w.index()))));
        prop_assert!(at_w <= est.delta);
        prop_assert!(est.delta.doubled() <= 2 * at_w.doubled());
    }

    #[test]
    fn sampled_delta_is_a_lower_bound(g in small_web(), seed in any::<u64>()) {
        let exact = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0).unwrap().delta;
        let sampled = four_point_delta(&g, DeltaMode::Sampled, 5000, seed).unwrap();
        prop_assert!(sampled.delta <= exact);
        prop_assert_eq!(sampled, four_point_delta(&g, DeltaMode::Sampled, 5000, seed).unwrap());
    }

    #[test]
    fn standard_geodesics_are_shortest_and_minimise_level(g in medium_web(), s in any::<prop::sample::Index>()) {
        let x = VertexId::from(s.index(g.len()));
        let src = GeodesicSource::new(&g, x);
        let dx = bfs_distances(&g, x);
        for y in (0..g.len()).map(VertexId::from) {
            let dy = bfs_distances(&g, y);
            let d = dx.get(y);
            // Lowest level touched by any shortest path from x to y.
            let lowest = (0..g.len())
                .map(VertexId::from)
                .filter(|&v| dx.get(v) + dy.get(v) == d)
                .map(|v| g.level(v))
                .min()
                .unwrap();
            let geo = src.geodesic_to(y).unwrap();
            geo.check(&g).unwrap();
            prop_assert_eq!(geo.total_length, d);
            prop_assert_eq!(src.min_level(y), lowest);
            prop_assert_eq!(g.level(geo.horizontal[0]), lowest);
            prop_assert_eq!(geo.ascending_length(), g.level(x) - lowest);
            prop_assert_eq!(geo.descending_length(), g.level(y) - lowest);
        }
    }

    #[test]
    fn tree_geodesics_have_at_most_one_horizontal_step(depth in 1u32..=4, seed in any::<u64>()) {
        let g = gen_random_ab_tree(2, 3, depth, seed).unwrap();
        for x in (0..g.len()).map(VertexId::from) {
            for y in (0..g.len()).map(VertexId::from) {
                let geo = standard_geodesic(&g, x, y).unwrap();
                prop_assert_eq!(geo.horizontal_length(), 0);
                prop_assert_eq!(geo.total_length, g.tree().tree_distance(x, y));
            }
        }
    }
}

#[test]
fn dyadic_pair_uses_one_horizontal_edge() {
    let g = gen_dyadic_web(6).unwrap();
    let x = spiderweb_core::generators::dyadic_word_id("011111");
    let y = spiderweb_core::generators::dyadic_word_id("100000");
    let geo = standard_geodesic(&g, x, y).unwrap();
    assert_eq!((geo.ascending_length(), geo.horizontal_length(), geo.descending_length()), (0, 1, 0));
}

#[test]
fn horizontal_bound_on_small_dyadic_web_with_exact_delta() {
    let g = gen_dyadic_web(4).unwrap();
    let delta = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0).unwrap().delta;
    let pairs: Vec<_> =
        (0..g.len()).flat_map(|a| (0..g.len()).map(move |b| (VertexId::from(a), VertexId::from(b)))).collect();
    let rep = horizontal_bound_report(&g, delta, true, &pairs).unwrap();
    assert_eq!(rep.verdict, BoundVerdict::Pass);
    assert!(rep.max_horizontal as f64 <= 4.0 * delta.to_f64() + 1.0);
}
