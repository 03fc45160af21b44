use proptest::prelude::*;

use spiderweb_core::generators::{gen_dyadic_web, gen_homogeneous_tree, gen_random_spiderweb};
use spiderweb_core::graph::sphere_slice;
use spiderweb_core::maximal::{
    average_Ar, levelset_decomposition, maximal_infty, maximal_infty_with, maximal_zero, pair_count,
    pair_count_profile, point_mass_family_weak_type, slice_count_bound, weak_type_constant, weak_type_from_maximal,
    GraphFunction, RadiusMode,
};
use spiderweb_core::{Error, SpiderWeb, VertexId};

fn floyd_warshall(g: &SpiderWeb) -> Vec<Vec<u32>> {
    let n = g.len();
    let mut d = vec![vec![u32::MAX / 4; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for v in g.neighbors(VertexId::from(i)) {
            row[v.index()] = 1;
        }
    }
    for k in 0..n {
        let dk = d[k].clone();
        for row in d.iter_mut() {
            let a = row[k];
            for (x, &b) in row.iter_mut().zip(&dk) {
                *x = (*x).min(a + b);
            }
        }
    }
    d
}

/// `M_∞ f` from an all-pairs table, optionally restricted to interior radii.
fn brute_maximal(g: &SpiderWeb, d: &[Vec<u32>], f: &[f64], r_max: u32, interior: bool) -> Vec<f64> {
    (0..g.len())
        .map(|y| {
            let cap = if interior { r_max.min(g.depth() - g.level(VertexId::from(y))) } else { r_max };
            (1..=cap)
                .map(|r| {
                    let ball: Vec<usize> = (0..g.len()).filter(|&z| d[y][z] <= r).collect();
                    ball.iter().map(|&z| f[z]).sum::<f64>() / ball.len() as f64
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

fn brute_weak_type(m: &[f64], norm: f64) -> f64 {
    m.iter().map(|&v| v * m.iter().filter(|&&w| w >= v).count() as f64 / norm).fold(0.0, f64::max)
}

fn small_graph() -> impl Strategy<Value = SpiderWeb> {
    (2u32..=3, 0u32..=1, 1u32..=4, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(a, extra, depth, density, seed)| gen_random_spiderweb(a, a + extra, depth, density, seed).unwrap())
}

fn function_on(n: usize) -> impl Strategy<Value = GraphFunction> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..100.0], n).prop_map(|v| GraphFunction::new(v).unwrap())
}

fn graph_and_functions() -> impl Strategy<Value = (SpiderWeb, GraphFunction, GraphFunction, f64)> {
    small_graph().prop_flat_map(|g| {
        let n = g.len();
        (Just(g), function_on(n), function_on(n), 0.0f64..10.0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_laws((g, f, h, c) in graph_and_functions()) {
        let r = 2 * g.depth();
        prop_assert_eq!(maximal_zero(&f), f.clone());
        let sum = GraphFunction::new(f.values().iter().zip(h.values()).map(|(a, b)| a + b).collect()).unwrap();
        let scaled = GraphFunction::new(f.values().iter().map(|a| c * a).collect()).unwrap();
        let (mf, mh, ms, mc) = (
            maximal_infty(&g, &f, r).unwrap(),
            maximal_infty(&g, &h, r).unwrap(),
            maximal_infty(&g, &sum, r).unwrap(),
            maximal_infty(&g, &scaled, r).unwrap(),
        );
        for i in 0..g.len() {
            let (a, b, s, cs) = (mf.values()[i], mh.values()[i], ms.values()[i], mc.values()[i]);
            let tol = 1e-12 * s.max(1.0);
            prop_assert!(a <= s + tol && b <= s + tol);
            prop_assert!(s <= a + b + tol);
            prop_assert!((cs - c * a).abs() <= 1e-12 * cs.max(1.0));
            prop_assert!(a <= f.max() * (1.0 + 1e-12));
            let a1 = average_Ar(&g, &f, VertexId::from(i), 1).unwrap().value;
            prop_assert!(a >= a1 * (1.0 - 1e-12));
        }
    }

    #[test]
    fn maximal_matches_all_pairs_brute_force((g, f, _, _) in graph_and_functions(), interior in any::<bool>()) {
        let d = floyd_warshall(&g);
        let r = 2 * g.depth();
        let mode = if interior { RadiusMode::Interior } else { RadiusMode::Full };
        let fast = maximal_infty_with(&g, &f, r, mode).unwrap().values;
        let brute = brute_maximal(&g, &d, f.values(), r, interior);
        for (a, b) in fast.values().iter().zip(&brute) {
            prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }
        if !f.is_zero() {
            let rep = weak_type_from_maximal(&fast, &f, 1.0, "f").unwrap();
            let expected = brute_weak_type(&brute, f.norm_pow(1.0));
            prop_assert!((rep.constant - expected).abs() <= 1e-9 * expected.max(1.0));
        }
    }

    #[test]
    fn pair_counts_match_nested_loops(g in small_graph(), picks in prop::collection::vec(any::<(bool, bool)>(), 1..200)) {
        let d = floyd_warshall(&g);
        let e: Vec<VertexId> = picks.iter().enumerate().filter(|(i, p)| p.0 && *i < g.len()).map(|(i, _)| VertexId::from(i)).collect();
        let f: Vec<VertexId> = picks.iter().enumerate().filter(|(i, p)| p.1 && *i < g.len()).map(|(i, _)| VertexId::from(i)).collect();
        prop_assume!(!e.is_empty() && !f.is_empty());
        let profile = pair_count_profile(&g, &e, &f, 8).unwrap();
        for (r, &u) in profile.iter().enumerate() {
            let d = &d;
            let brute = e.iter().flat_map(|x| f.iter().map(move |y| d[x.index()][y.index()])).filter(|&t| t <= r as u32).count();
            prop_assert_eq!(u, brute as u64);
            prop_assert!(u <= (e.len() * f.len()) as u64);
        }
    }

    #[test]
    fn levelset_decomposition_dominates(values in prop::collection::vec(0.0f64..1000.0, 1..200), r in 1u32..=8, a in 1.5f64..4.0) {
        let f = GraphFunction::new(values).unwrap();
        let dec = levelset_decomposition(&f, r, a).unwrap();
        prop_assert!(dec.dominated());
        let mut all: Vec<VertexId> = dec.omega.iter().chain(dec.bands.iter().flatten()).chain(&dec.f_r).copied().collect();
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), f.len());
    }
}

#[test]
fn point_mass_weak_type_matches_brute_force_at_depth_8() {
    let g = gen_homogeneous_tree(2, 8).unwrap();
    let d = floyd_warshall(&g);
    let r_max = 16;
    for (mode, interior) in [(RadiusMode::Full, false), (RadiusMode::Interior, true)] {
        let reps = point_mass_family_weak_type(&g, 1.0, r_max, mode).unwrap();
        for (k, rep) in reps.iter().enumerate() {
            let x0 = g.tree().level_vertices(k as u32).next().unwrap();
            let f = GraphFunction::point_mass(g.len(), x0);
            let m = brute_maximal(&g, &d, f.values(), r_max, interior);
            let expected = brute_weak_type(&m, 1.0);
            assert!((rep.constant - expected).abs() <= 1e-12, "level {k}: {} vs {expected}", rep.constant);
        }
    }
}

#[test]
fn averages_and_maximal_values_by_direct_count() {
    for q in 2..=4u32 {
        let g = gen_homogeneous_tree(q, 5).unwrap();
        let sigma1: Vec<VertexId> = g.tree().level_vertices(1).collect();
        let f = GraphFunction::indicator(g.len(), &sigma1);
        let avg = average_Ar(&g, &f, VertexId::ROOT, 1).unwrap();
        assert_eq!(avg.value, q as f64 / (q as f64 + 1.0));
        let delta = GraphFunction::point_mass(g.len(), VertexId::ROOT);
        let m = maximal_infty(&g, &delta, 10).unwrap();
        assert_eq!(m.get(VertexId::ROOT), 1.0 / (q as f64 + 1.0));
    }
}

#[test]
fn constant_function_and_zero_function() {
    let g = gen_dyadic_web(5).unwrap();
    let one = GraphFunction::constant(g.len(), 1.0).unwrap();
    assert!(maximal_infty(&g, &one, 10).unwrap().values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
    assert!((weak_type_constant(&g, &one, 1.0, 10).unwrap().constant - 1.0).abs() < 1e-15);
    let zero = GraphFunction::zeros(g.len());
    assert!(matches!(weak_type_constant(&g, &zero, 1.0, 10), Err(Error::Domain(_))));
    assert!(matches!(pair_count(&g, &[], &[VertexId::ROOT], 1, 2.0, 2.0), Err(Error::Domain(_))));
}

#[test]
fn slice_counts_in_a_tree_from_the_root() {
    let g = gen_homogeneous_tree(3, 6).unwrap();
    for p in 0..=6 {
        let s = slice_count_bound(&g, VertexId::ROOT, p, p, 3.0).unwrap();
        assert_eq!(s.count, 3usize.pow(p));
        assert!((s.ratio - 1.0).abs() < 1e-12);
        assert_eq!(sphere_slice(&g, VertexId::ROOT, p, p).len(), s.count);
    }
}
