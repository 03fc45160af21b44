use num_complex::Complex64;
use proptest::prelude::*;

use spiderweb_core::discretize::{
    discretize, edge_lengths, overlap_number, project_function, DiscretizationConfig, PARENT_TOLERANCE,
};
use spiderweb_core::generators::{gen_homogeneous_tree, gen_random_ab_tree};
use spiderweb_core::graph::{validate_spiderweb, VertexId};
use spiderweb_core::oracle::{
    disk_distance, DiskOracle, DiskPoint, MetricOracle, MetricTreeOracle, EPS_EQ, EPS_SPHERE, EPS_TRI,
};

/// Contract every backend must satisfy, checked on the given points.
fn oracle_contract<O: MetricOracle>(o: &O, pts: &[O::Point], sphere_radii: &[u32], seed: u64) {
    for p in pts {
        assert!(o.distance(p, p).abs() <= EPS_EQ);
        for q in pts {
            let d = o.distance(p, q);
            assert!(d >= 0.0 && (d - o.distance(q, p)).abs() <= EPS_EQ);
            for r in pts.iter().take(8) {
                assert!(o.distance(p, r) <= d + o.distance(q, r) + EPS_TRI);
            }
            for frac in [0.0, 0.25, 0.5, 1.0] {
                let z = o.geodesic_point(p, q, frac * d).unwrap();
                assert!((o.distance(p, &z) - frac * d).abs() <= EPS_TRI * d.max(1.0));
                assert!((o.distance(&z, q) - (1.0 - frac) * d).abs() <= EPS_TRI * d.max(1.0));
            }
        }
    }
    let base = o.basepoint();
    for &n in sphere_radii {
        let s = o.sample_sphere(n, 16, seed).unwrap();
        assert!(!s.is_empty());
        assert_eq!(s, o.sample_sphere(n, 16, seed).unwrap());
        for p in &s {
            assert!((o.distance(&base, p) - n as f64).abs() <= EPS_SPHERE);
        }
    }
    let ball = o.sample_ball(3.0, 64, seed).unwrap();
    assert_eq!(ball.len(), 64);
    assert!(ball.iter().all(|p| o.distance(&base, p) <= 3.0 + EPS_SPHERE));
    assert!(o.coordinates(&base).iter().all(|c| c.is_finite()));
}

fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0f64..0.97, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| DiskPoint::new(r * a.cos(), r * a.sin()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn disk_backend_satisfies_the_contract(pts in prop::collection::vec(disk_point(), 2..10), seed in any::<u64>()) {
        oracle_contract(&DiskOracle, &pts, &[1, 3, 7], seed);
    }

    #[test]
    fn tree_backend_satisfies_the_contract(depth in 2u32..=5, seed in any::<u64>()) {
        let g = gen_random_ab_tree(2, 3, depth, seed).unwrap();
        let o = MetricTreeOracle::new(g.tree().clone());
        let mut pts = o.sample_ball(depth as f64, 10, seed).unwrap();
        pts.push(o.basepoint());
        oracle_contract(&o, &pts, &[1, depth], seed);
        for a in (0..g.len()).step_by(3).map(VertexId::from) {
            for b in (0..g.len()).step_by(5).map(VertexId::from) {
                let d = o.distance(&o.point(a, 0.0).unwrap(), &o.point(b, 0.0).unwrap());
                prop_assert_eq!(d, g.tree().tree_distance(a, b) as f64);
            }
        }
    }

    #[test]
    fn disk_distance_is_invariant_under_isometries(p in disk_point(), q in disk_point(),
                                                   phi in 0.0f64..6.3, a in disk_point()) {
        let d = disk_distance(&p, &q);
        let rot = Complex64::from_polar(1.0, phi);
        let a = a.z() * 0.9;
        let mobius = |z: Complex64| rot * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z);
        let (mp, mq) = (mobius(p.z()), mobius(q.z()));
        prop_assume!(mp.norm() < 0.999 && mq.norm() < 0.999);
        let moved = disk_distance(&DiskPoint::from_complex(mp).unwrap(), &DiskPoint::from_complex(mq).unwrap());
        prop_assert!((moved - d).abs() <= 1e-7 * d.max(1.0));
    }
}

#[test]
fn disk_radial_distance_by_closed_form() {
    for r in [0.0, 0.1, 0.5, 0.9, 0.99] {
        let p = DiskPoint::new(0.0, r).unwrap();
        let expected = ((1.0 + r) / (1.0 - r)).ln();
        assert!((disk_distance(&DiskPoint::origin(), &p) - expected).abs() <= 1e-12 * expected.max(1.0));
    }
    assert!(DiskPoint::new(1.0, 0.0).is_err());
    assert!(DiskPoint::new(0.9999999, 0.0).is_err());
}

#[test]
fn disk_spheres_grow_exponentially() {
    // Circumference 2π sinh(n) of a hyperbolic circle.
    let sizes: Vec<usize> = (1..=10).map(|n| DiskOracle.sphere_size_estimate(n)).collect();
    for w in sizes.windows(2).skip(2) {
        assert!(w[1] as f64 >= 2.5 * w[0] as f64);
    }
    let cfg = DiscretizationConfig::new(6);
    let disc = discretize(&DiskOracle, &cfg).unwrap();
    let levels = disc.level_sizes();
    assert!(levels[6] as f64 >= 2.0 * levels[5] as f64, "{levels:?}");
}

#[test]
fn disk_discretization_is_deterministic_and_valid() {
    let cfg = DiscretizationConfig { calibrate_k: true, seed: 3, ..DiscretizationConfig::new(5) };
    let a = discretize(&DiskOracle, &cfg).unwrap();
    let b = discretize(&DiskOracle, &cfg).unwrap();
    assert_eq!(a.web, b.web);
    assert_eq!(a.embedding, b.embedding);
    assert!(validate_spiderweb(&a.web).is_empty());
    assert!(a.max_parent_distance() <= 2.0 + PARENT_TOLERANCE);
    assert!(edge_lengths(&a, &DiskOracle).within_bounds);
    // Distinct vertices of one level are 1-separated.
    for k in 1..=5 {
        let lvl: Vec<_> = a.web.tree().level_vertices(k).collect();
        for (i, &x) in lvl.iter().enumerate() {
            for &y in &lvl[i + 1..] {
                assert!(disk_distance(&a.embedding[x.index()], &a.embedding[y.index()]) >= 1.0);
            }
        }
    }
    let omega = overlap_number(&a, &DiskOracle, 500, 1).unwrap();
    assert!(omega >= 1);
}

#[test]
fn projection_sums_cloud_weights_near_each_vertex() {
    let g = gen_homogeneous_tree(2, 4).unwrap();
    let o = MetricTreeOracle::new(g.tree().clone());
    let cfg = DiscretizationConfig { theta: 0.5, allow_small_theta: true, ..DiscretizationConfig::new(4) };
    let disc = discretize(&o, &cfg).unwrap();
    let cloud: Vec<_> = o.sample_ball(4.0, 50, 9).unwrap().into_iter().zip((1..=50).map(f64::from)).collect();
    let pf = project_function(&disc, &o, &cloud).unwrap();
    for (i, e) in disc.embedding.iter().enumerate() {
        let brute: f64 = cloud.iter().filter(|(p, _)| o.distance(e, p) < 2.0).map(|(_, w)| w).sum();
        assert_eq!(pf.values()[i], brute);
    }
}
