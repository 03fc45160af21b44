//! The acceptance suite: one check per criterion, each with a runtime limit.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use spiderweb_core::discretize::{
    completion_distortion, discretize, overlap_number, rough_isometry_report, DiscretizationConfig, PARENT_TOLERANCE,
};
use spiderweb_core::generators::{
    dyadic_word_id, gen_dyadic_web, gen_homogeneous_tree, gen_random_ab_tree, gen_random_spiderweb,
};
use spiderweb_core::geodesics::{
    four_point_delta, horizontal_bound_report, sample_pairs, BoundVerdict, DeltaMode, GeodesicSource, HalfInt,
};
use spiderweb_core::graph::{
    bfs_distances, bfs_distances_in, validate_quasi_spiderweb, validate_spiderweb, EdgeScope, UNREACHABLE,
};
use spiderweb_core::maximal::{
    maximal_infty, maximal_zero, pair_count_profile, pair_ratio, point_mass_family_weak_type, GraphFunction,
    RadiusMode,
};
use spiderweb_core::oracle::{disk_distance, disk_geodesic_point, DiskOracle, DiskPoint, MetricOracle, MetricTreeOracle};
use spiderweb_core::{rng, Result, SpiderWeb, VertexId};

use crate::report::{ExperimentReport, Table};
use crate::{row, CliError, Params};

pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    pub check: fn() -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} ({:.1}s, limit {}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, check| Criterion { id, name, limit: Duration::from_secs(secs), check };
    vec![
        c(1, "dyadic web distances", 5, c1_dyadic_distances),
        c(2, "standard geodesic correctness", 180, c2_standard_geodesics),
        c(3, "horizontal bound", 120, c3_horizontal_bound),
        c(4, "four-point condition on trees", 60, c4_tree_delta),
        c(5, "volume growth", 30, c5_volume_growth),
        c(6, "weak-type stability", 300, c6_weak_type),
        c(7, "pair counting", 300, c7_pair_counting),
        c(8, "M0 identity and operator laws", 60, c8_operator_laws),
        c(9, "discretization round trip", 120, c9_round_trip),
        c(10, "hyperbolic plane discretization", 600, c10_disk),
        c(11, "disk oracle numerics", 30, c11_disk_numerics),
    ]
}

pub fn run_criterion(c: &Criterion) -> CriterionResult {
    let start = Instant::now();
    let res = (c.check)();
    let elapsed = start.elapsed();
    let (ok, mut detail) = match res {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = elapsed <= c.limit;
    if !in_time {
        detail.push_str("; runtime limit exceeded");
    }
    CriterionResult { id: c.id, name: c.name, passed: ok && in_time, detail, elapsed, limit: c.limit }
}

/// Run the selected criteria (all when `only` is `None`), printing one line each.
pub fn run_all(only: Option<&[u32]>) -> Vec<CriterionResult> {
    criteria()
        .iter()
        .filter(|c| only.is_none_or(|ids| ids.contains(&c.id)))
        .map(|c| {
            let r = run_criterion(c);
            println!("{}", r.line());
            r
        })
        .collect()
}

pub fn run_command(p: &Params) -> Result<ExperimentReport, CliError> {
    let only: Option<Vec<u32>> = match p.get_opt::<String>("only")? {
        Some(list) => Some(
            list.split(',')
                .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("invalid criterion `{s}`"))))
                .collect::<std::result::Result<_, _>>()?,
        ),
        None => None,
    };
    let results = run_all(only.as_deref());
    let mut t = Table::new(&["criterion", "name", "passed", "seconds", "limit_seconds", "detail"]);
    let mut r = ExperimentReport::new("accept");
    for res in &results {
        t.push(row![
            res.id,
            res.name,
            res.passed,
            format!("{:.3}", res.elapsed.as_secs_f64()),
            res.limit.as_secs(),
            format!("\"{}\"", res.detail.replace('"', "'"))
        ]);
        r.assert(&format!("criterion_{}", res.id), res.passed);
    }
    r.table("acceptance", crate::commands::out_dir(p)?.join("acceptance.csv"), t);
    Ok(r)
}

fn c1_dyadic_distances() -> Result<Outcome> {
    let g = gen_dyadic_web(13)?;
    let mut bad = Vec::new();
    for n in 1..=12 {
        let x = dyadic_word_id(&format!("0{}", "1".repeat(n)));
        let y = dyadic_word_id(&format!("1{}", "0".repeat(n)));
        let dg = bfs_distances(&g, x).get(y);
        let dt = bfs_distances_in(&g, x, EdgeScope::TreeOnly).get(y);
        if dg != 1 || dt != 2 * n as u32 + 2 {
            bad.push(format!("n={n}: d={dg}, d_T={dt}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "n = 1..12 exact".into() } else { bad.join("; ") })
}

/// Seeded webs of at most 2000 vertices with varied shapes and densities.
fn c2_web(i: u64) -> Result<SpiderWeb> {
    let density = [0.15, 0.4, 0.7, 1.0][(i % 4) as usize];
    match i % 3 {
        0 => gen_random_spiderweb(2, 3, 6, density, i),
        1 => gen_random_spiderweb(2, 2, 9, density, i),
        _ => gen_random_spiderweb(3, 4, 5, density, i),
    }
}

fn c2_standard_geodesics() -> Result<Outcome> {
    let mut pairs = 0u64;
    let mut max_n = 0;
    for i in 0..50 {
        let g = c2_web(i)?;
        if !validate_spiderweb(&g).is_empty() {
            return outcome(false, format!("web {i} fails the validator"));
        }
        max_n = max_n.max(g.len());
        let mismatches: u64 = (0..g.len())
            .into_par_iter()
            .map(|s| -> Result<u64> {
                let x = VertexId::from(s);
                let src = GeodesicSource::new(&g, x);
                let dist = bfs_distances(&g, x);
                let mut bad = 0;
                for t in 0..g.len() {
                    let y = VertexId::from(t);
                    let geo = src.geodesic_to(y)?;
                    geo.check(&g)?;
                    if geo.total_length != dist.get(y) || geo.ascending[0] != x || *geo.descending.last().unwrap() != y
                    {
                        bad += 1;
                    }
                }
                Ok(bad)
            })
            .collect::<Result<Vec<_>>>()?
            .iter()
            .sum();
        if mismatches > 0 {
            return outcome(false, format!("web {i}: {mismatches} pairs with wrong length"));
        }
        pairs += (g.len() as u64).pow(2);
    }
    outcome(true, format!("50 webs (max {max_n} vertices), {pairs} ordered pairs"))
}

fn c3_horizontal_bound() -> Result<Outcome> {
    let mut trees = 0;
    for seed in 0..10 {
        for g in [gen_random_ab_tree(2, 3, 3, seed)?, gen_homogeneous_tree(2 + (seed as u32 % 2), 3)?] {
            let est = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0)?;
            if est.delta != HalfInt::ZERO {
                return outcome(false, format!("tree with delta {}", est.delta));
            }
            let all: Vec<_> =
                (0..g.len()).flat_map(|a| (0..g.len()).map(move |b| (VertexId::from(a), VertexId::from(b)))).collect();
            let rep = horizontal_bound_report(&g, est.delta, true, &all)?;
            if rep.verdict != BoundVerdict::Pass || rep.max_horizontal > 1 {
                return outcome(false, format!("tree: max horizontal {}", rep.max_horizontal));
            }
            trees += 1;
        }
    }
    let mut detail = vec![format!("{trees} trees: all pairs pass with delta 0")];
    let mut hard = 0;
    for depth in [7, 10] {
        let g = gen_dyadic_web(depth)?;
        let est = four_point_delta(&g, DeltaMode::Sampled, 1_000_000, depth as u64)?;
        let rep = horizontal_bound_report(&g, est.delta, false, &sample_pairs(&g, 10_000, depth as u64))?;
        if rep.verdict == BoundVerdict::Fail {
            hard += 1;
        }
        detail.push(format!(
            "dyadic depth {depth}: delta_hat {}, max horizontal {} vs bound {}, {} inconclusive",
            est.delta,
            rep.max_horizontal,
            rep.bound,
            rep.violations().count()
        ));
    }
    outcome(hard == 0, detail.join("; "))
}

fn c4_tree_delta() -> Result<Outcome> {
    let mut sizes = Vec::new();
    for seed in 0..20 {
        let g = gen_random_ab_tree(2, 3, 3, seed)?;
        let est = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0)?;
        if est.delta != HalfInt::ZERO {
            return outcome(false, format!("seed {seed}: delta {}", est.delta));
        }
        sizes.push(g.len());
    }
    outcome(
        true,
        format!(
            "20 trees of {}..{} vertices, delta = 0",
            sizes.iter().min().unwrap(),
            sizes.iter().max().unwrap()
        ),
    )
}

fn ball_profile(g: &SpiderWeb, c: VertexId, scope: EdgeScope) -> Vec<u64> {
    let d = bfs_distances_in(g, c, scope);
    let max = d.dist.iter().copied().filter(|&x| x != UNREACHABLE).max().unwrap_or(0);
    let mut counts = vec![0u64; max as usize + 1];
    for &x in &d.dist {
        counts[x as usize] += 1;
    }
    for r in 1..counts.len() {
        counts[r] += counts[r - 1];
    }
    counts
}

fn c5_volume_growth() -> Result<Outcome> {
    let seed = 5;
    let t = gen_random_ab_tree(2, 3, 14, seed)?;
    for r in 0..=14u32 {
        let s = t.tree().level_size(r) as u64;
        if s < 2u64.pow(r) || s > 3u64.pow(r) {
            return outcome(false, format!("|Sigma_{r}| = {s}"));
        }
    }
    let n = t.len();
    drop(t);
    let w = gen_random_spiderweb(2, 3, 14, 0.3, seed)?;
    let mut rng = rng::stream(seed, "c5-centres");
    let mut centres = vec![VertexId::ROOT];
    centres.extend((0..20).map(|_| VertexId::from(rng.random_range(0..w.len()))));
    for &c in &centres {
        let web = ball_profile(&w, c, EdgeScope::All);
        let tree = ball_profile(&w, c, EdgeScope::TreeOnly);
        for (r, &bt) in tree.iter().enumerate() {
            let bw = web[r.min(web.len() - 1)];
            if bw < bt {
                return outcome(false, format!("centre {c}, r = {r}: web ball {bw} < tree ball {bt}"));
            }
        }
    }
    outcome(
        true,
        format!(
            "{n} vertices, 2^r <= |Sigma_r| <= 3^r for r <= 14; web balls dominate tree balls at {} centres ({} horizontal edges)",
            centres.len(),
            w.horizontal_edge_count()
        ),
    )
}

/// Weak-type constant of the point-mass family on the homogeneous binary tree.
pub fn point_mass_constant(depth: u32) -> Result<f64> {
    let g = gen_homogeneous_tree(2, depth)?;
    let reps = point_mass_family_weak_type(&g, 1.0, 2 * depth, RadiusMode::Interior)?;
    Ok(reps.iter().map(|r| r.constant).fold(0.0, f64::max))
}

fn c6_weak_type() -> Result<Outcome> {
    let depths = [8, 10, 12, 14];
    let cs: Vec<f64> = depths.iter().map(|&d| point_mass_constant(d)).collect::<Result<_>>()?;
    let mut ok = true;
    for w in cs.windows(2) {
        let ratio = w[1] / w[0];
        ok &= w[1] >= w[0] * (1.0 - 1e-12) && ratio <= 1.25;
    }
    let list: Vec<String> = depths.iter().zip(&cs).map(|(d, c)| format!("{d}: {c:.6}")).collect();
    outcome(ok, format!("constants {}", list.join(", ")))
}

/// All-pairs distances by Floyd–Warshall, independent of the library's searches.
pub fn floyd_warshall(g: &SpiderWeb) -> Vec<Vec<u32>> {
    let n = g.len();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for &v in g.neighbors(VertexId::from(i)) {
            row[v.index()] = 1;
        }
    }
    for k in 0..n {
        let dk = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == inf {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&dk) {
                if dik + y < *x {
                    *x = dik + y;
                }
            }
        }
    }
    d
}

fn c7_pair_counting() -> Result<Outcome> {
    let graphs: Vec<(&str, SpiderWeb)> = vec![
        ("dyadic_web", gen_dyadic_web(8)?),
        ("homogeneous_tree", gen_homogeneous_tree(3, 5)?),
        ("random_ab_tree", gen_random_ab_tree(2, 3, 5, 7)?),
        ("random_spiderweb", gen_random_spiderweb(2, 3, 5, 0.5, 7)?),
    ];
    let mut instances = 0;
    for (name, g) in &graphs {
        let d = floyd_warshall(g);
        let n = g.len();
        let mut rng = rng::stream(7, &format!("c7-{name}"));
        for _ in 0..100 {
            let (se, sf) = (rng.random_range(1..=n.min(60)), rng.random_range(1..=n.min(60)));
            let e: Vec<VertexId> = sample(&mut rng, n, se).into_iter().map(VertexId::from).collect();
            let f: Vec<VertexId> = sample(&mut rng, n, sf).into_iter().map(VertexId::from).collect();
            let r: u32 = rng.random_range(0..=8);
            let fast = pair_count_profile(g, &e, &f, r)?[r as usize];
            let brute = e.iter().flat_map(|x| f.iter().map(move |y| (x, y))).filter(|(x, y)| d[x.index()][y.index()] <= r).count();
            if fast != brute as u64 {
                return outcome(false, format!("{name}: U_{r} = {fast}, brute force {brute}"));
            }
            instances += 1;
        }
    }
    let sweep: Vec<f64> = (8..=12).map(dyadic_sweep_max_ratio).collect::<Result<_>>()?;
    let (lo, hi) = sweep.iter().fold((f64::INFINITY, 0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let drift = hi / lo - 1.0;
    let list: Vec<String> = sweep.iter().map(|x| format!("{x:.4}")).collect();
    outcome(
        drift <= 0.25,
        format!("{instances} instances match brute force; dyadic depth 8..12 max ratios [{}], drift {:.1}%", list.join(", "), 100.0 * drift),
    )
}

/// Largest `U_r / (2^{r/2} sqrt(|E||F|))` over a fixed sweep of set pairs
/// and radii `0..=6` on the dyadic web of the given depth: random sets,
/// a vertex against its 3-ball, and whole levels against themselves.
pub fn dyadic_sweep_max_ratio(depth: u32) -> Result<f64> {
    let g = gen_dyadic_web(depth)?;
    let n = g.len();
    let mut rng = rng::stream(depth as u64, "c7-sweep");
    let mut sets: Vec<(Vec<VertexId>, Vec<VertexId>)> = Vec::new();
    for _ in 0..10 {
        let e = sample(&mut rng, n, 50).into_iter().map(VertexId::from).collect();
        let f = sample(&mut rng, n, 50).into_iter().map(VertexId::from).collect();
        sets.push((e, f));
    }
    for _ in 0..5 {
        let x = VertexId::from(rng.random_range(0..n));
        sets.push((vec![x], spiderweb_core::graph::ball(&g, x, 3)));
    }
    for k in (2..=depth).step_by(2) {
        let level: Vec<VertexId> = g.tree().level_vertices(k).collect();
        sets.push((level.clone(), level));
    }
    let mut best = 0f64;
    for (e, f) in &sets {
        let profile = pair_count_profile(&g, e, f, 6)?;
        for (r, &u) in profile.iter().enumerate() {
            best = best.max(pair_ratio(u, r as u32, 2.0, e.len(), f.len()));
        }
    }
    Ok(best)
}

fn random_function(rng: &mut impl Rng, n: usize) -> GraphFunction {
    let values = (0..n).map(|_| if rng.random_bool(0.3) { rng.random_range(0..=100) as f64 } else { 0.0 }).collect();
    GraphFunction::new(values).expect("nonnegative")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn c8_operator_laws() -> Result<Outcome> {
    let graphs = [gen_dyadic_web(4)?, gen_homogeneous_tree(3, 3)?, gen_random_spiderweb(2, 3, 3, 0.6, 8)?];
    let mut checked = 0;
    for (gi, g) in graphs.iter().enumerate() {
        let n = g.len();
        let r_max = 2 * g.depth();
        let mut rng = rng::stream(8, &format!("c8-{gi}"));
        for _ in 0..1000 {
            let f = random_function(&mut rng, n);
            let h = random_function(&mut rng, n);
            let c = rng.random_range(0..=50) as f64 / 4.0;
            if maximal_zero(&f) != f {
                return outcome(false, "M0 f differs from f");
            }
            let sum = GraphFunction::new(f.values().iter().zip(h.values()).map(|(a, b)| a + b).collect())?;
            let scaled = GraphFunction::new(f.values().iter().map(|a| c * a).collect())?;
            let (mf, mh, ms, mc) =
                (maximal_infty(g, &f, r_max)?, maximal_infty(g, &h, r_max)?, maximal_infty(g, &sum, r_max)?, maximal_infty(g, &scaled, r_max)?);
            for i in 0..n {
                let (a, b, s, cs) = (mf.values()[i], mh.values()[i], ms.values()[i], mc.values()[i]);
                let tol = 1e-12 * s.max(1.0);
                // f <= f + h pointwise.
                if a > s + tol {
                    return outcome(false, format!("monotonicity fails at vertex {i}"));
                }
                if s > a + b + tol {
                    return outcome(false, format!("sublinearity fails at vertex {i}"));
                }
                if !close(cs, c * a) {
                    return outcome(false, format!("homogeneity fails at vertex {i}"));
                }
                if a > f.max() * (1.0 + 1e-12) {
                    return outcome(false, format!("M f exceeds max f at vertex {i}"));
                }
            }
            checked += 1;
        }
    }
    outcome(true, format!("M0 f = f and {checked} function pairs satisfy monotonicity, sublinearity, homogeneity"))
}

fn c9_round_trip() -> Result<Outcome> {
    let trees =
        [gen_homogeneous_tree(2, 6)?, gen_homogeneous_tree(3, 4)?, gen_random_ab_tree(2, 3, 5, 1)?, gen_random_ab_tree(2, 4, 4, 2)?];
    let mut notes = Vec::new();
    let mut worst_parent = 0f64;
    for (i, g) in trees.iter().enumerate() {
        let oracle = MetricTreeOracle::new(g.tree().clone());
        for theta in [0.5, 4.0] {
            let cfg = DiscretizationConfig {
                theta,
                allow_small_theta: true,
                calibrate_k: true,
                ..DiscretizationConfig::new(g.depth())
            };
            let disc = discretize(&oracle, &cfg)?;
            worst_parent = worst_parent.max(disc.max_parent_distance());
            if disc.web.tree() != g.tree() {
                return outcome(false, format!("tree {i}: parent links not recovered"));
            }
            if !validate_spiderweb(&disc.web).is_empty() {
                return outcome(false, format!("tree {i}, theta {theta}: completed graph invalid"));
            }
            if theta < 1.0 {
                for a in 0..g.len() {
                    let d = bfs_distances(&disc.web, VertexId::from(a));
                    for b in 0..g.len() {
                        if d.dist[b] as f64 != oracle.distance(&disc.embedding[a], &disc.embedding[b]) {
                            return outcome(false, format!("tree {i}: distance mismatch at ({a}, {b})"));
                        }
                    }
                }
            }
            let cd = completion_distortion(&disc, cfg.interior_margin());
            if cd.lower_violations + cd.upper_violations > 0 {
                return outcome(false, format!("tree {i}, theta {theta}: 2K comparison fails"));
            }
        }
    }
    notes.push(format!("{} trees recovered exactly", trees.len()));
    let cfg = DiscretizationConfig {
        theta: 3.0,
        allow_small_theta: true,
        calibrate_k: true,
        margin: Some(0.0),
        ..DiscretizationConfig::new(6)
    };
    let disc = discretize(&DiskOracle, &cfg)?;
    worst_parent = worst_parent.max(disc.max_parent_distance());
    let valid = validate_spiderweb(&disc.web).is_empty();
    let cd = completion_distortion(&disc, 0.0);
    notes.push(format!(
        "disk R=6 theta=3: K={}, {} completion edges, max d_G - d_web = {} over {} pairs",
        disc.k,
        disc.completion_edges.len(),
        cd.max_excess,
        cd.pairs
    ));
    notes.push(format!("max d(x,p(x)) = {worst_parent:.6}"));
    let ok = valid && cd.lower_violations == 0 && cd.upper_violations == 0 && worst_parent <= 2.0 + PARENT_TOLERANCE;
    outcome(ok, notes.join("; "))
}

/// Summary of one disk discretization run for criterion 10.
pub struct DiskRun {
    pub radius: u32,
    pub vertices: usize,
    pub k: u32,
    pub quasi_ok: bool,
    pub valid: bool,
    pub beta: f64,
    pub omega: (usize, usize),
    pub parent: f64,
}

/// Margin used for the rough-isometry comparison of criterion 10.
pub const DISK_MARGIN: f64 = 0.0;

pub fn disk_run(radius: u32) -> Result<DiskRun> {
    let cfg = DiscretizationConfig { calibrate_k: true, margin: Some(DISK_MARGIN), ..DiscretizationConfig::new(radius) };
    let disc = discretize(&DiskOracle, &cfg)?;
    let quasi_ok = validate_quasi_spiderweb(&disc.gamma, disc.k)?.is_empty();
    let valid = validate_spiderweb(&disc.web).is_empty();
    let beta = rough_isometry_report(&disc, &DiskOracle, 20_000, DISK_MARGIN, 10)?.beta_obs();
    let omega = (overlap_number(&disc, &DiskOracle, 2000, 10)?, overlap_number(&disc, &DiskOracle, 4000, 10)?);
    Ok(DiskRun { radius, vertices: disc.web.len(), k: disc.k, quasi_ok, valid, beta, omega, parent: disc.max_parent_distance() })
}

fn c10_disk() -> Result<Outcome> {
    let runs = [disk_run(6)?, disk_run(8)?];
    let mut ok = true;
    let mut notes = Vec::new();
    for r in &runs {
        ok &= r.quasi_ok && r.valid && r.omega.0.abs_diff(r.omega.1) <= 1 && r.parent <= 2.0 + PARENT_TOLERANCE;
        notes.push(format!(
            "R={}: {} vertices, K={}, quasi {}, valid {}, beta {:.4}, omega {}/{}",
            r.radius, r.vertices, r.k, r.quasi_ok, r.valid, r.beta, r.omega.0, r.omega.1
        ));
    }
    let stable = runs[1].beta <= 1.25 * runs[0].beta + 1.0;
    notes.push(format!("beta(8) <= 1.25 beta(6) + 1: {stable} (margin {DISK_MARGIN})"));
    outcome(ok && stable, notes.join("; "))
}

/// Composite Simpson rule for `∫_0^r 2/(1-t²) dt`.
pub fn radial_quadrature(r: f64, intervals: usize) -> f64 {
    let h = r / intervals as f64;
    let f = |t: f64| 2.0 / (1.0 - t * t);
    let mut s = f(0.0) + f(r);
    for i in 1..intervals {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn c11_disk_numerics() -> Result<Outcome> {
    let mut rng = rng::stream(11, "c11");
    let mut worst_quad = 0f64;
    for r in [0.1, 0.3, 0.5, 0.7, 0.8] {
        let q = radial_quadrature(r, 20_000);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let p = DiskPoint::new(r * phi.cos(), r * phi.sin())?;
        worst_quad = worst_quad.max((disk_distance(&DiskPoint::origin(), &p) - q).abs());
    }
    let mut worst_add = 0f64;
    for _ in 0..1000 {
        let mut point = || -> Result<DiskPoint> {
            let (rad, phi) = (0.95 * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
            DiskPoint::new(rad * phi.cos(), rad * phi.sin())
        };
        let (p, q) = (point()?, point()?);
        let d = disk_distance(&p, &q);
        let t = rng.random::<f64>() * d;
        let z = disk_geodesic_point(&p, &q, t)?;
        worst_add = worst_add.max((disk_distance(&p, &z) + disk_distance(&z, &q) - d).abs());
        worst_add = worst_add.max((disk_distance(&p, &z) - t).abs());
    }
    let _ = DiskOracle.basepoint();
    outcome(
        worst_quad <= 1e-10 && worst_add <= 1e-9,
        format!("quadrature error {worst_quad:.2e}, additivity error {worst_add:.2e}"),
    )
}
