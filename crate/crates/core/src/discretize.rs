//! Discretization of a metric space into a spider's web: sphere nets,
//! predecessor tree, threshold graph `Γ`, completion to `Γ̂`, and the
//! diagnostics comparing `Γ̂` with the source space.

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    bfs_distances, max_failing_order, validate_quasi_spiderweb, validate_spiderweb, RootedTree, SpiderWeb, VertexId,
};
use crate::maximal::GraphFunction;
use crate::oracle::{MetricOracle, EPS_SPHERE};
use crate::rng;

/// Smallest threshold accepted without `allow_small_theta`.
pub const THETA_FLOOR: f64 = 15.0;
/// Predecessor distances above `2 + NET_QUALITY_SLACK` abort the run.
pub const NET_QUALITY_SLACK: f64 = 0.1;
/// Predecessor distances are expected to stay within `2 + PARENT_TOLERANCE`.
pub const PARENT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct DiscretizationConfig {
    /// Levels `1..=max_radius` are built.
    pub max_radius: u32,
    pub theta: f64,
    /// Completion parameter; ignored when `calibrate_k` is set.
    pub k: u32,
    /// Use the smallest `K` for which `Γ` is a quasi-spider's web.
    pub calibrate_k: bool,
    /// Sphere samples per level, as a multiple of the net-size estimate.
    pub sphere_oversample: u32,
    pub seed: u64,
    pub allow_small_theta: bool,
    /// Maximal valence allowed, as a multiple of the median valence.
    pub valence_ceiling_factor: f64,
    /// Distance from the frontier excluded from metric assertions;
    /// `None` means `theta + 2`.
    pub margin: Option<f64>,
}

impl DiscretizationConfig {
    pub fn new(max_radius: u32) -> Self {
        DiscretizationConfig {
            max_radius,
            theta: THETA_FLOOR,
            k: 20,
            calibrate_k: false,
            sphere_oversample: 8,
            seed: 0,
            allow_small_theta: false,
            valence_ceiling_factor: 10.0,
            margin: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_radius == 0 {
            return Err(Error::Config("max_radius must be >= 1".into()));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(Error::Config(format!("theta must be positive, got {}", self.theta)));
        }
        if self.theta < THETA_FLOOR && !self.allow_small_theta {
            return Err(Error::Config(format!(
                "theta = {} is below the floor {THETA_FLOOR}; pass the small-theta override to allow it",
                self.theta
            )));
        }
        if self.k == 0 {
            return Err(Error::Config("K must be >= 1".into()));
        }
        if self.sphere_oversample == 0 {
            return Err(Error::Config("sphere_oversample must be >= 1".into()));
        }
        if !(self.valence_ceiling_factor > 0.0) {
            return Err(Error::Config("valence ceiling factor must be positive".into()));
        }
        if let Some(m) = self.margin {
            if !(m >= 0.0) {
                return Err(Error::Config(format!("margin must be nonnegative, got {m}")));
            }
        }
        Ok(())
    }

    pub fn interior_margin(&self) -> f64 {
        self.margin.unwrap_or(self.theta + 2.0)
    }

    /// Deepest level counted as interior.
    pub fn interior_level(&self) -> Option<u32> {
        let top = self.max_radius as f64 - self.interior_margin();
        (top >= 0.0).then(|| top.floor() as u32)
    }
}

/// Greedy 1-separated subsets of sampled spheres `S_1, ..., S_R`.
///
/// Samples are scanned in the order the oracle returns them; a sample is kept
/// iff it lies at distance at least 1 from every point kept so far. Every
/// rejected sample is therefore within 1 of the net.
pub fn build_sphere_nets<O: MetricOracle>(
    oracle: &O,
    max_radius: u32,
    oversample: u32,
    seed: u64,
) -> Result<Vec<Vec<O::Point>>> {
    if max_radius == 0 {
        return Err(Error::Domain("max_radius must be >= 1".into()));
    }
    let sample_seed = rng::derive_seed(seed, "sphere-nets");
    (1..=max_radius)
        .map(|n| {
            let count = oversample as usize * oracle.sphere_size_estimate(n).max(1);
            let samples = oracle.sample_sphere(n, count, sample_seed)?;
            Ok(greedy_net(oracle, samples))
        })
        .collect()
}

fn greedy_net<O: MetricOracle>(oracle: &O, samples: Vec<O::Point>) -> Vec<O::Point> {
    let mut kept: Vec<O::Point> = Vec::new();
    for s in samples {
        // Recently kept points are the likeliest to be close.
        if kept.iter().rev().all(|k| oracle.distance(k, &s) >= 1.0) {
            kept.push(s);
        }
    }
    kept
}

#[derive(Clone, Debug)]
pub struct TreeBuild<P> {
    pub tree: RootedTree,
    pub embedding: Vec<P>,
    /// `d(x, p(x))` for every non-root vertex (0 at the root).
    pub parent_distance: Vec<f64>,
}

/// Root the nets at the basepoint: each point of `Σ_1` hangs from the root,
/// each point of `Σ_n` from a nearest point of `Σ_{n-1}` (lowest id on ties).
pub fn build_tree<O: MetricOracle>(oracle: &O, nets: &[Vec<O::Point>]) -> Result<TreeBuild<O::Point>> {
    if let Some(n) = nets.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("the net of level {} is empty", n + 1)));
    }
    let mut parents: Vec<Option<VertexId>> = vec![None];
    let mut embedding = vec![oracle.basepoint()];
    let mut parent_distance = vec![0.0];
    let mut prev_start = 0usize;
    let mut prev_len = 1usize;
    for (lvl, net) in nets.iter().enumerate() {
        let start = embedding.len();
        let prev = &embedding[prev_start..prev_start + prev_len];
        let links: Vec<(usize, f64)> = net
            .par_iter()
            .map(|x| {
                let mut best = (0usize, f64::INFINITY);
                for (j, y) in prev.iter().enumerate() {
                    let d = oracle.distance(x, y);
                    if d < best.1 {
                        best = (j, d);
                    }
                }
                best
            })
            .collect();
        for (i, &(j, d)) in links.iter().enumerate() {
            if d > 2.0 + NET_QUALITY_SLACK {
                return Err(Error::NetQuality(format!(
                    "point {i} of level {} is {d} from its nearest predecessor; raise the oversampling",
                    lvl + 1
                )));
            }
            parents.push(Some(VertexId::from(prev_start + j)));
            parent_distance.push(d);
        }
        embedding.extend(net.iter().cloned());
        prev_start = start;
        prev_len = net.len();
    }
    Ok(TreeBuild { tree: RootedTree::from_parents(&parents)?, embedding, parent_distance })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValenceStats {
    pub min: usize,
    pub median: usize,
    pub max: usize,
    pub mean: f64,
    pub ceiling: f64,
}

/// Join same-level vertices at oracle distance at most `theta`.
pub fn build_gamma<O: MetricOracle>(
    tree: &RootedTree,
    embedding: &[O::Point],
    oracle: &O,
    theta: f64,
    ceiling_factor: f64,
) -> Result<(SpiderWeb, ValenceStats)> {
    if !(theta > 0.0) {
        return Err(Error::Domain(format!("theta must be positive, got {theta}")));
    }
    let mut edges = Vec::new();
    for k in 1..=tree.depth() {
        let range = tree.level_range(k);
        let lo = range.start as usize;
        let pts = &embedding[range.start as usize..range.end as usize];
        let level_edges: Vec<Vec<(VertexId, VertexId)>> = (0..pts.len())
            .into_par_iter()
            .map(|i| {
                (i + 1..pts.len())
                    .filter(|&j| oracle.distance(&pts[i], &pts[j]) <= theta)
                    .map(|j| (VertexId::from(lo + i), VertexId::from(lo + j)))
                    .collect()
            })
            .collect();
        edges.extend(level_edges.into_iter().flatten());
    }
    let g = SpiderWeb::new(tree.clone(), edges)?;
    let stats = valence_stats(&g, ceiling_factor);
    if stats.max as f64 > stats.ceiling {
        return Err(Error::Config(format!(
            "maximal valence {} exceeds the ceiling {} ({} x median {}); theta is too large for the net",
            stats.max, stats.ceiling, ceiling_factor, stats.median
        )));
    }
    Ok((g, stats))
}

pub fn valence_stats(g: &SpiderWeb, ceiling_factor: f64) -> ValenceStats {
    let mut v: Vec<usize> = (0..g.len()).map(|i| g.valence(VertexId::from(i))).collect();
    v.sort_unstable();
    let median = v[v.len() / 2];
    ValenceStats {
        min: v[0],
        median,
        max: *v.last().unwrap(),
        mean: v.iter().sum::<usize>() as f64 / v.len() as f64,
        ceiling: ceiling_factor * median as f64,
    }
}

/// Add `{p^j(v), p^j(w)}` for every horizontal edge `{v, w}` of `gamma` and
/// every `j >= 1` with distinct predecessors. Returns the completed web and the
/// added edges (sorted, `u < v`).
pub fn complete_to_spiderweb(gamma: &SpiderWeb, k: u32) -> Result<(SpiderWeb, Vec<(VertexId, VertexId)>)> {
    if let Some(v) = validate_quasi_spiderweb(gamma, k)?.first() {
        return Err(Error::Precondition(format!("not a quasi-spider's web for K = {k}: {v}")));
    }
    let tree = gamma.tree();
    let mut added = Vec::new();
    for (v, w) in gamma.horizontal_edges() {
        let (mut a, mut b) = (v, w);
        while let (Some(pa), Some(pb)) = (tree.parent(a), tree.parent(b)) {
            if pa == pb || gamma.has_horizontal_edge(pa, pb) {
                // The ancestors of a Γ-edge are handled when that edge is visited.
                break;
            }
            added.push(if pa < pb { (pa, pb) } else { (pb, pa) });
            a = pa;
            b = pb;
        }
    }
    added.sort_unstable();
    added.dedup();
    let web = gamma.with_extra_edges(&added)?;
    Ok((web, added))
}

pub struct Discretization<P> {
    pub config: DiscretizationConfig,
    /// The completed spider's web `Γ̂`.
    pub web: SpiderWeb,
    /// The threshold graph `Γ` before completion.
    pub gamma: SpiderWeb,
    pub embedding: Vec<P>,
    pub parent_distance: Vec<f64>,
    pub completion_edges: Vec<(VertexId, VertexId)>,
    pub valence: ValenceStats,
    /// Smallest `K` for which `Γ` is a quasi-spider's web.
    pub minimal_k: u32,
    /// `K` used for completion.
    pub k: u32,
}

impl<P> Discretization<P> {
    pub fn level_sizes(&self) -> Vec<usize> {
        (0..=self.web.depth()).map(|k| self.web.tree().level_size(k)).collect()
    }

    pub fn max_parent_distance(&self) -> f64 {
        self.parent_distance.iter().copied().fold(0.0, f64::max)
    }

    /// Vertices at level at most `R - margin`.
    pub fn interior_vertices(&self, margin: f64) -> Vec<VertexId> {
        let top = self.config.max_radius as f64 - margin;
        if top < 0.0 {
            return Vec::new();
        }
        let end = self.web.tree().level_range((top.floor() as u32).min(self.web.depth())).end;
        (0..end).map(VertexId).collect()
    }
}

/// Run the full pipeline.
pub fn discretize<O: MetricOracle>(oracle: &O, config: &DiscretizationConfig) -> Result<Discretization<O::Point>> {
    config.validate()?;
    let nets = build_sphere_nets(oracle, config.max_radius, config.sphere_oversample, config.seed)?;
    let TreeBuild { tree, embedding, parent_distance } = build_tree(oracle, &nets)?;
    drop(nets);
    let (gamma, valence) = build_gamma(&tree, &embedding, oracle, config.theta, config.valence_ceiling_factor)?;
    let minimal_k = max_failing_order(&gamma) + 1;
    let k = if config.calibrate_k { minimal_k } else { config.k };
    let (web, completion_edges) = complete_to_spiderweb(&gamma, k)?;
    if let Some(v) = validate_spiderweb(&web).first() {
        return Err(Error::Consistency(format!("completed graph is not a spider's web: {v}")));
    }
    Ok(Discretization {
        config: config.clone(),
        web,
        gamma,
        embedding,
        parent_distance,
        completion_edges,
        valence,
        minimal_k,
        k,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeLengths {
    pub tree: (f64, f64),
    pub gamma_horizontal: Option<(f64, f64)>,
    pub completion: Option<(f64, f64)>,
    /// Every `Γ`-edge has length in `[1, θ]` up to the sphere tolerance.
    pub within_bounds: bool,
}

fn min_max(it: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    it.fold(None, |acc, d| match acc {
        None => Some((d, d)),
        Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
    })
}

/// Oracle lengths of tree edges, `Γ` horizontal edges and completion edges.
pub fn edge_lengths<O: MetricOracle>(disc: &Discretization<O::Point>, oracle: &O) -> EdgeLengths {
    let emb = &disc.embedding;
    let d = |(a, b): (VertexId, VertexId)| oracle.distance(&emb[a.index()], &emb[b.index()]);
    let tree = min_max(disc.parent_distance.iter().skip(1).copied()).unwrap_or((0.0, 0.0));
    let gamma_edges: Vec<_> = disc.gamma.horizontal_edges().collect();
    let gamma_horizontal = min_max(gamma_edges.par_iter().map(|&e| d(e)).collect::<Vec<_>>().into_iter());
    let completion = min_max(disc.completion_edges.iter().map(|&e| d(e)));
    let tol = 2.0 * EPS_SPHERE;
    let theta = disc.config.theta;
    let ok = |r: Option<(f64, f64)>| r.is_none_or(|(lo, hi)| lo >= 1.0 - tol && hi <= theta + tol);
    let within_bounds = ok(Some(tree)) && ok(gamma_horizontal);
    EdgeLengths { tree, gamma_horizontal, completion, within_bounds }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeviationRow {
    /// Larger level of the two endpoints.
    pub level: u32,
    pub pairs: usize,
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoughIsometryReport {
    pub max_abs_deviation: f64,
    pub mean_abs_deviation: f64,
    /// Extremes of `d_Γ̂ - d`.
    pub min_signed: f64,
    pub max_signed: f64,
    pub pairs: usize,
    pub sources: usize,
    pub by_level: Vec<DeviationRow>,
}

impl RoughIsometryReport {
    /// Observed additive constant `max |d_Γ̂ - d|`.
    pub fn beta_obs(&self) -> f64 {
        self.max_abs_deviation
    }
}

/// Maximal number of breadth-first search roots used by the report.
pub const MAX_REPORT_SOURCES: usize = 32;

/// Compare `d_Γ̂` with the oracle distance on sampled interior pairs: up to
/// [`MAX_REPORT_SOURCES`] distinct roots, each with an equal share of
/// uniformly drawn targets.
pub fn rough_isometry_report<O: MetricOracle>(
    disc: &Discretization<O::Point>,
    oracle: &O,
    pairs: usize,
    margin: f64,
    seed: u64,
) -> Result<RoughIsometryReport> {
    if pairs == 0 {
        return Err(Error::Domain("at least one pair is required".into()));
    }
    let interior = disc.interior_vertices(margin);
    if interior.is_empty() {
        return Err(Error::Precondition(format!(
            "no vertex lies at least {margin} inside the frontier at radius {}",
            disc.config.max_radius
        )));
    }
    let mut rng = rng::stream(seed, "rough-isometry");
    let n_src = MAX_REPORT_SOURCES.min(interior.len()).min(pairs);
    let mut sources: Vec<VertexId> = sample(&mut rng, interior.len(), n_src).into_iter().map(|i| interior[i]).collect();
    sources.sort_unstable();
    let per_source = pairs.div_ceil(n_src);
    let targets: Vec<Vec<VertexId>> = sources
        .iter()
        .map(|_| (0..per_source).map(|_| interior[rng.random_range(0..interior.len())]).collect())
        .collect();
    let emb = &disc.embedding;
    let samples: Vec<(u32, f64)> = sources
        .par_iter()
        .zip(targets.par_iter())
        .flat_map_iter(|(&x, ts)| {
            let dist = bfs_distances(&disc.web, x);
            ts.iter()
                .map(|&y| {
                    let dev = dist.get(y) as f64 - oracle.distance(&emb[x.index()], &emb[y.index()]);
                    (disc.web.level(x).max(disc.web.level(y)), dev)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let samples = &samples[..pairs.min(samples.len())];
    let mut by_level: Vec<DeviationRow> = Vec::new();
    let top = samples.iter().map(|s| s.0).max().unwrap_or(0);
    for level in 0..=top {
        let devs: Vec<f64> = samples.iter().filter(|s| s.0 == level).map(|s| s.1.abs()).collect();
        if devs.is_empty() {
            continue;
        }
        by_level.push(DeviationRow {
            level,
            pairs: devs.len(),
            max_abs_deviation: devs.iter().copied().fold(0.0, f64::max),
            mean_abs_deviation: devs.iter().sum::<f64>() / devs.len() as f64,
        });
    }
    let abs: Vec<f64> = samples.iter().map(|s| s.1.abs()).collect();
    Ok(RoughIsometryReport {
        max_abs_deviation: abs.iter().copied().fold(0.0, f64::max),
        mean_abs_deviation: abs.iter().sum::<f64>() / abs.len() as f64,
        min_signed: samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min),
        max_signed: samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max),
        pairs: samples.len(),
        sources: n_src,
        by_level,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionDistortion {
    pub pairs: u64,
    /// `max (d_Γ - d_Γ̂)` over the checked pairs.
    pub max_excess: u32,
    /// Pairs with `d_Γ̂ > d_Γ`.
    pub lower_violations: u64,
    /// Pairs with `d_Γ > d_Γ̂ + 2K`.
    pub upper_violations: u64,
    pub k: u32,
}

/// Check `d_Γ̂ <= d_Γ <= d_Γ̂ + 2K` on all ordered pairs of interior vertices.
pub fn completion_distortion<P: Sync>(disc: &Discretization<P>, margin: f64) -> CompletionDistortion {
    let interior = disc.interior_vertices(margin);
    let k2 = 2 * disc.k;
    let rows: Vec<(u32, u64, u64)> = interior
        .par_iter()
        .map(|&x| {
            let dg = bfs_distances(&disc.gamma, x);
            let dw = bfs_distances(&disc.web, x);
            let mut row = (0u32, 0u64, 0u64);
            for &y in &interior {
                let (a, b) = (dg.get(y), dw.get(y));
                if b > a {
                    row.1 += 1;
                } else {
                    row.0 = row.0.max(a - b);
                    if a > b + k2 {
                        row.2 += 1;
                    }
                }
            }
            row
        })
        .collect();
    CompletionDistortion {
        pairs: (interior.len() as u64).pow(2),
        max_excess: rows.iter().map(|r| r.0).max().unwrap_or(0),
        lower_violations: rows.iter().map(|r| r.1).sum(),
        upper_violations: rows.iter().map(|r| r.2).sum(),
        k: disc.k,
    }
}

/// `ω = max` over probes of the number of vertices whose embedding lies at
/// distance less than 2 from the probe. Probes are drawn in the ball of
/// radius `max_radius - 2`.
pub fn overlap_number<O: MetricOracle>(
    disc: &Discretization<O::Point>,
    oracle: &O,
    probes: usize,
    seed: u64,
) -> Result<usize> {
    if probes == 0 {
        return Err(Error::Domain("at least one probe is required".into()));
    }
    let radius = (disc.config.max_radius as f64 - 2.0).max(0.0);
    let pts = oracle.sample_ball(radius, probes, rng::derive_seed(seed, "overlap-probes"))?;
    let base = oracle.basepoint();
    let heights: Vec<f64> = disc.embedding.iter().map(|e| oracle.distance(&base, e)).collect();
    Ok(pts
        .par_iter()
        .map(|p| {
            let hp = oracle.distance(&base, p);
            disc.embedding
                .iter()
                .zip(&heights)
                .filter(|(e, &h)| (h - hp).abs() < 2.0 && oracle.distance(p, e) < 2.0)
                .count()
        })
        .max()
        .unwrap_or(0))
}

/// `(πf)(x)`: total weight of the cloud within distance less than 2 of the
/// embedding of `x`.
pub fn project_function<O: MetricOracle>(
    disc: &Discretization<O::Point>,
    oracle: &O,
    cloud: &[(O::Point, f64)],
) -> Result<GraphFunction> {
    if let Some((_, w)) = cloud.iter().find(|(_, w)| !(*w >= 0.0 && w.is_finite())) {
        return Err(Error::Domain(format!("cloud weight {w} is not finite and nonnegative")));
    }
    let values = disc
        .embedding
        .par_iter()
        .map(|e| cloud.iter().filter(|(p, _)| oracle.distance(e, p) < 2.0).map(|(_, w)| w).sum())
        .collect();
    GraphFunction::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_homogeneous_tree, gen_random_ab_tree};
    use crate::oracle::{DiskOracle, MetricTreeOracle, TreePoint};

    fn small_theta(r: u32, theta: f64) -> DiscretizationConfig {
        DiscretizationConfig { theta, allow_small_theta: true, calibrate_k: true, ..DiscretizationConfig::new(r) }
    }

    #[test]
    fn config_checks() {
        assert!(DiscretizationConfig::new(4).validate().is_ok());
        let c = DiscretizationConfig { theta: 3.0, ..DiscretizationConfig::new(4) };
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert!(small_theta(4, 3.0).validate().is_ok());
        assert!(DiscretizationConfig::new(0).validate().is_err());
        assert_eq!(DiscretizationConfig::new(20).interior_level(), Some(3));
        assert_eq!(DiscretizationConfig::new(8).interior_level(), None);
    }

    #[test]
    fn metric_tree_round_trip() {
        let g = gen_random_ab_tree(2, 3, 5, 4).unwrap();
        let oracle = MetricTreeOracle::new(g.tree().clone());
        let disc = discretize(&oracle, &small_theta(5, 0.5)).unwrap();
        assert_eq!(disc.web, g);
        assert!(disc.completion_edges.is_empty());
        for (i, e) in disc.embedding.iter().enumerate() {
            assert_eq!(*e, TreePoint::vertex(VertexId::from(i)));
        }
    }

    #[test]
    fn sibling_edges_need_no_completion() {
        let g = gen_homogeneous_tree(2, 4).unwrap();
        let oracle = MetricTreeOracle::new(g.tree().clone());
        let disc = discretize(&oracle, &small_theta(4, 2.0)).unwrap();
        assert_eq!(disc.gamma.horizontal_edge_count(), 1 + 2 + 4 + 8);
        assert!(disc.completion_edges.is_empty());
        assert_eq!(disc.minimal_k, 1);
    }

    #[test]
    fn completion_closes_predecessor_pairs() {
        // Binary tree of depth 3 plus the cousin edge {7, 9} (parents 3 and 4,
        // grandparents both 1) and the far edge {7, 13} (parents 3 and 6).
        let t = gen_homogeneous_tree(2, 3).unwrap();
        let gamma = SpiderWeb::new(t.tree().clone(), vec![(VertexId(7), VertexId(9)), (VertexId(7), VertexId(13))])
            .unwrap();
        assert_eq!(max_failing_order(&gamma), 2);
        assert!(complete_to_spiderweb(&gamma, 2).is_err());
        let (web, added) = complete_to_spiderweb(&gamma, 3).unwrap();
        assert_eq!(added, vec![(VertexId(1), VertexId(2)), (VertexId(3), VertexId(4)), (VertexId(3), VertexId(6))]);
        assert!(validate_spiderweb(&web).is_empty());
    }

    #[test]
    fn disk_single_level_is_a_star() {
        let disc = discretize(&DiskOracle, &small_theta(1, 0.5)).unwrap();
        assert!(disc.web.len() > 1);
        assert!((1..disc.web.len()).all(|i| disc.web.parent(VertexId::from(i)) == Some(VertexId::ROOT)));
        assert!(disc.max_parent_distance() <= 1.0 + 1e-9);
    }

    #[test]
    fn disk_nets_are_separated() {
        let nets = build_sphere_nets(&DiskOracle, 4, 8, 1).unwrap();
        for net in &nets {
            for i in 0..net.len() {
                for j in i + 1..net.len() {
                    assert!(DiskOracle.distance(&net[i], &net[j]) >= 1.0);
                }
            }
        }
    }
}
