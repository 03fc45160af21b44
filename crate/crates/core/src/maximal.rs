//! Centred Hardy–Littlewood maximal operator on finite spider's webs,
//! weak-type constants and pair counting.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, BoundedBfs, SpiderWeb, VertexId};

/// Compensated (Neumaier) summation.
#[derive(Copy, Clone, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// A nonnegative finite function on the vertices of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphFunction {
    values: Vec<f64>,
}

impl GraphFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::Domain(format!("function value {v} at vertex {i} is not finite and nonnegative")));
        }
        Ok(GraphFunction { values })
    }

    pub fn zeros(n: usize) -> Self {
        GraphFunction { values: vec![0.0; n] }
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        GraphFunction::new(vec![c; n])
    }

    pub fn indicator(n: usize, set: &[VertexId]) -> Self {
        let mut values = vec![0.0; n];
        for v in set {
            values[v.index()] = 1.0;
        }
        GraphFunction { values }
    }

    pub fn point_mass(n: usize, x: VertexId) -> Self {
        GraphFunction::indicator(n, &[x])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.values[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `‖f‖_τ^τ`, summed with compensation.
    pub fn norm_pow(&self, tau: f64) -> f64 {
        self.values.iter().filter(|&&v| v > 0.0).map(|&v| v.powf(tau)).collect::<Neumaier>().value()
    }

    fn check_len(&self, g: &SpiderWeb) -> Result<()> {
        if self.values.len() != g.len() {
            return Err(Error::Domain(format!(
                "function has {} values but the graph has {} vertices",
                self.values.len(),
                g.len()
            )));
        }
        Ok(())
    }
}

/// Whether the ball `B_r(x)` reaches past the deepest level of the graph.
pub fn touches_frontier(g: &SpiderWeb, x: VertexId, r: u32) -> bool {
    g.level(x) + r > g.depth()
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Average {
    pub value: f64,
    pub ball_size: u32,
    /// The ball touches the truncation frontier, so the average may be biased.
    pub truncated: bool,
}

/// Mean of `f` over the closed ball `B_r(x)`.
#[allow(non_snake_case)]
pub fn average_Ar(g: &SpiderWeb, f: &GraphFunction, x: VertexId, r: u32) -> Result<Average> {
    f.check_len(g)?;
    if r == 0 {
        return Err(Error::Domain("averaging radius must be >= 1".into()));
    }
    let mut sum = 0.0;
    let mut size = 0u32;
    BoundedBfs::new(g.len()).run(g, x, r, |v, _| {
        sum += f.get(v);
        size += 1;
    });
    Ok(Average { value: sum / size as f64, ball_size: size, truncated: touches_frontier(g, x, r) })
}

/// Which radii enter the supremum.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RadiusMode {
    /// Every `r` in `1..=r_max`.
    Full,
    /// Only radii whose ball stays within the truncation (`level(x) + r <= depth`).
    /// Vertices with no admissible radius get the value 0.
    Interior,
}

/// Largest radius evaluated at `x`; 0 means none.
pub fn radius_cap(g: &SpiderWeb, x: VertexId, r_max: u32, mode: RadiusMode) -> u32 {
    match mode {
        RadiusMode::Full => r_max,
        RadiusMode::Interior => r_max.min(g.depth() - g.level(x)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalResult {
    pub values: GraphFunction,
    /// Smallest radius attaining the maximum (0 where no radius was evaluated).
    pub best_radius: Vec<u32>,
    /// Some evaluated ball touched the truncation frontier.
    pub truncated: Vec<bool>,
}

/// `M_∞ f = max_{1 <= r <= r_max} A_r f` over all radii.
pub fn maximal_infty(g: &SpiderWeb, f: &GraphFunction, r_max: u32) -> Result<GraphFunction> {
    Ok(maximal_infty_with(g, f, r_max, RadiusMode::Full)?.values)
}

pub fn maximal_infty_with(g: &SpiderWeb, f: &GraphFunction, r_max: u32, mode: RadiusMode) -> Result<MaximalResult> {
    f.check_len(g)?;
    if r_max == 0 {
        return Err(Error::Domain("r_max must be >= 1".into()));
    }
    let per_vertex: Vec<(f64, u32, bool)> = (0..g.len())
        .into_par_iter()
        .map_init(
            || (BoundedBfs::new(g.len()), Vec::new(), Vec::new()),
            |(bfs, sums, counts): &mut (BoundedBfs, Vec<f64>, Vec<u32>), i| {
                let x = VertexId::from(i);
                let cap = radius_cap(g, x, r_max, mode);
                if cap == 0 {
                    return (0.0, 0, false);
                }
                sums.clear();
                sums.resize(cap as usize + 1, 0.0);
                counts.clear();
                counts.resize(cap as usize + 1, 0);
                bfs.run(g, x, cap, |v, d| {
                    sums[d as usize] += f.get(v);
                    counts[d as usize] += 1;
                });
                let (mut s, mut c) = (sums[0], counts[0]);
                let (mut best, mut best_r) = (f64::NEG_INFINITY, 0);
                for r in 1..=cap as usize {
                    s += sums[r];
                    c += counts[r];
                    let avg = s / c as f64;
                    if avg > best {
                        best = avg;
                        best_r = r as u32;
                    }
                }
                (best, best_r, touches_frontier(g, x, cap))
            },
        )
        .collect();
    let mut values = Vec::with_capacity(g.len());
    let mut best_radius = Vec::with_capacity(g.len());
    let mut truncated = Vec::with_capacity(g.len());
    for (v, r, t) in per_vertex {
        values.push(v);
        best_radius.push(r);
        truncated.push(t);
    }
    Ok(MaximalResult { values: GraphFunction { values }, best_radius, truncated })
}

/// `M_0 f = f`: on a graph with unit edges the balls of radius at most 1
/// that are strictly smaller than 1 contain only their centre.
pub fn maximal_zero(f: &GraphFunction) -> GraphFunction {
    f.clone()
}

/// Ball volumes `|B_r(x)|` for `r = 0..=cap(x)`, one search per vertex.
pub struct BallVolumes {
    offsets: Vec<usize>,
    cumulative: Vec<u32>,
}

impl BallVolumes {
    pub fn new(g: &SpiderWeb, r_max: u32, mode: RadiusMode) -> Self {
        let rows: Vec<Vec<u32>> = (0..g.len())
            .into_par_iter()
            .map_init(
                || BoundedBfs::new(g.len()),
                |bfs, i| {
                    let x = VertexId::from(i);
                    let cap = radius_cap(g, x, r_max, mode);
                    let mut row = vec![0u32; cap as usize + 1];
                    bfs.run(g, x, cap, |_, d| row[d as usize] += 1);
                    for r in 1..row.len() {
                        row[r] += row[r - 1];
                    }
                    row
                },
            )
            .collect();
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        for row in &rows {
            offsets.push(offsets.last().unwrap() + row.len());
        }
        BallVolumes { offsets, cumulative: rows.concat() }
    }

    /// Largest tabulated radius at `x`.
    pub fn cap(&self, x: VertexId) -> u32 {
        (self.offsets[x.index() + 1] - self.offsets[x.index()] - 1) as u32
    }

    /// `|B_r(x)|`, if `r` is within the tabulated range.
    pub fn volume(&self, x: VertexId, r: u32) -> Option<u32> {
        (r <= self.cap(x)).then(|| self.cumulative[self.offsets[x.index()] + r as usize])
    }
}

/// `M_∞ δ_{x0}` from precomputed volumes: ball volumes grow with the
/// radius, so the best ball at `y` is the smallest one containing `x0`.
pub fn point_mass_maximal(g: &SpiderWeb, volumes: &BallVolumes, x0: VertexId) -> GraphFunction {
    let dist = bfs_distances(g, x0);
    let values = (0..g.len())
        .map(|i| {
            let y = VertexId::from(i);
            let r = dist.dist[i].max(1);
            volumes.volume(y, r).map_or(0.0, |vol| 1.0 / vol as f64)
        })
        .collect();
    GraphFunction { values }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakTypeReport {
    pub tau: f64,
    /// `sup_λ λ^τ · #{M_∞ f > λ} / ‖f‖_τ^τ`.
    pub constant: f64,
    /// The supremum is the limit as `λ` increases to this value.
    pub worst_lambda: f64,
    pub function_label: String,
    pub norm_pow: f64,
}

/// Weak-type ratio of a precomputed maximal function `m` of `f`.
///
/// The distribution function `λ ↦ #{m > λ}` is a step function that drops
/// at the distinct values `v` of `m`; on `[v_next, v)` it equals
/// `#{m >= v}`, so the supremum is `max_v v^τ · #{m >= v}`, approached from
/// below each `v`.
pub fn weak_type_from_maximal(m: &GraphFunction, f: &GraphFunction, tau: f64, label: &str) -> Result<WeakTypeReport> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    if f.is_zero() {
        return Err(Error::Domain("weak-type constant of the zero function is undefined".into()));
    }
    let norm_pow = f.norm_pow(tau);
    let mut vals: Vec<f64> = m.values().iter().copied().filter(|&v| v > 0.0).collect();
    vals.sort_unstable_by(|a, b| b.total_cmp(a));
    let (mut constant, mut worst_lambda) = (0.0, 0.0);
    let mut i = 0;
    while i < vals.len() {
        let v = vals[i];
        while i < vals.len() && vals[i] == v {
            i += 1;
        }
        let c = v.powf(tau) * i as f64 / norm_pow;
        if c > constant {
            constant = c;
            worst_lambda = v;
        }
    }
    Ok(WeakTypeReport { tau, constant, worst_lambda, function_label: label.to_string(), norm_pow })
}

/// Weak-type ratio of `f` with respect to `M_∞` over radii `1..=r_max`.
pub fn weak_type_constant(g: &SpiderWeb, f: &GraphFunction, tau: f64, r_max: u32) -> Result<WeakTypeReport> {
    weak_type_constant_with(g, f, tau, r_max, RadiusMode::Full, "f")
}

pub fn weak_type_constant_with(
    g: &SpiderWeb,
    f: &GraphFunction,
    tau: f64,
    r_max: u32,
    mode: RadiusMode,
    label: &str,
) -> Result<WeakTypeReport> {
    if f.is_zero() {
        return Err(Error::Domain("weak-type constant of the zero function is undefined".into()));
    }
    let m = maximal_infty_with(g, f, r_max, mode)?;
    weak_type_from_maximal(&m.values, f, tau, label)
}

/// Weak-type reports for point masses at the first vertex of every level,
/// using the volume table.
pub fn point_mass_family_weak_type(g: &SpiderWeb, tau: f64, r_max: u32, mode: RadiusMode) -> Result<Vec<WeakTypeReport>> {
    let volumes = BallVolumes::new(g, r_max, mode);
    (0..=g.depth())
        .map(|k| {
            let x0 = VertexId(g.tree().level_range(k).start);
            let f = GraphFunction::point_mass(g.len(), x0);
            let m = point_mass_maximal(g, &volumes, x0);
            weak_type_from_maximal(&m, &f, tau, &format!("point_mass_level_{k}"))
        })
        .collect()
}

/// Shipped test-function families.
pub mod families {
    use super::GraphFunction;
    use crate::graph::{ball, SpiderWeb, VertexId};

    /// Point masses at the first vertex of each level.
    pub fn point_masses_per_level(g: &SpiderWeb) -> Vec<(String, GraphFunction)> {
        (0..=g.depth())
            .map(|k| {
                let x = VertexId(g.tree().level_range(k).start);
                (format!("point_mass_level_{k}"), GraphFunction::point_mass(g.len(), x))
            })
            .collect()
    }

    pub fn ball_indicator(g: &SpiderWeb, center: VertexId, r: u32) -> GraphFunction {
        GraphFunction::indicator(g.len(), &ball(g, center, r))
    }

    /// `x ↦ a^{-α·level(x)}`.
    pub fn radial_profile(g: &SpiderWeb, a: f64, alpha: f64) -> GraphFunction {
        let values = g.tree().levels().iter().map(|&l| a.powf(-alpha * l as f64)).collect();
        GraphFunction::new(values).expect("positive profile")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCountReport {
    pub r: u32,
    pub e_size: usize,
    pub f_size: usize,
    /// `#{(x, y) ∈ E × F : d(x, y) <= r}`.
    pub u_r: u64,
    /// `U_r / (b^{r/2} · sqrt(|E| |F|))`.
    pub ratio: f64,
}

fn check_growth(a: f64, b: f64) -> Result<()> {
    if !(a > 1.0 && a <= b && b.is_finite()) {
        return Err(Error::Domain(format!("growth parameters need 1 < a <= b, got a = {a}, b = {b}")));
    }
    Ok(())
}

fn dedup_set(set: &[VertexId], n: usize, name: &str) -> Result<Vec<VertexId>> {
    if set.is_empty() {
        return Err(Error::Domain(format!("set {name} is empty")));
    }
    if let Some(v) = set.iter().find(|v| v.index() >= n) {
        return Err(Error::Domain(format!("vertex {v} in {name} is out of range")));
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// `U_0, ..., U_{r_max}` for the pair `(E, F)`, searching from the smaller set.
pub fn pair_count_profile(g: &SpiderWeb, e: &[VertexId], f: &[VertexId], r_max: u32) -> Result<Vec<u64>> {
    let e = dedup_set(e, g.len(), "E")?;
    let f = dedup_set(f, g.len(), "F")?;
    let (src, dst) = if e.len() <= f.len() { (&e, &f) } else { (&f, &e) };
    let mut member = vec![false; g.len()];
    for v in dst {
        member[v.index()] = true;
    }
    let mut exact = vec![0u64; r_max as usize + 1];
    let mut bfs = BoundedBfs::new(g.len());
    for &x in src {
        bfs.run(g, x, r_max, |v, d| {
            if member[v.index()] {
                exact[d as usize] += 1;
            }
        });
    }
    for r in 1..exact.len() {
        exact[r] += exact[r - 1];
    }
    Ok(exact)
}

pub fn pair_count(g: &SpiderWeb, e: &[VertexId], f: &[VertexId], r: u32, a: f64, b: f64) -> Result<PairCountReport> {
    check_growth(a, b)?;
    let u_r = pair_count_profile(g, e, f, r)?[r as usize];
    let (e_size, f_size) = (dedup_set(e, g.len(), "E")?.len(), dedup_set(f, g.len(), "F")?.len());
    Ok(PairCountReport { r, e_size, f_size, u_r, ratio: pair_ratio(u_r, r, b, e_size, f_size) })
}

pub fn pair_ratio(u: u64, r: u32, b: f64, e_size: usize, f_size: usize) -> f64 {
    u as f64 / (b.powf(r as f64 / 2.0) * ((e_size as f64) * (f_size as f64)).sqrt())
}

/// Shell counts `G_p = U_p - U_{p-1}` (with `G_0 = U_0`) and their
/// normalisations `C_p = G_p / (b^{p/2} sqrt(|E| |F|))`.
pub fn shell_constants(profile: &[u64], b: f64, e_size: usize, f_size: usize) -> Vec<(u64, f64)> {
    (0..profile.len())
        .map(|p| {
            let gp = profile[p] - if p == 0 { 0 } else { profile[p - 1] };
            (gp, pair_ratio(gp, p as u32, b, e_size, f_size))
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SliceCount {
    pub count: usize,
    /// `count / b^{(p + k - level(x)) / 2}`.
    pub ratio: f64,
}

/// Size of `S_p(x) ∩ Σ_k` against `b^{(p + k - level(x)) / 2}`.
pub fn slice_count_bound(g: &SpiderWeb, x: VertexId, p: u32, k: u32, b: f64) -> Result<SliceCount> {
    let exponent = p as i64 + k as i64 - g.level(x) as i64;
    if exponent < 0 {
        return Err(Error::Domain(format!("p + k - level(x) = {exponent} is negative")));
    }
    let count = crate::graph::sphere_slice(g, x, p, k).len();
    Ok(SliceCount { count, ratio: count as f64 / b.powf(exponent as f64 / 2.0) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelSetDecomposition {
    pub r: u32,
    pub a: f64,
    /// Largest `n` with `2^n <= a^r`.
    pub n_max: u32,
    /// `{f <= 1/2}`.
    pub omega: Vec<VertexId>,
    /// `E_n = {2^{n-1} < f <= 2^n}` for `n = 0..=n_max`.
    pub bands: Vec<Vec<VertexId>>,
    /// `{f > a^r / 2}`.
    pub f_r: Vec<VertexId>,
    /// Vertices where `f <= 1/2·1_Ω + Σ 2^n·1_{E_n} + f·1_{F_r}` fails.
    pub domination_failures: Vec<VertexId>,
}

impl LevelSetDecomposition {
    pub fn dominated(&self) -> bool {
        self.domination_failures.is_empty()
    }
}

/// Split `f` into the sets `Ω`, `E_0..E_N` and `F_r` and check the pointwise
/// domination they provide.
pub fn levelset_decomposition(f: &GraphFunction, r: u32, a: f64) -> Result<LevelSetDecomposition> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::Domain(format!("a must exceed 1, got {a}")));
    }
    let top = a.powf(r as f64);
    let mut n_max = 0u32;
    while 2f64.powi(n_max as i32 + 1) <= top {
        n_max += 1;
    }
    let mut omega = Vec::new();
    let mut bands = vec![Vec::new(); n_max as usize + 1];
    let mut f_r = Vec::new();
    let mut failures = Vec::new();
    for (i, &v) in f.values().iter().enumerate() {
        let x = VertexId::from(i);
        let mut bound = 0.0;
        if v <= 0.5 {
            omega.push(x);
            bound += 0.5;
        }
        for (n, band) in bands.iter_mut().enumerate() {
            let hi = 2f64.powi(n as i32);
            if hi / 2.0 < v && v <= hi {
                band.push(x);
                bound += hi;
            }
        }
        if v > top / 2.0 {
            f_r.push(x);
            bound += v;
        }
        if v > bound {
            failures.push(x);
        }
    }
    Ok(LevelSetDecomposition { r, a, n_max, omega, bands, f_r, domination_failures: failures })
}

/// Membership of `V_n = {x : 2^n A_r(1_{E_n})(x) >= 2^{nβ-1} α}` with
/// `β = (2 - τ)/4` and `α = a^{-βr}(1 - 2^{-β})`, one set per band.
pub fn v_n_sets(g: &SpiderWeb, dec: &LevelSetDecomposition, tau: f64) -> Result<Vec<Vec<VertexId>>> {
    if !(tau > 0.0 && tau < 2.0) {
        return Err(Error::Domain(format!("the V_n threshold needs 0 < tau < 2, got {tau}")));
    }
    let beta = (2.0 - tau) / 4.0;
    let alpha = dec.a.powf(-beta * dec.r as f64) * (1.0 - 2f64.powf(-beta));
    let r = dec.r.max(1);
    let mut bfs = BoundedBfs::new(g.len());
    let mut volume = vec![0u32; g.len()];
    for (i, vol) in volume.iter_mut().enumerate() {
        bfs.run(g, VertexId::from(i), r, |_, _| *vol += 1);
    }
    let mut hits = vec![0u32; g.len()];
    let mut out = Vec::with_capacity(dec.bands.len());
    for (n, band) in dec.bands.iter().enumerate() {
        let mut touched = Vec::new();
        for &e in band {
            bfs.run(g, e, r, |x, _| {
                if hits[x.index()] == 0 {
                    touched.push(x);
                }
                hits[x.index()] += 1;
            });
        }
        let threshold = 2f64.powf(n as f64 * beta - 1.0) * alpha;
        let mut set: Vec<VertexId> = touched
            .iter()
            .copied()
            .filter(|x| 2f64.powi(n as i32) * hits[x.index()] as f64 / volume[x.index()] as f64 >= threshold)
            .collect();
        set.sort_unstable();
        for x in touched {
            hits[x.index()] = 0;
        }
        out.push(set);
    }
    Ok(out)
}
