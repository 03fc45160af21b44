//! One function per subcommand. Each reads its parameters from [`Params`]
//! and returns an [`ExperimentReport`].

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use rand::seq::index::sample;

use spiderweb_core::discretize::{
    completion_distortion, discretize, edge_lengths, overlap_number, rough_isometry_report, DiscretizationConfig,
    PARENT_TOLERANCE,
};
use spiderweb_core::format::{read_spiderweb, write_spiderweb};
use spiderweb_core::generators::{Family, GeneratorSpec};
use spiderweb_core::geodesics::{
    four_point_delta, horizontal_bound_report, sample_pairs, BoundVerdict, DeltaMode, HalfInt, EXHAUSTIVE_LIMIT,
};
use spiderweb_core::graph::{validate_quasi_spiderweb, validate_spiderweb, Violation};
use spiderweb_core::maximal::{
    families, maximal_infty_with, pair_count_profile, pair_ratio, point_mass_family_weak_type, shell_constants,
    weak_type_from_maximal, GraphFunction, RadiusMode,
};
use spiderweb_core::oracle::{DiskOracle, MetricOracle, MetricTreeOracle};
use spiderweb_core::{rng, SpiderWeb, VertexId};

use crate::report::{ExperimentReport, Table};
use crate::{row, CliError, Params};

type CmdResult = Result<ExperimentReport, CliError>;

pub fn out_dir(p: &Params) -> Result<PathBuf, CliError> {
    Ok(PathBuf::from(p.get::<String>("out_dir", ".".into())?))
}

fn out_path(p: &Params, key: &str, default_name: &str) -> Result<PathBuf, CliError> {
    match p.get_opt::<String>(key)? {
        Some(path) => Ok(PathBuf::from(path)),
        None => {
            let path = out_dir(p)?.join(default_name);
            p.get::<String>(key, path.display().to_string())?;
            Ok(path)
        }
    }
}

pub fn load_graph(path: &Path) -> Result<SpiderWeb, CliError> {
    let f = File::open(path)
        .map_err(|e| CliError::Data(spiderweb_core::Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))))?;
    Ok(read_spiderweb(BufReader::new(f))?)
}

fn input_graph(p: &Params) -> Result<SpiderWeb, CliError> {
    load_graph(Path::new(&p.require::<String>("in")?))
}

fn radius_mode(p: &Params) -> Result<RadiusMode, CliError> {
    match p.get::<String>("mode", "full".into())?.as_str() {
        "full" => Ok(RadiusMode::Full),
        "interior" => Ok(RadiusMode::Interior),
        other => Err(CliError::Usage(format!("mode must be `full` or `interior`, got `{other}`"))),
    }
}

pub fn generate(p: &Params) -> CmdResult {
    let family = match p.require::<String>("family")?.as_str() {
        "dyadic_web" => Family::DyadicWeb,
        "homogeneous_tree" => Family::HomogeneousTree { q: p.get("q", 2)? },
        "random_ab_tree" => Family::RandomAbTree { a: p.get("a", 2)?, b: p.get("b", 3)? },
        "random_spiderweb" => {
            Family::RandomSpiderweb { a: p.get("a", 2)?, b: p.get("b", 3)?, density: p.get("density", 0.5)? }
        }
        other => return Err(CliError::Usage(format!("unknown family `{other}`"))),
    };
    let spec = GeneratorSpec { family, depth: p.require("depth")?, seed: p.get("seed", 0)? };
    p.get::<String>("rng", rng::RNG_ALGORITHM.into())?;
    let g = spec.generate()?;
    let out = out_path(p, "out", "graph.txt")?;
    if let Some(parent) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    write_spiderweb(&g, BufWriter::new(File::create(&out)?))?;
    let mut r = ExperimentReport::new("generate");
    r.scalar("family", spec.family.name());
    r.scalar("vertices", g.len());
    r.scalar("horizontal_edges", g.horizontal_edge_count());
    r.scalar("out", out.display());
    Ok(r)
}

fn violation_row(v: &Violation) -> Vec<String> {
    match v {
        Violation::CrossLevel { edge, levels } => row!["rule_i", edge.0, edge.1, format!("{}/{}", levels.0, levels.1), ""],
        Violation::PredecessorsApart { edge, level, k, .. } => row!["rule_ii", edge.0, edge.1, level, k],
    }
}

pub fn validate(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let violations = match p.get_opt::<u32>("quasi")? {
        Some(m) => validate_quasi_spiderweb(&g, m)?,
        None => validate_spiderweb(&g),
    };
    let mut t = Table::new(&["rule", "u", "v", "level", "k"]);
    for v in &violations {
        eprintln!("{v}");
        t.push(violation_row(v));
    }
    let mut r = ExperimentReport::new("validate");
    r.scalar("vertices", g.len());
    r.scalar("horizontal_edges", g.horizontal_edge_count());
    r.scalar("violations", violations.len());
    r.table("violations", out_path(p, "out", "validate.csv")?, t);
    r.assert("no_violations", violations.is_empty());
    Ok(r)
}

fn delta_mode(p: &Params, g: &SpiderWeb) -> Result<DeltaMode, CliError> {
    let default = if g.len() <= EXHAUSTIVE_LIMIT { "exhaustive" } else { "sampled" };
    match p.get::<String>("delta_mode", default.into())?.as_str() {
        "exhaustive" => Ok(DeltaMode::Exhaustive),
        "sampled" => Ok(DeltaMode::Sampled),
        other => Err(CliError::Usage(format!("delta mode must be exhaustive or sampled, got `{other}`"))),
    }
}

pub fn delta(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let mode = delta_mode(p, &g)?;
    let samples: u64 = p.get("samples", 1_000_000)?;
    let est = four_point_delta(&g, mode, samples, p.get("seed", 0)?)?;
    let mut t = Table::new(&["mode", "delta", "x", "y", "z", "w", "quadruples"]);
    let [x, y, z, w] = est.witness;
    let mode_name = if est.mode == DeltaMode::Exhaustive { "exhaustive" } else { "sampled" };
    t.push(row![mode_name, est.delta, x, y, z, w, est.quadruples_checked]);
    let mut r = ExperimentReport::new("delta");
    r.scalar("mode", mode_name);
    r.scalar("delta", est.delta);
    r.scalar("witness", format!("{x} {y} {z} {w}"));
    r.scalar("quadruples_checked", est.quadruples_checked);
    r.table("delta", out_path(p, "out", "delta.csv")?, t);
    Ok(r)
}

pub fn geodesic(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let seed: u64 = p.get("seed", 0)?;
    let (delta, exact) = match p.get_opt::<String>("delta")? {
        Some(raw) => {
            let d = HalfInt::parse(&raw)
                .filter(|d| d.doubled() >= 0)
                .ok_or_else(|| CliError::Usage(format!("delta must be a nonnegative multiple of 0.5, got `{raw}`")))?;
            (d, p.get("delta_exact", false)?)
        }
        None => {
            let mode = delta_mode(p, &g)?;
            let est = four_point_delta(&g, mode, p.get("samples", 1_000_000)?, seed)?;
            (est.delta, est.mode == DeltaMode::Exhaustive)
        }
    };
    let pairs = sample_pairs(&g, p.get("pairs", 1000usize)?, seed);
    let rep = horizontal_bound_report(&g, delta, exact, &pairs)?;
    let mut t = Table::new(&["x", "y", "len", "asc", "horiz", "desc", "bound_ok"]);
    for row in &rep.rows {
        t.push(row![row.x, row.y, row.length, row.ascending, row.horizontal, row.descending, row.bound_ok]);
    }
    let mut r = ExperimentReport::new("geodesic");
    r.scalar("delta", delta);
    r.scalar("delta_exact", exact);
    r.scalar("bound", rep.bound);
    r.scalar("max_horizontal", rep.max_horizontal);
    r.scalar("violations", rep.violations().count());
    r.scalar(
        "verdict",
        match rep.verdict {
            BoundVerdict::Pass => "pass",
            BoundVerdict::Inconclusive => "inconclusive",
            BoundVerdict::Fail => "fail",
        },
    );
    r.table("geodesics", out_path(p, "out", "geodesic.csv")?, t);
    r.assert("horizontal_bound", rep.verdict != BoundVerdict::Fail);
    Ok(r)
}

/// `point:ID`, `ball:ID:R`, `radial:A:ALPHA`, `const:C` or `file:PATH`
/// (one value per line, in vertex order).
pub fn parse_function(g: &SpiderWeb, spec: &str) -> Result<GraphFunction, CliError> {
    let bad = || CliError::Usage(format!("invalid function spec `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let vertex = |s: &str| -> Result<VertexId, CliError> {
        let v: u32 = s.parse().map_err(|_| bad())?;
        if v as usize >= g.len() {
            return Err(CliError::Data(spiderweb_core::Error::Domain(format!("vertex {v} out of range"))));
        }
        Ok(VertexId(v))
    };
    match parts.as_slice() {
        ["point", id] => Ok(GraphFunction::point_mass(g.len(), vertex(id)?)),
        ["ball", id, r] => Ok(families::ball_indicator(g, vertex(id)?, r.parse().map_err(|_| bad())?)),
        ["radial", a, alpha] => {
            let (a, alpha): (f64, f64) = (a.parse().map_err(|_| bad())?, alpha.parse().map_err(|_| bad())?);
            Ok(GraphFunction::new(g.tree().levels().iter().map(|&l| a.powf(-alpha * l as f64)).collect())?)
        }
        ["const", c] => Ok(GraphFunction::constant(g.len(), c.parse().map_err(|_| bad())?)?),
        ["file", path] => {
            let text = std::fs::read_to_string(path)?;
            let values = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| l.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != g.len() {
                return Err(CliError::Data(spiderweb_core::Error::Domain(format!(
                    "function file has {} values, graph has {} vertices",
                    values.len(),
                    g.len()
                ))));
            }
            Ok(GraphFunction::new(values)?)
        }
        _ => Err(bad()),
    }
}

pub fn maximal(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let f = parse_function(&g, &p.require::<String>("function")?)?;
    let r_max: u32 = p.get("rmax", 2 * g.depth().max(1))?;
    let mode = radius_mode(p)?;
    let m = maximal_infty_with(&g, &f, r_max, mode)?;
    let mut t = Table::new(&["vertex", "level", "f", "m_infty", "best_radius", "truncated"]);
    for i in 0..g.len() {
        let v = VertexId::from(i);
        t.push(row![v, g.level(v), f.get(v), m.values.get(v), m.best_radius[i], m.truncated[i]]);
    }
    let mut r = ExperimentReport::new("maximal");
    r.scalar("max_f", f.max());
    r.scalar("max_m_infty", m.values.max());
    r.scalar("truncated_vertices", m.truncated.iter().filter(|&&t| t).count());
    r.table("maximal", out_path(p, "out", "maximal.csv")?, t);
    Ok(r)
}

pub fn weaktype(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let tau: f64 = p.get("tau", 1.0)?;
    let r_max: u32 = p.get("rmax", 2 * g.depth().max(1))?;
    let mode = radius_mode(p)?;
    let reports = match p.get_opt::<String>("function")? {
        Some(spec) => {
            let f = parse_function(&g, &spec)?;
            let m = maximal_infty_with(&g, &f, r_max, mode)?;
            vec![weak_type_from_maximal(&m.values, &f, tau, &spec)?]
        }
        None => {
            let fns: Vec<(String, GraphFunction)> = match p.get::<String>("family", "point_masses".into())?.as_str() {
                "point_masses" => return weaktype_point_masses(p, &g, tau, r_max, mode),
                "balls" => {
                    let centers = [0, g.depth() / 2, g.depth()].map(|k| VertexId(g.tree().level_range(k).start));
                    centers
                        .iter()
                        .flat_map(|&c| (0..=3).map(move |r| (c, r)))
                        .map(|(c, r)| (format!("ball_{c}_{r}"), families::ball_indicator(&g, c, r)))
                        .collect()
                }
                "radial" => [0.25, 0.5, 1.0, 1.5]
                    .iter()
                    .map(|&alpha| (format!("radial_{alpha}"), families::radial_profile(&g, 2.0, alpha)))
                    .collect(),
                other => return Err(CliError::Usage(format!("unknown function family `{other}`"))),
            };
            fns.iter()
                .map(|(label, f)| {
                    let m = maximal_infty_with(&g, f, r_max, mode)?;
                    Ok(weak_type_from_maximal(&m.values, f, tau, label)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
    };
    weaktype_report(p, reports)
}

fn weaktype_point_masses(p: &Params, g: &SpiderWeb, tau: f64, r_max: u32, mode: RadiusMode) -> CmdResult {
    weaktype_report(p, point_mass_family_weak_type(g, tau, r_max, mode)?)
}

fn weaktype_report(p: &Params, reports: Vec<spiderweb_core::maximal::WeakTypeReport>) -> CmdResult {
    let mut t = Table::new(&["function", "tau", "constant", "worst_lambda", "norm_pow"]);
    for w in &reports {
        t.push(row![w.function_label, w.tau, w.constant, w.worst_lambda, w.norm_pow]);
    }
    let worst = reports.iter().max_by(|a, b| a.constant.total_cmp(&b.constant)).expect("nonempty family");
    let mut r = ExperimentReport::new("weaktype");
    r.scalar("constant", worst.constant);
    r.scalar("worst_function", &worst.function_label);
    r.scalar("worst_lambda", worst.worst_lambda);
    r.table("weaktype", out_path(p, "out", "weaktype.csv")?, t);
    Ok(r)
}

pub fn paircount(p: &Params) -> CmdResult {
    let g = input_graph(p)?;
    let a: f64 = p.require("a")?;
    let b: f64 = p.require("b")?;
    if !(a > 1.0 && a <= b) {
        return Err(spiderweb_core::Error::Domain(format!("need 1 < a <= b, got a = {a}, b = {b}")).into());
    }
    let sizes: Vec<usize> = p
        .get::<String>("sizes", "10,50".into())?
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("invalid size `{s}`"))))
        .collect::<Result<_, _>>()?;
    let trials: usize = p.get("trials", 10)?;
    let r_max: u32 = p.get("rmax", 6)?;
    let seed: u64 = p.get("seed", 0)?;
    let mut rng = rng::stream(seed, "paircount");
    let mut t = Table::new(&["size", "trial", "r", "e_size", "f_size", "u_r", "ratio", "g_r", "c_r"]);
    let (mut max_ratio, mut max_c) = (0f64, 0f64);
    for &s in &sizes {
        if s == 0 || s > g.len() {
            return Err(spiderweb_core::Error::Domain(format!("set size {s} not in 1..={}", g.len())).into());
        }
        for trial in 0..trials {
            let e: Vec<VertexId> = sample(&mut rng, g.len(), s).into_iter().map(VertexId::from).collect();
            let f: Vec<VertexId> = sample(&mut rng, g.len(), s).into_iter().map(VertexId::from).collect();
            let profile = pair_count_profile(&g, &e, &f, r_max)?;
            let shells = shell_constants(&profile, b, s, s);
            for (r, (&u, &(gp, cp))) in profile.iter().zip(&shells).enumerate() {
                let ratio = pair_ratio(u, r as u32, b, s, s);
                max_ratio = max_ratio.max(ratio);
                max_c = max_c.max(cp);
                t.push(row![s, trial, r, s, s, u, ratio, gp, cp]);
            }
        }
    }
    let mut r = ExperimentReport::new("paircount");
    r.scalar("max_ratio", max_ratio);
    r.scalar("max_c_p", max_c);
    r.table("paircount", out_path(p, "out", "paircount.csv")?, t);
    Ok(r)
}

fn discretization_config(p: &Params) -> Result<DiscretizationConfig, CliError> {
    let mut c = DiscretizationConfig::new(p.require("radius")?);
    c.theta = p.get("theta", c.theta)?;
    match p.get::<String>("k", "calibrate".into())?.as_str() {
        "calibrate" => c.calibrate_k = true,
        raw => c.k = raw.parse().map_err(|_| CliError::Usage(format!("K must be an integer or `calibrate`, got `{raw}`")))?,
    }
    c.sphere_oversample = p.get("oversample", c.sphere_oversample)?;
    c.seed = p.get("seed", 0)?;
    c.allow_small_theta = p.get("allow_small_theta", false)?;
    c.valence_ceiling_factor = p.get("valence_factor", c.valence_ceiling_factor)?;
    c.margin = p.get_opt("margin")?;
    c.validate()?;
    Ok(c)
}

pub fn discretize_cmd(p: &Params) -> CmdResult {
    let config = discretization_config(p)?;
    let space: String = p.get("space", "disk".into())?;
    if space == "disk" {
        run_discretize(p, &DiskOracle, &config)
    } else if let Some(path) = space.strip_prefix("tree:") {
        let g = load_graph(Path::new(path))?;
        run_discretize(p, &MetricTreeOracle::new(g.tree().clone()), &config)
    } else {
        Err(CliError::Usage(format!("space must be `disk` or `tree:FILE`, got `{space}`")))
    }
}

fn run_discretize<O: MetricOracle>(p: &Params, oracle: &O, config: &DiscretizationConfig) -> CmdResult {
    let disc = discretize(oracle, config)?;
    let pairs: usize = p.get("pairs", 20_000)?;
    let probes: usize = p.get("probes", 4000)?;
    let margin = config.interior_margin();
    let mut r = ExperimentReport::new("discretize");
    let mut t = Table::new(&["metric", "level", "value"]);
    for (k, s) in disc.level_sizes().iter().enumerate() {
        t.push(row!["net_size", k, s]);
    }
    let vs = &disc.valence;
    for (name, v) in [("valence_min", vs.min as f64), ("valence_median", vs.median as f64), ("valence_max", vs.max as f64)] {
        t.push(row![name, "", v]);
    }
    t.push(row!["valence_mean", "", vs.mean]);
    t.push(row!["gamma_horizontal_edges", "", disc.gamma.horizontal_edge_count()]);
    t.push(row!["completion_edges", "", disc.completion_edges.len()]);
    t.push(row!["minimal_k", "", disc.minimal_k]);
    t.push(row!["k_used", "", disc.k]);
    t.push(row!["max_parent_distance", "", disc.max_parent_distance()]);
    let lengths = edge_lengths(&disc, oracle);
    t.push(row!["tree_edge_max", "", lengths.tree.1]);
    if let Some((lo, hi)) = lengths.gamma_horizontal {
        t.push(row!["gamma_edge_min", "", lo]);
        t.push(row!["gamma_edge_max", "", hi]);
    }
    if let Some((lo, hi)) = lengths.completion {
        t.push(row!["completion_edge_min", "", lo]);
        t.push(row!["completion_edge_max", "", hi]);
    }
    match rough_isometry_report(&disc, oracle, pairs, margin, config.seed) {
        Ok(ri) => {
            t.push(row!["beta_obs", "", ri.beta_obs()]);
            t.push(row!["mean_abs_deviation", "", ri.mean_abs_deviation]);
            for row in &ri.by_level {
                t.push(row!["level_max_abs_deviation", row.level, row.max_abs_deviation]);
            }
            r.scalar("beta_obs", ri.beta_obs());
        }
        Err(spiderweb_core::Error::Precondition(msg)) => {
            eprintln!("rough-isometry report skipped: {msg}");
            r.scalar("beta_obs", "NA");
        }
        Err(e) => return Err(e.into()),
    }
    let omega = overlap_number(&disc, oracle, probes, config.seed)?;
    t.push(row!["omega", "", omega]);
    r.scalar("vertices", disc.web.len());
    r.scalar("completion_edges", disc.completion_edges.len());
    r.scalar("minimal_k", disc.minimal_k);
    r.scalar("omega", omega);
    r.scalar("max_parent_distance", disc.max_parent_distance());
    r.assert("parent_distance", disc.max_parent_distance() <= 2.0 + PARENT_TOLERANCE);
    r.assert("edge_lengths", lengths.within_bounds);
    r.assert("completed_is_spiderweb", validate_spiderweb(&disc.web).is_empty());
    if p.get("check_completion", false)? {
        let cd = completion_distortion(&disc, margin);
        t.push(row!["completion_max_excess", "", cd.max_excess]);
        r.assert("completion_2k", cd.lower_violations == 0 && cd.upper_violations == 0);
    }
    r.table("report", out_path(p, "report", "discretize.csv")?, t);
    if let Some(points) = p.get_opt::<String>("points")? {
        let mut pt = Table::new(&["id", "coords", "level"]);
        for (i, e) in disc.embedding.iter().enumerate() {
            let coords: Vec<String> = oracle.coordinates(e).iter().map(f64::to_string).collect();
            pt.push(row![i, coords.join(" "), disc.web.level(VertexId::from(i))]);
        }
        r.table("points", PathBuf::from(points), pt);
    }
    let out = out_path(p, "out", "discretized.txt")?;
    if let Some(parent) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    write_spiderweb(&disc.web, BufWriter::new(File::create(&out)?))?;
    Ok(r)
}
