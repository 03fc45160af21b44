//! Seeded constructors for the graph families used in experiments.
//!
//! All randomness comes from [`crate::rng::stream`]: the tree shape uses the
//! label `"ab-tree"` and horizontal edges use `"horizontal"`. Uniform integer
//! draws use `rand` 0.9's `random_range` and edge acceptance uses
//! `random_bool`. Internal vertices always receive at least `a` successors,
//! so leaves only occur at the truncation depth.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{RootedTree, SpiderWeb, VertexId};
use crate::rng;

/// Largest depth accepted by the generators (ids are `u32`).
pub const MAX_DEPTH: u32 = 30;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    DyadicWeb,
    HomogeneousTree { q: u32 },
    RandomAbTree { a: u32, b: u32 },
    RandomSpiderweb { a: u32, b: u32, density: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::DyadicWeb => "dyadic_web",
            Family::HomogeneousTree { .. } => "homogeneous_tree",
            Family::RandomAbTree { .. } => "random_ab_tree",
            Family::RandomSpiderweb { .. } => "random_spiderweb",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub depth: u32,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        check_depth(self.depth)?;
        match self.family {
            Family::DyadicWeb => Ok(()),
            Family::HomogeneousTree { q } => check_q(q),
            Family::RandomAbTree { a, b } => check_ab(a, b),
            Family::RandomSpiderweb { a, b, density } => {
                check_ab(a, b)?;
                check_density(density)
            }
        }
    }

    pub fn generate(&self) -> Result<SpiderWeb> {
        self.validate()?;
        match self.family {
            Family::DyadicWeb => gen_dyadic_web(self.depth),
            Family::HomogeneousTree { q } => gen_homogeneous_tree(q, self.depth),
            Family::RandomAbTree { a, b } => gen_random_ab_tree(a, b, self.depth, self.seed),
            Family::RandomSpiderweb { a, b, density } => {
                gen_random_spiderweb(a, b, self.depth, density, self.seed)
            }
        }
    }
}

fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(Error::Domain("depth must be >= 1".into()));
    }
    if depth > MAX_DEPTH {
        return Err(Error::Size(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    Ok(())
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("q must be >= 2, got {q}")));
    }
    Ok(())
}

fn check_ab(a: u32, b: u32) -> Result<()> {
    if a < 2 || a > b {
        return Err(Error::Domain(format!("need 2 <= a <= b, got a = {a}, b = {b}")));
    }
    Ok(())
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Domain(format!("density must lie in [0, 1], got {density}")));
    }
    Ok(())
}

/// Grow a tree level by level; `successors(level_of_parent)` yields the
/// number of children of the next vertex in id order.
fn grow_tree(depth: u32, mut successors: impl FnMut() -> u32) -> Result<RootedTree> {
    let mut parents: Vec<Option<VertexId>> = vec![None];
    let mut level_begin = 0usize;
    for _ in 0..depth {
        let level_end = parents.len();
        for p in level_begin..level_end {
            let k = successors();
            for _ in 0..k {
                parents.push(Some(VertexId::from(p)));
            }
            if parents.len() > u32::MAX as usize / 2 {
                return Err(Error::Size("generated tree exceeds the vertex limit".into()));
            }
        }
        level_begin = level_end;
    }
    RootedTree::from_parents(&parents)
}

/// Binary words of length at most `depth`; horizontal edges join
/// lexicographically consecutive words of equal length, plus the
/// all-zeros/all-ones wrap edge. The word `w` of length `k` has id
/// `2^k - 1 + w` when read as a binary number.
pub fn gen_dyadic_web(depth: u32) -> Result<SpiderWeb> {
    check_depth(depth)?;
    let tree = grow_tree(depth, || 2)?;
    let mut edges = Vec::new();
    for k in 1..=depth {
        let start = (1u32 << k) - 1;
        let count = 1u32 << k;
        for w in 0..count - 1 {
            edges.push((VertexId(start + w), VertexId(start + w + 1)));
        }
        if count > 2 {
            edges.push((VertexId(start), VertexId(start + count - 1)));
        }
    }
    SpiderWeb::new(tree, edges)
}

/// Id of the dyadic word given as a string of `0`/`1` characters.
pub fn dyadic_word_id(word: &str) -> VertexId {
    let k = word.len() as u32;
    let w = if word.is_empty() { 0 } else { u32::from_str_radix(word, 2).expect("binary word") };
    VertexId((1u32 << k) - 1 + w)
}

/// Every vertex above the truncation level has exactly `q` successors.
pub fn gen_homogeneous_tree(q: u32, depth: u32) -> Result<SpiderWeb> {
    check_depth(depth)?;
    check_q(q)?;
    Ok(SpiderWeb::from_tree(grow_tree(depth, || q)?))
}

/// Successor counts drawn uniformly from `a..=b`.
pub fn gen_random_ab_tree(a: u32, b: u32, depth: u32, seed: u64) -> Result<SpiderWeb> {
    Ok(SpiderWeb::from_tree(random_ab_tree(a, b, depth, seed)?))
}

fn random_ab_tree(a: u32, b: u32, depth: u32, seed: u64) -> Result<RootedTree> {
    check_depth(depth)?;
    check_ab(a, b)?;
    let mut rng = rng::stream(seed, "ab-tree");
    grow_tree(depth, || rng.random_range(a..=b))
}

/// A random `(a, b)`-tree with horizontal edges added top-down. At each
/// level the candidates are exactly the admissible pairs (siblings, or
/// children of two vertices already joined one level up); candidates are
/// visited in sorted order and each is kept with probability `density`.
pub fn gen_random_spiderweb(a: u32, b: u32, depth: u32, density: f64, seed: u64) -> Result<SpiderWeb> {
    check_density(density)?;
    let tree = random_ab_tree(a, b, depth, seed)?;
    let mut rng = rng::stream(seed, "horizontal");
    let mut all_edges = Vec::new();
    let mut prev_level: Vec<(VertexId, VertexId)> = Vec::new();
    for k in 1..=depth {
        let mut candidates = Vec::new();
        for u in tree.level_vertices(k - 1) {
            let ch = tree.children(u);
            for i in 0..ch.len() {
                for j in i + 1..ch.len() {
                    candidates.push((ch[i], ch[j]));
                }
            }
        }
        for &(u, w) in &prev_level {
            for &c in tree.children(u) {
                for &d in tree.children(w) {
                    candidates.push(if c < d { (c, d) } else { (d, c) });
                }
            }
        }
        candidates.sort_unstable();
        let kept: Vec<_> = candidates.into_iter().filter(|_| rng.random_bool(density)).collect();
        all_edges.extend_from_slice(&kept);
        prev_level = kept;
    }
    SpiderWeb::new(tree, all_edges)
}
