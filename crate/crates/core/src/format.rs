//! Line-based text format for spider's webs.
//!
//! ```text
//! spiderweb v1 <vertex_count>
//! v <id> <parent_id>      one line per non-root vertex
//! h <id1> <id2>           one line per horizontal edge
//! ```
//!
//! The writer emits `v` lines in id order and `h` lines sorted with
//! `id1 < id2`, each terminated by `\n`. The loader accepts lines in any
//! order but requires level-major ids.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{RootedTree, SpiderWeb, VertexId};

const MAGIC: &str = "spiderweb";
const VERSION: &str = "v1";

/// Serialize `g` into its canonical text form.
pub fn to_string(g: &SpiderWeb) -> String {
    let mut s = String::with_capacity(16 * (g.len() + g.horizontal_edge_count()) + 32);
    writeln!(s, "{MAGIC} {VERSION} {}", g.len()).unwrap();
    for i in 1..g.len() {
        let v = VertexId::from(i);
        writeln!(s, "v {v} {}", g.parent(v).expect("non-root vertex has a parent")).unwrap();
    }
    for (a, b) in g.horizontal_edges() {
        writeln!(s, "h {a} {b}").unwrap();
    }
    s
}

pub fn write_spiderweb<W: Write>(g: &SpiderWeb, mut w: W) -> Result<()> {
    w.write_all(to_string(g).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<VertexId> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: "missing vertex id".into() })?;
    tok.parse::<u32>()
        .map(VertexId)
        .map_err(|_| Error::Parse { line, msg: format!("invalid vertex id {tok:?}") })
}

/// Parse the text form.
pub fn from_str(text: &str) -> Result<SpiderWeb> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let mut tok = header.split_ascii_whitespace();
    if tok.next() != Some(MAGIC) || tok.next() != Some(VERSION) {
        return Err(Error::Parse { line: 1, msg: format!("expected header `{MAGIC} {VERSION} <n>`") });
    }
    let n: usize = tok
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::Parse { line: 1, msg: "missing or invalid vertex count".into() })?;
    if n == 0 || tok.next().is_some() {
        return Err(Error::Parse { line: 1, msg: "vertex count must be a single positive integer".into() });
    }

    let mut parents: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut tok = l.split_ascii_whitespace();
        match tok.next() {
            Some("v") => {
                let id = parse_id(tok.next(), line)?;
                let p = parse_id(tok.next(), line)?;
                if id.index() == 0 || id.index() >= n || p.index() >= n {
                    return Err(Error::Parse { line, msg: format!("vertex line `{l}` out of range") });
                }
                if std::mem::replace(&mut seen[id.index()], true) {
                    return Err(Error::Parse { line, msg: format!("vertex {id} declared twice") });
                }
                parents[id.index()] = Some(p);
            }
            Some("h") => {
                let a = parse_id(tok.next(), line)?;
                let b = parse_id(tok.next(), line)?;
                edges.push((a, b));
            }
            _ => return Err(Error::Parse { line, msg: format!("unrecognized line `{l}`") }),
        }
        if tok.next().is_some() {
            return Err(Error::Parse { line, msg: format!("trailing tokens in `{l}`") });
        }
    }
    if let Some(missing) = (1..n).find(|&i| !seen[i]) {
        return Err(Error::Structural(format!("vertex {missing} has no `v` line")));
    }
    let tree = RootedTree::from_parents(&parents)?;
    SpiderWeb::new(tree, edges)
}

pub fn read_spiderweb<R: BufRead>(mut r: R) -> Result<SpiderWeb> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "spiderweb v1 5\nv 1 0\nv 2 0\nv 3 1\nv 4 2\nh 1 2\nh 3 4\n";

    #[test]
    fn canonical_text_round_trips() {
        let g = from_str(SAMPLE).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.horizontal_edge_count(), 2);
        assert_eq!(to_string(&g), SAMPLE);
    }

    #[test]
    fn accepts_shuffled_lines() {
        let text = "spiderweb v1 5\nh 4 3\nv 4 2\nv 2 0\nv 1 0\nh 2 1\nv 3 1\n";
        assert_eq!(to_string(&from_str(text).unwrap()), SAMPLE);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(from_str(""), Err(Error::Parse { .. })));
        assert!(matches!(from_str("graph v1 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(from_str("spiderweb v1 3\nv 1 0\n"), Err(Error::Structural(_))));
        assert!(matches!(from_str("spiderweb v1 2\nv 1 0\nv 1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(from_str("spiderweb v1 2\nv 1 0\nx\n"), Err(Error::Parse { .. })));
        // Level-2 vertex 2 precedes level-1 vertex 3.
        let not_level_major = "spiderweb v1 4\nv 1 0\nv 2 1\nv 3 0\n";
        assert!(matches!(from_str(not_level_major), Err(Error::Structural(_))));
    }
}
