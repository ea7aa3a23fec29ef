//! Text formats.
//!
//! Graph record: `n E u v u v …` (0-based, pairs in wedge order).
//! GraphSum file: one line per term, `p/q<TAB>n E u v …`; blank lines and
//! lines starting with `#` are ignored on input.

use std::fs;
use std::path::Path;

use super::{GraphSum, UnorientedGraph};
use crate::error::{Error, Result};
use crate::rational::{format_pq, parse_q};

pub fn parse_graph(record: &str) -> Result<UnorientedGraph> {
    let nums: Vec<usize> = record
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("expected a non-negative integer, found `{t}`"),
            })
        })
        .collect::<Result<_>>()?;
    if nums.len() < 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: "graph record needs a header `n E`".into(),
        });
    }
    let (n, e) = (nums[0], nums[1]);
    if nums.len() != 2 + 2 * e {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("header announces {e} edges but {} numbers follow", nums.len() - 2),
        });
    }
    let edges: Vec<_> = nums[2..].chunks(2).map(|p| (p[0], p[1])).collect();
    UnorientedGraph::new(n, &edges)
}

pub fn format_graph(g: &UnorientedGraph) -> String {
    g.to_string()
}

pub fn parse_graph_sum(text: &str, origin: &str) -> Result<GraphSum> {
    let mut s = GraphSum::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (coeff, rec) = t
            .split_once('\t')
            .ok_or_else(|| Error::format(origin, i + 1, "expected `coeff<TAB>graph`"))?;
        let c = parse_q(coeff).map_err(|e| Error::format(origin, i + 1, e.to_string()))?;
        let g = parse_graph(rec).map_err(|e| Error::format(origin, i + 1, e.to_string()))?;
        s.add_graph(&g, c);
    }
    Ok(s)
}

/// Canonical text: terms in canonical order, every coefficient as `p/q`.
pub fn format_graph_sum(s: &GraphSum) -> String {
    let mut out = String::new();
    for (g, c) in s.iter() {
        out.push_str(&format_pq(c));
        out.push('\t');
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn read_graph_sum(path: &Path) -> Result<GraphSum> {
    let text = fs::read_to_string(path)?;
    parse_graph_sum(&text, &path.display().to_string())
}

pub fn write_graph_sum(path: &Path, s: &GraphSum) -> Result<()> {
    fs::write(path, format_graph_sum(s))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, ratio};

    #[test]
    fn graph_record() {
        let g = parse_graph("3 2 0 1 1 2").unwrap();
        assert_eq!(g.bigrading(), (3, 2));
        assert_eq!(format_graph(&g), "3 2 0 1 1 2");
        assert!(parse_graph("3 2 0 1").is_err());
        assert!(parse_graph("2 1 0 0").is_err());
    }

    #[test]
    fn sum_file_is_bit_exact() {
        let mut s = GraphSum::new();
        s.add_graph(&UnorientedGraph::tetrahedron(), ratio(-3, 2));
        s.add_graph(&UnorientedGraph::stick(), q(2));
        let text = format_graph_sum(&s);
        let back = parse_graph_sum(&text, "mem").unwrap();
        assert_eq!(back, s);
        assert_eq!(format_graph_sum(&back), text);
        assert!(text.contains("2/1\t2 1 0 1"));
    }

    #[test]
    fn bad_lines_report_position() {
        let err = parse_graph_sum("1/1\t2 1 0 1\nfoo\n", "f.gsum").unwrap_err();
        assert!(err.to_string().contains("f.gsum:2"));
    }
}
