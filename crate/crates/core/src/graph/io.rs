//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m [c]
//! u v          (m lines, 0-based)
//! c0 c1 ...    (only when c = 1: one color id per vertex)
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Output always uses
//! LF line endings and lists edges in lexicographic order.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn nums(line_no: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| {
                perr(
                    line_no,
                    format!("expected a nonnegative integer, found {t:?}"),
                )
            })
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header line"))?;
    let h = nums(hl, header)?;
    let (n, m, colored) = match h.as_slice() {
        [n, m] => (*n, *m, false),
        [n, m, c] if *c <= 1 => (*n, *m, *c == 1),
        _ => return Err(perr(hl, "header must be \"n m [c]\" with c in {0,1}")),
    };

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for k in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| perr(hl, format!("expected {m} edges, found {k}")))?;
        let e = nums(ln, l)?;
        let [u, v] = e[..] else {
            return Err(perr(ln, "edge line must contain exactly two vertices"));
        };
        if u >= n || v >= n {
            return Err(perr(ln, format!("vertex out of range (n = {n})")));
        }
        if u == v {
            return Err(perr(ln, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(perr(ln, format!("duplicate edge {{{u},{v}}}")));
        }
        edges.push((u, v));
    }
    let mut g = Graph::new(n, edges).map_err(|e| perr(hl, e.to_string()))?;
    if colored {
        let (ln, l) = lines.next().ok_or_else(|| perr(hl, "missing color line"))?;
        let c = nums(ln, l)?;
        if c.len() != n {
            return Err(perr(ln, format!("expected {n} colors, found {}", c.len())));
        }
        let c = c
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| perr(ln, "color id too large")))
            .collect::<Result<Vec<_>>>()?;
        g = g.with_colors(c)?;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after graph"));
    }
    Ok(g)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let c = u8::from(g.colors().is_some());
    if c == 1 {
        writeln!(out, "{} {} 1", g.n(), g.edge_count()).unwrap();
    } else {
        writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(colors) = g.colors() {
        let cs: Vec<String> = colors.iter().map(u32::to_string).collect();
        writeln!(out, "{}", cs.join(" ")).unwrap();
    }
    out
}

const PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe",
];

/// DOT rendering for debugging; vertex colors become fill colors.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in 0..g.n() {
        match g.colors() {
            Some(c) => writeln!(
                out,
                "  {v} [style=filled, fillcolor=\"{}\", label=\"{v}:{}\"];",
                PALETTE[c[v] as usize % PALETTE.len()],
                c[v]
            )
            .unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn parses_triangle() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g, make_complete(3).unwrap());
    }

    #[test]
    fn comments_and_colors() {
        let g = parse_graph("# a path\n3 2 1\n0 1\n\n1 2\n# colors\n0 1 0\n").unwrap();
        assert_eq!(g.colors(), Some(&[0, 1, 0][..]));
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn error_lines() {
        let line = |t: &str| match parse_graph(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line("2 1\n0 0"), 2);
        assert_eq!(line("3 2\n0 1\n1 0"), 3);
        assert_eq!(line("3 1\n0 5"), 2);
        assert_eq!(line("x y"), 1);
        assert_eq!(line("3 2\n0 1"), 1);
        assert_eq!(line("2 1 1\n0 1\n0"), 3);
        assert_eq!(line("2 1\n0 1\n0 1"), 3);
    }

    #[test]
    fn serialize_is_exact() {
        let s = serialize_graph(&make_path(3).unwrap());
        assert_eq!(s, "3 2\n0 1\n1 2\n");
        let r = make_shrikhande();
        assert_eq!(
            parse_graph(&serialize_graph(&r)).unwrap().edge_list(),
            r.edge_list()
        );
    }

    #[test]
    fn dot_output() {
        let g = make_path(2).unwrap().with_colors(vec![0, 1]).unwrap();
        let d = to_dot(&g, "p");
        assert!(d.contains("0 -- 1;") && d.contains("fillcolor"));
    }
}
