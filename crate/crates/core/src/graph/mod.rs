//! Simple undirected graphs with optional vertex colors.
//!
//! Vertices are the integers `0..n`. Adjacency lists are kept sorted, so
//! neighbor iteration is `O(deg)` and membership is a binary search. A
//! [`Graph`] never changes after construction.

mod generators;
mod io;
mod iso;
mod products;

pub use generators::*;
pub use io::{parse_graph, serialize_graph, to_dot};
pub use iso::{automorphisms, find_isomorphism, is_isomorphic};
pub use products::{cartesian_product, disjoint_union, scalar_multiple, tensor_product};

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    colors: Option<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate edge at vertex {u}")));
            }
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            colors: None,
            edge_count: edge_count / 2,
        })
    }

    /// Like [`Graph::new`] but silently merges repeated edges. Self-loops
    /// are still an error.
    pub fn from_edges_dedup(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        list.sort_unstable();
        list.dedup();
        Graph::new(n, list)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            colors: None,
            edge_count: 0,
        }
    }

    /// Attaches a total vertex coloring.
    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n() {
            return Err(invalid(format!(
                "coloring has {} entries, graph has {} vertices",
                colors.len(),
                self.n()
            )));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    /// Color of `v`, or 0 for uncolored graphs.
    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors.as_ref().map_or(0, |c| c[v])
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order. This order
    /// is the fixed edge indexing used by edge-mode set systems.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let pos = self.adj[u].binary_search(&v).ok()?;
        let before: usize = self.adj[..u]
            .iter()
            .enumerate()
            .map(|(w, l)| l.iter().filter(|&&x| x > w).count())
            .sum();
        let within = self.adj[u][..pos].iter().filter(|&&x| x > u).count();
        Some(before + within)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = edges.filter(|&(u, v)| !self.has_edge(u, v)).collect();
        let mut g = Graph::new(n, edges).expect("complement of a simple graph is simple");
        g.colors = self.colors.clone();
        g
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(invalid("permutation is not a bijection on the vertex set"));
        }
        let mut g = Graph::new(n, self.edges().map(|(u, v)| (perm[u], perm[v])))?;
        if let Some(c) = &self.colors {
            let mut nc = vec![0; n];
            for v in 0..n {
                nc[perm[v]] = c[v];
            }
            g.colors = Some(nc);
        }
        Ok(g)
    }

    /// Number of triangles, by brute-force enumeration of ordered triples
    /// `u < v < w`.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for u in 0..self.n() {
            for &v in self.neighbors(u).iter().filter(|&&v| v > u) {
                count += self
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| w > v && self.has_edge(u, w))
                    .count();
            }
        }
        count
    }

    /// Common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Returns `Some((v, k, lambda, mu))` when the graph is strongly regular.
    pub fn strongly_regular_parameters(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.n();
        if n == 0 || !self.is_regular() {
            return None;
        }
        let k = self.degree(0);
        let (mut lambda, mut mu) = (None, None);
        for u in 0..n {
            for v in u + 1..n {
                let c = self.common_neighbors(u, v);
                let slot = if self.has_edge(u, v) {
                    &mut lambda
                } else {
                    &mut mu
                };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x != c => return None,
                    _ => {}
                }
            }
        }
        Some((n, k, lambda.unwrap_or(0), mu.unwrap_or(0)))
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks the structural invariants: sorted, symmetric, loop-free
    /// adjacency and a total coloring when one is present.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut half = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("adjacency of {u} not strictly sorted")));
            }
            for &v in list {
                if v >= n || v == u || !self.has_edge(v, u) {
                    return Err(invalid(format!("bad adjacency entry {u} -> {v}")));
                }
            }
            half += list.len();
        }
        if half != 2 * self.edge_count {
            return Err(invalid("edge count out of sync with adjacency"));
        }
        if let Some(c) = &self.colors {
            if c.len() != n {
                return Err(invalid("coloring is not total"));
            }
        }
        Ok(())
    }

    /// Adjacency matrix as 0/1 rows.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut a = vec![vec![0u8; n]; n];
        for (u, v) in self.edges() {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}", self.n(), self.edge_count)?;
        if self.colors.is_some() {
            write!(f, ", colored")?;
        }
        write!(f, ", edges={:?})", self.edge_list())
    }
}

/// Graph families used by the generators, kept as provenance in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    Circulant,
    Paley,
    Shrikhande,
    Rook4,
    MatchedCliques,
    DisjointUnion,
    TensorProduct,
    CartesianProduct,
    FromFile,
}

impl Family {
    /// Expected parameter count, or `None` when the arity is variable.
    fn arity(self) -> Option<usize> {
        match self {
            Family::Cycle | Family::Path | Family::Complete | Family::Paley => Some(1),
            Family::MatchedCliques => Some(1),
            Family::CompleteBipartite => Some(2),
            Family::Shrikhande | Family::Rook4 | Family::FromFile => Some(0),
            Family::Circulant => None,
            // operand sizes
            Family::DisjointUnion | Family::TensorProduct | Family::CartesianProduct => Some(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphLabel {
    pub family: Family,
    pub params: Vec<i64>,
}

impl GraphLabel {
    pub fn new(family: Family, params: Vec<i64>) -> Result<Self> {
        match family.arity() {
            Some(a) if a != params.len() => Err(invalid(format!(
                "{family:?} takes {a} parameters, got {}",
                params.len()
            ))),
            None if params.is_empty() => Err(invalid("circulant label needs n")),
            _ => Ok(GraphLabel { family, params }),
        }
    }
}

impl fmt::Display for GraphLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = serde_json::to_value(self.family)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        write!(f, "{name}")?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(i64::to_string).collect();
            write!(f, "({})", p.join(","))?;
        }
        Ok(())
    }
}

impl GraphLabel {
    /// Builds the named graph. Product and file labels carry no operands
    /// and cannot be built from the label alone.
    pub fn build(&self) -> Result<Graph> {
        // Circulant offsets may be negative; every other parameter is a size.
        let sizes = match self.family {
            Family::Circulant => &self.params[..1],
            _ => &self.params[..],
        };
        let p: Vec<usize> = sizes
            .iter()
            .map(|&x| usize::try_from(x).map_err(|_| invalid(format!("negative parameter {x}"))))
            .collect::<Result<_>>()?;
        match self.family {
            Family::Cycle => make_cycle(p[0]),
            Family::Path => make_path(p[0]),
            Family::Complete => make_complete(p[0]),
            Family::CompleteBipartite => make_complete_bipartite(p[0], p[1]),
            Family::Circulant => make_circulant(p[0], &self.params[1..]),
            Family::Paley => make_paley(p[0]),
            Family::Shrikhande => Ok(make_shrikhande()),
            Family::Rook4 => Ok(make_rook4()),
            Family::MatchedCliques => make_matched_cliques(p[0]),
            f => Err(invalid(format!("{f:?} graphs need operands"))),
        }
    }
}

/// Parses the display form, e.g. `paley(13)`, `circulant(8,1,-1,3,-3)` or
/// `shrikhande`.
impl std::str::FromStr for GraphLabel {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| invalid(format!("missing ')' in {s:?}")))?;
                let params = inner
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<i64>()
                            .map_err(|_| invalid(format!("bad parameter {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (name, params)
            }
            None => (s, Vec::new()),
        };
        let family: Family = serde_json::from_value(serde_json::Value::String(name.trim().into()))
            .map_err(|_| invalid(format!("unknown graph family {name:?}")))?;
        GraphLabel::new(family, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_index_matches_iteration_order() {
        let g = make_shrikhande();
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 0), None);
    }

    #[test]
    fn coloring_must_be_total() {
        assert!(Graph::empty(3).with_colors(vec![0, 1]).is_err());
        let g = Graph::empty(2).with_colors(vec![4, 5]).unwrap();
        assert_eq!(g.color(1), 5);
    }

    #[test]
    fn permute_preserves_structure() {
        let g = make_path(4).unwrap();
        let h = g.permute(&[3, 2, 1, 0]).unwrap();
        assert!(h.has_edge(3, 2) && h.has_edge(1, 0) && !h.has_edge(0, 3));
        assert!(g.permute(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn label_arity() {
        assert!(GraphLabel::new(Family::Cycle, vec![5]).is_ok());
        assert!(GraphLabel::new(Family::Cycle, vec![]).is_err());
        assert_eq!(
            GraphLabel::new(Family::CompleteBipartite, vec![3, 3])
                .unwrap()
                .to_string(),
            "complete_bipartite(3,3)"
        );
    }

    #[test]
    fn label_round_trip_and_build() {
        for text in [
            "paley(13)",
            "circulant(8,1,-1,3,-3)",
            "shrikhande",
            "complete_bipartite(3,4)",
        ] {
            let label: GraphLabel = text.parse().unwrap();
            assert_eq!(label.to_string(), text);
        }
        let g = "circulant(8,1,-1,3,-3)"
            .parse::<GraphLabel>()
            .unwrap()
            .build()
            .unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 16));
        assert_eq!(
            "rook4"
                .parse::<GraphLabel>()
                .unwrap()
                .build()
                .unwrap()
                .edge_count(),
            48
        );
        assert!("cycle(2)".parse::<GraphLabel>().unwrap().build().is_err());
        assert!("cycle(-4)".parse::<GraphLabel>().unwrap().build().is_err());
        assert!("tensor_product(3,3)"
            .parse::<GraphLabel>()
            .unwrap()
            .build()
            .is_err());
        assert!("moebius(8)".parse::<GraphLabel>().is_err());
        assert!("cycle(5".parse::<GraphLabel>().is_err());
        assert!("cycle".parse::<GraphLabel>().is_err());
    }
}
