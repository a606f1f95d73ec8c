use super::{frac_matching, SetSystem};
use crate::error::{invalid, Error, Result};
use crate::graph::{automorphisms, Graph};
use crate::lp::Rational;
use crate::wl::{StableColoring, VertexPartition};
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_PATTERN_CAP: usize = 6;

/// Vertex-disjoint or edge-disjoint packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vertex,
    Edge,
}

/// A (not necessarily induced) copy of the pattern in the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    /// Sorted host vertices.
    pub vertices: Vec<usize>,
    /// Sorted host edges `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
    /// `embedding[i]` is the image of pattern vertex `i`.
    pub embedding: Vec<usize>,
}

/// Sorted multiset of colors of the vertices (or edges) of a copy.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorType(pub Vec<u64>);

impl ColorType {
    pub fn new(mut colors: Vec<u64>) -> Self {
        colors.sort_unstable();
        ColorType(colors)
    }
}

pub fn enumerate_subgraphs(f: &Graph, g: &Graph) -> Result<Vec<Subgraph>> {
    enumerate_subgraphs_with(f, g, DEFAULT_PATTERN_CAP)
}

/// Backtracking over injective maps `V(F) → V(G)` that send edges to edges.
/// Each copy is reported once, through its lexicographically least
/// embedding modulo `Aut(F)`.
pub fn enumerate_subgraphs_with(f: &Graph, g: &Graph, cap: usize) -> Result<Vec<Subgraph>> {
    let k = f.n();
    if k > cap {
        return Err(Error::ResourceLimit {
            what: "pattern vertices".into(),
            requested: k as u128,
            cap: cap as u128,
        });
    }
    if k == 0 || k > g.n() {
        return Ok(Vec::new());
    }
    let pattern = f.clone().without_colors();
    let auts: Vec<Vec<usize>> = automorphisms(&pattern)
        .into_iter()
        .filter(|s| s.iter().enumerate().any(|(i, &j)| i != j))
        .collect();

    // Order pattern vertices so each one (after the first in its component)
    // has an already placed neighbor.
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = f.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (back, f.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    let position: Vec<usize> = {
        let mut p = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            f.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| position[w] < position[v])
                .collect()
        })
        .collect();

    let mut search = Search {
        f,
        g,
        order: &order,
        back: &back,
        auts: &auts,
        map: vec![usize::MAX; k],
        used: vec![false; g.n()],
        out: Vec::new(),
    };
    search.extend(0);
    Ok(search.out)
}

struct Search<'a> {
    f: &'a Graph,
    g: &'a Graph,
    order: &'a [usize],
    back: &'a [Vec<usize>],
    auts: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Subgraph>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.emit();
            return;
        }
        let v = self.order[depth];
        let need = self.f.degree(v);
        let candidates: Vec<usize> = match self.back[depth].first() {
            Some(&w) => self.g.neighbors(self.map[w]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for c in candidates {
            if self.used[c] || self.g.degree(c) < need {
                continue;
            }
            if !self.back[depth]
                .iter()
                .all(|&w| self.g.has_edge(c, self.map[w]))
            {
                continue;
            }
            self.map[v] = c;
            self.used[c] = true;
            self.extend(depth + 1);
            self.used[c] = false;
        }
        self.map[v] = usize::MAX;
    }

    fn emit(&mut self) {
        let map = &self.map;
        let smaller = self.auts.iter().any(|s| {
            let permuted = s.iter().map(|&i| map[i]);
            permuted.cmp(map.iter().copied()) == std::cmp::Ordering::Less
        });
        if smaller {
            return;
        }
        let mut vertices = map.clone();
        vertices.sort_unstable();
        let mut edges: Vec<(usize, usize)> = self
            .f
            .edges()
            .map(|(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        self.out.push(Subgraph {
            vertices,
            edges,
            embedding: map.clone(),
        });
    }
}

fn edge_indexer(g: &Graph) -> HashMap<(usize, usize), usize> {
    g.edges().enumerate().map(|(i, e)| (e, i)).collect()
}

fn ground_sets(g: &Graph, subs: &[Subgraph], mode: Mode) -> Vec<Vec<usize>> {
    match mode {
        Mode::Vertex => subs.iter().map(|s| s.vertices.clone()).collect(),
        Mode::Edge => {
            let idx = edge_indexer(g);
            subs.iter()
                .map(|s| s.edges.iter().map(|e| idx[e]).collect())
                .collect()
        }
    }
}

fn ground_size(g: &Graph, mode: Mode) -> usize {
    match mode {
        Mode::Vertex => g.n(),
        Mode::Edge => g.edge_count(),
    }
}

/// Vertex sets of all copies of `F`, over ground set `V(G)`.
pub fn vertex_packing_system(f: &Graph, g: &Graph) -> Result<SetSystem> {
    packing_system(f, g, Mode::Vertex)
}

/// Edge sets of all copies of `F`, over `E(G)` indexed lexicographically.
pub fn edge_packing_system(f: &Graph, g: &Graph) -> Result<SetSystem> {
    packing_system(f, g, Mode::Edge)
}

pub fn packing_system(f: &Graph, g: &Graph, mode: Mode) -> Result<SetSystem> {
    let subs = enumerate_subgraphs(f, g)?;
    SetSystem::new(ground_size(g, mode), ground_sets(g, &subs, mode))
}

/// `π_f^F(G)` in vertex mode, `ρ_f^F(G)` in edge mode.
pub fn frac_packing(f: &Graph, g: &Graph, mode: Mode) -> Result<Rational> {
    frac_matching(&packing_system(f, g, mode)?)
}

/// Incidence graph with one set vertex per copy of `F` (copies sharing a
/// vertex or edge set are kept apart): ground vertices `0..m` colored 0,
/// copies colored 1.
pub fn subgraph_incidence_graph(f: &Graph, g: &Graph, mode: Mode) -> Result<Graph> {
    let subs = enumerate_subgraphs(f, g)?;
    let m = ground_size(g, mode);
    let sets = ground_sets(g, &subs, mode);
    let edges = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&x| (x, m + i)));
    let colors = (0..m + sets.len()).map(|v| u32::from(v >= m)).collect();
    Graph::new(m + sets.len(), edges)?.with_colors(colors)
}

/// Packs each WL-2 edge color into one `u64`, per edge in lexicographic
/// order. Colors are comparable across the graphs of one joint refinement.
pub fn edge_color_classes(coloring: &StableColoring, graph: usize, g: &Graph) -> Result<Vec<u64>> {
    g.edges()
        .map(|(u, v)| {
            let c = coloring.edge_color(graph, g, u, v)?;
            Ok((c.0[0] << 32) | c.0[1])
        })
        .collect()
}

fn vertex_type(g: &Graph, s: &Subgraph) -> ColorType {
    ColorType::new(s.vertices.iter().map(|&v| u64::from(g.color(v))).collect())
}

fn edge_type(idx: &HashMap<(usize, usize), usize>, colors: &[u64], s: &Subgraph) -> ColorType {
    ColorType::new(s.edges.iter().map(|e| colors[idx[e]]).collect())
}

fn check_edge_colors(g: &Graph, colors: &[u64]) -> Result<()> {
    if colors.len() != g.edge_count() {
        return Err(invalid(format!(
            "{} edge colors for {} edges",
            colors.len(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// Copies of `F` through vertex `x` whose vertex color type is `mu`.
pub fn count_subgraphs_at(f: &Graph, g: &Graph, x: usize, mu: &ColorType) -> Result<usize> {
    if x >= g.n() {
        return Err(invalid(format!("vertex {x} out of range")));
    }
    let subs = enumerate_subgraphs(f, g)?;
    Ok(subs
        .iter()
        .filter(|s| s.vertices.binary_search(&x).is_ok() && vertex_type(g, s) == *mu)
        .count())
}

/// Copies of `F` through edge `e` whose edge color type is `mu`, with edge
/// colors given per lexicographic edge index.
pub fn count_subgraphs_at_edge(
    f: &Graph,
    g: &Graph,
    edge_colors: &[u64],
    e: (usize, usize),
    mu: &ColorType,
) -> Result<usize> {
    check_edge_colors(g, edge_colors)?;
    let e = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(e.0, e.1) {
        return Err(invalid(format!("{e:?} is not an edge")));
    }
    let idx = edge_indexer(g);
    let subs = enumerate_subgraphs(f, g)?;
    Ok(subs
        .iter()
        .filter(|s| s.edges.binary_search(&e).is_ok() && edge_type(&idx, edge_colors, s) == *mu)
        .count())
}

/// Extends the color classes of `G` (vertex colors, or `edge_colors` in
/// edge mode) to a partition of [`subgraph_incidence_graph`]: ground blocks
/// by color, then one block per realized color type. Fails when some color
/// class sees different per-type counts.
pub fn extend_equitable_partition(
    g: &Graph,
    f: &Graph,
    mode: Mode,
    edge_colors: Option<&[u64]>,
) -> Result<VertexPartition> {
    let subs = enumerate_subgraphs(f, g)?;
    let m = ground_size(g, mode);
    let (ground_color, types): (Vec<u64>, Vec<ColorType>) = match mode {
        Mode::Vertex => (
            (0..g.n()).map(|v| u64::from(g.color(v))).collect(),
            subs.iter().map(|s| vertex_type(g, s)).collect(),
        ),
        Mode::Edge => {
            let colors = edge_colors.ok_or_else(|| invalid("edge mode needs edge colors"))?;
            check_edge_colors(g, colors)?;
            let idx = edge_indexer(g);
            (
                colors.to_vec(),
                subs.iter().map(|s| edge_type(&idx, colors, s)).collect(),
            )
        }
    };
    let sets = ground_sets(g, &subs, mode);

    let mut counts: Vec<BTreeMap<&ColorType, usize>> = vec![BTreeMap::new(); m];
    for (s, mu) in sets.iter().zip(&types) {
        for &x in s {
            *counts[x].entry(mu).or_default() += 1;
        }
    }
    let mut profile: HashMap<u64, (usize, &BTreeMap<&ColorType, usize>)> = HashMap::new();
    for x in 0..m {
        match profile.get(&ground_color[x]) {
            None => {
                profile.insert(ground_color[x], (x, &counts[x]));
            }
            Some(&(y, c)) if c != &counts[x] => {
                return Err(Error::PreconditionViolation(format!(
                    "ground elements {y} and {x} share color {} but lie in different numbers of copies per color type",
                    ground_color[x]
                )));
            }
            Some(_) => {}
        }
    }

    let labels: Vec<(u8, Vec<u64>)> = ground_color
        .iter()
        .map(|&c| (0, vec![c]))
        .chain(types.iter().map(|t| (1, t.0.clone())))
        .collect();
    Ok(VertexPartition::from_labels(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::lp::rat;
    use crate::wl::{is_equitable, wl_refine};

    /// Counts copies by brute force over all vertex subsets and all edge
    /// subsets of the induced subgraph, testing isomorphism to `F`.
    fn brute_force_copies(f: &Graph, g: &Graph) -> usize {
        let n = g.n();
        let k = f.n();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let local: Vec<(usize, usize)> = g
                .edges()
                .filter(|(u, v)| vs.contains(u) && vs.contains(v))
                .map(|(u, v)| {
                    let pu = vs.iter().position(|&x| x == u).unwrap();
                    let pv = vs.iter().position(|&x| x == v).unwrap();
                    (pu, pv)
                })
                .collect();
            for emask in 0u32..(1 << local.len()) {
                if emask.count_ones() as usize != f.edge_count() {
                    continue;
                }
                let es = local
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| emask >> i & 1 == 1)
                    .map(|(_, e)| *e);
                if is_isomorphic(&Graph::new(k, es).unwrap(), f) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn copies_match_brute_force() {
        let patterns = [
            make_complete(2).unwrap(),
            make_path(3).unwrap(),
            make_complete(3).unwrap(),
            make_star(3).unwrap(),
            make_path(4).unwrap(),
            make_cycle(4).unwrap(),
        ];
        let hosts = [
            make_complete(5).unwrap(),
            make_petersen(),
            make_cycle(6).unwrap(),
            make_complete_bipartite(3, 3).unwrap(),
            make_matched_cliques(3).unwrap(),
        ];
        for f in &patterns {
            for g in &hosts {
                let subs = enumerate_subgraphs(f, g).unwrap();
                assert_eq!(
                    subs.len(),
                    brute_force_copies(f, g),
                    "{:?} in {:?}",
                    f.edge_list(),
                    g.n()
                );
                let mut keys: Vec<_> = subs.iter().map(|s| (&s.vertices, &s.edges)).collect();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), subs.len());
            }
        }
    }

    #[test]
    fn named_counts() {
        let k3 = make_complete(3).unwrap();
        let k2 = make_complete(2).unwrap();
        let s = make_shrikhande();
        assert_eq!(enumerate_subgraphs(&k3, &s).unwrap().len(), 32);
        assert_eq!(enumerate_subgraphs(&k2, &s).unwrap().len(), 48);
        assert!(enumerate_subgraphs(&k3, &make_cycle(6).unwrap())
            .unwrap()
            .is_empty());
        assert!(matches!(
            enumerate_subgraphs(&make_complete(7).unwrap(), &s),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn systems() {
        let k3 = make_complete(3).unwrap();
        let two_c3 = scalar_multiple(2, &k3);
        let es = edge_packing_system(&k3, &two_c3).unwrap();
        assert_eq!((es.ground_size(), es.len()), (6, 2));
        assert!(es.is_uniform(3));
        let r = edge_packing_system(&k3, &make_rook4()).unwrap();
        assert_eq!((r.ground_size(), r.len()), (48, 32));
        let c5 = make_cycle(5).unwrap();
        let vs = vertex_packing_system(&make_complete(2).unwrap(), &c5).unwrap();
        assert_eq!(
            vs.sets().to_vec(),
            c5.edges().map(|(u, v)| vec![u, v]).collect::<Vec<_>>()
        );
        // Three paths on the same three vertices collapse to one set.
        let p3 = vertex_packing_system(&make_path(3).unwrap(), &k3).unwrap();
        assert_eq!(p3.len(), 1);
    }

    #[test]
    fn packing_values() {
        let k3 = make_complete(3).unwrap();
        let c6 = make_cycle(6).unwrap();
        let two_c3 = scalar_multiple(2, &k3);
        assert_eq!(frac_packing(&k3, &two_c3, Mode::Edge).unwrap(), rat(2));
        assert_eq!(frac_packing(&k3, &c6, Mode::Edge).unwrap(), rat(0));
        assert_eq!(
            frac_packing(&k3, &make_shrikhande(), Mode::Edge).unwrap(),
            rat(16)
        );
        assert_eq!(
            frac_packing(&k3, &make_rook4(), Mode::Edge).unwrap(),
            rat(16)
        );
    }

    #[test]
    fn counts_at_vertices() {
        let k3 = make_complete(3).unwrap();
        let k2 = make_complete(2).unwrap();
        let c6 = make_cycle(6).unwrap();
        assert_eq!(
            count_subgraphs_at(&k3, &c6, 0, &ColorType::new(vec![0, 0, 0])).unwrap(),
            0
        );

        let star = make_star(3).unwrap();
        let wl = wl_refine(&star, None, 1).unwrap();
        let star = star.with_colors(wl.vertex_colors(0)).unwrap();
        let (cc, cl) = (u64::from(star.color(0)), u64::from(star.color(1)));
        let mu = ColorType::new(vec![cc, cl]);
        assert_eq!(count_subgraphs_at(&k2, &star, 0, &mu).unwrap(), 3);
        assert_eq!(count_subgraphs_at(&k2, &star, 2, &mu).unwrap(), 1);

        let s = make_shrikhande();
        let counts: Vec<usize> = (0..16)
            .map(|x| count_subgraphs_at(&k3, &s, x, &ColorType::new(vec![0, 0, 0])).unwrap())
            .collect();
        assert!(counts.iter().all(|&c| c == 6));
    }

    #[test]
    fn counts_at_edges() {
        let k3 = make_complete(3).unwrap();
        let s = make_shrikhande();
        let wl = wl_refine(&s, None, 2).unwrap();
        let colors = edge_color_classes(&wl, 0, &s).unwrap();
        assert!(colors.iter().all(|&c| c == colors[0]));
        let mu = ColorType::new(vec![colors[0]; 3]);
        for (u, v) in s.edges() {
            assert_eq!(
                count_subgraphs_at_edge(&k3, &s, &colors, (u, v), &mu).unwrap(),
                2
            );
        }
        assert!(count_subgraphs_at_edge(&k3, &s, &colors[1..], (0, 1), &mu).is_err());
    }

    #[test]
    fn extended_partitions() {
        let k2 = make_complete(2).unwrap();
        let k3 = make_complete(3).unwrap();
        let c6 = make_cycle(6).unwrap();
        let c6c = c6
            .clone()
            .with_colors(wl_refine(&c6, None, 1).unwrap().vertex_colors(0))
            .unwrap();
        let p = extend_equitable_partition(&c6c, &k2, Mode::Vertex, None).unwrap();
        assert_eq!(p.len(), 2);
        assert!(is_equitable(
            &subgraph_incidence_graph(&k2, &c6c, Mode::Vertex).unwrap(),
            &p
        )
        .unwrap());

        let star = make_star(3).unwrap();
        let star = star
            .clone()
            .with_colors(wl_refine(&star, None, 1).unwrap().vertex_colors(0))
            .unwrap();
        let p = extend_equitable_partition(&star, &k2, Mode::Vertex, None).unwrap();
        assert_eq!(p.len(), 3);
        assert!(is_equitable(
            &subgraph_incidence_graph(&k2, &star, Mode::Vertex).unwrap(),
            &p
        )
        .unwrap());

        let s = make_shrikhande();
        let wl = wl_refine(&s, None, 2).unwrap();
        let colors = edge_color_classes(&wl, 0, &s).unwrap();
        let p = extend_equitable_partition(&s, &k3, Mode::Edge, Some(&colors)).unwrap();
        assert!(is_equitable(&subgraph_incidence_graph(&k3, &s, Mode::Edge).unwrap(), &p).unwrap());

        // A path with a single color is not stable: ends and middle differ.
        let p4 = make_path(4).unwrap();
        assert!(matches!(
            extend_equitable_partition(&p4, &k2, Mode::Vertex, None),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
