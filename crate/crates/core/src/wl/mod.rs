//! k-dimensional Weisfeiler-Leman refinement.
//!
//! Refinement runs jointly over one or two graphs. Every round, each tuple
//! gets a signature (its previous color followed by the multiset of
//! substitution colors, stored as a sorted run-length list) and the
//! distinct signatures of *all* graphs are sorted and numbered from 0. The
//! numbering therefore does not depend on hashing or on the order in which
//! tuples were visited, and colors of the two graphs are directly
//! comparable.
//!
//! For `k >= 2` a tuple `(x_1, ..., x_k)` is refined by the multiset over
//! `u` of `(c(x̄_1^u), ..., c(x̄_k^u))`, where `x̄_i^u` replaces the i-th
//! entry by `u`. For `k = 1` the multiset ranges over neighbor colors.

mod partition;

pub use partition::{equitable_partition, is_equitable, VertexPartition};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use rayon::prelude::*;
use std::collections::HashMap;

/// Default cap on the total number of tuples over all refined graphs.
pub const DEFAULT_MAX_TUPLES: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WlConfig {
    pub max_tuples: u128,
}

impl Default for WlConfig {
    fn default() -> Self {
        WlConfig {
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }
}

/// Stable coloring of `V(G)^k` (and `V(H)^k`) over a shared dictionary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableColoring {
    k: usize,
    sizes: Vec<usize>,
    colors: Vec<Vec<u32>>,
    num_colors: usize,
    rounds_used: usize,
}

/// Unordered pair of the stable colors of `(x, y)` and `(y, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeColor(pub [u64; 2]);

impl StableColoring {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn vertex_count(&self, graph: usize) -> usize {
        self.sizes[graph]
    }

    /// Refinement rounds that split at least one color class.
    pub fn rounds_used(&self) -> usize {
        self.rounds_used
    }

    /// Number of colors in the joint dictionary.
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Colors of all tuples of one graph, indexed by `sum x_i n^(k-1-i)`.
    pub fn tuple_colors(&self, graph: usize) -> &[u32] {
        &self.colors[graph]
    }

    fn index(&self, graph: usize, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.k, "tuple length must equal k");
        let n = self.sizes[graph];
        tuple.iter().fold(0, |acc, &x| {
            assert!(x < n, "vertex {x} out of range");
            acc * n + x
        })
    }

    pub fn color_of(&self, graph: usize, tuple: &[usize]) -> u32 {
        self.colors[graph][self.index(graph, tuple)]
    }

    /// Color of the constant tuple `(x, ..., x)`.
    pub fn vertex_color(&self, graph: usize, x: usize) -> u32 {
        self.color_of(graph, &vec![x; self.k])
    }

    pub fn vertex_colors(&self, graph: usize) -> Vec<u32> {
        (0..self.sizes[graph])
            .map(|x| self.vertex_color(graph, x))
            .collect()
    }

    /// Color of the ordered pair `(x, y)`: the tuple `(x, y, ..., y)` for
    /// `k >= 2` and the two vertex colors for `k = 1`.
    pub fn pair_color(&self, graph: usize, x: usize, y: usize) -> u64 {
        if self.k == 1 {
            let c = &self.colors[graph];
            (u64::from(c[x]) << 32) | u64::from(c[y])
        } else {
            let mut t = vec![y; self.k];
            t[0] = x;
            u64::from(self.color_of(graph, &t))
        }
    }

    /// Edge color `{c(x, y), c(y, x)}`; `{x, y}` must be an edge of `g`,
    /// the graph refined as index `graph`.
    pub fn edge_color(&self, graph: usize, g: &Graph, x: usize, y: usize) -> Result<EdgeColor> {
        if g.n() != self.sizes[graph] {
            return Err(invalid("graph does not match the refined vertex set"));
        }
        if !g.has_edge(x, y) {
            return Err(invalid(format!("{{{x},{y}}} is not an edge")));
        }
        let (a, b) = (self.pair_color(graph, x, y), self.pair_color(graph, y, x));
        Ok(EdgeColor([a.min(b), a.max(b)]))
    }

    /// Multiset of stable colors as sorted `(color, multiplicity)` pairs.
    pub fn palette(&self, graph: usize) -> Vec<(u32, usize)> {
        let mut counts = vec![0usize; self.num_colors];
        for &c in &self.colors[graph] {
            counts[c as usize] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, m)| m > 0)
            .map(|(c, m)| (c as u32, m))
            .collect()
    }

    /// True when the two refined graphs have equal palettes.
    pub fn palettes_equal(&self) -> bool {
        self.sizes.len() == 2 && self.palette(0) == self.palette(1)
    }
}

/// Runs WL-k on `g` (and `h` jointly) until the color partition is stable.
pub fn wl_refine(g: &Graph, h: Option<&Graph>, k: usize) -> Result<StableColoring> {
    wl_refine_with(g, h, k, &WlConfig::default())
}

pub fn wl_refine_with(
    g: &Graph,
    h: Option<&Graph>,
    k: usize,
    config: &WlConfig,
) -> Result<StableColoring> {
    if k < 1 {
        return Err(invalid("WL dimension must be at least 1"));
    }
    let graphs: Vec<&Graph> = std::iter::once(g).chain(h).collect();
    let mut total: u128 = 0;
    for gr in &graphs {
        let tuples = (gr.n() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        total = total.saturating_add(tuples);
    }
    if total > config.max_tuples {
        return Err(Error::ResourceLimit {
            what: format!("WL-{k} tuples"),
            requested: total,
            cap: config.max_tuples,
        });
    }
    let sizes: Vec<usize> = graphs.iter().map(|gr| gr.n().pow(k as u32)).collect();

    let (mut colors, mut count) = relabel(&sizes, |gi, t| initial_signature(graphs[gi], k, t));
    let mut rounds = 0;
    loop {
        let prev = &colors;
        let (next, next_count) = match k {
            1 => relabel(&sizes, |gi, t| wl1_signature(graphs[gi], &prev[gi], t)),
            2 => relabel(&sizes, |gi, t| wl2_signature(graphs[gi].n(), &prev[gi], t)),
            _ => relabel(&sizes, |gi, t| {
                wlk_signature(graphs[gi].n(), k, &prev[gi], t)
            }),
        };
        // Signatures start with the previous color, so the partition can only
        // get finer; an unchanged class count means nothing split.
        if next_count == count {
            break;
        }
        colors = next;
        count = next_count;
        rounds += 1;
    }
    debug_assert!(graphs
        .iter()
        .all(|gr| (rounds as u128) <= (gr.n() as u128).saturating_pow(k as u32).max(1)));

    Ok(StableColoring {
        k,
        sizes: graphs.iter().map(|gr| gr.n()).collect(),
        colors,
        num_colors: count,
        rounds_used: rounds,
    })
}

/// `G ≡_k H`: equal WL-k palettes under the joint dictionary.
pub fn wl_equivalent(g: &Graph, h: &Graph, k: usize) -> Result<bool> {
    wl_equivalent_with(g, h, k, &WlConfig::default())
}

pub fn wl_equivalent_with(g: &Graph, h: &Graph, k: usize, config: &WlConfig) -> Result<bool> {
    if k < 1 {
        return Err(invalid("WL dimension must be at least 1"));
    }
    if g.n() != h.n() {
        return Ok(false);
    }
    Ok(wl_refine_with(g, Some(h), k, config)?.palettes_equal())
}

/// Stable WL-2 color pair of the edge `{x, y}` of `g`, refining `g` alone.
pub fn wl2_edge_color(g: &Graph, x: usize, y: usize) -> Result<EdgeColor> {
    if !g.has_edge(x, y) {
        return Err(invalid(format!("{{{x},{y}}} is not an edge")));
    }
    wl_refine(g, None, 2)?.edge_color(0, g, x, y)
}

/// Assigns canonical ids to signatures: distinct signatures across all
/// graphs are sorted and numbered consecutively.
fn relabel<F>(sizes: &[usize], signature: F) -> (Vec<Vec<u32>>, usize)
where
    F: Fn(usize, usize) -> Vec<u64> + Sync,
{
    const BLOCK: usize = 4096;
    let mut dictionary: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut provisional: Vec<Vec<u32>> = sizes.iter().map(|&s| vec![0; s]).collect();
    for (gi, &size) in sizes.iter().enumerate() {
        for start in (0..size).step_by(BLOCK) {
            let end = (start + BLOCK).min(size);
            let sigs: Vec<Vec<u64>> = (start..end)
                .into_par_iter()
                .map(|t| signature(gi, t))
                .collect();
            for (off, sig) in sigs.into_iter().enumerate() {
                let fresh = dictionary.len() as u32;
                provisional[gi][start + off] = *dictionary.entry(sig).or_insert(fresh);
            }
        }
    }
    let mut keys: Vec<(&Vec<u64>, u32)> = dictionary.iter().map(|(s, &id)| (s, id)).collect();
    keys.sort_unstable();
    let mut rank = vec![0u32; keys.len()];
    for (r, &(_, id)) in keys.iter().enumerate() {
        rank[id as usize] = r as u32;
    }
    for colors in provisional.iter_mut() {
        for c in colors.iter_mut() {
            *c = rank[*c as usize];
        }
    }
    (provisional, keys.len())
}

/// Appends a sorted multiset as `element..., count` runs. Elements are
/// `width` words wide.
fn push_runs(out: &mut Vec<u64>, sorted: &[u64], width: usize) {
    let mut i = 0;
    while i < sorted.len() {
        let elem = &sorted[i..i + width];
        let mut j = i + width;
        while j < sorted.len() && &sorted[j..j + width] == elem {
            j += width;
        }
        out.extend_from_slice(elem);
        out.push(((j - i) / width) as u64);
        i = j;
    }
}

fn initial_signature(g: &Graph, k: usize, t: usize) -> Vec<u64> {
    if k == 1 {
        return vec![u64::from(g.color(t)), g.degree(t) as u64];
    }
    let tuple = decode(t, g.n(), k);
    let mut sig = Vec::with_capacity(k * k + k);
    for &xi in &tuple {
        for &xj in &tuple {
            sig.push(if xi == xj {
                2
            } else if g.has_edge(xi, xj) {
                1
            } else {
                0
            });
        }
    }
    sig.extend(tuple.iter().map(|&x| u64::from(g.color(x))));
    sig
}

fn wl1_signature(g: &Graph, colors: &[u32], x: usize) -> Vec<u64> {
    let mut nb: Vec<u64> = g
        .neighbors(x)
        .iter()
        .map(|&y| u64::from(colors[y]))
        .collect();
    nb.sort_unstable();
    let mut sig = vec![u64::from(colors[x])];
    push_runs(&mut sig, &nb, 1);
    sig
}

fn wl2_signature(n: usize, colors: &[u32], t: usize) -> Vec<u64> {
    let (x, y) = (t / n, t % n);
    let mut items: Vec<u64> = (0..n)
        .map(|u| (u64::from(colors[u * n + y]) << 32) | u64::from(colors[x * n + u]))
        .collect();
    items.sort_unstable();
    let mut sig = vec![u64::from(colors[t])];
    push_runs(&mut sig, &items, 1);
    sig
}

fn wlk_signature(n: usize, k: usize, colors: &[u32], t: usize) -> Vec<u64> {
    let tuple = decode(t, n, k);
    let weights: Vec<usize> = (0..k).map(|i| n.pow((k - 1 - i) as u32)).collect();
    let mut items: Vec<Vec<u64>> = (0..n)
        .map(|u| {
            (0..k)
                .map(|i| {
                    let idx = t - tuple[i] * weights[i] + u * weights[i];
                    u64::from(colors[idx])
                })
                .collect()
        })
        .collect();
    items.sort_unstable();
    let flat: Vec<u64> = items.into_iter().flatten().collect();
    let mut sig = vec![u64::from(colors[t])];
    push_runs(&mut sig, &flat, k);
    sig
}

fn decode(mut t: usize, n: usize, k: usize) -> Vec<usize> {
    let mut tuple = vec![0; k];
    for slot in tuple.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
    tuple
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    fn two_c3() -> Graph {
        scalar_multiple(2, &make_cycle(3).unwrap())
    }

    #[test]
    fn regular_graphs_are_wl1_monochromatic() {
        let c6 = make_cycle(6).unwrap();
        let st = wl_refine(&c6, Some(&two_c3()), 1).unwrap();
        assert_eq!(st.num_colors(), 1);
        assert!(st.palettes_equal());
        assert_eq!(st.rounds_used(), 0);
    }

    #[test]
    fn wl2_separates_cycle_from_triangles() {
        let c6 = make_cycle(6).unwrap();
        let st = wl_refine(&c6, Some(&two_c3()), 2).unwrap();
        assert!(!st.palettes_equal());
        assert!(!wl_equivalent(&c6, &two_c3(), 2).unwrap());
        assert!(wl_equivalent(&c6, &two_c3(), 1).unwrap());
    }

    #[test]
    fn shrikhande_rook_wl2_equivalent() {
        let st = wl_refine(&make_shrikhande(), Some(&make_rook4()), 2).unwrap();
        assert!(st.palettes_equal());
        // SRG: diagonal, edges, non-edges
        assert_eq!(st.num_colors(), 3);
    }

    #[test]
    fn shrikhande_rook_wl3_distinguished() {
        assert!(!wl_equivalent(&make_shrikhande(), &make_rook4(), 3).unwrap());
    }

    #[test]
    fn degree_sequences_distinguish() {
        let k3 = make_complete(3).unwrap();
        let p3k1 = disjoint_union(&make_path(3).unwrap(), &make_complete(1).unwrap());
        assert!(!wl_equivalent(&k3, &make_path(3).unwrap(), 1).unwrap());
        assert!(!wl_equivalent(&k3, &p3k1, 1).unwrap());
        let k4 = make_complete(4).unwrap();
        assert!(!wl_equivalent(&k3, &k4, 2).unwrap());
    }

    #[test]
    fn invalid_dimension_and_cap() {
        let g = make_cycle(5).unwrap();
        assert!(matches!(
            wl_refine(&g, None, 0),
            Err(Error::InvalidParameter(_))
        ));
        let cfg = WlConfig { max_tuples: 10 };
        assert!(matches!(
            wl_refine_with(&g, None, 2, &cfg),
            Err(Error::ResourceLimit { requested: 25, .. })
        ));
    }

    #[test]
    fn edge_colors() {
        let star = make_star(3).unwrap();
        let st = wl_refine(&star, None, 2).unwrap();
        let cols: Vec<_> = star
            .edges()
            .map(|(u, v)| st.edge_color(0, &star, u, v).unwrap())
            .collect();
        assert!(cols.windows(2).all(|w| w[0] == w[1]));
        let p3 = make_path(3).unwrap();
        assert_eq!(
            wl2_edge_color(&p3, 0, 1).unwrap(),
            wl2_edge_color(&p3, 2, 1).unwrap()
        );
        assert!(wl2_edge_color(&p3, 0, 2).is_err());
    }

    #[test]
    fn colors_respected() {
        let p = make_path(3).unwrap();
        let a = p.clone().with_colors(vec![0, 0, 1]).unwrap();
        let b = p.with_colors(vec![0, 1, 0]).unwrap();
        assert!(!wl_equivalent(&a, &b, 1).unwrap());
        assert!(!wl_equivalent(&a, &b, 2).unwrap());
    }

    #[test]
    fn generic_k_agrees_with_fast_path_partition() {
        // k=2 fast path vs the generic tuple code must induce the same partition.
        let g = make_petersen();
        let fast = wl_refine(&g, None, 2).unwrap();
        let sizes = [100];
        let (mut colors, mut count) = relabel(&sizes, |_, t| initial_signature(&g, 2, t));
        loop {
            let (next, c) = relabel(&sizes, |_, t| wlk_signature(10, 2, &colors[0], t));
            if c == count {
                break;
            }
            colors = next;
            count = c;
        }
        assert_eq!(count, fast.num_colors());
        let a = fast.tuple_colors(0);
        for i in 0..100 {
            for j in 0..100 {
                assert_eq!(a[i] == a[j], colors[0][i] == colors[0][j]);
            }
        }
    }

    #[test]
    fn pair_color_padding() {
        let g = make_cycle(5).unwrap();
        let st = wl_refine(&g, None, 3).unwrap();
        assert_eq!(
            st.pair_color(0, 0, 1),
            u64::from(st.color_of(0, &[0, 1, 1]))
        );
        let st1 = wl_refine(&g, None, 1).unwrap();
        assert_eq!(st1.pair_color(0, 0, 1), 0);
    }
}
