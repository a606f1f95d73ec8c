use super::SetSystem;
use crate::error::{invalid, Error, Result};
use crate::graph::{make_shrikhande, Graph, FANO_LINES};
use std::collections::HashMap;

pub const DEFAULT_EXTENSION_CAP: usize = 3;

/// Exhaustive triangle decomposition is attempted up to this many edges.
const EXHAUSTIVE_EDGE_LIMIT: usize = 60;
const EXHAUSTIVE_NODE_LIMIT: u64 = 5_000_000;

/// The seven lines of the Fano plane on points `0..7`.
pub fn fano_plane() -> SetSystem {
    SetSystem::new(7, FANO_LINES.iter().map(|l| l.to_vec()).collect())
        .expect("Fano lines are valid")
}

/// No seven sets form a Fano plane. Seven triples on seven points that
/// pairwise meet in exactly one point are a Steiner triple system of order
/// 7, which is unique, so the search looks for such cliques.
pub fn fano_free(s: &SetSystem) -> Result<bool> {
    if !s.is_uniform(3) {
        return Err(invalid("Fano check needs a 3-uniform system"));
    }
    let sets = s.sets();
    let n = sets.len();
    if n < 7 {
        return Ok(true);
    }
    let meets_once = |a: &[usize], b: &[usize]| a.iter().filter(|x| b.contains(x)).count() == 1;
    let compat: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| meets_once(&sets[i], &sets[j]))
                .collect()
        })
        .collect();
    let mut stack = Vec::with_capacity(7);
    for i in 0..n {
        stack.push(i);
        if find_plane(sets, &compat, &mut stack, &compat[i], sets[i].clone()) {
            return Ok(false);
        }
        stack.pop();
    }
    Ok(true)
}

fn find_plane(
    sets: &[Vec<usize>],
    compat: &[Vec<usize>],
    stack: &mut Vec<usize>,
    candidates: &[usize],
    points: Vec<usize>,
) -> bool {
    if stack.len() == 7 {
        return points.len() == 7;
    }
    if stack.len() + candidates.len() < 7 {
        return false;
    }
    for (pos, &c) in candidates.iter().enumerate() {
        let mut pts = points.clone();
        pts.extend(sets[c].iter().copied().filter(|x| !points.contains(x)));
        if pts.len() > 7 {
            continue;
        }
        let next: Vec<usize> = candidates[pos + 1..]
            .iter()
            .copied()
            .filter(|d| compat[c].binary_search(d).is_ok())
            .collect();
        stack.push(c);
        if find_plane(sets, compat, stack, &next, pts) {
            return true;
        }
        stack.pop();
    }
    false
}

pub fn k_extension(g: &Graph, k: usize) -> Result<bool> {
    k_extension_with(g, k, DEFAULT_EXTENSION_CAP)
}

/// For all disjoint `X`, `Y` with `|X ∪ Y| ≤ k` some `z ∉ X ∪ Y` is adjacent
/// to every vertex of `X` and to none of `Y`.
pub fn k_extension_with(g: &Graph, k: usize, cap: usize) -> Result<bool> {
    if k > cap {
        return Err(Error::ResourceLimit {
            what: "extension size".into(),
            requested: k as u128,
            cap: cap as u128,
        });
    }
    let n = g.n();
    let mut subset = Vec::with_capacity(k);
    Ok(all_subsets(n, k, 0, &mut subset, &mut |t| {
        (0u32..1 << t.len()).all(|xmask| {
            (0..n).any(|z| {
                !t.contains(&z)
                    && t.iter()
                        .enumerate()
                        .all(|(i, &w)| g.has_edge(z, w) == (xmask >> i & 1 == 1))
            })
        })
    }))
}

/// Calls `check` on every subset of `start..n` of size at most `k`
/// (including the empty set); stops at the first `false`.
fn all_subsets(
    n: usize,
    k: usize,
    start: usize,
    subset: &mut Vec<usize>,
    check: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if !check(subset) {
        return false;
    }
    if subset.len() == k {
        return true;
    }
    for v in start..n {
        subset.push(v);
        let ok = all_subsets(n, k, v + 1, subset, check);
        subset.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Each triple is a triangle of `G`, no edge is used twice, and every edge
/// is used.
pub fn verify_triangle_decomposition(g: &Graph, triangles: &[[usize; 3]]) -> bool {
    if triangles.len() * 3 != g.edge_count() {
        return false;
    }
    let mut used: HashMap<(usize, usize), ()> = HashMap::new();
    for t in triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            if a >= g.n() || b >= g.n() || !g.has_edge(a, b) {
                return false;
            }
            if used.insert((a.min(b), a.max(b)), ()).is_some() {
                return false;
            }
        }
    }
    true
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// The closed form `{(i,j), (i+1,j), (i+1,j+1)}` on the 4×4 torus labeling
/// used by the Shrikhande generator.
fn shrikhande_closed_form(g: &Graph) -> Option<Vec<[usize; 3]>> {
    if g.n() != 16 || g.edge_list() != make_shrikhande().edge_list() {
        return None;
    }
    let v = |i: usize, j: usize| 4 * (i % 4) + j % 4;
    let tris: Vec<[usize; 3]> = (0..4)
        .flat_map(|i| (0..4).map(move |j| sorted([v(i, j), v(i + 1, j), v(i + 1, j + 1)])))
        .collect();
    verify_triangle_decomposition(g, &tris).then_some(tris)
}

/// Exact cover of the edges by triangles, branching on the edge with the
/// fewest usable triangles.
fn exhaustive(g: &Graph) -> Option<Vec<[usize; 3]>> {
    let edges = g.edge_list();
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    let mut tri_edges: Vec<[usize; 3]> = Vec::new();
    for &(u, v) in &edges {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                tris.push([u, v, w]);
                tri_edges.push([index[&(u, v)], index[&(v, w)], index[&(u, w)]]);
            }
        }
    }
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (t, es) in tri_edges.iter().enumerate() {
        for &e in es {
            by_edge[e].push(t);
        }
    }
    struct Cover<'a> {
        tri_edges: &'a [[usize; 3]],
        by_edge: &'a [Vec<usize>],
        covered: Vec<bool>,
        chosen: Vec<usize>,
        nodes: u64,
    }
    impl Cover<'_> {
        fn run(&mut self) -> Option<bool> {
            self.nodes += 1;
            if self.nodes > EXHAUSTIVE_NODE_LIMIT {
                return None;
            }
            let usable = |c: &Self, t: usize| c.tri_edges[t].iter().all(|&e| !c.covered[e]);
            let pick = (0..self.covered.len())
                .filter(|&e| !self.covered[e])
                .map(|e| {
                    (
                        self.by_edge[e].iter().filter(|&&t| usable(self, t)).count(),
                        e,
                    )
                })
                .min();
            let Some((_, e)) = pick else {
                return Some(true);
            };
            let by_edge = self.by_edge;
            for &t in &by_edge[e] {
                if !usable(self, t) {
                    continue;
                }
                for &x in &self.tri_edges[t] {
                    self.covered[x] = true;
                }
                self.chosen.push(t);
                match self.run() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.chosen.pop();
                for &x in &self.tri_edges[t] {
                    self.covered[x] = false;
                }
            }
            Some(false)
        }
    }
    let mut c = Cover {
        tri_edges: &tri_edges,
        by_edge: &by_edge,
        covered: vec![false; edges.len()],
        chosen: Vec::new(),
        nodes: 0,
    };
    match c.run() {
        Some(true) => Some(c.chosen.iter().map(|&t| tris[t]).collect()),
        _ => None,
    }
}

/// A partition of `E(G)` into triangles, tried by the Shrikhande closed form
/// and then exhaustive search on graphs with at most 60 edges. Products are
/// handled by [`k3_decompose_product`].
pub fn k3_decompose(g: &Graph) -> Option<Vec<[usize; 3]>> {
    if !g.edge_count().is_multiple_of(3) || (0..g.n()).any(|v| g.degree(v) % 2 == 1) {
        return None;
    }
    if let Some(t) = shrikhande_closed_form(g) {
        return Some(t);
    }
    if g.edge_count() <= EXHAUSTIVE_EDGE_LIMIT {
        let mut t = exhaustive(g)?;
        t.sort_unstable();
        return Some(t);
    }
    None
}

/// Triangle decomposition of `G × H` (vertex `(u, u')` is `u·|V(H)| + u'`)
/// from decompositions of the factors: each pair of triangles spans a copy
/// of `K3 × K3`, whose 18 edges split into the 6 triangles
/// `{(t_i, t'_{π(i)})}` for the permutations `π` of three points.
pub fn k3_decompose_product(g: &Graph, h: &Graph) -> Option<Vec<[usize; 3]>> {
    let tg = k3_decompose(g)?;
    let th = k3_decompose(h)?;
    Some(product_triangles(&tg, &th, h.n()))
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn product_triangles(tg: &[[usize; 3]], th: &[[usize; 3]], nh: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(tg.len() * th.len() * 6);
    for t in tg {
        for s in th {
            for p in &PERMUTATIONS {
                out.push(sorted([
                    t[0] * nh + s[p[0]],
                    t[1] * nh + s[p[1]],
                    t[2] * nh + s[p[2]],
                ]));
            }
        }
    }
    out.sort_unstable();
    out
}

/// `⌈v_odd / 2⌉`: every odd-degree vertex keeps an edge outside any
/// triangle packing, and an uncovered edge serves at most two of them.
pub fn uncovered_edges_lower_bound(g: &Graph) -> usize {
    let odd = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).count();
    odd.div_ceil(2)
}
