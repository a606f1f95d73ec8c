use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::HashMap;

pub const MAX_HTW_VERTICES: usize = 8;

/// Exact treewidth by dynamic programming over vertex subsets (at most 20
/// vertices).
///
/// `TW(S) = min_{v ∈ S} max(TW(S \ v), |Q(S \ v, v)|)` where `Q(S, v)` is the
/// set of vertices outside `S ∪ {v}` reachable from `v` through `S`; the
/// treewidth is `TW(V)`.
pub fn treewidth(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 20 {
        return Err(Error::ResourceLimit {
            what: "treewidth vertices".into(),
            requested: n as u128,
            cap: 20,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let q = |s: u32, v: usize| -> u32 {
        // Flood from v through s; count reached vertices outside s ∪ {v}.
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                let nb = adj[u] & !seen;
                seen |= nb;
                outside |= nb & !s;
                next |= nb & s;
            }
            frontier = next;
        }
        outside.count_ones()
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            best = best.min(tw[rest as usize].max(q(rest, v)));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize] as usize)
}

/// Maximum treewidth over all homomorphic images of `F` that are surjective
/// on vertices and edges: quotients by partitions into independent sets.
pub fn htw(f: &Graph) -> Result<usize> {
    let n = f.n();
    if n > MAX_HTW_VERTICES {
        return Err(Error::ResourceLimit {
            what: "htw pattern vertices".into(),
            requested: n as u128,
            cap: MAX_HTW_VERTICES as u128,
        });
    }
    let mut best = 0;
    let mut cache: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
    let mut block = vec![0usize; n];
    quotients(f, 0, 0, &mut block, &mut |blocks, count| {
        let mut edges: Vec<(usize, usize)> = f
            .edges()
            .map(|(u, v)| (blocks[u].min(blocks[v]), blocks[u].max(blocks[v])))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let w = match cache.get(&edges) {
            Some(&w) => w,
            None => {
                let q = Graph::new(count, edges.iter().copied()).expect("quotient is simple");
                let w = treewidth(&q).expect("quotient is small");
                cache.insert(edges, w);
                w
            }
        };
        best = best.max(w);
    });
    Ok(best)
}

/// Restricted-growth enumeration of partitions whose blocks are independent.
fn quotients(
    f: &Graph,
    v: usize,
    used: usize,
    block: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], usize),
) {
    if v == f.n() {
        visit(block, used);
        return;
    }
    for b in 0..=used {
        let clash = f.neighbors(v).iter().any(|&w| w < v && block[w] == b);
        if clash {
            continue;
        }
        block[v] = b;
        quotients(f, v + 1, used.max(b + 1), block, visit);
    }
}
