use super::wl_refine;
use crate::error::{invalid, Result};
use crate::graph::Graph;
use std::collections::BTreeMap;

/// A partition of `0..n` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(invalid("partition contains an empty block"));
            }
            for &v in block {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(invalid(format!("vertex {v} out of range or in two blocks")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(invalid("blocks do not cover the vertex set"));
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(VertexPartition { n, blocks })
    }

    /// Groups vertices by label; blocks come out in increasing label order.
    pub fn from_labels<L: Ord + Clone>(labels: &[L]) -> Self {
        let mut by_label: BTreeMap<L, Vec<usize>> = BTreeMap::new();
        for (v, l) in labels.iter().enumerate() {
            by_label.entry(l.clone()).or_default().push(v);
        }
        VertexPartition {
            n: labels.len(),
            blocks: by_label.into_values().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                of[v] = i;
            }
        }
        of
    }
}

/// The coarsest equitable partition refining the vertex coloring, read off
/// the stable WL-1 colors.
pub fn equitable_partition(g: &Graph) -> VertexPartition {
    let st = wl_refine(g, None, 1).expect("WL-1 on a single graph stays within the tuple cap");
    VertexPartition::from_labels(st.tuple_colors(0))
}

/// Whether every vertex of a block has the same number of neighbors in each
/// block, and vertex colors are constant on blocks.
pub fn is_equitable(g: &Graph, p: &VertexPartition) -> Result<bool> {
    if p.vertex_count() != g.n() {
        return Err(invalid(format!(
            "partition is over {} vertices, graph has {}",
            p.vertex_count(),
            g.n()
        )));
    }
    let of = p.block_of();
    let r = p.len();
    for block in p.blocks() {
        let first = block[0];
        let profile = |v: usize| {
            let mut counts = vec![0usize; r];
            for &w in g.neighbors(v) {
                counts[of[w]] += 1;
            }
            counts
        };
        let reference = profile(first);
        for &v in &block[1..] {
            if g.color(v) != g.color(first) || profile(v) != reference {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn examples() {
        assert_eq!(equitable_partition(&make_cycle(6).unwrap()).len(), 1);
        let star = make_star(3).unwrap();
        let p = equitable_partition(&star);
        let mut blocks = p.blocks().to_vec();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(equitable_partition(&make_paley(13).unwrap()).len(), 1);
    }

    #[test]
    fn equitability() {
        let p3 = make_path(3).unwrap();
        let single = VertexPartition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!is_equitable(&p3, &single).unwrap());
        for g in [p3, make_petersen(), make_star(4).unwrap()] {
            assert!(is_equitable(&g, &equitable_partition(&g)).unwrap());
        }
        let colored = make_cycle(4)
            .unwrap()
            .with_colors(vec![0, 1, 0, 0])
            .unwrap();
        let whole = VertexPartition::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(!is_equitable(&colored, &whole).unwrap());
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        let p = VertexPartition::new(2, vec![vec![0, 1]]).unwrap();
        assert!(is_equitable(&make_cycle(3).unwrap(), &p).is_err());
    }
}
