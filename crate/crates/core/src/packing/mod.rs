//! Set systems and the packing/covering parameters built on them.
//!
//! A [`SetSystem`] over ground elements `0..m` is the common currency: the
//! vertex sets or edge sets of all copies of a pattern `F` in a host graph,
//! or the closed neighborhoods of a graph. Fractional values are exact LP
//! optima; integral values come from [`integral_packing`] and
//! [`integral_hitting`].

mod bnb;
mod htw;
mod special;
mod subgraphs;

pub use bnb::{
    integral_hitting, integral_hitting_with, integral_packing, integral_packing_with, BnbConfig,
    IntegralSolution,
};
pub use htw::{htw, treewidth, MAX_HTW_VERTICES};
pub use special::{
    fano_free, fano_plane, k3_decompose, k3_decompose_product, k_extension, k_extension_with,
    uncovered_edges_lower_bound, verify_triangle_decomposition, DEFAULT_EXTENSION_CAP,
};
pub use subgraphs::{
    count_subgraphs_at, count_subgraphs_at_edge, edge_color_classes, edge_packing_system,
    enumerate_subgraphs, enumerate_subgraphs_with, extend_equitable_partition, frac_packing,
    packing_system, subgraph_incidence_graph, vertex_packing_system, ColorType, Mode, Subgraph,
    DEFAULT_PATTERN_CAP,
};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::lp::{rat, solve_with, LpConfig, LpStatus, Opt, Rational, RationalLP};
use num_traits::One;
use std::collections::HashSet;

/// A family of nonempty subsets of `0..m` without repeated sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Sorts each set, rejects empty sets and out-of-range elements, and
    /// keeps only the first occurrence of a repeated set.
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(invalid(format!("set {i} is empty")));
            }
            if let Some(&x) = s.iter().find(|&&x| x >= ground_size) {
                return Err(invalid(format!(
                    "set {i} contains {x}, ground size is {ground_size}"
                )));
            }
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        Ok(SetSystem {
            ground_size,
            sets: out,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// For each ground element, the indices of the sets containing it.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.ground_size];
        for (i, s) in self.sets.iter().enumerate() {
            for &x in s {
                occ[x].push(i);
            }
        }
        occ
    }

    pub fn is_uniform(&self, r: usize) -> bool {
        self.sets.iter().all(|s| s.len() == r)
    }

    /// Pairwise disjoint members given by index.
    pub fn is_packing(&self, chosen: &[usize]) -> bool {
        let mut used = vec![false; self.ground_size];
        for &i in chosen {
            let Some(s) = self.sets.get(i) else {
                return false;
            };
            for &x in s {
                if std::mem::replace(&mut used[x], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Every set meets `elements`.
    pub fn is_hitting_set(&self, elements: &[usize]) -> bool {
        let mut mark = vec![false; self.ground_size];
        for &x in elements {
            if x >= self.ground_size {
                return false;
            }
            mark[x] = true;
        }
        self.sets.iter().all(|s| s.iter().any(|&x| mark[x]))
    }
}

/// Closed neighborhoods `N[v]` over ground set `V(G)`.
pub fn closed_neighborhood_system(g: &Graph) -> SetSystem {
    let sets = (0..g.n())
        .map(|v| {
            let mut s = g.neighbors(v).to_vec();
            s.push(v);
            s
        })
        .collect();
    SetSystem::new(g.n(), sets).expect("closed neighborhoods are valid sets")
}

/// Bipartite incidence graph: ground elements `0..m` colored 0, sets
/// `m..m+n` colored 1.
pub fn incidence_graph(s: &SetSystem) -> Graph {
    let m = s.ground_size();
    let edges = s
        .sets()
        .iter()
        .enumerate()
        .flat_map(|(i, set)| set.iter().map(move |&x| (x, m + i)));
    let colors = (0..m + s.len()).map(|v| u32::from(v >= m)).collect();
    Graph::new(m + s.len(), edges)
        .and_then(|g| g.with_colors(colors))
        .expect("incidence graph is simple")
}

/// `max Σx_i` subject to `Σ_{i : j ∈ S_i} x_i ≤ 1` for every element `j`.
pub fn matching_lp(s: &SetSystem) -> RationalLP {
    let rows = s
        .occurrences()
        .into_iter()
        .map(|occ| occ.into_iter().map(|i| (i, Rational::one())).collect())
        .collect();
    RationalLP::new(
        vec![rat(1); s.len()],
        rows,
        vec![rat(1); s.ground_size()],
        Opt::Max,
    )
    .expect("matching LP is well formed")
}

/// `min Σy_j` subject to `Σ_{j ∈ S_i} y_j ≥ 1` for every set `i`.
pub fn hitting_lp(s: &SetSystem) -> RationalLP {
    let rows = s
        .sets()
        .iter()
        .map(|set| set.iter().map(|&j| (j, rat(-1))).collect())
        .collect();
    RationalLP::new(
        vec![rat(1); s.ground_size()],
        rows,
        vec![rat(-1); s.len()],
        Opt::Min,
    )
    .expect("hitting LP is well formed")
}

fn optimal_value(lp: &RationalLP, config: &LpConfig) -> Result<Rational> {
    let sol = solve_with(lp, config)?;
    match (sol.status, sol.value) {
        (LpStatus::Optimal, Some(v)) => Ok(v),
        (status, _) => Err(invalid(format!("packing LP ended {status:?}"))),
    }
}

/// Fractional matching number `ν_f`.
pub fn frac_matching(s: &SetSystem) -> Result<Rational> {
    frac_matching_with(s, &LpConfig::default())
}

pub fn frac_matching_with(s: &SetSystem, config: &LpConfig) -> Result<Rational> {
    optimal_value(&matching_lp(s), config)
}

/// Fractional hitting number `τ_f`, solved on its own program.
pub fn frac_hitting(s: &SetSystem) -> Result<Rational> {
    frac_hitting_with(s, &LpConfig::default())
}

pub fn frac_hitting_with(s: &SetSystem, config: &LpConfig) -> Result<Rational> {
    optimal_value(&hitting_lp(s), config)
}

/// Fractional domination number `γ_f`.
pub fn frac_domination(g: &Graph) -> Result<Rational> {
    frac_hitting(&closed_neighborhood_system(g))
}

/// Fractional and (optionally) integral packing value of a labeled system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingResult {
    pub fractional_value: Rational,
    pub integral_value: Option<usize>,
    pub witness: Option<Vec<usize>>,
    pub system_label: String,
}

impl PackingResult {
    pub fn compute(
        system: &SetSystem,
        label: impl Into<String>,
        integral: bool,
        config: &BnbConfig,
    ) -> Result<Self> {
        let fractional_value = frac_matching(system)?;
        let (integral_value, witness) = if integral {
            let sol = integral_packing_with(system, config)?;
            (Some(sol.value), Some(sol.witness))
        } else {
            (None, None)
        };
        Ok(PackingResult {
            fractional_value,
            integral_value,
            witness,
            system_label: label.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::lp::ratio;

    fn edge_system(g: &Graph) -> SetSystem {
        SetSystem::new(g.n(), g.edges().map(|(u, v)| vec![u, v]).collect()).unwrap()
    }

    #[test]
    fn set_system_normalizes() {
        let s = SetSystem::new(4, vec![vec![2, 1], vec![1, 2, 2], vec![3]]).unwrap();
        assert_eq!(s.sets(), &[vec![1, 2], vec![3]]);
        assert!(SetSystem::new(2, vec![vec![]]).is_err());
        assert!(SetSystem::new(2, vec![vec![2]]).is_err());
        assert!(s.is_packing(&[0, 1]));
        assert!(!s.is_packing(&[0, 0]));
        assert!(s.is_hitting_set(&[1, 3]));
        assert!(!s.is_hitting_set(&[0, 3]));
    }

    #[test]
    fn incidence_graph_shape() {
        let k3 = make_complete(3).unwrap();
        let ig = incidence_graph(&edge_system(&k3));
        assert_eq!(ig.n(), 6);
        assert!((3..6).all(|v| ig.degree(v) == 2 && ig.color(v) == 1));
        assert!(ig.is_bipartite());

        let c5 = make_cycle(5).unwrap();
        let ig = incidence_graph(&closed_neighborhood_system(&c5));
        assert!((0..5).all(|v| ig.degree(v) == c5.degree(v) + 1));
    }

    #[test]
    fn fractional_values() {
        let k3 = make_complete(3).unwrap();
        let s = edge_system(&k3);
        assert_eq!(frac_matching(&s).unwrap(), ratio(3, 2));
        assert_eq!(frac_hitting(&s).unwrap(), ratio(3, 2));
        let fano = fano_plane();
        assert_eq!(frac_matching(&fano).unwrap(), ratio(7, 3));
        assert_eq!(frac_hitting(&fano).unwrap(), ratio(7, 3));
        let single = SetSystem::new(3, vec![vec![0, 2]]).unwrap();
        assert_eq!(frac_matching(&single).unwrap(), rat(1));
        let empty = SetSystem::new(3, vec![]).unwrap();
        assert_eq!(frac_matching(&empty).unwrap(), rat(0));
        assert_eq!(frac_hitting(&empty).unwrap(), rat(0));
    }

    #[test]
    fn domination() {
        for n in 1..6 {
            assert_eq!(frac_domination(&make_complete(n).unwrap()).unwrap(), rat(1));
        }
        assert_eq!(
            frac_domination(&make_cycle(5).unwrap()).unwrap(),
            ratio(5, 3)
        );
        // Vertex-transitive: uniform weight 1/(deg+1) is optimal.
        let p = make_petersen();
        assert_eq!(frac_domination(&p).unwrap(), ratio(10, 4));
    }
}
