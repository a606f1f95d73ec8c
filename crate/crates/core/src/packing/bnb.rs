//! Best-first branch-and-bound for set packing and hitting set.
//!
//! Instances split into components (sets linked by shared elements) that
//! are solved independently. Every node carries a cheap combinatorial
//! bound; when it is popped, the exact LP relaxation of the residual
//! instance tightens it before branching.

use super::{frac_hitting, frac_matching, SetSystem};
use crate::error::{Error, Result};
use num_integer::Integer;
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BnbConfig {
    /// Cap on nodes expanded across all components.
    pub node_budget: u64,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig {
            node_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSolution {
    pub value: usize,
    /// Set indices for packing, ground elements for hitting; sorted.
    pub witness: Vec<usize>,
    pub nodes: u64,
}

/// Groups set indices into components linked by shared elements.
fn components(s: &SetSystem) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..s.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for occ in s.occurrences() {
        for w in occ.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; s.len()];
    for i in 0..s.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn floor_rational(r: &crate::lp::Rational) -> usize {
    let q = r.numer().div_floor(r.denom());
    usize::try_from(q).expect("nonnegative bound")
}

fn ceil_rational(r: &crate::lp::Rational) -> usize {
    let q = r.numer().div_ceil(r.denom());
    usize::try_from(q).expect("nonnegative bound")
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

#[derive(PartialEq, Eq)]
struct Node {
    key: (usize, usize, Reverse<u64>),
    chosen: Vec<usize>,
    /// Packing: sets still selectable. Hitting: elements not forbidden.
    open: Vec<bool>,
    lp_done: bool,
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn integral_packing(s: &SetSystem) -> Result<IntegralSolution> {
    integral_packing_with(s, &BnbConfig::default())
}

/// Maximum number of pairwise disjoint sets, with a witness.
pub fn integral_packing_with(s: &SetSystem, config: &BnbConfig) -> Result<IntegralSolution> {
    let mut budget = Budget {
        limit: config.node_budget,
        used: 0,
    };
    let comps = components(s);
    let mut witness = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        match pack_component(s, comp, &mut budget) {
            Ok(w) => witness.extend(w),
            Err((best, bound)) => {
                let rest: usize = comps[ci + 1..].iter().map(Vec::len).sum();
                return Err(Error::BudgetExhausted {
                    budget: config.node_budget,
                    best: Some(witness.len() + best),
                    bound: format!("at most {}", witness.len() + bound + rest),
                });
            }
        }
    }
    witness.sort_unstable();
    Ok(IntegralSolution {
        value: witness.len(),
        witness,
        nodes: budget.used,
    })
}

/// Returns the best packing of one component, or `(best, upper bound)` when
/// the budget runs out.
fn pack_component(
    s: &SetSystem,
    comp: &[usize],
    budget: &mut Budget,
) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let sets = s.sets();
    let min_size = comp
        .iter()
        .map(|&i| sets[i].len())
        .min()
        .unwrap_or(1)
        .max(1);
    let cheap = |open: &[bool]| {
        let mut covered = vec![false; s.ground_size()];
        let mut count = 0;
        for &i in comp.iter().filter(|&&i| open[i]) {
            count += 1;
            for &x in &sets[i] {
                covered[x] = true;
            }
        }
        count.min(covered.iter().filter(|&&c| c).count() / min_size)
    };
    let mut open = vec![false; s.len()];
    for &i in comp {
        open[i] = true;
    }
    let mut seq = 0u64;
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        key: (cheap(&open), 0, Reverse(seq)),
        chosen: Vec::new(),
        open,
        lp_done: false,
    });
    let mut best: Vec<usize> = Vec::new();
    while let Some(node) = heap.pop() {
        let bound = node.key.0;
        if bound <= best.len() {
            break;
        }
        if !budget.tick() {
            return Err((best.len(), bound));
        }
        let open_sets: Vec<usize> = comp.iter().copied().filter(|&i| node.open[i]).collect();
        if open_sets.is_empty() {
            if node.chosen.len() > best.len() {
                best = node.chosen;
            }
            continue;
        }
        if !node.lp_done {
            let residual = SetSystem::new(
                s.ground_size(),
                open_sets.iter().map(|&i| sets[i].clone()).collect(),
            )
            .expect("subsystem is valid");
            let lp = floor_rational(&frac_matching(&residual).expect("packing LP is solvable"));
            let tightened = node.chosen.len() + lp;
            if tightened <= best.len() {
                continue;
            }
            if tightened < bound {
                heap.push(Node {
                    key: (tightened, node.key.1, node.key.2),
                    lp_done: true,
                    ..node
                });
                continue;
            }
        }
        // Branch on the element covered by the fewest open sets.
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); s.ground_size()];
        for &i in &open_sets {
            for &x in &sets[i] {
                occ[x].push(i);
            }
        }
        let (_, pivot) = occ
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_empty())
            .map(|(x, o)| (o.len(), x))
            .min()
            .expect("open sets cover some element");
        let mut children = Vec::new();
        for &i in &occ[pivot] {
            let mut open = node.open.clone();
            for &x in &sets[i] {
                for &j in &occ[x] {
                    open[j] = false;
                }
            }
            let mut chosen = node.chosen.clone();
            chosen.push(i);
            children.push((chosen, open));
        }
        let mut skip = node.open.clone();
        for &j in &occ[pivot] {
            skip[j] = false;
        }
        children.push((node.chosen.clone(), skip));
        for (chosen, open) in children {
            let b = chosen.len() + cheap(&open);
            if b > best.len() {
                seq += 1;
                heap.push(Node {
                    key: (b, chosen.len(), Reverse(seq)),
                    chosen,
                    open,
                    lp_done: false,
                });
            }
        }
    }
    Ok(best)
}

pub fn integral_hitting(s: &SetSystem) -> Result<IntegralSolution> {
    integral_hitting_with(s, &BnbConfig::default())
}

/// Minimum number of ground elements meeting every set, with a witness.
pub fn integral_hitting_with(s: &SetSystem, config: &BnbConfig) -> Result<IntegralSolution> {
    let mut budget = Budget {
        limit: config.node_budget,
        used: 0,
    };
    let comps = components(s);
    let mut witness = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        match hit_component(s, comp, &mut budget) {
            Ok(w) => witness.extend(w),
            Err((best, bound)) => {
                let rest: usize = comps[ci + 1..].iter().map(Vec::len).sum();
                return Err(Error::BudgetExhausted {
                    budget: config.node_budget,
                    best: best.map(|b| witness.len() + b + rest),
                    bound: format!("at least {}", witness.len() + bound),
                });
            }
        }
    }
    witness.sort_unstable();
    Ok(IntegralSolution {
        value: witness.len(),
        witness,
        nodes: budget.used,
    })
}

/// A greedy family of pairwise disjoint unhit sets (restricted to allowed
/// elements); each needs its own element.
fn disjoint_lower_bound(s: &SetSystem, unhit: &[usize], allowed: &[bool]) -> usize {
    let sets = s.sets();
    let mut order: Vec<usize> = unhit.to_vec();
    order.sort_by_key(|&i| (sets[i].iter().filter(|&&x| allowed[x]).count(), i));
    let mut used = vec![false; s.ground_size()];
    let mut count = 0;
    for i in order {
        let elems: Vec<usize> = sets[i].iter().copied().filter(|&x| allowed[x]).collect();
        if elems.iter().all(|&x| !used[x]) {
            count += 1;
            for x in elems {
                used[x] = true;
            }
        }
    }
    count
}

fn hit_component(
    s: &SetSystem,
    comp: &[usize],
    budget: &mut Budget,
) -> std::result::Result<Vec<usize>, (Option<usize>, usize)> {
    let sets = s.sets();
    let unhit_of = |chosen: &[usize]| -> Vec<usize> {
        comp.iter()
            .copied()
            .filter(|&i| !sets[i].iter().any(|x| chosen.contains(x)))
            .collect()
    };
    let allowed = vec![true; s.ground_size()];
    let root_unhit = unhit_of(&[]);
    let mut seq = 0u64;
    // Min-heap on the bound via `Reverse`; ties prefer deeper nodes.
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(HitNode {
        key: (
            disjoint_lower_bound(s, &root_unhit, &allowed),
            Reverse(0),
            seq,
        ),
        chosen: Vec::new(),
        allowed,
        lp_done: false,
    }));
    let mut best: Option<Vec<usize>> = None;
    let beats = |b: usize, best: &Option<Vec<usize>>| best.as_ref().is_none_or(|w| b < w.len());
    while let Some(Reverse(node)) = heap.pop() {
        let bound = node.key.0;
        if !beats(bound, &best) {
            break;
        }
        if !budget.tick() {
            return Err((best.map(|w| w.len()), bound));
        }
        let unhit = unhit_of(&node.chosen);
        if unhit.is_empty() {
            best = Some(node.chosen);
            continue;
        }
        if !node.lp_done {
            let residual = SetSystem::new(
                s.ground_size(),
                unhit
                    .iter()
                    .map(|&i| {
                        sets[i]
                            .iter()
                            .copied()
                            .filter(|&x| node.allowed[x])
                            .collect()
                    })
                    .collect(),
            )
            .expect("children keep every unhit set hittable");
            let lp = ceil_rational(&frac_hitting(&residual).expect("hitting LP is solvable"));
            let tightened = node.chosen.len() + lp;
            if !beats(tightened, &best) {
                continue;
            }
            if tightened > bound {
                heap.push(Reverse(HitNode {
                    key: (tightened, node.key.1, node.key.2),
                    lp_done: true,
                    ..node
                }));
                continue;
            }
        }
        let (_, branch) = unhit
            .iter()
            .map(|&i| (sets[i].iter().filter(|&&x| node.allowed[x]).count(), i))
            .min()
            .expect("unhit is nonempty");
        let options: Vec<usize> = sets[branch]
            .iter()
            .copied()
            .filter(|&x| node.allowed[x])
            .collect();
        let mut allowed = node.allowed.clone();
        for &x in &options {
            let mut chosen = node.chosen.clone();
            chosen.push(x);
            let child_unhit = unhit_of(&chosen);
            let dead = child_unhit
                .iter()
                .any(|&i| !sets[i].iter().any(|&y| allowed[y]));
            if !dead {
                let b = chosen.len() + disjoint_lower_bound(s, &child_unhit, &allowed);
                if beats(b, &best) {
                    seq += 1;
                    heap.push(Reverse(HitNode {
                        key: (b, Reverse(chosen.len()), seq),
                        chosen,
                        allowed: allowed.clone(),
                        lp_done: false,
                    }));
                }
            }
            allowed[x] = false;
        }
    }
    let mut w = best.expect("every component has a hitting set");
    w.sort_unstable();
    Ok(w)
}

#[derive(PartialEq, Eq)]
struct HitNode {
    key: (usize, Reverse<usize>, u64),
    chosen: Vec<usize>,
    allowed: Vec<bool>,
    lp_done: bool,
}

impl Ord for HitNode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for HitNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
