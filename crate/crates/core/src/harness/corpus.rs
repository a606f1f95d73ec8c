//! Named graphs and graph pairs shared by the experiments and tests.

use crate::graph::*;

#[derive(Clone, Debug)]
pub struct GraphPair {
    pub name: String,
    pub g: Graph,
    pub h: Graph,
}

fn pair(name: &str, g: Graph, h: Graph) -> GraphPair {
    GraphPair {
        name: name.to_string(),
        g,
        h,
    }
}

fn cycle(n: usize) -> Graph {
    make_cycle(n).expect("cycle length is valid")
}

fn path(n: usize) -> Graph {
    make_path(n).expect("path length is valid")
}

fn complete(n: usize) -> Graph {
    make_complete(n).expect("clique size is valid")
}

fn prism(n: usize) -> Graph {
    cartesian_product(&cycle(n), &complete(2))
}

/// Non-isomorphic pairs that color refinement cannot tell apart; all have
/// at most 12 vertices.
pub fn wl1_equivalent_pairs() -> Vec<GraphPair> {
    vec![
        pair("c6/2c3", cycle(6), scalar_multiple(2, &cycle(3))),
        pair("c9/3c3", cycle(9), scalar_multiple(3, &cycle(3))),
        pair("c12/4c3", cycle(12), scalar_multiple(4, &cycle(3))),
        pair("c12/2c6", cycle(12), scalar_multiple(2, &cycle(6))),
        pair("c8/2c4", cycle(8), scalar_multiple(2, &cycle(4))),
        pair("c10/2c5", cycle(10), scalar_multiple(2, &cycle(5))),
        pair("c7/c4+c3", cycle(7), disjoint_union(&cycle(4), &cycle(3))),
        pair("cube/2k4", make_cube(), scalar_multiple(2, &complete(4))),
        pair(
            "matched_cliques(3)/k33",
            make_matched_cliques(3).expect("valid"),
            make_complete_bipartite(3, 3).expect("valid"),
        ),
        pair(
            "matched_cliques(4)/k44",
            make_matched_cliques(4).expect("valid"),
            make_complete_bipartite(4, 4).expect("valid"),
        ),
        pair("petersen/prism5", make_petersen(), prism(5)),
    ]
}

/// Pairs on equal vertex counts that color refinement distinguishes,
/// several with equal degree sequences.
pub fn wl1_inequivalent_pairs() -> Vec<GraphPair> {
    vec![
        pair(
            "k3+k1/p3+k1",
            disjoint_union(&complete(3), &complete(1)),
            disjoint_union(&path(3), &complete(1)),
        ),
        pair("p4/star3", path(4), make_star(3).expect("valid")),
        pair(
            "c6/k33",
            cycle(6),
            make_complete_bipartite(3, 3).expect("valid"),
        ),
        pair("c3+k2/p5", disjoint_union(&cycle(3), &complete(2)), path(5)),
        pair("p3+c4/p7", disjoint_union(&path(3), &cycle(4)), path(7)),
        pair("k4/c4", complete(4), cycle(4)),
        pair("c5/k5", cycle(5), complete(5)),
        pair("petersen/c10", make_petersen(), cycle(10)),
        pair("cube/c8", make_cube(), cycle(8)),
        pair("star4/p5", make_star(4).expect("valid"), path(5)),
    ]
}

/// Pairs that 2-dimensional refinement cannot tell apart, built from the
/// Shrikhande and 4×4 rook's graphs.
pub fn wl2_equivalent_pairs() -> Vec<GraphPair> {
    let (s, r) = (make_shrikhande(), make_rook4());
    let k3 = complete(3);
    vec![
        pair("shrikhande/rook4", s.clone(), r.clone()),
        pair("co-shrikhande/co-rook4", s.complement(), r.complement()),
        pair(
            "shrikhande+k3/rook4+k3",
            disjoint_union(&s, &k3),
            disjoint_union(&r, &k3),
        ),
    ]
}

/// WL-1 equivalent pairs of any size used for invariance checks.
pub fn invariance_pairs() -> Vec<GraphPair> {
    let mut pairs = wl1_equivalent_pairs();
    pairs.extend(wl2_equivalent_pairs());
    pairs
}

/// Graphs with at least seven triangles.
pub fn triangle_rich_graphs() -> Vec<(String, Graph)> {
    let k4 = complete(4);
    vec![
        ("shrikhande".into(), make_shrikhande()),
        ("rook4".into(), make_rook4()),
        ("k5".into(), complete(5)),
        ("k6".into(), complete(6)),
        ("k7".into(), complete(7)),
        ("co-shrikhande".into(), make_shrikhande().complement()),
        ("co-rook4".into(), make_rook4().complement()),
        ("paley(13)".into(), make_paley(13).expect("valid")),
        (
            "matched_cliques(4)".into(),
            make_matched_cliques(4).expect("valid"),
        ),
        ("k4xk4".into(), tensor_product(&k4, &k4)),
    ]
}
