use super::Graph;

/// Vertex `v` of `h` becomes `g.n() + v`. Colors are kept when both
/// operands are colored.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    let edges = g.edges().chain(h.edges().map(|(u, v)| (u + off, v + off)));
    let out = Graph::new(g.n() + h.n(), edges.collect::<Vec<_>>()).expect("union of simple graphs");
    match (g.colors(), h.colors()) {
        (Some(a), Some(b)) => out
            .with_colors(a.iter().chain(b).copied().collect())
            .expect("total coloring"),
        _ => out,
    }
}

/// `k` disjoint copies of `g`.
pub fn scalar_multiple(k: usize, g: &Graph) -> Graph {
    (0..k).fold(Graph::empty(0), |acc, _| disjoint_union(&acc, g))
}

/// Tensor (categorical) product. `(u, u')` is vertex `u * h.n() + u'`.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut edges = Vec::with_capacity(2 * g.edge_count() * h.edge_count());
    for (u, v) in g.edges() {
        for (a, b) in h.edges() {
            edges.push((u * nh + a, v * nh + b));
            edges.push((u * nh + b, v * nh + a));
        }
    }
    Graph::new(g.n() * nh, edges).expect("tensor product of simple graphs is simple")
}

/// Cartesian product `g □ h`, with the same row-major vertex indexing.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for (a, b) in h.edges() {
            edges.push((u * nh + a, u * nh + b));
        }
    }
    for (u, v) in g.edges() {
        for a in 0..nh {
            edges.push((u * nh + a, v * nh + a));
        }
    }
    Graph::new(g.n() * nh, edges).expect("cartesian product of simple graphs is simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn unions() {
        let c3 = make_cycle(3).unwrap();
        let two = scalar_multiple(2, &c3);
        assert_eq!(
            (two.n(), two.edge_count(), two.components().len()),
            (6, 6, 2)
        );
        let k1 = make_complete(1).unwrap();
        let u = disjoint_union(&k1, &k1);
        assert_eq!((u.n(), u.edge_count()), (2, 0));
    }

    #[test]
    fn tensor() {
        let s = make_shrikhande();
        assert_eq!(tensor_product(&s, &s).edge_count(), 4608);
        let k2 = make_complete(2).unwrap();
        let t = tensor_product(&k2, &k2);
        assert_eq!(t.edge_list(), vec![(0, 3), (1, 2)]);
        let k3 = make_complete(3).unwrap();
        assert!(tensor_product(&k3, &k3).degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn cartesian() {
        let k2 = make_complete(2).unwrap();
        assert!(is_isomorphic(
            &cartesian_product(&k2, &k2),
            &make_cycle(4).unwrap()
        ));
        let k4 = make_complete(4).unwrap();
        assert_eq!(cartesian_product(&k4, &k4).edge_count(), 48);
    }
}
