use fracwl::graph::*;
use fracwl::lp::*;
use fracwl::packing::*;
use fracwl::wl::{wl_equivalent, wl_refine};
use proptest::prelude::*;

fn graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph(n, &bits))
    })
}

fn arb_graph_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), m),
            prop::collection::vec(any::<bool>(), m),
        )
            .prop_map(move |(a, b)| (graph(n, &a), graph(n, &b)))
    })
}

fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn arb_set_system() -> impl Strategy<Value = SetSystem> {
    (1..=7usize).prop_flat_map(|m| {
        prop::collection::vec(prop::collection::btree_set(0..m, 1..=m.min(3)), 0..=9).prop_map(
            move |sets| {
                SetSystem::new(
                    m,
                    sets.into_iter().map(|s| s.into_iter().collect()).collect(),
                )
                .unwrap()
            },
        )
    })
}

fn brute_nu(s: &SetSystem) -> usize {
    (0u32..1 << s.len())
        .filter_map(|mask| {
            let chosen: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).collect();
            s.is_packing(&chosen).then_some(chosen.len())
        })
        .max()
        .unwrap_or(0)
}

fn brute_tau(s: &SetSystem) -> usize {
    (0u32..1 << s.ground_size())
        .filter_map(|mask| {
            let chosen: Vec<usize> = (0..s.ground_size())
                .filter(|&i| mask >> i & 1 == 1)
                .collect();
            s.is_hitting_set(&chosen).then_some(chosen.len())
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wl_is_invariant_under_relabeling((g, perm) in arb_graph_and_perm(8)) {
        let h = g.permute(&perm).unwrap();
        for k in 1..=2 {
            prop_assert!(wl_equivalent(&g, &h, k).unwrap());
        }
        let joint = wl_refine(&g, Some(&h), 1).unwrap();
        for (v, &pv) in perm.iter().enumerate() {
            prop_assert_eq!(joint.vertex_color(0, v), joint.vertex_color(1, pv));
        }
    }

    #[test]
    fn higher_dimension_refines((g, h) in arb_graph_pair(6)) {
        if wl_equivalent(&g, &h, 2).unwrap() {
            prop_assert!(wl_equivalent(&g, &h, 1).unwrap());
        }
        if is_isomorphic(&g, &h) {
            prop_assert!(wl_equivalent(&g, &h, 2).unwrap());
        }
    }

    #[test]
    fn refinement_is_deterministic(g in arb_graph(8)) {
        prop_assert_eq!(wl_refine(&g, None, 2).unwrap(), wl_refine(&g, None, 2).unwrap());
    }

    #[test]
    fn serialization_round_trips(g in arb_graph(10), colored in any::<bool>()) {
        let g = if colored {
            let n = g.n();
            g.with_colors((0..n as u32).map(|v| v % 3).collect()).unwrap()
        } else {
            g
        };
        let text = serialize_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn product_edge_counts(g in arb_graph(5), h in arb_graph(5)) {
        let t = tensor_product(&g, &h);
        prop_assert_eq!(t.n(), g.n() * h.n());
        prop_assert_eq!(t.edge_count(), 2 * g.edge_count() * h.edge_count());
        let c = cartesian_product(&g, &h);
        prop_assert_eq!(c.edge_count(), g.n() * h.edge_count() + h.n() * g.edge_count());
    }

    #[test]
    fn fractional_iso_iff_wl1((g, h) in arb_graph_pair(6)) {
        let x = find_fractional_graph_iso(&g, &h).unwrap();
        prop_assert_eq!(x.is_some(), wl_equivalent(&g, &h, 1).unwrap());
        if let Some(x) = x {
            prop_assert!(is_doubly_stochastic(&x));
        }
    }

    #[test]
    fn packing_duality_chain(s in arb_set_system()) {
        let nu_f = frac_matching(&s).unwrap();
        let tau_f = frac_hitting(&s).unwrap();
        let nu = integral_packing(&s).unwrap();
        let tau = integral_hitting(&s).unwrap();
        prop_assert_eq!(nu.value, brute_nu(&s));
        prop_assert_eq!(tau.value, brute_tau(&s));
        prop_assert!(s.is_packing(&nu.witness));
        prop_assert!(s.is_hitting_set(&tau.witness));
        prop_assert!(rat(nu.value as i64) <= nu_f);
        prop_assert_eq!(&nu_f, &tau_f);
        prop_assert!(tau_f <= rat(tau.value as i64));
    }

    #[test]
    fn lp_optimum_is_certified(s in arb_set_system()) {
        let lp = matching_lp(&s);
        let sol = solve(&lp).unwrap();
        prop_assert!(sol.certify(&lp));
        prop_assert!(lp.is_feasible(&sol.primal));
        prop_assert_eq!(lp.dual().dual(), lp.clone());
        let dual = solve(&lp.dual()).unwrap();
        prop_assert_eq!(dual.value, sol.value);
    }

    #[test]
    fn lp_text_round_trips(s in arb_set_system(), min in any::<bool>()) {
        let lp = if min { hitting_lp(&s) } else { matching_lp(&s) };
        if lp.num_vars() > 0 {
            prop_assert_eq!(parse_lp(&format_lp(&lp)).unwrap(), lp);
        }
    }

    #[test]
    fn packing_is_invariant_under_relabeling((g, perm) in arb_graph_and_perm(7)) {
        let h = g.permute(&perm).unwrap();
        let k3 = make_complete(3).unwrap();
        let p3 = make_path(3).unwrap();
        prop_assert_eq!(enumerate_subgraphs(&p3, &g).unwrap().len(), enumerate_subgraphs(&p3, &h).unwrap().len());
        prop_assert_eq!(frac_packing(&k3, &g, Mode::Edge).unwrap(), frac_packing(&k3, &h, Mode::Edge).unwrap());
        prop_assert_eq!(frac_packing(&p3, &g, Mode::Vertex).unwrap(), frac_packing(&p3, &h, Mode::Vertex).unwrap());
        prop_assert_eq!(frac_domination(&g).unwrap(), frac_domination(&h).unwrap());
    }

    #[test]
    fn wl1_equivalence_fixes_fractional_matching((g, h) in arb_graph_pair(7)) {
        if wl_equivalent(&g, &h, 1).unwrap() {
            let k2 = make_complete(2).unwrap();
            prop_assert_eq!(frac_packing(&k2, &g, Mode::Vertex).unwrap(), frac_packing(&k2, &h, Mode::Vertex).unwrap());
            prop_assert_eq!(frac_domination(&g).unwrap(), frac_domination(&h).unwrap());
        }
    }
}

#[test]
fn disjoint_cycles_versus_long_cycles() {
    // WL1-equivalent regular pairs exercise the interesting branch of the
    // invariance property above, which random pairs rarely reach.
    let k2 = make_complete(2).unwrap();
    for s in 1..=3 {
        let g = make_cycle(6 * s).unwrap();
        let h = scalar_multiple(2 * s, &make_cycle(3).unwrap());
        assert!(wl_equivalent(&g, &h, 1).unwrap());
        assert_eq!(
            frac_packing(&k2, &g, Mode::Vertex).unwrap(),
            frac_packing(&k2, &h, Mode::Vertex).unwrap()
        );
        assert_eq!(frac_domination(&g).unwrap(), frac_domination(&h).unwrap());
    }
}
