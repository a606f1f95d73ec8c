use super::corpus::{self, GraphPair};
use super::{require, HarnessConfig, Recorder, Relation, Source};
use crate::error::Result;
use crate::graph::*;
use crate::lp::{
    all_ones_lp, biadjacency_matrix, check_reduction, find_fractional_graph_iso_with,
    fractional_matrix_iso_from_graph_iso, is_doubly_stochastic, is_fractional_matrix_iso, mat_mul,
    rat, ratio, solve_with, verify_equal_values, DenseMatrix, Opt, Rational, ReductionCertificate,
};
use crate::packing::*;
use crate::wl::wl_equivalent_with;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Runner = Box<dyn Fn(&mut Recorder, &HarnessConfig) -> Result<()> + Send + Sync>;

pub struct Experiment {
    pub id: String,
    /// The claim being reproduced, in words.
    pub claim: String,
    pub(super) run: Runner,
}

fn entry(
    id: impl Into<String>,
    claim: impl Into<String>,
    run: impl Fn(&mut Recorder, &HarnessConfig) -> Result<()> + Send + Sync + 'static,
) -> Experiment {
    Experiment {
        id: id.into(),
        claim: claim.into(),
        run: Box::new(run),
    }
}

pub fn experiment_ids() -> Vec<String> {
    registry().into_iter().map(|e| e.id).collect()
}

pub fn registry() -> Vec<Experiment> {
    let mut r = vec![
        entry(
            "ratio-shrikhande-rook",
            "The Shrikhande and 4x4 rook's graphs are WL2-equivalent, both have fractional edge-disjoint triangle packing number 16, but their triangle packing numbers are 16 and 8, so the invariance ratio and integrality gap reach 2",
            shrikhande_rook,
        ),
        entry(
            "triangle-wl1-wl2-separation",
            "2C3 and C6 are WL1-equivalent with fractional triangle packing numbers 2 and 0, so WL1 does not determine the fractional triangle packing number while WL2 separates the pair",
            triangle_separation,
        ),
    ];
    for s in 1..=3usize {
        r.push(entry(
            format!("matching-ratio-cycle-s{s}"),
            format!("C{} and {}C3 are WL1-equivalent with equal fractional matching numbers {} while their matching numbers have ratio 3/2", 6 * s, 2 * s, 3 * s),
            move |rec, cfg| matching_ratio(rec, cfg, s),
        ));
    }
    for q in [13usize, 17, 29, 37] {
        r.push(entry(
            format!("paley-domination-q{q}"),
            format!("The Paley graph on {q} vertices has fractional domination number at most 2 and is WL1-equivalent to a circulant with domination number 2{}", if q == 37 { "; it has the 2-extension property, so its domination number is at least 3" } else { "" }),
            move |rec, cfg| paley_domination(rec, cfg, q),
        ));
    }
    for s in 3..=5usize {
        r.push(entry(
            format!("vertex-cover-matched-cliques-s{s}"),
            format!("Two matched copies of K{s} and K{s},{s} are WL1-equivalent with vertex cover numbers {} and {s} and equal fractional vertex cover numbers", 2 * s - 2),
            move |rec, cfg| vertex_cover(rec, cfg, s),
        ));
    }
    r.extend([
        entry(
            "htw-classification",
            "htw(K2) = htw(P3) = 1 and htw(K3) = 2; the fractional F-packing number agrees on every WL-htw(F)-equivalent pair",
            htw_classification,
        ),
        entry(
            "tensor-square-wl2",
            "WL2-equivalence is preserved by tensor products: S x S and R x R are WL2-equivalent",
            tensor_square,
        ),
        entry(
            "k3-decomposition-products",
            "Every edge of K3 x K3 extends uniquely to a triangle, and products of triangle decompositions decompose tensor products; S x S splits into 1536 edge-disjoint triangles",
            k3_products,
        ),
        entry(
            "uncovered-edges-accounting",
            "At least v_odd(G)/2 edges stay uncovered by any triangle packing; for K = (K4)^k this gives 2^(2k-1), and 8^k 2^(2k-1) = 2^(5k)/2",
            uncovered_accounting,
        ),
        entry(
            "fano-freeness",
            "Triangle edge-set systems of graphs contain no Fano plane, while the Fano plane itself has fractional matching number 7/3",
            fano_freeness,
        ),
        entry(
            "lp-reduction-incidence-pairs",
            "Fractionally isomorphic incidence graphs yield mutual reductions between the all-ones LPs of their biadjacency matrices, hence equal LP values",
            lp_reductions,
        ),
        entry(
            "fractional-iso-cross-validation",
            "Two graphs are indistinguishable by WL1 if and only if they are fractionally isomorphic",
            fractional_iso_cross_validation,
        ),
        entry(
            "permutation-robustness",
            "WL colorings, subgraph counts and packing values do not depend on vertex labels",
            permutation_robustness,
        ),
    ]);
    r
}

fn k3() -> Graph {
    make_complete(3).expect("valid")
}

fn k2() -> Graph {
    make_complete(2).expect("valid")
}

fn rho(g: &Graph, cfg: &HarnessConfig) -> Result<usize> {
    Ok(integral_packing_with(&edge_packing_system(&k3(), g)?, &cfg.bnb())?.value)
}

fn rho_f(g: &Graph, cfg: &HarnessConfig) -> Result<Rational> {
    frac_matching_with(&edge_packing_system(&k3(), g)?, &cfg.lp())
}

fn pi_f(f: &Graph, g: &Graph, cfg: &HarnessConfig) -> Result<Rational> {
    frac_matching_with(&vertex_packing_system(f, g)?, &cfg.lp())
}

fn wl(g: &Graph, h: &Graph, k: usize, cfg: &HarnessConfig) -> Result<bool> {
    wl_equivalent_with(g, h, k, &cfg.wl())
}

fn shrikhande_rook(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let (s, r) = (make_shrikhande(), make_rook4());
    rec.input("shrikhande");
    rec.input("rook4");
    rec.check_eq(
        "wl2_equivalent",
        wl(&s, &r, 2, cfg)?,
        true,
        Source::Published,
    );
    rec.check_eq("rho_S", rho(&s, cfg)?, 16usize, Source::Published);
    rec.check_eq("rho_R", rho(&r, cfg)?, 8usize, Source::Published);
    rec.check_eq("rho_f_S", rho_f(&s, cfg)?, 16usize, Source::Derived);
    rec.check_eq("rho_f_R", rho_f(&r, cfg)?, 16usize, Source::Derived);
    Ok(())
}

fn triangle_separation(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let c6 = make_cycle(6)?;
    let two_c3 = scalar_multiple(2, &k3());
    rec.input("2c3");
    rec.input("c6");
    rec.check_eq(
        "wl1_equivalent",
        wl(&two_c3, &c6, 1, cfg)?,
        true,
        Source::Published,
    );
    rec.check_eq("rho_f_2C3", rho_f(&two_c3, cfg)?, 2usize, Source::Published);
    rec.check_eq("rho_f_C6", rho_f(&c6, cfg)?, 0usize, Source::Published);
    rec.check_eq(
        "wl2_equivalent",
        wl(&two_c3, &c6, 2, cfg)?,
        false,
        Source::Derived,
    );
    Ok(())
}

fn matching_ratio(rec: &mut Recorder, cfg: &HarnessConfig, s: usize) -> Result<()> {
    let g = make_cycle(6 * s)?;
    let h = scalar_multiple(2 * s, &k3());
    rec.input(format!("cycle({})", 6 * s));
    rec.input(format!("{}*cycle(3)", 2 * s));
    let (sg, sh) = (
        vertex_packing_system(&k2(), &g)?,
        vertex_packing_system(&k2(), &h)?,
    );
    let nu_g = integral_packing_with(&sg, &cfg.bnb())?.value;
    let nu_h = integral_packing_with(&sh, &cfg.bnb())?.value;
    rec.check_eq(
        "wl1_equivalent",
        wl(&g, &h, 1, cfg)?,
        true,
        Source::Published,
    );
    rec.check_eq(
        "nu_f_G",
        frac_matching_with(&sg, &cfg.lp())?,
        3 * s,
        Source::Derived,
    );
    rec.check_eq(
        "nu_f_H",
        frac_matching_with(&sh, &cfg.lp())?,
        3 * s,
        Source::Derived,
    );
    rec.check_eq("nu_G", nu_g, 3 * s, Source::Derived);
    rec.check_eq("nu_H", nu_h, 2 * s, Source::Derived);
    require(nu_h > 0, "nu_H must be positive")?;
    rec.check_eq(
        "ratio",
        ratio(nu_g as i64, nu_h as i64),
        ratio(3, 2),
        Source::Published,
    );
    Ok(())
}

fn paley_domination(rec: &mut Recorder, cfg: &HarnessConfig, q: usize) -> Result<()> {
    let g = make_paley(q)?;
    let h = make_band_circulant(q, (q - 1) / 4)?;
    rec.input(format!("paley({q})"));
    rec.input(format!("circulant({q}, ±1..±{})", (q - 1) / 4));
    let (ng, nh) = (
        closed_neighborhood_system(&g),
        closed_neighborhood_system(&h),
    );
    let gf_g = frac_hitting_with(&ng, &cfg.lp())?;
    let gf_h = frac_hitting_with(&nh, &cfg.lp())?;
    rec.check("gamma_f_G", &gf_g, Relation::Le, 2usize, Source::Published);
    rec.check_eq("gamma_f_H", gf_h, gf_g, Source::Derived);
    rec.check_eq(
        "wl1_equivalent",
        wl(&g, &h, 1, cfg)?,
        true,
        Source::Published,
    );
    rec.check_eq(
        "gamma_H",
        integral_hitting_with(&nh, &cfg.bnb())?.value,
        2usize,
        Source::Published,
    );
    let gamma_g = integral_hitting_with(&ng, &cfg.bnb())?.value;
    if q == 37 {
        rec.check_eq(
            "k_extension_2",
            k_extension(&g, 2)?,
            true,
            Source::Published,
        );
        rec.check("gamma_G", gamma_g, Relation::Ge, 3usize, Source::Published);
    } else {
        rec.record("gamma_G", gamma_g);
    }
    Ok(())
}

fn vertex_cover(rec: &mut Recorder, cfg: &HarnessConfig, s: usize) -> Result<()> {
    let g = make_matched_cliques(s)?;
    let h = make_complete_bipartite(s, s)?;
    rec.input(format!("matched_cliques({s})"));
    rec.input(format!("complete_bipartite({s},{s})"));
    let (sg, sh) = (
        vertex_packing_system(&k2(), &g)?,
        vertex_packing_system(&k2(), &h)?,
    );
    rec.check_eq(
        "wl1_equivalent",
        wl(&g, &h, 1, cfg)?,
        true,
        Source::Published,
    );
    rec.check_eq(
        "tau_G",
        integral_hitting_with(&sg, &cfg.bnb())?.value,
        2 * s - 2,
        Source::Published,
    );
    rec.check_eq(
        "tau_H",
        integral_hitting_with(&sh, &cfg.bnb())?.value,
        s,
        Source::Published,
    );
    let (tf_g, tf_h) = (
        frac_hitting_with(&sg, &cfg.lp())?,
        frac_hitting_with(&sh, &cfg.lp())?,
    );
    rec.check_eq(
        "nu_f_G",
        frac_matching_with(&sg, &cfg.lp())?,
        tf_g.clone(),
        Source::Derived,
    );
    rec.check_eq("tau_f_G", tf_g, tf_h.clone(), Source::Derived);
    rec.check_eq("tau_f_H", tf_h, s, Source::Derived);
    Ok(())
}

fn htw_classification(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let patterns: Vec<(&str, Graph, usize, Source)> = vec![
        ("K2", k2(), 1, Source::Published),
        ("P3", make_path(3)?, 1, Source::Published),
        ("K3", k3(), 2, Source::Published),
        ("K13", make_star(3)?, 1, Source::Derived),
        ("P4", make_path(4)?, 2, Source::Derived),
    ];
    let pairs = corpus::invariance_pairs();
    let mut checked = 0usize;
    let mut pairs_used = std::collections::BTreeSet::new();
    for (name, f, expected_htw, source) in &patterns {
        rec.input(format!("pattern {name}"));
        let k = htw(f)?;
        rec.check_eq(&format!("htw_{name}"), k, *expected_htw, *source);
        for p in &pairs {
            if !wl(&p.g, &p.h, k, cfg)? {
                continue;
            }
            let agree = pi_f(f, &p.g, cfg)? == pi_f(f, &p.h, cfg)?;
            rec.check_eq(
                &format!("pi_f_{name}_agrees[{}]", p.name),
                agree,
                true,
                Source::Published,
            );
            checked += 1;
            pairs_used.insert(p.name.clone());
        }
    }
    // WL1 alone does not fix the triangle packing number.
    let c6 = make_cycle(6)?;
    let two_c3 = scalar_multiple(2, &k3());
    rec.check_eq(
        "pi_f_K3_differs[c6/2c3]",
        pi_f(&k3(), &c6, cfg)? != pi_f(&k3(), &two_c3, cfg)?,
        true,
        Source::Published,
    );
    rec.check(
        "pairs_checked",
        pairs_used.len(),
        Relation::Ge,
        10usize,
        Source::Derived,
    );
    rec.record("comparisons", checked);
    Ok(())
}

fn tensor_square(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let (s, r) = (make_shrikhande(), make_rook4());
    let (ss, rr) = (tensor_product(&s, &s), tensor_product(&r, &r));
    rec.input("tensor(shrikhande, shrikhande)");
    rec.input("tensor(rook4, rook4)");
    rec.record("vertices", ss.n());
    rec.check_eq("edges_SxS", ss.edge_count(), 4608usize, Source::Derived);
    rec.check_eq(
        "wl2_equivalent",
        wl(&ss, &rr, 2, cfg)?,
        true,
        Source::Published,
    );
    Ok(())
}

fn k3_products(rec: &mut Recorder, _cfg: &HarnessConfig) -> Result<()> {
    let kk = tensor_product(&k3(), &k3());
    rec.input("tensor(k3, k3)");
    rec.input("tensor(shrikhande, shrikhande)");
    let t = k3_decompose(&kk);
    rec.check_eq(
        "triangles_K3xK3",
        t.as_ref().map_or(0, Vec::len),
        6usize,
        Source::Derived,
    );
    rec.check_eq(
        "decomposes_K3xK3",
        t.is_some_and(|t| verify_triangle_decomposition(&kk, &t)),
        true,
        Source::Published,
    );
    let unique = kk.edges().all(|(u, v)| kk.common_neighbors(u, v) == 1);
    rec.check_eq("unique_extension_K3xK3", unique, true, Source::Published);

    let s = make_shrikhande();
    let ss = tensor_product(&s, &s);
    let t = k3_decompose_product(&s, &s);
    rec.check_eq(
        "triangles_SxS",
        t.as_ref().map_or(0, Vec::len),
        1536usize,
        Source::Derived,
    );
    rec.check_eq(
        "decomposes_SxS",
        t.is_some_and(|t| verify_triangle_decomposition(&ss, &t)),
        true,
        Source::Published,
    );
    Ok(())
}

fn uncovered_accounting(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let k4 = make_complete(4)?;
    rec.input("k4");
    rec.input("rook4");
    let rho_k4 = rho(&k4, cfg)?;
    let partial_k4 = k4.edge_count() - 3 * rho_k4;
    rec.check_eq("rho_K4", rho_k4, 1usize, Source::Derived);
    rec.check_eq("partial_K4", partial_k4, 3usize, Source::Derived);
    rec.check_eq(
        "bound_K4",
        uncovered_edges_lower_bound(&k4),
        2usize,
        Source::Derived,
    );
    rec.check(
        "partial_K4_vs_bound",
        partial_k4,
        Relation::Ge,
        uncovered_edges_lower_bound(&k4),
        Source::Published,
    );

    // K = (K4)^k has 4^k vertices, all of odd degree 3^k.
    let mut power = k4.clone();
    for k in 2..=4u32 {
        power = tensor_product(&power, &k4);
        if k == 3 {
            continue;
        }
        rec.input(format!("k4^{k}"));
        rec.check_eq(
            &format!("bound_K4^{k}"),
            uncovered_edges_lower_bound(&power),
            2usize.pow(2 * k - 1),
            Source::Published,
        );
    }
    for k in 1..=2u32 {
        let lhs = 8u64.pow(k) * 2u64.pow(2 * k - 1);
        rec.check_eq(
            &format!("symbolic_k{k}"),
            lhs,
            (2i64.pow(5 * k) / 2) as usize,
            Source::Published,
        );
    }
    let r = make_rook4();
    let partial_r = r.edge_count() - 3 * rho(&r, cfg)?;
    rec.check(
        "partial_R_vs_8_partial_K4",
        partial_r,
        Relation::Ge,
        8 * partial_k4,
        Source::Published,
    );
    rec.check(
        "partial_R_vs_2^5/2",
        partial_r,
        Relation::Ge,
        16usize,
        Source::Published,
    );
    Ok(())
}

impl From<u64> for super::Value {
    fn from(v: u64) -> Self {
        super::Value::Int(i64::try_from(v).expect("fits"))
    }
}

fn fano_freeness(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    for (name, g) in corpus::triangle_rich_graphs() {
        rec.input(name.clone());
        let sys = edge_packing_system(&k3(), &g)?;
        rec.check_eq(
            &format!("fano_free[{name}]"),
            fano_free(&sys)?,
            true,
            Source::Published,
        );
    }
    let fano = fano_plane();
    rec.check_eq("fano_free[fano]", fano_free(&fano)?, false, Source::Trivial);
    rec.check_eq(
        "nu_f_fano",
        frac_matching_with(&fano, &cfg.lp())?,
        ratio(7, 3),
        Source::Derived,
    );
    Ok(())
}

fn lp_reductions(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let c6 = make_cycle(6)?;
    let two_c3 = scalar_multiple(2, &k3());
    let edges = |g: &Graph| vertex_packing_system(&k2(), g);
    let systems = vec![
        ("edges c6/2c3", edges(&c6)?, edges(&two_c3)?),
        (
            "neighborhoods c8/2c4",
            closed_neighborhood_system(&make_cycle(8)?),
            closed_neighborhood_system(&scalar_multiple(2, &make_cycle(4)?)),
        ),
        (
            "edges matched_cliques(3)/k33",
            edges(&make_matched_cliques(3)?)?,
            edges(&make_complete_bipartite(3, 3)?)?,
        ),
    ];
    for (name, s1, s2) in systems {
        rec.input(name);
        let (g1, g2) = (incidence_graph(&s1), incidence_graph(&s2));
        let (m, n) = (s1.ground_size(), s1.len());
        require(
            m == s2.ground_size() && n == s2.len(),
            "systems must have equal shape",
        )?;
        rec.check_eq(
            &format!("wl1_equivalent[{name}]"),
            wl(&g1, &g2, 1, cfg)?,
            true,
            Source::Derived,
        );
        let x = find_fractional_graph_iso_with(&g1, &g2, &cfg.lp())?;
        rec.check_eq(
            &format!("fractional_iso[{name}]"),
            x.is_some(),
            true,
            Source::Published,
        );
        let Some(x) = x else { continue };
        let (y, z) = fractional_matrix_iso_from_graph_iso(&x, m, n)?;
        let (mm, nn) = (biadjacency_matrix(&g1, m), biadjacency_matrix(&g2, m));
        rec.check_eq(
            &format!("matrix_iso[{name}]"),
            is_fractional_matrix_iso(&mm, &nn, &y, &z),
            true,
            Source::Published,
        );
        let forward = ReductionCertificate { y, z };
        let backward = forward.transposed();
        for opt in [Opt::Max, Opt::Min] {
            let tag = if opt == Opt::Max { "max" } else { "min" };
            let l1 = all_ones_lp(&mm, n, opt)?;
            let l2 = all_ones_lp(&nn, n, opt)?;
            rec.check_eq(
                &format!("reduces_12_{tag}[{name}]"),
                check_reduction(&l1, &l2, &forward)?,
                true,
                Source::Published,
            );
            rec.check_eq(
                &format!("reduces_21_{tag}[{name}]"),
                check_reduction(&l2, &l1, &backward)?,
                true,
                Source::Published,
            );
            rec.check_eq(
                &format!("equal_values_{tag}[{name}]"),
                verify_equal_values(&l1, &l2, &forward, &backward)?,
                true,
                Source::Published,
            );
            let v1 = solve_with(&l1, &cfg.lp())?.value;
            let v2 = solve_with(&l2, &cfg.lp())?.value;
            if let (Some(v1), Some(v2)) = (v1, v2) {
                rec.record(format!("value_{tag}_1[{name}]"), &v1);
                rec.check_eq(&format!("value_{tag}_2[{name}]"), v2, v1, Source::Published);
            }
        }
    }
    Ok(())
}

fn adjacency(g: &Graph) -> DenseMatrix {
    g.adjacency_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(|b| rat(i64::from(b))).collect())
        .collect()
}

fn fractional_iso_cross_validation(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let pairs: Vec<GraphPair> = corpus::wl1_equivalent_pairs()
        .into_iter()
        .chain(corpus::wl1_inequivalent_pairs())
        .collect();
    let mut agree = 0usize;
    for p in &pairs {
        rec.input(p.name.clone());
        let equivalent = wl(&p.g, &p.h, 1, cfg)?;
        let x = find_fractional_graph_iso_with(&p.g, &p.h, &cfg.lp())?;
        let valid = x.as_ref().is_none_or(|x| {
            is_doubly_stochastic(x) && mat_mul(&adjacency(&p.g), x) == mat_mul(x, &adjacency(&p.h))
        });
        if valid && x.is_some() == equivalent {
            agree += 1;
        }
        rec.record(format!("wl1[{}]", p.name), equivalent);
        rec.record(format!("fractional_iso[{}]", p.name), x.is_some());
    }
    rec.check("pairs", pairs.len(), Relation::Ge, 20usize, Source::Derived);
    rec.check_eq("agreements", agree, pairs.len(), Source::Published);
    Ok(())
}

fn permutation_robustness(rec: &mut Recorder, cfg: &HarnessConfig) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let graphs: Vec<(&str, Graph)> = vec![
        ("shrikhande", make_shrikhande()),
        ("rook4", make_rook4()),
        ("petersen", make_petersen()),
        ("c6", make_cycle(6)?),
        ("2c3", scalar_multiple(2, &k3())),
        ("paley(13)", make_paley(13)?),
    ];
    for (name, g) in graphs {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let pg = g.permute(&perm)?;
        rec.input(format!("{name} relabeled"));
        rec.check_eq(
            &format!("wl2_equivalent[{name}]"),
            wl(&g, &pg, 2, cfg)?,
            true,
            Source::Trivial,
        );
        let same_copies =
            enumerate_subgraphs(&k3(), &g)?.len() == enumerate_subgraphs(&k3(), &pg)?.len();
        rec.check_eq(
            &format!("triangle_copies_equal[{name}]"),
            same_copies,
            true,
            Source::Trivial,
        );
        rec.check_eq(
            &format!("rho_f_equal[{name}]"),
            rho_f(&g, cfg)? == rho_f(&pg, cfg)?,
            true,
            Source::Trivial,
        );
        rec.check_eq(
            &format!("rho_equal[{name}]"),
            rho(&g, cfg)? == rho(&pg, cfg)?,
            true,
            Source::Trivial,
        );
        let nu_f = |x: &Graph| frac_matching_with(&vertex_packing_system(&k2(), x)?, &cfg.lp());
        rec.check_eq(
            &format!("nu_f_equal[{name}]"),
            nu_f(&g)? == nu_f(&pg)?,
            true,
            Source::Trivial,
        );
    }
    Ok(())
}
