use super::reduction::{is_doubly_stochastic, mat_mul, transpose, DenseMatrix};
use super::{solve_with, LpConfig, LpStatus, Opt, Rational, RationalLP};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use num_traits::{One, Zero};

/// Searches for a doubly stochastic `X` with `AX = XB` that vanishes
/// between differently colored vertices, by exact LP feasibility.
/// Returns `None` when no such matrix exists.
pub fn find_fractional_graph_iso(g: &Graph, h: &Graph) -> Result<Option<DenseMatrix>> {
    find_fractional_graph_iso_with(g, h, &LpConfig::default())
}

pub fn find_fractional_graph_iso_with(
    g: &Graph,
    h: &Graph,
    config: &LpConfig,
) -> Result<Option<DenseMatrix>> {
    let n = g.n();
    if h.n() != n {
        return Ok(None);
    }
    let mut cg: Vec<u32> = (0..n).map(|v| g.color(v)).collect();
    let mut ch: Vec<u32> = (0..n).map(|v| h.color(v)).collect();
    cg.sort_unstable();
    ch.sort_unstable();
    if cg != ch {
        return Ok(None);
    }

    // One variable per color-compatible pair (u in G, v in H).
    let mut var = vec![vec![usize::MAX; n]; n];
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if g.color(u) == h.color(v) {
                var[u][v] = pairs.len();
                pairs.push((u, v));
            }
        }
    }
    let one = Rational::one();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut rhs = Vec::new();
    let mut equality = |row: Vec<(usize, Rational)>, b: Rational| {
        let neg: Vec<_> = row.iter().map(|(j, v)| (*j, -v.clone())).collect();
        rows.push(row);
        rhs.push(b.clone());
        rows.push(neg);
        rhs.push(-b);
    };
    // (AX)_{uw} - (XB)_{uw} = sum_{v ~_G u} X_{vw} - sum_{v ~_H w} X_{uv}
    for u in 0..n {
        for w in 0..n {
            let mut row: Vec<(usize, Rational)> = Vec::new();
            for &v in g.neighbors(u) {
                if var[v][w] != usize::MAX {
                    row.push((var[v][w], one.clone()));
                }
            }
            for &v in h.neighbors(w) {
                if var[u][v] != usize::MAX {
                    row.push((var[u][v], -one.clone()));
                }
            }
            let row = merge(row);
            if !row.is_empty() {
                equality(row, Rational::zero());
            }
        }
    }
    for u in 0..n {
        let row: Vec<_> = (0..n)
            .filter(|&v| var[u][v] != usize::MAX)
            .map(|v| (var[u][v], one.clone()))
            .collect();
        equality(row, one.clone());
    }
    for v in 0..n {
        let row: Vec<_> = (0..n)
            .filter(|&u| var[u][v] != usize::MAX)
            .map(|u| (var[u][v], one.clone()))
            .collect();
        equality(row, one.clone());
    }
    let lp = RationalLP::new(vec![Rational::zero(); pairs.len()], rows, rhs, Opt::Max)?;
    let sol = solve_with(&lp, config)?;
    if sol.status != LpStatus::Optimal {
        return Ok(None);
    }
    let mut x = vec![vec![Rational::zero(); n]; n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        x[u][v] = sol.primal[k].clone();
    }
    debug_assert!(is_doubly_stochastic(&x));
    Ok(Some(x))
}

fn merge(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    row.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Splits a fractional isomorphism of two incidence graphs (ground
/// vertices `0..m`, set vertices `m..m+n`) into the ground block `Y` and
/// the set block `Z`.
pub fn fractional_matrix_iso_from_graph_iso(
    x: &DenseMatrix,
    m: usize,
    n: usize,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let size = m + n;
    if x.len() != size || x.iter().any(|r| r.len() != size) {
        return Err(invalid(format!("expected a {size}x{size} matrix")));
    }
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if (i < m) != (j < m) && !v.is_zero() {
                return Err(invalid(format!("entry ({i},{j}) crosses the color blocks")));
            }
        }
    }
    let y: DenseMatrix = x[..m].iter().map(|r| r[..m].to_vec()).collect();
    let z: DenseMatrix = x[m..].iter().map(|r| r[m..].to_vec()).collect();
    if !is_doubly_stochastic(&y) || !is_doubly_stochastic(&z) {
        return Err(invalid("diagonal blocks are not doubly stochastic"));
    }
    Ok((y, z))
}

/// `MZ = YN` and `NZᵀ = YᵀM`.
pub fn is_fractional_matrix_iso(
    m: &DenseMatrix,
    n: &DenseMatrix,
    y: &DenseMatrix,
    z: &DenseMatrix,
) -> bool {
    mat_mul(m, z) == mat_mul(y, n) && mat_mul(n, &transpose(z)) == mat_mul(&transpose(y), m)
}

/// `LP(1_n, M, 1_m, opt)` for an `m×n` matrix.
pub fn all_ones_lp(matrix: &DenseMatrix, columns: usize, opt: Opt) -> Result<RationalLP> {
    RationalLP::from_dense(
        vec![Rational::one(); columns],
        matrix,
        vec![Rational::one(); matrix.len()],
        opt,
    )
}

/// The `m×n` biadjacency block of an incidence graph whose first `m`
/// vertices are the ground side.
pub fn biadjacency_matrix(g: &Graph, m: usize) -> DenseMatrix {
    let n = g.n() - m;
    let mut a = vec![vec![Rational::zero(); n]; m];
    for (u, v) in g.edges() {
        if u < m && v >= m {
            a[u][v - m] = Rational::one();
        }
    }
    a
}
