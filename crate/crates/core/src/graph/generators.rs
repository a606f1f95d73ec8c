use super::Graph;
use crate::error::{invalid, Result};

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{s,t}` with parts `0..s` and `s..s+t`.
pub fn make_complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    if s == 0 || t == 0 {
        return Err(invalid("complete bipartite graph needs nonempty parts"));
    }
    Graph::new(s + t, (0..s).flat_map(|u| (s..s + t).map(move |v| (u, v))))
}

/// Star `K_{1,t}` with center 0.
pub fn make_star(t: usize) -> Result<Graph> {
    make_complete_bipartite(1, t)
}

/// Cayley graph of `Z_n` with the given connection set. The set must avoid
/// 0 and be closed under negation modulo `n`.
pub fn make_circulant(n: usize, connection: &[i64]) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("circulant needs n >= 1"));
    }
    let ni = n as i64;
    let mut set: Vec<usize> = connection
        .iter()
        .map(|&c| c.rem_euclid(ni) as usize)
        .collect();
    set.sort_unstable();
    set.dedup();
    if set.contains(&0) {
        return Err(invalid("connection set contains 0"));
    }
    if set
        .iter()
        .any(|&c| set.binary_search(&((n - c) % n)).is_err())
    {
        return Err(invalid("connection set is not closed under negation"));
    }
    let edges = (0..n).flat_map(|x| {
        set.iter()
            .map(move |&c| (x, (x + c) % n))
            .filter(|&(x, y)| x < y)
    });
    Graph::new(n, edges.collect::<Vec<_>>())
}

/// The circulant `Cay(Z_n, {±1, ..., ±s})`.
pub fn make_band_circulant(n: usize, s: usize) -> Result<Graph> {
    if 2 * s >= n {
        return Err(invalid(format!("band width {s} too large for n={n}")));
    }
    let conn: Vec<i64> = (1..=s as i64).flat_map(|i| [i, -i]).collect();
    make_circulant(n, &conn)
}

pub fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley graph on `Z_q` for a prime `q ≡ 1 (mod 4)`. Prime powers are not
/// supported since they need arithmetic in `GF(q)`.
pub fn make_paley(q: usize) -> Result<Graph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(invalid(format!(
            "paley graphs are supported for primes q = 1 (mod 4), got {q}"
        )));
    }
    let mut residues: Vec<i64> = (1..q).map(|x| ((x * x) % q) as i64).collect();
    residues.sort_unstable();
    residues.dedup();
    make_circulant(q, &residues)
}

#[inline]
fn grid(i: usize, j: usize) -> usize {
    4 * (i % 4) + (j % 4)
}

/// Shrikhande graph on `Z_4 × Z_4`; vertex `(i, j)` is `4i + j`.
pub fn make_shrikhande() -> Graph {
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let v = grid(i, j);
            edges.push((v, grid(i, j + 1)));
            edges.push((v, grid(i + 1, j)));
            edges.push((v, grid(i + 1, j + 1)));
        }
    }
    Graph::from_edges_dedup(16, edges).expect("shrikhande construction")
}

/// The 4×4 rook's graph on `Z_4 × Z_4`; rows and columns are 4-cliques.
pub fn make_rook4() -> Graph {
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if k != j {
                    edges.push((grid(i, j), grid(i, k)));
                    edges.push((grid(j, i), grid(k, i)));
                }
            }
        }
    }
    Graph::from_edges_dedup(16, edges).expect("rook construction")
}

/// Two disjoint `s`-cliques (`0..s` and `s..2s`) joined by the perfect
/// matching `i ~ s + i`.
pub fn make_matched_cliques(s: usize) -> Result<Graph> {
    if s < 2 {
        return Err(invalid(format!("matched cliques need s >= 2, got {s}")));
    }
    let mut edges = Vec::new();
    for u in 0..s {
        for v in u + 1..s {
            edges.push((u, v));
            edges.push((s + u, s + v));
        }
        edges.push((u, s + u));
    }
    Graph::new(2 * s, edges)
}

/// The Fano plane's lines on points `0..7`.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// The Petersen graph.
pub fn make_petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("petersen construction")
}

/// The 3-cube `Q_3`.
pub fn make_cube() -> Graph {
    let edges = (0..8usize).flat_map(|u| {
        (0..3)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    Graph::new(8, edges.collect::<Vec<_>>()).expect("cube construction")
}
