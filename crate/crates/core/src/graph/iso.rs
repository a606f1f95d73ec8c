//! Brute-force isomorphism by backtracking. Only meant for small graphs:
//! pattern automorphism groups and test oracles.

use super::Graph;

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl Search<'_> {
    fn new<'a>(g: &'a Graph, h: &'a Graph) -> Search<'a> {
        // BFS order, so most vertices have an already-mapped neighbor.
        let n = g.n();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut roots: Vec<usize> = (0..n).collect();
        roots.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for r in roots {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut head = order.len();
            order.push(r);
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        Search {
            g,
            h,
            order,
            map: vec![UNMAPPED; n],
            used: vec![false; n],
        }
    }

    fn consistent(&self, v: usize, x: usize) -> bool {
        let (g, h) = (self.g, self.h);
        if g.degree(v) != h.degree(x) || g.color(v) != h.color(x) {
            return false;
        }
        self.order
            .iter()
            .take_while(|&&u| self.map[u] != UNMAPPED)
            .all(|&u| g.has_edge(u, v) == h.has_edge(self.map[u], x))
    }

    fn candidates(&self, v: usize) -> Vec<usize> {
        let anchor = self
            .g
            .neighbors(v)
            .iter()
            .find(|&&w| self.map[w] != UNMAPPED);
        match anchor {
            Some(&w) => self
                .h
                .neighbors(self.map[w])
                .iter()
                .copied()
                .filter(|&x| !self.used[x])
                .collect(),
            None => (0..self.h.n()).filter(|&x| !self.used[x]).collect(),
        }
    }

    /// Visits every isomorphism; the callback returns `false` to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let v = self.order[depth];
        for x in self.candidates(v) {
            if self.consistent(v, x) {
                self.map[v] = x;
                self.used[x] = true;
                let go_on = self.run(depth + 1, visit);
                self.map[v] = UNMAPPED;
                self.used[x] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

fn compatible(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut a: Vec<(u32, usize)> = (0..g.n()).map(|v| (g.color(v), g.degree(v))).collect();
    let mut b: Vec<(u32, usize)> = (0..h.n()).map(|v| (h.color(v), h.degree(v))).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// An isomorphism `g -> h` respecting vertex colors, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if !compatible(g, h) {
        return None;
    }
    let mut found = None;
    Search::new(g, h).run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// All automorphisms of `g`, each as the image vector of `0..n`.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    Search::new(g, g).run(0, &mut |m| {
        all.push(m.to_vec());
        true
    });
    all.sort();
    all
}
