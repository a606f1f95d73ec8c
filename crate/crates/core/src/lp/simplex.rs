//! Two-phase dense-tableau simplex with Bland's rule.

use super::{Opt, Rational, RationalLP};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpConfig {
    /// Cap on tableau columns (structural + slack + artificial).
    pub max_columns: usize,
}

impl Default for LpConfig {
    fn default() -> Self {
        LpConfig {
            max_columns: 20_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal value in the program's own sense (`None` unless optimal).
    pub value: Option<Rational>,
    pub primal: Vec<Rational>,
    /// Dual multipliers `y ≥ 0` of the rows, for the program written as a
    /// maximization (a `min` program is certified as `max -aᵀx`):
    /// `Mᵀy ≥ ±a` and `bᵀy = ±value`.
    pub dual: Vec<Rational>,
}

impl LpSolution {
    /// Exact optimality certificate: primal feasibility, dual feasibility
    /// and equal objective values.
    pub fn certify(&self, lp: &RationalLP) -> bool {
        let Some(value) = &self.value else {
            return false;
        };
        if !lp.is_feasible(&self.primal) || lp.evaluate(&self.primal) != *value {
            return false;
        }
        if self.dual.len() != lp.num_rows() || self.dual.iter().any(Signed::is_negative) {
            return false;
        }
        let sign = |v: &Rational| match lp.opt() {
            Opt::Max => v.clone(),
            Opt::Min => -v.clone(),
        };
        let mut reduced: Vec<Rational> = vec![Rational::zero(); lp.num_vars()];
        for (row, y) in lp.rows().iter().zip(&self.dual) {
            for (j, v) in row {
                reduced[*j] += v * y;
            }
        }
        let dual_ok = reduced
            .iter()
            .zip(lp.objective())
            .all(|(r, a)| *r >= sign(a));
        let bty: Rational = lp.rhs().iter().zip(&self.dual).map(|(b, y)| b * y).sum();
        dual_ok && bty == sign(value)
    }
}

pub fn solve(lp: &RationalLP) -> Result<LpSolution> {
    solve_with(lp, &LpConfig::default())
}

enum RowKind {
    /// Standard-form row built from a single `≤` row with a slack column.
    Inequality { original: usize, slack: usize },
    /// Merged pair of opposite `≤` rows.
    Equality { plus: usize, minus: usize },
}

struct StdRow {
    kind: RowKind,
    sign: Rational,
    artificial: Option<usize>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
    can_enter: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let nz: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nz {
            self.rows[r][j] /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row: Vec<(usize, Rational)> =
            nz.iter().map(|&j| (j, self.rows[r][j].clone())).collect();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (j, v) in &pivot_row {
                self.rows[i][*j] -= &f * v;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (j, v) in &pivot_row {
                self.reduced[*j] -= &f * v;
            }
            self.value += &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes with the largest-coefficient rule. Ties in the ratio test
    /// are broken lexicographically against the starting basis, which rules
    /// out cycling. Returns `false` when unbounded.
    fn optimize(&mut self) -> bool {
        let start = self.basis.clone();
        loop {
            let entering = (0..self.reduced.len())
                .filter(|&j| self.can_enter[j] && self.reduced[j].is_positive())
                .fold(None, |best: Option<usize>, j| match best {
                    Some(b) if self.reduced[b] >= self.reduced[j] => Some(b),
                    _ => Some(j),
                });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match ratio.cmp(br) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => self.lex_less(i, *bi, c, &start),
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Compares rows `i` and `k`, scaled by their entries in column `c`, on
    /// the columns of the starting basis.
    fn lex_less(&self, i: usize, k: usize, c: usize, start: &[usize]) -> bool {
        let (ai, ak) = (&self.rows[i][c], &self.rows[k][c]);
        for &j in start {
            let (x, y) = (&self.rows[i][j], &self.rows[k][j]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            match (x / ai).cmp(&(y / ak)) {
                Ordering::Less => return true,
                Ordering::Greater => return false,
                Ordering::Equal => {}
            }
        }
        false
    }

    /// Installs objective costs (for maximization) and prices out the basis.
    fn set_objective(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        self.value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    self.reduced[j] -= cb * v;
                }
            }
            self.value += cb * &self.rhs[i];
        }
    }
}

type RowKey<'a> = (&'a [(usize, Rational)], &'a Rational);

/// Pairs row `i` with a later row `j` when `row_j = -row_i` and
/// `b_j = -b_i`.
fn equality_pairs(lp: &RationalLP) -> Vec<Option<usize>> {
    let mut partner = vec![None; lp.num_rows()];
    let mut index: HashMap<RowKey<'_>, Vec<usize>> = HashMap::new();
    for (i, (row, b)) in lp.rows().iter().zip(lp.rhs()).enumerate() {
        index.entry((row.as_slice(), b)).or_default().push(i);
    }
    let mut taken = vec![false; lp.num_rows()];
    for (i, (row, b)) in lp.rows().iter().zip(lp.rhs()).enumerate() {
        if taken[i] || row.is_empty() {
            continue;
        }
        let neg_row: Vec<(usize, Rational)> = row.iter().map(|(j, v)| (*j, -v.clone())).collect();
        let neg_b = -b.clone();
        if let Some(cands) = index.get(&(neg_row.as_slice(), &neg_b)) {
            if let Some(&j) = cands.iter().find(|&&j| j > i && !taken[j]) {
                taken[i] = true;
                taken[j] = true;
                partner[i] = Some(j);
            }
        }
    }
    partner
}

pub fn solve_with(lp: &RationalLP, config: &LpConfig) -> Result<LpSolution> {
    let n = lp.num_vars();
    let partner = equality_pairs(lp);
    let mut is_minus = vec![false; lp.num_rows()];
    for j in partner.iter().flatten() {
        is_minus[*j] = true;
    }

    // Column layout: structural | slacks | artificials.
    let mut std_rows: Vec<StdRow> = Vec::new();
    let mut next_col = n;
    for i in 0..lp.num_rows() {
        if is_minus[i] {
            continue;
        }
        let sign = if lp.rhs()[i].is_negative() {
            super::rat(-1)
        } else {
            super::rat(1)
        };
        let kind = match partner[i] {
            Some(j) => RowKind::Equality { plus: i, minus: j },
            None => {
                next_col += 1;
                RowKind::Inequality {
                    original: i,
                    slack: next_col - 1,
                }
            }
        };
        std_rows.push(StdRow {
            kind,
            sign,
            artificial: None,
        });
    }
    for row in std_rows.iter_mut() {
        let needs_art = match row.kind {
            RowKind::Equality { .. } => true,
            RowKind::Inequality { .. } => row.sign.is_negative(),
        };
        if needs_art {
            row.artificial = Some(next_col);
            next_col += 1;
        }
    }
    let total = next_col;
    if total > config.max_columns {
        return Err(Error::ResourceLimit {
            what: "LP tableau columns".into(),
            requested: total as u128,
            cap: config.max_columns as u128,
        });
    }

    let m = std_rows.len();
    let mut t = Tableau {
        rows: vec![vec![Rational::zero(); total]; m],
        rhs: vec![Rational::zero(); m],
        basis: vec![0; m],
        reduced: vec![Rational::zero(); total],
        value: Rational::zero(),
        can_enter: vec![true; total],
    };
    let mut first_art = total;
    for (r, sr) in std_rows.iter().enumerate() {
        let orig = match sr.kind {
            RowKind::Inequality { original, .. } => original,
            RowKind::Equality { plus, .. } => plus,
        };
        for (j, v) in &lp.rows()[orig] {
            t.rows[r][*j] = &sr.sign * v;
        }
        t.rhs[r] = &sr.sign * &lp.rhs()[orig];
        if let RowKind::Inequality { slack, .. } = sr.kind {
            t.rows[r][slack] = sr.sign.clone();
            t.basis[r] = slack;
        }
        if let Some(a) = sr.artificial {
            t.rows[r][a] = super::rat(1);
            t.basis[r] = a;
            first_art = first_art.min(a);
        }
    }

    let infeasible = |n: usize, m0: usize| LpSolution {
        status: LpStatus::Infeasible,
        value: None,
        primal: vec![Rational::zero(); n],
        dual: vec![Rational::zero(); m0],
    };

    // Phase 1: maximize -(sum of artificials).
    if first_art < total {
        let mut costs = vec![Rational::zero(); total];
        for c in costs[first_art..].iter_mut() {
            *c = super::rat(-1);
        }
        // Artificials sitting in zero rows can leave on any nonzero entry
        // without disturbing feasibility, which skips long degenerate runs.
        for r in 0..m {
            if t.basis[r] >= first_art && t.rhs[r].is_zero() {
                let col = (0..first_art)
                    .filter(|&j| !t.rows[r][j].is_zero())
                    .min_by_key(|&j| t.rows.iter().filter(|row| !row[j].is_zero()).count());
                if let Some(c) = col {
                    t.pivot(r, c);
                }
            }
        }
        t.set_objective(&costs);
        t.optimize();
        if t.value.is_negative() {
            return Ok(infeasible(n, lp.num_rows()));
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // where that fails are redundant and stay inert.
        for r in 0..m {
            if t.basis[r] >= first_art {
                if let Some(c) = (0..first_art).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, c);
                }
            }
        }
        for c in t.can_enter[first_art..].iter_mut() {
            *c = false;
        }
    }

    // Phase 2.
    let mut costs = vec![Rational::zero(); total];
    for (j, a) in lp.objective().iter().enumerate() {
        costs[j] = match lp.opt() {
            Opt::Max => a.clone(),
            Opt::Min => -a.clone(),
        };
    }
    t.set_objective(&costs);
    if !t.optimize() {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            primal: vec![Rational::zero(); n],
            dual: vec![Rational::zero(); lp.num_rows()],
        });
    }

    let mut primal = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[r].clone();
        }
    }
    let mut dual = vec![Rational::zero(); lp.num_rows()];
    for sr in &std_rows {
        match sr.kind {
            RowKind::Inequality { original, slack } => {
                dual[original] = -t.reduced[slack].clone();
            }
            RowKind::Equality { plus, minus } => {
                let a = sr.artificial.expect("equality rows carry an artificial");
                let y = &sr.sign * -t.reduced[a].clone();
                if y.is_negative() {
                    dual[minus] = -y;
                } else {
                    dual[plus] = y;
                }
            }
        }
    }
    let value = match lp.opt() {
        Opt::Max => t.value.clone(),
        Opt::Min => -t.value.clone(),
    };
    let sol = LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        primal,
        dual,
    };
    debug_assert!(sol.certify(lp), "simplex produced an uncertified optimum");
    Ok(sol)
}
