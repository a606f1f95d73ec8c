//! Exact linear programming over arbitrary-precision rationals.
//!
//! Every program has the canonical shape `opt aᵀx  s.t.  Mx ≤ b, x ≥ 0`.
//! Equality constraints are written as two opposite `≤` rows; the solver
//! recognizes such pairs and treats them as one equality row.

mod fractional_iso;
mod reduction;
mod simplex;
mod text;

pub use fractional_iso::{
    all_ones_lp, biadjacency_matrix, find_fractional_graph_iso, find_fractional_graph_iso_with,
    fractional_matrix_iso_from_graph_iso, is_fractional_matrix_iso,
};
pub use reduction::{
    check_reduction, identity, is_doubly_stochastic, mat_mul, transpose, verify_equal_values,
    DenseMatrix, ReductionCertificate,
};
pub use simplex::{solve, solve_with, LpConfig, LpSolution, LpStatus};
pub use text::{format_lp, parse_lp};

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Opt {
    Min,
    Max,
}

/// `opt aᵀx s.t. Mx ≤ b, x ≥ 0` with sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLP {
    objective: Vec<Rational>,
    rows: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
    opt: Opt,
}

impl RationalLP {
    /// Row entries are `(column, coefficient)`; repeated columns are summed
    /// and zero coefficients dropped.
    pub fn new(
        objective: Vec<Rational>,
        rows: Vec<Vec<(usize, Rational)>>,
        rhs: Vec<Rational>,
        opt: Opt,
    ) -> Result<Self> {
        let n = objective.len();
        if rows.len() != rhs.len() {
            return Err(invalid(format!(
                "{} constraint rows but {} right-hand sides",
                rows.len(),
                rhs.len()
            )));
        }
        let mut clean = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let mut row = row;
            if let Some(&(j, _)) = row.iter().find(|(j, _)| *j >= n) {
                return Err(invalid(format!("row {i} references column {j} of {n}")));
            }
            row.sort_by_key(|(j, _)| *j);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (j, v) in row {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            clean.push(merged);
        }
        Ok(RationalLP {
            objective,
            rows: clean,
            rhs,
            opt,
        })
    }

    pub fn from_dense(
        objective: Vec<Rational>,
        matrix: &[Vec<Rational>],
        rhs: Vec<Rational>,
        opt: Opt,
    ) -> Result<Self> {
        let n = objective.len();
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(invalid(format!(
                "matrix row has {} entries, expected {n}",
                r.len()
            )));
        }
        let rows = matrix
            .iter()
            .map(|r| r.iter().cloned().enumerate().collect())
            .collect();
        RationalLP::new(objective, rows, rhs, opt)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn rows(&self) -> &[Vec<(usize, Rational)>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn opt(&self) -> Opt {
        self.opt
    }

    pub fn dense_matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.num_vars()]; self.num_rows()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[i][*j] = v.clone();
            }
        }
        m
    }

    /// `Mx ≤ b` and `x ≥ 0`, checked exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().map(|(j, v)| v * &x[*j]).sum();
                lhs <= *b
            })
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// The LP dual, again in canonical form:
    /// `max(a, M, b) ↦ min(b, -Mᵀ, -a)` and `min(a, M, b) ↦ max(-b, -Mᵀ, a)`.
    /// Applying it twice returns the original program.
    pub fn dual(&self) -> RationalLP {
        let (m, n) = (self.num_rows(), self.num_vars());
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, -v.clone()));
            }
        }
        let (objective, rhs, opt) = match self.opt {
            Opt::Max => (
                self.rhs.clone(),
                self.objective.iter().map(|a| -a.clone()).collect(),
                Opt::Min,
            ),
            Opt::Min => (
                self.rhs.iter().map(|b| -b.clone()).collect(),
                self.objective.clone(),
                Opt::Max,
            ),
        };
        debug_assert_eq!(objective.len(), m);
        RationalLP {
            objective,
            rows: cols,
            rhs,
            opt,
        }
    }
}

/// Shorthand used in tests and builders: one `≤ 1` row per listed set of
/// columns with unit coefficients.
#[cfg(test)]
pub(crate) fn unit_rows(sets: &[Vec<usize>]) -> Vec<Vec<(usize, Rational)>> {
    sets.iter()
        .map(|s| s.iter().map(|&j| (j, rat(1))).collect())
        .collect()
}
