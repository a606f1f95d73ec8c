//! Reductions between programs of the same shape.
//!
//! `L1 = (a, M, b)` reduces to `L2 = (c, N, d)` via nonnegative `Y`
//! (`m×m`) and `Z` (`n×n`) when `aᵀZ ◇ cᵀ`, `MZ ≤ YN` and `Yd ≤ b`, where
//! `◇` is `≤` for minimization and `≥` for maximization. Any feasible `x`
//! of `L2` then maps to the feasible `Zx` of `L1` with an objective at
//! least as good, so mutual reductions force equal values.

use super::{solve, LpStatus, Opt, Rational, RationalLP};
use crate::error::{invalid, Result};
use num_traits::{One, Signed, Zero};

pub type DenseMatrix = Vec<Vec<Rational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub y: DenseMatrix,
    pub z: DenseMatrix,
}

impl ReductionCertificate {
    pub fn identity(m: usize, n: usize) -> Self {
        ReductionCertificate {
            y: identity(m),
            z: identity(n),
        }
    }

    pub fn transposed(&self) -> Self {
        ReductionCertificate {
            y: transpose(&self.y),
            z: transpose(&self.z),
        }
    }
}

pub fn identity(n: usize) -> DenseMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &DenseMatrix) -> DenseMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (k, av) in row.iter().enumerate().take(inner) {
                if av.is_zero() {
                    continue;
                }
                for (o, bv) in out.iter_mut().zip(&b[k]) {
                    if !bv.is_zero() {
                        *o += av * bv;
                    }
                }
            }
            out
        })
        .collect()
}

fn is_square(a: &DenseMatrix, n: usize) -> bool {
    a.len() == n && a.iter().all(|r| r.len() == n)
}

/// Nonnegative with all row and column sums equal to one.
pub fn is_doubly_stochastic(a: &DenseMatrix) -> bool {
    let n = a.len();
    is_square(a, n)
        && a.iter().flatten().all(|v| !v.is_negative())
        && a.iter().all(|r| r.iter().sum::<Rational>().is_one())
        && (0..n).all(|j| a.iter().map(|r| &r[j]).sum::<Rational>().is_one())
}

/// Checks that `l1` reduces to `l2` via `cert`, exactly.
pub fn check_reduction(
    l1: &RationalLP,
    l2: &RationalLP,
    cert: &ReductionCertificate,
) -> Result<bool> {
    let (m, n) = (l1.num_rows(), l1.num_vars());
    if l2.num_rows() != m || l2.num_vars() != n || l1.opt() != l2.opt() {
        return Err(invalid(
            "reduction needs programs of the same shape and sense",
        ));
    }
    if !is_square(&cert.y, m) || !is_square(&cert.z, n) {
        return Err(invalid(format!("certificate must be {m}x{m} and {n}x{n}")));
    }
    let (y, z) = (&cert.y, &cert.z);
    if y.iter().chain(z).flatten().any(Signed::is_negative) {
        return Ok(false);
    }
    // aᵀZ ◇ cᵀ
    for j in 0..n {
        let lhs: Rational = (0..n).map(|i| &l1.objective()[i] * &z[i][j]).sum();
        let c = &l2.objective()[j];
        let ok = match l1.opt() {
            Opt::Min => lhs <= *c,
            Opt::Max => lhs >= *c,
        };
        if !ok {
            return Ok(false);
        }
    }
    // MZ ≤ YN
    let mz = mat_mul(&l1.dense_matrix(), z);
    let yn = mat_mul(y, &l2.dense_matrix());
    if mz
        .iter()
        .flatten()
        .zip(yn.iter().flatten())
        .any(|(a, b)| a > b)
    {
        return Ok(false);
    }
    // Yd ≤ b
    for i in 0..m {
        let yd: Rational = (0..m).map(|k| &y[i][k] * &l2.rhs()[k]).sum();
        if yd > l1.rhs()[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both reductions check and the solved values coincide.
pub fn verify_equal_values(
    l1: &RationalLP,
    l2: &RationalLP,
    cert12: &ReductionCertificate,
    cert21: &ReductionCertificate,
) -> Result<bool> {
    if !check_reduction(l1, l2, cert12)? || !check_reduction(l2, l1, cert21)? {
        return Ok(false);
    }
    let (s1, s2) = (solve(l1)?, solve(l2)?);
    Ok(s1.status == s2.status && (s1.status != LpStatus::Optimal || s1.value == s2.value))
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn sample() -> RationalLP {
        RationalLP::from_dense(
            vec![rat(1), rat(1)],
            &[vec![rat(1), rat(2)], vec![rat(2), rat(1)]],
            vec![rat(1), rat(1)],
            Opt::Max,
        )
        .unwrap()
    }

    #[test]
    fn identity_reduces_to_itself() {
        let lp = sample();
        let id = ReductionCertificate::identity(2, 2);
        assert!(check_reduction(&lp, &lp, &id).unwrap());
        assert!(verify_equal_values(&lp, &lp, &id, &id).unwrap());
    }

    #[test]
    fn negative_entry_rejected() {
        let lp = sample();
        let mut cert = ReductionCertificate::identity(2, 2);
        cert.z[0][1] = rat(-1);
        assert!(!check_reduction(&lp, &lp, &cert).unwrap());
    }

    #[test]
    fn swap_certificate() {
        // Swapping both variables and rows maps the program onto itself.
        let lp = sample();
        let swap = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        let cert = ReductionCertificate {
            y: swap.clone(),
            z: swap,
        };
        assert!(check_reduction(&lp, &lp, &cert).unwrap());
        assert_eq!(solve(&lp).unwrap().value, Some(ratio(2, 3)));
    }

    #[test]
    fn bogus_certificates_fail_first() {
        let lp1 = sample();
        let lp2 = RationalLP::from_dense(
            vec![rat(1), rat(1)],
            &[vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
            vec![rat(1), rat(1)],
            Opt::Max,
        )
        .unwrap();
        let id = ReductionCertificate::identity(2, 2);
        assert!(!verify_equal_values(&lp1, &lp2, &id, &id).unwrap());
        let min = RationalLP::new(vec![rat(1)], vec![], vec![], Opt::Min).unwrap();
        assert!(check_reduction(&lp1, &min, &id).is_err());
    }

    #[test]
    fn doubly_stochastic() {
        let half = vec![vec![ratio(1, 2); 2]; 2];
        assert!(is_doubly_stochastic(&half));
        assert!(is_doubly_stochastic(&identity(3)));
        assert!(!is_doubly_stochastic(&vec![
            vec![rat(1), rat(1)],
            vec![rat(0), rat(0)]
        ]));
    }
}
