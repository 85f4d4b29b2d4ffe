//! Independent oracles used by verification suites and tests.
//!
//! These deliberately avoid the production code paths they check: the
//! passive-energy oracle enumerates all population-to-level assignments
//! instead of sorting, so agreement between the two is evidence, not
//! tautology.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix};

/// Exhaustive-permutation passive energy: min over all assignments of the
/// populations of ρ to the levels of H. Exponential in the dimension, so
/// capped at dim 9.
pub fn brute_force_passive_energy(rho: &ComplexMatrix, h: &ComplexMatrix) -> Result<f64> {
    if rho.rows() != h.rows() || rho.cols() != h.cols() {
        return Err(Error::dim_mismatch(
            "brute_force_passive_energy",
            format!("{}x{}", rho.rows(), rho.cols()),
            format!("{}x{}", h.rows(), h.cols()),
        ));
    }
    let dim = rho.rows();
    if dim > 9 {
        return Err(Error::InvalidParameter {
            reason: format!("exhaustive search capped at dimension 9, got {dim}"),
        });
    }
    let populations = eig_hermitian(rho)?.eigenvalues;
    let energies = eig_hermitian(h)?.eigenvalues;

    let mut best = f64::INFINITY;
    for assignment in (0..dim).permutations(dim) {
        let value: f64 = assignment
            .iter()
            .enumerate()
            .map(|(level, &p)| populations[p] * energies[level])
            .sum();
        best = best.min(value);
    }
    Ok(best)
}

/// Majorization check on probability vectors: every partial sum of the
/// descending-ordered `sub` must stay within `tol` below the corresponding
/// partial sum of `sup`, with equal totals.
pub fn majorizes(sup: &[f64], sub: &[f64], tol: f64) -> bool {
    if sup.len() != sub.len() {
        return false;
    }
    let mut top: Vec<f64> = sup.to_vec();
    let mut bottom: Vec<f64> = sub.to_vec();
    top.sort_by(|a, b| b.total_cmp(a));
    bottom.sort_by(|a, b| b.total_cmp(a));

    let mut sum_top = 0.0;
    let mut sum_bottom = 0.0;
    for (t, b) in top.iter().zip(&bottom) {
        sum_top += t;
        sum_bottom += b;
        if sum_bottom > sum_top + tol {
            return false;
        }
    }
    (sum_top - sum_bottom).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn brute_force_matches_hand_computation() {
        let rho = ComplexMatrix::diag_real(&[0.7, 0.3]);
        let h = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert_abs_diff_eq!(
            brute_force_passive_energy(&rho, &h).unwrap(),
            0.3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn brute_force_caps_dimension() {
        let rho = ComplexMatrix::identity(10).scale(0.1);
        let h = ComplexMatrix::identity(10);
        assert!(brute_force_passive_energy(&rho, &h).is_err());
    }

    #[test]
    fn majorization_basics() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5], 1e-12));
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0], 1e-12));
        assert!(majorizes(&[0.5, 0.3, 0.2], &[0.5, 0.3, 0.2], 1e-12));
        // total mismatch
        assert!(!majorizes(&[0.6, 0.5], &[0.5, 0.5], 1e-12));
    }
}
