//! Fixed Hermitian orthonormal operator bases and the coordinate expansion of
//! bipartite states over them.

use num_complex::Complex64 as C64;

use super::BipartiteState;
use crate::linalg::{hs_inner, kron, ComplexMatrix};

/// Hermitian orthonormal basis of n x n operators under ⟨X|Y⟩ = Tr(X Y†).
///
/// Fixed order: the normalized identity I/√n first, then generalized
/// Gell-Mann matrices by family — symmetric (E_jk + E_kj)/√2 for j < k in
/// lexicographic order, antisymmetric (-i E_jk + i E_kj)/√2 likewise, and
/// finally the diagonal family (Σ_{t<l} E_tt − l E_ll)/√(l(l+1)) for
/// l = 1..n-1. For n = 2 this is exactly {I, σx, σy, σz}/√2.
pub fn gell_mann_basis(n: usize) -> Vec<ComplexMatrix> {
    assert!(n >= 1);
    let mut basis = Vec::with_capacity(n * n);
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    basis.push(ComplexMatrix::identity(n).scale(inv_sqrt_n));

    let w = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = ComplexMatrix::zeros(n, n);
            m[(j, k)] = C64::new(w, 0.0);
            m[(k, j)] = C64::new(w, 0.0);
            basis.push(m);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let mut m = ComplexMatrix::zeros(n, n);
            m[(j, k)] = C64::new(0.0, -w);
            m[(k, j)] = C64::new(0.0, w);
            basis.push(m);
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(n, n);
        for t in 0..l {
            m[(t, t)] = C64::new(norm, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        basis.push(m);
    }
    debug_assert_eq!(basis.len(), n * n);
    basis
}

/// Real coordinates of a bipartite state over the fixed product basis
/// {X_i ⊗ Y_j}: ρ = (1/√(nm)) X_0 ⊗ Y_0 + Σ x_i X_i ⊗ Y_0 + Σ y_j X_0 ⊗ Y_j
/// + Σ t_ij X_i ⊗ Y_j, with i, j running over the traceless basis elements.
#[derive(Clone, Debug)]
pub struct HsExpansion {
    dim_a: usize,
    dim_b: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    t: Vec<f64>,
    basis_a: Vec<ComplexMatrix>,
    basis_b: Vec<ComplexMatrix>,
}

impl HsExpansion {
    /// Coordinates along X_i ⊗ Y_0, i = 1..n²-1.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Coordinates along X_0 ⊗ Y_j, j = 1..m²-1.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Correlation coordinate t_ij (1-based traceless indices).
    pub fn t(&self, i: usize, j: usize) -> f64 {
        self.t[(i - 1) * (self.dim_b * self.dim_b - 1) + (j - 1)]
    }

    pub fn t_flat(&self) -> &[f64] {
        &self.t
    }

    /// The full operator basis on A, identity element included at index 0.
    pub fn basis_a(&self) -> &[ComplexMatrix] {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &[ComplexMatrix] {
        &self.basis_b
    }

    /// Re-sum the expansion; equals the input state to numerical precision.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (n, m) = (self.dim_a, self.dim_b);
        let mut out = kron(&self.basis_a[0], &self.basis_b[0]).scale(1.0 / ((n * m) as f64).sqrt());
        for (i, &xi) in self.x.iter().enumerate() {
            out = &out + &kron(&self.basis_a[i + 1], &self.basis_b[0]).scale(xi);
        }
        for (j, &yj) in self.y.iter().enumerate() {
            out = &out + &kron(&self.basis_a[0], &self.basis_b[j + 1]).scale(yj);
        }
        for i in 1..n * n {
            for j in 1..m * m {
                let tij = self.t[(i - 1) * (m * m - 1) + (j - 1)];
                if tij == 0.0 {
                    continue;
                }
                out = &out + &kron(&self.basis_a[i], &self.basis_b[j]).scale(tij);
            }
        }
        out
    }
}

/// Expand a state over the fixed Gell-Mann product basis.
///
/// The coordinates of a Hermitian operator over a Hermitian basis are real;
/// any imaginary residue beyond 1e-10 would indicate a corrupted state and
/// trips an assertion.
pub fn hs_expand(state: &BipartiteState) -> HsExpansion {
    let (n, m) = (state.dim_a(), state.dim_b());
    let basis_a = gell_mann_basis(n);
    let basis_b = gell_mann_basis(m);

    let coeff = |i: usize, j: usize| -> f64 {
        let op = kron(&basis_a[i], &basis_b[j]);
        let inner = hs_inner(state.rho(), &op).expect("dimensions match by construction");
        assert!(
            inner.im.abs() < 1e-10,
            "non-real coordinate over Hermitian basis: {inner}"
        );
        inner.re
    };

    let x: Vec<f64> = (1..n * n).map(|i| coeff(i, 0)).collect();
    let y: Vec<f64> = (1..m * m).map(|j| coeff(0, j)).collect();
    let mut t = Vec::with_capacity((n * n - 1) * (m * m - 1));
    for i in 1..n * n {
        for j in 1..m * m {
            t.push(coeff(i, j));
        }
    }

    HsExpansion {
        dim_a: n,
        dim_b: m,
        x,
        y,
        t,
        basis_a,
        basis_b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_is_orthonormal_and_hermitian() {
        for n in [2usize, 3, 4] {
            let basis = gell_mann_basis(n);
            assert_eq!(basis.len(), n * n);
            for (i, xi) in basis.iter().enumerate() {
                assert!(xi.hermitian_deviation() < 1e-15);
                for (j, xj) in basis.iter().enumerate() {
                    let inner = hs_inner(xi, xj).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(inner.re, want, epsilon = 1e-14);
                    assert!(inner.im.abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_has_no_traceless_component() {
        let rho = ComplexMatrix::identity(4).scale(0.25);
        let state = BipartiteState::new(2, 2, rho).unwrap();
        let exp = hs_expand(&state);
        assert!(exp.x().iter().all(|&v| v.abs() < 1e-14));
        assert!(exp.y().iter().all(|&v| v.abs() < 1e-14));
        assert!(exp.t_flat().iter().all(|&v| v.abs() < 1e-14));
    }

    #[test]
    fn bell_correlation_tensor() {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(w, 0.0), ZERO, ZERO, C64::new(w, 0.0)];
        let state = BipartiteState::from_pure(&psi, 2, 2).unwrap();
        let exp = hs_expand(&state);
        // In the σ/√2 ordering (x, y, z): t = diag(1/2, -1/2, 1/2).
        assert_abs_diff_eq!(exp.t(1, 1), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(exp.t(2, 2), -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(exp.t(3, 3), 0.5, epsilon = 1e-12);
        let mut nonzero = 0;
        for i in 1..4 {
            for j in 1..4 {
                if exp.t(i, j).abs() > 1e-12 {
                    nonzero += 1;
                    assert_abs_diff_eq!(exp.t(i, j).abs(), 0.5, epsilon = 1e-12);
                }
            }
        }
        assert_eq!(nonzero, 3);
        assert!(exp.x().iter().all(|&v| v.abs() < 1e-12));
        assert!(exp.y().iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn product_state_reconstructs() {
        let rho_a = ComplexMatrix::from_real_rows(&[&[0.8, 0.1], &[0.1, 0.2]]);
        let rho_b = ComplexMatrix::from_real_rows(&[&[0.55, -0.2], &[-0.2, 0.45]]);
        let state = BipartiteState::new(2, 2, kron(&rho_a, &rho_b)).unwrap();
        let exp = hs_expand(&state);
        assert!(exp.reconstruct().approx_eq(state.rho(), 1e-12));
    }

    #[test]
    fn asymmetric_dimensions_reconstruct() {
        // 2x3 state with off-diagonal structure.
        let mut rho = ComplexMatrix::identity(6).scale(1.0 / 6.0);
        rho[(0, 4)] = C64::new(0.05, 0.02);
        rho[(4, 0)] = C64::new(0.05, -0.02);
        let state = BipartiteState::new(2, 3, rho).unwrap();
        let exp = hs_expand(&state);
        assert_eq!(exp.x().len(), 3);
        assert_eq!(exp.y().len(), 8);
        assert!(exp.reconstruct().approx_eq(state.rho(), 1e-12));
    }
}
