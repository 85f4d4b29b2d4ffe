//! Bipartite states, locally invariant projective measurements, and the
//! decompositions used by the closed-form nonlocality expressions.

mod hs_basis;
mod schmidt;

pub use hs_basis::{gell_mann_basis, hs_expand, HsExpansion};
pub use schmidt::{operator_schmidt, schmidt_pure, OperatorSchmidt, PureSchmidt};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, hs_norm_sq, kron, partial_trace, ComplexMatrix, Subsystem, HERMITICITY_TOL,
};

/// Default absolute gap below which two marginal populations count as
/// degenerate. Sits well above solver noise (~1e-12) and below the physical
/// gaps in the shipped experiments (>= 1e-3).
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Validated bipartite density matrix on an (A ⊗ B) space.
///
/// Construction enforces Hermiticity (1e-10 max-abs), unit trace (1e-10) and
/// spectrum >= -1e-10; reads that need probabilities clamp the tiny negative
/// eigenvalues to zero.
#[derive(Clone, Debug)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    rho: ComplexMatrix,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, rho: ComplexMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidParameter {
                reason: "subsystem dimensions must be positive".into(),
            });
        }
        let n = dim_a * dim_b;
        if rho.rows() != n || rho.cols() != n {
            return Err(Error::dim_mismatch(
                "BipartiteState",
                format!("{}x{}", rho.rows(), rho.cols()),
                format!("{n}x{n}"),
            ));
        }
        let deviation = rho.hermitian_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::InvalidState {
                reason: format!("trace is {trace}, expected 1"),
            });
        }
        let eig = eig_hermitian(&rho)?;
        if let Some(&lo) = eig.eigenvalues.first() {
            if lo < -1e-10 {
                return Err(Error::InvalidState {
                    reason: format!("negative eigenvalue {lo:.3e}"),
                });
            }
        }
        Ok(BipartiteState { dim_a, dim_b, rho })
    }

    /// Density matrix |ψ⟩⟨ψ| of a pure state vector of length dim_a·dim_b.
    pub fn from_pure(psi: &[C64], dim_a: usize, dim_b: usize) -> Result<Self> {
        if psi.len() != dim_a * dim_b {
            return Err(Error::dim_mismatch(
                "from_pure",
                psi.len(),
                dim_a * dim_b,
            ));
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm });
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(dim_a, dim_b, ComplexMatrix::outer(&unit, &unit))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn marginal(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.rho, self.dim_a, self.dim_b, keep)
            .expect("dimensions validated at construction")
    }

    /// Ascending spectrum with the [-1e-10, 0) band clamped to zero.
    pub fn eigenvalues_clamped(&self) -> Vec<f64> {
        let eig = eig_hermitian(&self.rho).expect("validated Hermitian");
        eig.eigenvalues.iter().map(|&x| x.max(0.0)).collect()
    }
}

/// A complete set of rank-1 orthogonal projectors on subsystem A.
///
/// `degenerate_marginal` records whether the marginal that produced the basis
/// had a population gap below tolerance; in that regime the eigenbasis is not
/// unique and callers may prefer to supply an explicit basis instead.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    projectors: Vec<ComplexMatrix>,
    degenerate_marginal: bool,
}

impl MeasurementBasis {
    /// Validates completeness (Σ P = I) and orthogonality (P_k P_j = δ_kj P_k)
    /// to 1e-10. The flag is left unset; use [`marginal_basis`] for the
    /// eigenbasis of a marginal.
    pub fn from_projectors(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidBasis {
                reason: "no projectors".into(),
            });
        }
        let n = projectors[0].rows();
        if projectors.len() != n {
            return Err(Error::InvalidBasis {
                reason: format!("{} projectors for dimension {n}", projectors.len()),
            });
        }
        for p in &projectors {
            if p.rows() != n || p.cols() != n {
                return Err(Error::InvalidBasis {
                    reason: "projector dimensions disagree".into(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(n, n);
        for p in &projectors {
            sum = &sum + p;
        }
        if !sum.approx_eq(&ComplexMatrix::identity(n), 1e-10) {
            return Err(Error::InvalidBasis {
                reason: "projectors do not sum to the identity".into(),
            });
        }
        for (k, pk) in projectors.iter().enumerate() {
            for (j, pj) in projectors.iter().enumerate() {
                let prod = pk * pj;
                let want = if k == j {
                    pk.clone()
                } else {
                    ComplexMatrix::zeros(n, n)
                };
                if !prod.approx_eq(&want, 1e-10) {
                    return Err(Error::InvalidBasis {
                        reason: format!("projectors {k} and {j} are not orthogonal idempotents"),
                    });
                }
            }
        }
        Ok(MeasurementBasis {
            projectors,
            degenerate_marginal: false,
        })
    }

    /// Rank-1 projectors onto the columns of an orthonormal matrix (e.g. a
    /// Schmidt basis), the explicit escape hatch for degenerate marginals.
    pub fn from_orthonormal_columns(basis: &ComplexMatrix) -> Result<Self> {
        if basis.rows() != basis.cols() {
            return Err(Error::InvalidBasis {
                reason: "basis matrix must be square".into(),
            });
        }
        let projectors = (0..basis.cols())
            .map(|k| {
                let col = basis.col(k);
                ComplexMatrix::outer(&col, &col)
            })
            .collect();
        Self::from_projectors(projectors)
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn degenerate_marginal(&self) -> bool {
        self.degenerate_marginal
    }
}

/// Projectors onto the eigenbasis of ρ_a, ordered by descending population.
///
/// Never fails: a sub-tolerance gap anywhere in the ordered populations only
/// raises `degenerate_marginal`, since the projective map itself depends on
/// the projector set, not its labelling.
pub fn marginal_basis(state: &BipartiteState, degeneracy_tol: f64) -> MeasurementBasis {
    let rho_a = state.marginal(Subsystem::A);
    let eig = eig_hermitian(&rho_a).expect("marginal of a validated state");
    let n = state.dim_a();

    let mut order: Vec<usize> = (0..n).collect();
    // Stable descending sort: ties keep the solver's encounter order.
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));

    let populations: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let degenerate = populations
        .windows(2)
        .any(|w| (w[0] - w[1]).abs() < degeneracy_tol);

    let projectors = order
        .iter()
        .map(|&i| {
            let col = eig.eigenvectors.col(i);
            ComplexMatrix::outer(&col, &col)
        })
        .collect();

    MeasurementBasis {
        projectors,
        degenerate_marginal: degenerate,
    }
}

/// The locally invariant projective measurement
/// Π^a(ρ) = Σ_k (P_k ⊗ I_b) ρ (P_k ⊗ I_b).
pub fn measure_local(state: &BipartiteState, basis: &MeasurementBasis) -> Result<BipartiteState> {
    if basis.dim() != state.dim_a() {
        return Err(Error::dim_mismatch(
            "measure_local",
            basis.dim(),
            state.dim_a(),
        ));
    }
    let id_b = ComplexMatrix::identity(state.dim_b());
    let mut out = ComplexMatrix::zeros(state.dim(), state.dim());
    for p in basis.projectors() {
        let lifted = kron(p, &id_b);
        out = &out + &(&(&lifted * state.rho()) * &lifted);
    }
    BipartiteState::new(state.dim_a(), state.dim_b(), out)
}

/// Geometric measurement-induced nonlocality ‖ρ − Π^a(ρ)‖² in the
/// Hilbert-Schmidt norm.
pub fn geometric_min(state: &BipartiteState, basis: &MeasurementBasis) -> Result<f64> {
    let measured = measure_local(state, basis)?;
    Ok(hs_norm_sq(&(state.rho() - measured.rho())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use approx::assert_abs_diff_eq;

    fn alpha_state(alpha: f64) -> BipartiteState {
        let beta = (1.0 - alpha * alpha).sqrt();
        let psi = [C64::new(alpha, 0.0), ZERO, ZERO, C64::new(beta, 0.0)];
        BipartiteState::from_pure(&psi, 2, 2).unwrap()
    }

    fn bell_state() -> BipartiteState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0)];
        BipartiteState::from_pure(&psi, 2, 2).unwrap()
    }

    #[test]
    fn rejects_unnormalized_vector() {
        let psi = [C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO, ZERO];
        assert!(matches!(
            BipartiteState::from_pure(&psi, 2, 2),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn rejects_wrong_trace() {
        let rho = ComplexMatrix::identity(4);
        assert!(matches!(
            BipartiteState::new(2, 2, rho),
            Err(Error::InvalidState { .. })
        ));
    }

    #[test]
    fn rejects_negative_spectrum() {
        let rho = ComplexMatrix::diag_real(&[1.5, -0.5, 0.0, 0.0]);
        assert!(matches!(
            BipartiteState::new(2, 2, rho),
            Err(Error::InvalidState { .. })
        ));
    }

    #[test]
    fn marginal_basis_orders_by_population() {
        let state = alpha_state(0.6);
        // Marginal is diag(0.36, 0.64): the dominant projector is |1⟩⟨1|.
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        assert!(!basis.degenerate_marginal());
        let p0 = &basis.projectors()[0];
        assert_abs_diff_eq!(p0[(1, 1)].re, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p0[(0, 0)].re, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn bell_marginal_is_degenerate() {
        let basis = marginal_basis(&bell_state(), DEFAULT_DEGENERACY_TOL);
        assert!(basis.degenerate_marginal());
    }

    #[test]
    fn sub_tolerance_gap_flags_degenerate() {
        let rho = ComplexMatrix::diag_real(&[
            (0.5 + 1e-12) / 2.0,
            (0.5 + 1e-12) / 2.0,
            (0.5 - 1e-12) / 2.0,
            (0.5 - 1e-12) / 2.0,
        ]);
        let state = BipartiteState::new(2, 2, rho).unwrap();
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        assert!(basis.degenerate_marginal());
    }

    #[test]
    fn measurement_fixes_product_states() {
        let rho_a = ComplexMatrix::diag_real(&[0.7, 0.3]);
        let rho_b = ComplexMatrix::from_real_rows(&[&[0.6, 0.2], &[0.2, 0.4]]);
        let state = BipartiteState::new(2, 2, kron(&rho_a, &rho_b)).unwrap();
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let measured = measure_local(&state, &basis).unwrap();
        assert!(measured.rho().approx_eq(state.rho(), 1e-12));
        assert_abs_diff_eq!(geometric_min(&state, &basis).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn measurement_dephases_schmidt_superposition() {
        let state = alpha_state(0.6);
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let measured = measure_local(&state, &basis).unwrap();
        let want = ComplexMatrix::diag_real(&[0.36, 0.0, 0.0, 0.64]);
        assert!(measured.rho().approx_eq(&want, 1e-12));
    }

    #[test]
    fn measurement_is_idempotent() {
        let state = alpha_state(0.37);
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let once = measure_local(&state, &basis).unwrap();
        let twice = measure_local(&once, &basis).unwrap();
        assert!(once.rho().approx_eq(twice.rho(), 1e-12));
    }

    #[test]
    fn geometric_min_of_schmidt_pair() {
        let alpha = 0.6f64;
        let beta = 0.8f64;
        let state = alpha_state(alpha);
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let got = geometric_min(&state, &basis).unwrap();
        assert_abs_diff_eq!(got, 2.0 * alpha * alpha * beta * beta, epsilon = 1e-12);
    }

    #[test]
    fn geometric_min_of_bell_in_schmidt_basis() {
        let state = bell_state();
        let basis = MeasurementBasis::from_orthonormal_columns(&ComplexMatrix::identity(2)).unwrap();
        assert_abs_diff_eq!(geometric_min(&state, &basis).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn explicit_basis_rejects_incomplete_sets() {
        let p = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let q = ComplexMatrix::diag_real(&[1.0, 0.0]);
        assert!(MeasurementBasis::from_projectors(vec![p, q]).is_err());
    }
}
