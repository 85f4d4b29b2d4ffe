//! Ergotropy, passive states, the ergotropic gap, and the ergotropy-based
//! measurement-induced nonlocality (EMIN) in all of its computation routes.
//!
//! The routes are deliberately redundant: `emin_direct` evaluates the
//! definition (ergotropy before minus after the locally invariant
//! measurement), while the closed forms re-derive the same number from
//! Schmidt data, Hilbert-Schmidt coordinates, or passive energies alone.
//! Their pairwise agreement is a load-bearing invariant of the whole crate.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, kron, recompose, trace_product, ComplexMatrix, Subsystem, HERMITICITY_TOL,
};
use crate::state::{
    hs_expand, measure_local, operator_schmidt, schmidt_pure, BipartiteState, MeasurementBasis,
};

/// Locality structure of a bipartite Hamiltonian.
#[derive(Clone, Debug)]
pub enum Structure {
    /// H = A ⊗ I_b + I_a ⊗ B.
    NonInteracting { a: ComplexMatrix, b: ComplexMatrix },
    Interacting,
}

/// A Hamiltonian on an (A ⊗ B) space together with its locality structure.
///
/// Energies are dimensionless (ħ = 1).
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    total: ComplexMatrix,
    structure: Structure,
    dim_a: usize,
    dim_b: usize,
}

impl HamiltonianSpec {
    /// H = A ⊗ I + I ⊗ B from Hermitian local parts.
    pub fn non_interacting(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        for (name, m) in [("A", &a), ("B", &b)] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            let deviation = m.hermitian_deviation();
            if deviation > HERMITICITY_TOL {
                return Err(Error::InvalidParameter {
                    reason: format!("local part {name} is not Hermitian (deviation {deviation:.3e})"),
                });
            }
        }
        let (dim_a, dim_b) = (a.rows(), b.rows());
        let total = &kron(&a, &ComplexMatrix::identity(dim_b))
            + &kron(&ComplexMatrix::identity(dim_a), &b);
        Ok(HamiltonianSpec {
            total,
            structure: Structure::NonInteracting { a, b },
            dim_a,
            dim_b,
        })
    }

    /// An arbitrary Hermitian Hamiltonian with interactions.
    pub fn interacting(total: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        let n = dim_a * dim_b;
        if total.rows() != n || total.cols() != n {
            return Err(Error::dim_mismatch(
                "HamiltonianSpec",
                format!("{}x{}", total.rows(), total.cols()),
                format!("{n}x{n}"),
            ));
        }
        let deviation = total.hermitian_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: HERMITICITY_TOL,
            });
        }
        Ok(HamiltonianSpec {
            total,
            structure: Structure::Interacting,
            dim_a,
            dim_b,
        })
    }

    pub fn total(&self) -> &ComplexMatrix {
        &self.total
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
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

    pub fn local_parts(&self) -> Option<(&ComplexMatrix, &ComplexMatrix)> {
        match &self.structure {
            Structure::NonInteracting { a, b } => Some((a, b)),
            Structure::Interacting => None,
        }
    }

    pub fn is_non_interacting(&self) -> bool {
        matches!(self.structure, Structure::NonInteracting { .. })
    }
}

/// Energy bookkeeping of a state relative to a Hamiltonian.
///
/// `ergotropy = energy - passive_energy` holds exactly by construction; the
/// passive state commutes with H and carries the populations of ρ arranged
/// against ascending energies.
#[derive(Clone, Debug)]
pub struct ErgotropyReport {
    pub energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
    pub passive_state: ComplexMatrix,
}

/// Passive-state transform of ρ under a Hamiltonian matrix: populations
/// sorted descending are paired with energies sorted ascending.
pub(crate) fn passive_with_matrix(rho: &ComplexMatrix, h: &ComplexMatrix) -> Result<ErgotropyReport> {
    if !rho.is_square() {
        return Err(Error::NotSquare {
            rows: rho.rows(),
            cols: rho.cols(),
        });
    }
    if rho.rows() != h.rows() || rho.cols() != h.cols() {
        return Err(Error::dim_mismatch(
            "passive",
            format!("{}x{}", rho.rows(), rho.cols()),
            format!("{}x{}", h.rows(), h.cols()),
        ));
    }

    let eig_rho = eig_hermitian(rho)?;
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
        return Err(Error::InvalidState {
            reason: format!("trace is {trace}, expected 1"),
        });
    }
    if eig_rho.eigenvalues[0] < -1e-10 {
        return Err(Error::InvalidState {
            reason: format!("negative eigenvalue {:.3e}", eig_rho.eigenvalues[0]),
        });
    }

    let eig_h = eig_hermitian(h)?;
    let populations_desc: Vec<f64> = eig_rho.eigenvalues.iter().rev().copied().collect();

    let energy = trace_product(rho, h).re;
    let passive_energy: f64 = populations_desc
        .iter()
        .zip(&eig_h.eigenvalues)
        .map(|(r, e)| r * e)
        .sum();
    let weights: Vec<C64> = populations_desc.iter().map(|&r| C64::new(r, 0.0)).collect();
    let passive_state = recompose(&eig_h.eigenvectors, &weights);

    Ok(ErgotropyReport {
        energy,
        passive_energy,
        ergotropy: energy - passive_energy,
        passive_state,
    })
}

/// Passive state and energies of ρ under H.
pub fn passive(rho: &ComplexMatrix, h: &HamiltonianSpec) -> Result<ErgotropyReport> {
    passive_with_matrix(rho, h.total())
}

/// Maximum work extractable by a cyclic unitary: Tr(ρH) − E_p(ρ).
pub fn ergotropy(rho: &ComplexMatrix, h: &HamiltonianSpec) -> Result<f64> {
    Ok(passive(rho, h)?.ergotropy)
}

/// Globally versus locally extractable work, ξ(ρ, H) − [ξ(ρ_a, A) + ξ(ρ_b, B)].
///
/// Local ergotropy under an interacting Hamiltonian has no closed form
/// (it requires optimizing over all local unitaries), so this is defined for
/// non-interacting Hamiltonians only.
pub fn ergotropic_gap(state: &BipartiteState, h: &HamiltonianSpec) -> Result<f64> {
    check_state_dims(state, h)?;
    let (a, b) = h.local_parts().ok_or(Error::InteractingHamiltonian)?;
    let global = passive_with_matrix(state.rho(), h.total())?.ergotropy;
    let local_a = passive_with_matrix(&state.marginal(Subsystem::A), a)?.ergotropy;
    let local_b = passive_with_matrix(&state.marginal(Subsystem::B), b)?.ergotropy;
    Ok(global - local_a - local_b)
}

/// EMIN by definition: ξ(ρ, H) − ξ(Π^a(ρ), H) for the given measurement.
pub fn emin_direct(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    basis: &MeasurementBasis,
) -> Result<f64> {
    check_state_dims(state, h)?;
    let measured = measure_local(state, basis)?;
    let before = passive_with_matrix(state.rho(), h.total())?.ergotropy;
    let after = passive_with_matrix(measured.rho(), h.total())?.ergotropy;
    Ok(before - after)
}

/// EMIN of a pure state from its Schmidt data and the operator Schmidt
/// decomposition of H:
///
/// Σ_{i≠j,l} √(λ_i λ_j) s_l ⟨α_j|A_l|α_i⟩⟨β_j|B_l|β_i⟩ + Σ_k ε_k↑ (λ_k↓ − δ_k0),
///
/// where the implied measurement is in the Schmidt basis of the state.
pub fn emin_pure_closed(psi: &[C64], h: &HamiltonianSpec) -> Result<f64> {
    let schmidt = schmidt_pure(psi, h.dim_a(), h.dim_b())?;
    let os = operator_schmidt(h.total(), h.dim_a(), h.dim_b())?;

    let mut cross = C64::new(0.0, 0.0);
    let k = schmidt.coefficients().len();
    let amp: Vec<f64> = schmidt.coefficients().iter().map(|&l| l.max(0.0).sqrt()).collect();
    for l in 0..os.len() {
        let ma = &(&schmidt.basis_a().adjoint() * &os.factors_a()[l]) * schmidt.basis_a();
        let mb = &(&schmidt.basis_b().adjoint() * &os.factors_b()[l]) * schmidt.basis_b();
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..k {
            for i in 0..k {
                if i == j {
                    continue;
                }
                acc += amp[i] * amp[j] * ma[(j, i)] * mb[(j, i)];
            }
        }
        cross += os.strengths()[l] * acc;
    }

    let energies = eig_hermitian(h.total())?.eigenvalues;
    let mut tail = 0.0;
    for (idx, &e) in energies.iter().enumerate() {
        let lam = schmidt.coefficients().get(idx).copied().unwrap_or(0.0);
        let delta = if idx == 0 { 1.0 } else { 0.0 };
        tail += e * (lam - delta);
    }

    debug_assert!(cross.im.abs() < 1e-8 * (1.0 + cross.norm()));
    Ok(cross.re + tail)
}

/// EMIN of an arbitrary state from its Hilbert-Schmidt coordinates:
///
/// Σ_l Σ_ij t_ij s_l [Tr(X_i A_l) − Tr(Σ_k P_k X_i P_k A_l)] Tr(Y_j B_l)
/// + Σ_k λ_{Π^a,k}↓ ε_k↑ − Σ_k λ_k↓ ε_k↑.
pub fn emin_mixed_closed(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    basis: &MeasurementBasis,
) -> Result<f64> {
    check_state_dims(state, h)?;
    let measured = measure_local(state, basis)?;
    let expansion = hs_expand(state);
    let os = operator_schmidt(h.total(), h.dim_a(), h.dim_b())?;

    let n = h.dim_a();
    let m = h.dim_b();

    // D_i = X_i − Σ_k P_k X_i P_k, the part of each basis element destroyed
    // by the measurement.
    let pinched: Vec<ComplexMatrix> = (1..n * n)
        .map(|i| {
            let x = &expansion.basis_a()[i];
            let mut sum = ComplexMatrix::zeros(n, n);
            for p in basis.projectors() {
                sum = &sum + &(&(p * x) * p);
            }
            x - &sum
        })
        .collect();

    let mut correlation_term = C64::new(0.0, 0.0);
    for l in 0..os.len() {
        let a_l = &os.factors_a()[l];
        let b_l = &os.factors_b()[l];
        let p: Vec<C64> = pinched.iter().map(|d| trace_product(d, a_l)).collect();
        let q: Vec<C64> = (1..m * m)
            .map(|j| trace_product(&expansion.basis_b()[j], b_l))
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n * n - 1 {
            for j in 0..m * m - 1 {
                acc += expansion.t_flat()[i * (m * m - 1) + j] * p[i] * q[j];
            }
        }
        correlation_term += os.strengths()[l] * acc;
    }

    let energies = eig_hermitian(h.total())?.eigenvalues;
    let spectrum_term = |s: &BipartiteState| -> f64 {
        let mut populations = eig_hermitian(s.rho())
            .expect("validated state")
            .eigenvalues;
        populations.reverse();
        populations
            .iter()
            .zip(&energies)
            .map(|(r, e)| r * e)
            .sum()
    };

    debug_assert!(correlation_term.im.abs() < 1e-8 * (1.0 + correlation_term.norm()));
    Ok(correlation_term.re + spectrum_term(&measured) - spectrum_term(state))
}

/// EMIN under a non-interacting Hamiltonian: E_p(Π^a(ρ)) − E_p(ρ).
///
/// The measurement preserves both marginals, so under H = A⊗I + I⊗B the mean
/// energy is unchanged and the whole effect sits in the passive energies.
/// Always ≥ 0 up to roundoff (the measurement output is majorized by the
/// input and passive energy is Schur-concave).
pub fn emin_noninteracting(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    basis: &MeasurementBasis,
) -> Result<f64> {
    if !h.is_non_interacting() {
        return Err(Error::InteractingHamiltonian);
    }
    check_state_dims(state, h)?;
    let measured = measure_local(state, basis)?;
    let before = passive_with_matrix(state.rho(), h.total())?.passive_energy;
    let after = passive_with_matrix(measured.rho(), h.total())?.passive_energy;
    Ok(after - before)
}

/// EMIN of the maximally entangled state of Schmidt rank d under a
/// non-interacting Hamiltonian: (Σ_{k<d} ε_k↑ − d ε_0)/d, where the sum runs
/// over the d lowest global eigenvalues.
///
/// The same number is recomputed from the level spacings
/// s_i = ε_{i+1} − ε_i as (1/d) Σ_{i<d-1} (d−1−i) s_i and both routes must
/// agree to 1e-10; `d` must equal min(dim_a, dim_b).
pub fn emin_maxent(h: &HamiltonianSpec, d: usize) -> Result<f64> {
    if !h.is_non_interacting() {
        return Err(Error::InteractingHamiltonian);
    }
    let expected = h.dim_a().min(h.dim_b());
    if d != expected {
        return Err(Error::InvalidParameter {
            reason: format!("d must be min(dim_a, dim_b) = {expected}, got {d}"),
        });
    }
    let energies = eig_hermitian(h.total())?.eigenvalues;

    let lowest_sum: f64 = energies.iter().take(d).sum();
    let direct = (lowest_sum - d as f64 * energies[0]) / d as f64;

    let mut from_spacings = 0.0;
    for i in 0..d.saturating_sub(1) {
        let spacing = energies[i + 1] - energies[i];
        from_spacings += (d - 1 - i) as f64 * spacing;
    }
    from_spacings /= d as f64;

    let scale = 1.0 + energies.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
    assert!(
        (direct - from_spacings).abs() <= 1e-10 * scale,
        "level-spacing form disagrees with eigenvalue form: {direct} vs {from_spacings}"
    );
    Ok(direct)
}

fn check_state_dims(state: &BipartiteState, h: &HamiltonianSpec) -> Result<()> {
    if state.dim_a() != h.dim_a() || state.dim_b() != h.dim_b() {
        return Err(Error::dim_mismatch(
            "state vs Hamiltonian",
            format!("{}x{}", state.dim_a(), state.dim_b()),
            format!("{}x{}", h.dim_a(), h.dim_b()),
        ));
    }
    Ok(())
}
