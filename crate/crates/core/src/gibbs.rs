//! Von Neumann entropy, relative entropy, Gibbs states, and the
//! entropy-based bound expressions for the nonlocality quantifier.

use num_complex::Complex64 as C64;

use crate::ergotropy::{passive, HamiltonianSpec};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, recompose, ComplexMatrix};
use crate::state::{measure_local, BipartiteState, MeasurementBasis};

/// Eigenvalues below this weight contribute 0·log 0 = 0 to entropies and
/// count as kernel directions for support checks.
const SPECTRUM_FLOOR: f64 = 1e-14;

fn validated_spectrum(rho: &ComplexMatrix) -> Result<crate::linalg::HermitianEig> {
    let eig = eig_hermitian(rho)?;
    if eig.eigenvalues[0] < -1e-10 {
        return Err(Error::InvalidState {
            reason: format!("negative eigenvalue {:.3e}", eig.eigenvalues[0]),
        });
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
        return Err(Error::InvalidState {
            reason: format!("trace is {trace}, expected 1"),
        });
    }
    Ok(eig)
}

/// Von Neumann entropy S(ρ) = −Tr(ρ ln ρ), natural logarithm.
pub fn entropy(rho: &ComplexMatrix) -> Result<f64> {
    let eig = validated_spectrum(rho)?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&x| x >= SPECTRUM_FLOOR)
        .map(|&x| -x * x.ln())
        .sum())
}

/// Relative entropy D(a‖b) = Tr[a (ln a − ln b)].
///
/// Declares a support violation (the divergence is +∞) when `a` carries more
/// than 1e-12 weight in the kernel of `b`.
pub fn relative_entropy(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::dim_mismatch(
            "relative_entropy",
            format!("{}x{}", a.rows(), a.cols()),
            format!("{}x{}", b.rows(), b.cols()),
        ));
    }
    let eig_a = validated_spectrum(a)?;
    let eig_b = validated_spectrum(b)?;

    let mut value: f64 = eig_a
        .eigenvalues
        .iter()
        .filter(|&&x| x >= SPECTRUM_FLOOR)
        .map(|&x| x * x.ln())
        .sum();

    for (j, &bj) in eig_b.eigenvalues.iter().enumerate() {
        let col = eig_b.eigenvectors.col(j);
        let image = a.mul_vec(&col);
        let weight: f64 = col
            .iter()
            .zip(&image)
            .map(|(c, v)| (c.conj() * v).re)
            .sum();
        if bj < SPECTRUM_FLOOR {
            if weight > 1e-12 {
                return Err(Error::SupportViolation { weight });
            }
        } else {
            value -= weight * bj.ln();
        }
    }
    Ok(value)
}

/// Thermal state e^{−βH}/Z at inverse temperature β > 0.
///
/// Computed on the shifted spectrum e^{−β(ε−ε_0)} so large β‖H‖ cannot
/// underflow the partition function. Always full rank.
pub fn gibbs_state(h: &ComplexMatrix, beta: f64) -> Result<ComplexMatrix> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            reason: format!("beta must be positive and finite, got {beta}"),
        });
    }
    let eig = eig_hermitian(h)?;
    let ground = eig.eigenvalues[0];
    let boltzmann: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&e| (-beta * (e - ground)).exp())
        .collect();
    let z: f64 = boltzmann.iter().sum();
    let weights: Vec<C64> = boltzmann.iter().map(|&w| C64::new(w / z, 0.0)).collect();
    Ok(recompose(&eig.eigenvectors, &weights))
}

/// Both candidate entropy bounds on β·N_ξ, evaluated against the thermal
/// state at inverse temperature β, plus the orientation each one actually
/// satisfies on this input.
///
/// `first` is D(Π^a(ρ)^p‖ρ_β) − D(Π^a(ρ)‖ρ_β) − D(ρ^p‖ρ_β) and `second` is
/// D(ρ‖ρ_β) + D(Π^a(ρ)‖ρ_β) − D(ρ^p‖ρ_β). Neither orientation is asserted
/// here; the verification suites audit them empirically.
#[derive(Clone, Debug)]
pub struct EminBoundsReport {
    pub first: f64,
    pub second: f64,
    pub emin: f64,
    pub beta: f64,
    pub first_le_scaled_emin: bool,
    pub second_le_scaled_emin: bool,
}

impl EminBoundsReport {
    pub fn scaled_emin(&self) -> f64 {
        self.beta * self.emin
    }
}

/// Evaluate the entropy bound expressions for a state, Hamiltonian and
/// measurement at inverse temperature β.
pub fn emin_bounds(
    state: &BipartiteState,
    h: &HamiltonianSpec,
    basis: &MeasurementBasis,
    beta: f64,
) -> Result<EminBoundsReport> {
    let thermal = gibbs_state(h.total(), beta)?;
    let measured = measure_local(state, basis)?;

    let report_before = passive(state.rho(), h)?;
    let report_after = passive(measured.rho(), h)?;
    let emin = report_before.ergotropy - report_after.ergotropy;

    let d_state = relative_entropy(state.rho(), &thermal)?;
    let d_measured = relative_entropy(measured.rho(), &thermal)?;
    let d_passive = relative_entropy(&report_before.passive_state, &thermal)?;
    let d_measured_passive = relative_entropy(&report_after.passive_state, &thermal)?;

    let first = d_measured_passive - d_measured - d_passive;
    let second = d_state + d_measured - d_passive;
    let scaled = beta * emin;
    const ORIENTATION_TOL: f64 = 1e-9;

    Ok(EminBoundsReport {
        first,
        second,
        emin,
        beta,
        first_le_scaled_emin: first <= scaled + ORIENTATION_TOL,
        second_le_scaled_emin: second <= scaled + ORIENTATION_TOL,
    })
}
