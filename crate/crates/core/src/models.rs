//! Fixed operators (Paulis, truncated ladder operators) and the
//! qubit-oscillator model used by the shipped experiments.

use num_complex::Complex64 as C64;

use crate::ergotropy::HamiltonianSpec;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

/// σ₊ = |0⟩⟨1|: raises the σz eigenvalue.
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
}

pub fn sigma_minus() -> ComplexMatrix {
    sigma_plus().adjoint()
}

/// Truncated bosonic annihilation operator: â|k⟩ = √k |k−1⟩, matrix elements
/// beyond the truncation simply dropped.
pub fn annihilation(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Number operator N̂ = diag(0, 1, ..., dim-1).
pub fn number_operator(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::new(i as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Parameters of the qubit-field model: coupling strength g (ħ = 1) and the
/// Fock-space truncation of the field mode.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct JcParams {
    g: f64,
    field_dim: usize,
}

impl JcParams {
    pub fn new(g: f64, field_dim: usize) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InvalidParameter {
                reason: format!("coupling must be finite, got {g}"),
            });
        }
        if field_dim < 2 {
            return Err(Error::InvalidParameter {
                reason: format!("field dimension must be at least 2, got {field_dim}"),
            });
        }
        Ok(JcParams { g, field_dim })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn field_dim(&self) -> usize {
        self.field_dim
    }
}

/// H = σz/2 ⊗ I + I ⊗ N̂ + g (σ₊ ⊗ â + σ₋ ⊗ â†) on qubit ⊗ field.
///
/// The qubit is subsystem A (the measured side). At g = 0 the Hamiltonian is
/// reported as non-interacting with local parts (σz/2, N̂); any g ≠ 0 makes
/// it interacting. The rotating-wave coupling conserves the total excitation
/// number σz/2 ⊗ I + I ⊗ N̂.
pub fn jaynes_cummings(params: &JcParams) -> HamiltonianSpec {
    let qubit_part = pauli_z().scale(0.5);
    let field_part = number_operator(params.field_dim);
    if params.g == 0.0 {
        return HamiltonianSpec::non_interacting(qubit_part, field_part)
            .expect("local parts are Hermitian by construction");
    }
    let ladder = annihilation(params.field_dim);
    let coupling = &kron(&sigma_plus(), &ladder) + &kron(&sigma_minus(), &ladder.adjoint());
    let id_f = ComplexMatrix::identity(params.field_dim);
    let id_q = ComplexMatrix::identity(2);
    let total = &(&kron(&qubit_part, &id_f) + &kron(&id_q, &field_part))
        + &coupling.scale(params.g);
    HamiltonianSpec::interacting(total, 2, params.field_dim)
        .expect("rotating-wave coupling keeps H Hermitian")
}
