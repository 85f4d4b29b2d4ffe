//! Schmidt decomposition of pure state vectors and the operator Schmidt
//! decomposition of Hermitian operators (via realignment).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{kron, svd, ComplexMatrix, HERMITICITY_TOL};

/// ψ = Σ_i √λ_i |α_i⟩ ⊗ |β_i⟩ with λ descending and Σλ = 1.
///
/// `coefficients` holds the squared Schmidt coefficients λ_i, zero-padded to
/// min(dim_a, dim_b); the basis matrices carry one orthonormal column per
/// coefficient (completed deterministically past the Schmidt rank).
#[derive(Clone, Debug)]
pub struct PureSchmidt {
    coefficients: Vec<f64>,
    basis_a: ComplexMatrix,
    basis_b: ComplexMatrix,
}

impl PureSchmidt {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn basis_a(&self) -> &ComplexMatrix {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &ComplexMatrix {
        &self.basis_b
    }

    /// Σ_i √λ_i |α_i⟩ ⊗ |β_i⟩ as a flat vector.
    pub fn reconstruct(&self) -> Vec<C64> {
        let n = self.basis_a.rows();
        let m = self.basis_b.rows();
        let mut psi = vec![C64::new(0.0, 0.0); n * m];
        for (i, &lam) in self.coefficients.iter().enumerate() {
            let w = lam.max(0.0).sqrt();
            if w == 0.0 {
                continue;
            }
            for a in 0..n {
                for b in 0..m {
                    psi[a * m + b] += w * self.basis_a[(a, i)] * self.basis_b[(b, i)];
                }
            }
        }
        psi
    }
}

/// Schmidt decomposition of a normalized state vector on (A ⊗ B).
pub fn schmidt_pure(psi: &[C64], dim_a: usize, dim_b: usize) -> Result<PureSchmidt> {
    if psi.len() != dim_a * dim_b {
        return Err(Error::dim_mismatch("schmidt_pure", psi.len(), dim_a * dim_b));
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm });
    }

    // Reshape ψ_(a,b) into an n x m matrix; its SVD is the Schmidt form with
    // M = Σ σ_i u_i v_i†, i.e. β_i = conj(v_i).
    let m = ComplexMatrix::from_fn(dim_a, dim_b, |a, b| psi[a * dim_b + b] / norm);
    let decomp = svd(&m)?;

    let coefficients: Vec<f64> = decomp.singular_values.iter().map(|s| s * s).collect();
    Ok(PureSchmidt {
        coefficients,
        basis_a: decomp.u,
        basis_b: decomp.v.conj(),
    })
}

/// H = Σ_l s_l A_l ⊗ B_l with Hilbert-Schmidt-orthonormal local factors and
/// s_l > 0 descending. Numerically zero strengths are dropped, so `len()` is
/// the operator Schmidt rank.
#[derive(Clone, Debug)]
pub struct OperatorSchmidt {
    strengths: Vec<f64>,
    factors_a: Vec<ComplexMatrix>,
    factors_b: Vec<ComplexMatrix>,
}

impl OperatorSchmidt {
    pub fn len(&self) -> usize {
        self.strengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strengths.is_empty()
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    pub fn factors_a(&self) -> &[ComplexMatrix] {
        &self.factors_a
    }

    pub fn factors_b(&self) -> &[ComplexMatrix] {
        &self.factors_b
    }

    /// Σ_l s_l A_l ⊗ B_l.
    pub fn reconstruct(&self, dim_a: usize, dim_b: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(dim_a * dim_b, dim_a * dim_b);
        for l in 0..self.len() {
            out = &out + &kron(&self.factors_a[l], &self.factors_b[l]).scale(self.strengths[l]);
        }
        out
    }
}

/// Operator Schmidt decomposition of a Hermitian operator on (A ⊗ B),
/// computed from the SVD of the realigned matrix
/// R[(ia,ja),(ib,jb)] = H[(ia,ib),(ja,jb)].
pub fn operator_schmidt(h: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<OperatorSchmidt> {
    let n = dim_a * dim_b;
    if h.rows() != n || h.cols() != n {
        return Err(Error::dim_mismatch(
            "operator_schmidt",
            format!("{}x{}", h.rows(), h.cols()),
            format!("{n}x{n}"),
        ));
    }
    let deviation = h.hermitian_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }

    let realigned = ComplexMatrix::from_fn(dim_a * dim_a, dim_b * dim_b, |row, col| {
        let (ia, ja) = (row / dim_a, row % dim_a);
        let (ib, jb) = (col / dim_b, col % dim_b);
        h[(ia * dim_b + ib, ja * dim_b + jb)]
    });
    let decomp = svd(&realigned)?;

    let sigma_max = decomp.singular_values.first().copied().unwrap_or(0.0);
    let trunc_tol = sigma_max * 1e-12 * ((dim_a * dim_a).max(dim_b * dim_b) as f64);

    let mut strengths = Vec::new();
    let mut factors_a = Vec::new();
    let mut factors_b = Vec::new();
    for (l, &s) in decomp.singular_values.iter().enumerate() {
        if s <= trunc_tol {
            break;
        }
        strengths.push(s);
        factors_a.push(ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            decomp.u[(i * dim_a + j, l)]
        }));
        factors_b.push(ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
            decomp.v[(i * dim_b + j, l)].conj()
        }));
    }

    Ok(OperatorSchmidt {
        strengths,
        factors_a,
        factors_b,
    })
}
