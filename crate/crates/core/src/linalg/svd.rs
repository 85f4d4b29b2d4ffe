//! Singular value decomposition built on the Hermitian eigensolver.
//!
//! For the matrix sizes this crate handles (state reshapes and realigned
//! Hamiltonians, at most ~64x64) the Gram-matrix route is accurate enough:
//! decompose M M†, recover right vectors as M† u / σ, then re-orthonormalize
//! and complete the right basis so the factor contracts hold even for
//! rank-deficient input.

use num_complex::Complex64 as C64;

use super::eig::eig_hermitian;
use super::ComplexMatrix;
use crate::error::Result;

/// Thin SVD with zero singular values retained: `m = u diag(σ) v†` where
/// σ has length min(rows, cols) and descends, and both `u` and `v` carry
/// orthonormal columns (completed arbitrarily but deterministically past the
/// numerical rank).
#[derive(Clone, Debug)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn rank(&self, tol: f64) -> usize {
        self.singular_values.iter().filter(|&&s| s > tol).count()
    }

    /// u diag(σ) v†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.singular_values.len();
        let mut out = ComplexMatrix::zeros(self.u.rows(), self.v.rows());
        for l in 0..k {
            let s = self.singular_values[l];
            if s == 0.0 {
                continue;
            }
            for i in 0..self.u.rows() {
                let f = self.u[(i, l)] * s;
                for j in 0..self.v.rows() {
                    out[(i, j)] += f * self.v[(j, l)].conj();
                }
            }
        }
        out
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() > m.cols() {
        let flipped = svd(&m.adjoint())?;
        return Ok(Svd {
            singular_values: flipped.singular_values,
            u: flipped.v,
            v: flipped.u,
        });
    }

    let k = m.rows();
    let gram = m * &m.adjoint();
    let eig = eig_hermitian(&gram)?;

    let mut singular_values = Vec::with_capacity(k);
    let mut u = ComplexMatrix::zeros(k, k);
    for l in 0..k {
        // Ascending eigenvalues, so walk them backwards.
        let src = k - 1 - l;
        singular_values.push(eig.eigenvalues[src].max(0.0).sqrt());
        for i in 0..k {
            u[(i, l)] = eig.eigenvectors[(i, src)];
        }
    }

    // The Gram route cannot resolve singular values below √eps · σ_max
    // (~1.5e-8 relative): a true zero reports at that noise floor with a
    // meaningless right vector. Everything under 1e-7 relative is therefore
    // declared zero and its right vector replaced by a basis completion.
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let zero_tol = sigma_max * 1e-7;

    let adj = m.adjoint();
    let mut v_cols: Vec<Vec<C64>> = Vec::with_capacity(k);
    for l in 0..k {
        let s = singular_values[l];
        if s <= zero_tol {
            break;
        }
        let mut col = adj.mul_vec(&u.col(l));
        for c in col.iter_mut() {
            *c /= s;
        }
        // Modified Gram-Schmidt pass to scrub the O(eps·(σmax/σ)²) loss of
        // orthogonality that the Gram route leaves on small singular values.
        for prev in &v_cols {
            let overlap: C64 = prev.iter().zip(&col).map(|(p, c)| p.conj() * c).sum();
            for (c, p) in col.iter_mut().zip(prev) {
                *c -= overlap * p;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        for c in col.iter_mut() {
            *c /= norm;
        }
        v_cols.push(col);
    }

    // Trailing (numerically zero) singular directions: complete the right
    // basis from canonical vectors so v always has k orthonormal columns.
    let dim = m.cols();
    let mut candidate = 0;
    while v_cols.len() < k {
        assert!(candidate < dim, "basis completion ran out of candidates");
        let mut col = vec![C64::new(0.0, 0.0); dim];
        col[candidate] = C64::new(1.0, 0.0);
        candidate += 1;
        for prev in &v_cols {
            let overlap: C64 = prev.iter().zip(&col).map(|(p, c)| p.conj() * c).sum();
            for (c, p) in col.iter_mut().zip(prev) {
                *c -= overlap * p;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 0.5 {
            continue;
        }
        for c in col.iter_mut() {
            *c /= norm;
        }
        v_cols.push(col);
    }

    let v = ComplexMatrix::from_fn(dim, k, |i, l| v_cols[l][i]);
    // Anything at or below the zero threshold is reported as exactly zero.
    for s in singular_values.iter_mut() {
        if *s <= zero_tol {
            *s = 0.0;
        }
    }
    Ok(Svd {
        singular_values,
        u,
        v,
    })
}
