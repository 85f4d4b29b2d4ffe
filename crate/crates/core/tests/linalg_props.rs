//! Contract properties of the linear algebra kernel, checked against
//! independent oracles where one exists.

use emin_core::linalg::{
    eig_hermitian, func_hermitian, hs_norm_sq, kron, partial_trace, ComplexMatrix, Subsystem,
};
use emin_core::models::{jaynes_cummings, JcParams};
use emin_core::sampling::{ginibre_density, ginibre_matrix, gue_matrix, RngStream};
use num_complex::Complex64 as C64;

#[test]
fn eigen_reconstruction_over_random_hermitians() {
    let mut checked = 0;
    for case in 0..100u64 {
        let dim = 2 + (case % 15) as usize; // 2..=16
        let mut rng = RngStream::new(0xE16E, case).rng();
        let m = gue_matrix(dim, &mut rng);
        let eig = eig_hermitian(&m).unwrap();

        let residual = (&eig.reconstruct() - &m).frobenius_norm() / m.frobenius_norm();
        assert!(
            residual < 1e-10,
            "reconstruction residual {residual:.3e} at dim {dim}"
        );

        let gram = &eig.eigenvectors.adjoint() * &eig.eigenvectors;
        assert!(
            gram.approx_eq(&ComplexMatrix::identity(dim), 1e-10),
            "eigenvectors lost orthonormality at dim {dim}"
        );

        for pair in eig.eigenvalues.windows(2) {
            assert!(pair[0] <= pair[1]);
        }
        checked += 1;
    }
    assert_eq!(checked, 100);
}

#[test]
fn partial_trace_inverts_kron_of_density_factors() {
    for case in 0..50u64 {
        let (da, db) = [(2usize, 2usize), (2, 3), (3, 2), (3, 4)][(case % 4) as usize];
        let mut rng = RngStream::new(0x7A11, case).rng();
        let rho_a = ginibre_density(da, da, &mut rng);
        let rho_b = ginibre_density(db, db, &mut rng);
        let joint = kron(&rho_a, &rho_b);
        let got_a = partial_trace(&joint, da, db, Subsystem::A).unwrap();
        let got_b = partial_trace(&joint, da, db, Subsystem::B).unwrap();
        assert!(got_a.approx_eq(&rho_a, 1e-12));
        assert!(got_b.approx_eq(&rho_b, 1e-12));
    }
}

#[test]
fn partial_trace_preserves_trace_and_hermiticity() {
    for case in 0..30u64 {
        let mut rng = RngStream::new(0x7A12, case).rng();
        let rho = ginibre_density(6, 6, &mut rng);
        for keep in [Subsystem::A, Subsystem::B] {
            let marginal = partial_trace(&rho, 2, 3, keep).unwrap();
            assert!((marginal.trace() - rho.trace()).norm() < 1e-12);
            assert!(marginal.hermitian_deviation() < 1e-12);
        }
    }
}

#[test]
fn kron_trace_is_multiplicative_for_random_inputs() {
    for case in 0..30u64 {
        let mut rng = RngStream::new(0x12AB, case).rng();
        let a = ginibre_matrix(3, 3, &mut rng);
        let b = ginibre_matrix(4, 4, &mut rng);
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }
}

#[test]
fn spectral_mapping_property() {
    let functions: [(&str, fn(f64) -> f64); 3] = [
        ("exp/4", |x| (x / 4.0).exp()),
        ("square", |x| x * x),
        ("cubic", |x| x * x * x - 2.0 * x),
    ];
    for case in 0..30u64 {
        let dim = 2 + (case % 7) as usize;
        let mut rng = RngStream::new(0xF00D, case).rng();
        let m = gue_matrix(dim, &mut rng);
        let spectrum = eig_hermitian(&m).unwrap().eigenvalues;
        for (name, f) in functions {
            let fm = func_hermitian(&m, f).unwrap();
            let mut mapped: Vec<f64> = spectrum.iter().map(|&x| f(x)).collect();
            mapped.sort_by(f64::total_cmp);
            let got = eig_hermitian(&fm).unwrap().eigenvalues;
            for (g, w) in got.iter().zip(&mapped) {
                assert!(
                    (g - w).abs() < 1e-10 * (1.0 + w.abs()),
                    "spectral mapping failed for {name} at dim {dim}: {g} vs {w}"
                );
            }
        }
    }
}

#[test]
fn thermal_weights_match_spectrum_of_coupled_model() {
    // exp(-βH) for the coupled qubit-field Hamiltonian: positive definite,
    // with trace equal to the partition sum over the solver's spectrum.
    let h = jaynes_cummings(&JcParams::new(2.0, 2).unwrap());
    let beta = 1.0;
    let boltzmann = func_hermitian(h.total(), |x| (-beta * x).exp()).unwrap();
    let spectrum = eig_hermitian(h.total()).unwrap().eigenvalues;
    let z: f64 = spectrum.iter().map(|&e| (-beta * e).exp()).sum();
    assert!((boltzmann.trace().re - z).abs() < 1e-10 * z);
    assert!(boltzmann.trace().im.abs() < 1e-12);
    let eigs = eig_hermitian(&boltzmann).unwrap().eigenvalues;
    assert!(eigs[0] > 0.0);
}

// ---------------------------------------------------------------------------
// Characteristic-polynomial oracle: eigenvalues of a Hermitian matrix are the
// real roots of det(M − λI), located here by LU determinants and bisection —
// a path fully independent of the Jacobi solver.
// ---------------------------------------------------------------------------

/// det(M − λI) via complex LU with partial pivoting; real for Hermitian M.
fn char_poly(m: &ComplexMatrix, lambda: f64) -> f64 {
    let n = m.rows();
    let mut a: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = m[(i, j)];
                    if i == j {
                        v -= C64::new(lambda, 0.0);
                    }
                    v
                })
                .collect()
        })
        .collect();

    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))
            .unwrap();
        if a[pivot_row][col].norm() == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det.re
}

#[test]
fn characteristic_polynomial_root_oracle() {
    let mut rng = RngStream::new(0x0C0A, 0).rng();
    let m = gue_matrix(6, &mut rng);

    // Gershgorin interval containing every eigenvalue.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..6 {
        let radius: f64 = (0..6)
            .filter(|&j| j != i)
            .map(|j| m[(i, j)].norm())
            .sum();
        lo = lo.min(m[(i, i)].re - radius);
        hi = hi.max(m[(i, i)].re + radius);
    }

    let samples = 20_000;
    let step = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_p = char_poly(&m, prev_x);
    for k in 1..=samples {
        let x = lo + k as f64 * step;
        let p = char_poly(&m, x);
        if prev_p == 0.0 {
            roots.push(prev_x);
        } else if prev_p.signum() != p.signum() && p != 0.0 {
            let (mut a, mut b, mut pa) = (prev_x, x, prev_p);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let pm = char_poly(&m, mid);
                if pm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if pa.signum() == pm.signum() {
                    a = mid;
                    pa = pm;
                } else {
                    b = mid;
                }
                if b - a < 1e-13 {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_x = x;
        prev_p = p;
    }

    assert_eq!(roots.len(), 6, "oracle must isolate all six simple roots");
    let solver = eig_hermitian(&m).unwrap().eigenvalues;
    for (got, want) in solver.iter().zip(&roots) {
        assert!(
            (got - want).abs() < 1e-8,
            "solver {got} vs characteristic-polynomial root {want}"
        );
    }
}

#[test]
fn hs_norm_is_frobenius_squared() {
    let mut rng = RngStream::new(0xABCD, 0).rng();
    let m = ginibre_matrix(4, 4, &mut rng);
    let f = m.frobenius_norm();
    assert!((hs_norm_sq(&m) - f * f).abs() < 1e-10 * (1.0 + f * f));
}
