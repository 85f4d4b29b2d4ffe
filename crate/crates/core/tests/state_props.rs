//! Structural properties of states, measurements and decompositions:
//! unital/trace-preserving/positive measurement map, majorization of the
//! post-measurement spectrum, Schmidt-marginal consistency, and the local
//! unitary invariance of operator Schmidt strengths.

use emin_core::linalg::{eig_hermitian, kron, ComplexMatrix, Subsystem};
use emin_core::sampling::{
    haar_state_vector, haar_unitary, sample_state, sample_state_diagonal_marginal, Purity,
    RngStream,
};
use emin_core::state::{
    marginal_basis, measure_local, operator_schmidt, schmidt_pure, BipartiteState,
    MeasurementBasis, DEFAULT_DEGENERACY_TOL,
};
use emin_core::verify::majorizes;

fn dims_for(case: u64) -> (usize, usize) {
    [(2usize, 2usize), (2, 3), (3, 2), (3, 3)][(case % 4) as usize]
}

#[test]
fn measurement_output_is_majorized_by_input() {
    for case in 0..500u64 {
        let (da, db) = dims_for(case);
        let purity = if case % 2 == 0 {
            Purity::Pure
        } else {
            Purity::Mixed { rank: da * db }
        };
        let state = sample_state(da, db, purity, RngStream::new(0x5A10, case));
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let measured = measure_local(&state, &basis).unwrap();
        assert!(
            majorizes(
                &state.eigenvalues_clamped(),
                &measured.eigenvalues_clamped(),
                1e-9
            ),
            "majorization violated at case {case}"
        );
    }
}

#[test]
fn measurement_is_unital_trace_preserving_positive() {
    // On the maximally mixed state the eigenbasis is computational and every
    // arithmetic step is exact, so the fixed point holds bit-for-bit.
    for (da, db) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let dim = da * db;
        let mixed =
            BipartiteState::new(da, db, ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
                .unwrap();
        let basis = marginal_basis(&mixed, DEFAULT_DEGENERACY_TOL);
        assert!(basis.degenerate_marginal());
        let measured = measure_local(&mixed, &basis).unwrap();
        assert_eq!(measured.rho().data(), mixed.rho().data());

        // An arbitrary rotated basis must still fix it to numerical precision.
        let mut rng = RngStream::new(0x0417, (da * 10 + db) as u64).rng();
        let u = haar_unitary(da, &mut rng);
        let rotated = MeasurementBasis::from_orthonormal_columns(&u).unwrap();
        let measured = measure_local(&mixed, &rotated).unwrap();
        assert!(measured.rho().approx_eq(mixed.rho(), 1e-14));
    }

    for case in 0..100u64 {
        let (da, db) = dims_for(case);
        let state = sample_state(
            da,
            db,
            Purity::Mixed { rank: da * db },
            RngStream::new(0x0418, case),
        );
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let measured = measure_local(&state, &basis).unwrap();
        let spectrum = measured.eigenvalues_clamped();
        assert!((spectrum.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(spectrum.iter().all(|&x| x >= 0.0));
    }
}

#[test]
fn measurement_preserves_the_measured_marginal() {
    for case in 0..100u64 {
        let (da, db) = dims_for(case);
        let state = sample_state(da, db, Purity::Pure, RngStream::new(0x0419, case));
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        let measured = measure_local(&state, &basis).unwrap();
        let before = state.marginal(Subsystem::A);
        let after = measured.marginal(Subsystem::A);
        assert!(before.approx_eq(&after, 1e-10));
    }
}

#[test]
fn schmidt_coefficients_match_marginal_spectrum() {
    for case in 0..200u64 {
        let (da, db) = dims_for(case);
        let mut rng = RngStream::new(0x5C33, case).rng();
        let psi = haar_state_vector(da * db, &mut rng);
        let schmidt = schmidt_pure(&psi, da, db).unwrap();

        let state = BipartiteState::from_pure(&psi, da, db).unwrap();
        let mut marginal_eigs = eig_hermitian(&state.marginal(Subsystem::A))
            .unwrap()
            .eigenvalues;
        marginal_eigs.reverse();

        let k = da.min(db);
        assert_eq!(schmidt.coefficients().len(), k);
        for (lam, mu) in schmidt.coefficients().iter().zip(marginal_eigs.iter()) {
            assert!(
                (lam - mu).abs() < 1e-10,
                "Schmidt coefficient {lam} vs marginal eigenvalue {mu}"
            );
        }
        let total: f64 = schmidt.coefficients().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);

        // Reconstruction up to a global phase.
        let rec = schmidt.reconstruct();
        let overlap: num_complex::Complex64 =
            rec.iter().zip(&psi).map(|(r, p)| r.conj() * p).sum();
        assert!(overlap.norm_sqr() > 1.0 - 1e-10);
    }
}

#[test]
fn operator_schmidt_strengths_are_local_unitary_invariant() {
    for case in 0..100u64 {
        let (da, db) = dims_for(case);
        let mut rng = RngStream::new(0x05CC, case).rng();
        let h = emin_core::sampling::gue_matrix(da * db, &mut rng);
        let ua = haar_unitary(da, &mut rng);
        let ub = haar_unitary(db, &mut rng);

        let local = kron(&ua, &ub);
        let rotated = &(&local * &h) * &local.adjoint();

        let original = operator_schmidt(&h, da, db).unwrap();
        let transformed = operator_schmidt(&rotated, da, db).unwrap();

        assert_eq!(original.len(), transformed.len(), "rank changed at case {case}");
        for (s, t) in original.strengths().iter().zip(transformed.strengths()) {
            assert!(
                (s - t).abs() < 1e-9 * (1.0 + s),
                "strength drifted under local unitaries: {s} vs {t}"
            );
        }
    }
}

#[test]
fn diagonal_marginal_sampler_feeds_computational_basis() {
    // The measurement basis derived from a diagonal-marginal draw coincides
    // with the computational basis, so measuring is pure dephasing of the
    // A-side off-diagonal blocks.
    for case in 0..50u64 {
        let state = sample_state_diagonal_marginal(
            2,
            2,
            Purity::Mixed { rank: 4 },
            RngStream::new(0xD1A6, case),
        );
        let basis = marginal_basis(&state, DEFAULT_DEGENERACY_TOL);
        if basis.degenerate_marginal() {
            continue;
        }
        for p in basis.projectors() {
            assert!(p[(0, 1)].norm() < 1e-9, "projector not computational");
        }
    }
}
