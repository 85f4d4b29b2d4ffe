//! Seeded random ensembles: Haar pure states, Ginibre density matrices,
//! GUE Hamiltonians, and the diagonal-marginal ensemble used by the
//! experiment runner.
//!
//! Reproducibility contract: a sampler is a pure function of its
//! [`RngStream`]. Identical (master_seed, sample_index) pairs produce
//! bit-identical output on every run; distinct indices get statistically
//! independent ChaCha streams. Callers that need several independent draws
//! per sample derive one stream per object via [`RngStream::substream`].

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::ergotropy::HamiltonianSpec;
use crate::linalg::{eig_hermitian, kron, partial_trace, ComplexMatrix, Subsystem};
use crate::state::BipartiteState;

/// Address of one deterministic random draw: a master seed plus a sample
/// index mapped to an independent ChaCha stream.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub master_seed: u64,
    pub sample_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, sample_index: u64) -> Self {
        RngStream {
            master_seed,
            sample_index,
        }
    }

    /// Generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.sample_index);
        rng
    }

    /// Derived stream for an auxiliary object drawn alongside this sample
    /// (same index, decorrelated seed). Golden-ratio mixing keeps distinct
    /// tags far apart in seed space.
    pub fn substream(&self, tag: u64) -> RngStream {
        RngStream {
            master_seed: self
                .master_seed
                .wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            sample_index: self.sample_index,
        }
    }
}

/// Pure versus full- or fixed-rank mixed draws.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Purity {
    Pure,
    Mixed { rank: usize },
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniform draw on [lo, hi).
pub fn uniform_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    use rand::Rng;
    rng.random_range(lo..hi)
}

/// Complex standard Gaussian: re then im, each N(0, 1).
fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re = standard_normal(rng);
    let im = standard_normal(rng);
    C64::new(re, im)
}

/// Ginibre matrix: independent complex standard Gaussian entries, drawn in
/// row-major order.
pub fn ginibre_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        data.push(complex_gaussian(rng));
    }
    ComplexMatrix::from_vec(rows, cols, data)
}

/// Haar-random unit vector, via a normalized complex Gaussian draw.
pub fn haar_state_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    loop {
        let raw: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return raw.iter().map(|z| z / norm).collect();
        }
    }
}

/// Random density matrix G G†/Tr(G G†) with G a dim x rank Ginibre draw.
pub fn ginibre_density(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    assert!(rank >= 1 && rank <= dim, "rank must lie in 1..=dim");
    loop {
        let g = ginibre_matrix(dim, rank, rng);
        let w = &g * &g.adjoint();
        let trace = w.trace().re;
        if trace > 1e-9 {
            return w.scale(1.0 / trace);
        }
    }
}

/// Haar-random unitary: modified Gram-Schmidt QR of a Ginibre draw with the
/// positive-diagonal convention, which makes the factorization unique and
/// the Q factor Haar-distributed.
pub fn haar_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    loop {
        let g = ginibre_matrix(dim, dim, rng);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        let mut ok = true;
        for k in 0..dim {
            let mut v = g.col(k);
            for prev in &cols {
                let overlap: C64 = prev.iter().zip(&v).map(|(p, c)| p.conj() * c).sum();
                for (c, p) in v.iter_mut().zip(prev) {
                    *c -= overlap * p;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-9 {
                ok = false;
                break;
            }
            for c in v.iter_mut() {
                *c /= norm;
            }
            cols.push(v);
        }
        if ok {
            return ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i]);
        }
    }
}

/// GUE-style Hermitian draw: (G + G†)/2 of a square Ginibre matrix.
pub fn gue_matrix(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre_matrix(dim, dim, rng);
    (&g + &g.adjoint()).scale(0.5)
}

/// Random bipartite state with no constraint on the marginal.
pub fn sample_state(dim_a: usize, dim_b: usize, purity: Purity, stream: RngStream) -> BipartiteState {
    let mut rng = stream.rng();
    let dim = dim_a * dim_b;
    let rho = match purity {
        Purity::Pure => {
            let psi = haar_state_vector(dim, &mut rng);
            ComplexMatrix::outer(&psi, &psi)
        }
        Purity::Mixed { rank } => ginibre_density(dim, rank, &mut rng),
    };
    BipartiteState::new(dim_a, dim_b, rho).expect("random draw is a valid state")
}

/// Random bipartite state whose A-marginal is diagonal in the computational
/// basis with descending populations.
///
/// Realized by a local rotation of a Haar/Ginibre draw: diagonalize the
/// marginal and absorb its eigenbasis into subsystem A. The rotation cannot
/// change the marginal spectrum, so the induced ensemble is the rotated
/// Haar/Ginibre measure with exact constraint satisfaction.
pub fn sample_state_diagonal_marginal(
    dim_a: usize,
    dim_b: usize,
    purity: Purity,
    stream: RngStream,
) -> BipartiteState {
    let raw = sample_state(dim_a, dim_b, purity, stream);
    let rho_a = partial_trace(raw.rho(), dim_a, dim_b, Subsystem::A).expect("dims consistent");
    let eig = eig_hermitian(&rho_a).expect("marginal is Hermitian");

    let mut order: Vec<usize> = (0..dim_a).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let basis = ComplexMatrix::from_fn(dim_a, dim_a, |i, k| eig.eigenvectors[(i, order[k])]);

    let rotation = kron(&basis, &ComplexMatrix::identity(dim_b));
    let rotated = &(&rotation.adjoint() * raw.rho()) * &rotation;
    BipartiteState::new(dim_a, dim_b, rotated).expect("local rotation preserves validity")
}

/// Random non-interacting Hamiltonian: independent GUE local parts assembled
/// as A ⊗ I + I ⊗ B.
pub fn sample_noninteracting_hamiltonian(
    dim_a: usize,
    dim_b: usize,
    stream: RngStream,
) -> HamiltonianSpec {
    let mut rng = stream.rng();
    let a = gue_matrix(dim_a, &mut rng);
    let b = gue_matrix(dim_b, &mut rng);
    HamiltonianSpec::non_interacting(a, b).expect("GUE draws are Hermitian")
}

/// Random interacting Hamiltonian: one GUE draw on the full bipartite space.
pub fn sample_hamiltonian(dim_a: usize, dim_b: usize, stream: RngStream) -> HamiltonianSpec {
    let mut rng = stream.rng();
    let h = gue_matrix(dim_a * dim_b, &mut rng);
    HamiltonianSpec::interacting(h, dim_a, dim_b).expect("GUE draw is Hermitian")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let stream = RngStream::new(42, 7);
        let a = sample_state_diagonal_marginal(2, 2, Purity::Pure, stream);
        let b = sample_state_diagonal_marginal(2, 2, Purity::Pure, stream);
        assert_eq!(a.rho().data(), b.rho().data());

        let ha = sample_hamiltonian(2, 2, stream);
        let hb = sample_hamiltonian(2, 2, stream);
        assert_eq!(ha.total().data(), hb.total().data());
    }

    #[test]
    fn distinct_indices_decorrelate() {
        let a = sample_state(2, 2, Purity::Pure, RngStream::new(42, 0));
        let b = sample_state(2, 2, Purity::Pure, RngStream::new(42, 1));
        assert!(!a.rho().approx_eq(b.rho(), 1e-6));
    }

    #[test]
    fn substreams_differ_from_parent() {
        let stream = RngStream::new(42, 3);
        let h1 = sample_hamiltonian(2, 2, stream);
        let h2 = sample_hamiltonian(2, 2, stream.substream(1));
        assert!(!h1.total().approx_eq(h2.total(), 1e-6));
    }

    #[test]
    fn diagonal_marginal_by_construction() {
        for idx in 0..50 {
            let state = sample_state_diagonal_marginal(
                2,
                3,
                Purity::Mixed { rank: 6 },
                RngStream::new(11, idx),
            );
            let rho_a = state.marginal(Subsystem::A);
            assert!(rho_a[(0, 1)].norm() < 1e-10);
            assert!(rho_a[(1, 0)].norm() < 1e-10);
            assert!(rho_a[(0, 0)].re >= rho_a[(1, 1)].re - 1e-12);
        }
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = RngStream::new(5, 0).rng();
        let u = haar_unitary(4, &mut rng);
        let gram = &u.adjoint() * &u;
        assert!(gram.approx_eq(&ComplexMatrix::identity(4), 1e-12));
    }

    #[test]
    fn noninteracting_draw_has_consistent_structure() {
        let h = sample_noninteracting_hamiltonian(2, 3, RngStream::new(9, 4));
        let (a, b) = h.local_parts().unwrap();
        let rebuilt = &kron(a, &ComplexMatrix::identity(3)) + &kron(&ComplexMatrix::identity(2), b);
        assert!(rebuilt.approx_eq(h.total(), 1e-12));
    }

    #[test]
    fn sampled_states_are_valid() {
        for idx in 0..20 {
            let stream = RngStream::new(3, idx);
            let pure = sample_state(2, 2, Purity::Pure, stream);
            assert_eq!(pure.dim(), 4);
            let mixed = sample_state(2, 3, Purity::Mixed { rank: 4 }, stream.substream(2));
            assert_eq!(mixed.dim(), 6);
        }
    }
}
