//! Ergotropy, passive states, and ergotropy-based measurement-induced
//! nonlocality (EMIN) for finite-dimensional bipartite quantum systems.
//!
//! The crate is organized as a small stack:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition, SVD,
//!   Kronecker products, partial traces, and spectral function calculus;
//! - [`state`]: validated bipartite states, Schmidt and operator Schmidt
//!   decompositions, Hilbert-Schmidt coordinates, and the locally invariant
//!   projective measurement;
//! - [`ergotropy`]: passive energies, ergotropy, the ergotropic gap, and the
//!   nonlocality quantifier N_ξ in four mutually checking routes;
//! - [`gibbs`]: entropies, thermal states and entropy bounds on N_ξ;
//! - [`models`] and [`sampling`]: the qubit-oscillator model and the seeded
//!   random ensembles behind the Monte Carlo experiments;
//! - [`verify`]: brute-force oracles kept independent of the code they check.
//!
//! Everything is a pure function over immutable values and safe to call from
//! any number of threads.

pub mod ergotropy;
pub mod error;
pub mod gibbs;
pub mod linalg;
pub mod models;
pub mod sampling;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Subsystem, C64};

pub use ergotropy::{
    emin_direct, emin_maxent, emin_mixed_closed, emin_noninteracting, emin_pure_closed,
    ergotropic_gap, ergotropy, passive, ErgotropyReport, HamiltonianSpec, Structure,
};
pub use gibbs::{emin_bounds, entropy, gibbs_state, relative_entropy, EminBoundsReport};
pub use models::{jaynes_cummings, JcParams};
pub use sampling::{
    sample_hamiltonian, sample_noninteracting_hamiltonian, sample_state,
    sample_state_diagonal_marginal, Purity, RngStream,
};
pub use state::{
    geometric_min, hs_expand, marginal_basis, measure_local, operator_schmidt, schmidt_pure,
    BipartiteState, HsExpansion, MeasurementBasis, OperatorSchmidt, PureSchmidt,
    DEFAULT_DEGENERACY_TOL,
};
