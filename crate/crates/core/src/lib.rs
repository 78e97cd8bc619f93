//! Numerical laboratory for generalized-commutator norm inequalities.
//!
//! The crate provides, bottom up:
//!
//! * [`matrix`]: dense complex matrices (column-major), Kronecker products,
//!   and the `vec`/`unvec` reshapes;
//! * [`eigen`]: a cyclic Jacobi eigensolver for Hermitian matrices;
//! * [`mod@svd`]: singular values and the spectral / Ky Fan (2,2) norms;
//! * [`commutator`]: the generalized commutator `ABC - CBA`, its matrix
//!   representation `K = C^T (x) A - A^T (x) C`, and its structural
//!   certificates (eigenvalue pairing, PSD domination);
//! * [`bounds`]: the closed catalog of commutator norm bounds with uniform
//!   slack/ratio evaluation;
//! * [`search`]: seeded random sampling and hill-climb ascent on bound
//!   ratios, plus the registry of exact counterexamples.
//!
//! Everything is a pure function over immutable inputs; there is no global
//! state and all entry points are safe to call concurrently.

pub mod bounds;
pub mod commutator;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod search;
pub mod svd;

pub use bounds::{
    eval_all, eval_bound, implication_chain_check, numerical_rank, BoundId, BoundOutcome,
    BoundStatus, InequalityReport, Tolerance, ALL_BOUNDS,
};
pub use commutator::{
    build_k, gen_commutator, kron_diff_sq, paired_eigvec, pairing_report, psd_certificate,
    Operand, PairingReport, PsdCertificate, TripleInstance,
};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, EigenResult};
pub use error::{Error, Result};
pub use matrix::CMat;
pub use search::{
    check_counterexamples, equality_witnesses, gaussian_matrix, hill_climb, hill_climb_from,
    known_counterexamples, ratio_objective, sample_instance, stream_rng, Counterexample,
    SampleDist, SearchConfig, SearchRecord, Termination,
};
pub use svd::{is_psd, ky_fan_22, spectral_norm, svd, SvdResult};
