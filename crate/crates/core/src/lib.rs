//! Numerical library for sandwiched Renyi divergences on finite-dimensional
//! quantum states.
//!
//! # Scope
//!
//! | area        | contents                                                        |
//! |-------------|-----------------------------------------------------------------|
//! | linalg      | Hermitian eigensolves, matrix powers, Schatten norms, partial   |
//! |             | trace, seeded random states                                     |
//! | divergence  | sandwiched / Petz / geometric Renyi trace functionals, Umegaki  |
//! |             | relative entropy, max-divergence                                |
//! | variational | optimized quantities: divergence to a convex set, conditional   |
//! |             | entropies, mutual informations, CMI, separable distance         |
//! | cnorms      | the amalgamation norm family and its dual, with law verifiers   |
//! | bounds      | closed-form continuity-bound evaluators (three approaches,      |
//! |             | limits, ALAFF family, Markov certificates)                      |
//! | markov      | Petz / rotated / universal recovery maps and approximate        |
//! |             | Markov-chain certification                                      |
//! | harness     | sweep grids, verification suites, CSV/JSON serialization        |
//!
//! # Key invariants
//!
//! - All logarithms are natural (nats); this is a global convention.
//! - Eigenvalues below `1e-12 * lambda_max` count as exact zeros for
//!   pseudo-inverse powers and support projections.
//! - Every randomized routine takes an explicit seed and is deterministic.
//! - Alpha parameters live in `[1/2, 1) U (1, inf)` plus the symbolic limits
//!   `One` and `Inf`; out-of-range values are unrepresentable.

pub mod bounds;
pub mod cnorms;
pub mod divergence;
pub mod error;
pub mod exec;
pub mod harness;
pub mod linalg;
pub mod markov;
pub mod variational;

pub use error::{Error, Result};
