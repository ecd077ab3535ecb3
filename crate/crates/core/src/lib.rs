//! Exact-arithmetic cohomology tables of coherent sheaves on projective
//! space: closed-form supernatural generators, the positivity functionals
//! that cut out the realizable cone, and the greedy decomposition of an
//! admissible table into a chain of generators with positive rational
//! coefficients.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. Tables live on finite degree
//! windows with optional polynomial tails, and operations fail rather than
//! extrapolate past what they can evaluate.

pub mod decomposition;
pub mod error;
pub mod format;
pub mod functionals;
pub mod num;
pub mod poly;
pub mod render;
pub mod roots;
pub mod sheaves;
pub mod suites;
pub mod supernatural;
pub mod table;

pub use decomposition::{
    decompose, decompose_step, decompose_with, reconstruct, verify_chain, Decomposition,
    DecompositionStatus, DecompositionStep, DecomposeOptions,
};
pub use error::{Error, Result};
pub use functionals::{
    certificate_search, evaluate, interpolation_check, pairing, pairing_bounded, pure_betti,
    vandermonde_weight, BettiTable, BoundSequence, Certificate, DegreeSequence,
};
pub use num::Rational;
pub use poly::Polynomial;
pub use render::render_grid;
pub use roots::RootSequence;
pub use sheaves::{direct_sum, twist, StockKind, StockSheaf};
pub use supernatural::SupernaturalSpec;
pub use table::{AdmissibilityReport, Bound, CohomologyTable, Corner, Support, Tails, Window};
