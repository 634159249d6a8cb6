//! Exact L-functions of exponential sums over finite fields and mechanical
//! checks of their p-adic unit-root congruences.
//!
//! The crate is layered bottom-up:
//!
//! * [`fields`]: the tower `F_p ⊆ F_q ⊆ F_{q^m}` with traces, Frobenius and embeddings.
//! * [`cyclotomic`]: exact `Q(ζ_p)` arithmetic, the character `ψ`, and `ord_π`.
//! * [`polyalg`]: sparse multivariate polynomials, the text grammar, factor
//!   degree profiles and squarefreeness certificates.
//! * [`expsums`]: exponential sums and point counts by enumeration.
//! * [`lseries`]: exponentials of power sums, one-variable L-polynomials,
//!   Newton polygons and Berlekamp–Massey reconstruction.
//! * [`cartier`]: the operator `ψ_p ∘ g^{p-1}` on `R_d` and `W_d` and its Fredholm determinant.
//! * [`theorems`]: verification drivers producing [`report::VerificationReport`]s.

pub mod arith;
pub mod cartier;
pub mod cyclotomic;
pub mod error;
pub mod expsums;
pub mod field;
pub mod fields;
pub mod lseries;
pub mod polyalg;
pub mod report;
pub mod theorems;
pub mod upoly;

pub use error::{Error, Result};

/// Crate version recorded in report metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
