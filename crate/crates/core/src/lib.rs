//! Exact Shapovalov-form Gram determinants on the basic representation of
//! affine ADE Kac-Moody algebras (untwisted and twisted).
//!
//! The crate computes, entirely in exact arithmetic:
//!
//! * the type constants `ℓ, k, α, β` and the twisted finite root data of the
//!   eight affine families `A_ℓ^(1)`, `D_ℓ^(1)`, `E_ℓ^(1)`, `A_{2ℓ-1}^(2)`,
//!   `A_{2ℓ}^(2)`, `D_{ℓ+1}^(2)`, `E_6^(2)`, `D_4^(3)` ([`roots`]);
//! * the matrices `A^(n)` and their determinants;
//! * the Gram matrices of the Shapovalov form and of the contravariant form on
//!   the polynomial model `B` of the basic representation, together with the
//!   transition matrices relating the `x`, `y` and `z` bases ([`gram`]);
//! * the closed-form exponents `a(d)`, `b(d)` both as partition sums
//!   ([`partitions`]) and as generating functions ([`series`]);
//! * Cartan-determinant exponents for blocks of symmetric groups and Hecke
//!   algebras, and for spin superblocks ([`blocks`]).

pub mod blocks;
pub mod check;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gram;
pub mod partitions;
pub mod roots;
pub mod series;

pub use error::{Error, Result};
pub use exact::{CycNumber, ExactMatrix, Rational};
pub use roots::{AffineType, FiniteRootData};

/// Built-in test roster used by `gram --roster` and `detA --roster`.
pub const ROSTER: [&str; 12] = [
    "A1^1", "A2^1", "A4^1", "D4^1", "E6^1", "A5^2", "A2^2", "A4^2", "D3^2", "D5^2", "E6^2", "D4^3",
];
