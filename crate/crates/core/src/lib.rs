//! Invariant and equivariant linear tensor layers for graphs with typed
//! nodes, together with exact oracles for the dimensions of invariant
//! spaces under symmetric, cyclic and translation groups.
//!
//! Modules:
//!
//! - [`combinat`]: Stirling, Bell and generalized Bell numbers; set and
//!   colored-partition enumeration.
//! - [`permgroup`]: permutations, closure, tuple orbits, Burnside counts.
//! - [`tensor_basis`]: the orthogonal indicator basis of typed-invariant
//!   k-tensor functionals and equivariant maps.
//! - [`layers`]: learnable order-1 invariant pools, equivariant maps and
//!   invariant networks.
//! - [`cyclic`]: cyclic and translation invariant dimensions and bases,
//!   and the 2-D discrete Fourier transform that diagonalizes translations.
//! - [`zero_sum`]: zero-sum sequences over `Z_d x Z_d`, Davenport constant
//!   search and invariant-monomial factorization.
//! - [`graph`]: graph6, canonical forms, small-graph enumeration and
//!   automorphism groups.
//! - [`invariant_ring`]: graded invariant dimensions, Molien series,
//!   generator degrees and the per-graph tensor-order reports.

pub mod budget;
pub mod combinat;
pub mod cyclic;
pub mod error;
pub mod graph;
pub mod invariant_ring;
pub mod layers;
pub mod linalg;
pub mod permgroup;
pub mod selftest;
pub mod tensor_basis;
pub mod zero_sum;

pub use budget::Budget;
pub use error::{Error, Result};

/// Crate version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
