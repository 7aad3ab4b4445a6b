//! Elliptic functions, modular forms, Jacobi theta functions and thermal
//! conformal-field-theory correlators.
//!
//! The crate has two evaluation lanes that cross-check each other:
//!
//! * **exact**: truncated Puiseux/Laurent series in `q` with arbitrary-precision
//!   rational coefficients ([`qseries`]), used to verify identities such as
//!   Δ = (20G₄)³ − 3(7G₆)² with zero tolerance;
//! * **numeric**: complex evaluation of the same objects on the upper half
//!   plane ([`elliptic`], [`modforms`], [`cft`], [`thermo`]) with explicit
//!   truncation tail bounds.
//!
//! Supporting machinery: exact SL(2,ℤ) operations ([`modgroup`]) and integral
//! lattices with vertex-algebra characters ([`lattice`]).

pub mod cft;
pub mod elliptic;
pub mod error;
pub mod lattice;
pub mod modforms;
pub mod modgroup;
pub mod qseries;
pub mod thermo;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
