//! Exact-arithmetic engine for graded Frobenius algebras and the operations
//! they induce on Hochschild cochains and decorated surfaces.
//!
//! The crate is organized in layers:
//!
//! - [`scalar`] and [`tensor`]: exact rationals, graded bases, sparse
//!   tensors and Koszul-signed structural operations;
//! - [`frobenius`]: algebra construction/validation and the derived
//!   structure (pairing, Casimir element, comultiplication, Euler class,
//!   iterated integrals);
//! - [`correlator`]: cyclic-word brackets, the closed-form surface
//!   correlator, cut-invariance verifiers and slot dualization;
//! - [`hochschild`]: cochains in the dual representation, the Hochschild
//!   differential, cup product, the degree-1 coproduct with its boundary
//!   operations and the normalized/reduced projections;
//! - [`descriptors`]: degree and duality arithmetic for operation
//!   signatures;
//! - [`selftest`]: the runnable identity suite shared by the CLI and the
//!   acceptance tests.
//!
//! All computations are exact; there is no floating point anywhere.

pub mod builtins;
pub mod correlator;
pub mod descriptors;
pub mod error;
pub mod frobenius;
pub mod hochschild;
pub mod scalar;
pub mod selftest;
pub mod tensor;

pub use error::{Error, Result};
pub use frobenius::{AlgebraElement, AlgebraSpec, FrobeniusAlgebra};
pub use scalar::Scalar;
pub use tensor::{combine, tensor_product, AlgebraId, GradedBasis, TensorElement};
