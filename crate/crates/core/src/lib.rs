//! Constacyclic codes over finite chain rings.
//!
//! The crate decomposes `R[X]/<X^n - lambda>` over a Galois ring
//! `R = GR(p^t, r)` into its primitive idempotent components, describes every
//! `lambda`-constacyclic code by a vector of gamma-exponents (one per
//! component), and uses that description to compute cardinalities, duals,
//! annihilators and self-dual codes. The [`oracle`] module provides
//! brute-force ground truth for small instances.

pub mod chain_ring;
pub mod code;
pub mod error;
pub mod factorization;
pub mod idempotent;
pub mod oracle;
pub mod par;
pub mod polynomial;
pub mod selfdual;

pub use chain_ring::{ArithKind, Elem, RingElement, RingParams, RingSpec};
pub use code::{build_self_dual, lambda_transport, ConstacyclicCode, SelfDuality};
pub use error::{Error, Result};
pub use factorization::{cyclotomic_cosets, factor_constacyclic_modulus, CosetTable};
pub use idempotent::{primitive_idempotent_set, reciprocal_matching, IdempotentSet, ReciprocalMatching};
pub use par::Execution;
pub use polynomial::{Ambient, PolyArithKind, Polynomial};
pub use selfdual::{exists_nontrivial_selfdual, kenz_check, minus_one_in_powers, ExistenceQuery, Kind};
