//! Desk-scale computation with three composition calculi over finite sets:
//!
//! * [`qo`]: symmetric sequences, their induction tensor product and
//!   composition product, symmetric operads and their algebras;
//! * [`qc`]: finitary functors `ℕ → Sets`, their composition, algebraic
//!   monads and their modules;
//! * [`qa`]: presheaves on finite sets with the subset-decomposition tensor,
//!   commutative algebra objects and the algebrads they carry.
//!
//! Every structure is truncated at a maximal arity `N` and every law is
//! checked element-wise within it. [`oracle`] recomputes the same answers by
//! brute force for cross-checking.

pub mod corpus;
pub mod document;
mod error;
pub mod finset;
pub mod oracle;
pub mod qa;
pub mod qc;
pub mod qo;
pub mod report;

pub use error::{Error, Result};
