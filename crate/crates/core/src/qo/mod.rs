//! Symmetric sequences: the induction tensor product, the composition
//! product, symmetric operads, their algebras, and evaluation on finite sets.

mod algebra;
mod compose;
mod operad;
mod symseq;

pub use algebra::{algebra_check, algebra_check_with, free_algebra, OperadAlgebra};
pub use compose::{compose, Composite, QoElement};
pub use operad::{operad_check_with, operad_monoid_check, substitution_shapes, Operad};
pub use symseq::{
    eval, representable, tensor, tensor_many, unit_comp, unit_tensor, validate_symseq, EvalClass,
    Evaluation, SymSeq,
};
