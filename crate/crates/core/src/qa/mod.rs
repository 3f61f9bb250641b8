//! Presheaves on finite sets: the subset-decomposition tensor, commutative
//! algebra objects, the composition product, algebrads, and evaluation on
//! finite commutative monoids.

mod algebra;
mod algebrad;
mod compose;
mod eval;
mod presheaf;

pub use algebra::{comm_alg_check, comm_alg_check_with, functions_algebra, CommAlgObject};
pub use algebrad::{algebrad_check, algebrad_check_with, functions_algebrad, terminal_algebrad, QaAlgebrad};
pub use compose::{compose_qa, QaComposite, QaElement};
pub use eval::{eval_qa, FiniteMonoid, QaEvalClass, QaEvaluation};
pub use presheaf::{
    day_tensor, is_natural_bijection, representable, terminal, unit_qa, validate_presheaf, FinPresheaf,
};
