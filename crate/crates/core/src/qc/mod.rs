//! Finitary functors on finite sets, their composition, algebraic monads
//! given by substitution maps, and modules over them.

mod functor;
mod module;
mod monad;

pub use functor::{
    compose, eval, product, validate_functor, FinFunctor, Finitary, Formula, FormulaFunctor,
    TABLE_CAP,
};
pub use module::{free_module, module_check, module_check_with, module_morphisms, SigmaModule};
pub use monad::{formula_monad, monad_check, monad_check_with, AlgebraicMonad};
