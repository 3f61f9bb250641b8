//! Independent brute-force recomputations: naive coequalizers with
//! stabilization detection, exhaustive law enumeration, equivariant
//! bijection search and a single-entry mutation harness.
//!
//! Nothing here shares code with the main algorithms beyond the `finset`
//! primitives and the table accessors of the structures under test.

mod iso;
mod laws;
mod mutation;
mod quotient;

pub use iso::bijection_search;
pub use laws::{
    algebrad_oracle, comm_alg_oracle, group_tables_agree, module_oracle, monad_oracle, operad_oracle,
};
pub use mutation::{
    sweep_algebrad, sweep_comm_alg, sweep_module, sweep_monad, sweep_operad, MutationSummary,
};
pub use quotient::{
    naive_compose_qa, naive_eval_qa, naive_eval_qc, naive_eval_qc_stable, naive_eval_qo,
    StabilizedQuotient,
};
