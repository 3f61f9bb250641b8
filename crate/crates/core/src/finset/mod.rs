//! Standard finite sets `n̄`, maps and permutations between them, right
//! `S_n`-sets, Young-subgroup induction, orbit quotients and coequalizers.

mod coeq;
mod gset;
mod map;
mod perm;
mod young;

pub use coeq::{coequalizer, Merger, Quotient};
pub use gset::{conjugacy_key, gset_iso, orbit_quotient, ActionViolation, GSet, Orbit};
pub use map::{block_sum, compose_maps, fibre_composition, monotone_perm_factor, Composition, FinMap};
pub use perm::{
    binomial, factorial, multinomial, symmetric_group, Perm, SymmetricGroup, DEFAULT_ARITY_BOUND,
    HARD_ARITY_CAP,
};
pub use young::{induce, tuple_at, tuple_index, tuples, young_cosets, Induced, InducedElement, YoungSubgroup};
