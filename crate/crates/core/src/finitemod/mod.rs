//! Brute-force oracle: finite fields, chain modules, Hermitian pairings and
//! exhaustive submodule enumeration.

mod counts;
mod field;
mod module;

pub use counts::{
    brute_den_inert, brute_den_split, brute_hall, brute_sub_count, brute_sub_count_with_bound,
    hom_count, sub_counts_by_layers,
};
pub use field::{odd_prime_power, FiniteField};
pub use module::{ChainModule, HermChainModule, Submodule, DEFAULT_SIZE_BOUND};
