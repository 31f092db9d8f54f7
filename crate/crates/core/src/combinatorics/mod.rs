//! Partitions, characters of the symmetric group, permutations and pair partitions.

mod characters;
mod pairing;
mod partition;
mod permutation;

pub use characters::mn_character;
pub use pairing::{loop_type, loop_type_representative, loops, pair_partitions, PairPartition};
pub(crate) use pairing::{loop_lengths, partner_arrays};
pub use partition::{
    class_size, double_factorial_odd, factorial, irrep_dimension, partitions_of, schur_at_ones, Partition,
};
pub(crate) use permutation::cycle_lengths;
pub use permutation::{all_permutations, Permutation};

pub(crate) fn clear_caches() {
    characters::clear_cache();
}
