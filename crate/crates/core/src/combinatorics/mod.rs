//! Partitions, necklaces, permutations, and the polynomial families
//! (complete Bell, cyclic, complete homogeneous) the moment formulas reduce to.

mod multi_index;
mod necklace;
mod partition;
mod permutation;
mod polynomials;

pub use multi_index::{multi_factorial, multiindex_partitions, sub_indices, MultiIndexPartition};
pub use necklace::{
    format_word, necklace_count, necklace_rotations, necklaces_of_kind, strings_of_kind, weak_compositions,
    Necklace,
};
pub use partition::{factorial, integer_partitions, partition_coefficients, IntegerPartition, PartitionCoefficients};
pub use permutation::{count_cycles, permutations_by_cycles, CyclePermutation, Permutations};
pub use polynomials::{
    complete_bell, complete_homogeneous, complete_homogeneous_from_power_sums, cyclic_polynomial,
    falling_factorial,
};

pub(crate) use necklace::next_permutation;
pub(crate) use permutation::all_permutations;
