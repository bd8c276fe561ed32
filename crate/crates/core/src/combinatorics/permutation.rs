use std::fmt;

use super::necklace::next_permutation;
use super::IntegerPartition;
use crate::budget::{self, Budget};
use crate::error::{Error, Result};

/// A permutation of `0..k` with its disjoint-cycle decomposition.
///
/// Cycles are canonical: each starts at its smallest element, and cycles are
/// ordered by their first element. Within a cycle `[a, b, c]` the map is
/// a -> b -> c -> a.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclePermutation {
    images: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl CyclePermutation {
    pub fn identity(k: usize) -> Self {
        Self::from_images((0..k).collect()).expect("identity is a permutation")
    }

    /// Build from the image vector, `images[j] = σ(j)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || seen[x] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation of 0..{k}")));
            }
            seen[x] = true;
        }
        let cycles = decompose(&images);
        Ok(CyclePermutation { images, cycles })
    }

    /// Build from disjoint cycles covering `0..k`. Fixed points may be
    /// omitted.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; k];
        for cycle in cycles {
            for (pos, &from) in cycle.iter().enumerate() {
                let to = cycle[(pos + 1) % cycle.len()];
                if from >= k || to >= k || images[from].is_some() {
                    return Err(Error::InvalidParameter(format!("cycles {cycles:?} are not disjoint cycles on 0..{k}")));
                }
                images[from] = Some(to);
            }
        }
        let images = images.iter().enumerate().map(|(j, im)| im.unwrap_or(j)).collect();
        Self::from_images(images)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// |C(σ)|
    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    /// Integer partition formed by the cycle lengths.
    pub fn cycle_class(&self) -> IntegerPartition {
        let lengths: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        IntegerPartition::from_parts(&lengths)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (j, &im) in self.images.iter().enumerate() {
            inv[im] = j;
        }
        Self::from_images(inv).expect("inverse of a permutation")
    }

    /// (self ∘ other)(j) = self(other(j)).
    pub fn compose(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|&j| self.images[j]).collect();
        Self::from_images(images).expect("composition of permutations")
    }
}

impl fmt::Display for CyclePermutation {
    /// Cycle notation with 1-based labels, e.g. `(1 3)(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            let labels: Vec<String> = cycle.iter().map(|j| (j + 1).to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

/// Number of cycles of the permutation given by its images.
pub fn count_cycles(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = images[j];
        }
    }
    count
}

fn decompose(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut cycles = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = images[j];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Iterator over all k! permutations of `0..k` in lexicographic order of
/// their image vectors.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = CyclePermutation;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        if next_permutation(&mut successor) {
            self.next = Some(successor);
        }
        Some(CyclePermutation::from_images(current).expect("lexicographic successor is a permutation"))
    }
}

/// All permutations of `0..k` with their cycle decompositions.
///
/// `k` is bounded by the active permutation budget (10 by default).
pub fn permutations_by_cycles(k: usize) -> Result<Permutations> {
    if k == 0 {
        return Err(Error::InvalidParameter("permutations need k >= 1".into()));
    }
    Budget::check("permutation size", k, budget::current().permutation_size)?;
    Ok(Permutations { next: Some((0..k).collect()) })
}

/// Permutations of `0..k` without a budget check; callers enforce their own.
pub(crate) fn all_permutations(k: usize) -> Permutations {
    Permutations { next: Some((0..k).collect()) }
}
