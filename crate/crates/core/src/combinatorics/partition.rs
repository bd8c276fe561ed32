use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// A partition of a nonnegative integer: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPartition {
    parts: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl IntegerPartition {
    /// Build a partition from its parts, in any order.
    ///
    /// Zero parts are dropped.
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut parts: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let largest = parts.first().copied().unwrap_or(0);
        let mut multiplicities = vec![0; largest];
        for &p in &parts {
            multiplicities[p - 1] += 1;
        }
        IntegerPartition { parts, multiplicities }
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `multiplicities()[j - 1]` counts the parts equal to `j`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Multiplicity of the part `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.multiplicities.get(j - 1).copied().unwrap_or(0)
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partitioned integer.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// (part, multiplicity) pairs for parts that occur.
    pub fn part_counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(j, &r)| (j + 1, r))
    }

    /// Exact coefficients d, tilde-d and the cycle-class count.
    pub fn coefficients(&self) -> PartitionCoefficients {
        partition_coefficients(self)
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `i` in reverse-lexicographic order:
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn integer_partitions(i: usize) -> Vec<IntegerPartition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(i);
    descend(i, i, &mut current, &mut out);
    out
}

fn descend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
    if remaining == 0 {
        out.push(IntegerPartition::from_parts(current));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Exact integer coefficients attached to a partition λ of i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCoefficients {
    /// i! / ∏ (j!)^{r_j} r_j!  (set partitions of type λ)
    pub d: BigUint,
    /// i! / ∏ r_j!
    pub d_tilde: BigUint,
    /// i! / ∏ j^{r_j} r_j!  (permutations of cycle class λ)
    pub cycle: BigUint,
}

impl PartitionCoefficients {
    pub fn d_f64(&self) -> f64 {
        to_f64(&self.d)
    }

    pub fn d_tilde_f64(&self) -> f64 {
        to_f64(&self.d_tilde)
    }

    pub fn cycle_f64(&self) -> f64 {
        to_f64(&self.cycle)
    }
}

pub(crate) fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Exact d_λ, tilde-d_λ and 𝔠_λ for a partition λ of its weight.
///
/// Big integers are used throughout, so there is no overflow limit.
pub fn partition_coefficients(lambda: &IntegerPartition) -> PartitionCoefficients {
    let i_fact = factorial(lambda.weight());
    let mut r_fact = BigUint::one();
    let mut block_fact = BigUint::one();
    let mut cycle_len = BigUint::one();
    for (j, r) in lambda.part_counts() {
        r_fact *= factorial(r);
        block_fact *= factorial(j).pow(r as u32);
        cycle_len *= BigUint::from(j).pow(r as u32);
    }
    PartitionCoefficients {
        d: &i_fact / (&block_fact * &r_fact),
        d_tilde: &i_fact / &r_fact,
        cycle: &i_fact / (&cycle_len * &r_fact),
    }
}
