use std::fmt;

use crate::numeric::factorial_f64;

/// A partition of a multi-index: a multiset of nonzero columns that sum to
/// the target componentwise. Distinct columns are kept in strictly
/// increasing lexicographic order, each with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndexPartition {
    columns: Vec<Vec<usize>>,
    multiplicities: Vec<usize>,
}

impl MultiIndexPartition {
    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// (column, multiplicity) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], usize)> {
        self.columns.iter().map(Vec::as_slice).zip(self.multiplicities.iter().copied())
    }

    /// l(λ): number of columns counted with multiplicity.
    pub fn len(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// ∏ r_j! over the distinct columns.
    pub fn multiplicity_factorial(&self) -> f64 {
        self.multiplicities.iter().map(|&r| factorial_f64(r)).product()
    }

    /// λ! = ∏ over columns (with multiplicity) of the column factorial.
    pub fn column_factorial(&self) -> f64 {
        self.iter()
            .map(|(col, r)| multi_factorial(col).powi(r as i32))
            .product()
    }

    /// The multi-index being partitioned.
    pub fn target(&self) -> Vec<usize> {
        let dim = self.columns.first().map_or(0, Vec::len);
        let mut t = vec![0; dim];
        for (col, r) in self.iter() {
            for (acc, &c) in t.iter_mut().zip(col) {
                *acc += c * r;
            }
        }
        t
    }

    /// d_λ = i! / (𝔪(λ)! λ!), the number of ways to split a set with
    /// content i into blocks of the given column contents.
    pub fn d_coefficient(&self) -> f64 {
        multi_factorial(&self.target()) / (self.multiplicity_factorial() * self.column_factorial())
    }
}

impl fmt::Display for MultiIndexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (col, r)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let body: Vec<String> = col.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
            if r > 1 {
                write!(f, "^{r}")?;
            }
        }
        write!(f, "}}")
    }
}

/// i! = i_1! i_2! ... i_m!
pub fn multi_factorial(i: &[usize]) -> f64 {
    i.iter().map(|&k| factorial_f64(k)).product()
}

/// Every nonzero vector v with 0 <= v <= t componentwise, in lexicographic order.
pub fn sub_indices(t: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = vec![0; t.len()];
    loop {
        if v.iter().any(|&x| x > 0) {
            out.push(v.clone());
        }
        // odometer, last component fastest, gives lexicographic order
        let mut k = t.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if v[k] < t[k] {
                v[k] += 1;
                for x in v.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// All partitions of the multi-index `t`, each exactly once.
///
/// Partitions are emitted in lexicographic order of their column sequences
/// (columns listed in increasing order). The zero multi-index has the single
/// empty partition.
pub fn multiindex_partitions(t: &[usize]) -> Vec<MultiIndexPartition> {
    let candidates = sub_indices(t);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut remaining = t.to_vec();
    collect(&candidates, 0, &mut remaining, &mut chosen, &mut out);
    out
}

fn collect(
    candidates: &[Vec<usize>],
    start: usize,
    remaining: &mut Vec<usize>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<MultiIndexPartition>,
) {
    if remaining.iter().all(|&x| x == 0) {
        out.push(assemble(candidates, chosen));
        return;
    }
    for idx in start..candidates.len() {
        let col = &candidates[idx];
        if col.iter().zip(remaining.iter()).all(|(c, r)| c <= r) {
            for (r, c) in remaining.iter_mut().zip(col) {
                *r -= c;
            }
            chosen.push(idx);
            collect(candidates, idx, remaining, chosen, out);
            chosen.pop();
            for (r, c) in remaining.iter_mut().zip(col) {
                *r += c;
            }
        }
    }
}

fn assemble(candidates: &[Vec<usize>], chosen: &[usize]) -> MultiIndexPartition {
    let mut columns: Vec<Vec<usize>> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    for &idx in chosen {
        if columns.last() == Some(&candidates[idx]) {
            *multiplicities.last_mut().unwrap() += 1;
        } else {
            columns.push(candidates[idx].clone());
            multiplicities.push(1);
        }
    }
    MultiIndexPartition { columns, multiplicities }
}
