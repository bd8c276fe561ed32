//! Necklaces of fixed content, the integer partitions behind the univariate
//! sums, and the Bell/cyclic polynomials that tie moments to cumulants.
//!
//!     cargo run --example necklaces [kind]      e.g. 2,1,1

use wishart_moments::combinatorics::{
    complete_bell, cyclic_polynomial, integer_partitions, necklace_count, necklaces_of_kind, weak_compositions,
};
use wishart_moments::C64;

fn main() {
    let kind: Vec<usize> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').map(|t| t.trim().parse().expect("kind is a list of counts")).collect())
        .unwrap_or_else(|| vec![2, 1, 1]);

    let list = necklaces_of_kind(&kind);
    println!("necklaces of kind {kind:?}: {}", list.len());
    for a in &list {
        let rotations: Vec<String> = a.rotations().iter().map(|r| wishart_moments::combinatorics::format_word(r)).collect();
        println!("  {a}  lyndon={:<5}  repetitions={}  rotations: {}", a.is_lyndon(), a.repetitions(), rotations.join(" "));
    }

    println!("\nnecklaces of length j over m letters (enumerated / Burnside):");
    for m in 1..=3 {
        let row: Vec<String> = (1..=6)
            .map(|j| {
                let total: usize = weak_compositions(j, m).iter().map(|k| necklaces_of_kind(k).len()).sum();
                format!("{total}/{}", necklace_count(m, j))
            })
            .collect();
        println!("  m={m}: {}", row.join("  "));
    }

    println!("\npartitions of 5 with their coefficients:");
    for lambda in integer_partitions(5) {
        let coeffs = lambda.coefficients();
        println!("  {:<12} d={:<4} cycle={}", format!("{:?}", lambda.parts()), coeffs.d_f64(), coeffs.cycle_f64());
    }

    let cumulants: Vec<C64> = (1..=4).map(|k| C64::new(k as f64, 0.0)).collect();
    println!("\nY_4(1, 2, 3, 4) = {}", complete_bell(&cumulants).re);
    println!("cyclic polynomial C_4(1, 2, 3, 4) = {}", cyclic_polynomial(&cumulants).re);
}
