//! Products of traces over the cycles of a permutation, E ∏_c Tr(∏_{j∈c} W H_j),
//! and their expansion over W = Ŵ + A into central, formal and mixed terms.
//!
//!     cargo run --example generalized_moments

use wishart_moments::combinatorics::permutations_by_cycles;
use wishart_moments::multivariate::{
    a_product_moment, assignment_moment, central_product_moment, generalized_moment, generalized_moment_expansion,
    TraceDirections,
};
use wishart_moments::{ComplexMatrix, Convention, WishartParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = C64::new;
    let sigma = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.3, 0.2)], vec![c(0.3, -0.2), c(0.8, 0.0)]])?;
    let m = ComplexMatrix::from_rows(vec![vec![c(0.5, 0.0), c(0.1, -0.1)], vec![c(0.1, 0.1), c(0.4, 0.0)]])?;
    let params = WishartParams::new(4.0, sigma, m, Convention::Standard)?;
    let h = TraceDirections::new(vec![
        ComplexMatrix::unit_diagonal(2, 0),
        ComplexMatrix::unit_diagonal(2, 1),
        ComplexMatrix::from_real_rows(&[vec![0.3, 1.0], vec![1.0, -0.5]])?,
    ])?;

    println!("{:<10} {:>26} {:>26} {:>26}", "sigma", "full W", "central part", "formal part");
    for sigma_perm in permutations_by_cycles(3)? {
        println!(
            "{:<10} {:>26.8} {:>26.8} {:>26.8}",
            sigma_perm.to_string(),
            generalized_moment(&params, &h, &sigma_perm)?,
            central_product_moment(&params, &h, &sigma_perm)?,
            a_product_moment(&params, &h, &sigma_perm)?
        );
    }

    let sigma_perm = permutations_by_cycles(3)?.find(|s| s.num_cycles() == 2).expect("a transposition");
    let expansion = generalized_moment_expansion(&params, &h, &sigma_perm)?;
    println!("\nexpansion over {sigma_perm}:");
    let mut total = c(0.0, 0.0);
    for term in &expansion.terms {
        let value = match term.value {
            Some(v) => v,
            None => assignment_moment(&params, &h, &sigma_perm, &term.assignment)?,
        };
        total += value * term.coefficient;
        let tag = if term.is_symbolic() { "mixed" } else { "pure" };
        println!("  {:<24} {tag:<6} {value:.8}", term.to_string());
    }
    println!("  sum of all terms {total:.8}");
    println!("  full moment      {:.8}", generalized_moment(&params, &h, &sigma_perm)?);
    Ok(())
}
