//! d-permanents by brute force and through the master theorem, which reads
//! per_d of the repeated matrix T(i) off the ρ moments of (T, E_kk).
//!
//!     cargo run --example permanents

use wishart_moments::applications::{
    cycle_count_sums, permanent_alpha, permanent_d, permanent_master, repeated_matrix, CycleWeights,
};
use wishart_moments::univariate::MomentSequence;
use wishart_moments::{ComplexMatrix, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0, 0.5], vec![-1.0, 0.3, 1.0], vec![0.7, 0.0, 2.0]])?;
    println!("cycle-count sums of T (k = 0..3): {:?}", cycle_count_sums(&t)?.iter().map(|z| z.re).collect::<Vec<_>>());
    for d in [-1.0, 1.0, 2.0] {
        println!("per_{d}(T) = {}", permanent_d(&t, C64::new(d, 0.0))?.re);
    }
    println!("det(T)   = {}", t.determinant()?.re);

    println!("\n{:>10} {:>8}  {:>22}  {:>22}", "i", "d", "master theorem", "brute force on T(i)");
    for i in [[1, 1, 1], [2, 1, 0], [2, 2, 1], [0, 3, 2]] {
        for d in [C64::new(2.0, 0.0), C64::new(0.5, 0.5)] {
            let master = permanent_master(&t, &i, &CycleWeights::Power(d))?;
            let brute = permanent_d(&repeated_matrix(&t, &i)?, d)?;
            println!("{:>10} {:>8}  {:>22.10}  {:>22.10}", format!("{i:?}"), d.to_string(), master, brute);
        }
    }

    // Replacing d^k by the moments of a Poisson(1) variable.
    let alpha = MomentSequence::poisson(C64::new(1.0, 0.0), 6);
    let master = permanent_master(&t, &[2, 1, 1], &CycleWeights::Moments(alpha.clone()))?;
    let brute = permanent_alpha(&repeated_matrix(&t, &[2, 1, 1])?, &alpha)?;
    println!("\nalpha-permanent, Poisson(1) moments, i = (2,1,1): {master:.10} vs {brute:.10}");
    Ok(())
}
