//! Joint moments and cumulants of Tr(W H_1), Tr(W H_2), the ρ/η building
//! blocks behind them, and a Poisson-randomized number of draws.
//!
//!     cargo run --example joint_moments

use wishart_moments::combinatorics::weak_compositions;
use wishart_moments::multivariate::{
    eta_moment, joint_cumulant, joint_cumulant_randomized, joint_moment, joint_moment_from_cumulants, rho_moment,
    TraceDirections,
};
use wishart_moments::univariate::MomentSequence;
use wishart_moments::{ComplexMatrix, Convention, WishartParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = C64::new;
    let sigma = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.3, 0.2)], vec![c(0.3, -0.2), c(0.8, 0.0)]])?;
    let m = ComplexMatrix::from_rows(vec![vec![c(0.5, 0.0), c(0.1, -0.1)], vec![c(0.1, 0.1), c(0.4, 0.0)]])?;
    let params = WishartParams::new(5.0, sigma, m, Convention::Standard)?;
    let h = TraceDirections::new(vec![
        ComplexMatrix::unit_diagonal(2, 0),
        ComplexMatrix::from_rows(vec![vec![c(0.2, 0.0), c(0.5, 0.3)], vec![c(0.5, -0.3), c(1.0, 0.0)]])?,
    ])?;

    println!("{:>8}  {:>24}  {:>24}  {:>24}  {:>24}", "i", "E[rho^i]", "E[eta^i]", "moment", "cumulant");
    for total in 1..=4 {
        for i in weak_compositions(total, 2) {
            let moment = joint_moment(&params, &h, &i)?;
            let rebuilt = joint_moment_from_cumulants(&params, &h, &i)?;
            assert!((moment - rebuilt).norm() <= 1e-10 * moment.norm());
            println!(
                "{:>8}  {:>24.6}  {:>24.6}  {:>24.6}  {:>24.6}",
                format!("{i:?}"),
                rho_moment(&params, &h, &i)?,
                eta_moment(&params, &h, &i)?,
                moment,
                joint_cumulant(&params, &h, &i)?
            );
        }
    }

    // A Poisson(λ) number of independent rows: every cumulant of the count is λ.
    let lambda = c(2.0, 0.0);
    let counts = MomentSequence::from_cumulants(&[lambda; 6])?;
    println!("\nPoisson({}) draws:", lambda.re);
    for i in [[1, 0], [1, 1], [2, 1]] {
        println!("  cumulant {i:?} = {:.6}", joint_cumulant_randomized(&counts, &params, &h, &i)?);
    }
    Ok(())
}
