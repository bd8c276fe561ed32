//! Trace moments and cumulants of the 3×3 worked example (n = 3), in both
//! sign conventions, through the three available routes.
//!
//!     cargo run --example worked_example

use wishart_moments::model::example_matrices;
use wishart_moments::univariate::{
    moments_from_cumulants, noncentral_cumulant, noncentral_cumulant_eigen, noncentral_moment, spectral_data,
};
use wishart_moments::{Convention, WishartParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (sigma, m) = example_matrices();
    let params = WishartParams::new(3.0, sigma, m, Convention::Paper)?;
    for warning in params.warnings() {
        println!("note: {warning}");
    }

    let spectral = spectral_data(&params)?;
    println!("eigenvalues of sigma (descending): {:.6?}", spectral.theta);
    println!("diag(Q^H Omega Q):");
    for b in &spectral.b_diagonal {
        println!("  {:>12.4} {:+.4}i", b.re, b.im);
    }

    for convention in [Convention::Paper, Convention::Standard] {
        let params = params.with_convention(convention);
        println!("\n{convention} convention");
        println!("{:>3}  {:>34}  {:>34}  {:>10}", "i", "cumulant (trace route)", "moment", "eigen dev");
        for i in 1..=4 {
            let cumulant = noncentral_cumulant(&params, i)?;
            let eigen = noncentral_cumulant_eigen(&params, i)?;
            let moment = noncentral_moment(&params, i)?;
            let via_bell = moments_from_cumulants(&params, i)?;
            assert!((moment - via_bell).norm() <= 1e-12 * moment.norm());
            println!(
                "{i:>3}  {:>16.9e} {:+.9e}i  {:>16.9e} {:+.9e}i  {:>10.2e}",
                cumulant.re,
                cumulant.im,
                moment.re,
                moment.im,
                (cumulant - eigen).norm() / cumulant.norm()
            );
        }
    }
    Ok(())
}
