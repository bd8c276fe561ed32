//! Monte Carlo check of the closed forms: trace cumulants, a joint moment and
//! the three convolution identities, under the standard convention.
//!
//!     cargo run --release --example monte_carlo [samples]

use wishart_moments::mc::{
    distribution_identity_check, estimate_joint_moment, estimate_trace_cumulants, parallel_estimate, DistributionIdentity,
    RngStream, WishartSampler, RNG_ALGORITHM,
};
use wishart_moments::multivariate::{joint_moment, TraceDirections};
use wishart_moments::univariate::noncentral_cumulant;
use wishart_moments::{ComplexMatrix, Convention, WishartParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200_000);
    let c = C64::new;
    let sigma = ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.3, 0.2)], vec![c(0.3, -0.2), c(0.8, 0.0)]])?;
    let m = ComplexMatrix::from_rows(vec![vec![c(0.5, 0.0), c(0.1, -0.1)], vec![c(0.1, 0.1), c(0.4, 0.0)]])?;
    let params = WishartParams::new(5.0, sigma.clone(), m.clone(), Convention::Standard)?;
    println!("generator: {RNG_ALGORITHM}, {samples} samples");

    let mut rng = RngStream::new(2024, 0);
    let cumulants = estimate_trace_cumulants(&params, None, 4, samples, 100, &mut rng)?;
    for (k, est) in cumulants.iter().enumerate() {
        let exact = noncentral_cumulant(&params, k + 1)?;
        println!("Cum{}: exact {:>12.5}  MC {:>12.5} +- {:.5}  z {:.2}", k + 1, exact.re, est.mean.re, est.std_error, est.z_score(exact));
    }

    let h = TraceDirections::new(vec![ComplexMatrix::unit_diagonal(2, 0), ComplexMatrix::unit_diagonal(2, 1)])?;
    let est = estimate_joint_moment(&params, &h, &[1, 2], samples, &mut rng)?;
    let exact = joint_moment(&params, &h, &[1, 2])?;
    println!("E[Tr(WH1) Tr(WH2)^2]: exact {:.5}  MC {:.5} +- {:.5}  z {:.2}", exact.re, est.mean.re, est.std_error, est.z_score(exact));

    let sampler = WishartSampler::new(&params)?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let est = parallel_estimate(&sampler, samples, 2024, 100, threads, |w| w.trace());
    let exact = sigma.trace() * 5.0 + m.trace();
    println!("E[Tr W] on {threads} streams: exact {:.5}  MC {:.5}  z {:.2}", exact.re, est.mean.re, est.z_score(exact));

    let half = WishartParams::new(2.0, sigma.clone(), m.scale(c(0.5, 0.0)), Convention::Standard)?;
    let rest = WishartParams::new(3.0, sigma, m.scale(c(0.5, 0.0)), Convention::Standard)?;
    for identity in [DistributionIdentity::DegreesSplit, DistributionIdentity::Sheffer, DistributionIdentity::MSplit] {
        let report = distribution_identity_check(&half, &rest, identity, samples, &mut rng)?;
        let zs: Vec<String> = report.rows.iter().map(|r| format!("{:.2}", r.z_score)).collect();
        println!("{:<14} z by order: {}", identity.as_str(), zs.join(" "));
    }
    Ok(())
}
