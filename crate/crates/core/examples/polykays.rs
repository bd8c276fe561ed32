//! Spectral polykays of a Hermitian matrix and of its random compressions:
//! Haar compressions keep κ_(1) and κ_(2) on average, the plain principal
//! submatrix does not keep κ_(2).
//!
//!     cargo run --release --example polykays

use wishart_moments::applications::{polykay, PolykaySample};
use wishart_moments::mc::{haar_compression, principal_submatrix_sample, Accumulator, RngStream};
use wishart_moments::{ComplexMatrix, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = 8;
    let x = ComplexMatrix::from_rows(
        (0..p)
            .map(|r| (0..p).map(|c| C64::new(1.0 / (1.0 + r as f64 + c as f64), (r as f64 - c as f64) * 0.05)).collect())
            .collect(),
    )?;
    let full = PolykaySample::from_hermitian(&x)?;
    println!("eigenvalues: {:.4?}", full.eigenvalues());
    for order in 1..=4 {
        println!("kappa_({order}) = {:+.6e}", polykay(&full, order)?);
    }

    let (m, draws) = (4, 20_000);
    let mut rng = RngStream::new(11, 0);
    let mut haar = [Accumulator::new(); 2];
    let mut principal = [Accumulator::new(); 2];
    for _ in 0..draws {
        let h = haar_compression(&x, m, &mut rng)?;
        let s = principal_submatrix_sample(&x, m, &mut rng)?;
        for k in 0..2 {
            haar[k].push(C64::new(polykay(&h, k + 1)?, 0.0));
            principal[k].push(C64::new(polykay(&s, k + 1)?, 0.0));
        }
    }
    println!("\n{draws} compressions {p} -> {m}:");
    for k in 0..2 {
        let target = C64::new(polykay(&full, k + 1)?, 0.0);
        let (h, s) = (haar[k].estimate(), principal[k].estimate());
        println!(
            "  kappa_({}): full {:+.5}  haar {:+.5} (z {:.2})  principal {:+.5} (z {:.2})",
            k + 1,
            target.re,
            h.mean.re,
            h.z_score(target),
            s.mean.re,
            s.z_score(target)
        );
    }
    Ok(())
}
