//! Acceptance criteria AC1..AC10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output;
//! the process exits non-zero when any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wishart_moments::applications::{permanent_d, permanent_master, polykay, repeated_matrix, CycleWeights, PolykaySample};
use wishart_moments::combinatorics::{
    integer_partitions, necklace_count, necklaces_of_kind, permutations_by_cycles, weak_compositions,
};
use wishart_moments::mc::{
    distribution_identity_check, estimate_statistic, estimate_trace_cumulants, generalized_statistic, haar_compression,
    joint_statistic, principal_submatrix_sample, Accumulator, DistributionIdentity, RngStream, WishartSampler,
};
use wishart_moments::multivariate::{
    central_product_moment, generalized_moment_expansion, joint_moment, TraceDirections, TraceMoments,
};
use wishart_moments::numeric::relative_error;
use wishart_moments::univariate::{moments_from_cumulants, noncentral_cumulant, noncentral_cumulant_eigen, noncentral_moment};
use wishart_moments::{ComplexMatrix, Convention, WishartParams, C64};

struct Outcome {
    passed: bool,
    detail: String,
}

fn random_matrix(rng: &mut ChaCha8Rng, p: usize) -> ComplexMatrix {
    let rows = (0..p)
        .map(|_| (0..p).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
        .collect();
    ComplexMatrix::from_rows(rows).unwrap()
}

fn random_hermitian(rng: &mut ChaCha8Rng, p: usize) -> ComplexMatrix {
    let a = random_matrix(rng, p);
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

fn random_psd(rng: &mut ChaCha8Rng, p: usize, shift: f64) -> ComplexMatrix {
    let a = random_matrix(rng, p);
    &(&a * &a.adjoint()) + &ComplexMatrix::identity(p).scale(C64::new(shift, 0.0))
}

fn all_indices(m: usize, max_total: usize) -> Vec<Vec<usize>> {
    (1..=max_total).flat_map(|total| weak_compositions(total, m)).collect()
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    let mut checks = 0;
    for instance in 0..20 {
        let m = 1 + instance % 3;
        let p = 3;
        let sigma = random_matrix(&mut rng, p);
        let h = TraceDirections::new((0..m).map(|_| random_matrix(&mut rng, p)).collect()).unwrap();
        let tm = TraceMoments::new(&sigma, &ComplexMatrix::zeros(p), &h).unwrap();
        for i in all_indices(m, 8) {
            let grouped = tm.rho(&i).unwrap();
            let strings = tm.rho_all_strings(&i).unwrap();
            worst = worst.max(relative_error(grouped, strings));
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        passed: worst <= 1e-12 && elapsed < Duration::from_secs(30),
        detail: format!("{checks} (instance, index) pairs, max rel err {worst:.2e} (tol 1e-12), {:.1} s (limit 30 s)", secs(elapsed)),
    }
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut worst_bell, mut worst_eigen) = (0.0f64, 0.0f64);
    for p in 1..=6 {
        for convention in [Convention::Paper, Convention::Standard] {
            let sigma = random_psd(&mut rng, p, 0.2);
            let m = random_hermitian(&mut rng, p);
            let params = WishartParams::new(2.5 + p as f64, sigma, m, convention).unwrap();
            for i in 1..=8 {
                let direct = noncentral_moment(&params, i).unwrap();
                let bell = moments_from_cumulants(&params, i).unwrap();
                worst_bell = worst_bell.max(relative_error(direct, bell));
            }
            for i in 1..=6 {
                let trace = noncentral_cumulant(&params, i).unwrap();
                let eigen = noncentral_cumulant_eigen(&params, i).unwrap();
                worst_eigen = worst_eigen.max(relative_error(trace, eigen));
            }
        }
    }
    Outcome {
        passed: worst_bell <= 1e-8 && worst_eigen <= 1e-8,
        detail: format!(
            "p = 1..6, both conventions: moments vs Bell of cumulants (i <= 8) max rel err {worst_bell:.2e}; \
             trace vs eigen cumulants (i <= 6) max rel err {worst_eigen:.2e} (tol 1e-8)"
        ),
    }
}

fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for p in 1..=4 {
        for convention in [Convention::Paper, Convention::Standard] {
            let params = WishartParams::new(3.0, random_psd(&mut rng, p, 0.2), random_hermitian(&mut rng, p), convention).unwrap();
            let h = TraceDirections::identity(p);
            for i in 1..=6 {
                let joint = joint_moment(&params, &h, &[i]).unwrap();
                let uni = noncentral_moment(&params, i).unwrap();
                worst = worst.max(relative_error(joint, uni));
            }
        }
    }
    Outcome { passed: worst <= 1e-11, detail: format!("i = 1..6, p = 1..4: max rel err {worst:.2e} (tol 1e-11)") }
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let sigma = random_psd(&mut rng, 2, 0.2);
    let m = random_psd(&mut rng, 2, 0.0);
    let params = WishartParams::new(5.0, sigma, m, Convention::Standard).unwrap();
    let h = TraceDirections::new(vec![random_hermitian(&mut rng, 2), random_hermitian(&mut rng, 2)]).unwrap();
    let samples = 1_000_000;
    let mut stream = RngStream::new(4, 0);
    let mut zs = Vec::new();
    let cumulants = estimate_trace_cumulants(&params, None, 3, samples, 1000, &mut stream).unwrap();
    for (k, est) in cumulants.iter().enumerate() {
        zs.push((format!("Cum{}", k + 1), est.z_score(noncentral_cumulant(&params, k + 1).unwrap())));
    }
    let sampler = WishartSampler::new(&params).unwrap();
    for i in [[1, 1], [1, 2], [2, 2]] {
        let est = estimate_statistic(&sampler, samples, &mut stream, |w| joint_statistic(w, &h, &i));
        zs.push((format!("E{i:?}"), est.z_score(joint_moment(&params, &h, &i).unwrap())));
    }
    let elapsed = start.elapsed();
    let worst = zs.iter().map(|(_, z)| *z).fold(0.0, f64::max);
    let list: Vec<String> = zs.iter().map(|(name, z)| format!("{name} z={z:.2}")).collect();
    Outcome {
        passed: worst <= 3.0 && elapsed < Duration::from_secs(120),
        detail: format!("10^6 draws each: {} (limit 3 s.e.), {:.1} s (limit 120 s)", list.join(", "), secs(elapsed)),
    }
}

fn ac5() -> Outcome {
    let (sigma, m) = wishart_moments::model::example_matrices();
    let params = WishartParams::new(3.0, sigma.clone(), m.clone(), Convention::Paper).unwrap();
    let cum1 = noncentral_cumulant(&params, 1).unwrap();
    let cum2 = noncentral_cumulant(&params, 2).unwrap();
    let cum1_formula = sigma.trace() * 3.0 - m.trace();
    let cum2_formula = (&sigma * &sigma).trace() * 3.0 - (&m * &sigma).trace() * 2.0;
    let formulas = relative_error(cum1, cum1_formula) < 1e-12 && relative_error(cum2, cum2_formula) < 1e-12;
    let values = (cum1.re - 0.09629).abs() <= 1e-5 && cum1.im.abs() <= 1e-5 && (cum2.re - 1.24e-3).abs() <= 1e-5;
    // Known-wrong reference values; the recomputation must not land on them.
    let wrong_cum1 = 0.03143;
    let wrong_cum2_im = 0.0028;
    let typos = (cum1.re - wrong_cum1).abs() > 1e-3 && (cum2.im - wrong_cum2_im).abs() > 1e-3;
    Outcome {
        passed: formulas && values && typos,
        detail: format!(
            "Cum1 = {:.5} (expect 0.09629 +- 1e-5), Cum2 = {:.4e}{:+.3e}i (real part expect 1.24e-3 +- 1e-5); \
             reference typos Cum1 0.03143 and Cum2 imaginary 0.0028 not reproduced",
            cum1.re, cum2.re, cum2.im
        ),
    }
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let t = random_matrix(&mut rng, 3);
    let abs_t = {
        let rows = t.rows().iter().map(|row| row.iter().map(|z| C64::new(z.norm(), 0.0)).collect()).collect();
        ComplexMatrix::from_rows(rows).unwrap()
    };
    let mut worst_rel = 0.0f64;
    let mut worst_zero = 0.0f64;
    let (mut checks, mut zero_cases) = (0, 0);
    for d in [C64::new(-1.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(0.5, 0.5)] {
        for i in all_indices(3, 6) {
            let master = permanent_master(&t, &i, &CycleWeights::Power(d)).unwrap();
            let t_i = repeated_matrix(&t, &i).unwrap();
            let brute = permanent_d(&t_i, d).unwrap();
            checks += 1;
            // With d = -1 the value is ±det T(i), exactly zero once a row repeats;
            // there the deviation is measured against per_|d|(|T(i)|).
            if d == C64::new(-1.0, 0.0) && i.iter().any(|&r| r >= 2) {
                zero_cases += 1;
                let scale = permanent_d(&repeated_matrix(&abs_t, &i).unwrap(), C64::new(1.0, 0.0)).unwrap().re;
                worst_zero = worst_zero.max((master - brute).norm() / scale);
            } else {
                worst_rel = worst_rel.max(relative_error(master, brute));
            }
        }
    }
    Outcome {
        passed: worst_rel <= 1e-10 && worst_zero <= 1e-10,
        detail: format!(
            "{checks} (i, d) pairs, |i| <= 6: max rel err {worst_rel:.2e} (tol 1e-10); \
             {zero_cases} exactly-zero determinant cases within {worst_zero:.2e} of the term scale"
        ),
    }
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut worst_alg = 0.0f64;
    for _ in 0..200 {
        let m = rng.random_range(5..15);
        let y: Vec<f64> = (0..m).map(|_| rng.random_range(-3.0..3.0)).collect();
        let shift = rng.random_range(-2.0..2.0);
        let scale = rng.random_range(0.2..3.0);
        let base = PolykaySample::new(y.clone()).unwrap();
        let shifted = PolykaySample::new(y.iter().map(|v| v + shift).collect()).unwrap();
        let scaled = PolykaySample::new(y.iter().map(|v| v * scale).collect()).unwrap();
        for order in 1..=4 {
            let k = polykay(&base, order).unwrap();
            let expected_shift = if order == 1 { k + shift } else { k };
            let magnitude = y.iter().map(|v| v.abs() + shift.abs()).fold(1.0, f64::max).powi(order as i32);
            worst_alg = worst_alg.max((polykay(&shifted, order).unwrap() - expected_shift).abs() / magnitude);
            let expected_scale = k * scale.powi(order as i32);
            let rel = (polykay(&scaled, order).unwrap() - expected_scale).abs() / expected_scale.abs().max(1e-300);
            worst_alg = worst_alg.max(if expected_scale == 0.0 { 0.0 } else { rel });
        }
    }
    let x = random_hermitian(&mut rng, 8);
    let full = PolykaySample::from_hermitian(&x).unwrap();
    let targets = [polykay(&full, 1).unwrap(), polykay(&full, 2).unwrap()];
    let mut stream = RngStream::new(7, 0);
    let mut haar = [Accumulator::new(); 2];
    let mut principal = [Accumulator::new(); 2];
    for _ in 0..100_000 {
        let compressed = haar_compression(&x, 4, &mut stream).unwrap();
        let sub = principal_submatrix_sample(&x, 4, &mut stream).unwrap();
        for k in 0..2 {
            haar[k].push(C64::new(polykay(&compressed, k + 1).unwrap(), 0.0));
            principal[k].push(C64::new(polykay(&sub, k + 1).unwrap(), 0.0));
        }
    }
    let z_haar = [0, 1].map(|k| haar[k].estimate().z_score(C64::new(targets[k], 0.0)));
    let z_principal = [0, 1].map(|k| principal[k].estimate().z_score(C64::new(targets[k], 0.0)));
    Outcome {
        passed: worst_alg <= 1e-9 && z_haar.iter().all(|&z| z <= 3.0),
        detail: format!(
            "shift/scale max rel err {worst_alg:.2e} (tol 1e-9); Haar 8->4 compressions, 10^5 draws: \
             z(k1) = {:.2}, z(k2) = {:.2} (limit 3); principal-submatrix reading, reported only: z(k1) = {:.2}, z(k2) = {:.2}",
            z_haar[0], z_haar[1], z_principal[0], z_principal[1]
        ),
    }
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let sigma = random_psd(&mut rng, 2, 0.2);
    let m1 = random_psd(&mut rng, 2, 0.0);
    let m2 = random_psd(&mut rng, 2, 0.0);
    let p1 = WishartParams::new(2.0, sigma.clone(), m1, Convention::Standard).unwrap();
    let p2 = WishartParams::new(3.0, sigma, m2, Convention::Standard).unwrap();
    let mut parts = Vec::new();
    let mut worst = 0.0f64;
    for (k, identity) in [DistributionIdentity::DegreesSplit, DistributionIdentity::Sheffer, DistributionIdentity::MSplit]
        .into_iter()
        .enumerate()
    {
        let mut stream = RngStream::new(8, k as u64);
        let report = distribution_identity_check(&p1, &p2, identity, 1_000_000, &mut stream).unwrap();
        worst = worst.max(report.max_abs_z());
        let zs: Vec<String> = report.rows.iter().map(|r| format!("{:.2}", r.z_score)).collect();
        parts.push(format!("{} z = [{}]", identity.as_str(), zs.join(", ")));
    }
    Outcome { passed: worst <= 4.0, detail: format!("10^6 draws per side, orders 1..4: {} (limit 4)", parts.join("; ")) }
}

/// p(n) by Euler's pentagonal recurrence.
fn partition_numbers(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|v| v as u64).collect()
}

fn ac9() -> Outcome {
    let mut mismatches = Vec::new();
    for m in 1..=4 {
        for j in 1..=8 {
            let total: usize = weak_compositions(j, m).iter().map(|kind| necklaces_of_kind(kind).len()).sum();
            if total as u128 != necklace_count(m, j) {
                mismatches.push(format!("necklaces m={m} j={j}: {total} vs {}", necklace_count(m, j)));
            }
        }
    }
    let p = partition_numbers(30);
    for (n, &expected) in p.iter().enumerate().skip(1) {
        let got = integer_partitions(n).len() as u64;
        if got != expected {
            mismatches.push(format!("p({n}) = {got} vs {expected}"));
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            format!("necklace totals for m <= 4, j <= 8 and p(n) for n <= 30 (p(30) = {}) exact", p[30])
        } else {
            mismatches.join("; ")
        },
    }
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let sigma = random_psd(&mut rng, 2, 0.2);
    let params = WishartParams::central(3.0, sigma, Convention::Standard).unwrap();
    let sampler = WishartSampler::new(&params).unwrap();
    let mut stream = RngStream::new(10, 0);
    let (mut worst_exact, mut worst_z) = (0.0f64, 0.0f64);
    let mut all_evaluated = true;
    let mut count = 0;
    for k in 1..=3 {
        let h = TraceDirections::new((0..k).map(|_| random_hermitian(&mut rng, 2)).collect()).unwrap();
        for sigma_perm in permutations_by_cycles(k).unwrap() {
            let expansion = generalized_moment_expansion(&params, &h, &sigma_perm).unwrap();
            all_evaluated &= expansion.is_fully_evaluated() && expansion.terms.len() == 1;
            let exact = central_product_moment(&params, &h, &sigma_perm).unwrap();
            worst_exact = worst_exact.max(relative_error(expansion.evaluated_sum(), exact));
            let est = estimate_statistic(&sampler, 200_000, &mut stream, |w| generalized_statistic(w, &h, &sigma_perm));
            worst_z = worst_z.max(est.z_score(exact));
            count += 1;
        }
    }
    Outcome {
        passed: all_evaluated && worst_exact <= 1e-12 && worst_z <= 3.0,
        detail: format!(
            "M = 0, all {count} permutations of 1..3 directions: fully evaluated = {all_evaluated}, \
             max rel err vs exact {worst_exact:.2e}, max MC z {worst_z:.2} over 2*10^5 draws (limit 3)"
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("AC1 necklace grouping equals the all-strings sum", ac1),
        ("AC2 univariate route equivalence", ac2),
        ("AC3 joint moment specializes to the univariate moment", ac3),
        ("AC4 Monte Carlo agreement, standard convention", ac4),
        ("AC5 worked-example fixture, s = -1 convention", ac5),
        ("AC6 master theorem against brute-force permanents", ac6),
        ("AC7 polykay invariance and Haar inheritance", ac7),
        ("AC8 distributional identities", ac8),
        ("AC9 combinatorial counts", ac9),
        ("AC10 generalized-moment decomposition with M = 0", ac10),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let outcome = check();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        failures += usize::from(!outcome.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
