//! d-permanents, the MacMahon-type master theorem through the ρ moments,
//! and spectral polykays.

use crate::budget::{self, Budget};
use crate::combinatorics::{count_cycles, multi_factorial, next_permutation};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix};
use crate::multivariate::{exponential_sum, TraceDirections, TraceMoments};
use crate::numeric::{cpowi, KahanSum, C64};
use crate::univariate::{MomentSequence, SequenceKind};

/// Weight attached to a permutation with k cycles.
#[derive(Debug, Clone, PartialEq)]
pub enum CycleWeights {
    /// d^k
    Power(C64),
    /// a_k, the k-th moment of a sequence
    Moments(MomentSequence),
}

impl CycleWeights {
    fn weight(&self, k: usize) -> C64 {
        match self {
            CycleWeights::Power(d) => cpowi(*d, k),
            CycleWeights::Moments(a) => a.value(k),
        }
    }

    fn check(&self, p: usize) -> Result<()> {
        match self {
            CycleWeights::Power(_) => Ok(()),
            CycleWeights::Moments(a) => a.require(SequenceKind::Moments, p),
        }
    }
}

/// c_k = Σ over permutations with exactly k cycles of ∏_j y_{j,σ(j)}, k = 0..=p.
pub fn cycle_count_sums(y: &ComplexMatrix) -> Result<Vec<C64>> {
    let p = y.dim();
    Budget::check("permanent size", p, budget::current().permanent_size)?;
    let mut sums = vec![KahanSum::new(); p + 1];
    if p == 0 {
        sums[0].add(C64::new(1.0, 0.0));
        return Ok(sums.iter().map(KahanSum::value).collect());
    }
    let mut images: Vec<usize> = (0..p).collect();
    loop {
        let product: C64 = images.iter().enumerate().map(|(j, &k)| y.get(j, k)).product();
        if product != C64::new(0.0, 0.0) {
            sums[count_cycles(&images)].add(product);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(sums.iter().map(KahanSum::value).collect())
}

/// per_d(Y) = Σ_σ d^{|C(σ)|} ∏_j y_{j,σ(j)}, by brute force over S_p.
pub fn permanent_d(y: &ComplexMatrix, d: C64) -> Result<C64> {
    permanent_weighted(y, &CycleWeights::Power(d))
}

/// per_α(Y) = Σ_σ a_{|C(σ)|} ∏_j y_{j,σ(j)}.
pub fn permanent_alpha(y: &ComplexMatrix, a: &MomentSequence) -> Result<C64> {
    permanent_weighted(y, &CycleWeights::Moments(a.clone()))
}

pub fn permanent_weighted(y: &ComplexMatrix, weights: &CycleWeights) -> Result<C64> {
    weights.check(y.dim())?;
    let sums = cycle_count_sums(y)?;
    Ok(sums.iter().enumerate().map(|(k, s)| weights.weight(k) * s).collect::<KahanSum>().value())
}

/// T(i): row and column k of T repeated i_k times.
pub fn repeated_matrix(t: &ComplexMatrix, i: &[usize]) -> Result<ComplexMatrix> {
    if i.len() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: i.len() });
    }
    let index: Vec<usize> = i.iter().enumerate().flat_map(|(k, &r)| std::iter::repeat_n(k, r)).collect();
    Ok(t.principal_submatrix(&index))
}

/// per[T(i)] through the ρ moments of (Σ := T, H_k := E_kk):
/// i! Σ_{λ⊨i} a_{l(λ)}/𝔪(λ)! ∏_j E[ρ^{λ_j}].
///
/// T may be any square matrix; it is not required to be Hermitian.
pub fn permanent_master(t: &ComplexMatrix, i: &[usize], weights: &CycleWeights) -> Result<C64> {
    let p = t.dim();
    if i.len() != p {
        return Err(Error::DimensionMismatch { expected: p, found: i.len() });
    }
    let total: usize = i.iter().sum();
    Budget::check("permanent size", total, budget::current().permanent_size)?;
    weights.check(total)?;
    if total == 0 {
        return Ok(weights.weight(0));
    }
    let tm = TraceMoments::new(t, &ComplexMatrix::zeros(p), &TraceDirections::unit_diagonals(p))?;
    let rho: std::collections::HashMap<Vec<usize>, C64> = crate::combinatorics::sub_indices(i)
        .into_iter()
        .filter(|s| s.iter().any(|&x| x > 0))
        .map(|s| tm.rho(&s).map(|r| (s, r)))
        .collect::<Result<_>>()?;
    Ok(exponential_sum(i, |s| rho[s], |l| weights.weight(l)) * multi_factorial(i))
}

/// A spectral sample y_1..y_m with its power sums S_1..S_4.
#[derive(Debug, Clone, PartialEq)]
pub struct PolykaySample {
    eigenvalues: Vec<f64>,
    power_sums: [f64; 4],
}

impl PolykaySample {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.iter().any(|y| !y.is_finite()) {
            return Err(Error::NonFinite("spectral sample".into()));
        }
        let mut power_sums = [0.0; 4];
        for (r, sum) in power_sums.iter_mut().enumerate() {
            *sum = eigenvalues.iter().map(|y| y.powi(r as i32 + 1)).sum();
        }
        Ok(PolykaySample { eigenvalues, power_sums })
    }

    /// Eigenvalues of a Hermitian matrix.
    pub fn from_hermitian(x: &ComplexMatrix) -> Result<Self> {
        Self::new(hermitian_eigen(x)?.values)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn size(&self) -> usize {
        self.eigenvalues.len()
    }

    /// S_r for r = 1..=4.
    pub fn power_sum(&self, r: usize) -> f64 {
        self.power_sums[r - 1]
    }
}

/// Spectral polykay κ_(order), order 1..=4.
pub fn polykay(sample: &PolykaySample, order: usize) -> Result<f64> {
    let m = sample.size() as f64;
    let [s1, s2, s3, s4] = sample.power_sums;
    let degenerate = || Error::DegenerateSampleSize { order, size: sample.size() };
    let m2 = m * m;
    let value = match order {
        1 => {
            if sample.size() == 0 {
                return Err(degenerate());
            }
            s1 / m
        }
        2 => {
            let den = m * (m2 - 1.0);
            if den == 0.0 {
                return Err(degenerate());
            }
            (m * s2 - s1 * s1) / den
        }
        3 => {
            let den = m * (m2 - 1.0) * (m2 - 4.0);
            if den == 0.0 {
                return Err(degenerate());
            }
            2.0 * (2.0 * s1.powi(3) - 3.0 * m * s1 * s2 + m2 * s3) / den
        }
        4 => {
            let den = m2 * (m2 - 1.0) * (m2 - 4.0) * (m2 - 9.0);
            if den == 0.0 {
                return Err(degenerate());
            }
            6.0 * (-5.0 * s1.powi(4) + 10.0 * m * s1 * s1 * s2 + (3.0 - 2.0 * m2) * s2 * s2
                - (4.0 + 4.0 * m2) * s1 * s3
                + (m + m * m2) * s4)
                / den
        }
        _ => return Err(Error::InvalidParameter(format!("polykay order must be 1..=4, got {order}"))),
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{close, random_matrix, rng};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn two_by_two_expansion() {
        let y = ComplexMatrix::from_real_rows(&[vec![2.0, 3.0], vec![5.0, 7.0]]).unwrap();
        let d = c(0.3, 1.1);
        let expected = d * d * 14.0 + d * 15.0;
        assert!(close(permanent_d(&y, d).unwrap(), expected, 1e-15));
        assert!(close(permanent_d(&y, c(-1.0, 0.0)).unwrap(), c(14.0 - 15.0, 0.0), 1e-15));
        let ones = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(permanent_d(&ones, c(1.0, 0.0)).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn minus_one_gives_signed_determinant() {
        for p in 1..=6 {
            let y = random_matrix(&mut rng(p as u64), p);
            let per = permanent_d(&y, c(-1.0, 0.0)).unwrap();
            let det = y.determinant().unwrap();
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(per, det * sign, 1e-10), "p={p}");
        }
    }

    #[test]
    fn alpha_permanent_cases() {
        let y = random_matrix(&mut rng(7), 4);
        let d = c(0.5, 0.5);
        let a = MomentSequence::point_mass(d, 4);
        assert!(close(permanent_alpha(&y, &a).unwrap(), permanent_d(&y, d).unwrap(), 1e-13));
        let ones = MomentSequence::point_mass(c(1.0, 0.0), 4);
        assert!(close(permanent_alpha(&y, &ones).unwrap(), permanent_d(&y, c(1.0, 0.0)).unwrap(), 1e-13));
        let two = random_matrix(&mut rng(8), 2);
        let a2 = MomentSequence::from_moments(&[c(2.0, 0.0), c(-3.0, 1.0)]).unwrap();
        let expected = c(-3.0, 1.0) * two.get(0, 0) * two.get(1, 1) + c(2.0, 0.0) * two.get(0, 1) * two.get(1, 0);
        assert!(close(permanent_alpha(&two, &a2).unwrap(), expected, 1e-14));
        assert!(matches!(permanent_alpha(&y, &a2), Err(Error::InsufficientOrders { .. })));
    }

    #[test]
    fn master_theorem_cases() {
        let t = random_matrix(&mut rng(9), 3);
        let one = CycleWeights::Power(c(1.0, 0.0));
        let a = permanent_master(&t, &[1, 1, 1], &one).unwrap();
        assert!(close(a, permanent_d(&t, c(1.0, 0.0)).unwrap(), 1e-12));
        let d = c(-0.5, 0.25);
        let weights = CycleWeights::Power(d);
        let a = permanent_master(&t, &[2, 1, 0], &weights).unwrap();
        let t_i = repeated_matrix(&t, &[2, 1, 0]).unwrap();
        assert_eq!(t_i.dim(), 3);
        assert_eq!(t_i.get(0, 1), t.get(0, 0));
        assert!(close(a, permanent_d(&t_i, d).unwrap(), 1e-12));
        let a = permanent_master(&t, &[4, 0, 0], &CycleWeights::Power(c(2.0, 0.0))).unwrap();
        // T(4,0,0) is the 4×4 constant matrix t11: Σ_σ 2^{|C|} t11^4 = 2·3·4·5 t11^4
        assert!(close(a, t.get(0, 0).powu(4) * 120.0, 1e-12));
    }

    #[test]
    fn master_theorem_with_moment_weights() {
        let t = random_matrix(&mut rng(10), 3);
        let alpha = MomentSequence::poisson(c(0.8, 0.0), 6);
        for i in [[1, 1, 1], [2, 1, 1], [0, 3, 2]] {
            let a = permanent_master(&t, &i, &CycleWeights::Moments(alpha.clone())).unwrap();
            let b = permanent_alpha(&repeated_matrix(&t, &i).unwrap(), &alpha).unwrap();
            assert!(close(a, b, 1e-11), "{i:?}");
        }
    }

    #[test]
    fn permanent_budget() {
        let y = ComplexMatrix::identity(11);
        assert!(matches!(permanent_d(&y, c(1.0, 0.0)), Err(Error::BudgetExceeded { .. })));
        let t = ComplexMatrix::identity(2);
        assert!(matches!(
            permanent_master(&t, &[6, 5], &CycleWeights::Power(c(1.0, 0.0))),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn polykay_cases() {
        let constant = PolykaySample::new(vec![1.5; 5]).unwrap();
        assert!((polykay(&constant, 1).unwrap() - 1.5).abs() < 1e-15);
        assert!(polykay(&constant, 2).unwrap().abs() < 1e-14);
        let pair = PolykaySample::new(vec![0.0, 2.0]).unwrap();
        assert!((polykay(&pair, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((polykay(&pair, 2).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let single = PolykaySample::new(vec![4.0]).unwrap();
        assert_eq!(polykay(&single, 1).unwrap(), 4.0);
        assert!(matches!(polykay(&single, 2), Err(Error::DegenerateSampleSize { order: 2, size: 1 })));
        assert!(matches!(polykay(&pair, 3), Err(Error::DegenerateSampleSize { .. })));
        let three = PolykaySample::new(vec![1.0, 2.0, 4.0]).unwrap();
        assert!(matches!(polykay(&three, 4), Err(Error::DegenerateSampleSize { .. })));
        assert!(polykay(&three, 3).is_ok());
        assert!(polykay(&three, 5).is_err());
    }

    #[test]
    fn polykay_from_matrix_uses_eigenvalues() {
        let x = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let sample = PolykaySample::from_hermitian(&x).unwrap();
        assert_eq!(sample.eigenvalues(), &[3.0, 2.0, 1.0]);
        assert_eq!(sample.power_sum(2), 14.0);
    }

    proptest! {
        #[test]
        fn polykays_shift_and_scale(
            y in prop::collection::vec(-3.0f64..3.0, 5..12),
            shift in -2.0f64..2.0,
            scale in 0.2f64..3.0,
        ) {
            let base = PolykaySample::new(y.clone()).unwrap();
            let shifted = PolykaySample::new(y.iter().map(|v| v + shift).collect()).unwrap();
            let scaled = PolykaySample::new(y.iter().map(|v| v * scale).collect()).unwrap();
            let rel = |a: f64, b: f64, norm: f64| (a - b).abs() <= 1e-9 * norm.max(1.0);
            let k1 = polykay(&base, 1).unwrap();
            prop_assert!(rel(polykay(&shifted, 1).unwrap(), k1 + shift, k1.abs() + shift.abs()));
            for order in 2..=4 {
                let k = polykay(&base, order).unwrap();
                let magnitude: f64 = y.iter().map(|v| v.abs() + shift.abs()).fold(0.0, f64::max).powi(order as i32);
                prop_assert!(rel(polykay(&shifted, order).unwrap(), k, magnitude), "order {}", order);
            }
            for order in 1..=4 {
                let k = polykay(&base, order).unwrap();
                let expected = k * scale.powi(order as i32);
                prop_assert!(rel(polykay(&scaled, order).unwrap(), expected, expected.abs()));
            }
        }

        #[test]
        fn permanent_is_row_multilinear(seed in 0u64..1000, row in 0usize..4, re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let y = random_matrix(&mut rng(seed), 4);
            let t = c(re, im);
            let mut scaled = y.clone();
            for col in 0..4 {
                scaled.set(row, col, y.get(row, col) * t);
            }
            let d = c(0.5, 0.5);
            let a = permanent_d(&scaled, d).unwrap();
            let b = permanent_d(&y, d).unwrap() * t;
            prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        }
    }
}
