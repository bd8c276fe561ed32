//! Moments and cumulants of the scalar trace Tr W(n).
//!
//! Every quantity has two routes: a partition sum over the trace cache and
//! an independent one (Bell polynomials of cumulants, or the eigenvalues of
//! Σ). The tests pin the routes together.

use crate::budget::{self, Budget};
use crate::combinatorics::{
    complete_bell, complete_homogeneous_from_power_sums, cyclic_polynomial, falling_factorial, integer_partitions,
    IntegerPartition,
};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix};
use crate::model::WishartParams;
use crate::numeric::{binomial_f64, cpowi, factorial_f64, relative_error, KahanSum, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Moments,
    Cumulants,
}

/// A sequence a_0, a_1, ..., a_k of moments (a_0 = 1) or cumulants (a_0 unused, stored as 0).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<C64>,
    kind: SequenceKind,
}

impl MomentSequence {
    /// Moments of orders 1..=k; order 0 is set to 1.
    pub fn from_moments(orders: &[C64]) -> Result<Self> {
        Self::build(orders, SequenceKind::Moments)
    }

    /// Cumulants of orders 1..=k.
    pub fn from_cumulants(orders: &[C64]) -> Result<Self> {
        Self::build(orders, SequenceKind::Cumulants)
    }

    fn build(orders: &[C64], kind: SequenceKind) -> Result<Self> {
        if orders.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("moment sequence entry".into()));
        }
        let head = match kind {
            SequenceKind::Moments => C64::new(1.0, 0.0),
            SequenceKind::Cumulants => C64::new(0.0, 0.0),
        };
        let mut values = Vec::with_capacity(orders.len() + 1);
        values.push(head);
        values.extend_from_slice(orders);
        Ok(MomentSequence { values, kind })
    }

    /// Moments x^k of a point mass at x, up to `depth`.
    pub fn point_mass(x: C64, depth: usize) -> Self {
        let orders: Vec<C64> = (1..=depth).map(|k| cpowi(x, k)).collect();
        MomentSequence { values: std::iter::once(C64::new(1.0, 0.0)).chain(orders).collect(), kind: SequenceKind::Moments }
    }

    /// Moments of a Poisson(λ) variable (Touchard polynomials), up to `depth`.
    pub fn poisson(lambda: C64, depth: usize) -> Self {
        let cumulants = vec![lambda; depth];
        MomentSequence { values: std::iter::once(C64::new(0.0, 0.0)).chain(cumulants).collect(), kind: SequenceKind::Cumulants }
            .to_moments()
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Highest order present.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// Value of order `i`.
    pub fn value(&self, i: usize) -> C64 {
        self.values[i]
    }

    /// Orders 1..=k.
    pub fn orders(&self) -> &[C64] {
        &self.values[1..]
    }

    pub fn require(&self, kind: SequenceKind, order: usize) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidParameter(format!("expected a sequence of {kind:?}, got {:?}", self.kind)));
        }
        if self.order() < order {
            return Err(Error::InsufficientOrders { needed: order, available: self.order() });
        }
        Ok(())
    }

    pub fn to_moments(&self) -> Self {
        match self.kind {
            SequenceKind::Moments => self.clone(),
            SequenceKind::Cumulants => {
                let k = self.order();
                let mut values = vec![C64::new(1.0, 0.0)];
                for i in 1..=k {
                    values.push(complete_bell(&self.values[1..=i]));
                }
                MomentSequence { values, kind: SequenceKind::Moments }
            }
        }
    }

    /// κ_i = m_i − Σ_{k=1}^{i−1} C(i−1, k−1) κ_k m_{i−k}.
    pub fn to_cumulants(&self) -> Self {
        match self.kind {
            SequenceKind::Cumulants => self.clone(),
            SequenceKind::Moments => {
                let m = &self.values;
                let mut kappa = vec![C64::new(0.0, 0.0)];
                for i in 1..m.len() {
                    let mut value = m[i];
                    for k in 1..i {
                        value -= kappa[k] * m[i - k] * binomial_f64(i - 1, k - 1);
                    }
                    kappa.push(value);
                }
                MomentSequence { values: kappa, kind: SequenceKind::Cumulants }
            }
        }
    }
}

fn check_order(i: usize) -> Result<()> {
    Budget::check("univariate order", i, budget::current().univariate_order)
}

fn check_positive(i: usize) -> Result<()> {
    if i == 0 {
        Err(Error::InvalidParameter("cumulant order must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// ∏_j r_j! over the multiplicities of λ.
fn multiplicity_factorial(lambda: &IntegerPartition) -> f64 {
    lambda.part_counts().map(|(_, r)| factorial_f64(r)).product()
}

/// E[(Tr Ŵ(n))^i] = Σ_{λ⊢i} (n)_{l(λ)} d_λ ∏_j C_{λ_j}(T_1, ..., T_{λ_j}).
pub fn central_moment(params: &WishartParams, i: usize) -> Result<C64> {
    check_order(i)?;
    if i == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let cache = params.traces(i);
    let cyclic: Vec<C64> = (1..=i).map(|k| cyclic_polynomial(&cache.t_values()[..k])).collect();
    let n = C64::new(params.n(), 0.0);
    let mut sum = KahanSum::new();
    for lambda in integer_partitions(i) {
        let product: C64 = lambda.parts().iter().map(|&part| cyclic[part - 1]).product();
        sum.add(falling_factorial(n, lambda.len()) * lambda.coefficients().d_f64() * product);
    }
    Ok(sum.value())
}

/// Cum_i(Tr Ŵ(n)) = n (i−1)! Tr(Σ^i).
pub fn central_cumulant(params: &WishartParams, i: usize) -> Result<C64> {
    check_positive(i)?;
    check_order(i)?;
    Ok(params.traces(i).t(i) * (params.n() * factorial_f64(i - 1)))
}

/// Cum_i(Tr W(n)) = n (i−1)! Tr(Σ^i) + s·i!·Tr(MΣ^{i−1}), s = ±1 by convention.
pub fn noncentral_cumulant(params: &WishartParams, i: usize) -> Result<C64> {
    check_positive(i)?;
    check_order(i)?;
    let cache = params.traces(i);
    Ok(cache.t(i) * (params.n() * factorial_f64(i - 1)) + cache.s(i) * (params.sign() * factorial_f64(i)))
}

/// Cumulants of orders 1..=k as a sequence.
pub fn noncentral_cumulants(params: &WishartParams, k: usize) -> Result<MomentSequence> {
    let values = (1..=k).map(|i| noncentral_cumulant(params, i)).collect::<Result<Vec<_>>>()?;
    MomentSequence::from_cumulants(&values)
}

/// Eigenvalues θ_j of Σ and the diagonal b_jj of B = Q†ΩQ.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub theta: Vec<f64>,
    pub b_diagonal: Vec<C64>,
    pub b: ComplexMatrix,
}

pub fn spectral_data(params: &WishartParams) -> Result<SpectralData> {
    let omega = params.noncentrality()?;
    let eig = hermitian_eigen(params.sigma())?;
    let q = &eig.vectors;
    let b = &(&q.adjoint() * omega) * q;
    Ok(SpectralData { theta: eig.values, b_diagonal: b.diagonal(), b })
}

/// Cum_i through the eigen-decomposition of Σ:
/// (i−1)! Σ_j (n + s·i·b_jj) θ_j^i.
pub fn noncentral_cumulant_eigen(params: &WishartParams, i: usize) -> Result<C64> {
    check_positive(i)?;
    check_order(i)?;
    let data = spectral_data(params)?;
    let s = params.sign();
    let sum: KahanSum = data
        .theta
        .iter()
        .zip(&data.b_diagonal)
        .map(|(&theta, &b)| (C64::new(params.n(), 0.0) + b * (s * i as f64)) * theta.powi(i as i32))
        .collect();
    Ok(sum.value() * factorial_f64(i - 1))
}

/// E[(Tr W(n))^i] by the binomial expansion of the moment generating
/// function into its non-central and central factors:
///
/// i! Σ_j [Σ_{λ⊢j} s^{l(λ)}/λ𝔪! ∏ S_{λ_k}] · [Σ_{μ⊢i−j} (n)_{l(μ)}/μ𝔪! ∏ h_{μ_k}]
///
/// where 𝔪! = ∏ r! and h_k are the complete homogeneous polynomials in the
/// eigenvalues of Σ, obtained from the power sums T_k.
pub fn noncentral_moment(params: &WishartParams, i: usize) -> Result<C64> {
    check_order(i)?;
    if i == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let cache = params.traces(i);
    let h = complete_homogeneous_from_power_sums(cache.t_values(), i);
    let n = C64::new(params.n(), 0.0);
    let s = params.sign();

    let noncentral: Vec<C64> = (0..=i)
        .map(|j| {
            integer_partitions(j)
                .iter()
                .map(|lambda| {
                    let product: C64 = lambda.parts().iter().map(|&part| cache.s(part)).product();
                    product * (s.powi(lambda.len() as i32) / multiplicity_factorial(lambda))
                })
                .collect::<KahanSum>()
                .value()
        })
        .collect();
    let central: Vec<C64> = (0..=i)
        .map(|j| {
            integer_partitions(j)
                .iter()
                .map(|mu| {
                    let product: C64 = mu.parts().iter().map(|&part| h[part]).product();
                    product * falling_factorial(n, mu.len()) / multiplicity_factorial(mu)
                })
                .collect::<KahanSum>()
                .value()
        })
        .collect();
    let sum: KahanSum = (0..=i).map(|j| noncentral[j] * central[i - j]).collect();
    Ok(sum.value() * factorial_f64(i))
}

/// E[(Tr W(n))^i] = Y_i(Cum_1, ..., Cum_i).
pub fn moments_from_cumulants(params: &WishartParams, i: usize) -> Result<C64> {
    check_order(i)?;
    if i == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(complete_bell(noncentral_cumulants(params, i)?.orders()))
}

/// E[(Tr W(N))^i] for a random number of draws N with moments g_k.
///
/// W(N) is a sum of N independent draws, each distributed as W(1, Σ, M)
/// with per-draw cumulants κ_k = (k−1)! T_k + s·k!·S_k. Then
/// E[(Tr W(N))^i] = Σ_{λ⊢i} g_{l(λ)} d_λ κ_λ. A point mass at n gives the
/// moments of W(n, Σ, nM).
pub fn randomized_moment(alpha: &MomentSequence, params: &WishartParams, i: usize) -> Result<C64> {
    check_order(i)?;
    if i == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    alpha.require(SequenceKind::Moments, i)?;
    let cache = params.traces(i);
    let s = params.sign();
    let kappa: Vec<C64> =
        (1..=i).map(|k| cache.t(k) * factorial_f64(k - 1) + cache.s(k) * (s * factorial_f64(k))).collect();
    let sum: KahanSum = integer_partitions(i)
        .iter()
        .map(|lambda| {
            let product: C64 = lambda.parts().iter().map(|&part| kappa[part - 1]).product();
            alpha.value(lambda.len()) * lambda.coefficients().d_f64() * product
        })
        .collect();
    Ok(sum.value())
}

/// Moments e_1..e_{i_max} of the trace normalized to dimension p, defined by
/// E[(Tr W)^i] = Σ_{λ⊢i} p^{l(λ)} d_λ ∏_j e_{λ_j}, solved by forward substitution.
pub fn normalized_cumulant_moments(params: &WishartParams, i_max: usize) -> Result<MomentSequence> {
    check_positive(i_max)?;
    check_order(i_max)?;
    let p = params.p() as f64;
    let mut e: Vec<C64> = vec![C64::new(1.0, 0.0)];
    for i in 1..=i_max {
        let target = noncentral_moment(params, i)?;
        let mut rest = KahanSum::new();
        for lambda in integer_partitions(i).iter().skip(1) {
            let product: C64 = lambda.parts().iter().map(|&part| e[part]).product();
            rest.add(product * (p.powi(lambda.len() as i32) * lambda.coefficients().d_f64()));
        }
        e.push((target - rest.value()) / p);
    }
    MomentSequence::from_moments(&e[1..])
}

/// Inverse of `normalized_cumulant_moments`: rebuild E[(Tr W)^i] from e.
pub fn expand_normalized(e: &MomentSequence, p: usize, i: usize) -> Result<C64> {
    e.require(SequenceKind::Moments, i)?;
    let p = p as f64;
    Ok(integer_partitions(i)
        .iter()
        .map(|lambda| {
            let product: C64 = lambda.parts().iter().map(|&part| e.value(part)).product();
            product * (p.powi(lambda.len() as i32) * lambda.coefficients().d_f64())
        })
        .collect::<KahanSum>()
        .value())
}

/// Deviations of the three convolution identities at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionRow {
    pub order: usize,
    /// Ŵ(n1+n2) against Ŵ(n1) + Ŵ(n2).
    pub central: f64,
    /// W(n1+n2, Σ, M) against W(n1, Σ, M) + Ŵ(n2).
    pub sheffer: f64,
    /// W(n1+n2, Σ, M1+M2) against W(n1, Σ, M1) + W(n2, Σ, M2).
    pub split: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionReport {
    pub rows: Vec<ConvolutionRow>,
}

impl ConvolutionReport {
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.central.max(r.sheffer).max(r.split)).fold(0.0, f64::max)
    }
}

/// Check the binomial-type identities of the trace moments in the degrees of
/// freedom and in M, for orders 1..=i_max. `m1` is the first summand of the
/// split M = M1 + M2.
pub fn binomial_convolution_check(
    params: &WishartParams,
    n1: f64,
    n2: f64,
    m1: &ComplexMatrix,
    i_max: usize,
) -> Result<ConvolutionReport> {
    if !(n1 > 0.0 && n2 > 0.0) {
        return Err(Error::InvalidParameter("n1 and n2 must be positive".into()));
    }
    let sigma = params.sigma();
    let total = params.with_n(n1 + n2)?;
    let total_central = WishartParams::central(n1 + n2, sigma.clone(), params.convention())?;
    let left = params.with_n(n1)?;
    let left_central = WishartParams::central(n1, sigma.clone(), params.convention())?;
    let right_central = WishartParams::central(n2, sigma.clone(), params.convention())?;
    let m2 = params.m_matrix() - m1;
    let left_split = left.with_m(m1.clone())?;
    let right_split = params.with_n(n2)?.with_m(m2)?;

    let convolve = |a: &WishartParams, b: &WishartParams, i: usize| -> Result<C64> {
        let mut sum = KahanSum::new();
        for k in 0..=i {
            sum.add(noncentral_moment(a, k)? * noncentral_moment(b, i - k)? * binomial_f64(i, k));
        }
        Ok(sum.value())
    };

    let mut rows = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        rows.push(ConvolutionRow {
            order: i,
            central: relative_error(central_moment(&total_central, i)?, convolve(&left_central, &right_central, i)?),
            sheffer: relative_error(noncentral_moment(&total, i)?, convolve(&left, &right_central, i)?),
            split: relative_error(noncentral_moment(&total, i)?, convolve(&left_split, &right_split, i)?),
        });
    }
    Ok(ConvolutionReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{example_matrices, Convention};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        relative_error(a, b) <= tol
    }

    fn random_hermitian(values: &[f64], p: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(p);
        let mut k = 0;
        for r in 0..p {
            m.set(r, r, c(values[k], 0.0));
            k += 1;
            for col in r + 1..p {
                let z = c(values[k], values[k + 1]);
                k += 2;
                m.set(r, col, z);
                m.set(col, r, z.conj());
            }
        }
        m
    }

    fn random_matrix(values: &[f64], p: usize) -> ComplexMatrix {
        let rows = (0..p).map(|r| (0..p).map(|k| c(values[2 * (r * p + k)], values[2 * (r * p + k) + 1])).collect()).collect();
        ComplexMatrix::from_rows(rows).unwrap()
    }

    fn example(convention: Convention) -> WishartParams {
        let (sigma, m) = example_matrices();
        WishartParams::new(3.0, sigma, m, convention).unwrap()
    }

    #[test]
    fn sequence_conversions_round_trip() {
        let seq = MomentSequence::point_mass(c(2.5, 0.0), 6);
        let kappa = seq.to_cumulants();
        assert!(close(kappa.value(1), c(2.5, 0.0), 1e-15));
        for k in 2..=6 {
            assert!(kappa.value(k).norm() < 1e-12);
        }
        let poisson = MomentSequence::poisson(c(1.0, 0.0), 5);
        // Bell numbers
        let bells = [1.0, 2.0, 5.0, 15.0, 52.0];
        for (k, b) in bells.iter().enumerate() {
            assert!(close(poisson.value(k + 1), c(*b, 0.0), 1e-14));
        }
        let back = poisson.to_cumulants().to_moments();
        for k in 1..=5 {
            assert!(close(back.value(k), poisson.value(k), 1e-13));
        }
        assert!(matches!(poisson.require(SequenceKind::Moments, 6), Err(Error::InsufficientOrders { .. })));
        assert!(poisson.require(SequenceKind::Cumulants, 2).is_err());
    }

    #[test]
    fn central_low_orders() {
        let (sigma, _) = example_matrices();
        let params = WishartParams::central(3.0, sigma, Convention::Paper).unwrap();
        let t = params.traces(2).into_owned();
        assert_eq!(central_moment(&params, 0).unwrap(), c(1.0, 0.0));
        assert!(close(central_moment(&params, 1).unwrap(), t.t(1) * 3.0, 1e-14));
        let expected = t.t(1) * t.t(1) * 9.0 + t.t(2) * 3.0;
        assert!(close(central_moment(&params, 2).unwrap(), expected, 1e-13));
        assert!(close(central_cumulant(&params, 2).unwrap(), t.t(2) * 3.0, 1e-15));
    }

    #[test]
    fn unit_scalar_gives_factorials() {
        let params = WishartParams::central(1.0, ComplexMatrix::identity(1), Convention::Paper).unwrap();
        for i in 0..=10 {
            assert!(close(central_moment(&params, i).unwrap(), c(factorial_f64(i), 0.0), 1e-13));
        }
    }

    #[test]
    fn central_bell_bridge() {
        let (sigma, _) = example_matrices();
        let params = WishartParams::central(2.5, sigma, Convention::Paper).unwrap();
        for i in 1..=8 {
            let cumulants: Vec<C64> = (1..=i).map(|k| central_cumulant(&params, k).unwrap()).collect();
            assert!(close(complete_bell(&cumulants), central_moment(&params, i).unwrap(), 1e-11), "i={i}");
        }
    }

    #[test]
    fn example_cumulants() {
        let params = example(Convention::Paper);
        let cum1 = noncentral_cumulant(&params, 1).unwrap();
        assert!((cum1 - c(0.09629, 0.0)).norm() < 1e-12);
        let cum2 = noncentral_cumulant(&params, 2).unwrap();
        assert!((cum2 - c(1.2425207e-3, 2.85e-4)).norm() < 1e-9);
        let cum3 = noncentral_cumulant(&params, 3).unwrap();
        assert!((cum3 - c(4.6068394e-5, 9.98325e-6)).norm() < 1e-11);
        // The worked example prints 1.0192e-4 + 3.3278e-6 i for the third cumulant.
        assert!((cum3 - c(1.0192e-4, 3.3278e-6)).norm() > 1e-5);
    }

    #[test]
    fn example_spectral_data() {
        let params = example(Convention::Paper);
        let data = spectral_data(&params).unwrap();
        assert!(data.theta.iter().any(|&t| t < 0.0), "the example covariance is indefinite");
        let expected = [c(0.63, -0.05), c(3.63, -4.31), c(278.35, -181.19)];
        for (b, e) in data.b_diagonal.iter().zip(expected) {
            assert!((b - e).norm() < 0.02, "{b} vs {e}");
        }
    }

    #[test]
    fn eigen_route_on_example() {
        for convention in [Convention::Paper, Convention::Standard] {
            let params = example(convention);
            for i in 1..=6 {
                let a = noncentral_cumulant(&params, i).unwrap();
                let b = noncentral_cumulant_eigen(&params, i).unwrap();
                assert!(close(a, b, 1e-8), "i={i} {a} {b}");
            }
        }
    }

    #[test]
    fn eigen_route_scalar() {
        let sigma = ComplexMatrix::from_diagonal(&[c(0.7, 0.0)]);
        let m = ComplexMatrix::from_diagonal(&[c(0.3, 0.0)]);
        let params = WishartParams::new(2.0, sigma, m, Convention::Paper).unwrap();
        for i in 1..=5 {
            let expected = (2.0 - i as f64 * 0.3 / 0.7) * 0.7f64.powi(i as i32) * factorial_f64(i - 1);
            assert!(close(noncentral_cumulant_eigen(&params, i).unwrap(), c(expected, 0.0), 1e-12));
        }
    }

    #[test]
    fn central_reduction() {
        let (sigma, _) = example_matrices();
        let params = WishartParams::central(3.0, sigma, Convention::Paper).unwrap();
        for i in 0..=8 {
            assert!(close(noncentral_moment(&params, i).unwrap(), central_moment(&params, i).unwrap(), 1e-12));
        }
        for i in 1..=5 {
            assert_eq!(noncentral_cumulant(&params, i).unwrap(), central_cumulant(&params, i).unwrap());
        }
    }

    /// The double sum read with a raw power n^{l} and cyclic polynomials
    /// in place of (n)_{l} and h: its second moment is already off.
    #[test]
    fn raw_power_reading_of_the_double_sum_disagrees() {
        let (sigma, _) = example_matrices();
        let params = WishartParams::central(3.0, sigma, Convention::Paper).unwrap();
        let cache = params.traces(2).into_owned();
        let n = 3.0;
        let literal = {
            let c1 = cyclic_polynomial(&cache.t_values()[..1]);
            let c2 = cyclic_polynomial(&cache.t_values()[..2]);
            // 2!·[n c2/1 + n² c1²/2!]
            (c2 * n + c1 * c1 * (n * n / 2.0)) * 2.0
        };
        let truth = noncentral_moment(&params, 2).unwrap();
        assert!(close(truth, cache.t(1) * cache.t(1) * n * n + cache.t(2) * n, 1e-13));
        assert!(relative_error(literal, truth) > 0.1);
    }

    #[test]
    fn randomized_point_mass_and_poisson() {
        let (sigma, m) = example_matrices();
        let per_draw = WishartParams::new(1.0, sigma.clone(), m.clone(), Convention::Standard).unwrap();
        let n = 3.0;
        let deterministic = WishartParams::new(n, sigma, m.scale(c(n, 0.0)), Convention::Standard).unwrap();
        let alpha = MomentSequence::point_mass(c(n, 0.0), 5);
        for i in 0..=5 {
            let a = randomized_moment(&alpha, &per_draw, i).unwrap();
            let b = noncentral_moment(&deterministic, i).unwrap();
            assert!(close(a, b, 1e-11), "i={i}");
        }
        let lambda = 1.7;
        let poisson = MomentSequence::poisson(c(lambda, 0.0), 3);
        let first = randomized_moment(&poisson, &per_draw, 1).unwrap();
        assert!(close(first, noncentral_moment(&per_draw, 1).unwrap() * lambda, 1e-14));
        assert_eq!(randomized_moment(&poisson, &per_draw, 0).unwrap(), c(1.0, 0.0));
        assert!(matches!(randomized_moment(&poisson, &per_draw, 4), Err(Error::InsufficientOrders { .. })));
    }

    #[test]
    fn normalized_round_trip() {
        let params = example(Convention::Paper);
        let e = normalized_cumulant_moments(&params, 6).unwrap();
        assert!(close(e.value(1), noncentral_moment(&params, 1).unwrap() / 3.0, 1e-14));
        for i in 1..=6 {
            let rebuilt = expand_normalized(&e, 3, i).unwrap();
            assert!(close(rebuilt, noncentral_moment(&params, i).unwrap(), 1e-11), "i={i}");
        }
        let scalar = WishartParams::new(
            2.0,
            ComplexMatrix::from_diagonal(&[c(0.5, 0.0)]),
            ComplexMatrix::from_diagonal(&[c(0.2, 0.0)]),
            Convention::Standard,
        )
        .unwrap();
        let e1 = normalized_cumulant_moments(&scalar, 5).unwrap();
        for i in 1..=5 {
            assert!(close(expand_normalized(&e1, 1, i).unwrap(), noncentral_moment(&scalar, i).unwrap(), 1e-12));
        }
    }

    #[test]
    fn convolution_identities_hold() {
        let params = example(Convention::Paper);
        let m1 = params.m_matrix().scale(c(0.3, 0.1));
        let report = binomial_convolution_check(&params, 1.2, 1.8, &m1, 5).unwrap();
        assert!(report.max_deviation() <= 1e-11, "{report:?}");
        assert!(report.rows[0].central <= 1e-15 && report.rows[0].sheffer <= 1e-15);
    }

    #[test]
    fn order_budget() {
        let params = example(Convention::Paper);
        assert!(matches!(noncentral_moment(&params, 21), Err(Error::BudgetExceeded { .. })));
        assert!(noncentral_cumulant(&params, 0).is_err());
        assert!(noncentral_moment(&params, 20).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn routes_agree_on_random_instances(
            p in 1usize..=6,
            sigma_seed in prop::collection::vec(-1.0f64..1.0, 36),
            m_seed in prop::collection::vec(-1.0f64..1.0, 72),
            n in 0.5f64..6.0,
            standard in any::<bool>(),
        ) {
            let sigma = random_hermitian(&sigma_seed, p);
            let sigma = &sigma + &ComplexMatrix::identity(p).scale(c(2.5, 0.0));
            let m = random_matrix(&m_seed, p);
            let convention = if standard { Convention::Standard } else { Convention::Paper };
            let params = WishartParams::new(n, sigma, m, convention).unwrap();
            for i in 1..=8 {
                let direct = noncentral_moment(&params, i).unwrap();
                let bell = moments_from_cumulants(&params, i).unwrap();
                prop_assert!(close(direct, bell, 1e-8), "moment i={} {} {}", i, direct, bell);
            }
            for i in 1..=6 {
                let trace = noncentral_cumulant(&params, i).unwrap();
                let eigen = noncentral_cumulant_eigen(&params, i).unwrap();
                prop_assert!(close(trace, eigen, 1e-8), "cumulant i={} {} {}", i, trace, eigen);
            }
        }

        #[test]
        fn cumulants_are_homogeneous(
            sigma_seed in prop::collection::vec(-1.0f64..1.0, 9),
            m_seed in prop::collection::vec(-1.0f64..1.0, 18),
            re in -2.0f64..2.0,
            im in -2.0f64..2.0,
        ) {
            let sigma = random_hermitian(&sigma_seed, 3);
            let m = random_matrix(&m_seed, 3);
            let scale = c(re, im);
            // A complex multiple of a Hermitian Σ is not Hermitian, so scale
            // the trace cache directly.
            let params = WishartParams::new(2.0, sigma.clone(), m.clone(), Convention::Paper).unwrap();
            let scaled = crate::model::TraceCache::compute(&sigma.scale(scale), &m.scale(scale), 6);
            for i in 1..=6 {
                let base = noncentral_cumulant(&params, i).unwrap();
                let expected = base * cpowi(scale, i);
                let direct = scaled.t(i) * (2.0 * factorial_f64(i - 1)) - scaled.s(i) * factorial_f64(i);
                prop_assert!(close(direct, expected, 1e-10) || expected.norm() < 1e-300);
            }
            let real_scale = re.abs() + 0.1;
            let scaled_params = WishartParams::new(2.0, sigma.scale(c(real_scale, 0.0)), m.scale(c(real_scale, 0.0)), Convention::Standard).unwrap();
            let params = params.with_convention(Convention::Standard);
            for i in 1..=6 {
                let a = noncentral_cumulant(&scaled_params, i).unwrap();
                let b = noncentral_cumulant(&params, i).unwrap() * real_scale.powi(i as i32);
                prop_assert!(close(a, b, 1e-12));
            }
        }

        #[test]
        fn cumulants_are_additive(
            sigma_seed in prop::collection::vec(-1.0f64..1.0, 9),
            m_seed in prop::collection::vec(-1.0f64..1.0, 36),
            n1 in 0.5f64..4.0,
            n2 in 0.5f64..4.0,
        ) {
            let sigma = random_hermitian(&sigma_seed, 3);
            let m1 = random_matrix(&m_seed[..18], 3);
            let m2 = random_matrix(&m_seed[18..], 3);
            let total = WishartParams::new(n1 + n2, sigma.clone(), &m1 + &m2, Convention::Paper).unwrap();
            let a = WishartParams::new(n1, sigma.clone(), m1, Convention::Paper).unwrap();
            let b = WishartParams::new(n2, sigma, m2, Convention::Paper).unwrap();
            for i in 1..=6 {
                let lhs = noncentral_cumulant(&total, i).unwrap();
                let rhs = noncentral_cumulant(&a, i).unwrap() + noncentral_cumulant(&b, i).unwrap();
                prop_assert!(close(lhs, rhs, 1e-12) || (lhs - rhs).norm() < 1e-14);
            }
        }
    }
}
