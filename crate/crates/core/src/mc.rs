//! Monte Carlo ground truth: Wishart and Haar samplers, streaming estimators
//! with standard errors, and distributional identity checks.
//!
//! Complex Gaussian entries have real and imaginary parts of variance ½, so a
//! single row X with covariance Σ satisfies E[X†X] = Σ. Under this convention
//! the sampled W = Σ_i (X_i − m_i)†(X_i − m_i) has E[W] = nΣ + M and matches
//! the formulas of the standard sign convention.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::combinatorics::CyclePermutation;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix, PIVOT_TOLERANCE};
use crate::model::WishartParams;
use crate::multivariate::TraceDirections;
use crate::numeric::C64;
use crate::applications::PolykaySample;

/// Name of the generator behind every [`RngStream`], emitted with reports.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64 + set_stream";

/// Smallest sample count accepted by the moment estimators.
pub const MIN_SAMPLES: usize = 1000;

/// A reproducible random stream: the pair (seed, stream_id) fixes every draw.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Standard complex Gaussian: E|z|² = 1.
    pub fn complex_normal(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Sample mean of a complex quantity with its standard error.
///
/// `std_error` is √(Σ|x − x̄|² / (N(N−1))), the standard error of the
/// complex mean measured in modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: C64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl Estimate {
    /// |mean − target| / std_error; zero when both vanish.
    pub fn z_score(&self, target: C64) -> f64 {
        let diff = (self.mean - target).norm();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    /// Whether the target lies within `k` standard errors.
    pub fn agrees_with(&self, target: C64, k: f64) -> bool {
        self.z_score(target) <= k
    }
}

/// Streaming Welford accumulator; two accumulators merge with Chan's update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    count: usize,
    mean: C64,
    m2: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: C64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += (delta.conj() * (x - self.mean)).re;
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * (other.count as f64 / total);
        self.m2 += other.m2 + delta.norm_sqr() * (self.count as f64 * other.count as f64 / total);
        self.count += other.count;
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn estimate(&self) -> Estimate {
        let std_error = if self.count > 1 {
            (self.m2.max(0.0) / ((self.count - 1) as f64 * self.count as f64)).sqrt()
        } else {
            0.0
        };
        Estimate { mean: self.mean, std_error, n_samples: self.count }
    }
}

/// Draws W = Σ_i (X_i − m_i)†(X_i − m_i), X_i = G_i L† with Σ = LL†.
///
/// L is built from the eigen-decomposition of Σ, so singular PSD Σ is
/// accepted; eigenvalues below −1e-12·‖Σ‖ are rejected.
#[derive(Debug, Clone)]
pub struct WishartSampler {
    n: usize,
    p: usize,
    /// L†, row-major: X_b = Σ_a g_a (L†)_{ab}.
    factor_adjoint: ComplexMatrix,
    means: Vec<Vec<C64>>,
}

impl WishartSampler {
    /// Means are derived from the model's M through its eigen-decomposition;
    /// M must be Hermitian PSD of rank at most n.
    pub fn new(params: &WishartParams) -> Result<Self> {
        let n = integer_degrees(params.n())?;
        let factor = psd_factor(params.sigma(), "sigma")?;
        let means = if params.is_central() { Vec::new() } else { means_from_matrix(params.m_matrix(), n)? };
        Ok(WishartSampler { n, p: params.p(), factor_adjoint: factor.adjoint(), means })
    }

    /// Explicit shifts m_1..m_k (k ≤ n rows of length p); they override M.
    pub fn with_means(params: &WishartParams, means: Vec<Vec<C64>>) -> Result<Self> {
        let n = integer_degrees(params.n())?;
        if means.len() > n {
            return Err(Error::InvalidParameter(format!("{} mean rows given for n = {n}", means.len())));
        }
        if let Some(bad) = means.iter().find(|row| row.len() != params.p()) {
            return Err(Error::DimensionMismatch { expected: params.p(), found: bad.len() });
        }
        Self::build(params, n, means)
    }

    fn build(params: &WishartParams, n: usize, means: Vec<Vec<C64>>) -> Result<Self> {
        let factor = psd_factor(params.sigma(), "sigma")?;
        Ok(WishartSampler { n, p: params.p(), factor_adjoint: factor.adjoint(), means })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    /// Σ_i m_i†m_i, the non-centrality actually sampled.
    pub fn mean_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.p);
        for row in &self.means {
            add_outer(&mut m, row);
        }
        m
    }

    pub fn sample(&self, rng: &mut RngStream) -> ComplexMatrix {
        let mut w = ComplexMatrix::zeros(self.p);
        self.sample_into(rng, &mut w);
        w
    }

    /// Overwrites `w` with a fresh draw.
    pub fn sample_into(&self, rng: &mut RngStream, w: &mut ComplexMatrix) {
        let p = self.p;
        let zero = C64::new(0.0, 0.0);
        for r in 0..p {
            for c in 0..p {
                w.set(r, c, zero);
            }
        }
        let mut g = vec![zero; p];
        let mut x = vec![zero; p];
        for i in 0..self.n {
            for v in g.iter_mut() {
                *v = rng.complex_normal();
            }
            for (b, xb) in x.iter_mut().enumerate() {
                *xb = (0..p).map(|a| g[a] * self.factor_adjoint.get(a, b)).sum();
            }
            if let Some(m) = self.means.get(i) {
                for (xb, mb) in x.iter_mut().zip(m) {
                    *xb -= mb;
                }
            }
            add_outer(w, &x);
        }
    }
}

/// W += x†x for a row vector x.
fn add_outer(w: &mut ComplexMatrix, x: &[C64]) {
    for (a, xa) in x.iter().enumerate() {
        for (b, xb) in x.iter().enumerate() {
            w.set(a, b, w.get(a, b) + xa.conj() * xb);
        }
    }
}

fn integer_degrees(n: f64) -> Result<usize> {
    if n >= 1.0 && n.fract() == 0.0 && n <= u32::MAX as f64 {
        Ok(n as usize)
    } else {
        Err(Error::NonIntegerDegrees(n))
    }
}

/// L with A = LL†, from the eigen-decomposition of a Hermitian PSD matrix.
fn psd_factor(a: &ComplexMatrix, name: &str) -> Result<ComplexMatrix> {
    let eigen = hermitian_eigen(a)?;
    let tol = PIVOT_TOLERANCE * eigen.values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let p = a.dim();
    let mut factor = ComplexMatrix::zeros(p);
    for (k, &lambda) in eigen.values.iter().enumerate() {
        if lambda < -tol {
            return Err(Error::NotPsd(format!("{name} has eigenvalue {lambda:.3e}")));
        }
        let root = lambda.max(0.0).sqrt();
        for r in 0..p {
            factor.set(r, k, eigen.vectors.get(r, k) * root);
        }
    }
    Ok(factor)
}

/// Rows m_k = √μ_k v_k† for the nonzero eigenpairs of M.
fn means_from_matrix(m: &ComplexMatrix, n: usize) -> Result<Vec<Vec<C64>>> {
    let eigen = hermitian_eigen(m)?;
    let tol = PIVOT_TOLERANCE * eigen.values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    if let Some(&lambda) = eigen.values.iter().find(|&&v| v < -tol) {
        return Err(Error::NotPsd(format!("m_matrix has eigenvalue {lambda:.3e}")));
    }
    let rank = eigen.values.iter().filter(|&&v| v > tol).count();
    if rank > n {
        return Err(Error::InvalidParameter(format!("m_matrix has rank {rank}, more than n = {n} shifts can carry")));
    }
    let p = m.dim();
    Ok((0..rank)
        .map(|k| {
            let root = eigen.values[k].sqrt();
            (0..p).map(|b| eigen.vectors.get(b, k).conj() * root).collect()
        })
        .collect())
}

/// One draw of W, with optional explicit shifts.
pub fn sample_wishart(params: &WishartParams, means: Option<Vec<Vec<C64>>>, rng: &mut RngStream) -> Result<ComplexMatrix> {
    let sampler = match means {
        Some(rows) => WishartSampler::with_means(params, rows)?,
        None => WishartSampler::new(params)?,
    };
    Ok(sampler.sample(rng))
}

fn check_samples(n_samples: usize) -> Result<()> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("at least {MIN_SAMPLES} samples are required, got {n_samples}")));
    }
    Ok(())
}

/// Sample mean of `statistic(W)` over `n_samples` draws.
pub fn estimate_statistic(
    sampler: &WishartSampler,
    n_samples: usize,
    rng: &mut RngStream,
    mut statistic: impl FnMut(&ComplexMatrix) -> C64,
) -> Estimate {
    let mut acc = Accumulator::new();
    let mut w = ComplexMatrix::zeros(sampler.dim());
    for _ in 0..n_samples {
        sampler.sample_into(rng, &mut w);
        acc.push(statistic(&w));
    }
    acc.estimate()
}

/// Splits `n_samples` over `workers` threads, worker k drawing from stream
/// (seed, first_stream + k), and merges the accumulators in worker order.
pub fn parallel_estimate(
    sampler: &WishartSampler,
    n_samples: usize,
    seed: u64,
    first_stream: u64,
    workers: usize,
    statistic: impl Fn(&ComplexMatrix) -> C64 + Sync,
) -> Estimate {
    let workers = workers.max(1);
    let share = |k: usize| n_samples / workers + usize::from(k < n_samples % workers);
    let statistic = &statistic;
    let parts: Vec<Accumulator> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                scope.spawn(move || {
                    let mut rng = RngStream::new(seed, first_stream + k as u64);
                    let mut acc = Accumulator::new();
                    let mut w = ComplexMatrix::zeros(sampler.dim());
                    for _ in 0..share(k) {
                        sampler.sample_into(&mut rng, &mut w);
                        acc.push(statistic(&w));
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut total = Accumulator::new();
    for part in &parts {
        total.merge(part);
    }
    total.estimate()
}

/// Σ_{a,b} W_ab (H)_ba
fn trace_product(w: &ComplexMatrix, h: &ComplexMatrix) -> C64 {
    let p = w.dim();
    let mut sum = C64::new(0.0, 0.0);
    for a in 0..p {
        for b in 0..p {
            sum += w.get(a, b) * h.get(b, a);
        }
    }
    sum
}

/// ∏_j Tr(W H_j)^{i_j}
pub fn joint_statistic(w: &ComplexMatrix, h: &TraceDirections, i: &[usize]) -> C64 {
    i.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| trace_product(w, h.get(j)).powu(e as u32))
        .product()
}

/// ∏_{c∈C(σ)} Tr(W H_{c_1} W H_{c_2} ···), cycles read j → σ(j).
pub fn generalized_statistic(w: &ComplexMatrix, h: &TraceDirections, sigma_perm: &CyclePermutation) -> C64 {
    let wh: Vec<ComplexMatrix> = h.matrices().iter().map(|hj| w * hj).collect();
    sigma_perm
        .cycles()
        .iter()
        .map(|cycle| {
            let mut product = wh[cycle[0]].clone();
            for &j in &cycle[1..] {
                product = &product * &wh[j];
            }
            product.trace()
        })
        .product()
}

/// Estimate of E{∏_j Tr(W H_j)^{i_j}}.
pub fn estimate_joint_moment(
    params: &WishartParams,
    h: &TraceDirections,
    i: &[usize],
    n_samples: usize,
    rng: &mut RngStream,
) -> Result<Estimate> {
    check_samples(n_samples)?;
    h.check_dim(params.p())?;
    if i.len() != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), found: i.len() });
    }
    let sampler = WishartSampler::new(params)?;
    Ok(estimate_statistic(&sampler, n_samples, rng, |w| joint_statistic(w, h, i)))
}

/// Estimate of E{∏_{c∈C(σ)} Tr(∏_{j∈c} W H_j)} for the full W.
pub fn estimate_generalized_moment(
    params: &WishartParams,
    h: &TraceDirections,
    sigma_perm: &CyclePermutation,
    n_samples: usize,
    rng: &mut RngStream,
) -> Result<Estimate> {
    check_samples(n_samples)?;
    h.check_dim(params.p())?;
    if sigma_perm.size() != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), found: sigma_perm.size() });
    }
    let sampler = WishartSampler::new(params)?;
    Ok(estimate_statistic(&sampler, n_samples, rng, |w| generalized_statistic(w, h, sigma_perm)))
}

/// Unbiased k-statistics k_1..k_order (order ≤ 4) of a sample.
///
/// The sample is centred at its mean first; k_2..k_4 are shift invariant and
/// k_1 gets the shift back.
pub fn k_statistics(x: &[C64], order: usize) -> Result<Vec<C64>> {
    if !(1..=4).contains(&order) {
        return Err(Error::InvalidParameter(format!("k-statistics are available for orders 1..=4, got {order}")));
    }
    let n = x.len();
    if n <= order {
        return Err(Error::DegenerateSampleSize { order, size: n });
    }
    let nf = n as f64;
    let centre: C64 = x.iter().sum::<C64>() / nf;
    let mut s = [C64::new(0.0, 0.0); 5];
    for &v in x {
        let d = v - centre;
        let mut power = C64::new(1.0, 0.0);
        for sr in s.iter_mut().skip(1) {
            power *= d;
            *sr += power;
        }
    }
    let k = [
        centre + s[1] / nf,
        (s[2] * nf - s[1] * s[1]) / (nf * (nf - 1.0)),
        (s[1].powu(3) * 2.0 - s[1] * s[2] * (3.0 * nf) + s[3] * (nf * nf)) / (nf * (nf - 1.0) * (nf - 2.0)),
        (s[1].powu(4) * -6.0 + s[1] * s[1] * s[2] * (12.0 * nf) - s[2] * s[2] * (3.0 * nf * (nf - 1.0))
            - s[1] * s[3] * (4.0 * nf * (nf + 1.0))
            + s[4] * (nf * nf * (nf + 1.0)))
            / (nf * (nf - 1.0) * (nf - 2.0) * (nf - 3.0)),
    ];
    Ok(k[..order].to_vec())
}

/// Cumulants of orders 1..=max_order (≤ 4) of Tr(WH) (H = I when `None`),
/// each estimated as the mean of per-batch k-statistics with a batch-means
/// standard error.
pub fn estimate_trace_cumulants(
    params: &WishartParams,
    h: Option<&ComplexMatrix>,
    max_order: usize,
    n_samples: usize,
    batches: usize,
    rng: &mut RngStream,
) -> Result<Vec<Estimate>> {
    check_samples(n_samples)?;
    if batches < 2 || n_samples / batches <= max_order {
        return Err(Error::InvalidParameter(format!("{batches} batches is unusable for {n_samples} samples")));
    }
    if let Some(h) = h {
        if h.dim() != params.p() {
            return Err(Error::DimensionMismatch { expected: params.p(), found: h.dim() });
        }
    }
    let sampler = WishartSampler::new(params)?;
    let batch_size = n_samples / batches;
    let mut accumulators = vec![Accumulator::new(); max_order];
    let mut w = ComplexMatrix::zeros(params.p());
    let mut values = Vec::with_capacity(batch_size);
    for _ in 0..batches {
        values.clear();
        for _ in 0..batch_size {
            sampler.sample_into(rng, &mut w);
            values.push(match h {
                Some(h) => trace_product(&w, h),
                None => w.trace(),
            });
        }
        for (acc, k) in accumulators.iter_mut().zip(k_statistics(&values, max_order)?) {
            acc.push(k);
        }
    }
    Ok(accumulators
        .iter()
        .map(|acc| Estimate { n_samples: batch_size * batches, ..acc.estimate() })
        .collect())
}

/// Haar-distributed p×p unitary: Ginibre matrix, Gram-Schmidt QR, with R's
/// diagonal positive real.
pub fn haar_unitary(p: usize, rng: &mut RngStream) -> ComplexMatrix {
    let mut columns: Vec<Vec<C64>> = (0..p).map(|_| (0..p).map(|_| rng.complex_normal()).collect()).collect();
    for j in 0..p {
        // Two Gram-Schmidt passes keep the columns orthogonal to round-off.
        for _ in 0..2 {
            for k in 0..j {
                let projection: C64 = (0..p).map(|r| columns[k][r].conj() * columns[j][r]).sum();
                for r in 0..p {
                    let v = columns[k][r];
                    columns[j][r] -= projection * v;
                }
            }
        }
        let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in columns[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(p);
    for (c, column) in columns.iter().enumerate() {
        for (r, &z) in column.iter().enumerate() {
            q.set(r, c, z);
        }
    }
    q
}

/// Eigenvalues of Y = H X H† with H the first m rows of a Haar unitary.
pub fn haar_compression(x: &ComplexMatrix, m: usize, rng: &mut RngStream) -> Result<PolykaySample> {
    x.ensure_hermitian(crate::matrix::HERMITIAN_TOLERANCE)?;
    let p = x.dim();
    if m == 0 || m > p {
        return Err(Error::InvalidParameter(format!("compression size must be in 1..={p}, got {m}")));
    }
    let u = haar_unitary(p, rng);
    let conjugated = &(&u * x) * &u.adjoint();
    let indices: Vec<usize> = (0..m).collect();
    PolykaySample::from_hermitian(&conjugated.principal_submatrix(&indices))
}

/// Eigenvalues of the principal submatrix of X on m uniformly chosen indices.
pub fn principal_submatrix_sample(x: &ComplexMatrix, m: usize, rng: &mut RngStream) -> Result<PolykaySample> {
    x.ensure_hermitian(crate::matrix::HERMITIAN_TOLERANCE)?;
    let p = x.dim();
    if m == 0 || m > p {
        return Err(Error::InvalidParameter(format!("submatrix size must be in 1..={p}, got {m}")));
    }
    let mut indices = rand::seq::index::sample(rng, p, m).into_vec();
    indices.sort_unstable();
    PolykaySample::from_hermitian(&x.principal_submatrix(&indices))
}

/// Which equality in distribution to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionIdentity {
    /// Tr Ŵ(n₁+n₂) against Tr Ŵ(n₁) + Tr Ŵ(n₂), central.
    DegreesSplit,
    /// Tr W(n₁+n₂, M₁) against Tr W(n₁, M₁) + Tr Ŵ(n₂).
    Sheffer,
    /// Tr W(n₁+n₂, M₁+M₂) against Tr W(n₁, M₁) + Tr W(n₂, M₂).
    MSplit,
}

impl DistributionIdentity {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributionIdentity::DegreesSplit => "degrees-split",
            DistributionIdentity::Sheffer => "sheffer",
            DistributionIdentity::MSplit => "m-split",
        }
    }
}

impl std::str::FromStr for DistributionIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrees-split" => Ok(DistributionIdentity::DegreesSplit),
            "sheffer" => Ok(DistributionIdentity::Sheffer),
            "m-split" => Ok(DistributionIdentity::MSplit),
            other => Err(Error::InvalidParameter(format!(
                "unknown identity '{other}', expected degrees-split, sheffer or m-split"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub order: usize,
    pub left: Estimate,
    pub right: Estimate,
    pub z_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity: DistributionIdentity,
    pub seed: u64,
    pub stream_id: u64,
    pub n_samples: usize,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn max_abs_z(&self) -> f64 {
        self.rows.iter().map(|r| r.z_score).fold(0.0, f64::max)
    }
}

/// Raw moments of orders 1..=4 of Tr W on both sides of an identity, each
/// side from its own independent draws, with z = |Δ| / √(se_L² + se_R²).
///
/// Both parameter sets must share Σ; params1 carries (n₁, M₁), params2
/// carries (n₂, M₂).
pub fn distribution_identity_check(
    params1: &WishartParams,
    params2: &WishartParams,
    identity: DistributionIdentity,
    n_samples: usize,
    rng: &mut RngStream,
) -> Result<IdentityReport> {
    check_samples(n_samples)?;
    if params1.p() != params2.p() {
        return Err(Error::DimensionMismatch { expected: params1.p(), found: params2.p() });
    }
    if params1.sigma().max_abs_diff(params2.sigma()) > crate::matrix::HERMITIAN_TOLERANCE * params1.sigma().norm().max(1.0) {
        return Err(Error::InvalidParameter("both sides of an identity must share sigma".into()));
    }
    let p = params1.p();
    let zero = ComplexMatrix::zeros(p);
    let (m_left, m_a, m_b) = match identity {
        DistributionIdentity::DegreesSplit => (zero.clone(), zero.clone(), zero),
        DistributionIdentity::Sheffer => (params1.m_matrix().clone(), params1.m_matrix().clone(), zero),
        DistributionIdentity::MSplit => (
            params1.m_matrix() + params2.m_matrix(),
            params1.m_matrix().clone(),
            params2.m_matrix().clone(),
        ),
    };
    let left = WishartSampler::new(&params1.with_n(params1.n() + params2.n())?.with_m(m_left)?)?;
    let part_a = WishartSampler::new(&params1.with_m(m_a)?)?;
    let part_b = WishartSampler::new(&params2.with_m(m_b)?)?;

    let mut left_acc = [Accumulator::new(); 4];
    let mut right_acc = [Accumulator::new(); 4];
    let mut w = ComplexMatrix::zeros(p);
    let push_powers = |acc: &mut [Accumulator; 4], x: C64| {
        let mut power = C64::new(1.0, 0.0);
        for a in acc.iter_mut() {
            power *= x;
            a.push(power);
        }
    };
    for _ in 0..n_samples {
        left.sample_into(rng, &mut w);
        push_powers(&mut left_acc, w.trace());
    }
    for _ in 0..n_samples {
        part_a.sample_into(rng, &mut w);
        let a = w.trace();
        part_b.sample_into(rng, &mut w);
        push_powers(&mut right_acc, a + w.trace());
    }
    let rows = (0..4)
        .map(|k| {
            let (l, r) = (left_acc[k].estimate(), right_acc[k].estimate());
            let se = (l.std_error.powi(2) + r.std_error.powi(2)).sqrt();
            let diff = (l.mean - r.mean).norm();
            let z_score = if diff == 0.0 { 0.0 } else { diff / se };
            IdentityRow { order: k + 1, left: l, right: r, z_score }
        })
        .collect();
    Ok(IdentityReport { identity, seed: rng.seed(), stream_id: rng.stream_id(), n_samples, rows })
}
