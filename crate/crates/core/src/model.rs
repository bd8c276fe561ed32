//! Parameters of a (non-)central complex Wishart distribution and the trace
//! caches every engine reads from.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::{power_traces, ComplexMatrix, HERMITIAN_TOLERANCE, PIVOT_TOLERANCE};
use crate::numeric::C64;

/// Default number of cached orders.
pub const DEFAULT_DEPTH: usize = 12;

/// Sign attached to every non-central contribution.
///
/// `Paper` multiplies them by −1, the formal compound-Poisson reading.
/// `Standard` uses +1, which is the distribution obtained by sampling
/// W = Σ (X_i − m_i)†(X_i − m_i). Monte Carlo only agrees with `Standard`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Paper,
    Standard,
}

impl Convention {
    pub fn sign(self) -> f64 {
        match self {
            Convention::Paper => -1.0,
            Convention::Standard => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Paper => "paper",
            Convention::Standard => "standard",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Convention::Paper),
            "standard" => Ok(Convention::Standard),
            other => Err(Error::InvalidParameter(format!(
                "convention must be \"paper\" or \"standard\", got {other:?}"
            ))),
        }
    }
}

/// Relative tolerances used when validating and inverting Σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { hermitian: HERMITIAN_TOLERANCE, pivot: PIVOT_TOLERANCE }
    }
}

/// T_i = Tr(Σ^i) and S_i = Tr(MΣ^{i−1}) for i = 1..=depth.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceCache {
    t: Vec<C64>,
    s: Vec<C64>,
}

impl TraceCache {
    /// S_i is accumulated as Tr(M·Σ^{i−1}); Σ is never inverted.
    pub fn compute(sigma: &ComplexMatrix, m: &ComplexMatrix, depth: usize) -> Self {
        let t = power_traces(sigma, depth);
        let mut s = Vec::with_capacity(depth);
        if depth > 0 {
            s.push(m.trace());
            let mut m_sigma = m.clone();
            for _ in 2..=depth {
                s.push(m_sigma.trace_of_product(sigma).expect("same dimension"));
                m_sigma = &m_sigma * sigma;
            }
        }
        TraceCache { t, s }
    }

    pub fn depth(&self) -> usize {
        self.t.len()
    }

    /// Tr(Σ^i), 1-based.
    pub fn t(&self, i: usize) -> C64 {
        self.t[i - 1]
    }

    /// Tr(MΣ^{i−1}), 1-based.
    pub fn s(&self, i: usize) -> C64 {
        self.s[i - 1]
    }

    pub fn t_values(&self) -> &[C64] {
        &self.t
    }

    pub fn s_values(&self) -> &[C64] {
        &self.s
    }
}

/// Validated (n, Σ, M, convention).
///
/// Σ must be Hermitian. M may be zero, Hermitian, or even non-Hermitian; the
/// last case is accepted and reported by `warnings`.
#[derive(Debug)]
pub struct WishartParams {
    n: f64,
    sigma: ComplexMatrix,
    m_matrix: ComplexMatrix,
    convention: Convention,
    tolerances: Tolerances,
    m_hermitian: bool,
    cache: TraceCache,
    omega: OnceLock<Result<ComplexMatrix>>,
}

impl Clone for WishartParams {
    fn clone(&self) -> Self {
        let omega = OnceLock::new();
        if let Some(value) = self.omega.get() {
            let _ = omega.set(value.clone());
        }
        WishartParams {
            n: self.n,
            sigma: self.sigma.clone(),
            m_matrix: self.m_matrix.clone(),
            convention: self.convention,
            tolerances: self.tolerances,
            m_hermitian: self.m_hermitian,
            cache: self.cache.clone(),
            omega,
        }
    }
}

impl WishartParams {
    pub fn new(n: f64, sigma: ComplexMatrix, m_matrix: ComplexMatrix, convention: Convention) -> Result<Self> {
        Self::with_options(n, sigma, m_matrix, convention, DEFAULT_DEPTH, Tolerances::default())
    }

    /// Central case, M = 0.
    pub fn central(n: f64, sigma: ComplexMatrix, convention: Convention) -> Result<Self> {
        let p = sigma.dim();
        Self::new(n, sigma, ComplexMatrix::zeros(p), convention)
    }

    pub fn with_options(
        n: f64,
        sigma: ComplexMatrix,
        m_matrix: ComplexMatrix,
        convention: Convention,
        depth: usize,
        tolerances: Tolerances,
    ) -> Result<Self> {
        if !n.is_finite() || n <= 0.0 {
            return Err(Error::InvalidParameter(format!("degrees of freedom must be positive, got {n}")));
        }
        if sigma.dim() == 0 {
            return Err(Error::InvalidParameter("sigma must be at least 1x1".into()));
        }
        if sigma.dim() != m_matrix.dim() {
            return Err(Error::DimensionMismatch { expected: sigma.dim(), found: m_matrix.dim() });
        }
        sigma.check_finite()?;
        m_matrix.check_finite()?;
        sigma.ensure_hermitian(tolerances.hermitian)?;
        let m_hermitian = m_matrix.is_hermitian(tolerances.hermitian);
        let cache = TraceCache::compute(&sigma, &m_matrix, depth);
        Ok(WishartParams {
            n,
            sigma,
            m_matrix,
            convention,
            tolerances,
            m_hermitian,
            cache,
            omega: OnceLock::new(),
        })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn p(&self) -> usize {
        self.sigma.dim()
    }

    pub fn sigma(&self) -> &ComplexMatrix {
        &self.sigma
    }

    pub fn m_matrix(&self) -> &ComplexMatrix {
        &self.m_matrix
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances
    }

    /// ±1 multiplying non-central contributions.
    pub fn sign(&self) -> f64 {
        self.convention.sign()
    }

    pub fn is_central(&self) -> bool {
        self.m_matrix.is_zero()
    }

    pub fn m_is_hermitian(&self) -> bool {
        self.m_hermitian
    }

    /// Human-readable caveats about the inputs.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.m_hermitian {
            out.push("m_matrix is not Hermitian; results are formal and cannot be checked by sampling".to_string());
        }
        out
    }

    /// Trace cache holding at least `depth` orders.
    pub fn traces(&self, depth: usize) -> Cow<'_, TraceCache> {
        if depth <= self.cache.depth() {
            Cow::Borrowed(&self.cache)
        } else {
            Cow::Owned(TraceCache::compute(&self.sigma, &self.m_matrix, depth))
        }
    }

    /// Ω = Σ⁻¹M, computed once.
    pub fn noncentrality(&self) -> Result<&ComplexMatrix> {
        self.omega
            .get_or_init(|| {
                if self.m_matrix.is_zero() {
                    Ok(ComplexMatrix::zeros(self.p()))
                } else {
                    self.sigma.solve_with_tolerance(&self.m_matrix, self.tolerances.pivot)
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        let mut out = self.clone();
        out.convention = convention;
        out
    }

    pub fn with_n(&self, n: f64) -> Result<Self> {
        Self::with_options(n, self.sigma.clone(), self.m_matrix.clone(), self.convention, self.cache.depth(), self.tolerances)
    }

    pub fn with_m(&self, m_matrix: ComplexMatrix) -> Result<Self> {
        Self::with_options(self.n, self.sigma.clone(), m_matrix, self.convention, self.cache.depth(), self.tolerances)
    }
}

/// Validate the inputs and cache T_1..T_depth and S_1..S_depth. Ω is left
/// for `WishartParams::noncentrality`.
pub fn build(
    n: f64,
    sigma: ComplexMatrix,
    m_matrix: ComplexMatrix,
    convention: Convention,
    depth: usize,
) -> Result<(WishartParams, TraceCache)> {
    let params = WishartParams::with_options(n, sigma, m_matrix, convention, depth, Tolerances::default())?;
    let cache = params.cache.clone();
    Ok((params, cache))
}

/// The 3×3 Σ and M of the worked numerical example used throughout the
/// tests and examples. Σ is Hermitian but slightly indefinite; M is not
/// Hermitian.
pub fn example_matrices() -> (ComplexMatrix, ComplexMatrix) {
    let c = C64::new;
    let sigma = ComplexMatrix::from_rows(vec![
        vec![c(0.025, 0.0), c(0.0, -0.0075), c(0.00175, 0.0)],
        vec![c(0.0, 0.0075), c(0.0070, 0.0), c(0.00135, 0.0)],
        vec![c(0.00175, 0.0), c(0.00135, 0.0), c(0.00043, 0.0)],
    ])
    .expect("3x3");
    let m = ComplexMatrix::from_real_rows(&[
        vec![0.0001, 0.0210, 0.3000],
        vec![0.0400, 0.0005, 0.0200],
        vec![0.0010, 0.0100, 0.0004],
    ])
    .expect("3x3");
    (sigma, m)
}
