//! Joint moments and cumulants of (Tr[W H_1], ..., Tr[W H_m]) and the
//! generalized product moments E ∏_c Tr(∏_{j∈c} W H_j).
//!
//! Everything here is read off the moment generating function
//!
//! ```text
//! log E exp Tr(W Z) = n Σ_l Tr[(ΣZ)^l]/l + s Σ_l Tr[M Z (ΣZ)^{l-1}],   Z = Σ_k z_k H_k
//! ```
//!
//! whose coefficients are E[ρ^t] (first sum, grouped by necklaces) and
//! E[η^t] (second sum, over every string of kind t).

use std::collections::HashMap;
use std::fmt;

use crate::budget::{self, Budget};
use crate::combinatorics::{
    all_permutations, multi_factorial, multiindex_partitions, necklaces_of_kind, strings_of_kind, sub_indices,
    CyclePermutation, MultiIndexPartition,
};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::WishartParams;
use crate::numeric::{cpowi, KahanSum, C64};
use crate::univariate::{MomentSequence, SequenceKind};

/// The direction matrices H_1, ..., H_m.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceDirections {
    h: Vec<ComplexMatrix>,
}

impl TraceDirections {
    pub fn new(h: Vec<ComplexMatrix>) -> Result<Self> {
        let first = h.first().ok_or_else(|| Error::InvalidParameter("at least one direction matrix is required".into()))?;
        for other in &h[1..] {
            if other.dim() != first.dim() {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: other.dim() });
            }
        }
        for matrix in &h {
            matrix.check_finite()?;
        }
        Ok(TraceDirections { h })
    }

    /// The single direction H = I_p, which reduces everything to Tr W.
    pub fn identity(p: usize) -> Self {
        TraceDirections { h: vec![ComplexMatrix::identity(p)] }
    }

    /// H_k = E_kk for k = 1..p.
    pub fn unit_diagonals(p: usize) -> Self {
        TraceDirections { h: (0..p).map(|k| ComplexMatrix::unit_diagonal(p, k)).collect() }
    }

    /// m, the number of directions.
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.h[0].dim()
    }

    pub fn get(&self, k: usize) -> &ComplexMatrix {
        &self.h[k]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.h
    }

    pub(crate) fn check_dim(&self, p: usize) -> Result<()> {
        if self.dim() == p {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: p, found: self.dim() })
        }
    }
}

/// Word traces Tr ∏(ΣH_k) and Tr[M H_{b1} ΣH_{b2} ··· ΣH_{bl}] for one
/// choice of (Σ, M, H). Σ need not be Hermitian here.
#[derive(Debug, Clone)]
pub struct TraceMoments {
    sigma_h: Vec<ComplexMatrix>,
    m_h: Vec<ComplexMatrix>,
    central: bool,
}

impl TraceMoments {
    pub fn new(sigma: &ComplexMatrix, m: &ComplexMatrix, h: &TraceDirections) -> Result<Self> {
        h.check_dim(sigma.dim())?;
        if m.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch { expected: sigma.dim(), found: m.dim() });
        }
        Ok(TraceMoments {
            sigma_h: h.matrices().iter().map(|hk| sigma * hk).collect(),
            m_h: h.matrices().iter().map(|hk| m * hk).collect(),
            central: m.is_zero(),
        })
    }

    pub fn from_params(params: &WishartParams, h: &TraceDirections) -> Result<Self> {
        Self::new(params.sigma(), params.m_matrix(), h)
    }

    pub fn directions(&self) -> usize {
        self.sigma_h.len()
    }

    fn check_kind(&self, t: &[usize]) -> Result<()> {
        if t.len() != self.directions() {
            return Err(Error::DimensionMismatch { expected: self.directions(), found: t.len() });
        }
        if t.iter().sum::<usize>() == 0 {
            return Err(Error::InvalidParameter("multi-index must have |i| >= 1".into()));
        }
        Ok(())
    }

    /// Tr ∏_{k in word} (ΣH_k)
    pub fn word_trace(&self, word: &[usize]) -> C64 {
        chain_trace(word.iter().map(|&k| &self.sigma_h[k]))
    }

    /// Tr[(M H_{w1})(ΣH_{w2}) ··· (ΣH_{wl})]
    pub fn eta_word_trace(&self, word: &[usize]) -> C64 {
        chain_trace(std::iter::once(&self.m_h[word[0]]).chain(word[1..].iter().map(|&k| &self.sigma_h[k])))
    }

    /// E[ρ^t] = Σ over necklaces of kind t of Tr ∏(ΣH) / repetitions.
    pub fn rho(&self, t: &[usize]) -> Result<C64> {
        self.check_kind(t)?;
        Ok(necklaces_of_kind(t)
            .iter()
            .map(|a| self.word_trace(a.representative()) / a.repetitions() as f64)
            .collect::<KahanSum>()
            .value())
    }

    /// E[η^t] = Σ over necklaces of kind t, then over their distinct
    /// rotations b, of Tr[M H_{b1} ΣH_{b2} ··· ΣH_{bl}].
    pub fn eta(&self, t: &[usize]) -> Result<C64> {
        self.check_kind(t)?;
        if self.central {
            return Ok(C64::new(0.0, 0.0));
        }
        Ok(necklaces_of_kind(t)
            .iter()
            .flat_map(|a| a.rotations())
            .map(|b| self.eta_word_trace(&b))
            .collect::<KahanSum>()
            .value())
    }

    /// (1/|t|) Σ over all strings of kind t of Tr ∏(ΣH).
    pub fn rho_all_strings(&self, t: &[usize]) -> Result<C64> {
        self.check_kind(t)?;
        let total: usize = t.iter().sum();
        Ok(strings_of_kind(t).iter().map(|w| self.word_trace(w)).collect::<KahanSum>().value() / total as f64)
    }

    /// Σ over all strings of kind t of Tr[M H_{b1} ΣH_{b2} ··· ΣH_{bl}].
    pub fn eta_all_strings(&self, t: &[usize]) -> Result<C64> {
        self.check_kind(t)?;
        Ok(strings_of_kind(t).iter().map(|w| self.eta_word_trace(w)).collect::<KahanSum>().value())
    }

    /// E[ρ^t] and E[η^t] for every nonzero t ≤ i.
    fn table(&self, i: &[usize]) -> Result<HashMap<Vec<usize>, (C64, C64)>> {
        sub_indices(i)
            .into_iter()
            .map(|t| {
                let rho = self.rho(&t)?;
                let eta = self.eta(&t)?;
                Ok((t, (rho, eta)))
            })
            .collect()
    }
}

fn chain_trace<'a>(mut factors: impl Iterator<Item = &'a ComplexMatrix>) -> C64 {
    let first = factors.next().expect("nonempty word");
    let mut rest: Vec<&ComplexMatrix> = factors.collect();
    match rest.pop() {
        None => first.trace(),
        Some(last) => {
            let mut acc = first.clone();
            for f in rest {
                acc = &acc * f;
            }
            acc.trace_of_product(last).expect("same dimension")
        }
    }
}

fn check_index(h: &TraceDirections, i: &[usize]) -> Result<usize> {
    if i.len() != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), found: i.len() });
    }
    let total: usize = i.iter().sum();
    Budget::check("joint order |i|", total, budget::current().joint_order)?;
    Ok(total)
}

/// Σ_{λ⊨t} weight(l(λ))/𝔪(λ)! ∏_j value(λ_j), with 𝔪(λ)! = ∏ r!.
/// The zero index gives 1.
pub fn exponential_sum(t: &[usize], value: impl Fn(&[usize]) -> C64, weight: impl Fn(usize) -> C64) -> C64 {
    if t.iter().all(|&x| x == 0) {
        return C64::new(1.0, 0.0);
    }
    multiindex_partitions(t)
        .iter()
        .map(|lambda| {
            let product: C64 = lambda.iter().map(|(col, r)| cpowi(value(col), r)).product();
            weight(lambda.len()) * product / lambda.multiplicity_factorial()
        })
        .collect::<KahanSum>()
        .value()
}

/// E[ρ^i] for the model's Σ.
pub fn rho_moment(params: &WishartParams, h: &TraceDirections, i: &[usize]) -> Result<C64> {
    check_index(h, i)?;
    TraceMoments::from_params(params, h)?.rho(i)
}

/// E[η^i] for the model's Σ and M.
///
/// The non-centrality enters as Tr[M H_{b1} ΣH_{b2} ··· ΣH_{bl}]
/// = Tr[(MΣ⁻¹) ∏(ΣH_{bk})], so Σ is never inverted.
pub fn eta_moment(params: &WishartParams, h: &TraceDirections, i: &[usize]) -> Result<C64> {
    check_index(h, i)?;
    TraceMoments::from_params(params, h)?.eta(i)
}

/// E{∏_j Tr[W H_j]^{i_j}}
///
/// i! Σ_{t1+t2=i} [Σ_{λ⊨t1} s^{l}/𝔪! ∏E[η^λ]] · [Σ_{λ⊨t2} n^{l}/𝔪! ∏E[ρ^λ]]
pub fn joint_moment(params: &WishartParams, h: &TraceDirections, i: &[usize]) -> Result<C64> {
    let total = check_index(h, i)?;
    if total == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let table = TraceMoments::from_params(params, h)?.table(i)?;
    let n = C64::new(params.n(), 0.0);
    let s = C64::new(params.sign(), 0.0);
    let rho = |t: &[usize]| table[t].0;
    let eta = |t: &[usize]| table[t].1;
    let central = |t: &[usize]| exponential_sum(t, rho, |l| cpowi(n, l));

    if params.is_central() {
        return Ok(central(i) * multi_factorial(i));
    }
    let mut sum = KahanSum::new();
    sum.add(central(i));
    for t1 in sub_indices(i) {
        let t2: Vec<usize> = i.iter().zip(&t1).map(|(a, b)| a - b).collect();
        sum.add(exponential_sum(&t1, eta, |l| cpowi(s, l)) * central(&t2));
    }
    Ok(sum.value() * multi_factorial(i))
}

/// Cum_i = i! (n E[ρ^i] + s E[η^i]).
pub fn joint_cumulant(params: &WishartParams, h: &TraceDirections, i: &[usize]) -> Result<C64> {
    let total = check_index(h, i)?;
    if total == 0 {
        return Err(Error::InvalidParameter("joint cumulants need |i| >= 1".into()));
    }
    let tm = TraceMoments::from_params(params, h)?;
    Ok((tm.rho(i)? * params.n() + tm.eta(i)? * params.sign()) * multi_factorial(i))
}

/// Joint moment rebuilt from joint cumulants: Σ_{λ⊨i} d_λ ∏ Cum_{λ_j}.
pub fn joint_moment_from_cumulants(params: &WishartParams, h: &TraceDirections, i: &[usize]) -> Result<C64> {
    let total = check_index(h, i)?;
    if total == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let cumulants: HashMap<Vec<usize>, C64> =
        sub_indices(i).into_iter().map(|t| joint_cumulant(params, h, &t).map(|c| (t, c))).collect::<Result<_>>()?;
    Ok(multiindex_partitions(i)
        .iter()
        .map(|lambda: &MultiIndexPartition| {
            let product: C64 = lambda.iter().map(|(col, r)| cpowi(cumulants[col], r)).product();
            product * lambda.d_coefficient()
        })
        .collect::<KahanSum>()
        .value())
}

/// Joint cumulant when the number of draws is itself random with
/// cumulants c_k: i! (Σ_{λ⊨i} c_{l(λ)}/𝔪! ∏E[ρ^λ] + s E[η^i]).
pub fn joint_cumulant_randomized(
    alpha_cumulants: &MomentSequence,
    params: &WishartParams,
    h: &TraceDirections,
    i: &[usize],
) -> Result<C64> {
    let total = check_index(h, i)?;
    if total == 0 {
        return Err(Error::InvalidParameter("joint cumulants need |i| >= 1".into()));
    }
    alpha_cumulants.require(SequenceKind::Cumulants, total)?;
    let tm = TraceMoments::from_params(params, h)?;
    let table = tm.table(i)?;
    let central = exponential_sum(i, |t| table[t].0, |l| alpha_cumulants.value(l));
    Ok((central + table[i].1 * params.sign()) * multi_factorial(i))
}

/// Which summand of W = Ŵ + A a factor refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// The central Wishart matrix Ŵ(n).
    Central,
    /// The formal non-central part A, with cumulants s·Tr[M H ΣH ···].
    Formal,
}

impl Component {
    pub fn symbol(self) -> &'static str {
        match self {
            Component::Central => "W",
            Component::Formal => "A",
        }
    }
}

fn check_product_size(h: &TraceDirections, sigma_perm: &CyclePermutation, limit: usize, what: &'static str) -> Result<usize> {
    let k = sigma_perm.size();
    if k != h.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), found: k });
    }
    Budget::check(what, k, limit)?;
    Ok(k)
}

/// Per-cycle choice inside `product_moment_core`: `None` closes the cycle
/// of τ with Σ (a Ŵ block), `Some(e)` makes it an A block whose M sits
/// in front of H_e.
type CycleChoice = Option<usize>;

/// Σ_τ Σ_{choices} n^{#Ŵ blocks} s^{#A blocks} ∏_{c∈C(τσ)} Tr(∏_{k∈c} X_k H_k),
/// where the cycles of τ are the cumulant blocks, X_k = M for the chosen
/// cut element of each A block and Σ otherwise, and each cycle c of τσ is
/// traversed k → τσ(k).
fn product_moment_core(
    params: &WishartParams,
    h: &TraceDirections,
    sigma_perm: &CyclePermutation,
    allowed: impl Fn(&[usize]) -> Vec<CycleChoice>,
) -> Result<C64> {
    h.check_dim(params.p())?;
    let k = sigma_perm.size();
    let sigma_h: Vec<ComplexMatrix> = h.matrices().iter().map(|hk| params.sigma() * hk).collect();
    let m_h: Vec<ComplexMatrix> = h.matrices().iter().map(|hk| params.m_matrix() * hk).collect();
    let n = C64::new(params.n(), 0.0);
    let s = C64::new(params.sign(), 0.0);

    let mut total = KahanSum::new();
    for tau in all_permutations(k) {
        let options: Vec<Vec<CycleChoice>> = tau.cycles().iter().map(|c| allowed(c)).collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let rho_images: Vec<usize> = (0..k).map(|j| tau.image(sigma_perm.image(j))).collect();
        let rho = CyclePermutation::from_images(rho_images).expect("product of permutations");
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut weight = C64::new(1.0, 0.0);
            let mut cut = vec![false; k];
            for (opts, &pick) in options.iter().zip(&choice) {
                match opts[pick] {
                    None => weight *= n,
                    Some(e) => {
                        weight *= s;
                        cut[e] = true;
                    }
                }
            }
            let mut value = weight;
            for cycle in rho.cycles() {
                value *= chain_trace(cycle.iter().map(|&j| if cut[j] { &m_h[j] } else { &sigma_h[j] }));
            }
            total.add(value);

            if !advance(&mut choice, &options) {
                break;
            }
        }
    }
    Ok(total.value())
}

/// Odometer step over the per-cycle options; false once every combination was visited.
fn advance(choice: &mut [usize], options: &[Vec<CycleChoice>]) -> bool {
    for (pick, opts) in choice.iter_mut().zip(options) {
        *pick += 1;
        if *pick < opts.len() {
            return true;
        }
        *pick = 0;
    }
    false
}

fn pure_choices(component: Component) -> impl Fn(&[usize]) -> Vec<CycleChoice> {
    move |cycle| match component {
        Component::Central => vec![None],
        Component::Formal => cycle.iter().map(|&e| Some(e)).collect(),
    }
}

/// E{∏_{c∈C(σ)} Tr[∏_{j∈c} Ŵ(n) H_j]} = Σ_{τ∈S_k} n^{|C(στ⁻¹)|} ∏_{c∈C(τ)} Tr(∏_{j∈c} ΣH_j),
/// each cycle of τ read j → τ(j).
pub fn central_product_moment(params: &WishartParams, h: &TraceDirections, sigma_perm: &CyclePermutation) -> Result<C64> {
    let k = check_product_size(h, sigma_perm, budget::current().product_moment_size, "product moment size")?;
    h.check_dim(params.p())?;
    let tm = TraceMoments::new(params.sigma(), params.m_matrix(), h)?;
    let n = C64::new(params.n(), 0.0);
    let sigma_inv_compose = |tau: &CyclePermutation| sigma_perm.compose(&tau.inverse()).num_cycles();
    Ok(all_permutations(k)
        .map(|tau| {
            let product: C64 = tau.cycles().iter().map(|c| tm.word_trace(c)).product();
            cpowi(n, sigma_inv_compose(&tau)) * product
        })
        .collect::<KahanSum>()
        .value())
}

/// E{∏_{c∈C(σ)} Tr[∏_{j∈c} A H_j]} for the formal non-central part A.
///
/// Σ_τ s^{|C(τ)|} Σ_{cuts} ∏_{c∈C(τσ)} Tr(∏ X_k H_k): every cycle of τ is
/// one cumulant block and carries a single M, placed in front of one of its
/// elements; all other positions carry Σ.
pub fn a_product_moment(params: &WishartParams, h: &TraceDirections, sigma_perm: &CyclePermutation) -> Result<C64> {
    check_product_size(h, sigma_perm, budget::current().product_moment_size, "product moment size")?;
    if params.is_central() {
        return Ok(C64::new(0.0, 0.0));
    }
    product_moment_core(params, h, sigma_perm, pure_choices(Component::Formal))
}

/// E{∏_{c∈C(σ)} Tr[∏_{j∈c} B_j H_j]} for an assignment B_j ∈ {Ŵ, A}, mixed
/// cycles included. Ŵ and A are independent, so every cumulant block is
/// pure.
pub fn assignment_moment(
    params: &WishartParams,
    h: &TraceDirections,
    sigma_perm: &CyclePermutation,
    assignment: &[Component],
) -> Result<C64> {
    let k = check_product_size(h, sigma_perm, budget::current().product_moment_size, "product moment size")?;
    if assignment.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: assignment.len() });
    }
    if params.is_central() && assignment.contains(&Component::Formal) {
        return Ok(C64::new(0.0, 0.0));
    }
    product_moment_core(params, h, sigma_perm, |cycle| {
        let first = assignment[cycle[0]];
        if cycle.iter().any(|&j| assignment[j] != first) {
            Vec::new()
        } else {
            pure_choices(first)(cycle)
        }
    })
}

/// E{∏_{c∈C(σ)} Tr[∏_{j∈c} W(n) H_j]} for the full non-central W.
pub fn generalized_moment(params: &WishartParams, h: &TraceDirections, sigma_perm: &CyclePermutation) -> Result<C64> {
    check_product_size(h, sigma_perm, budget::current().product_moment_size, "product moment size")?;
    let central = params.is_central();
    product_moment_core(params, h, sigma_perm, |cycle| {
        let mut options = vec![None];
        if !central {
            options.extend(cycle.iter().map(|&e| Some(e)));
        }
        options
    })
}

/// One cycle of σ under one assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFactor {
    /// Component of each position of the cycle, in cycle order.
    pub assignment: Vec<Component>,
    /// 0-based direction indices in cycle order.
    pub cycle: Vec<usize>,
    /// E[Tr ∏ B_j H_j] of this cycle alone; `None` when the cycle mixes Ŵ and A.
    pub value: Option<C64>,
}

impl TraceFactor {
    pub fn is_symbolic(&self) -> bool {
        self.value.is_none()
    }
}

impl fmt::Display for TraceFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tr(")?;
        for (b, j) in self.assignment.iter().zip(&self.cycle) {
            write!(f, "{}H{}", b.symbol(), j + 1)?;
        }
        write!(f, ")")
    }
}

/// One of the 2^k assignments in W = Ŵ + A expanded over σ's cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm {
    pub coefficient: C64,
    /// B_j for j = 0..k.
    pub assignment: Vec<Component>,
    pub factors: Vec<TraceFactor>,
    /// Joint expectation of the product of factors when no factor is
    /// symbolic: (central product moment of the Ŵ cycles) × (A product
    /// moment of the A cycles).
    pub value: Option<C64>,
}

impl ExpansionTerm {
    pub fn is_symbolic(&self) -> bool {
        self.value.is_none()
    }
}

impl fmt::Display for ExpansionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedMomentExpansion {
    pub sigma_perm: CyclePermutation,
    pub terms: Vec<ExpansionTerm>,
}

impl GeneralizedMomentExpansion {
    pub fn is_fully_evaluated(&self) -> bool {
        self.terms.iter().all(|t| !t.is_symbolic())
    }

    /// Sum of the evaluated terms.
    pub fn evaluated_sum(&self) -> C64 {
        self.terms.iter().filter_map(|t| t.value.map(|v| v * t.coefficient)).collect::<KahanSum>().value()
    }

    pub fn symbolic_terms(&self) -> impl Iterator<Item = &ExpansionTerm> {
        self.terms.iter().filter(|t| t.is_symbolic())
    }

    /// Number of symbolic (mixed) factors over all terms.
    pub fn symbolic_factor_count(&self) -> usize {
        self.terms.iter().flat_map(|t| &t.factors).filter(|f| f.is_symbolic()).count()
    }
}

/// Expand E ∏_c Tr(∏_{j∈c} W H_j) with W = Ŵ + A into its 2^k assignments.
///
/// Terms whose cycles are all pure are evaluated exactly. A cycle mixing Ŵ
/// and A is left symbolic; `assignment_moment` evaluates such terms when
/// needed. With M = 0 every term containing A vanishes and is omitted.
pub fn generalized_moment_expansion(
    params: &WishartParams,
    h: &TraceDirections,
    sigma_perm: &CyclePermutation,
) -> Result<GeneralizedMomentExpansion> {
    let k = check_product_size(h, sigma_perm, budget::current().expansion_size, "expansion size")?;
    h.check_dim(params.p())?;
    let central = params.is_central();
    let mut terms = Vec::new();
    for mask in 0..(1usize << k) {
        let assignment: Vec<Component> =
            (0..k).map(|j| if mask >> j & 1 == 1 { Component::Formal } else { Component::Central }).collect();
        if central && mask != 0 {
            continue;
        }
        let mut factors = Vec::with_capacity(sigma_perm.num_cycles());
        for cycle in sigma_perm.cycles() {
            let parts: Vec<Component> = cycle.iter().map(|&j| assignment[j]).collect();
            let pure = parts.iter().all(|&b| b == parts[0]);
            let value = if pure { Some(single_cycle_moment(params, h, cycle, parts[0])?) } else { None };
            factors.push(TraceFactor { assignment: parts, cycle: cycle.clone(), value });
        }
        let value = if factors.iter().all(|f| !f.is_symbolic()) {
            Some(split_product(params, h, sigma_perm, &assignment)?)
        } else {
            None
        };
        terms.push(ExpansionTerm { coefficient: C64::new(1.0, 0.0), assignment, factors, value });
    }
    Ok(GeneralizedMomentExpansion { sigma_perm: sigma_perm.clone(), terms })
}

/// E[Tr ∏_{j∈cycle} B H_j] for a single pure cycle.
fn single_cycle_moment(params: &WishartParams, h: &TraceDirections, cycle: &[usize], component: Component) -> Result<C64> {
    let sub = TraceDirections { h: cycle.iter().map(|&j| h.get(j).clone()).collect() };
    let len = cycle.len();
    let one_cycle = CyclePermutation::from_images((0..len).map(|j| (j + 1) % len).collect())?;
    match component {
        Component::Central => central_product_moment(params, &sub, &one_cycle),
        Component::Formal => a_product_moment(params, &sub, &one_cycle),
    }
}

/// Product of the central moment over the Ŵ cycles and the A moment over
/// the A cycles; valid when no cycle is mixed.
fn split_product(
    params: &WishartParams,
    h: &TraceDirections,
    sigma_perm: &CyclePermutation,
    assignment: &[Component],
) -> Result<C64> {
    let mut value = C64::new(1.0, 0.0);
    for component in [Component::Central, Component::Formal] {
        let cycles: Vec<&Vec<usize>> = sigma_perm.cycles().iter().filter(|c| assignment[c[0]] == component).collect();
        if cycles.is_empty() {
            continue;
        }
        let positions: Vec<usize> = cycles.iter().flat_map(|c| c.iter().copied()).collect();
        let local: HashMap<usize, usize> = positions.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let local_cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|j| local[j]).collect()).collect();
        let sub_perm = CyclePermutation::from_cycles(positions.len(), &local_cycles)?;
        let sub_h = TraceDirections { h: positions.iter().map(|&j| h.get(j).clone()).collect() };
        value *= match component {
            Component::Central => central_product_moment(params, &sub_h, &sub_perm)?,
            Component::Formal => a_product_moment(params, &sub_h, &sub_perm)?,
        };
    }
    Ok(value)
}
