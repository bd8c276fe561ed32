use num_complex::Complex64 as C64;

use super::partition::{integer_partitions, to_f64};
use crate::numeric::binomial_f64;

/// Complete exponential Bell polynomial Y_i(c_1, ..., c_i), with i = `c.len()`.
///
/// Evaluated with the recurrence Y_{k+1} = Σ_j C(k, j) Y_{k-j} c_{j+1}.
pub fn complete_bell(c: &[C64]) -> C64 {
    let i = c.len();
    let mut y = Vec::with_capacity(i + 1);
    y.push(C64::new(1.0, 0.0));
    for k in 0..i {
        let next = (0..=k).map(|j| y[k - j] * c[j] * binomial_f64(k, j)).sum();
        y.push(next);
    }
    y[i]
}

/// Cyclic polynomial C_i(a_1, ..., a_i) = Σ_{λ⊢i} 𝔠_λ a_λ, with i = `a.len()`.
///
/// The class sizes 𝔠_λ are exact integers converted at the last multiply.
pub fn cyclic_polynomial(a: &[C64]) -> C64 {
    let i = a.len();
    integer_partitions(i)
        .iter()
        .map(|lambda| {
            let coefficient = to_f64(&lambda.coefficients().cycle);
            let monomial: C64 = lambda.parts().iter().map(|&part| a[part - 1]).product();
            monomial * coefficient
        })
        .sum()
}

/// Complete homogeneous symmetric polynomials h_0, ..., h_i from power sums
/// `power_sums[r-1] = p_r`, using k·h_k = Σ_{r=1}^k p_r h_{k-r}.
///
/// Needs at least i power sums.
pub fn complete_homogeneous_from_power_sums(power_sums: &[C64], i: usize) -> Vec<C64> {
    assert!(power_sums.len() >= i, "need {i} power sums, got {}", power_sums.len());
    let mut h = Vec::with_capacity(i + 1);
    h.push(C64::new(1.0, 0.0));
    for k in 1..=i {
        let s: C64 = (1..=k).map(|r| power_sums[r - 1] * h[k - r]).sum();
        h.push(s / k as f64);
    }
    h
}

/// h_i(x_1, ..., x_p), the sum of all degree-i monomials in the x's.
pub fn complete_homogeneous(x: &[C64], i: usize) -> C64 {
    let mut power = vec![C64::new(1.0, 0.0); x.len()];
    let mut sums = Vec::with_capacity(i);
    for _ in 0..i {
        for (pw, xv) in power.iter_mut().zip(x) {
            *pw *= xv;
        }
        sums.push(power.iter().sum());
    }
    complete_homogeneous_from_power_sums(&sums, i)[i]
}

/// Falling factorial (x)_k = x(x-1)···(x-k+1).
pub fn falling_factorial(x: C64, k: usize) -> C64 {
    (0..k).map(|j| x - j as f64).product()
}
