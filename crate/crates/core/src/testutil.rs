//! Seeded random fixtures shared by the unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::ComplexMatrix;
use crate::numeric::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, p: usize) -> ComplexMatrix {
    let rows = (0..p)
        .map(|_| (0..p).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
        .collect();
    ComplexMatrix::from_rows(rows).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, p: usize) -> ComplexMatrix {
    let a = random_matrix(rng, p);
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

/// A A† + shift·I, positive definite.
pub fn random_psd(rng: &mut impl Rng, p: usize, shift: f64) -> ComplexMatrix {
    let a = random_matrix(rng, p);
    &(&a * &a.adjoint()) + &ComplexMatrix::identity(p).scale(C64::new(shift, 0.0))
}

pub fn close(a: C64, b: C64, tol: f64) -> bool {
    crate::numeric::relative_error(a, b) <= tol
}
