//! Dense complex square matrices at desk scale (p up to about 64).
//!
//! Tolerances are relative to `norm()`, the largest entry modulus times the
//! dimension.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numeric::{KahanSum, C64};

/// Relative tolerance for the Hermitian check.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Relative pivot tolerance for LU factorization.
pub const PIVOT_TOLERANCE: f64 = 1e-12;
/// Sweep budget of the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, &d) in diag.iter().enumerate() {
            m.set(k, k, d);
        }
        m
    }

    /// The elementary matrix E_kk of dimension `dim`.
    pub fn unit_diagonal(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set(k, k, C64::new(1.0, 0.0));
        m
    }

    /// Row-major entries; rejects ragged or non-finite input.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend(row);
        }
        let m = ComplexMatrix { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    /// Separate real and imaginary parts, each p×p.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch { expected: re.len(), found: im.len() });
        }
        let rows = re
            .iter()
            .zip(im)
            .map(|(r, i)| {
                if r.len() != i.len() {
                    return Err(Error::DimensionMismatch { expected: r.len(), found: i.len() });
                }
                Ok(r.iter().zip(i).map(|(&a, &b)| C64::new(a, b)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: C64) {
        self.data[r * self.dim + c] = value;
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn real_parts(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|r| self.row(r).iter().map(|z| z.re).collect()).collect()
    }

    pub fn imag_parts(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|r| self.row(r).iter().map(|z| z.im).collect()).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|k| self.get(k, k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite("matrix entry".into()))
        }
    }

    /// max |a_ij| · p
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max) * self.dim as f64
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_deviation() <= rel_tol * self.norm()
    }

    pub fn ensure_hermitian(&self, rel_tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        let tolerance = rel_tol * self.norm();
        if deviation <= tolerance {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation, tolerance })
        }
    }

    fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.dim;
        let mut out = Self::zeros(p);
        for r in 0..p {
            let out_row = &mut out.data[r * p..(r + 1) * p];
            for k in 0..p {
                let a = self.data[r * p + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let other_row = &other.data[k * p..(k + 1) * p];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.get(k, k)).collect::<KahanSum>().value()
    }

    /// Tr(AB) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<C64> {
        self.ensure_same_dim(other)?;
        let p = self.dim;
        let mut sum = KahanSum::new();
        for r in 0..p {
            for c in 0..p {
                sum.add(self.get(r, c) * other.get(c, r));
            }
        }
        Ok(sum.value())
    }

    /// Solve A X = B by LU with partial pivoting.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        self.solve_with_tolerance(b, PIVOT_TOLERANCE)
    }

    /// As `solve`, with the relative pivot tolerance given explicitly.
    pub fn solve_with_tolerance(&self, b: &Self, rel_tol: f64) -> Result<Self> {
        self.ensure_same_dim(b)?;
        let lu = Lu::factor(self, rel_tol)?;
        Ok(lu.solve(b))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.dim))
    }

    pub fn determinant(&self) -> Result<C64> {
        match Lu::factor(self, PIVOT_TOLERANCE) {
            Ok(lu) => Ok(lu.determinant()),
            Err(Error::SingularMatrix { .. }) => Ok(C64::new(0.0, 0.0)),
            Err(e) => Err(e),
        }
    }

    /// Principal submatrix on the given (sorted or not) index set.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let q = indices.len();
        let mut out = Self::zeros(q);
        for (a, &r) in indices.iter().enumerate() {
            for (b, &c) in indices.iter().enumerate() {
                out.set(a, b, self.get(r, c));
            }
        }
        out
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let cells: Vec<String> = self.row(r).iter().map(|z| format!("{:>12.5e}{:+.5e}i", z.re, z.im)).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    /// Panics on a dimension mismatch; use `try_mul` for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        self.mul_unchecked(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|a| -a).collect() }
    }
}

struct Lu {
    dim: usize,
    lu: Vec<C64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    fn factor(a: &ComplexMatrix, rel_tol: f64) -> Result<Self> {
        let p = a.dim;
        let tolerance = rel_tol * a.norm();
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..p).collect();
        let mut swaps = 0;
        for k in 0..p {
            let (pivot_row, pivot_abs) =
                (k..p).map(|r| (r, lu[r * p + k].norm())).fold((k, -1.0), |best, x| if x.1 > best.1 { x } else { best });
            if pivot_abs <= tolerance || pivot_abs == 0.0 {
                return Err(Error::SingularMatrix { pivot: pivot_abs, tolerance });
            }
            if pivot_row != k {
                for c in 0..p {
                    lu.swap(k * p + c, pivot_row * p + c);
                }
                perm.swap(k, pivot_row);
                swaps += 1;
            }
            let pivot = lu[k * p + k];
            for r in k + 1..p {
                let factor = lu[r * p + k] / pivot;
                lu[r * p + k] = factor;
                for c in k + 1..p {
                    let u = lu[k * p + c];
                    lu[r * p + c] -= factor * u;
                }
            }
        }
        Ok(Lu { dim: p, lu, perm, swaps })
    }

    fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let p = self.dim;
        let mut x = ComplexMatrix::zeros(p);
        for col in 0..p {
            let mut y: Vec<C64> = (0..p).map(|r| b.get(self.perm[r], col)).collect();
            for r in 0..p {
                for c in 0..r {
                    let l = self.lu[r * p + c];
                    y[r] = y[r] - l * y[c];
                }
            }
            for r in (0..p).rev() {
                for c in r + 1..p {
                    let u = self.lu[r * p + c];
                    y[r] = y[r] - u * y[c];
                }
                y[r] /= self.lu[r * p + r];
            }
            for r in 0..p {
                x.set(r, col, y[r]);
            }
        }
        x
    }

    fn determinant(&self) -> C64 {
        let p = self.dim;
        let prod: C64 = (0..p).map(|k| self.lu[k * p + k]).product();
        if self.swaps % 2 == 1 {
            -prod
        } else {
            prod
        }
    }
}

/// Tr(F_1 F_2 ··· F_s), multiplied left to right.
pub fn product_trace(factors: &[&ComplexMatrix]) -> Result<C64> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("product_trace needs at least one factor".into()))?;
    for f in rest {
        first.ensure_same_dim(f)?;
    }
    match rest.split_last() {
        None => Ok(first.trace()),
        Some((last, middle)) => {
            let mut acc = (*first).clone();
            for f in middle {
                acc = acc.mul_unchecked(f);
            }
            acc.trace_of_product(last)
        }
    }
}

/// [Tr(A), Tr(A²), ..., Tr(A^k_max)] by repeated multiplication.
pub fn power_traces(a: &ComplexMatrix, k_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(k_max);
    if k_max == 0 {
        return out;
    }
    out.push(a.trace());
    let mut power = a.clone();
    for _ in 2..=k_max {
        out.push(power.trace_of_product(a).expect("same dimension"));
        power = power.mul_unchecked(a);
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues, descending.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

/// Cyclic complex Jacobi iteration.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.ensure_hermitian(HERMITIAN_TOLERANCE)?;
    let p = a.dim;
    // Symmetrize so that round-off in the input does not leak into the rotations.
    let mut m = ComplexMatrix::zeros(p);
    for r in 0..p {
        for c in 0..p {
            m.set(r, c, (a.get(r, c) + a.get(c, r).conj()) * 0.5);
        }
    }
    let mut v = ComplexMatrix::identity(p);
    let scale = a.norm().max(f64::MIN_POSITIVE);

    let off_diagonal = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..p {
            for c in 0..p {
                if r != c {
                    s += m.get(r, c).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = p <= 1;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal(&m) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for i in 0..p {
            for j in i + 1..p {
                rotate(&mut m, &mut v, i, j);
            }
        }
    }
    if !converged && off_diagonal(&m) > 1e-13 * scale {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&x, &y| m.get(y, y).re.total_cmp(&m.get(x, x).re));
    let values = order.iter().map(|&k| m.get(k, k).re).collect();
    let mut vectors = ComplexMatrix::zeros(p);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..p {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One two-sided Jacobi rotation annihilating m[i][j].
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, i: usize, j: usize) {
    let p = m.dim;
    let aij = m.get(i, j);
    let g = aij.norm();
    if g == 0.0 {
        return;
    }
    let e = aij / g;
    let aii = m.get(i, i).re;
    let ajj = m.get(j, j).re;
    let theta = (ajj - aii) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G acts on columns i, j: col_i = (c, -s·conj(e)), col_j = (s·e, c) up to
    // the phase choice below; with G unitary, M <- G^H M G.
    let gii = C64::new(c, 0.0);
    let gji = -e.conj() * s;
    let gij = e * s;
    let gjj = C64::new(c, 0.0);
    // M <- M G (columns)
    for r in 0..p {
        let mi = m.get(r, i);
        let mj = m.get(r, j);
        m.set(r, i, mi * gii + mj * gji);
        m.set(r, j, mi * gij + mj * gjj);
    }
    // M <- G^H M (rows)
    for col in 0..p {
        let mi = m.get(i, col);
        let mj = m.get(j, col);
        m.set(i, col, gii.conj() * mi + gji.conj() * mj);
        m.set(j, col, gij.conj() * mi + gjj.conj() * mj);
    }
    m.set(i, j, C64::new(0.0, 0.0));
    m.set(j, i, C64::new(0.0, 0.0));
    let di = m.get(i, i).re;
    let dj = m.get(j, j).re;
    m.set(i, i, C64::new(di, 0.0));
    m.set(j, j, C64::new(dj, 0.0));
    for r in 0..p {
        let vi = v.get(r, i);
        let vj = v.get(r, j);
        v.set(r, i, vi * gii + vj * gji);
        v.set(r, j, vi * gij + vj * gjj);
    }
}
