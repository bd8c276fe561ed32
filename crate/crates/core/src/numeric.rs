use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Compensated (Kahan-Babuska) complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: C64,
    compensation: C64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: C64) {
        self.sum.re = neumaier_step(self.sum.re, value.re, &mut self.compensation.re);
        self.sum.im = neumaier_step(self.sum.im, value.im, &mut self.compensation.im);
    }

    pub fn value(&self) -> C64 {
        self.sum + self.compensation
    }
}

fn neumaier_step(sum: f64, value: f64, compensation: &mut f64) -> f64 {
    let t = sum + value;
    if sum.abs() >= value.abs() {
        *compensation += (sum - t) + value;
    } else {
        *compensation += (value - t) + sum;
    }
    t
}

impl std::iter::FromIterator<C64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Relative deviation |a - b| / max(|a|, |b|), falling back to the absolute
/// deviation when both values vanish.
pub fn relative_error(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// n! as a float (exact up to 22!).
pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient as a float.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Integer power of a complex number by repeated squaring.
pub fn cpowi(z: C64, k: usize) -> C64 {
    let mut result = C64::new(1.0, 0.0);
    let mut base = z;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result *= base;
        }
        base *= base;
        e >>= 1;
    }
    result
}
