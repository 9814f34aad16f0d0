//! Compensated floating-point kernels.
//!
//! Gram totals such as `Σ w_i w_j ⟨τ_i, τ_j⟩` can cancel almost completely
//! (a perfectly balanced family sums to zero), so plain recursive summation
//! loses every significant digit exactly where the verification tolerances
//! are tightest. The accumulators here carry the rounding error of each
//! product and addition alongside the running value.

/// Error-free transformation of `a * b` into `p + e` with `p = fl(a * b)`.
#[inline]
pub fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Neumaier-style compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Adds the product `a * b` without losing its rounding error.
    #[inline]
    pub fn add_product(&mut self, a: f64, b: f64) {
        let (p, e) = two_product(a, b);
        self.add(p);
        self.carry += e;
    }

    /// Adds `a * b * c`, keeping the rounding error of the first product.
    #[inline]
    pub fn add_triple_product(&mut self, a: f64, b: f64, c: f64) {
        let (p, e) = two_product(a, b);
        self.add_product(p, c);
        self.carry += e * c;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of a slice.
pub fn sum(xs: &[f64]) -> f64 {
    xs.iter().copied().collect::<CompensatedSum>().value()
}

/// Dot product evaluated in roughly twice the working precision.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = CompensatedSum::new();
    for (x, y) in a.iter().zip(b) {
        acc.add_product(*x, *y);
    }
    acc.value()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
