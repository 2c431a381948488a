//! Accurate floating-point accumulation.

use num_complex::Complex64;

const PAIRWISE_BLOCK: usize = 128;

/// Pairwise (tree) summation; error grows like `O(log n)` ulps.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise summation of `f(v)` without materialising the mapped slice.
pub fn pairwise_sum_by<T>(values: &[T], f: &impl Fn(&T) -> f64) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().map(f).sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_by(&values[..mid], f) + pairwise_sum_by(&values[mid..], f)
}

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for Compensated {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Compensated::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated accumulation of complex values, component-wise.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplex {
    re: Compensated,
    im: Compensated,
}

impl CompensatedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_integer_sum() {
        let v: Vec<f64> = (1..=10_000).map(|n| n as f64).collect();
        assert_eq!(pairwise_sum(&v), 50_005_000.0);
    }

    #[test]
    fn compensated_recovers_small_terms() {
        let mut acc = Compensated::new();
        acc.add(1e16);
        for _ in 0..1000 {
            acc.add(1.0);
        }
        acc.add(-1e16);
        assert_eq!(acc.value(), 1000.0);
    }
}
