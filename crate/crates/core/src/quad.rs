//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Slow but independent of every closed form in the crate, which is what the
//! cross-checks need.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
pub fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Quadrature {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Quadrature {
        value: kronrod * h,
        error: ((kronrod - gauss) * h).norm(),
    }
}

struct Panel {
    a: f64,
    b: f64,
    q: Quadrature,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.q.error == other.q.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q.error.total_cmp(&other.q.error)
    }
}

/// Adaptive integration over `[a, b]` split into `panels` equal starting
/// pieces; bisects the worst piece until the summed error estimate drops
/// below `max(abs_tol, rel_tol·|I|)` or `max_pieces` is reached.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_pieces: usize,
) -> Quadrature {
    if a == b {
        return Quadrature {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        };
    }
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap = BinaryHeap::with_capacity(panels * 2);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { lo + width };
        let q = gk15(&f, lo, hi);
        total += q.value;
        err += q.error;
        heap.push(Panel { a: lo, b: hi, q });
    }
    while err > abs_tol.max(rel_tol * total.norm()) && heap.len() < max_pieces {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        total += left.value + right.value - worst.q.value;
        err += left.error + right.error - worst.q.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            q: left,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            q: right,
        });
    }
    // re-sum to shed the drift from incremental updates
    let value = heap.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.q.value);
    let error = heap.iter().map(|p| p.q.error).sum();
    Quadrature { value, error }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rel_tol: f64) -> f64 {
    integrate(|t| Complex64::new(f(t), 0.0), a, b, panels, 0.0, rel_tol, 1 << 20)
        .value
        .re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate_real(|t| t.powi(5) - 3.0 * t * t, 0.0, 2.0, 1, 1e-15);
        assert!((v - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_exponential() {
        // ∫_0^10 e^{3it} dt = (e^{30i} − 1)/(3i)
        let q = integrate(|t| Complex64::new(0.0, 3.0 * t).exp(), 0.0, 10.0, 4, 0.0, 1e-14, 10_000);
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 3.0);
        assert!((q.value - exact).norm() < 1e-13);
    }

    #[test]
    fn log_singularity_at_endpoint() {
        // ∫_0^1 ln t dt = −1
        let v = integrate_real(|t| t.ln(), 0.0, 1.0, 1, 1e-12);
        assert!((v + 1.0).abs() < 1e-10);
    }
}
