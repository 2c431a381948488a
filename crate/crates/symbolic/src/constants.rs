//! Numeric values of the formal symbols, by Euler–Maclaurin summation.
//!
//! Stieltjes constants `γ_n` give the Laurent coefficients of `ζ` at 1
//! (`a₁ = γ₀`, `a₂ = −γ₁`, `a₃ = γ₂/2`); `ζ^{(k)}(2)` gives the Taylor
//! coefficients of `𝓖(s) = 1/ζ(s+1)` and `𝓕(s) = 1/ζ(2s) = 𝓖(2s − 1)`, so
//! `F_K = 2^K G_K`. Values are `f64`.

use divl1_core::sum::Compensated;

use crate::error::{Result, SymbolicError};
use crate::poly::Symbol;

/// Summation cutoff before the Euler–Maclaurin tail.
const EM_CUTOFF: u32 = 40;

/// `B_{2j}` for `j = 1..=10`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `t^{−m} P(log t)` with `P` given by coefficients in `log t`.
#[derive(Clone, Debug)]
struct LogPowerTerm {
    m: f64,
    p: Vec<f64>,
}

impl LogPowerTerm {
    fn eval(&self, t: f64) -> f64 {
        let l = t.ln();
        let poly = self.p.iter().rev().fold(0.0, |acc, c| acc * l + c);
        poly * t.powf(-self.m)
    }

    /// `d/dt [t^{−m} P(log t)] = t^{−m−1} (P′ − mP)(log t)`.
    fn derivative(&self) -> Self {
        let mut q: Vec<f64> = self.p.iter().map(|c| -self.m * c).collect();
        for (i, c) in self.p.iter().enumerate().skip(1) {
            q[i - 1] += i as f64 * c;
        }
        Self { m: self.m + 1.0, p: q }
    }
}

/// `Σ_{k≥N} f(k) − ∫_N^∞ f = f(N)/2 − Σ_j B_{2j}/(2j)! f^{(2j−1)}(N)`.
fn em_correction(f: &LogPowerTerm, n: f64) -> f64 {
    let mut acc = Compensated::new();
    acc.add(f.eval(n) / 2.0);
    let mut deriv = f.derivative();
    let mut fact = 2.0; // (2j)!
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc.add(-b / fact * deriv.eval(n));
        deriv = deriv.derivative().derivative();
        let k = 2.0 * (j + 1) as f64;
        fact *= (k + 1.0) * (k + 2.0);
    }
    acc.value()
}

fn unit_log_power(m: f64, n: usize) -> LogPowerTerm {
    let mut p = vec![0.0; n + 1];
    p[n] = 1.0;
    LogPowerTerm { m, p }
}

/// Stieltjes constant `γ_n = lim_N (Σ_{k≤N} (log k)^n/k − (log N)^{n+1}/(n+1))`.
pub fn stieltjes(n: usize) -> f64 {
    let f = unit_log_power(1.0, n);
    let big_n = EM_CUTOFF as f64;
    let mut acc: Compensated = (1..EM_CUTOFF).map(|k| f.eval(k as f64)).collect();
    acc.add(-big_n.ln().powi(n as i32 + 1) / (n as f64 + 1.0));
    acc.add(em_correction(&f, big_n));
    acc.value()
}

/// `ζ^{(k)}(2) = (−1)^k Σ_n (log n)^k / n²`.
pub fn zeta_derivative_at_2(k: usize) -> f64 {
    let f = unit_log_power(2.0, k);
    let big_n = EM_CUTOFF as f64;
    let mut acc: Compensated = (1..EM_CUTOFF).map(|n| f.eval(n as f64)).collect();
    // ∫_N^∞ (log t)^k t^{−2} dt = k!/N Σ_{j≤k} (log N)^j / j!
    let ln = big_n.ln();
    let mut term = 1.0;
    let mut tail = 0.0;
    for j in 0..=k {
        if j > 0 {
            term *= ln / j as f64;
        }
        tail += term;
    }
    let kfact: f64 = (1..=k).map(|i| i as f64).product();
    acc.add(kfact * tail / big_n);
    acc.add(em_correction(&f, big_n));
    if k.is_multiple_of(2) {
        acc.value()
    } else {
        -acc.value()
    }
}

/// `ζ(s)` for real `s > 1`, by Euler–Maclaurin.
pub fn zeta_real(s: f64) -> f64 {
    let big_n = EM_CUTOFF as f64;
    let mut acc: Compensated = (1..EM_CUTOFF).map(|n| (n as f64).powf(-s)).collect();
    acc.add(big_n.powf(1.0 - s) / (s - 1.0));
    acc.add(big_n.powf(-s) / 2.0);
    // −Σ_j B_{2j}/(2j)! f^{(2j−1)}(N), f^{(r)}(N) = (−1)^r s(s+1)⋯(s+r−1) N^{−s−r}
    let mut rising = s; // s(s+1)⋯(s+2j−2)
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let r = 2 * j + 1;
        acc.add(b / fact * rising * big_n.powf(-s - r as f64));
        rising *= (s + r as f64) * (s + r as f64 + 1.0);
        let k = 2.0 * (j + 1) as f64;
        fact *= (k + 1.0) * (k + 2.0);
    }
    acc.value()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConstants {
    pub a: [f64; 3],
    /// `ζ(2), ζ′(2), ζ″(2), ζ‴(2)`
    pub zeta2: [f64; 4],
    pub f: [f64; 4],
    pub g: [f64; 4],
    pub digits: u32,
}

impl NumericConstants {
    /// Value of a numeric symbol; `None` for `invΔ`, `L` and the `α`'s.
    pub fn value(&self, s: Symbol) -> Option<f64> {
        use Symbol::*;
        Some(match s {
            A1 => self.a[0],
            A2 => self.a[1],
            A3 => self.a[2],
            F0 => self.f[0],
            F1 => self.f[1],
            F2 => self.f[2],
            F3 => self.f[3],
            G0 => self.g[0],
            G1 => self.g[1],
            G2 => self.g[2],
            G3 => self.g[3],
            InvDelta | L | Alpha00 | Alpha01 | Alpha10 => return None,
        })
    }
}

/// Numeric constants to `min(precision, 15)` significant digits.
///
/// Requests above 30 digits are rejected; between 16 and 30 the values are
/// still `f64`, and `digits` records what is actually delivered.
pub fn numeric_constants(precision: u32) -> Result<NumericConstants> {
    if precision == 0 || precision > 30 {
        return Err(SymbolicError::InvalidArgument(format!(
            "precision {precision} outside 1..=30 digits"
        )));
    }
    let a = [stieltjes(0), -stieltjes(1), stieltjes(2) / 2.0];
    let zeta2 = [
        zeta_derivative_at_2(0),
        zeta_derivative_at_2(1),
        zeta_derivative_at_2(2),
        zeta_derivative_at_2(3),
    ];
    // 1/ζ(2+u) = Σ r_k u^k from ζ(2+u) = Σ z_k u^k/k!
    let mut c = [0.0; 4];
    let mut fact = 1.0;
    for k in 0..4 {
        if k > 0 {
            fact *= k as f64;
        }
        c[k] = zeta2[k] / fact;
    }
    let mut r = [0.0; 4];
    r[0] = 1.0 / c[0];
    for m in 1..4 {
        r[m] = -(1..=m).map(|k| c[k] * r[m - k]).sum::<f64>() / c[0];
    }
    let mut g = [0.0; 4];
    let mut f = [0.0; 4];
    let mut fact = 1.0;
    for k in 0..4 {
        if k > 0 {
            fact *= k as f64;
        }
        g[k] = fact * r[k];
        f[k] = (1u32 << k) as f64 * g[k];
    }
    Ok(NumericConstants {
        a,
        zeta2,
        f,
        g,
        digits: precision.min(15),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn stieltjes_reference() {
        // published decimal expansions
        assert!(close(stieltjes(0), 0.577_215_664_901_532_9, 1e-15));
        assert!(close(stieltjes(1), -0.072_815_845_483_676_72, 1e-13));
        assert!(close(stieltjes(2), -0.009_690_363_192_872_318, 1e-12));
    }

    #[test]
    fn zeta_at_two() {
        assert!(close(zeta_derivative_at_2(0), PI * PI / 6.0, 1e-15));
        assert!(close(zeta_derivative_at_2(1), -0.937_548_254_315_843_8, 1e-14));
        assert!(close(zeta_derivative_at_2(2), 1.989_280_234_298_901, 1e-13));
        assert!(close(zeta_derivative_at_2(3), -6.000_145_802_843_045, 1e-12));
        assert!(close(zeta_real(3.0), 1.202_056_903_159_594_3, 1e-15));
        assert!(close(zeta_real(2.0), PI * PI / 6.0, 1e-15));
    }

    #[test]
    fn derivatives_by_finite_differences() {
        let h = 1e-3;
        let z = |s: f64| zeta_real(s);
        let d1 = (z(2.0 + h) - z(2.0 - h)) / (2.0 * h);
        assert!(close(d1, zeta_derivative_at_2(1), 2e-6), "{d1}");
        let d3 = (z(2.0 + 2.0 * h) - 2.0 * z(2.0 + h) + 2.0 * z(2.0 - h) - z(2.0 - 2.0 * h)) / (2.0 * h * h * h);
        assert!(close(d3, zeta_derivative_at_2(3), 1e-4), "{d3}");
        assert!(close(zeta_real(2.5), 1.341_487_257_250_917, 1e-15));
    }

    #[test]
    fn laurent_coefficients_reproduce_zeta_near_one() {
        let k = numeric_constants(15).unwrap();
        for h in [1e-2, 3e-2, 0.1] {
            let series = 1.0 / h + k.a[0] + k.a[1] * h + k.a[2] * h * h;
            let err = (zeta_real(1.0 + h) - series).abs();
            // next term is O(h³) with a small coefficient
            assert!(err < 1e-3 * h * h * h + 1e-13, "h={h}: {err}");
        }
    }

    #[test]
    fn constants() {
        let k = numeric_constants(10).unwrap();
        assert!(close(k.a[0], 0.5772156649, 1e-10));
        assert!(close(k.a[1], 0.0728158455, 1e-9));
        assert!(close(k.g[0], 6.0 / (PI * PI), 1e-15));
        assert_eq!(k.f[0], k.g[0]);
        assert!(close(k.g[1], 0.346_494_734_701_802_2, 1e-13));
        assert!(close(k.g[2], -0.340_211_994_871_313_6, 1e-12));
        assert!(close(k.g[3], 0.378_696_261_703_666, 1e-11));
        for i in 0..4 {
            assert_eq!(k.f[i], k.g[i] * (1 << i) as f64);
        }
        assert_eq!(k.value(Symbol::A2), Some(k.a[1]));
        assert_eq!(k.value(Symbol::L), None);
        assert!(numeric_constants(31).is_err());
        assert_eq!(numeric_constants(25).unwrap().digits, 15);
    }

    #[test]
    fn reciprocal_series_numerically() {
        // 1/ζ(2+u) against its Taylor polynomial
        let k = numeric_constants(15).unwrap();
        let u: f64 = 0.01;
        let taylor = k.g[0] + k.g[1] * u + k.g[2] * u * u / 2.0 + k.g[3] * u.powi(3) / 6.0;
        assert!((1.0 / zeta_real(2.0 + u) - taylor).abs() < 1e-8);
    }
}
