//! The exponential sum `S_x(α) = Σ_{n≤x} d(n) e(nα)`.
//!
//! [`eval_s_direct`] evaluates a single point; [`sample_s_fft`] evaluates the
//! whole grid `j/M`, `0 ≤ j < M`, with one inverse FFT of length `M ≥ x`.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::arith::DivisorTable;
use crate::error::{invalid, Error, Result};
use crate::sum::{pairwise_sum, pairwise_sum_by, CompensatedComplex};

const CHUNK: usize = 4096;

/// `e(nα)` with the phase `nα` reduced mod 1 before scaling by `2π`.
#[inline]
pub fn twiddle(n: u64, alpha: f64) -> Complex64 {
    let nf = n as f64;
    let p = nf * alpha;
    let err = nf.mul_add(alpha, -p);
    let theta = (p - p.floor()) + err;
    let (s, c) = (TAU * theta).sin_cos();
    Complex64::new(c, s)
}

fn check_x(x: usize, table: &DivisorTable) -> Result<()> {
    if x == 0 {
        return invalid("x must be at least 1");
    }
    if x > table.limit() {
        return invalid(format!("x = {x} exceeds the sieved range {}", table.limit()));
    }
    Ok(())
}

/// `S_x(α)` by direct summation, chunked and compensated.
pub fn eval_s_direct(x: usize, alpha: f64, table: &DivisorTable) -> Result<Complex64> {
    check_x(x, table)?;
    if !alpha.is_finite() {
        return invalid(format!("alpha = {alpha} is not finite"));
    }
    let alpha = alpha - alpha.floor();
    let mut acc = CompensatedComplex::new();
    let mut n = 1usize;
    while n <= x {
        let end = (n + CHUNK - 1).min(x);
        let mut chunk = Complex64::new(0.0, 0.0);
        for k in n..=end {
            chunk += twiddle(k as u64, alpha) * table.d(k) as f64;
        }
        acc.add(chunk);
        n = end + 1;
    }
    Ok(acc.value())
}

/// `16x` rounded up to a power of two.
pub fn default_grid_size(x: usize) -> usize {
    (16 * x.max(1)).next_power_of_two()
}

#[derive(Clone, Debug)]
pub struct SumSampling {
    x: usize,
    m: usize,
    values: Vec<Complex64>,
    first_moment: u128,
    prefix_d: u64,
    prefix_d2: u64,
}

/// Riemann-sum estimate with a rigorous half-width from the Lipschitz bound
/// `|d/dα |S|| ≤ 2π Σ n d(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L1Estimate {
    pub value: f64,
    pub half_width: f64,
}

/// `S_x(j/M)` for all `0 ≤ j < M`.
pub fn sample_s_fft(x: usize, m: usize, table: &DivisorTable) -> Result<SumSampling> {
    check_x(x, table)?;
    if m < x {
        return invalid(format!("grid size M = {m} must be at least x = {x}"));
    }
    let mut buf = Vec::new();
    buf.try_reserve_exact(m).map_err(|_| Error::Allocation {
        what: "FFT grid",
        entries: m,
    })?;
    buf.resize(m, Complex64::new(0.0, 0.0));
    for n in 1..=x {
        buf[n % m] += table.d(n) as f64;
    }
    // unnormalised inverse transform: out[j] = Σ_n buf[n] e(jn/M)
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(m);
    fft.process(&mut buf);
    Ok(SumSampling {
        x,
        m,
        values: buf,
        first_moment: table.first_moment(x),
        prefix_d: table.prefix_d(x),
        prefix_d2: table.prefix_d2(x),
    })
}

impl SumSampling {
    pub fn x(&self) -> usize {
        self.x
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `S_x(j/M)`.
    pub fn at(&self, j: usize) -> Complex64 {
        self.values[j % self.m]
    }

    /// `Σ_{n≤x} d(n) = S_x(0)`.
    pub fn prefix_d(&self) -> u64 {
        self.prefix_d
    }

    /// `Σ_{n≤x} d(n)² = ∫₀¹ |S_x|²`.
    pub fn prefix_d2(&self) -> u64 {
        self.prefix_d2
    }

    /// `(1/M) Σ_j |S_x(j/M)|`.
    pub fn l1_norm(&self) -> L1Estimate {
        let m = self.m as f64;
        L1Estimate {
            value: pairwise_sum_by(&self.values, &|v| v.norm()) / m,
            half_width: PI * self.first_moment as f64 / m,
        }
    }

    /// `(1/M) Σ_j |S_x(j/M)|²`; equals `Σ d(n)²` exactly when `M ≥ x`.
    pub fn l2_norm_sq(&self) -> f64 {
        pairwise_sum_by(&self.values, &|v| v.norm_sqr()) / self.m as f64
    }

    /// Relative Parseval defect.
    pub fn parseval_gap(&self) -> f64 {
        let exact = self.prefix_d2 as f64;
        (self.l2_norm_sq() - exact).abs() / exact
    }

    /// CSV of `(α, |S_x(α)|)` on the grid.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["alpha", "abs_s"])?;
        for (j, v) in self.values.iter().enumerate() {
            w.write_record(&[(j as f64 / self.m as f64).to_string(), v.norm().to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `(1/M) Σ_j h(j/M)` for a periodic `h`.
pub fn riemann_mean(m: usize, h: impl Fn(f64) -> f64) -> f64 {
    let vals: Vec<f64> = (0..m).map(|j| h(j as f64 / m as f64)).collect();
    pairwise_sum(&vals) / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn table(n: usize) -> DivisorTable {
        DivisorTable::build(n).unwrap()
    }

    #[test]
    fn small_examples() {
        let t = table(20);
        let s = eval_s_direct(10, 0.0, &t).unwrap();
        assert_eq!(s, Complex64::new(27.0, 0.0));
        // d(1..=10) = 1 2 2 3 2 4 2 4 3 4, alternating signs: −1+2−2+3−2+4−2+4−3+4
        let s = eval_s_direct(10, 0.5, &t).unwrap();
        assert!((s.re - 7.0).abs() < 1e-12 && s.im.abs() < 1e-12);
        let grid = sample_s_fft(10, 16, &t).unwrap();
        assert!((grid.l2_norm_sq() - 83.0).abs() < 1e-10);
        assert_eq!(grid.prefix_d2(), 83);

        let one = sample_s_fft(1, 1, &t).unwrap();
        assert!((one.at(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((one.l1_norm().value - 1.0).abs() < 1e-15);
        let s = eval_s_direct(1, 0.3, &t).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_inputs() {
        let t = table(10);
        assert!(eval_s_direct(0, 0.1, &t).is_err());
        assert!(eval_s_direct(11, 0.1, &t).is_err());
        assert!(eval_s_direct(5, f64::INFINITY, &t).is_err());
        assert!(sample_s_fft(10, 9, &t).is_err());
    }

    #[test]
    fn parseval_is_exact() {
        let t = table(5000);
        for (x, m) in [(1usize, 1usize), (10, 10), (97, 128), (1000, 1000), (5000, 1 << 14)] {
            let grid = sample_s_fft(x, m, &t).unwrap();
            assert!(grid.parseval_gap() < 1e-12, "x={x} M={m}: {}", grid.parseval_gap());
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let t = table(3000);
        let grid = sample_s_fft(3000, 4096, &t).unwrap();
        for j in 1..4096 {
            let (a, b) = (grid.at(j), grid.at(4096 - j));
            assert!((a - b.conj()).norm() < 1e-9 * (1.0 + a.norm()));
        }
        assert!((grid.at(0).re - t.prefix_d(3000) as f64).abs() < 1e-8);
    }

    #[test]
    fn fft_matches_direct() {
        let x = 20_000;
        let t = table(x);
        let m = default_grid_size(x);
        let grid = sample_s_fft(x, m, &t).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let scale = t.prefix_d(x) as f64;
        for _ in 0..50 {
            let j = rng.gen_range(0..m);
            let direct = eval_s_direct(x, j as f64 / m as f64, &t).unwrap();
            assert!((grid.at(j) - direct).norm() < 1e-8 * scale, "j={j}");
        }
    }

    #[test]
    fn l1_stable_under_refinement() {
        let x = 4096;
        let t = table(x);
        let a = sample_s_fft(x, 16 * x, &t).unwrap().l1_norm();
        let b = sample_s_fft(x, 32 * x, &t).unwrap().l1_norm();
        assert!((a.value - b.value).abs() < 1e-3 * b.value, "{a:?} {b:?}");
        assert!((a.value - b.value).abs() <= a.half_width + b.half_width);
        assert!(b.half_width < a.half_width);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(default_grid_size(1), 16);
        assert_eq!(default_grid_size(1000), 16384);
        assert_eq!(default_grid_size(1024), 16384);
    }

    #[test]
    fn riemann_mean_trig() {
        let v = riemann_mean(64, |a| (TAU * 3.0 * a).cos().powi(2));
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn csv_dump() {
        let t = table(4);
        let mut buf = Vec::new();
        sample_s_fft(4, 4, &t).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("alpha,abs_s\n0,8\n"), "{text}");
        assert_eq!(text.lines().count(), 5);
    }
}
