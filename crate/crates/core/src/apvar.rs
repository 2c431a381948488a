//! Divisor sums in arithmetic progressions.
//!
//! The main term for `Σ_{n≤x, n≡a (q)} d(n)` is
//!
//! ```text
//! 𝓜_x(q,a) = (1/q) Σ_{r|q} c_r(a) F(r),      F(r) = (x/r)(log(x/r²) + 2γ − 1)
//! ```
//!
//! and `E_x(q,a)` is the difference. Replacing `F(r)` by `I_r(0)/r`, which keeps
//! the `t = 1` boundary term, gives the exact-boundary main term; with that
//! choice the finite Fourier identity
//!
//! ```text
//! Σ_b |S_x(b/q) − S*(b/q)|² = q Σ_a |E_x(q,a)|²
//! ```
//!
//! holds to round-off.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{divisors_of, euler_phi, mobius, ramanujan_sum, DivisorTable};
use crate::error::{invalid, Result};
use crate::majorarc::{big_f, ArcModel};
use crate::sum::{Compensated, CompensatedComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MainTermConvention {
    /// `F(r) = (x/r) f_r(x)`.
    Asymptotic,
    /// `I_r(0)/r = (x f_r(x) − f_r(1))/r`.
    ExactBoundary,
}

fn check_qa(q: u64, a: u64) -> Result<()> {
    if q == 0 {
        return invalid("modulus q must be positive");
    }
    if a == 0 || a > q {
        return invalid(format!("residue a = {a} must lie in 1..={q}"));
    }
    Ok(())
}

/// The value attached to a divisor `r` under `convention`.
fn weight(r: u64, x: f64, convention: MainTermConvention) -> Result<f64> {
    match convention {
        MainTermConvention::Asymptotic => big_f(r, x),
        MainTermConvention::ExactBoundary => Ok(ArcModel::new(r, x)?.i_q_at_zero() / r as f64),
    }
}

fn main_term_with(q: u64, a: u64, x: f64, convention: MainTermConvention) -> Result<f64> {
    check_qa(q, a)?;
    let mut acc = Compensated::new();
    for r in divisors_of(q) {
        let c = ramanujan_sum(r, a as i64)?;
        if c != 0 {
            acc.add(c as f64 * weight(r, x, convention)?);
        }
    }
    Ok(acc.value() / q as f64)
}

/// `𝓜_x(q,a) = (x/q) Σ_{r|q} (c_r(a)/r)(log(x/r²) + 2γ − 1)`.
pub fn main_term(q: u64, a: u64, x: f64) -> Result<f64> {
    main_term_with(q, a, x, MainTermConvention::Asymptotic)
}

/// `(1/q) Σ_{r|q} c_r(a) I_r(0)/r`.
pub fn main_term_exact(q: u64, a: u64, x: f64) -> Result<f64> {
    main_term_with(q, a, x, MainTermConvention::ExactBoundary)
}

#[derive(Clone, Debug)]
pub struct ProgressionDecomposition {
    pub q: u64,
    pub x: usize,
    /// `raw[a−1] = Σ_{n≤x, n≡a (q)} d(n)`
    pub raw: Vec<u64>,
    pub main: Vec<f64>,
    pub err: Vec<f64>,
    pub convention: MainTermConvention,
}

/// Residue-class sums of `d(n)`, indexed by `a − 1`.
pub fn residue_sums(q: u64, x: usize, table: &DivisorTable) -> Result<Vec<u64>> {
    if q == 0 {
        return invalid("modulus q must be positive");
    }
    if x == 0 {
        return invalid("x must be at least 1");
    }
    table.check_index(x)?;
    let q = q as usize;
    let mut raw = vec![0u64; q];
    let mut a = 0usize; // n mod q, advanced incrementally
    for n in 1..=x {
        a += 1;
        if a == q {
            a = 0;
        }
        raw[(a + q - 1) % q] += table.d(n) as u64;
    }
    Ok(raw)
}

pub fn decompose_with(
    q: u64,
    x: usize,
    table: &DivisorTable,
    convention: MainTermConvention,
) -> Result<ProgressionDecomposition> {
    let raw = residue_sums(q, x, table)?;
    let xf = x as f64;
    let main = (1..=q)
        .map(|a| main_term_with(q, a, xf, convention))
        .collect::<Result<Vec<_>>>()?;
    let err = raw.iter().zip(&main).map(|(&r, &m)| r as f64 - m).collect();
    Ok(ProgressionDecomposition {
        q,
        x,
        raw,
        main,
        err,
        convention,
    })
}

pub fn decompose(q: u64, x: usize, table: &DivisorTable) -> Result<ProgressionDecomposition> {
    decompose_with(q, x, table, MainTermConvention::Asymptotic)
}

impl ProgressionDecomposition {
    /// `Σ_a E_x(q,a)²`.
    pub fn variance(&self) -> f64 {
        self.err.iter().map(|e| e * e).collect::<Compensated>().value()
    }
}

/// `Σ_a E_x(q,a)²` with the asymptotic main term.
pub fn variance(q: u64, x: usize, table: &DivisorTable) -> Result<f64> {
    Ok(decompose(q, x, table)?.variance())
}

/// `e(k/q)` for `0 ≤ k < q`.
fn roots_of_unity(q: u64) -> Vec<Complex64> {
    (0..q)
        .map(|k| {
            let (s, c) = (TAU * k as f64 / q as f64).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// `S_x(b/q)` for `b = 1..=q`, summed directly over `n` (no use of the
/// residue-class sums).
pub fn sums_at_fractions(q: u64, x: usize, table: &DivisorTable) -> Result<Vec<Complex64>> {
    if q == 0 {
        return invalid("modulus q must be positive");
    }
    table.check_index(x)?;
    let roots = roots_of_unity(q);
    let qu = q as usize;
    Ok((1..=qu)
        .map(|b| {
            let mut acc = CompensatedComplex::new();
            let mut chunk = Complex64::new(0.0, 0.0);
            let mut k = 0usize; // n·b mod q
            for n in 1..=x {
                k += b;
                if k >= qu {
                    k -= qu;
                }
                chunk += roots[k] * table.d(n) as f64;
                if n % 4096 == 0 {
                    acc.add(chunk);
                    chunk = Complex64::new(0.0, 0.0);
                }
            }
            acc.add(chunk);
            acc.value()
        })
        .collect())
}

/// `S*(b/q)` at `β = 0` under `convention`: the weight of the reduced denominator.
fn s_star_at_fraction(q: u64, b: u64, x: f64, convention: MainTermConvention) -> Result<f64> {
    weight(q / q.gcd(&b), x, convention)
}

#[derive(Clone, Copy, Debug)]
pub struct DftIdentity {
    /// `Σ_b |S_x(b/q) − S*(b/q)|²` with the exact-boundary `S*`
    pub lhs: f64,
    /// `q Σ_a |E_x(q,a)|²` with the exact-boundary main term
    pub rhs: f64,
    pub gap: f64,
    /// Same comparison with `F(q′)` on the left and the exact-boundary main
    /// term on the right: the `O(1)`-per-point boundary discrepancy.
    pub mixed_convention_gap: f64,
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn dft_identity(q: u64, x: usize, table: &DivisorTable) -> Result<DftIdentity> {
    let sums = sums_at_fractions(q, x, table)?;
    let xf = x as f64;
    let lhs_with = |convention| -> Result<f64> {
        let mut acc = Compensated::new();
        for (i, s) in sums.iter().enumerate() {
            let b = i as u64 + 1;
            acc.add((s - s_star_at_fraction(q, b, xf, convention)?).norm_sqr());
        }
        Ok(acc.value())
    };
    let lhs = lhs_with(MainTermConvention::ExactBoundary)?;
    let lhs_mixed = lhs_with(MainTermConvention::Asymptotic)?;
    let exact = decompose_with(q, x, table, MainTermConvention::ExactBoundary)?;
    let rhs = q as f64 * exact.variance();
    Ok(DftIdentity {
        lhs,
        rhs,
        gap: relative(lhs, rhs),
        mixed_convention_gap: relative(lhs_mixed, rhs),
    })
}

/// Relative gap of the exact finite Fourier identity.
pub fn dft_identity_gap(q: u64, x: usize, table: &DivisorTable) -> Result<f64> {
    Ok(dft_identity(q, x, table)?.gap)
}

/// `|Σ_a 𝓜(q,a) e(ab/q) − S*(b/q)|`, exact-boundary convention on both sides,
/// relative to the largest of `|S*(b/q)|`, `max_a |𝓜(q,a)|` and 1.
pub fn twisted_main_identity_gap(q: u64, b: u64, x: f64) -> Result<f64> {
    check_qa(q, b)?;
    let roots = roots_of_unity(q);
    let mut acc = CompensatedComplex::new();
    let mut largest: f64 = 1.0;
    for a in 1..=q {
        let m = main_term_exact(q, a, x)?;
        largest = largest.max(m.abs());
        acc.add(roots[((a * b) % q) as usize] * m);
    }
    let rhs = s_star_at_fraction(q, b, x, MainTermConvention::ExactBoundary)?;
    Ok((acc.value() - rhs).norm() / largest.max(rhs.abs()))
}

/// The Lau–Zhao form of the main term:
/// `(x/q)[Σ_{r|(q,a)} (φ(q/r)/(q/r))(log(x/r²) + 2γ − 1) − 2 Σ_{r|(q,a)} Σ_{d|q/r} μ(d) log d / d]`.
pub fn lauzhao_main_term(q: u64, a: u64, x: f64) -> Result<f64> {
    check_qa(q, a)?;
    let one = ArcModel::new(1, x)?;
    let mut acc = Compensated::new();
    for r in divisors_of(q.gcd(&a)) {
        let s = q / r;
        let rf = r as f64;
        acc.add(euler_phi(s) as f64 / s as f64 * (one.f(x) - 2.0 * rf.ln()));
        for d in divisors_of(s) {
            let mu = mobius(d);
            if mu != 0 && d > 1 {
                acc.add(-2.0 * mu as f64 * (d as f64).ln() / d as f64);
            }
        }
    }
    Ok(x / q as f64 * acc.value())
}

/// `|𝓜_x(q,a) − Lau–Zhao main term|`.
pub fn lauzhao_equivalence_gap(q: u64, a: u64, x: f64) -> Result<f64> {
    Ok((main_term(q, a, x)? - lauzhao_main_term(q, a, x)?).abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceRow {
    pub q: u64,
    pub x: usize,
    pub variance: f64,
    pub ratio_to_q_sqrt_x: f64,
    pub dft_gap: f64,
}

pub fn variance_row(q: u64, x: usize, table: &DivisorTable) -> Result<VarianceRow> {
    let v = variance(q, x, table)?;
    Ok(VarianceRow {
        q,
        x,
        variance: v,
        ratio_to_q_sqrt_x: v / (q as f64 * (x as f64).sqrt()),
        dft_gap: dft_identity_gap(q, x, table)?,
    })
}

/// CSV with columns `q, x, variance, ratio_to_q_sqrt_x, dft_gap`.
pub fn write_variance_csv<W: Write>(rows: &[VarianceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "x", "variance", "ratio_to_q_sqrt_x", "dft_gap"])?;
    for r in rows {
        w.write_record(&[
            r.q.to_string(),
            r.x.to_string(),
            r.variance.to_string(),
            r.ratio_to_q_sqrt_x.to_string(),
            r.dft_gap.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
