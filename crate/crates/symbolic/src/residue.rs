//! Residues at `s = 1` built from the formal Laurent expansion of `ζ`.
//!
//! Every series is in `u = s − 1`. `ζ` is carried through `a₃`, so at most
//! four coefficients of it are known; anything needing more reports
//! [`SymbolicError::Truncated`].

use num_rational::BigRational;

use crate::error::{Result, SymbolicError};
use crate::poly::{SymPoly, Symbol};
use crate::series::LaurentSeries;
use crate::tables::{Alphas, CoeffTable};

/// Number of `ζ` coefficients carried (`1, a₁, a₂, a₃`).
pub const ZETA_TERMS: usize = 4;

/// Default truncation for the remaining factors.
pub const DEFAULT_ORDER: usize = 8;

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::from_integer(1.into()), |acc, k| {
        acc * BigRational::from_integer(k.into())
    })
}

/// `a_k` with `a₀ = 1`.
pub fn zeta_coeff(k: usize) -> Result<SymPoly> {
    if k == 0 {
        return Ok(SymPoly::one());
    }
    Symbol::zeta_coefficient(k)
        .map(SymPoly::symbol)
        .ok_or(SymbolicError::Truncated {
            needed: k as i32 - 1,
            known: ZETA_TERMS as i32 - 2,
        })
}

/// `ζ(s) = u⁻¹ + a₁ + a₂u + a₃u² + O(u³)`, with `min(order, 4)` terms.
pub fn zeta_laurent(order: usize) -> Result<LaurentSeries> {
    if order < 2 {
        return Err(SymbolicError::InvalidArgument(format!("zeta series order {order} < 2")));
    }
    let n = order.min(ZETA_TERMS);
    let coeffs = (0..n).map(zeta_coeff).collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeries::new(-1, coeffs))
}

/// `𝓕(s) = Σ F_K u^K/K!`, with `min(order, 4)` terms.
pub fn f_series(order: usize) -> LaurentSeries {
    let vals: Vec<SymPoly> = (0..order.min(4))
        .map(|k| Symbol::f_derivative(k).unwrap().into())
        .collect();
    LaurentSeries::from_derivatives(&vals)
}

/// `𝓖(s) = Σ G_K u^K/K!`, with `min(order, 4)` terms.
pub fn g_series(order: usize) -> LaurentSeries {
    let vals: Vec<SymPoly> = (0..order.min(4))
        .map(|k| Symbol::g_derivative(k).unwrap().into())
        .collect();
    LaurentSeries::from_derivatives(&vals)
}

/// `x^s/(x s) = e^{uL} Σ_k (−u)^k`.
pub fn xs_over_s(order: usize) -> LaurentSeries {
    let geometric = LaurentSeries::new(
        0,
        (0..order)
            .map(|k| SymPoly::int(if k % 2 == 0 { 1 } else { -1 }))
            .collect(),
    );
    LaurentSeries::exp_linear(&SymPoly::symbol(Symbol::L), order).mul(&geometric)
}

/// `Res_{s=1}{ζ(s)⁴ 𝓕(s) xˢ/s} / x`, a polynomial in `L` whose `L^J F_K`
/// coefficient is `c_{J,K}`.
pub fn residue_divisor_square(order: usize) -> Result<SymPoly> {
    let z = zeta_laurent(order)?;
    z.pow(4).mul(&f_series(order)).mul(&xs_over_s(order)).residue()
}

/// `c_{J,K}` for all `J + K ≤ 3` from [`residue_divisor_square`].
pub fn lemma1_coefficients(order: usize) -> Result<CoeffTable> {
    let res = residue_divisor_square(order)?;
    let mut t = CoeffTable::default();
    for j in 0..=3u32 {
        let lj = res.coefficient_of(Symbol::L, j);
        for k in 0..=3 - j {
            t.pairs
                .insert((j, k), lj.coefficient_of(Symbol::f_derivative(k as usize).unwrap(), 1));
        }
    }
    Ok(t)
}

/// `l_N(n) = Σ_{k₁+…+k_N = n} a_{k₁}⋯a_{k_N}`, `a₀ = 1`, by direct enumeration.
pub fn l_n(big_n: u32, n: usize) -> Result<SymPoly> {
    if big_n == 0 {
        return Ok(if n == 0 { SymPoly::one() } else { SymPoly::zero() });
    }
    let mut acc = SymPoly::zero();
    for k in 0..=n {
        acc += &(&zeta_coeff(k)? * &l_n(big_n - 1, n - k)?);
    }
    Ok(acc)
}

/// `Σ_{B+D≤3} L^B F_D/(B!D!) (−1)^{3−B−D} Σ_{n≤3−B−D} (−1)^n l₄(n)`,
/// the residue written out in closed form.
pub fn lemma1_closed_form() -> Result<SymPoly> {
    let mut acc = SymPoly::zero();
    for b in 0..=3u32 {
        for d in 0..=3 - b {
            let m = 3 - b - d;
            let mut inner = SymPoly::zero();
            for n in 0..=m {
                let t = l_n(4, n as usize)?;
                if n % 2 == 0 {
                    inner += &t;
                } else {
                    inner -= &t;
                }
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let weight = (factorial(b) * factorial(d)).recip() * BigRational::from_integer(sign.into());
            let term =
                SymPoly::symbol(Symbol::L).pow(b) * SymPoly::symbol(Symbol::f_derivative(d as usize).unwrap()) * inner;
            acc += &term.scale(&weight);
        }
    }
    Ok(acc)
}

/// `lim_{s→1} (d/ds)^A {(s−1)^N ζ(s)^N}` from the series engine.
pub fn dechra_power_limit(big_n: u32, a: u32) -> Result<SymPoly> {
    let z = zeta_laurent(ZETA_TERMS)?;
    let series = z.mul(&LaurentSeries::monomial(1, ZETA_TERMS)).pow(big_n);
    Ok(series.coeff(a as i32)?.scale(&factorial(a)))
}

/// `lim_{s→1} (d/ds)^X {(s−1)^{A+1} ζ^{(A)}(s)}` from the series engine.
pub fn dechra_derivative_limit(a: u32, x: u32) -> Result<SymPoly> {
    let z = zeta_laurent(ZETA_TERMS)?.nth_derivative(a as usize);
    let series = z.mul(&LaurentSeries::monomial(a as i32 + 1, ZETA_TERMS));
    Ok(series.coeff(x as i32)?.scale(&factorial(x)))
}

/// The piecewise closed form of [`dechra_derivative_limit`]:
/// `(−1)^A A!` at `X = 0`, `X!(X−1)⋯(X−A) a_X` for `X ≥ A+1`, else 0.
pub fn dechra_derivative_closed_form(a: u32, x: u32) -> Result<SymPoly> {
    if x == 0 {
        let sign = if a.is_multiple_of(2) { 1 } else { -1 };
        return Ok(SymPoly::constant(factorial(a) * BigRational::from_integer(sign.into())));
    }
    if x < a + 1 {
        return Ok(SymPoly::zero());
    }
    let falling = factorial(x - 1) / factorial(x - 1 - a);
    Ok(zeta_coeff(x as usize)?.scale(&(factorial(x) * falling)))
}

/// `Res_{s=1}{𝒜^{(m)}(s) γ^{s−1}/(s−1)}` with `𝒜 = ζ𝒢` and
/// `log γ = L·invΔ`.
pub fn phi_weight_residue(m: usize, order: usize) -> Result<SymPoly> {
    let a = zeta_laurent(order)?.mul(&g_series(order)).nth_derivative(m);
    let log_gamma = SymPoly::symbol(Symbol::L) * SymPoly::symbol(Symbol::InvDelta);
    let kernel = LaurentSeries::exp_linear(&log_gamma, order).mul(&LaurentSeries::monomial(-1, order));
    a.mul(&kernel).residue()
}

/// `(1/x) ∫₁ˣ (log t)^n dt` without the `O(1/x)` boundary constant:
/// `Σ_r n!(−1)^r L^{n−r}/(n−r)!`.
pub fn log_moment_main(n: u32) -> SymPoly {
    let mut acc = SymPoly::zero();
    for r in 0..=n {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = factorial(n) / factorial(n - r) * BigRational::from_integer(sign.into());
        acc += &SymPoly::symbol(Symbol::L).pow(n - r).scale(&c);
    }
    acc
}

/// Main term of `(1/x) Σ_{q≤γ} (φ(q)/q²) ∫₁ˣ g_q(t)² dt` for
/// `g_q = β₀₀ + β₁₀ log q + β₀₁ log t`, computed by expanding `g_q²`,
/// integrating each `(log t)^j` and replacing each `Σ φ(q)(log q)^i/q²` by
/// its residue. Independent of the combinatorial tables of
/// [`crate::tables::lemma2a_tables`].
pub fn lemma2_residue_oracle(alphas: &Alphas, order: usize) -> Result<SymPoly> {
    let (b00, b10, b01) = alphas.betas();
    // g² = Σ c_{ij} (log q)^i (log t)^j
    let c = [
        ((0u32, 0u32), &b00 * &b00),
        ((1, 0), &b00 * &b10 * 2),
        ((0, 1), &b00 * &b01 * 2),
        ((2, 0), &b10 * &b10),
        ((1, 1), &b10 * &b01 * 2),
        ((0, 2), &b01 * &b01),
    ];
    let mut acc = SymPoly::zero();
    for ((i, j), coeff) in c {
        let r = phi_weight_residue(i as usize, order)?;
        let signed = if i % 2 == 0 { r } else { -r };
        acc += &(coeff * log_moment_main(j) * signed);
    }
    Ok(acc)
}

/// `d_{J,K}` (the `L^J G_K` coefficients) of [`lemma2_residue_oracle`].
pub fn lemma2_oracle_coefficients(alphas: &Alphas, order: usize) -> Result<CoeffTable> {
    let res = lemma2_residue_oracle(alphas, order)?;
    let mut t = CoeffTable::default();
    for j in 0..=3u32 {
        let lj = res.coefficient_of(Symbol::L, j);
        for k in 0..=3 - j {
            t.pairs
                .insert((j, k), lj.coefficient_of(Symbol::g_derivative(k as usize).unwrap(), 1));
        }
    }
    Ok(t)
}
