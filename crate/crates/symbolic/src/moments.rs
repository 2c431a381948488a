//! Logarithmic moments and totient-weighted sums, with their predicted forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use divl1_core::arith::DivisorTable;
use divl1_core::sum::Compensated;

use crate::constants::NumericConstants;
use crate::error::{Result, SymbolicError};
use crate::poly::{SymPoly, Symbol};
use crate::residue::{log_moment_main, phi_weight_residue, DEFAULT_ORDER};

/// `∫₁ˣ (log t)^n dt = x·P_n(log x) + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogMoment {
    pub n: u32,
    /// `P_n(L) = Σ_r n!(−1)^r L^{n−r}/(n−r)!`
    pub x_coefficient: SymPoly,
    /// `−(−1)^n n!`
    pub constant: BigRational,
    pub value: f64,
}

pub fn log_moment_integral(n: u32, x: f64) -> Result<LogMoment> {
    if n > 6 {
        return Err(SymbolicError::InvalidArgument(format!("log moment order {n} > 6")));
    }
    if !(x.is_finite() && x >= 1.0) {
        return Err(SymbolicError::InvalidArgument(format!(
            "x = {x} must be finite and ≥ 1"
        )));
    }
    let poly = log_moment_main(n);
    let nfact: i64 = (1..=n as i64).product();
    let constant = BigRational::from_integer(BigInt::from(if n.is_multiple_of(2) { -nfact } else { nfact }));
    let l = x.ln();
    let value =
        x * poly.eval(|s| if s == Symbol::L { l } else { 0.0 }) + num_traits::ToPrimitive::to_f64(&constant).unwrap();
    Ok(LogMoment {
        n,
        x_coefficient: poly,
        constant,
        value,
    })
}

/// `Σ_{q≤γ} φ(q)/q²` as an exact rational.
pub fn phi_sum_exact(gamma: u64) -> Result<BigRational> {
    let table = DivisorTable::build(gamma.max(1) as usize)?;
    let mut acc = BigRational::zero();
    for q in 1..=gamma as usize {
        acc += BigRational::new(BigInt::from(table.phi(q)), BigInt::from(q as u64 * q as u64));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhiLogweight {
    /// `Σ_{q≤γ} φ(q)(−log q)^Q/q²`
    pub lhs: f64,
    /// `Res_{s=1}{𝒜^{(Q)}(s) γ^{s−1}/(s−1)}`
    pub predicted: f64,
    pub gap: f64,
    /// The residue as a polynomial in `log γ` (written `L·invΔ`).
    pub residue: SymPoly,
}

pub fn phi_logweight_sum(q_order: u32, gamma: f64, constants: &NumericConstants) -> Result<PhiLogweight> {
    if q_order > 2 {
        return Err(SymbolicError::InvalidArgument(format!("Q = {q_order} > 2")));
    }
    if !(gamma.is_finite() && gamma >= 10.0) {
        return Err(SymbolicError::InvalidArgument(format!("gamma = {gamma} must be ≥ 10")));
    }
    let limit = gamma.floor() as usize;
    let table = DivisorTable::build(limit)?;
    let lhs = (1..=limit)
        .map(|q| {
            let qf = q as f64;
            table.phi(q) as f64 * (-qf.ln()).powi(q_order as i32) / (qf * qf)
        })
        .collect::<Compensated>()
        .value();
    let residue = phi_weight_residue(q_order as usize, DEFAULT_ORDER)?;
    let lg = gamma.ln();
    let predicted = residue.eval(|s| match s {
        Symbol::L => lg,
        Symbol::InvDelta => 1.0,
        other => constants.value(other).unwrap_or(f64::NAN),
    });
    Ok(PhiLogweight {
        lhs,
        predicted,
        gap: lhs - predicted,
        residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::numeric_constants;
    use divl1_core::quad::integrate_real;

    #[test]
    fn closed_forms() {
        let x: f64 = 50.0;
        let l = x.ln();
        assert!((log_moment_integral(0, x).unwrap().value - (x - 1.0)).abs() < 1e-12);
        assert!((log_moment_integral(1, x).unwrap().value - (x * l - x + 1.0)).abs() < 1e-12);
        assert!((log_moment_integral(2, x).unwrap().value - (x * (l * l - 2.0 * l + 2.0) - 2.0)).abs() < 1e-11);
        assert!(log_moment_integral(7, x).is_err());
        assert_eq!(log_moment_integral(3, 1.0).unwrap().value, 0.0);
    }

    #[test]
    fn against_quadrature() {
        for n in 0..=6u32 {
            for x in [2.0, 37.5, 1e4] {
                let exact = log_moment_integral(n, x).unwrap().value;
                let num = integrate_real(|t: f64| t.ln().powi(n as i32), 1.0, x, 32, 1e-15);
                assert!((exact - num).abs() <= 1e-10 * num.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn exact_totient_sum() {
        // 1 + 1/4 + 2/9 + 2/16 + 4/25 + 2/36 + 6/49 + 4/64 + 6/81 + 4/100
        let expected = BigRational::new(1.into(), 1.into())
            + BigRational::new(1.into(), 4.into())
            + BigRational::new(2.into(), 9.into())
            + BigRational::new(2.into(), 16.into())
            + BigRational::new(4.into(), 25.into())
            + BigRational::new(2.into(), 36.into())
            + BigRational::new(6.into(), 49.into())
            + BigRational::new(4.into(), 64.into())
            + BigRational::new(6.into(), 81.into())
            + BigRational::new(4.into(), 100.into());
        assert_eq!(phi_sum_exact(10).unwrap(), expected);
        let k = numeric_constants(15).unwrap();
        let r = phi_logweight_sum(0, 10.0, &k).unwrap();
        assert!((r.lhs - num_traits::ToPrimitive::to_f64(&expected).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn residue_prediction_ladder() {
        let k = numeric_constants(15).unwrap();
        for q in 0..=2u32 {
            for g in [1e2, 1e3, 1e4] {
                let r = phi_logweight_sum(q, g, &k).unwrap();
                assert!(r.gap.abs() * g.sqrt() < 5.0, "Q={q} gamma={g}: {r:?}");
            }
            let coarse = phi_logweight_sum(q, 1e3, &k).unwrap().gap.abs();
            let fine = phi_logweight_sum(q, 1.6e4, &k).unwrap().gap.abs();
            assert!(fine < coarse, "Q={q}");
        }
        let even = phi_logweight_sum(2, 1e4, &k).unwrap();
        assert!(even.lhs > 0.0 && even.lhs.is_finite());
        assert!(phi_logweight_sum(3, 100.0, &k).is_err());
        assert!(phi_logweight_sum(0, 5.0, &k).is_err());
    }
}
