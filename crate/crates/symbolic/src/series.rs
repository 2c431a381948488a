//! Truncated Laurent series in `u = s − 1` with [`SymPoly`] coefficients.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, SymbolicError};
use crate::poly::SymPoly;

/// `Σ_k coeffs[k] u^{lead+k} + O(u^{lead+len})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    lead: i32,
    coeffs: Vec<SymPoly>,
}

impl LaurentSeries {
    /// Builds and normalises: leading zero coefficients are absorbed into
    /// `lead`, which keeps the range of known exponents unchanged.
    pub fn new(lead: i32, coeffs: Vec<SymPoly>) -> Self {
        let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        Self {
            lead: lead + zeros as i32,
            coeffs: coeffs.into_iter().skip(zeros).collect(),
        }
    }

    /// Taylor series `Σ_k c_k u^k / k!` from derivative values `c_k`.
    pub fn from_derivatives(values: &[SymPoly]) -> Self {
        let mut fact = BigRational::one();
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k > 0 {
                    fact *= BigRational::from_integer(k.into());
                }
                v.scale(&fact.recip())
            })
            .collect();
        Self::new(0, coeffs)
    }

    /// `e^{c u} = Σ_k c^k u^k / k!`, `order` terms.
    pub fn exp_linear(c: &SymPoly, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut term = SymPoly::one();
        for k in 0..order {
            if k > 0 {
                term = (&term * c).scale(&BigRational::new(1.into(), (k as i64).into()));
            }
            coeffs.push(term.clone());
        }
        Self::new(0, coeffs)
    }

    /// `u^lead`, known through `u^{lead+order−1}`.
    pub fn monomial(lead: i32, order: usize) -> Self {
        let mut coeffs = vec![SymPoly::zero(); order];
        if order > 0 {
            coeffs[0] = SymPoly::one();
        }
        Self { lead, coeffs }
    }

    pub fn lead(&self) -> i32 {
        self.lead
    }

    /// Number of known coefficients from `lead` on.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[SymPoly] {
        &self.coeffs
    }

    /// Highest exponent whose coefficient is known.
    pub fn known_through(&self) -> i32 {
        self.lead + self.coeffs.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^power`.
    pub fn coeff(&self, power: i32) -> Result<SymPoly> {
        if power > self.known_through() {
            return Err(SymbolicError::Truncated {
                needed: power,
                known: self.known_through(),
            });
        }
        if power < self.lead {
            return Ok(SymPoly::zero());
        }
        Ok(self.coeffs[(power - self.lead) as usize].clone())
    }

    /// Coefficient of `u^{−1}`.
    pub fn residue(&self) -> Result<SymPoly> {
        self.coeff(-1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![SymPoly::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::new(self.lead + other.lead, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let lead = self.lead.min(other.lead);
        let top = self.known_through().min(other.known_through());
        let len = (top - lead + 1).max(0) as usize;
        let coeffs = (0..len)
            .map(|k| {
                let p = lead + k as i32;
                let get = |s: &Self| s.coeff(p).unwrap_or_else(|_| SymPoly::zero());
                &get(self) + &get(other)
            })
            .collect();
        Self::new(lead, coeffs)
    }

    pub fn scale(&self, c: &SymPoly) -> Self {
        Self::new(self.lead, self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let order = self.coeffs.len();
        (0..n).fold(Self::monomial(0, order), |acc, _| acc.mul(self))
    }

    /// `d/du`, term by term.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (self.lead as i64 + k as i64))
            .collect();
        Self::new(self.lead - 1, coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |s, _| s.derivative())
    }

    /// `1/series`; the leading coefficient must be a nonzero rational.
    pub fn reciprocal(&self) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Err(SymbolicError::NotInvertible("series is zero to the known order".into()));
        };
        let c0 = c0.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| {
            SymbolicError::NotInvertible(format!("leading coefficient {c0} is not a rational constant"))
        })?;
        let inv0 = c0.recip();
        let n = self.coeffs.len();
        let mut b: Vec<SymPoly> = Vec::with_capacity(n);
        b.push(SymPoly::constant(inv0.clone()));
        for m in 1..n {
            let mut acc = SymPoly::zero();
            for k in 1..=m {
                acc += &(&self.coeffs[k] * &b[m - k]);
            }
            b.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self::new(-self.lead, b))
    }
}
