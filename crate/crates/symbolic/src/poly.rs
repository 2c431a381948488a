//! Multivariate polynomials with exact rational coefficients over a fixed set
//! of inert symbols.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Laurent coefficients of `ζ` at 1: `ζ(s) = 1/(s−1) + a₁ + a₂(s−1) + a₃(s−1)² + …`
    A1,
    A2,
    A3,
    /// `𝓕⁽ᴷ⁾(1)` for `𝓕(s) = 1/ζ(2s)`
    F0,
    F1,
    F2,
    F3,
    /// `𝓖⁽ᴷ⁾(1)` for `𝓖(s) = 1/ζ(s+1)`
    G0,
    G1,
    G2,
    G3,
    /// `1/Δ`, where `γ = x^{1/Δ}`
    InvDelta,
    /// `log x`
    L,
    /// free parameters of `g_q = (α₀₀ + α₀₁) + α₁₀ log q + α₀₁ log t`
    Alpha00,
    Alpha01,
    Alpha10,
}

pub const NSYM: usize = 16;

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::A1,
        Symbol::A2,
        Symbol::A3,
        Symbol::F0,
        Symbol::F1,
        Symbol::F2,
        Symbol::F3,
        Symbol::G0,
        Symbol::G1,
        Symbol::G2,
        Symbol::G3,
        Symbol::InvDelta,
        Symbol::L,
        Symbol::Alpha00,
        Symbol::Alpha01,
        Symbol::Alpha10,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::A1 => "a1",
            Symbol::A2 => "a2",
            Symbol::A3 => "a3",
            Symbol::F0 => "F0",
            Symbol::F1 => "F1",
            Symbol::F2 => "F2",
            Symbol::F3 => "F3",
            Symbol::G0 => "G0",
            Symbol::G1 => "G1",
            Symbol::G2 => "G2",
            Symbol::G3 => "G3",
            Symbol::InvDelta => "invD",
            Symbol::L => "L",
            Symbol::Alpha00 => "al00",
            Symbol::Alpha01 => "al01",
            Symbol::Alpha10 => "al10",
        }
    }

    /// `a_k` for `1 ≤ k ≤ 3`.
    pub fn zeta_coefficient(k: usize) -> Option<Symbol> {
        [Symbol::A1, Symbol::A2, Symbol::A3].get(k.checked_sub(1)?).copied()
    }

    /// `𝓕⁽ᴷ⁾(1)` for `K ≤ 3`.
    pub fn f_derivative(k: usize) -> Option<Symbol> {
        [Symbol::F0, Symbol::F1, Symbol::F2, Symbol::F3].get(k).copied()
    }

    /// `𝓖⁽ᴷ⁾(1)` for `K ≤ 3`.
    pub fn g_derivative(k: usize) -> Option<Symbol> {
        [Symbol::G0, Symbol::G1, Symbol::G2, Symbol::G3].get(k).copied()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Monomial = [u8; NSYM];

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NSYM], c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::constant(rational(n, d))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut m = [0; NSYM];
        m[s.index()] = 1;
        let mut p = Self::zero();
        p.add_term(m, BigRational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; NSYM]).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m[s.index()] as u32).max().unwrap_or(0)
    }

    /// Symbols that occur with nonzero exponent.
    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.terms.keys().any(|m| m[s.index()] > 0))
            .collect()
    }

    /// Coefficient of `s^power`, as a polynomial free of `s`.
    pub fn coefficient_of(&self, s: Symbol, power: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[s.index()] as u32 == power {
                let mut m2 = *m;
                m2[s.index()] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Replace `s` by `value` everywhere.
    pub fn substitute(&self, s: Symbol, value: &SymPoly) -> Self {
        let deg = self.degree_in(s);
        let mut powers = vec![Self::one()];
        for k in 1..=deg as usize {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let e = m2[s.index()] as usize;
            m2[s.index()] = 0;
            let mut rest = Self::zero();
            rest.add_term(m2, c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Numeric value with `value(s)` for each symbol.
    pub fn eval(&self, value: impl Fn(Symbol) -> f64) -> f64 {
        let vals: Vec<f64> = Symbol::ALL.iter().map(|&s| value(s)).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.iter().enumerate() {
                    if e > 0 {
                        t *= vals[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }
}

impl From<Symbol> for SymPoly {
    fn from(s: Symbol) -> Self {
        SymPoly::symbol(s)
    }
}

impl From<i64> for SymPoly {
    fn from(n: i64) -> Self {
        SymPoly::int(n)
    }
}

impl From<BigRational> for SymPoly {
    fn from(c: BigRational) -> Self {
        SymPoly::constant(c)
    }
}

impl AddAssign<&SymPoly> for SymPoly {
    fn add_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&SymPoly> for SymPoly {
    fn sub_assign(&mut self, rhs: &SymPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for (e, &f) in m.iter_mut().zip(mb) {
                    *e += f;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl MulAssign<&SymPoly> for SymPoly {
    fn mul_assign(&mut self, rhs: &SymPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<SymPoly> for SymPoly {
            type Output = SymPoly;
            fn $f(self, rhs: SymPoly) -> SymPoly { (&self).$f(&rhs) }
        }
        impl $tr<&SymPoly> for SymPoly {
            type Output = SymPoly;
            fn $f(self, rhs: &SymPoly) -> SymPoly { (&self).$f(rhs) }
        }
        impl $tr<SymPoly> for &SymPoly {
            type Output = SymPoly;
            fn $f(self, rhs: SymPoly) -> SymPoly { self.$f(&rhs) }
        }
        impl $tr<i64> for SymPoly {
            type Output = SymPoly;
            fn $f(self, rhs: i64) -> SymPoly { (&self).$f(&SymPoly::int(rhs)) }
        }
        impl $tr<i64> for &SymPoly {
            type Output = SymPoly;
            fn $f(self, rhs: i64) -> SymPoly { self.$f(&SymPoly::int(rhs)) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        -&self
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        // higher total degree first, then by symbol order
        terms.sort_by_key(|(m, _)| (Reverse(m.iter().map(|&e| e as u32).sum::<u32>()), Reverse(**m)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = Symbol::ALL
                .iter()
                .filter(|s| m[s.index()] > 0)
                .map(|s| match m[s.index()] {
                    1 => s.name().to_string(),
                    e => format!("{}^{e}", s.name()),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Symbol::*;

    fn s(x: Symbol) -> SymPoly {
        SymPoly::symbol(x)
    }

    #[test]
    fn arithmetic_and_normalisation() {
        let p = s(A1) * 2 + SymPoly::rat(1, 2);
        let q = s(A1) * 2 - SymPoly::rat(1, 2);
        assert_eq!(&p - &p, SymPoly::zero());
        assert_eq!(&p * &q, s(A1).pow(2) * 4 - SymPoly::rat(1, 4));
        assert!((&p - &p).is_zero());
        assert_eq!(SymPoly::int(0).len(), 0);
        assert_eq!((&p + &q).as_constant(), None);
        assert_eq!((&p - &q).as_constant(), Some(rational(1, 1)));
    }

    #[test]
    fn coefficient_extraction_and_substitution() {
        let p = s(L).pow(2) * s(F1) * 3 + s(L) * s(A2) - SymPoly::int(5);
        assert_eq!(p.coefficient_of(L, 2), s(F1) * 3);
        assert_eq!(p.coefficient_of(L, 0), SymPoly::int(-5));
        assert_eq!(p.degree_in(L), 2);
        assert_eq!(p.symbols(), vec![A2, F1, L]);
        let sub = p.substitute(L, &SymPoly::int(2));
        assert_eq!(sub, s(F1) * 12 + s(A2) * 2 - SymPoly::int(5));
    }

    #[test]
    fn display() {
        let p = s(A1).pow(2) * 4 - s(A1) * 2 + SymPoly::rat(1, 6);
        assert_eq!(p.to_string(), "4*a1^2 - 2*a1 + 1/6");
        assert_eq!(SymPoly::zero().to_string(), "0");
        assert_eq!((-s(InvDelta)).to_string(), "-invD");
    }

    #[test]
    fn eval() {
        let p = s(A1).pow(2) * 4 - s(L) * s(A1) + SymPoly::rat(1, 4);
        let v = p.eval(|x| match x {
            A1 => 0.5,
            L => 3.0,
            _ => 0.0,
        });
        assert!((v - (1.0 - 1.5 + 0.25)).abs() < 1e-15);
    }

    fn arb_poly() -> impl Strategy<Value = SymPoly> {
        prop::collection::vec((0usize..4, 0u8..3, -5i64..6, 1i64..4), 0..5).prop_map(|terms| {
            let syms = [A1, A2, L, InvDelta];
            terms.into_iter().fold(SymPoly::zero(), |acc, (i, e, n, d)| {
                acc + s(syms[i]).pow(e as u32) * SymPoly::rat(n, d)
            })
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(!(&a * &b).terms().any(|(_, c)| c.is_zero()));
        }
    }
}
