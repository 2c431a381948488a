//! Coefficient tables: `c_{J,K}` from the divisor-square residue, the
//! combinatorial quantities `S`, `μ`, `γ*`, `t(J,K)`, `t(J)` behind `d_{J,K}`,
//! the published reference values, and the `Δ = 2` comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Result, SymbolicError};
use crate::poly::{SymPoly, Symbol};
use crate::residue::{lemma1_coefficients, zeta_coeff, DEFAULT_ORDER};

/// Entries `(J,K) → value` and, for the `K`-free family, `J → value`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoeffTable {
    pub pairs: BTreeMap<(u32, u32), SymPoly>,
    pub singles: BTreeMap<u32, SymPoly>,
}

impl CoeffTable {
    pub fn pair(&self, j: u32, k: u32) -> SymPoly {
        self.pairs.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn single(&self, j: u32) -> SymPoly {
        self.singles.get(&j).cloned().unwrap_or_default()
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&SymPoly) -> SymPoly) -> Self {
        Self {
            pairs: self.pairs.iter().map(|(k, v)| (*k, f(v))).collect(),
            singles: self.singles.iter().map(|(k, v)| (*k, f(v))).collect(),
        }
    }

    /// Aligned text, rows in descending `(J,K)`.
    pub fn render(&self, pair_label: &str, single_label: &str) -> String {
        let mut out = String::new();
        for ((j, k), v) in self.pairs.iter().rev() {
            out.push_str(&format!("{pair_label}({j},{k})  {v}\n"));
        }
        for (j, v) in self.singles.iter().rev() {
            out.push_str(&format!("{single_label}({j})    {v}\n"));
        }
        out
    }
}

/// One entry that disagrees with a reference table.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub j: u32,
    /// `None` for the `K`-free family.
    pub k: Option<u32>,
    pub expected: SymPoly,
    pub found: SymPoly,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "({},{k})", self.j)?,
            None => write!(f, "({})", self.j)?,
        }
        write!(f, ": expected {}, found {}", self.expected, self.found)
    }
}

/// Entries of `reference` that `found` does not reproduce exactly.
pub fn compare(found: &CoeffTable, reference: &CoeffTable) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (&(j, k), expected) in &reference.pairs {
        let got = found.pair(j, k);
        if &got != expected {
            out.push(Mismatch {
                j,
                k: Some(k),
                expected: expected.clone(),
                found: got,
            });
        }
    }
    for (&j, expected) in &reference.singles {
        let got = found.single(j);
        if &got != expected {
            out.push(Mismatch {
                j,
                k: None,
                expected: expected.clone(),
                found: got,
            });
        }
    }
    out
}

fn s(x: Symbol) -> SymPoly {
    SymPoly::symbol(x)
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::from_integer(1.into()), |acc, k| {
        acc * BigRational::from_integer(k.into())
    })
}

fn sign(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The free coefficients of `g_q(t) = (α₀₀ + α₀₁) + α₁₀ log q + α₀₁ log t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Alphas {
    pub a00: SymPoly,
    pub a01: SymPoly,
    pub a10: SymPoly,
}

impl Alphas {
    /// Inert symbols.
    pub fn generic() -> Self {
        Self {
            a00: s(Symbol::Alpha00),
            a01: s(Symbol::Alpha01),
            a10: s(Symbol::Alpha10),
        }
    }

    /// `α₀₀ = 2a₁ − 1`, `α₀₁ = 1`, `α₁₀ = −2`, i.e. `g_q(t) = log t − 2 log q + 2a₁`.
    pub fn specialised() -> Self {
        Self {
            a00: s(Symbol::A1) * 2 - SymPoly::one(),
            a01: SymPoly::one(),
            a10: SymPoly::int(-2),
        }
    }

    /// `(β₀₀, β₁₀, β₀₁)`: constant, `log q` and `log t` coefficients of `g_q`.
    pub fn betas(&self) -> (SymPoly, SymPoly, SymPoly) {
        (&self.a00 + &self.a01, self.a10.clone(), self.a01.clone())
    }
}

/// `S(𝒬*, 𝒳)`: the coefficient of `(log q)^{𝒬*−1} (log t)^𝒳` in `g_q(t)²`.
pub fn s_coefficient(alphas: &Alphas, qstar: u32, xcal: u32) -> SymPoly {
    let (b00, b10, b01) = alphas.betas();
    match (qstar.checked_sub(1), xcal) {
        (Some(0), 0) => &b00 * &b00,
        (Some(1), 0) => &b00 * &b10 * 2,
        (Some(0), 1) => &b00 * &b01 * 2,
        (Some(2), 0) => &b10 * &b10,
        (Some(1), 1) => &b10 * &b01 * 2,
        (Some(0), 2) => &b01 * &b01,
        _ => SymPoly::zero(),
    }
}

/// `μ_{𝒬*,𝒳} = −a_{𝒬*−K} (−1)^{J+𝒬*+𝒳} (𝒬*−1)! 𝒳! / (J! K!)`, with `a₀ = 1`.
pub fn mu_coefficient(qstar: u32, xcal: u32, j: u32, k: u32) -> Result<SymPoly> {
    let idx = qstar
        .checked_sub(k)
        .ok_or_else(|| SymbolicError::InvalidArgument(format!("μ needs 𝒬* ≥ K, got 𝒬* = {qstar}, K = {k}")))?;
    if qstar == 0 {
        return Err(SymbolicError::InvalidArgument("μ needs 𝒬* ≥ 1".into()));
    }
    let c = factorial(qstar - 1) * factorial(xcal) / (factorial(j) * factorial(k))
        * BigRational::from_integer((-sign(j + qstar + xcal)).into());
    Ok(zeta_coeff(idx as usize)?.scale(&c))
}

/// `γ*_{𝒬*,𝒳} = (−1)^{J+𝒬*+𝒳} 𝒳! / ((J−𝒬*)! 𝒬* Δ^{𝒬*})`; zero when `J < 𝒬*`.
pub fn gamma_star(qstar: u32, xcal: u32, j: u32) -> SymPoly {
    if qstar == 0 || j < qstar {
        return SymPoly::zero();
    }
    let c = factorial(xcal) / (factorial(j - qstar) * BigRational::from_integer(qstar.into()))
        * BigRational::from_integer(sign(j + qstar + xcal).into());
    s(Symbol::InvDelta).pow(qstar).scale(&c)
}

/// Index pairs `(𝒬*, 𝒳)` with `𝒬* ≥ 1` and `1 ≤ 𝒬* + 𝒳 ≤ 3`.
fn index_pairs() -> impl Iterator<Item = (u32, u32)> {
    (1..=3u32).flat_map(|q| (0..=3 - q).map(move |x| (q, x)))
}

/// Contributions to `t(J,K)`: `𝒳 ≥ J`, `𝒬* ≥ K`.
pub fn t_pair_terms(j: u32, k: u32) -> Result<Vec<((u32, u32), SymPoly)>> {
    index_pairs()
        .filter(|&(q, x)| x >= j && q >= k)
        .map(|(q, x)| Ok(((q, x), mu_coefficient(q, x, j, k)?)))
        .collect()
}

/// Contributions to `t(J)`: `J ≤ 𝒬* + 𝒳`, `𝒬* ≤ J`.
pub fn t_single_terms(j: u32) -> Vec<((u32, u32), SymPoly)> {
    index_pairs()
        .filter(|&(q, x)| j <= q + x && q <= j)
        .map(|(q, x)| ((q, x), gamma_star(q, x, j)))
        .collect()
}

/// `t(J,K)` for `J + K ≤ 3` and `t(J)` for `J ≤ 3`.
pub fn lemma2a_tables(alphas: &Alphas) -> Result<CoeffTable> {
    let mut t = CoeffTable::default();
    for j in 0..=3u32 {
        for k in 0..=3 - j {
            let mut acc = SymPoly::zero();
            for ((q, x), mu) in t_pair_terms(j, k)? {
                acc += &(mu * s_coefficient(alphas, q, x));
            }
            t.pairs.insert((j, k), acc);
        }
        let mut acc = SymPoly::zero();
        for ((q, x), g) in t_single_terms(j) {
            acc += &(g * s_coefficient(alphas, q, x));
        }
        t.singles.insert(j, acc);
    }
    Ok(t)
}

/// `d_{J,K} = t(J,K) + [K = 0] t(J)`.
pub fn combine_d(t: &CoeffTable) -> CoeffTable {
    let mut d = CoeffTable::default();
    for (&(j, k), v) in &t.pairs {
        let mut e = v.clone();
        if k == 0 {
            e += &t.single(j);
        }
        d.pairs.insert((j, k), e);
    }
    d
}

/// `d_{J,K}` at the specialised `α`, checked against the published table.
pub fn assemble_d_coeffs() -> Result<CoeffTable> {
    let d = combine_d(&lemma2a_tables(&Alphas::specialised())?);
    let diff = compare(&d, &published_d());
    if diff.is_empty() {
        Ok(d)
    } else {
        Err(SymbolicError::Mismatch(diff))
    }
}

/// `c_{J,K}` from the residue, checked against the published table.
pub fn assemble_c_coeffs() -> Result<CoeffTable> {
    let c = lemma1_coefficients(DEFAULT_ORDER)?;
    let diff = compare(&c, &published_c());
    if diff.is_empty() {
        Ok(c)
    } else {
        Err(SymbolicError::Mismatch(diff))
    }
}

/// The six published `c_{J,K}`.
pub fn published_c() -> CoeffTable {
    let a1 = s(Symbol::A1);
    let a2 = s(Symbol::A2);
    let mut t = CoeffTable::default();
    t.pairs.insert((3, 0), SymPoly::rat(1, 6));
    t.pairs.insert((2, 1), SymPoly::rat(1, 2));
    t.pairs.insert((2, 0), &a1 * 2 - SymPoly::rat(1, 2));
    t.pairs.insert((1, 2), SymPoly::rat(1, 2));
    t.pairs.insert((1, 1), &a1 * 4 - SymPoly::one());
    t.pairs
        .insert((1, 0), &a2 * 4 + a1.pow(2) * 6 - &a1 * 4 + SymPoly::one());
    t
}

/// The six published `d_{J,K}`.
pub fn published_d() -> CoeffTable {
    let a1 = s(Symbol::A1);
    let a2 = s(Symbol::A2);
    let inv = s(Symbol::InvDelta);
    let mut t = CoeffTable::default();
    t.pairs
        .insert((3, 0), inv.pow(3) * SymPoly::rat(4, 3) - inv.pow(2) * 2 + inv.clone());
    t.pairs.insert((2, 1), SymPoly::one());
    t.pairs.insert(
        (2, 0),
        &a1 + (&a1 * 2 - SymPoly::one()) * 2 * &inv * (SymPoly::one() - &inv),
    );
    t.pairs.insert((1, 2), SymPoly::int(2));
    t.pairs.insert((1, 1), &a1 * 8 - SymPoly::int(2));
    t.pairs.insert(
        (1, 0),
        &a2 * 4 + a1.pow(2) * 4 - &a1 * 2 + (a1.pow(2) * 4 - &a1 * 4 + SymPoly::int(2)) * &inv,
    );
    t
}

/// The published `t(J,K)` and `t(J)` at the specialised `α`.
pub fn published_t() -> CoeffTable {
    let a1 = s(Symbol::A1);
    let a2 = s(Symbol::A2);
    let inv = s(Symbol::InvDelta);
    let mut t = CoeffTable::default();
    t.pairs.insert((3, 0), SymPoly::zero());
    t.pairs.insert((2, 1), SymPoly::one());
    t.pairs.insert((2, 0), a1.clone());
    t.pairs.insert((1, 2), SymPoly::int(2));
    t.pairs.insert((1, 1), &a1 * 8 - SymPoly::int(2));
    t.pairs.insert((1, 0), &a2 * 4 + a1.pow(2) * 4 - &a1 * 2);
    t.singles
        .insert(3, inv.pow(3) * SymPoly::rat(4, 3) - inv.pow(2) * 2 + inv.clone());
    t.singles
        .insert(2, (&a1 * 2 - SymPoly::one()) * 2 * (SymPoly::one() - &inv) * &inv);
    t.singles.insert(1, (a1.pow(2) * 4 - &a1 * 4 + SymPoly::int(2)) * &inv);
    t
}

/// The published `S(𝒬*, 𝒳)` in terms of the free `α`.
pub fn published_s() -> BTreeMap<(u32, u32), SymPoly> {
    let (a00, a01, a10) = (s(Symbol::Alpha00), s(Symbol::Alpha01), s(Symbol::Alpha10));
    let sum = &a00 + &a01;
    BTreeMap::from([
        ((3, 0), a10.pow(2)),
        ((2, 1), &a10 * &a01 * 2),
        ((2, 0), &a10 * &sum * 2),
        ((1, 2), a01.pow(2)),
        ((1, 1), &a01 * &sum * 2),
        ((1, 0), sum.pow(2)),
    ])
}

/// A line of the published `μ`/`γ*` table; blank cells are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstTableRow {
    pub j: u32,
    pub k: u32,
    pub qstar: u32,
    pub x: u32,
    pub mu: Option<SymPoly>,
    pub gamma_star: Option<SymPoly>,
}

pub fn published_first_table() -> Vec<FirstTableRow> {
    let a1 = s(Symbol::A1);
    let inv = s(Symbol::InvDelta);
    let row = |j, k, qstar, x, mu: Option<SymPoly>, g: Option<SymPoly>| FirstTableRow {
        j,
        k,
        qstar,
        x,
        mu,
        gamma_star: g,
    };
    vec![
        row(3, 0, 3, 0, None, Some(inv.pow(3) * SymPoly::rat(1, 3))),
        row(3, 0, 2, 1, None, Some(inv.pow(2) * SymPoly::rat(1, 2))),
        row(3, 0, 1, 2, None, Some(inv.clone())),
        row(2, 1, 1, 2, Some(SymPoly::one()), None),
        row(2, 0, 1, 1, None, Some(inv.clone())),
        row(2, 0, 1, 2, Some(a1.clone()), Some(&inv * -2)),
        row(2, 0, 2, 0, None, Some(inv.pow(2) * SymPoly::rat(1, 2))),
        row(2, 0, 2, 1, None, Some(inv.pow(2) * SymPoly::rat(-1, 2))),
        row(1, 2, 2, 1, Some(SymPoly::rat(-1, 2)), None),
        row(1, 1, 1, 1, Some(SymPoly::one()), None),
        row(1, 1, 1, 2, Some(SymPoly::int(-2)), None),
        row(1, 1, 2, 1, Some(-&a1), None),
        row(1, 0, 1, 0, None, Some(inv.clone())),
        row(1, 0, 1, 1, Some(a1.clone()), Some(-&inv)),
        row(1, 0, 1, 2, Some(&a1 * -2), Some(&inv * 2)),
        row(1, 0, 2, 1, Some(-s(Symbol::A2)), None),
    ]
}

/// Pair products and single factors making up one `t` entry.
pub type TTerms = (Vec<(u32, u32)>, Vec<(u32, u32)>);

/// Which `(𝒬*, 𝒳)` enter `t(J,K)` and `t(J)` in the published symbolic table.
pub fn published_t_terms() -> BTreeMap<(u32, u32), TTerms> {
    BTreeMap::from([
        ((3, 0), (vec![], vec![(3, 0), (2, 1), (1, 2)])),
        ((2, 1), (vec![(1, 2)], vec![])),
        ((2, 0), (vec![(1, 2)], vec![(1, 1), (1, 2), (2, 0), (2, 1)])),
        ((1, 2), (vec![(2, 1)], vec![])),
        ((1, 1), (vec![(1, 1), (1, 2), (2, 1)], vec![])),
        ((1, 0), (vec![(1, 1), (1, 2), (2, 1)], vec![(1, 0), (1, 1), (1, 2)])),
    ])
}

/// Every disagreement between the computed `μ`, `γ*`, `S`, `t` and the
/// published tables, as readable lines. Empty when all entries match.
pub fn audit_lemma2a_tables() -> Result<Vec<String>> {
    let mut out = Vec::new();
    for r in published_first_table() {
        let label = format!("({},{}) ({},{})", r.j, r.k, r.qstar, r.x);
        let in_pair = t_pair_terms(r.j, r.k)?.iter().any(|(qx, _)| *qx == (r.qstar, r.x));
        let in_single = r.k == 0 && t_single_terms(r.j).iter().any(|(qx, _)| *qx == (r.qstar, r.x));
        match &r.mu {
            Some(m) => {
                let got = mu_coefficient(r.qstar, r.x, r.j, r.k)?;
                if &got != m || !in_pair {
                    out.push(format!("μ {label}: expected {m}, found {got} (used: {in_pair})"));
                }
            }
            None if in_pair => out.push(format!("μ {label}: blank in table but contributes")),
            None => {}
        }
        match &r.gamma_star {
            Some(g) => {
                let got = gamma_star(r.qstar, r.x, r.j);
                if &got != g || !in_single {
                    out.push(format!("γ* {label}: expected {g}, found {got} (used: {in_single})"));
                }
            }
            None if in_single => out.push(format!("γ* {label}: blank in table but contributes")),
            None => {}
        }
    }
    let generic = Alphas::generic();
    for ((q, x), expected) in published_s() {
        let got = s_coefficient(&generic, q, x);
        if got != expected {
            out.push(format!("S({q},{x}): expected {expected}, found {got}"));
        }
    }
    for ((j, k), (pairs, singles)) in published_t_terms() {
        let got_pairs: Vec<_> = t_pair_terms(j, k)?.into_iter().map(|(qx, _)| qx).collect();
        let got_singles: Vec<_> = if k == 0 {
            t_single_terms(j).into_iter().map(|(qx, _)| qx).collect()
        } else {
            vec![]
        };
        let (mut want_p, mut want_s) = (pairs, singles);
        want_p.sort();
        want_s.sort();
        if got_pairs != want_p {
            out.push(format!("t({j},{k}) terms: expected {want_p:?}, found {got_pairs:?}"));
        }
        if got_singles != want_s {
            out.push(format!("t({j}) terms: expected {want_s:?}, found {got_singles:?}"));
        }
        // every contributing index appears in the first table
        for qx in got_pairs.iter().chain(&got_singles) {
            let listed = published_first_table()
                .iter()
                .any(|r| (r.j, r.k, r.qstar, r.x) == (j, k, qx.0, qx.1));
            if !listed {
                out.push(format!("({j},{k}) {qx:?}: contributes but missing from first table"));
            }
        }
    }
    let t = lemma2a_tables(&Alphas::specialised())?;
    out.extend(compare(&t, &published_t()).iter().map(|m| format!("t {m}")));
    Ok(out)
}

/// One row of the `Δ = 2` comparison `c_{J,K} − d_{J,K}/2^K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchRow {
    pub j: u32,
    pub k: u32,
    pub c: SymPoly,
    /// `d_{J,K}/2^K` at `invΔ = 1/2`
    pub d_scaled: SymPoly,
    pub difference: SymPoly,
    /// Whether the pair is among the published coefficients (`J ≥ 1`).
    pub listed: bool,
}

/// `c_{J,K} − d_{J,K}/2^K` at `Δ = 2` for every `J + K ≤ 3`.
pub fn delta2_matching() -> Result<Vec<MatchRow>> {
    let c = assemble_c_coeffs()?;
    let d = assemble_d_coeffs()?;
    let half = SymPoly::rat(1, 2);
    let mut rows = Vec::new();
    for j in (0..=3u32).rev() {
        for k in (0..=3 - j).rev() {
            let scale = BigRational::new(1.into(), (1i64 << k).into());
            let d_scaled = d.pair(j, k).substitute(Symbol::InvDelta, &half).scale(&scale);
            let cv = c.pair(j, k);
            rows.push(MatchRow {
                j,
                k,
                difference: &cv - &d_scaled,
                c: cv,
                d_scaled,
                listed: j >= 1,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_table_entries() {
        let inv = s(Symbol::InvDelta);
        assert_eq!(gamma_star(3, 0, 3), inv.pow(3) * SymPoly::rat(1, 3));
        assert_eq!(gamma_star(2, 1, 3), inv.pow(2) * SymPoly::rat(1, 2));
        assert_eq!(gamma_star(1, 2, 3), inv.clone());
        assert_eq!(gamma_star(1, 1, 2), inv.clone());
        assert_eq!(gamma_star(1, 2, 2), &inv * -2);
        assert_eq!(gamma_star(2, 0, 2), inv.pow(2) * SymPoly::rat(1, 2));
        assert_eq!(gamma_star(2, 1, 2), inv.pow(2) * SymPoly::rat(-1, 2));
        assert_eq!(gamma_star(1, 0, 1), inv.clone());
        assert_eq!(gamma_star(1, 1, 1), -&inv);
        assert_eq!(gamma_star(1, 2, 1), &inv * 2);
        assert!(gamma_star(2, 0, 1).is_zero());

        let a1 = s(Symbol::A1);
        assert_eq!(mu_coefficient(1, 2, 2, 1).unwrap(), SymPoly::one());
        assert_eq!(mu_coefficient(1, 2, 2, 0).unwrap(), a1.clone());
        assert_eq!(mu_coefficient(2, 1, 1, 2).unwrap(), SymPoly::rat(-1, 2));
        assert_eq!(mu_coefficient(1, 1, 1, 1).unwrap(), SymPoly::one());
        assert_eq!(mu_coefficient(1, 2, 1, 1).unwrap(), SymPoly::int(-2));
        assert_eq!(mu_coefficient(2, 1, 1, 1).unwrap(), -&a1);
        assert_eq!(mu_coefficient(1, 1, 1, 0).unwrap(), a1.clone());
        assert_eq!(mu_coefficient(1, 2, 1, 0).unwrap(), &a1 * -2);
        assert_eq!(mu_coefficient(2, 1, 1, 0).unwrap(), -s(Symbol::A2));
        assert!(mu_coefficient(1, 0, 0, 2).is_err());
    }

    #[test]
    fn second_table() {
        let al = Alphas::generic();
        for ((q, x), expected) in published_s() {
            assert_eq!(s_coefficient(&al, q, x), expected, "S({q},{x})");
        }
    }

    #[test]
    fn third_table_structure() {
        let al = Alphas::generic();
        let t = lemma2a_tables(&al).unwrap();
        assert!(t.pair(3, 0).is_zero());
        assert_eq!(
            t.pair(2, 1),
            mu_coefficient(1, 2, 2, 1).unwrap() * s_coefficient(&al, 1, 2)
        );
        let terms: Vec<_> = t_pair_terms(1, 0).unwrap().into_iter().map(|(qx, _)| qx).collect();
        assert_eq!(terms, vec![(1, 1), (1, 2), (2, 1)]);
        let terms: Vec<_> = t_single_terms(2).into_iter().map(|(qx, _)| qx).collect();
        assert_eq!(terms, vec![(1, 1), (1, 2), (2, 0), (2, 1)]);
        assert!(t.single(0).is_zero());
    }

    #[test]
    fn specialised_third_table() {
        let t = lemma2a_tables(&Alphas::specialised()).unwrap();
        let reference = published_t();
        assert_eq!(compare(&t, &reference), vec![]);
    }

    #[test]
    fn published_d_coefficients() {
        let d = assemble_d_coeffs().unwrap();
        assert_eq!(d.pair(1, 1), s(Symbol::A1) * 8 - SymPoly::int(2));
        let c = assemble_c_coeffs().unwrap();
        assert_eq!(c.pair(3, 0), SymPoly::rat(1, 6));
    }

    #[test]
    fn mismatch_is_reported() {
        let mut wrong = published_d();
        wrong.pairs.insert((2, 1), SymPoly::int(3));
        let d = combine_d(&lemma2a_tables(&Alphas::specialised()).unwrap());
        let diff = compare(&d, &wrong);
        assert_eq!(diff.len(), 1);
        assert_eq!((diff[0].j, diff[0].k), (2, Some(1)));
        assert_eq!(diff[0].found, SymPoly::one());
        assert!(diff[0].to_string().starts_with("(2,1): expected 3"));
    }

    #[test]
    fn published_tables_audit_clean() {
        assert_eq!(audit_lemma2a_tables().unwrap(), Vec::<String>::new());
        assert_eq!(published_first_table().len(), 16);
    }

    #[test]
    fn render_is_aligned_text() {
        let text = published_c().render("c", "");
        assert!(text.starts_with("c(3,0)  1/6\n"));
        assert_eq!(text.lines().count(), 6);
    }
}
