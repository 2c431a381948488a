//! Exact identities: the progression/fraction DFT identity, agreement of the
//! two main-term forms, the Farey partition, and the symbolic tables.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, One, Zero};
use rayon::prelude::*;

use divl1_core::apvar::{dft_identity, lauzhao_equivalence_gap, lauzhao_main_term, main_term};
use divl1_core::arith::DivisorTable;
use divl1_core::farey::{dissection, Rational};
use divl1_symbolic::constants::NumericConstants;
use divl1_symbolic::tables::{
    assemble_c_coeffs, assemble_d_coeffs, audit_lemma2a_tables, compare, delta2_matching, lemma2a_tables, published_c,
    published_d, Alphas,
};
use divl1_symbolic::Symbol;

use crate::error::Result;
use crate::report::{Check, ExperimentReport, Row};

pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityConfig {
    pub dft_q_max: u64,
    pub dft_grid: Vec<u64>,
    pub lauzhao_q_max: u64,
    pub lauzhao_grid: Vec<u64>,
    /// Audit the Farey partition for every order up to this; `None` skips it.
    pub farey_gamma_max: Option<u64>,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        Self {
            dft_q_max: 100,
            dft_grid: vec![1_000, 10_000, 100_000],
            lauzhao_q_max: 200,
            lauzhao_grid: vec![100, 1_000, 10_000],
            farey_gamma_max: Some(500),
        }
    }
}

fn big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_i128(r: Ratio<i128>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Outcome of checking one dissection in exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct FareyAudit {
    pub gamma: u64,
    pub arcs: usize,
    pub total_is_one: bool,
    /// Neighbouring arcs (cyclically) that do not share an endpoint.
    pub gaps: usize,
    /// Arcs with length outside `[1/(qγ), 2/(qγ))`.
    pub length_violations: usize,
    /// Extremes of `length·qγ`.
    pub min_scaled: f64,
    pub max_scaled: f64,
}

impl FareyAudit {
    pub fn ok(&self) -> bool {
        self.total_is_one && self.gaps == 0 && self.length_violations == 0
    }
}

pub fn farey_audit(gamma: u64) -> Result<FareyAudit> {
    let dis = dissection(gamma)?;
    let arcs = dis.arcs();
    // Partial sums telescope to right − start, so they keep small
    // denominators; BigRational only takes over if i128 would overflow.
    let mut total = Some(Ratio::<i128>::zero());
    let mut big_total = BigRational::zero();
    let mut violations = 0;
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for arc in arcs {
        let len = arc.length();
        let (n, d) = (*len.numer() as i128, *len.denom() as i128);
        // length·qγ ∈ [1, 2)  ⇔  d ≤ n·q·γ < 2d
        let scaled = n * arc.q as i128 * gamma as i128;
        if scaled < d || scaled >= 2 * d {
            violations += 1;
        }
        let s = scaled as f64 / d as f64;
        lo = lo.min(s);
        hi = hi.max(s);
        total = match total {
            Some(t) => t.checked_add(&Ratio::new(n, d)).or_else(|| {
                big_total = big_i128(t);
                None
            }),
            None => None,
        };
        if total.is_none() {
            big_total += big(len);
        }
    }
    let total_is_one = match total {
        Some(t) => t.is_one(),
        None => big_total.is_one(),
    };
    let mut gaps = arcs.windows(2).filter(|w| w[0].right != w[1].left).count();
    if arcs.last().map(|a| a.right - 1) != arcs.first().map(|a| a.left) {
        gaps += 1;
    }
    Ok(FareyAudit {
        gamma,
        arcs: arcs.len(),
        total_is_one,
        gaps,
        length_violations: violations,
        min_scaled: lo,
        max_scaled: hi,
    })
}

pub fn run_identities(cfg: &IdentityConfig) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("identities");
    rep.param("dft_q_max", cfg.dft_q_max);
    rep.param("dft_grid", &cfg.dft_grid);
    rep.param("lauzhao_q_max", cfg.lauzhao_q_max);
    rep.param("lauzhao_grid", &cfg.lauzhao_grid);
    rep.param("farey_gamma_max", cfg.farey_gamma_max);

    if let Some(&top) = cfg.dft_grid.iter().max() {
        let table = DivisorTable::build(top as usize)?;
        let jobs: Vec<(u64, u64)> = cfg
            .dft_grid
            .iter()
            .flat_map(|&x| (1..=cfg.dft_q_max).map(move |q| (x, q)))
            .collect();
        let rows: Vec<Row> = jobs
            .par_iter()
            .map(|&(x, q)| -> Result<Row> {
                let id = dft_identity(q, x as usize, &table)?;
                Ok(Row::new(Some(x), id.lhs, id.rhs)
                    .q(q)
                    .label("dft")
                    .normalized(id.gap)
                    .extra("mixed_convention_gap", id.mixed_convention_gap))
            })
            .collect::<Result<_>>()?;
        let worst = rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
        rep.check(Check::at_most("DFT identity relative gap", worst, IDENTITY_TOL));
        rep.rows.extend(rows);
    }

    let jobs: Vec<(u64, u64)> = cfg
        .lauzhao_grid
        .iter()
        .flat_map(|&x| (1..=cfg.lauzhao_q_max).map(move |q| (x, q)))
        .collect();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(x, q)| -> Result<Row> {
            let xf = x as f64;
            // keep the residue with the largest gap
            let mut worst = (0.0, 1u64);
            for a in 1..=q {
                let gap = lauzhao_equivalence_gap(q, a, xf)?;
                if gap > worst.0 {
                    worst = (gap, a);
                }
            }
            let a = worst.1;
            let ours = main_term(q, a, xf)?;
            let theirs = lauzhao_main_term(q, a, xf)?;
            let rel = worst.0 / ours.abs().max(theirs.abs()).max(1.0);
            Ok(Row::new(Some(x), ours, theirs)
                .q(q)
                .label("lauzhao")
                .normalized(rel)
                .extra("a", a as f64)
                .extra("abs_gap", worst.0))
        })
        .collect::<Result<_>>()?;
    if !rows.is_empty() {
        let abs = rows.iter().map(|r| r.extras["abs_gap"]).fold(0.0, f64::max);
        let rel = rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
        rep.check(Check::at_most("main-term forms absolute gap", abs, IDENTITY_TOL));
        rep.check(Check::at_most("main-term forms relative gap", rel, IDENTITY_TOL));
        rep.rows.extend(rows);
    }

    if let Some(gmax) = cfg.farey_gamma_max {
        let audits: Vec<FareyAudit> = (1..=gmax).into_par_iter().map(farey_audit).collect::<Result<_>>()?;
        let bad = audits.iter().filter(|a| !a.ok()).count();
        rep.check(Check::none_of("Farey partition failures", bad));
        rep.rows.extend(audits.iter().map(|a| {
            let total = if a.total_is_one { 1.0 } else { f64::NAN };
            Row::new(None, total, 1.0)
                .label("farey")
                .normalized(a.max_scaled)
                .extra("gamma", a.gamma as f64)
                .extra("arcs", a.arcs as f64)
                .extra("min_scaled_length", a.min_scaled)
                .extra("max_scaled_length", a.max_scaled)
        }));
    }
    rep.finish()
}

/// The coefficient tables, their audit against the published values, and
/// the `Δ = 2` comparison evaluated numerically.
pub fn run_tables(constants: &NumericConstants) -> Result<ExperimentReport> {
    let mut rep = ExperimentReport::new("tables");
    rep.param("precision", constants.digits);
    let c = divl1_symbolic::residue::lemma1_coefficients(divl1_symbolic::residue::DEFAULT_ORDER)?;
    let d = divl1_symbolic::residue::lemma2_oracle_coefficients(
        &Alphas::specialised(),
        divl1_symbolic::residue::DEFAULT_ORDER,
    )?;
    rep.check(Check::none_of("c mismatches", compare(&c, &published_c()).len()));
    rep.check(Check::none_of("d mismatches", compare(&d, &published_d()).len()));
    let audit = audit_lemma2a_tables()?;
    rep.check(Check::none_of("mu/gamma*/S/t mismatches", audit.len()));
    for (i, line) in audit.iter().enumerate() {
        rep.symbolic.insert(format!("audit[{i}]"), line.clone());
    }
    // both assemblers error out on any mismatch
    let assembled = assemble_c_coeffs().is_ok() && assemble_d_coeffs().is_ok();
    rep.check(Check::none_of("assembly failures", usize::from(!assembled)));

    let t = lemma2a_tables(&Alphas::specialised())?;
    for ((j, k), v) in &c.pairs {
        rep.symbolic.insert(format!("c({j},{k})"), v.to_string());
    }
    for ((j, k), v) in &d.pairs {
        rep.symbolic.insert(format!("d({j},{k})"), v.to_string());
    }
    for ((j, k), v) in &t.pairs {
        rep.symbolic.insert(format!("t({j},{k})"), v.to_string());
    }
    for (j, v) in &t.singles {
        rep.symbolic.insert(format!("t({j})"), v.to_string());
    }

    let rows = delta2_matching()?;
    let nonzero = rows.iter().filter(|r| r.listed && !r.difference.is_zero()).count();
    rep.check(Check::none_of("Delta=2 listed differences", nonzero));
    let ev = |p: &divl1_symbolic::SymPoly| {
        p.eval(|s| match s {
            Symbol::InvDelta => 0.5,
            other => constants.value(other).unwrap_or(f64::NAN),
        })
    };
    for r in &rows {
        rep.symbolic
            .insert(format!("c-d/2^K({},{})", r.j, r.k), r.difference.to_string());
        let (cv, dv) = (ev(&r.c), ev(&r.d_scaled));
        let row = Row::new(None, cv, dv).label(format!("({},{})", r.j, r.k));
        let rel = row.residual.abs() / cv.abs().max(1.0);
        rep.rows
            .push(row.normalized(rel).extra("listed", f64::from(u8::from(r.listed))));
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_farey_audits() {
        for g in 1..=30 {
            let a = farey_audit(g).unwrap();
            assert!(a.ok(), "{a:?}");
            assert!(a.min_scaled >= 1.0 && a.max_scaled < 2.0);
        }
        assert_eq!(farey_audit(5).unwrap().arcs, 10);
    }
}
