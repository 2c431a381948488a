//! Divisor-square asymptotics, the totient-weighted `∫g_q²` sum, and the
//! arithmetic-progression variance sweep.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use divl1_core::apvar::decompose;
use divl1_core::arith::DivisorTable;
use divl1_core::majorarc::{ArcModel, EULER_GAMMA};
use divl1_core::quad::integrate_real;
use divl1_core::sum::Compensated;
use divl1_symbolic::constants::NumericConstants;
use divl1_symbolic::residue::{lemma1_coefficients, lemma2_oracle_coefficients, DEFAULT_ORDER};
use divl1_symbolic::tables::Alphas;
use divl1_symbolic::{CoeffTable, Symbol};

use crate::error::{invalid, Result};
use crate::report::{fit_of, Check, ExperimentReport, Row};

pub const LEMMA1_EXPONENT_MAX: f64 = 0.60;
pub const TREND_MAX: f64 = 0.02;
/// Sanity ceiling on `|LHS − RHS|·√γ/x`.
pub const LEMMA2_NORMALIZED_MAX: f64 = 10.0;
pub const QUADRATURE_AGREEMENT: f64 = 1e-10;

/// `Σ_{J,K} L^J w_K coeff_{J,K}` with the constants substituted.
fn eval_weighted(table: &CoeffTable, l: f64, weights: &[f64; 4], k: &NumericConstants, inv_delta: f64) -> f64 {
    let mut acc = Compensated::new();
    for (&(j, kk), poly) in &table.pairs {
        let v = poly.eval(|s| match s {
            Symbol::L => l,
            Symbol::InvDelta => inv_delta,
            other => k.value(other).unwrap_or(f64::NAN),
        });
        acc.add(l.powi(j as i32) * weights[kk as usize] * v);
    }
    acc.value()
}

fn max_x(x_grid: &[u64]) -> Result<usize> {
    match x_grid.iter().max() {
        Some(&m) if x_grid.iter().all(|&x| x >= 2) => Ok(m as usize),
        Some(_) => invalid("every x must be at least 2"),
        None => invalid("empty x grid"),
    }
}

/// `x Σ_{J+K≤3} (log x)^J 𝓕^{(K)}(1) c_{J,K}`, including the `J = 0` terms.
pub fn lemma1_prediction(x: f64, constants: &NumericConstants) -> Result<f64> {
    let c = lemma1_coefficients(DEFAULT_ORDER)?;
    Ok(x * eval_weighted(&c, x.ln(), &constants.f, constants, 0.0))
}

pub fn run_lemma1(x_grid: &[u64], constants: &NumericConstants) -> Result<ExperimentReport> {
    let table = DivisorTable::build(max_x(x_grid)?)?;
    let c = lemma1_coefficients(DEFAULT_ORDER)?;
    let mut rep = ExperimentReport::new("lemma1");
    rep.param("x_grid", x_grid);
    rep.param("precision", constants.digits);
    rep.rows = x_grid
        .par_iter()
        .map(|&x| {
            let xf = x as f64;
            let l = xf.ln();
            let predicted = xf * eval_weighted(&c, l, &constants.f, constants, 0.0);
            let observed = table.prefix_d2(x as usize) as f64;
            let row = Row::new(Some(x), observed, predicted);
            let normalized = row.residual / xf.powf(0.55);
            row.normalized(normalized)
                .extra("leading_term", xf * l.powi(3) * constants.f[0] / 6.0)
        })
        .collect();
    let trend: Vec<(f64, f64)> = rep
        .rows
        .iter()
        .map(|r| (r.x.unwrap() as f64, r.residual.abs()))
        .collect();
    rep.fit = fit_of("|residual|", &trend);
    if let Some(fit) = &rep.fit {
        rep.check(Check::at_most("residual exponent", fit.slope, LEMMA1_EXPONENT_MAX));
    }
    rep.finish()
}

/// `γ = ⌊x^{1/Δ}⌋`, corrected for rounding in `powf`.
pub fn gamma_for(x: u64, delta: f64) -> u64 {
    let xf = x as f64;
    let mut g = xf.powf(1.0 / delta).floor().max(1.0) as u64;
    while ((g + 1) as f64).powf(delta) <= xf {
        g += 1;
    }
    while g > 1 && (g as f64).powf(delta) > xf {
        g -= 1;
    }
    g
}

/// `Σ_{q≤γ} (φ(q)/q²) ∫₁ˣ g_q(t)² dt` from the closed form of `∫g_q²`.
pub fn lemma2_observed(x: u64, gamma: u64, table: &DivisorTable) -> Result<f64> {
    let xf = x as f64;
    let mut acc = Compensated::new();
    for q in 1..=gamma {
        let qf = q as f64;
        acc.add(table.phi(q as usize) as f64 / (qf * qf) * ArcModel::new(q, xf)?.l0());
    }
    Ok(acc.value())
}

/// Largest relative gap between quadrature of `∫₁ˣ g_q²` and its closed
/// form, over `count` moduli drawn uniformly from `1..=gamma`.
pub fn l0_quadrature_gap(x: u64, gamma: u64, count: usize, seed: u64) -> Result<(f64, Vec<u64>)> {
    let mut rng = StdRng::seed_from_u64(seed ^ x);
    let qs: Vec<u64> = (0..count).map(|_| rng.gen_range(1..=gamma)).collect();
    let xf = x as f64;
    let mut worst: f64 = 0.0;
    for &q in &qs {
        let model = ArcModel::new(q, xf)?;
        let closed = model.l0();
        let num = integrate_real(|t| model.g(t).powi(2), 1.0, xf, 64, 1e-14);
        worst = worst.max((num - closed).abs() / closed.abs().max(f64::MIN_POSITIVE));
    }
    Ok((worst, qs))
}

pub fn run_lemma2(x_grid: &[u64], delta: f64, constants: &NumericConstants, seed: u64) -> Result<ExperimentReport> {
    if !(delta.is_finite() && delta >= 1.0) {
        return invalid(format!("Delta = {delta} must be at least 1"));
    }
    let gammas: Vec<u64> = x_grid.iter().map(|&x| gamma_for(x, delta)).collect();
    max_x(x_grid)?;
    let table = DivisorTable::build(*gammas.iter().max().unwrap() as usize)?;
    let d = lemma2_oracle_coefficients(&Alphas::specialised(), DEFAULT_ORDER)?;
    let mut rep = ExperimentReport::new("lemma2");
    rep.param("x_grid", x_grid);
    rep.param("delta", delta);
    rep.param("gamma", &gammas);
    rep.param("seed", seed);
    rep.param("precision", constants.digits);
    let rows: Vec<(Row, f64)> = x_grid
        .par_iter()
        .zip(&gammas)
        .map(|(&x, &gamma)| -> Result<(Row, f64)> {
            let xf = x as f64;
            let l = xf.ln();
            // log γ = L·invΔ with the integer γ actually summed over
            let inv_delta = (gamma as f64).ln() / l;
            let predicted = xf * eval_weighted(&d, l, &constants.g, constants, inv_delta);
            let observed = lemma2_observed(x, gamma, &table)?;
            let (quad_gap, _) = l0_quadrature_gap(x, gamma, 5, seed)?;
            let row = Row::new(Some(x), observed, predicted);
            let normalized = row.residual.abs() * (gamma as f64).sqrt() / xf;
            let row = row
                .normalized(normalized)
                .extra("gamma", gamma as f64)
                .extra("inv_delta", inv_delta)
                .extra("l0_quadrature_gap", quad_gap);
            Ok((row, quad_gap))
        })
        .collect::<Result<_>>()?;
    let quad_worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    rep.rows = rows.into_iter().map(|r| r.0).collect();
    let trend: Vec<(f64, f64)> = rep.rows.iter().map(|r| (r.x.unwrap() as f64, r.normalized)).collect();
    let worst = rep.rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
    rep.fit = fit_of("normalized residual", &trend);
    if let Some(fit) = &rep.fit {
        rep.check(Check::at_most("normalized residual trend", fit.slope, TREND_MAX));
    }
    rep.check(Check::at_most("max normalized residual", worst, LEMMA2_NORMALIZED_MAX));
    rep.check(Check::at_most(
        "L0 quadrature agreement",
        quad_worst,
        QUADRATURE_AGREEMENT,
    ));
    rep.finish()
}

/// Moduli for the variance sweep: primes and a fixed set of highly
/// composite numbers, each kept only while `q ≤ √x`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSweep {
    pub primes_upto: u64,
    pub composites: Vec<u64>,
    /// Optional global cap on `q`.
    pub q_max: Option<u64>,
}

impl Default for QSweep {
    fn default() -> Self {
        Self {
            primes_upto: 31,
            composites: vec![12, 24, 36, 60, 120],
            q_max: None,
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl QSweep {
    pub fn moduli(&self, x: u64) -> Vec<(u64, &'static str)> {
        let fits = |q: u64| q * q <= x && self.q_max.is_none_or(|m| q <= m);
        let mut out: Vec<(u64, &'static str)> = (2..=self.primes_upto)
            .filter(|&p| is_prime(p) && fits(p))
            .map(|p| (p, "prime"))
            .collect();
        out.extend(self.composites.iter().filter(|&&q| fits(q)).map(|&q| (q, "composite")));
        out
    }
}

/// `(D(x) − x(log x + 2γ − 1))²`, the `q = 1` variance.
pub fn dirichlet_error_square(x: u64, table: &DivisorTable) -> f64 {
    let xf = x as f64;
    let e = table.prefix_d(x as usize) as f64 - xf * (xf.ln() + 2.0 * EULER_GAMMA - 1.0);
    e * e
}

pub fn run_lemma3(x_grid: &[u64], sweep: &QSweep) -> Result<ExperimentReport> {
    let table = DivisorTable::build(max_x(x_grid)?)?;
    let mut rep = ExperimentReport::new("lemma3");
    rep.param("x_grid", x_grid);
    rep.param("primes_upto", sweep.primes_upto);
    rep.param("composites", &sweep.composites);
    rep.param("q_max", sweep.q_max);
    let jobs: Vec<(u64, u64, &'static str)> = x_grid
        .iter()
        .flat_map(|&x| {
            std::iter::once((x, 1, "reference")).chain(sweep.moduli(x).into_iter().map(move |(q, f)| (x, q, f)))
        })
        .collect();
    rep.rows = jobs
        .par_iter()
        .map(|&(x, q, family)| -> Result<Row> {
            let v = decompose(q, x as usize, &table)?.variance();
            let scale = q as f64 * (x as f64).sqrt();
            Ok(Row::new(Some(x), v, scale).q(q).label(family).normalized(v / scale))
        })
        .collect::<Result<_>>()?;

    let mut trend = Vec::new();
    let mut max_ratio = std::collections::BTreeMap::new();
    for &x in x_grid {
        let best = rep
            .rows
            .iter()
            .filter(|r| r.x == Some(x) && r.q != Some(1))
            .map(|r| r.normalized)
            .fold(f64::NAN, f64::max);
        if best.is_finite() {
            trend.push((x as f64, best));
            max_ratio.insert(x.to_string(), best);
        }
    }
    rep.param("max_ratio", &max_ratio);
    if trend.is_empty() {
        return invalid("no modulus of the sweep satisfies q ≤ √x");
    }
    rep.fit = fit_of("max variance/(q sqrt x)", &trend);
    if let Some(fit) = &rep.fit {
        rep.check(Check::at_most("max ratio trend", fit.slope, TREND_MAX));
    }
    let negative = rep
        .rows
        .iter()
        .filter(|r| r.observed.is_nan() || r.observed < 0.0)
        .count();
    rep.check(Check::none_of("negative variances", negative));
    let mut q1_gap: f64 = 0.0;
    for r in rep.rows.iter().filter(|r| r.q == Some(1)) {
        let expected = dirichlet_error_square(r.x.unwrap(), &table);
        q1_gap = q1_gap.max((r.observed - expected).abs() / expected.max(1.0));
    }
    rep.check(Check::at_most("q=1 equals Dirichlet error square", q1_gap, 1e-9));
    rep.finish()
}
