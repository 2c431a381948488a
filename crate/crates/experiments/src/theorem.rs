//! Growth of `∫₀¹|S|` and the mean square of `S − S*` over the dissection.

use num_rational::Ratio;
use rayon::prelude::*;

use divl1_core::arith::DivisorTable;
use divl1_core::expsum::{sample_s_fft, SumSampling};
use divl1_core::farey::{dissection, Dissection};
use divl1_core::majorarc::ArcModel;
use divl1_core::sum::{pairwise_sum, Compensated};

use crate::error::{invalid, Result};
use crate::lemmas::{gamma_for, TREND_MAX};
use crate::report::{fit_loglog, fit_of, Check, ExperimentReport, Row};

pub const PARSEVAL_TOL: f64 = 1e-9;
pub const EXPONENT_TARGET: f64 = 0.50;
pub const EXPONENT_TOL: f64 = 0.02;
pub const RATIO_SPREAD_MAX: f64 = 1.5;

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremConfig {
    /// Grid size `M = multiplier·x`.
    pub multiplier: usize,
    /// Dissection order `γ = ⌊x^{1/Δ}⌋`.
    pub delta: f64,
    /// Also sample at `2M` to test the bracket.
    pub refine: bool,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        Self {
            multiplier: 16,
            delta: 2.0,
            refine: true,
        }
    }
}

/// `⌈r·m⌉`.
fn ceil_mul(r: Ratio<i64>, m: i64) -> i64 {
    let p = *r.numer() as i128 * m as i128;
    let d = *r.denom() as i128;
    (p.div_euclid(d) + i128::from(p.rem_euclid(d) != 0)) as i64
}

/// `(1/M) Σ_j |S(j/M) − S*(j/M)|²`, each grid point assigned to the arc
/// containing it. Arcs are swept in parallel.
pub fn delta_mean_square(sampling: &SumSampling, dis: &Dissection) -> Result<f64> {
    let m = sampling.grid_size() as i64;
    let x = sampling.x() as f64;
    let parts: Vec<(f64, i64)> = dis
        .arcs()
        .par_iter()
        .map(|arc| -> Result<(f64, i64)> {
            let lo = ceil_mul(arc.left, m);
            let hi = ceil_mul(arc.right, m);
            let model = ArcModel::new(arc.q, x)?;
            let (a, q) = (arc.a as i64, arc.q as i64);
            let qf = arc.q as f64;
            let denom = (q * m) as f64;
            let mut acc = Compensated::new();
            for j in lo..hi {
                let beta = (j * q - a * m) as f64 / denom;
                let approx = model.i_q(beta)? / qf;
                acc.add((sampling.at(j.rem_euclid(m) as usize) - approx).norm_sqr());
            }
            Ok((acc.value(), hi - lo))
        })
        .collect::<Result<_>>()?;
    let covered: i64 = parts.iter().map(|p| p.1).sum();
    if covered != m {
        return invalid(format!("arcs cover {covered} of {m} grid points"));
    }
    let sums: Vec<f64> = parts.iter().map(|p| p.0).collect();
    Ok(pairwise_sum(&sums) / m as f64)
}

/// Per-`x` measurements of the theorem study.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremPoint {
    pub x: u64,
    pub grid_size: usize,
    pub l1: f64,
    pub half_width: f64,
    pub refined_l1: Option<f64>,
    pub parseval_gap: f64,
    pub gamma: u64,
    pub delta_sq: f64,
}

pub fn theorem_point(x: u64, cfg: &TheoremConfig, table: &DivisorTable) -> Result<TheoremPoint> {
    let m = cfg
        .multiplier
        .checked_mul(x as usize)
        .ok_or_else(|| crate::error::ExperimentError::InvalidArgument("grid size overflows".into()))?;
    let refined_l1 = if cfg.refine {
        Some(sample_s_fft(x as usize, 2 * m, table)?.l1_norm().value)
    } else {
        None
    };
    let sampling = sample_s_fft(x as usize, m, table)?;
    let l1 = sampling.l1_norm();
    let gamma = gamma_for(x, cfg.delta);
    let delta_sq = delta_mean_square(&sampling, &dissection(gamma)?)?;
    Ok(TheoremPoint {
        x,
        grid_size: m,
        l1: l1.value,
        half_width: l1.half_width,
        refined_l1,
        parseval_gap: sampling.parseval_gap(),
        gamma,
        delta_sq,
    })
}

pub fn run_theorem(x_grid: &[u64], cfg: &TheoremConfig) -> Result<ExperimentReport> {
    if cfg.multiplier == 0 {
        return invalid("multiplier must be positive");
    }
    if !(cfg.delta.is_finite() && cfg.delta >= 1.0) {
        return invalid(format!("Delta = {} must be at least 1", cfg.delta));
    }
    let Some(&top) = x_grid.iter().max() else {
        return invalid("empty x grid");
    };
    let table = DivisorTable::build(top as usize)?;
    let points: Vec<TheoremPoint> = x_grid
        .par_iter()
        .map(|&x| theorem_point(x, cfg, &table))
        .collect::<Result<_>>()?;

    let mut rep = ExperimentReport::new("theorem");
    rep.param("x_grid", x_grid);
    rep.param("multiplier", cfg.multiplier);
    rep.param("delta", cfg.delta);
    rep.param("refine", cfg.refine);
    rep.rows = points
        .iter()
        .map(|p| {
            let xf = p.x as f64;
            let mut row = Row::new(Some(p.x), p.l1, xf.sqrt())
                .normalized(p.l1 / xf.sqrt())
                .extra("half_width", p.half_width)
                .extra("parseval_gap", p.parseval_gap)
                .extra("grid_size", p.grid_size as f64)
                .extra("gamma", p.gamma as f64)
                .extra("delta_sq_over_x", p.delta_sq / xf);
            if let Some(r) = p.refined_l1 {
                row = row.extra("refined_l1", r);
            }
            row
        })
        .collect();

    let parseval = points.iter().map(|p| p.parseval_gap).fold(0.0, f64::max);
    rep.check(Check::at_most("Parseval relative gap", parseval, PARSEVAL_TOL));
    if cfg.refine {
        let outside = points
            .iter()
            .filter(|p| p.refined_l1.is_some_and(|r| (r - p.l1).abs() > p.half_width))
            .count();
        rep.check(Check::none_of("refined L1 outside bracket", outside));
    }
    let l1: Vec<(f64, f64)> = points.iter().map(|p| (p.x as f64, p.l1)).collect();
    rep.fit = fit_of("L1 norm", &l1);
    if let Some(fit) = &rep.fit {
        rep.check(Check::within(
            "L1 exponent",
            fit.slope,
            EXPONENT_TARGET - EXPONENT_TOL,
            EXPONENT_TARGET + EXPONENT_TOL,
        ));
        let ratios: Vec<f64> = rep.rows.iter().map(|r| r.normalized).collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        rep.check(Check::at_most("L1/sqrt(x) max/min", hi / lo, RATIO_SPREAD_MAX));
    }
    let drift: Vec<(f64, f64)> = points.iter().map(|p| (p.x as f64, p.delta_sq / p.x as f64)).collect();
    if let Some((slope, _, _)) = fit_loglog(&drift) {
        rep.check(Check::at_most("mean square of S - S* drift", slope, TREND_MAX));
    }
    rep.finish()
}
