//! The ten acceptance criteria, one PASS/FAIL line each. Exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use divl1_experiments::identities::IDENTITY_TOL;
use divl1_experiments::lemmas::{LEMMA1_EXPONENT_MAX, LEMMA2_NORMALIZED_MAX, TREND_MAX};
use divl1_experiments::theorem::{EXPONENT_TARGET, EXPONENT_TOL, PARSEVAL_TOL, RATIO_SPREAD_MAX};
use divl1_experiments::{
    farey_audit, run_identities, run_lemma1, run_lemma2, run_lemma3, run_theorem, ExperimentReport, IdentityConfig,
    QSweep, TheoremConfig, LEMMA_GRID, THEOREM_GRID, VARIANCE_GRID,
};
use divl1_symbolic::constants::numeric_constants;
use divl1_symbolic::residue::{lemma1_coefficients, lemma2_oracle_coefficients, DEFAULT_ORDER};
use divl1_symbolic::tables::{
    assemble_d_coeffs, audit_lemma2a_tables, compare, delta2_matching, published_c, published_d, Alphas,
};

const SYMBOLIC_BUDGET: Duration = Duration::from_secs(1);
const IDENTITY_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn check_value(rep: &ExperimentReport, name: &str) -> Option<(f64, bool)> {
    rep.find_check(name).map(|c| (c.value, c.pass))
}

fn symbolic_c() -> Outcome {
    match lemma1_coefficients(DEFAULT_ORDER) {
        Ok(c) => {
            let diff = compare(&c, &published_c());
            let listed = published_c().pairs.len();
            outcome(
                diff.is_empty() && listed == 6,
                format!("{listed} listed c(J,K), {} differ", diff.len()),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn symbolic_d() -> Outcome {
    let run = || -> divl1_symbolic::Result<Outcome> {
        let d = assemble_d_coeffs()?;
        let oracle = lemma2_oracle_coefficients(&Alphas::specialised(), DEFAULT_ORDER)?;
        let d_diff = compare(&d, &published_d()).len();
        let audit = audit_lemma2a_tables()?;
        for line in &audit {
            println!("    {line}");
        }
        Ok(outcome(
            d_diff == 0 && d == oracle && audit.is_empty(),
            format!(
                "d differs in {d_diff}, pipeline {} oracle, mu/gamma*/S/t mismatches {}",
                if d == oracle { "=" } else { "!=" },
                audit.len()
            ),
        ))
    };
    run().unwrap_or_else(|e| outcome(false, e.to_string()))
}

fn cancellation() -> Outcome {
    match delta2_matching() {
        Ok(rows) => {
            let listed: Vec<_> = rows.iter().filter(|r| r.listed).collect();
            let nonzero = listed.iter().filter(|r| !r.difference.is_zero()).count();
            outcome(
                nonzero == 0 && listed.len() == 6,
                format!("{} listed pairs, {nonzero} nonzero c - d/2^K", listed.len()),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn lemma1() -> Outcome {
    let k = numeric_constants(15).unwrap();
    match run_lemma1(&LEMMA_GRID, &k) {
        Ok(rep) => match &rep.fit {
            Some(f) => outcome(
                f.slope <= LEMMA1_EXPONENT_MAX,
                format!("residual exponent {:.4} (<= {LEMMA1_EXPONENT_MAX})", f.slope),
            ),
            None => outcome(false, "no fit"),
        },
        Err(e) => outcome(false, e.to_string()),
    }
}

fn lemma2() -> Outcome {
    let k = numeric_constants(15).unwrap();
    match run_lemma2(&LEMMA_GRID, 2.0, &k, 20_240_601) {
        Ok(rep) => {
            let slope = rep.fit.as_ref().map_or(f64::NAN, |f| f.slope);
            let worst = rep.rows.iter().map(|r| r.normalized).fold(0.0, f64::max);
            let values: Vec<String> = rep.rows.iter().map(|r| format!("{:.3e}", r.normalized)).collect();
            outcome(
                slope <= TREND_MAX && worst <= LEMMA2_NORMALIZED_MAX,
                format!("normalized [{}], trend {slope:.4} (<= {TREND_MAX})", values.join(", ")),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn lemma3() -> Outcome {
    match run_lemma3(&VARIANCE_GRID, &QSweep::default()) {
        Ok(rep) => {
            let slope = rep.fit.as_ref().map_or(f64::NAN, |f| f.slope);
            let negative = check_value(&rep, "negative variances").is_some_and(|c| c.1);
            outcome(
                slope <= TREND_MAX && negative,
                format!(
                    "max ratio per x {}, trend {slope:.4} (<= {TREND_MAX})",
                    rep.params["max_ratio"]
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn identities() -> Outcome {
    let cfg = IdentityConfig {
        farey_gamma_max: None,
        ..IdentityConfig::default()
    };
    match run_identities(&cfg) {
        Ok(rep) => {
            let dft = check_value(&rep, "DFT identity relative gap");
            let lz = check_value(&rep, "main-term forms relative gap");
            match (dft, lz) {
                (Some(d), Some(l)) => outcome(
                    d.0 <= IDENTITY_TOL && l.0 <= IDENTITY_TOL,
                    format!("DFT gap {:.2e}, main-term gap {:.2e} (<= {IDENTITY_TOL:e})", d.0, l.0),
                ),
                _ => outcome(false, "missing identity checks"),
            }
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn farey() -> Outcome {
    let mut bad = Vec::new();
    let mut arcs = 0;
    for g in 1..=500 {
        match farey_audit(g) {
            Ok(a) => {
                arcs += a.arcs;
                if !a.ok() {
                    bad.push(g);
                }
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{arcs} arcs over orders 1..=500, failing orders {bad:?}"),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome, Duration, Option<Duration>)> = Vec::new();
    let mut record = |n, title, f: &dyn Fn() -> Outcome, budget| {
        let (o, t) = timed(f);
        results.push((n, title, o, t, budget));
        let (n, title, o, t, budget) = results.last().unwrap();
        let in_time = budget.is_none_or(|b| *t <= b);
        let verdict = if o.pass && in_time { "PASS" } else { "FAIL" };
        let limit = budget.map(|b| format!(" of {:.0?}", b)).unwrap_or_default();
        println!("[{verdict}] {n:>2} {title} ({:.2?}{limit}): {}", t, o.detail);
    };

    record(
        1,
        "symbolic divisor-square coefficients",
        &symbolic_c,
        Some(SYMBOLIC_BUDGET),
    );
    record(
        2,
        "symbolic totient-sum coefficients and tables",
        &symbolic_d,
        Some(SYMBOLIC_BUDGET),
    );
    record(3, "Delta=2 cancellation", &cancellation, Some(SYMBOLIC_BUDGET));
    record(4, "divisor-square residual exponent", &lemma1, None);
    record(5, "totient-sum normalized residual", &lemma2, None);
    record(6, "progression variance trend", &lemma3, None);
    record(7, "exact identities", &identities, Some(IDENTITY_BUDGET));

    // criteria 8 and 9 share one sweep
    let (theorem, t) = timed_report(|| run_theorem(&THEOREM_GRID, &TheoremConfig::default()));
    let parseval = || match &theorem {
        Ok(rep) => match check_value(rep, "Parseval relative gap") {
            Some((v, _)) => outcome(
                v <= PARSEVAL_TOL,
                format!("max relative gap {v:.2e} (<= {PARSEVAL_TOL:e})"),
            ),
            None => outcome(false, "missing Parseval check"),
        },
        Err(e) => outcome(false, e.clone()),
    };
    let growth = || match &theorem {
        Ok(rep) => {
            let slope = rep.fit.as_ref().map_or(f64::NAN, |f| f.slope);
            let spread = check_value(rep, "L1/sqrt(x) max/min").map_or(f64::NAN, |c| c.0);
            let drift = check_value(rep, "mean square of S - S* drift").map_or(f64::NAN, |c| c.0);
            let bracket = check_value(rep, "refined L1 outside bracket").is_some_and(|c| c.1);
            let ok = (slope - EXPONENT_TARGET).abs() <= EXPONENT_TOL
                && spread <= RATIO_SPREAD_MAX
                && drift <= TREND_MAX
                && bracket;
            outcome(
                ok,
                format!(
                    "L1 exponent {slope:.4} ({EXPONENT_TARGET} +- {EXPONENT_TOL}), max/min {spread:.3} (<= {RATIO_SPREAD_MAX}), \
                     mean-square drift {drift:.4} (<= {TREND_MAX}), sweep {t:.1?}"
                ),
            )
        }
        Err(e) => outcome(false, e.clone()),
    };
    record(8, "Parseval on the L1 grid", &parseval, None);
    record(9, "L1 growth and major-arc mean square", &growth, None);
    record(10, "Farey partition", &farey, None);

    let failed: Vec<u32> = results
        .iter()
        .filter(|(_, _, o, t, b)| !o.pass || b.is_some_and(|b| *t > b))
        .map(|r| r.0)
        .collect();
    if failed.is_empty() {
        println!("all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

fn timed_report(
    f: impl FnOnce() -> divl1_experiments::Result<ExperimentReport>,
) -> (Result<ExperimentReport, String>, Duration) {
    let start = Instant::now();
    let r = f().map_err(|e| e.to_string());
    (r, start.elapsed())
}
