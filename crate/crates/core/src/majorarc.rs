//! Major-arc approximants.
//!
//! For a modulus `q` and cutoff `x`:
//!
//! ```text
//! f_q(t) = log(t/q²) + 2γ − 1        g_q(t) = d/dt {t f_q(t)} = f_q(t) + 1
//! I_q(β) = ∫₁ˣ e(βt) g_q(t) dt        S*(a/q + β) = I_q(β) / q
//! ```
//!
//! `γ` here is always the Euler–Mascheroni constant. The lower boundary
//! contribution at `t = 1` is kept exactly everywhere.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::farey::FareyArc;
use crate::quad;
use crate::special::oscillatory_log_integral;

/// Euler–Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// Below this value of `2π|β|x` the power series in `β` is used.
const SERIES_THRESHOLD: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcModel {
    q: u64,
    x: f64,
    log_q2: f64,
}

impl ArcModel {
    pub fn new(q: u64, x: f64) -> Result<Self> {
        if q == 0 {
            return invalid("modulus q must be positive");
        }
        if !(x.is_finite() && x >= 1.0) {
            return invalid(format!("cutoff x = {x} must be a finite number ≥ 1"));
        }
        Ok(Self {
            q,
            x,
            log_q2: 2.0 * (q as f64).ln(),
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn f(&self, t: f64) -> f64 {
        t.ln() - self.log_q2 + 2.0 * EULER_GAMMA - 1.0
    }

    #[inline]
    pub fn g(&self, t: f64) -> f64 {
        t.ln() - self.log_q2 + 2.0 * EULER_GAMMA
    }

    /// The zero of `g_q`, `q² e^{−2γ}`.
    pub fn sign_change_point(&self) -> f64 {
        (self.log_q2 - 2.0 * EULER_GAMMA).exp()
    }

    /// `I_q(0) = x f_q(x) − f_q(1)`.
    pub fn i_q_at_zero(&self) -> f64 {
        self.x * self.f(self.x) - self.f(1.0)
    }

    /// `I_q(β) = ∫₁ˣ e(βt) g_q(t) dt`.
    pub fn i_q(&self, beta: f64) -> Result<Complex64> {
        if !beta.is_finite() {
            return invalid(format!("beta = {beta} is not finite"));
        }
        if beta == 0.0 {
            return Ok(Complex64::new(self.i_q_at_zero(), 0.0));
        }
        let omega = 2.0 * PI * beta;
        if omega.abs() * self.x <= SERIES_THRESHOLD {
            return Ok(self.i_q_series(omega));
        }
        Ok(self.i_q_by_parts(beta, omega))
    }

    /// `Σ_k (iω)^k/k! ∫₁ˣ t^k g(t) dt`, using
    /// `∫ t^k g = t^{k+1}/(k+1)·(g(t) − 1/(k+1))`.
    fn i_q_series(&self, omega: f64) -> Complex64 {
        let (gx, g1) = (self.g(self.x), self.g(1.0));
        let step_x = Complex64::new(0.0, omega * self.x);
        let step_1 = Complex64::new(0.0, omega);
        let mut pow_x = Complex64::new(self.x, 0.0); // (iωx)^k x / k!
        let mut pow_1 = Complex64::new(1.0, 0.0); // (iω)^k / k!
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..80 {
            let kp1 = (k + 1) as f64;
            let term = (pow_x * (gx - 1.0 / kp1) - pow_1 * (g1 - 1.0 / kp1)) / kp1;
            total += term;
            if term.norm() <= 1e-18 * total.norm() {
                break;
            }
            pow_x *= step_x / kp1;
            pow_1 *= step_1 / kp1;
        }
        total
    }

    /// `[e(βt) g(t)/(iω)]₁ˣ − (1/iω) ∫₁ˣ e(βt)/t dt`, the last integral via Ci/Si.
    fn i_q_by_parts(&self, beta: f64, omega: f64) -> Complex64 {
        let i_omega = Complex64::new(0.0, omega);
        let e = |t: f64| {
            let theta = (beta * t).rem_euclid(1.0);
            Complex64::from_polar(1.0, 2.0 * PI * theta)
        };
        let boundary = (e(self.x) * self.g(self.x) - e(1.0) * self.g(1.0)) / i_omega;
        let w = omega.abs();
        let mut tail = oscillatory_log_integral(w, w * self.x);
        if omega < 0.0 {
            tail = tail.conj();
        }
        boundary - tail / i_omega
    }

    /// Slow reference value of `I_q(β)` by adaptive quadrature over
    /// quarter-period panels.
    pub fn i_q_quadrature(&self, beta: f64) -> Result<Complex64> {
        if !beta.is_finite() {
            return invalid(format!("beta = {beta} is not finite"));
        }
        let span = self.x - 1.0;
        let panels = ((4.0 * beta.abs() * span).ceil() as usize).max(8);
        let q = quad::integrate(
            |t| {
                let theta = (beta * t).rem_euclid(1.0);
                Complex64::from_polar(self.g(t), 2.0 * PI * theta)
            },
            1.0,
            self.x,
            panels,
            0.0,
            1e-14,
            panels * 64,
        );
        Ok(q.value)
    }

    /// `L(0) = ∫₁ˣ g_q(t)² dt`, via the antiderivative `t(u² − 2u + 2)`, `u = g_q(t)`.
    pub fn l0(&self) -> f64 {
        let anti = |t: f64| {
            let u = self.g(t);
            t * (u * u - 2.0 * u + 2.0)
        };
        anti(self.x) - anti(1.0)
    }

    /// `q² + log(x/q²)/|β|`.
    pub fn envelope_any_beta(&self, beta: f64) -> f64 {
        let q2 = (self.q * self.q) as f64;
        q2 + (self.x / q2).ln() / beta.abs()
    }

    /// `q² + log(x/q²)·x/(1 + |β|x)`.
    pub fn envelope_on_arc(&self, beta: f64) -> f64 {
        let q2 = (self.q * self.q) as f64;
        q2 + (self.x / q2).ln() * self.x / (1.0 + beta.abs() * self.x)
    }
}

/// `F(q) = (x/q)(log(x/q²) + 2γ − 1)`: the value of `S*` at `a/q` without
/// the `t = 1` boundary term.
pub fn big_f(q: u64, x: f64) -> Result<f64> {
    let m = ArcModel::new(q, x)?;
    Ok(x / q as f64 * m.f(x))
}

/// `S*(α) = I_q(β)/q` for `α` on the arc of `a/q`.
pub fn s_star(alpha: f64, arc: &FareyArc, x: f64) -> Result<Complex64> {
    let Some(t) = arc.unwrap_f64(alpha) else {
        return invalid(format!("alpha = {alpha} is not on the arc of {}/{}", arc.a, arc.q));
    };
    let beta = t - arc.a as f64 / arc.q as f64;
    let model = ArcModel::new(arc.q, x)?;
    Ok(model.i_q(beta)? / arc.q as f64)
}

pub fn l0(q: u64, x: f64) -> Result<f64> {
    Ok(ArcModel::new(q, x)?.l0())
}

#[derive(Clone, Copy, Debug)]
pub struct PlancherelCheck {
    /// `∫_{−B}^{B} |I_q(β)|² dβ`
    pub truncated: f64,
    pub l0: f64,
    /// `(L(0) − truncated) / L(0)`; zero when `L(0) = 0`.
    pub relative_gap: f64,
}

const MAX_PLANCHEREL_PANELS: usize = 1 << 22;

/// Compare `∫_{−B}^{B} |I_q(β)|² dβ` against `L(0)`.
pub fn plancherel_check(q: u64, x: f64, bound: f64) -> Result<PlancherelCheck> {
    if !(bound.is_finite() && bound > 0.0) {
        return invalid(format!("truncation bound {bound} must be positive"));
    }
    let model = ArcModel::new(q, x)?;
    let l0 = model.l0();
    if x == 1.0 {
        return Ok(PlancherelCheck {
            truncated: 0.0,
            l0,
            relative_gap: 0.0,
        });
    }
    // |I|² oscillates in β with period 1/(x − 1)
    let panels = (4.0 * bound * x).ceil().max(16.0);
    if panels > MAX_PLANCHEREL_PANELS as f64 {
        return invalid(format!(
            "truncation bound {bound} needs {panels:.0} panels at x = {x}; the limit is {MAX_PLANCHEREL_PANELS}"
        ));
    }
    let panels = panels as usize;
    let half = quad::integrate(
        |b| Complex64::new(model.i_q(b).map(|v| v.norm_sqr()).unwrap_or(f64::NAN), 0.0),
        0.0,
        bound,
        panels,
        0.0,
        1e-13,
        panels * 8,
    );
    let truncated = 2.0 * half.value.re;
    Ok(PlancherelCheck {
        truncated,
        l0,
        relative_gap: (l0 - truncated) / l0,
    })
}

/// CSV of `(β, |I_q(β)|)`.
pub fn write_profile_csv<W: Write>(model: &ArcModel, betas: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["beta", "abs_i"])?;
    for &b in betas {
        let v = model.i_q(b)?;
        w.write_record(&[b.to_string(), v.norm().to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::dissection;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn model_invariants() {
        for q in [1u64, 2, 7, 30] {
            let m = ArcModel::new(q, 1e4).unwrap();
            for t in [0.5, 1.0, 3.0, 1e3] {
                assert!((m.g(t) - m.f(t) - 1.0).abs() < 1e-14);
                let h = 1e-5 * t;
                let deriv = ((t + h) * m.f(t + h) - (t - h) * m.f(t - h)) / (2.0 * h);
                assert!((deriv - m.g(t)).abs() < 1e-8);
            }
            assert!(m.g(m.sign_change_point()).abs() < 1e-13);
        }
        assert!(ArcModel::new(0, 10.0).is_err());
        assert!(ArcModel::new(1, 0.5).is_err());
    }

    #[test]
    fn big_f_values() {
        let c = 2.0 * EULER_GAMMA - 1.0;
        assert!((big_f(1, 1.0).unwrap() - c).abs() < 1e-15);
        assert!((big_f(1, 1.0).unwrap() - 0.15443).abs() < 1e-5);
        assert!((big_f(30, 900.0).unwrap() - 30.0 * c).abs() < 1e-12);
        for x in [10.0, 1e3, 1e7] {
            assert!((big_f(1, x).unwrap() / x - x.ln() - c).abs() < 1e-12);
        }
    }

    #[test]
    fn i_q_at_zero_closed_form() {
        for x in [1.0, 2.0, 100.0, 1e5] {
            let m = ArcModel::new(1, x).unwrap();
            let expected = x * (x.ln() + 2.0 * EULER_GAMMA) - x - 2.0 * EULER_GAMMA + 1.0;
            assert!((m.i_q(0.0).unwrap().re - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
        assert_eq!(ArcModel::new(1, 1.0).unwrap().i_q(0.0).unwrap().norm(), 0.0);
        assert!(ArcModel::new(1, 10.0).unwrap().i_q(f64::NAN).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature_on_grid() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let q = rng.gen_range(1..=40u64);
            let x = 10f64.powf(rng.gen_range(1.0..4.0));
            let beta = 10f64.powf(rng.gen_range(-6.0..-0.3)) * if rng.gen() { 1.0 } else { -1.0 };
            let m = ArcModel::new(q, x).unwrap();
            let fast = m.i_q(beta).unwrap();
            let slow = m.i_q_quadrature(beta).unwrap();
            worst = worst.max(rel(fast, slow));
        }
        assert!(worst < 1e-8, "worst relative disagreement {worst}");
    }

    #[test]
    fn series_and_by_parts_agree_at_switch() {
        let m = ArcModel::new(3, 5e3).unwrap();
        let beta = SERIES_THRESHOLD / (2.0 * PI * m.x());
        let s = m.i_q_series(2.0 * PI * beta);
        let p = m.i_q_by_parts(beta, 2.0 * PI * beta);
        assert!(rel(s, p) < 1e-12, "{s} vs {p}");
    }

    #[test]
    fn l0_matches_quadrature() {
        for (q, x) in [(1u64, 3.2), (1, 100.0), (5, 1e4), (17, 3e3)] {
            let m = ArcModel::new(q, x).unwrap();
            let num = quad::integrate_real(|t| m.g(t).powi(2), 1.0, x, 16, 1e-15);
            assert!((m.l0() - num).abs() < 1e-10 * num.max(1.0), "q={q} x={x}");
            assert!(m.l0() >= 0.0);
        }
        assert_eq!(l0(3, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn growth_bound_any_beta() {
        let x = 1e4;
        let gamma = 100u64;
        let mut worst: f64 = 0.0;
        for q in [1u64, 2, 3, 5, 10, 31, 64, 100] {
            let m = ArcModel::new(q, x).unwrap();
            let lo = 1.0 / (q * gamma) as f64;
            for k in 0..=40 {
                let beta = lo * (0.5 / lo).powf(k as f64 / 40.0);
                let v = m.i_q(beta).unwrap().norm();
                worst = worst.max(v / m.envelope_any_beta(beta));
            }
        }
        assert!(worst <= 10.0, "measured constant {worst}");
    }

    #[test]
    fn s_star_bound_on_arcs() {
        let x = 1e4;
        let diss = dissection(100).unwrap();
        let mut worst: f64 = 0.0;
        for arc in diss.arcs().iter().step_by(37) {
            for k in 0..9 {
                let t = arc.left + (arc.right - arc.left) * num_rational::Ratio::new(k, 9);
                let alpha = num_traits::ToPrimitive::to_f64(&t).unwrap();
                let (_, beta) = diss.locate(alpha).unwrap();
                let m = ArcModel::new(arc.q, x).unwrap();
                let v = s_star(alpha, arc, x).unwrap().norm();
                worst = worst.max(v * arc.q as f64 / m.envelope_on_arc(beta));
            }
        }
        assert!(worst <= 10.0, "measured constant {worst}");
    }

    #[test]
    fn s_star_examples() {
        let x = 1e3;
        let diss = dissection(10).unwrap();
        let one = diss.arcs().last().unwrap();
        let v = s_star(1.0, one, x).unwrap();
        assert_eq!(v.im, 0.0);
        let m1 = ArcModel::new(1, x).unwrap();
        assert!((v.re - (x * m1.f(x) - m1.f(1.0))).abs() < 1e-12 * v.re);

        let arc = diss.arcs().iter().find(|a| (a.a, a.q) == (3, 7)).unwrap();
        let v = s_star(3.0 / 7.0, arc, x).unwrap();
        let m7 = ArcModel::new(7, x).unwrap();
        let exact = (x * m7.f(x) - m7.f(1.0)) / 7.0;
        assert!((v.re - exact).abs() < 1e-9 * exact.abs() && v.im.abs() < 1e-9 * exact.abs());
        // exact boundary term differs from F(q) by f_q(1)/q
        assert!((exact - big_f(7, x).unwrap() + m7.f(1.0) / 7.0).abs() < 1e-10);

        assert!(s_star(0.5, arc, x).is_err());
    }

    #[test]
    fn plancherel_identity() {
        let c = plancherel_check(1, 100.0, 50.0).unwrap();
        assert!(c.relative_gap.abs() <= 0.02, "{c:?}");
        assert!(c.relative_gap >= 0.0);

        let one = plancherel_check(4, 1.0, 10.0).unwrap();
        assert_eq!((one.truncated, one.l0), (0.0, 0.0));

        // the O(1/B) tail halves along a doubling ladder
        let gaps: Vec<f64> = [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|&b| plancherel_check(2, 60.0, b).unwrap().relative_gap)
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0], "{gaps:?}");
            assert!((w[0] / w[1] - 2.0).abs() < 0.6, "{gaps:?}");
        }
    }

    #[test]
    fn profile_csv() {
        let m = ArcModel::new(2, 50.0).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&m, &[0.0, 0.1], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("beta,abs_i\n0,"));
        assert_eq!(text.lines().count(), 3);
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(q in 1u64..50, x in 1.0f64..1e5, beta in 1e-7f64..0.5) {
            let m = ArcModel::new(q, x).unwrap();
            let p = m.i_q(beta).unwrap();
            let n = m.i_q(-beta).unwrap();
            prop_assert!((p.conj() - n).norm() <= 1e-12 * p.norm().max(1.0));
        }
    }
}
