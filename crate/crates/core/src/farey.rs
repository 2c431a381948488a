//! Farey fractions of order `γ` and the mediant dissection of the circle.
//!
//! Every reduced `a/q` with `1 ≤ a ≤ q ≤ γ` owns the arc between the mediants
//! with its two circular Farey neighbours. The arcs tile `[1/(γ+1), 1 + 1/(γ+1))`
//! exactly; each is treated as half-open `[left, right)` so that every point of
//! the circle has exactly one owner.

use std::io::Write;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{invalid, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyArc {
    pub a: u64,
    pub q: u64,
    pub left: Rational,
    pub right: Rational,
    /// Denominator `q′` of the left neighbour; `a·q′ ≡ 1 (mod q)`.
    pub inv_left: u64,
    /// Denominator `q″` of the right neighbour; `a·q″ ≡ −1 (mod q)`.
    pub inv_right: u64,
}

impl FareyArc {
    pub fn center(&self) -> Rational {
        Rational::new(self.a as i64, self.q as i64)
    }

    pub fn length(&self) -> Rational {
        self.right - self.left
    }

    /// Representative of `alpha (mod 1)` inside `[left, right)`, if any.
    pub fn unwrap_exact(&self, alpha: Rational) -> Option<Rational> {
        let shift = (alpha - self.left).floor();
        let t = alpha - shift;
        (t < self.right).then_some(t)
    }

    pub fn unwrap_f64(&self, alpha: f64) -> Option<f64> {
        let left = self.left.to_f64()?;
        let right = self.right.to_f64()?;
        let t = alpha - (alpha - left).floor();
        (t >= left && t < right).then_some(t)
    }
}

/// Reduced fractions `a/q`, `1 ≤ a ≤ q ≤ gamma`, ascending.
pub fn farey_fractions(gamma: u64) -> Result<Vec<(u64, u64)>> {
    if gamma == 0 {
        return invalid("Farey order must be at least 1");
    }
    // next-term recurrence starting from 0/1, 1/gamma
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, gamma);
    let mut out = Vec::new();
    while c <= gamma {
        let k = (gamma + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
        out.push((a, b));
        if a == b {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Dissection {
    gamma: u64,
    arcs: Vec<FareyArc>,
    lefts: Vec<f64>,
}

/// The Farey dissection of order `gamma`, arcs sorted by centre.
pub fn dissection(gamma: u64) -> Result<Dissection> {
    let fractions = farey_fractions(gamma)?;
    let n = fractions.len();
    let g = gamma as i64;
    let mut arcs = Vec::with_capacity(n);
    for (i, &(a, q)) in fractions.iter().enumerate() {
        // circular neighbours: 0/1 before the first fraction, 1 + 1/γ after 1/1
        let (la, lq) = if i == 0 { (0, 1) } else { fractions[i - 1] };
        let (ra, rq) = if i + 1 == n {
            (gamma as i64 + 1, g)
        } else {
            let (ra, rq) = fractions[i + 1];
            (ra as i64, rq as i64)
        };
        let (a_, q_) = (a as i64, q as i64);
        arcs.push(FareyArc {
            a,
            q,
            left: Rational::new(la as i64 + a_, lq as i64 + q_),
            right: Rational::new(a_ + ra, q_ + rq),
            inv_left: lq,
            inv_right: rq as u64,
        });
    }
    let lefts = arcs.iter().map(|arc| arc.left.to_f64().unwrap()).collect();
    Ok(Dissection { gamma, arcs, lefts })
}

impl Dissection {
    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn arcs(&self) -> &[FareyArc] {
        &self.arcs
    }

    /// Left end of the fundamental window `[start, start + 1)` covered by the arcs.
    pub fn start(&self) -> Rational {
        self.arcs[0].left
    }

    /// Arc owning `alpha (mod 1)` and `β = α′ − a/q`, where `α′ ≡ α` is the
    /// representative inside that arc.
    pub fn locate(&self, alpha: f64) -> Result<(&FareyArc, f64)> {
        if !alpha.is_finite() {
            return invalid(format!("cannot locate non-finite alpha {alpha}"));
        }
        let start = self.lefts[0];
        let t = alpha - (alpha - start).floor();
        let idx = self.lefts.partition_point(|&l| l <= t).max(1) - 1;
        let arc = &self.arcs[idx];
        Ok((arc, t - arc.a as f64 / arc.q as f64))
    }

    /// Exact variant of [`Dissection::locate`].
    pub fn locate_exact(&self, alpha: Rational) -> (&FareyArc, Rational) {
        let start = self.start();
        let t = alpha - (alpha - start).floor();
        let idx = self.arcs.partition_point(|arc| arc.left <= t).max(1) - 1;
        let arc = &self.arcs[idx];
        (arc, t - arc.center())
    }

    /// CSV with columns `q, a, left_num, left_den, right_num, right_den`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["q", "a", "left_num", "left_den", "right_num", "right_den"])?;
        for arc in &self.arcs {
            w.write_record(&[
                arc.q.to_string(),
                arc.a.to_string(),
                arc.left.numer().to_string(),
                arc.left.denom().to_string(),
                arc.right.numer().to_string(),
                arc.right.denom().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `a·k ≡ target (mod q)`, with everything reduced mod `q`.
pub fn congruent_mod(a: u64, k: u64, target: i64, q: u64) -> bool {
    let lhs = ((a as u128 * k as u128) % q as u128) as i64;
    lhs == target.mod_floor(&(q as i64))
}
