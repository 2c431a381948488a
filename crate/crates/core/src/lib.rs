//! Computable objects behind the circle-method treatment of
//! `∫₀¹ |Σ_{n≤x} d(n) e(nα)| dα`.
//!
//! * [`arith`]: linear sieve for `d`, `φ`, `μ`, divisor-moment prefix sums,
//!   Ramanujan sums.
//! * [`farey`]: Farey fractions and the mediant dissection of the circle.
//! * [`expsum`]: direct and FFT evaluation of `S_x(α)` and its norms.
//! * [`majorarc`]: `f_q`, `g_q`, `F(q)`, the oscillatory integral `I_q(β)`,
//!   `S*(α)` and the `L(0)` Plancherel identity.
//! * [`apvar`]: divisor sums in arithmetic progressions, their main terms and
//!   the exact finite-Fourier identities relating them to `S_x(b/q)`.
//!
//! Throughout, `e(θ) = exp(2πiθ)`.

pub mod apvar;
pub mod arith;
pub mod error;
pub mod expsum;
pub mod farey;
pub mod majorarc;
pub mod quad;
pub mod special;
pub mod sum;

pub use error::{Error, Result};

pub use num_complex::Complex64;
