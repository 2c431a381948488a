//! Exact series arithmetic for the mean-square coefficients.
//!
//! * [`poly`]: multivariate polynomials with rational coefficients over the
//!   formal constants `a₁, a₂, a₃`, `𝓕⁽ᴷ⁾(1)`, `𝓖⁽ᴷ⁾(1)`, `1/Δ`, `L = log x`.
//! * [`series`]: truncated Laurent series in `s − 1`.
//! * [`residue`]: residues at `s = 1` for `Σ d(n)²` and the totient-weighted
//!   major-arc sum, plus closed-form cross-checks.
//! * [`tables`]: the `c_{J,K}`, `d_{J,K}`, `S`, `μ`, `γ*`, `t` tables and the
//!   `Δ = 2` comparison.
//! * [`constants`]: numeric values of the formal constants.
//! * [`moments`]: `∫₁ˣ (log t)^n dt` and `Σ_{q≤γ} φ(q)(−log q)^Q/q²`.

pub mod constants;
pub mod error;
pub mod moments;
pub mod poly;
pub mod residue;
pub mod series;
pub mod tables;

pub use error::{Result, SymbolicError};
pub use poly::{SymPoly, Symbol};
pub use series::LaurentSeries;
pub use tables::CoeffTable;
