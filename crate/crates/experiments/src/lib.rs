//! Numerical experiments for the `L¹` norm of `S(α) = Σ_{n≤x} d(n)e(nα)`.
//!
//! Each `run_*` returns an [`ExperimentReport`] whose `pass` flag is the
//! conjunction of its checks.

pub mod error;
pub mod grid;
pub mod identities;
pub mod lemmas;
pub mod report;
pub mod theorem;

pub use error::{ExperimentError, Result};
pub use grid::parse_x_grid;
pub use identities::{farey_audit, run_identities, run_tables, FareyAudit, IdentityConfig};
pub use lemmas::{run_lemma1, run_lemma2, run_lemma3, QSweep};
pub use report::{Check, ExperimentReport, Fit, Row};
pub use theorem::{run_theorem, TheoremConfig};

/// Default grid for the divisor-square and `∫g_q²` experiments.
pub const LEMMA_GRID: [u64; 4] = [10_000, 100_000, 1_000_000, 10_000_000];
/// Default grid for the variance sweep.
pub const VARIANCE_GRID: [u64; 3] = [10_000, 100_000, 1_000_000];
/// `2^10 … 2^18`.
pub const THEOREM_GRID: [u64; 9] = [
    1 << 10,
    1 << 11,
    1 << 12,
    1 << 13,
    1 << 14,
    1 << 15,
    1 << 16,
    1 << 17,
    1 << 18,
];
