//! Exact p-values for the two-sided two-sample Kolmogorov-Smirnov test.
//!
//! The production path computes `P2 = Prob[D >= d]` with a numerically
//! stable banded recurrence on the proportion of paths that leave the
//! corridor ([`stable::p2_stable`]); small tails come out directly rather
//! than as a catastrophic `1 - x` complement. Exact rational and
//! brute-force evaluators ([`exact`]) serve as ground truth, and
//! [`asymptotic`] provides the classical limiting tail for comparison.
//!
//! The statistic itself is kept as an integer fraction `c/(m*n)`
//! ([`statistic::KsStatistic`]) so corridor membership is decided by exact
//! integer comparison everywhere.

pub mod asymptotic;
pub mod corridor;
pub mod exact;
pub mod input;
pub mod report;
pub mod stable;
pub mod statistic;

pub use asymptotic::{scale_statistic, smirnov_tail, ScaledStatistic};
pub use corridor::CorridorSpec;
pub use exact::{brute_force_p2, p2_classical_exact, p2_classical_exact_with_cap, ExactP, OracleError};
pub use stable::{p2_stable, p2_stable_full, TableTooLarge};
pub use statistic::{compute_statistic, KsStatistic, Sample, StatisticError, StatisticOutcome, TiePolicy};
