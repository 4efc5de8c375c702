//! Measurable quantities from the density analysis of greedy spanners:
//! closed-walk counts, walk meets, blockades, degree regularization and
//! size-versus-bound reports.
//!
//! All walk counting is exact over `u128` with overflow checks.

mod blockades;
mod degree;
mod density;
mod regularize;
mod walks;

pub use blockades::{build_blockades, default_phi, BlockadeLevel, BlockadeSet, Walk};
pub use degree::DegreeStats;
pub use density::{density_report, meet_bound_ratio, DensityReport};
pub use regularize::{default_c, regularize, CaseStep, RegularizeCase, Regularized};
pub use walks::{count_closed_walks, total_walks, walk_stats, walk_stats_with_closed, WalkStats};
