//! Independent numerical oracles: finite differences, quadrature, root
//! finding, and the residual campaigns built on them.

pub mod fd;
pub mod harness;
pub mod quad;
pub mod report;
pub mod roots;
pub mod suites;

pub use report::{ResidualAccumulator, StepSweep, VerificationReport, MAX_SKIPPED_FRACTION};
pub use suites::{run_suite, SUITES};
