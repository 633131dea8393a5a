//! Special-function kernel: gamma, exponential integral, Kummer and Tricomi
//! confluent hypergeometric functions, generalized Laguerre polynomials.
//!
//! Real arguments only. Series are summed under a [`SeriesControl`] policy.

mod expint;
mod gamma;
mod kummer;
mod laguerre;

pub use expint::{expint_e1, expint_ei, expint_ei_with, EULER_GAMMA};
pub use gamma::{gamma, ln_gamma_abs, rgamma};
pub use kummer::{
    kummer_logderiv, kummer_logderiv_with, kummer_m, kummer_m_deriv, kummer_m_with, tricomi_psi,
    tricomi_psi_deriv, tricomi_psi_with, KummerSum,
};
pub use laguerre::{laguerre, laguerre_monomial};

use crate::Scalar;

/// Truncation policy for the power series in this module and in the
/// integration-constant series of the momentum solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl<T> {
    /// Stop once this many consecutive terms fall below `rel_tol * |sum|`.
    pub rel_tol: T,
    /// Hard cap on the number of terms.
    pub max_terms: usize,
    /// Largest Kummer argument accepted.
    pub z_max: T,
}

impl<T: Scalar> Default for SeriesControl<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::epsilon().min(T::c(1e-8)),
            max_terms: 1000,
            z_max: T::c(50.0),
        }
    }
}

/// Number of consecutive negligible terms that ends a series.
pub(crate) const QUIET_TERMS: usize = 3;

/// Running sum with the consecutive-small-terms stopping rule.
pub(crate) struct SeriesSum<T> {
    pub sum: T,
    pub abs_sum: T,
    quiet: usize,
}

impl<T: Scalar> SeriesSum<T> {
    pub fn new(first: T) -> Self {
        Self { sum: first, abs_sum: first.abs(), quiet: 0 }
    }

    /// Adds a term; returns true once the series may stop.
    pub fn push(&mut self, term: T, rel_tol: T) -> bool {
        self.sum = self.sum + term;
        self.abs_sum = self.abs_sum + term.abs();
        if term.abs() < rel_tol * self.sum.abs() || term == T::zero() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= QUIET_TERMS
    }
}
