// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Largest entry of `Σ K†K − 1` exceeded the validation threshold.
    #[error("not trace preserving: max |ΣK†K − 1| = {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    /// The map fails complete positivity; the message names the violated condition.
    #[error("not completely positive: {0}")]
    NotCompletelyPositive(String),

    /// Two routes to the same quantity disagree. Signals a broken channel invariant.
    #[error("internal inconsistency: {what} differ by {difference:.3e}")]
    Inconsistent { what: &'static str, difference: f64 },

    #[error("matrix is not symmetric (max |A - Aᵀ| = {0:.3e})")]
    NotSymmetric(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(what: &str, values: impl IntoIterator<Item = f64>) -> Result<()> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} has non-finite entries")))
    }
}
