//! Exact arithmetic in Q(i)(q) and quantum combinatorics.

mod gauss;
mod laurent;
mod quantum;
mod ratfunc;

pub use gauss::GaussianRational;
pub use laurent::Laurent;
pub use quantum::{qbinom, qfact, qint};
pub use ratfunc::{ScalarQ, StructuredScalar};

use crate::error::Result;

/// Exact substitution `q = q0`; fails with a pole error when the
/// denominator vanishes there.
pub fn specialize(s: &ScalarQ, q0: &GaussianRational) -> Result<GaussianRational> {
    s.specialize(q0)
}
