//! Pushforward of quadratic differentials under rational maps.
//!
//! For `g = P/Q` of degree `d` the pushforward of `q(z) dz^2` is
//! `sum q(w) / g'(w)^2` over the `d` preimages `w` of `z`. The sum is
//! computed exactly through residues at the poles of `q / g'^2`, so a
//! vanishing pushforward comes out as an exact zero.

mod basis;
mod cauchy;
mod laurent;
pub mod numeric;
mod operator;
mod rank;
mod realize;

pub use basis::{expand_in_basis, qd_basis, QuadraticDifferential};
pub use cauchy::{cauchy_closed_form, cauchy_like_det, cauchy_matrix, CauchyReport};
pub use laurent::laurent_local_pushforward;
pub use numeric::{asymptotic_constant, AsymptoticReport};
pub use operator::{critical_value_poly, pushforward};
pub use rank::{coderivative_matrix, coderivative_rank, CoderivativeMatrix};
pub use realize::{check_admissible, critical_points_poly, local_degree_at_infinity, portrait_of_map};

use crate::ratfield::{ArithError, Field};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PushError {
    #[error("need at least four marked points, got {0}")]
    TooFewPoints(usize),
    #[error("marked point listed twice: {0}")]
    DuplicatePoint(String),
    #[error("the map is constant")]
    ConstantMap,
    #[error("map and differential live in unrelated fields")]
    FieldMismatch,
    #[error("inversion failed inside the trace computation: {0}")]
    InternalNonInvertible(ArithError),
    #[error("not an integrable quadratic differential: {0}")]
    NotIntegrable(String),
    #[error("admissibility violated: {0}")]
    AdmissibilityViolated(String),
    #[error("pushforward has a pole outside the images of poles and critical values")]
    PostCheckFailed,
    #[error("not a simple critical point: {0}")]
    NotSimpleCritical(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

impl From<ArithError> for PushError {
    fn from(e: ArithError) -> PushError {
        PushError::InternalNonInvertible(e)
    }
}

/// The larger of two fields on a common tower.
pub(crate) fn common_field(a: &Field, b: &Field) -> Result<Field, PushError> {
    if a.contains_field(b) {
        Ok(a.clone())
    } else if b.contains_field(a) {
        Ok(b.clone())
    } else {
        Err(PushError::FieldMismatch)
    }
}
