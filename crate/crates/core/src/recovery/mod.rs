//! Inverse problems for black-box actions: recovering `K`, the gap signs, the
//! invariant circle of a torus action and the conjugacy of a line action.

mod annulus;
mod enclosure;
mod line;
mod oracle;
mod torus;

pub use annulus::{
    detect_sign, fiber_fixed_set, recover_annulus, recover_gapset, recover_signs, AnnulusRecovery, FixedFiberSet,
    GapRecovery, GapRecoveryDocument, RecoveryDocument, DEFAULT_BUDGET,
};
pub use enclosure::Enclosure;
pub use line::{default_shrink_schedule, recover_line_conjugacy, LinePoint};
pub use oracle::{ActionOracle, CutChart, FnOracle, LineActionOracle, LineModel, Opaque, OpaqueLine, OpaqueTorus, TorusOracle};
pub use torus::recover_torus_circle;

use thiserror::Error;

use crate::model_actions::ModelError;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("generator {index} does not fix a neighbourhood of θ₀ = {theta0}")]
    GeneratorNotInStabilizer { index: usize, theta0: Rational },
    #[error("no generators given")]
    NoGenerators,
    #[error("generator budget must be at least 1")]
    ZeroBudget,
    #[error("gap index {index} out of range: K has {gaps} gaps")]
    BadGap { index: usize, gaps: usize },
    #[error("endpoints of gap {gap} are not fixed on the θ₀ fiber")]
    EndpointMoved { gap: usize },
    #[error("zero displacement at every probe in gap {gap}: not a model action there")]
    Inconclusive { gap: usize },
    #[error("the sampled stabilizer has no fixed point on the cut fiber")]
    EmptyFixedSet,
    #[error("recovered fixed set is not a valid K: {0}")]
    NotModel(#[from] ModelError),
    #[error("the glued circle r = 0 ≡ 1 is not fixed")]
    GluedPointMoved,
    #[error("shrink schedule must be nonempty")]
    EmptySchedule,
    #[error("shrink schedule must be positive and strictly decreasing")]
    BadSchedule,
    #[error("no unique bounded fixed component near x = {x} at ε = {epsilon}")]
    NoBoundedComponent { x: Rational, epsilon: Rational },
    #[error("fixed interval near x = {x} does not shrink at ε = {epsilon}")]
    NoShrink { x: Rational, epsilon: Rational },
}

impl RecoveryError {
    /// Whether the error signals a recovery failure rather than bad input.
    pub fn is_recovery_failure(&self) -> bool {
        matches!(
            self,
            RecoveryError::Inconclusive { .. }
                | RecoveryError::NoShrink { .. }
                | RecoveryError::NoBoundedComponent { .. }
                | RecoveryError::EmptyFixedSet
                | RecoveryError::NotModel(_)
                | RecoveryError::GluedPointMoved
                | RecoveryError::EndpointMoved { .. }
        )
    }
}
