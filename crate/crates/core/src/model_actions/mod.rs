//! Exact evaluators for the elementary actions `p`, `a₋`, `a₊`, `a_{T²}` and
//! the glued models `φ_{K,λ}` on the annulus, torus, disc and sphere.

mod actions;
mod gapset;
mod maps;
mod points;

pub use actions::{
    act_a_minus, act_a_plus, act_p, act_phi, act_phi_disc, act_phi_sphere, act_phi_torus, act_torus_diag,
    AnnulusAction, AnnulusModel, ConjugatedAction, TorusAction, TorusModel,
};
pub use gapset::{GapSet, Location, ModelDocument, ModelParams, Sign, SignAssignment};
pub use maps::{AnnulusMap, DiagonalChart, DiscMap, SphereMap, SurfaceMap, TorusMap};
pub use points::{AnnulusPoint, DiscPoint, SpherePoint, Surface, SurfacePoint, TorusPoint};

use thiserror::Error;

use crate::rational::Rational;

/// The chart `h(r, θ) = (θ, θ - r)` and its inverse.
pub fn diag_chart() -> DiagonalChart {
    DiagonalChart
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("K must have at least one block")]
    EmptyGapSet,
    #[error("K must contain 0: first block must start at 0")]
    FirstBlockNotAtZero,
    #[error("K must contain 1: last block must end at 1")]
    LastBlockNotAtOne,
    #[error("block {0} has a > b")]
    ReversedBlock(usize),
    #[error("block {0} and its successor must be separated by a nonempty gap")]
    EmptyGap(usize),
    #[error("sign assignment has {signs} entries but K has {gaps} gaps")]
    SignMismatch { gaps: usize, signs: usize },
    #[error("sign must be \"-1\" or \"+1\", got `{0}`")]
    BadSign(String),
    #[error("radius {0} outside [0, 1]")]
    RadiusOutOfRange(Rational),
    #[error("a {map} map cannot be evaluated at a {point} point")]
    SurfaceMismatch { map: Surface, point: Surface },
}
