//! Exact piecewise-linear homeomorphisms of the circle and the line.

mod bump;
mod circle;
mod interval;
mod line;
mod plfn;

pub use bump::{bump_family, line_bump};
pub use circle::{CircleHomeo, MapDocument};
pub use interval::IntervalHomeo;
pub use line::{Bound, FixedIntervalSet, Interval, LineHomeo};
pub use plfn::{ClosedInterval, PlFunction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("no breakpoints given")]
    Empty,
    #[error("breakpoint x-coordinates must be strictly increasing")]
    Unsorted,
    #[error("map is not strictly increasing (some piece has slope <= 0)")]
    NonMonotone,
    #[error("breakpoint x-coordinate outside [0, 1)")]
    OutOfRange,
    #[error("first and last breakpoints must lie on the diagonal")]
    NotCompactlySupported,
    #[error("bump radius must lie in (0, 1/2)")]
    BadRadius,
    #[error("bump count must be at least 1")]
    BadCount,
}

/// Builds a circle homeomorphism from lift breakpoints.
pub fn make_circle_homeo(breakpoints: &[(crate::Rational, crate::Rational)]) -> Result<CircleHomeo, PlError> {
    CircleHomeo::new(breakpoints)
}

/// Exact fixed-point set of a compactly supported line homeomorphism.
pub fn fixed_set(f: &LineHomeo) -> FixedIntervalSet {
    f.fixed_set()
}
