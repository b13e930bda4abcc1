use crate::rational::Rational;

use super::plfn::PlFunction;
use super::PlError;

/// A strictly monotone PL homeomorphism of `[0, 1]`, increasing or decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalHomeo {
    graph: PlFunction,
}

impl IntervalHomeo {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        let graph = PlFunction::new(points)?;
        let (lo, hi) = graph.domain();
        if !lo.is_zero() || hi != &Rational::one() {
            return Err(PlError::OutOfRange);
        }
        if !(graph.is_strictly_increasing() || graph.is_strictly_decreasing()) {
            return Err(PlError::NonMonotone);
        }
        let pts = graph.points();
        let ends = (&pts[0].1, &pts[pts.len() - 1].1);
        let (zero, one) = (Rational::zero(), Rational::one());
        if ends != (&zero, &one) && ends != (&one, &zero) {
            return Err(PlError::OutOfRange);
        }
        Ok(IntervalHomeo { graph })
    }

    pub fn identity() -> Self {
        IntervalHomeo {
            graph: PlFunction::identity_on(Rational::zero(), Rational::one()),
        }
    }

    /// `r ↦ 1 - r`.
    pub fn reflection() -> Self {
        IntervalHomeo::new(vec![(Rational::zero(), Rational::one()), (Rational::one(), Rational::zero())])
            .expect("reflection is valid")
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        self.graph.points()
    }

    pub fn as_function(&self) -> &PlFunction {
        &self.graph
    }

    pub fn is_increasing(&self) -> bool {
        self.graph.is_strictly_increasing()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Panics outside `[0, 1]`.
    pub fn eval(&self, r: &Rational) -> Rational {
        self.graph.eval(r).expect("argument in [0, 1]")
    }

    pub fn inverse(&self) -> IntervalHomeo {
        IntervalHomeo {
            graph: self.graph.inverse().expect("monotone"),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IntervalHomeo) -> IntervalHomeo {
        IntervalHomeo {
            graph: self.graph.compose(&inner.graph).expect("[0,1] maps into [0,1]"),
        }
    }
}
