use crate::model_actions::{diag_chart, AnnulusAction, AnnulusMap, AnnulusPoint, TorusAction, TorusModel, TorusPoint};
use crate::pl_core::{CircleHomeo, LineHomeo, PlFunction};
use crate::rational::Rational;

/// Exact black-box access to an action on the annulus.
pub trait ActionOracle: Send + Sync {
    fn apply(&self, f: &CircleHomeo, p: &AnnulusPoint) -> AnnulusPoint;

    /// Radial profile of `f` along the fiber `θ₀`, when the oracle can expose
    /// it. Enables exact fixed-set computation.
    fn fiber_profile(&self, _f: &CircleHomeo, _theta0: &Rational) -> Option<PlFunction> {
        None
    }
}

impl<A: AnnulusAction + ?Sized> ActionOracle for A {
    fn apply(&self, f: &CircleHomeo, p: &AnnulusPoint) -> AnnulusPoint {
        self.image(f).eval(p)
    }

    fn fiber_profile(&self, f: &CircleHomeo, theta0: &Rational) -> Option<PlFunction> {
        self.image(f).fiber_profile(theta0)
    }
}

/// Hides everything but pointwise queries.
#[derive(Clone, Debug)]
pub struct Opaque<O>(pub O);

impl<O: ActionOracle> ActionOracle for Opaque<O> {
    fn apply(&self, f: &CircleHomeo, p: &AnnulusPoint) -> AnnulusPoint {
        self.0.apply(f, p)
    }
}

/// An oracle given by a closure.
pub struct FnOracle<F>(pub F);

impl<F> ActionOracle for FnOracle<F>
where
    F: Fn(&CircleHomeo, &AnnulusPoint) -> AnnulusPoint + Send + Sync,
{
    fn apply(&self, f: &CircleHomeo, p: &AnnulusPoint) -> AnnulusPoint {
        (self.0)(f, p)
    }
}

/// How the torus is cut open into an annulus along the circle to recover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutChart {
    /// `(r, θ) ↦ (r mod 1, θ)`.
    Glued,
    /// `(r, θ) ↦ (θ, θ - r)`.
    Diagonal,
}

impl CutChart {
    pub fn to_torus(self, p: &AnnulusPoint) -> TorusPoint {
        match self {
            CutChart::Glued => TorusPoint::new(p.r.clone(), p.theta.clone()),
            CutChart::Diagonal => diag_chart().forward(p),
        }
    }
}

/// Exact black-box access to an action on the torus together with the chart
/// cutting it open.
pub trait TorusOracle: Send + Sync {
    fn apply(&self, f: &CircleHomeo, p: &TorusPoint) -> TorusPoint;

    fn chart(&self) -> CutChart {
        CutChart::Glued
    }

    /// Radial profile along the fiber `θ₀` of the cut annulus.
    fn cut_profile(&self, _f: &CircleHomeo, _theta0: &Rational) -> Option<PlFunction> {
        None
    }
}

impl TorusOracle for TorusModel {
    fn apply(&self, f: &CircleHomeo, p: &TorusPoint) -> TorusPoint {
        self.image(f).eval(p)
    }

    fn chart(&self) -> CutChart {
        match self {
            TorusModel::Diagonal => CutChart::Diagonal,
            TorusModel::Glued(_) => CutChart::Glued,
        }
    }

    fn cut_profile(&self, f: &CircleHomeo, theta0: &Rational) -> Option<PlFunction> {
        match self {
            TorusModel::Diagonal => AnnulusMap::AMinus(f.clone()).fiber_profile(theta0),
            TorusModel::Glued(params) => AnnulusMap::Phi {
                params: params.clone(),
                f: f.clone(),
            }
            .fiber_profile(theta0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OpaqueTorus<O>(pub O);

impl<O: TorusOracle> TorusOracle for OpaqueTorus<O> {
    fn apply(&self, f: &CircleHomeo, p: &TorusPoint) -> TorusPoint {
        self.0.apply(f, p)
    }

    fn chart(&self) -> CutChart {
        self.0.chart()
    }
}

/// Exact black-box access to an action on the line.
pub trait LineActionOracle: Send + Sync {
    fn apply(&self, f: &LineHomeo, x: &Rational) -> Rational;

    /// The image of `f` as an explicit map, when available.
    fn image(&self, _f: &LineHomeo) -> Option<LineHomeo> {
        None
    }
}

/// `ψ(f) = f` or `ψ(f) = h ∘ f ∘ h⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineModel {
    Inclusion,
    Conjugation(LineHomeo),
}

impl LineActionOracle for LineModel {
    fn apply(&self, f: &LineHomeo, x: &Rational) -> Rational {
        match self {
            LineModel::Inclusion => f.eval(x),
            LineModel::Conjugation(h) => h.eval(&f.eval(&h.eval_inverse(x))),
        }
    }

    fn image(&self, f: &LineHomeo) -> Option<LineHomeo> {
        Some(match self {
            LineModel::Inclusion => f.clone(),
            LineModel::Conjugation(h) => f.conjugate_by(h),
        })
    }
}

#[derive(Clone, Debug)]
pub struct OpaqueLine<O>(pub O);

impl<O: LineActionOracle> LineActionOracle for OpaqueLine<O> {
    fn apply(&self, f: &LineHomeo, x: &Rational) -> Rational {
        self.0.apply(f, x)
    }
}
