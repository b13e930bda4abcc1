use std::sync::Arc;

use crate::pl_core::CircleHomeo;

use super::gapset::{GapSet, ModelParams, SignAssignment};
use super::maps::{AnnulusMap, DiscMap, SphereMap, TorusMap};
use super::ModelError;

/// `p(f)`: `(r, θ) ↦ (r, f(θ))`.
pub fn act_p(f: &CircleHomeo) -> AnnulusMap {
    AnnulusMap::Product(f.clone())
}

/// `a₋(f)`: `(r, θ) ↦ (f̃(θ) - f̃(θ - r), f(θ))`.
pub fn act_a_minus(f: &CircleHomeo) -> AnnulusMap {
    AnnulusMap::AMinus(f.clone())
}

/// `a₊(f)`: `(r, θ) ↦ (f̃(θ + r) - f̃(θ), f(θ))`.
pub fn act_a_plus(f: &CircleHomeo) -> AnnulusMap {
    AnnulusMap::APlus(f.clone())
}

/// `a_{T²}(f)`: `(x, y) ↦ (f(x), f(y))`.
pub fn act_torus_diag(f: &CircleHomeo) -> TorusMap {
    TorusMap::Diagonal(f.clone())
}

/// `φ_{K,λ}(f)` on the annulus.
pub fn act_phi(gaps: &GapSet, signs: &SignAssignment, f: &CircleHomeo) -> Result<AnnulusMap, ModelError> {
    let params = Arc::new(ModelParams::new(gaps.clone(), signs.clone())?);
    Ok(AnnulusModel::Phi(params).image(f))
}

/// `φ^{T²}_{K,λ}(f)`: the annulus model with `r = 0` glued to `r = 1`.
pub fn act_phi_torus(gaps: &GapSet, signs: &SignAssignment, f: &CircleHomeo) -> Result<TorusMap, ModelError> {
    Ok(TorusMap::Glued(act_phi(gaps, signs, f)?))
}

/// `φ^{D²}_{K,λ}(f)`: the annulus model with `r = 0` collapsed to the cone point.
pub fn act_phi_disc(gaps: &GapSet, signs: &SignAssignment, f: &CircleHomeo) -> Result<DiscMap, ModelError> {
    Ok(DiscMap(act_phi(gaps, signs, f)?))
}

/// `φ^{S²}_{K,λ}(f)`: both boundary circles collapsed to poles.
pub fn act_phi_sphere(gaps: &GapSet, signs: &SignAssignment, f: &CircleHomeo) -> Result<SphereMap, ModelError> {
    Ok(SphereMap(act_phi(gaps, signs, f)?))
}

/// An action of the circle homeomorphism group on the annulus, given by the
/// image of each element as an exact map.
pub trait AnnulusAction: Send + Sync {
    fn image(&self, f: &CircleHomeo) -> AnnulusMap;
}

impl<A: AnnulusAction + ?Sized> AnnulusAction for &A {
    fn image(&self, f: &CircleHomeo) -> AnnulusMap {
        (**self).image(f)
    }
}

impl<A: AnnulusAction + ?Sized> AnnulusAction for Box<A> {
    fn image(&self, f: &CircleHomeo) -> AnnulusMap {
        (**self).image(f)
    }
}

/// The elementary and glued model actions on the annulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnulusModel {
    Product,
    AMinus,
    APlus,
    Phi(Arc<ModelParams>),
}

impl AnnulusModel {
    pub fn phi(params: ModelParams) -> Self {
        AnnulusModel::Phi(Arc::new(params))
    }
}

impl AnnulusAction for AnnulusModel {
    fn image(&self, f: &CircleHomeo) -> AnnulusMap {
        match self {
            AnnulusModel::Product => AnnulusMap::Product(f.clone()),
            AnnulusModel::AMinus => AnnulusMap::AMinus(f.clone()),
            AnnulusModel::APlus => AnnulusMap::APlus(f.clone()),
            AnnulusModel::Phi(params) => AnnulusMap::Phi {
                params: Arc::clone(params),
                f: f.clone(),
            },
        }
    }
}

/// `f ↦ g ∘ inner(f) ∘ g⁻¹`.
#[derive(Clone, Debug)]
pub struct ConjugatedAction<A> {
    conjugator: AnnulusMap,
    conjugator_inverse: AnnulusMap,
    inner: A,
}

impl<A: AnnulusAction> ConjugatedAction<A> {
    pub fn new(conjugator: AnnulusMap, inner: A) -> Self {
        let conjugator_inverse = conjugator.inverse();
        ConjugatedAction {
            conjugator,
            conjugator_inverse,
            inner,
        }
    }

    pub fn conjugator(&self) -> &AnnulusMap {
        &self.conjugator
    }
}

impl<A: AnnulusAction> AnnulusAction for ConjugatedAction<A> {
    fn image(&self, f: &CircleHomeo) -> AnnulusMap {
        AnnulusMap::compose(
            self.conjugator.clone(),
            AnnulusMap::compose(self.inner.image(f), self.conjugator_inverse.clone()),
        )
    }
}

/// An action on the torus given by exact images.
pub trait TorusAction: Send + Sync {
    fn image(&self, f: &CircleHomeo) -> TorusMap;
}

/// Model actions on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusModel {
    /// `a_{T²}`.
    Diagonal,
    /// `φ^{T²}_{K,λ}`.
    Glued(Arc<ModelParams>),
}

impl TorusAction for TorusModel {
    fn image(&self, f: &CircleHomeo) -> TorusMap {
        match self {
            TorusModel::Diagonal => TorusMap::Diagonal(f.clone()),
            TorusModel::Glued(params) => TorusMap::Glued(AnnulusMap::Phi {
                params: Arc::clone(params),
                f: f.clone(),
            }),
        }
    }
}
