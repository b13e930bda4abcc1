use std::collections::BTreeMap;
use std::sync::Arc;

use crate::pl_core::{CircleHomeo, IntervalHomeo, PlFunction};
use crate::rational::Rational;

use super::gapset::{Location, ModelParams, Sign};
use super::points::{AnnulusPoint, DiscPoint, SpherePoint, Surface, SurfacePoint, TorusPoint};
use super::ModelError;

/// Radial coordinate produced by the renormalized `a₋`/`a₊` formula on the
/// gap `(lo, hi)`.
pub(crate) fn gap_radius(f: &CircleHomeo, lo: &Rational, hi: &Rational, sign: Sign, r: &Rational, theta: &Rational) -> Rational {
    gap_radius_at(f, lo, hi, sign, r, theta, &f.eval_lift(theta))
}

/// [`gap_radius`] with `f̃(θ)` already known.
fn gap_radius_at(
    f: &CircleHomeo,
    lo: &Rational,
    hi: &Rational,
    sign: Sign,
    r: &Rational,
    theta: &Rational,
    lift: &Rational,
) -> Rational {
    let width = hi - lo;
    let s = &(r - lo) / &width;
    let spread = match sign {
        Sign::Minus => lift - &f.eval_lift(&(theta - &s)),
        Sign::Plus => &f.eval_lift(&(theta + &s)) - lift,
    };
    lo + &(&width * &spread)
}

/// A homeomorphism of the closed annulus, kept as a composition tree of
/// primitive evaluators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnulusMap {
    Identity,
    /// `(r, θ) ↦ (r, f(θ))`.
    Product(CircleHomeo),
    /// `(r, θ) ↦ (f̃(θ) - f̃(θ - r), f(θ))`.
    AMinus(CircleHomeo),
    /// `(r, θ) ↦ (f̃(θ + r) - f̃(θ), f(θ))`.
    APlus(CircleHomeo),
    /// Product action on the fibers over `K`, renormalized `a∓` on each gap.
    Phi { params: Arc<ModelParams>, f: CircleHomeo },
    /// `(r, θ) ↦ (h(r), θ)`.
    Radial(IntervalHomeo),
    /// `(r, θ) ↦ (r, θ + turns·(r - lo)/(hi - lo))` for `r ∈ (lo, hi)`, identity elsewhere.
    Twist { lo: Rational, hi: Rational, turns: i64 },
    /// `(r, θ) ↦ (r, θ + k·r)`.
    Shear(i64),
    /// `(r, θ) ↦ (1 - r, θ)`.
    Flip,
    /// `outer ∘ inner`.
    Compose(Box<AnnulusMap>, Box<AnnulusMap>),
}

impl AnnulusMap {
    /// `outer ∘ inner`, dropping identities.
    pub fn compose(outer: AnnulusMap, inner: AnnulusMap) -> AnnulusMap {
        match (outer, inner) {
            (AnnulusMap::Identity, m) | (m, AnnulusMap::Identity) => m,
            (o, i) => AnnulusMap::Compose(Box::new(o), Box::new(i)),
        }
    }

    /// `outer ∘ self`.
    pub fn then(self, outer: AnnulusMap) -> AnnulusMap {
        AnnulusMap::compose(outer, self)
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugated_by(self, g: &AnnulusMap) -> AnnulusMap {
        AnnulusMap::compose(g.clone(), AnnulusMap::compose(self, g.inverse()))
    }

    pub fn eval(&self, p: &AnnulusPoint) -> AnnulusPoint {
        match self {
            AnnulusMap::Identity => p.clone(),
            AnnulusMap::Product(f) => AnnulusPoint::raw(p.r.clone(), f.eval(&p.theta)),
            AnnulusMap::AMinus(f) => {
                let r = &f.eval_lift(&p.theta) - &f.eval_lift(&(&p.theta - &p.r));
                AnnulusPoint::raw(r, f.eval(&p.theta))
            }
            AnnulusMap::APlus(f) => {
                let r = &f.eval_lift(&(&p.theta + &p.r)) - &f.eval_lift(&p.theta);
                AnnulusPoint::raw(r, f.eval(&p.theta))
            }
            AnnulusMap::Phi { params, f } => {
                let k = params.gaps();
                let lift = f.eval_lift(&p.theta);
                let r = match k.locate(&p.r) {
                    Location::Block(_) => p.r.clone(),
                    Location::Gap(j) => {
                        let (lo, hi) = k.gap(j).unwrap();
                        gap_radius_at(f, lo, hi, params.signs().get(j), &p.r, &p.theta, &lift)
                    }
                };
                AnnulusPoint::raw(r, lift.fract())
            }
            AnnulusMap::Radial(h) => AnnulusPoint::raw(h.eval(&p.r), p.theta.clone()),
            AnnulusMap::Twist { lo, hi, turns } => {
                if &p.r > lo && &p.r < hi {
                    let s = &(&p.r - lo) / &(hi - lo);
                    let theta = &p.theta + &(&Rational::from_integer(*turns) * &s);
                    AnnulusPoint::raw(p.r.clone(), theta)
                } else {
                    p.clone()
                }
            }
            AnnulusMap::Shear(k) => {
                let theta = &p.theta + &(&Rational::from_integer(*k) * &p.r);
                AnnulusPoint::raw(p.r.clone(), theta)
            }
            AnnulusMap::Flip => AnnulusPoint::raw(&Rational::one() - &p.r, p.theta.clone()),
            AnnulusMap::Compose(outer, inner) => outer.eval(&inner.eval(p)),
        }
    }

    /// The inverse tree.
    pub fn inverse(&self) -> AnnulusMap {
        match self {
            AnnulusMap::Identity => AnnulusMap::Identity,
            AnnulusMap::Product(f) => AnnulusMap::Product(f.inverse()),
            AnnulusMap::AMinus(f) => AnnulusMap::AMinus(f.inverse()),
            AnnulusMap::APlus(f) => AnnulusMap::APlus(f.inverse()),
            AnnulusMap::Phi { params, f } => AnnulusMap::Phi {
                params: Arc::clone(params),
                f: f.inverse(),
            },
            AnnulusMap::Radial(h) => AnnulusMap::Radial(h.inverse()),
            AnnulusMap::Twist { lo, hi, turns } => AnnulusMap::Twist {
                lo: lo.clone(),
                hi: hi.clone(),
                turns: -turns,
            },
            AnnulusMap::Shear(k) => AnnulusMap::Shear(-k),
            AnnulusMap::Flip => AnnulusMap::Flip,
            AnnulusMap::Compose(outer, inner) => AnnulusMap::Compose(Box::new(inner.inverse()), Box::new(outer.inverse())),
        }
    }

    /// Whether both boundary circles are mapped to themselves.
    pub fn preserves_boundaries(&self) -> bool {
        match self {
            AnnulusMap::Radial(h) => h.is_increasing(),
            AnnulusMap::Flip => false,
            AnnulusMap::Compose(o, i) => o.preserves_boundaries() == i.preserves_boundaries(),
            _ => true,
        }
    }

    /// When the map sends the fiber `{(r, θ₀)}` into itself, its radial
    /// profile `r ↦ p₁(map(r, θ₀))` as an exact PL function on `[0, 1]`.
    pub fn fiber_profile(&self, theta0: &Rational) -> Option<PlFunction> {
        let theta0 = theta0.fract();
        let unit = || PlFunction::identity_on(Rational::zero(), Rational::one());
        match self {
            AnnulusMap::Identity => Some(unit()),
            AnnulusMap::Product(f) => (f.eval(&theta0) == theta0).then(unit),
            AnnulusMap::AMinus(f) | AnnulusMap::APlus(f) => {
                if f.eval(&theta0) != theta0 {
                    return None;
                }
                let sign = if matches!(self, AnnulusMap::AMinus(_)) { Sign::Minus } else { Sign::Plus };
                let mut samples = BTreeMap::new();
                gap_profile_samples(f, &Rational::zero(), &Rational::one(), sign, &theta0, &mut samples);
                Some(PlFunction::new(samples.into_iter().collect()).expect("sorted samples"))
            }
            AnnulusMap::Phi { params, f } => {
                if f.eval(&theta0) != theta0 {
                    return None;
                }
                let k = params.gaps();
                let mut samples = BTreeMap::new();
                for (a, b) in k.blocks() {
                    samples.insert(a.clone(), a.clone());
                    samples.insert(b.clone(), b.clone());
                }
                for (j, (lo, hi)) in k.gaps().iter().enumerate() {
                    gap_profile_samples(f, lo, hi, params.signs().get(j), &theta0, &mut samples);
                }
                Some(PlFunction::new(samples.into_iter().collect()).expect("sorted samples"))
            }
            AnnulusMap::Radial(h) => Some(h.as_function().clone()),
            AnnulusMap::Flip => Some(IntervalHomeo::reflection().as_function().clone()),
            AnnulusMap::Twist { .. } | AnnulusMap::Shear(_) => None,
            AnnulusMap::Compose(outer, inner) => {
                let i = inner.fiber_profile(&theta0)?;
                let o = outer.fiber_profile(&theta0)?;
                o.compose(&i).ok()
            }
        }
    }
}

/// Vertices of the radial profile on one gap along the fiber `θ₀` (which `f`
/// fixes): the renormalized coordinate `s` breaks where `θ₀ ∓ s` crosses a
/// vertex of `f`.
fn gap_profile_samples(
    f: &CircleHomeo,
    lo: &Rational,
    hi: &Rational,
    sign: Sign,
    theta0: &Rational,
    out: &mut BTreeMap<Rational, Rational>,
) {
    let width = hi - lo;
    let mut ss = vec![Rational::zero(), Rational::one()];
    for (x, _) in f.breakpoints() {
        let s = match sign {
            Sign::Minus => (theta0 - &x).fract(),
            Sign::Plus => (&x - theta0).fract(),
        };
        ss.push(s);
    }
    for s in ss {
        let r = lo + &(&width * &s);
        let image = gap_radius(f, lo, hi, sign, &r, theta0);
        out.insert(r, image);
    }
}

/// Homeomorphism of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusMap {
    Identity,
    /// `(x, y) ↦ (f(x), f(y))`.
    Diagonal(CircleHomeo),
    /// Annulus map descended to the torus glued along `r = 0 ≡ 1`; the point
    /// `(x, y)` stands for the annulus point `(x, y)`.
    Glued(AnnulusMap),
    Compose(Box<TorusMap>, Box<TorusMap>),
}

impl TorusMap {
    pub fn eval(&self, p: &TorusPoint) -> TorusPoint {
        match self {
            TorusMap::Identity => p.clone(),
            TorusMap::Diagonal(f) => TorusPoint::new(f.eval(&p.x), f.eval(&p.y)),
            TorusMap::Glued(m) => {
                let q = m.eval(&AnnulusPoint::raw(p.x.clone(), p.y.clone()));
                TorusPoint::new(q.r, q.theta)
            }
            TorusMap::Compose(o, i) => o.eval(&i.eval(p)),
        }
    }

    pub fn inverse(&self) -> TorusMap {
        match self {
            TorusMap::Identity => TorusMap::Identity,
            TorusMap::Diagonal(f) => TorusMap::Diagonal(f.inverse()),
            TorusMap::Glued(m) => TorusMap::Glued(m.inverse()),
            TorusMap::Compose(o, i) => TorusMap::Compose(Box::new(i.inverse()), Box::new(o.inverse())),
        }
    }
}

/// The chart `h(r, θ) = (θ, θ - r)` from the annulus onto the torus cut along
/// the diagonal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiagonalChart;

impl DiagonalChart {
    pub fn forward(&self, p: &AnnulusPoint) -> TorusPoint {
        TorusPoint::new(p.theta.clone(), &p.theta - &p.r)
    }

    /// Inverse on the complement of the diagonal; diagonal points go to `r = 0`.
    pub fn inverse(&self, p: &TorusPoint) -> AnnulusPoint {
        AnnulusPoint::raw((&p.x - &p.y).fract(), p.x.clone())
    }
}

/// Quotient of a boundary-preserving annulus map to the disc (`r = 0` collapsed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscMap(pub AnnulusMap);

impl DiscMap {
    pub fn eval(&self, p: &DiscPoint) -> DiscPoint {
        DiscPoint::from_annulus(self.0.eval(&p.to_annulus()))
    }

    pub fn inverse(&self) -> DiscMap {
        DiscMap(self.0.inverse())
    }
}

/// Quotient of a boundary-preserving annulus map to the sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereMap(pub AnnulusMap);

impl SphereMap {
    pub fn eval(&self, p: &SpherePoint) -> SpherePoint {
        SpherePoint::from_annulus(self.0.eval(&p.to_annulus()))
    }

    pub fn inverse(&self) -> SphereMap {
        SphereMap(self.0.inverse())
    }
}

/// A homeomorphism of one of the four surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceMap {
    Annulus(AnnulusMap),
    Torus(TorusMap),
    Disc(DiscMap),
    Sphere(SphereMap),
}

impl SurfaceMap {
    pub fn surface(&self) -> Surface {
        match self {
            SurfaceMap::Annulus(_) => Surface::Annulus,
            SurfaceMap::Torus(_) => Surface::Torus,
            SurfaceMap::Disc(_) => Surface::Disc,
            SurfaceMap::Sphere(_) => Surface::Sphere,
        }
    }

    pub fn eval(&self, p: &SurfacePoint) -> Result<SurfacePoint, ModelError> {
        Ok(match (self, p) {
            (SurfaceMap::Annulus(m), SurfacePoint::Annulus(x)) => SurfacePoint::Annulus(m.eval(x)),
            (SurfaceMap::Torus(m), SurfacePoint::Torus(x)) => SurfacePoint::Torus(m.eval(x)),
            (SurfaceMap::Disc(m), SurfacePoint::Disc(x)) => SurfacePoint::Disc(m.eval(x)),
            (SurfaceMap::Sphere(m), SurfacePoint::Sphere(x)) => SurfacePoint::Sphere(m.eval(x)),
            _ => {
                return Err(ModelError::SurfaceMismatch {
                    map: self.surface(),
                    point: p.surface(),
                })
            }
        })
    }

    pub fn inverse(&self) -> SurfaceMap {
        match self {
            SurfaceMap::Annulus(m) => SurfaceMap::Annulus(m.inverse()),
            SurfaceMap::Torus(m) => SurfaceMap::Torus(m.inverse()),
            SurfaceMap::Disc(m) => SurfaceMap::Disc(m.inverse()),
            SurfaceMap::Sphere(m) => SurfaceMap::Sphere(m.inverse()),
        }
    }
}
