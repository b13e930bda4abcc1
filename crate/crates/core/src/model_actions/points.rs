use std::fmt;

use crate::rational::Rational;

use super::ModelError;

/// A point `(r, θ)` of the closed annulus `[0, 1] × S¹`; `θ` is kept in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnulusPoint {
    pub r: Rational,
    pub theta: Rational,
}

impl AnnulusPoint {
    pub fn new(r: Rational, theta: Rational) -> Result<Self, ModelError> {
        if r.is_negative() || r > Rational::one() {
            return Err(ModelError::RadiusOutOfRange(r));
        }
        Ok(AnnulusPoint {
            r,
            theta: theta.fract(),
        })
    }

    /// Caller guarantees `r ∈ [0, 1]`.
    pub(crate) fn raw(r: Rational, theta: Rational) -> Self {
        debug_assert!(!r.is_negative() && r <= Rational::one(), "radius {r}");
        AnnulusPoint {
            r,
            theta: theta.fract(),
        }
    }
}

impl fmt::Display for AnnulusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.theta)
    }
}

/// A point of `T² = S¹ × S¹`, both coordinates in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    pub x: Rational,
    pub y: Rational,
}

impl TorusPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        TorusPoint {
            x: x.fract(),
            y: y.fract(),
        }
    }
}

/// A point of the closed disc obtained by collapsing the `r = 0` boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiscPoint {
    Cone,
    /// `r ∈ (0, 1]`.
    Polar(AnnulusPoint),
}

impl DiscPoint {
    pub fn from_annulus(p: AnnulusPoint) -> Self {
        if p.r.is_zero() {
            DiscPoint::Cone
        } else {
            DiscPoint::Polar(p)
        }
    }

    pub fn to_annulus(&self) -> AnnulusPoint {
        match self {
            DiscPoint::Cone => AnnulusPoint::raw(Rational::zero(), Rational::zero()),
            DiscPoint::Polar(p) => p.clone(),
        }
    }
}

/// A point of the sphere obtained by collapsing both boundary circles:
/// `r = 0` is the south pole, `r = 1` the north pole.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpherePoint {
    SouthPole,
    NorthPole,
    /// `r ∈ (0, 1)`.
    Polar(AnnulusPoint),
}

impl SpherePoint {
    pub fn from_annulus(p: AnnulusPoint) -> Self {
        if p.r.is_zero() {
            SpherePoint::SouthPole
        } else if p.r == Rational::one() {
            SpherePoint::NorthPole
        } else {
            SpherePoint::Polar(p)
        }
    }

    pub fn to_annulus(&self) -> AnnulusPoint {
        match self {
            SpherePoint::SouthPole => AnnulusPoint::raw(Rational::zero(), Rational::zero()),
            SpherePoint::NorthPole => AnnulusPoint::raw(Rational::one(), Rational::zero()),
            SpherePoint::Polar(p) => p.clone(),
        }
    }
}

/// Which surface a map or point lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Annulus,
    Torus,
    Disc,
    Sphere,
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Annulus => "annulus",
            Surface::Torus => "torus",
            Surface::Disc => "disc",
            Surface::Sphere => "sphere",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfacePoint {
    Annulus(AnnulusPoint),
    Torus(TorusPoint),
    Disc(DiscPoint),
    Sphere(SpherePoint),
}

impl SurfacePoint {
    pub fn surface(&self) -> Surface {
        match self {
            SurfacePoint::Annulus(_) => Surface::Annulus,
            SurfacePoint::Torus(_) => Surface::Torus,
            SurfacePoint::Disc(_) => Surface::Disc,
            SurfacePoint::Sphere(_) => Surface::Sphere,
        }
    }
}
