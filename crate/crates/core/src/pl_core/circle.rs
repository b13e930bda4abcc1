use serde::{Deserialize, Serialize};

use crate::rational::Rational;

use super::PlError;

/// An orientation-preserving piecewise-linear homeomorphism of `S¹ = ℝ/ℤ`,
/// stored through its lift `f̃` on `[0, 1)`.
///
/// Canonical form: a vertex at `x = 0`, further vertices only where the slope
/// changes, and `f̃(0) ∈ [0, 1)`. Two maps are equal iff their canonical
/// vertex lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleHomeo {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    // slopes[i]: piece from vertex i to vertex i + 1 (the last one wraps to x0 + 1)
    slopes: Vec<Rational>,
}

/// JSON form `{"breakpoints": [["0","0"],["1/2","1/4"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    pub breakpoints: Vec<(Rational, Rational)>,
}

impl CircleHomeo {
    /// Builds the map whose lift interpolates `breakpoints` on `[0, 1)` and is
    /// extended by `f̃(x + 1) = f̃(x) + 1`.
    pub fn new(breakpoints: &[(Rational, Rational)]) -> Result<Self, PlError> {
        if breakpoints.is_empty() {
            return Err(PlError::Empty);
        }
        let one = Rational::one();
        for (x, _) in breakpoints {
            if x.is_negative() || x >= &one {
                return Err(PlError::OutOfRange);
            }
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PlError::Unsorted);
        }
        Self::from_sorted_vertices(breakpoints.to_vec())
    }

    /// Vertices with `x` in `[0, 1)` strictly increasing; checks monotonicity,
    /// inserts the vertex at 0, normalizes and drops non-breaks.
    fn from_sorted_vertices(mut pts: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        let one = Rational::one();
        for w in pts.windows(2) {
            if w[1].1 <= w[0].1 {
                return Err(PlError::NonMonotone);
            }
        }
        let (fx, fy) = (&pts[0].0, &pts[0].1);
        let (lx, ly) = pts.last().unwrap();
        if (ly - fy) >= one {
            return Err(PlError::NonMonotone);
        }
        if !fx.is_zero() {
            // value at 0 on the wrap piece from (lx - 1, ly - 1) to (fx, fy)
            let (wx, wy) = (lx - &one, ly - &one);
            let y0 = &wy + &(&(fy - &wy) * &(&(-&wx) / &(fx - &wx)));
            pts.insert(0, (Rational::zero(), y0));
        }
        let shift = pts[0].1.floor();
        if !shift.is_zero() {
            for p in pts.iter_mut() {
                p.1 = &p.1 - &shift;
            }
        }
        let n = pts.len();
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(n);
        kept.push(pts[0].clone());
        for i in 1..n {
            let prev = kept.last().unwrap();
            let cur = &pts[i];
            let next = if i + 1 < n {
                pts[i + 1].clone()
            } else {
                (&pts[0].0 + &one, &pts[0].1 + &one)
            };
            let s_in = &(&cur.1 - &prev.1) / &(&cur.0 - &prev.0);
            let s_out = &(&next.1 - &cur.1) / &(&next.0 - &cur.0);
            if s_in != s_out {
                kept.push(cur.clone());
            }
        }
        let (xs, ys): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
        let m = xs.len();
        let slopes = (0..m)
            .map(|i| {
                let (nx, ny) = if i + 1 < m {
                    (xs[i + 1].clone(), ys[i + 1].clone())
                } else {
                    (&xs[0] + &one, &ys[0] + &one)
                };
                &(&ny - &ys[i]) / &(&nx - &xs[i])
            })
            .collect();
        Ok(CircleHomeo { xs, ys, slopes })
    }

    /// Builds from arbitrary points of a lift graph (any real `x`); points are
    /// translated into `[0, 1)` by integer shifts.
    pub(crate) fn from_lift_samples(samples: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        let mut pts: Vec<(Rational, Rational)> = samples
            .into_iter()
            .map(|(x, y)| {
                let k = x.floor();
                (&x - &k, &y - &k)
            })
            .collect();
        pts.sort();
        pts.dedup();
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(PlError::NonMonotone);
        }
        if pts.is_empty() {
            return Err(PlError::Empty);
        }
        Self::from_sorted_vertices(pts)
    }

    pub fn identity() -> Self {
        Self::rotation(&Rational::zero())
    }

    /// `R_α`, lift `x ↦ x + α`.
    pub fn rotation(alpha: &Rational) -> Self {
        CircleHomeo {
            xs: vec![Rational::zero()],
            ys: vec![alpha.fract()],
            slopes: vec![Rational::one()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.xs.len() == 1 && self.ys[0].is_zero()
    }

    pub fn is_rotation(&self) -> bool {
        self.xs.len() == 1
    }

    /// Canonical vertices of the normalized lift on `[0, 1)`.
    pub fn breakpoints(&self) -> Vec<(Rational, Rational)> {
        self.xs.iter().cloned().zip(self.ys.iter().cloned()).collect()
    }

    pub fn to_document(&self) -> MapDocument {
        MapDocument {
            breakpoints: self.breakpoints(),
        }
    }

    pub fn from_document(doc: &MapDocument) -> Result<Self, PlError> {
        Self::new(&doc.breakpoints)
    }

    /// `f̃(x)` for the normalized lift.
    pub fn eval_lift(&self, x: &Rational) -> Rational {
        let k = x.floor();
        let t = x - &k;
        let i = self.xs.partition_point(|v| v <= &t) - 1;
        &(&self.ys[i] + &(&self.slopes[i] * &(&t - &self.xs[i]))) + &k
    }

    /// `f(θ)` with the representative in `[0, 1)`.
    pub fn eval(&self, theta: &Rational) -> Rational {
        self.eval_lift(theta).fract()
    }

    /// `f̃⁻¹(y)`.
    pub fn eval_lift_inverse(&self, y: &Rational) -> Rational {
        let k = (y - &self.ys[0]).floor();
        let t = y - &k;
        let i = self.ys.partition_point(|v| v <= &t) - 1;
        &(&self.xs[i] + &(&(&t - &self.ys[i]) / &self.slopes[i])) + &k
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CircleHomeo) -> CircleHomeo {
        let mut xs: Vec<Rational> = inner.xs.clone();
        xs.extend(self.xs.iter().map(|u| inner.eval_lift_inverse(u).fract()));
        let samples = xs
            .into_iter()
            .map(|x| {
                let y = self.eval_lift(&inner.eval_lift(&x));
                (x, y)
            })
            .collect();
        Self::from_lift_samples(samples).expect("composition of homeomorphisms is a homeomorphism")
    }

    pub fn inverse(&self) -> CircleHomeo {
        let samples = self.xs.iter().zip(&self.ys).map(|(x, y)| (y.clone(), x.clone())).collect();
        Self::from_lift_samples(samples).expect("inverse of a homeomorphism is a homeomorphism")
    }

    /// Whether `f` is the identity on some neighbourhood of `theta`.
    pub fn fixes_neighbourhood(&self, theta: &Rational) -> bool {
        let t = theta.fract();
        if !(&self.eval_lift(&t) - &t).is_integer() {
            return false;
        }
        let one = Rational::one();
        let i = self.xs.partition_point(|v| v <= &t) - 1;
        if self.slopes[i] != one {
            return false;
        }
        if self.xs[i] == t {
            let prev = if i == 0 { self.slopes.len() - 1 } else { i - 1 };
            return self.slopes[prev] == one;
        }
        true
    }

    /// Whether `f̃(x) >= x` everywhere for the lift fixing `anchor`.
    pub fn dominates_identity_from(&self, anchor: &Rational) -> bool {
        let a = anchor.fract();
        let base = &self.eval_lift(&a) - &a;
        if !base.is_integer() {
            return false;
        }
        self.xs.iter().all(|x| (&self.eval_lift(x) - x) >= base)
    }
}
