use std::cmp::Ordering;
use std::fmt;

use crate::rational::Rational;

use super::plfn::PlFunction;
use super::PlError;

/// A compactly supported increasing PL homeomorphism of `ℝ`: the identity
/// outside the span of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineHomeo {
    // empty for the identity; otherwise first and last vertices on the diagonal
    points: Vec<(Rational, Rational)>,
}

impl LineHomeo {
    pub fn identity() -> Self {
        LineHomeo { points: Vec::new() }
    }

    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        if points.is_empty() {
            return Ok(Self::identity());
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PlError::Unsorted);
        }
        if points.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(PlError::NonMonotone);
        }
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if first.0 != first.1 || last.0 != last.1 {
            return Err(PlError::NotCompactlySupported);
        }
        Ok(Self::canonical(points))
    }

    fn canonical(points: Vec<(Rational, Rational)>) -> Self {
        // outside the span the map has slope 1 through the diagonal
        let one = Rational::one();
        let n = points.len();
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(n);
        for i in 0..n {
            let cur = &points[i];
            let s_in = match kept.last() {
                Some(prev) => &(&cur.1 - &prev.1) / &(&cur.0 - &prev.0),
                None => one.clone(),
            };
            let s_out = if i + 1 < n {
                let next = &points[i + 1];
                &(&next.1 - &cur.1) / &(&next.0 - &cur.0)
            } else {
                one.clone()
            };
            if s_in != s_out {
                kept.push(cur.clone());
            }
        }
        LineHomeo { points: kept }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest interval outside which the map is the identity.
    pub fn support(&self) -> Option<(Rational, Rational)> {
        Some((self.points.first()?.0.clone(), self.points.last()?.0.clone()))
    }

    fn as_pl(&self) -> Option<PlFunction> {
        if self.points.is_empty() {
            None
        } else {
            Some(PlFunction::new(self.points.clone()).expect("valid vertices"))
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let idx = self.points.partition_point(|p| &p.0 <= x);
        if idx == 0 || idx == self.points.len() {
            return x.clone();
        }
        let (x0, y0) = &self.points[idx - 1];
        let (x1, y1) = &self.points[idx];
        y0 + &(&(y1 - y0) * &(&(x - x0) / &(x1 - x0)))
    }

    pub fn eval_inverse(&self, y: &Rational) -> Rational {
        let idx = self.points.partition_point(|p| &p.1 <= y);
        if idx == 0 || idx == self.points.len() {
            return y.clone();
        }
        let (x0, y0) = &self.points[idx - 1];
        let (x1, y1) = &self.points[idx];
        x0 + &(&(x1 - x0) * &(&(y - y0) / &(y1 - y0)))
    }

    pub fn inverse(&self) -> LineHomeo {
        LineHomeo {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LineHomeo) -> LineHomeo {
        let mut xs: Vec<Rational> = inner.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.points.iter().map(|(u, _)| inner.eval_inverse(u)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        LineHomeo::new(points).expect("composition of compactly supported homeomorphisms")
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &LineHomeo) -> LineHomeo {
        h.compose(&self.compose(&h.inverse()))
    }

    /// Exact fixed-point set.
    pub fn fixed_set(&self) -> FixedIntervalSet {
        let Some(pl) = self.as_pl() else {
            return FixedIntervalSet::whole_line();
        };
        let (lo, hi) = self.support().unwrap();
        let mut comps = vec![Interval {
            lo: Bound::NegInf,
            hi: Bound::Finite(lo),
        }];
        comps.extend(pl.fixed_components().into_iter().map(|(a, b)| Interval {
            lo: Bound::Finite(a),
            hi: Bound::Finite(b),
        }));
        comps.push(Interval {
            lo: Bound::Finite(hi),
            hi: Bound::PosInf,
        });
        FixedIntervalSet::from_sorted(comps)
    }
}

/// Endpoint of an interval on the extended line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Closed interval `[lo, hi]` on the extended line (infinite ends are open in ℝ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn finite(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: Bound::Finite(lo),
            hi: Bound::Finite(hi),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let b = Bound::Finite(x.clone());
        self.lo <= b && b <= self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.finite().is_some() && self.hi.finite().is_some()
    }

    /// `hi - lo` for bounded intervals.
    pub fn width(&self) -> Option<Rational> {
        Some(self.hi.finite()? - self.lo.finite()?)
    }
}

/// Finite union of disjoint closed intervals, sorted, with no two components
/// touching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FixedIntervalSet {
    components: Vec<Interval>,
}

impl FixedIntervalSet {
    pub fn empty() -> Self {
        FixedIntervalSet::default()
    }

    pub fn whole_line() -> Self {
        FixedIntervalSet {
            components: vec![Interval {
                lo: Bound::NegInf,
                hi: Bound::PosInf,
            }],
        }
    }

    /// Merges overlapping or touching intervals of a list sorted by `lo`.
    pub fn from_sorted(intervals: Vec<Interval>) -> Self {
        let mut components: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            if let Some(last) = components.last_mut() {
                if iv.lo <= last.hi {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                    continue;
                }
            }
            components.push(iv);
        }
        FixedIntervalSet { components }
    }

    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        Self::from_sorted(intervals)
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn intersect(&self, other: &FixedIntervalSet) -> FixedIntervalSet {
        let (a, b) = (&self.components, &other.components);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = std::cmp::max(&a[i].lo, &b[j].lo).clone();
            let hi = std::cmp::min(&a[i].hi, &b[j].hi).clone();
            if lo <= hi {
                out.push(Interval { lo, hi });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        FixedIntervalSet { components: out }
    }

    /// The bounded components.
    pub fn bounded_components(&self) -> impl Iterator<Item = &Interval> {
        self.components.iter().filter(|c| c.is_bounded())
    }
}
