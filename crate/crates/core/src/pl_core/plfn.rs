use crate::rational::Rational;

use super::PlError;

/// A continuous piecewise-linear function on a closed bounded interval,
/// given by its graph vertices. No monotonicity is assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlFunction {
    points: Vec<(Rational, Rational)>,
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
pub type ClosedInterval = (Rational, Rational);

impl PlFunction {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, PlError> {
        if points.is_empty() {
            return Err(PlError::Empty);
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(PlError::Unsorted);
        }
        Ok(PlFunction { points }.simplified())
    }

    pub fn identity_on(lo: Rational, hi: Rational) -> Self {
        if lo == hi {
            PlFunction {
                points: vec![(lo.clone(), lo)],
            }
        } else {
            PlFunction {
                points: vec![(lo.clone(), lo), (hi.clone(), hi)],
            }
        }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    /// Drops vertices where the slope does not change.
    fn simplified(mut self) -> Self {
        if self.points.len() <= 2 {
            return self;
        }
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(self.points.len());
        kept.push(self.points[0].clone());
        for i in 1..self.points.len() - 1 {
            let prev = kept.last().unwrap();
            let cur = &self.points[i];
            let next = &self.points[i + 1];
            let s_in = &(&cur.1 - &prev.1) / &(&cur.0 - &prev.0);
            let s_out = &(&next.1 - &cur.1) / &(&next.0 - &cur.0);
            if s_in != s_out {
                kept.push(cur.clone());
            }
        }
        kept.push(self.points.pop().unwrap());
        PlFunction { points: kept }
    }

    /// Evaluates at `x`, or `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let idx = self.points.partition_point(|p| &p.0 <= x);
        if idx == 0 {
            return None;
        }
        let (x0, y0) = &self.points[idx - 1];
        if idx == self.points.len() {
            return (x == x0).then(|| y0.clone());
        }
        let (x1, y1) = &self.points[idx];
        Some(y0 + &(&(y1 - y0) * &(&(x - x0) / &(x1 - x0))))
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[0].1 < w[1].1)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[0].1 > w[1].1)
    }

    /// Inverse of a strictly monotone function.
    pub fn inverse(&self) -> Option<PlFunction> {
        let mut swapped: Vec<_> = self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        if self.is_strictly_decreasing() {
            swapped.reverse();
        } else if !self.is_strictly_increasing() {
            return None;
        }
        Some(PlFunction { points: swapped })
    }

    /// `self ∘ inner`. The range of `inner` must lie inside the domain of `self`.
    pub fn compose(&self, inner: &PlFunction) -> Result<PlFunction, PlError> {
        let mut xs: Vec<Rational> = inner.points.iter().map(|p| p.0.clone()).collect();
        for w in inner.points.windows(2) {
            let ((xa, ya), (xb, yb)) = (&w[0], &w[1]);
            if ya == yb {
                continue;
            }
            let (lo, hi) = if ya < yb { (ya, yb) } else { (yb, ya) };
            for (u, _) in &self.points {
                if u > lo && u < hi {
                    xs.push(xa + &(&(xb - xa) * &(&(u - ya) / &(yb - ya))));
                }
            }
        }
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = inner.eval(&x).expect("candidate inside inner domain");
                let z = self.eval(&y).ok_or(PlError::OutOfRange)?;
                Ok((x, z))
            })
            .collect::<Result<Vec<_>, PlError>>()?;
        PlFunction::new(points)
    }

    /// Exact set `{x : f(x) = x}` as sorted disjoint closed intervals.
    pub fn fixed_components(&self) -> Vec<ClosedInterval> {
        let mut out: Vec<ClosedInterval> = Vec::new();
        let mut push = |lo: Rational, hi: Rational| {
            if let Some(last) = out.last_mut() {
                if lo <= last.1 {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    return;
                }
            }
            out.push((lo, hi));
        };
        if self.points.len() == 1 {
            let (x, y) = &self.points[0];
            if x == y {
                push(x.clone(), x.clone());
            }
            return out;
        }
        for w in self.points.windows(2) {
            let ((xa, ya), (xb, yb)) = (&w[0], &w[1]);
            let da = ya - xa;
            let db = yb - xb;
            match (da.is_zero(), db.is_zero()) {
                (true, true) => push(xa.clone(), xb.clone()),
                (true, false) => push(xa.clone(), xa.clone()),
                (false, true) => push(xb.clone(), xb.clone()),
                (false, false) => {
                    if da.is_negative() != db.is_negative() {
                        let root = xa + &(&(xb - xa) * &(&da / &(&da - &db)));
                        push(root.clone(), root);
                    }
                }
            }
        }
        out
    }
}
