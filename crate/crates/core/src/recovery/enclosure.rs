use std::cmp::{max, min};

use crate::rational::Rational;

/// A closed interval known to contain some exact quantity. Degenerate when
/// the quantity is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn exact(x: Rational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn new(a: Rational, b: Rational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: min(&self.lo, &other.lo).clone(),
            hi: max(&self.hi, &other.hi).clone(),
        }
    }

    /// `Σ cᵢ·eᵢ` in interval arithmetic.
    fn combine(terms: &[(Rational, &Enclosure)]) -> Enclosure {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (c, e) in terms {
            let (a, b) = (c * &e.lo, c * &e.hi);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            lo = &lo + &a;
            hi = &hi + &b;
        }
        Enclosure { lo, hi }
    }
}

/// Value at `ε = 0` of a quantity assumed affine in `ε` over the last
/// `window` levels (`ε` strictly decreasing). Returns `None` when the levels
/// are inconsistent with an affine law.
pub(crate) fn extrapolate(levels: &[(Rational, Enclosure)], window: usize) -> Option<Enclosure> {
    let window = window.max(2);
    if levels.len() < window {
        return None;
    }
    let tail = &levels[levels.len() - window..];
    for w in tail.windows(3) {
        let ((e0, v0), (e1, v1), (e2, v2)) = (&w[0], &w[1], &w[2]);
        // v2 ≈ v1 + (v1 - v0)·t with t = (e2 - e1)/(e1 - e0)
        let t = &(e2 - e1) / &(e1 - e0);
        let predicted = Enclosure::combine(&[(&Rational::one() + &t, v1), (-&t, v0)]);
        if !predicted.overlaps(v2) {
            return None;
        }
    }
    let (e1, v1) = &tail[window - 2];
    let (e2, v2) = &tail[window - 1];
    let d = e1 - e2;
    Some(Enclosure::combine(&[(e1 / &d, v2), (-&(e2 / &d), v1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn affine_levels_extrapolate_exactly() {
        let levels: Vec<_> = (2..6)
            .map(|k| {
                let e = Rational::dyadic(k);
                (e.clone(), Enclosure::exact(&q(1, 3) - &(&q(3, 2) * &e)))
            })
            .collect();
        assert_eq!(extrapolate(&levels, 4), Some(Enclosure::exact(q(1, 3))));
    }

    #[test]
    fn curved_levels_are_rejected() {
        let levels: Vec<_> = (2..6)
            .map(|k| {
                let e = Rational::dyadic(k);
                (e.clone(), Enclosure::exact(&e * &e))
            })
            .collect();
        assert_eq!(extrapolate(&levels, 3), None);
    }

    #[test]
    fn widths_propagate() {
        let tol = Rational::dyadic(10);
        let levels: Vec<_> = (2..5)
            .map(|k| {
                let e = Rational::dyadic(k);
                let v = &q(1, 2) + &e;
                (e, Enclosure::new(&v - &tol, &v + &tol))
            })
            .collect();
        let out = extrapolate(&levels, 3).unwrap();
        assert!(out.lo <= q(1, 2) && q(1, 2) <= out.hi);
        assert_eq!(out.width(), &Rational::from_integer(6) * &tol);
    }
}
