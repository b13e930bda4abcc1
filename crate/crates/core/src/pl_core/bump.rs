use crate::rational::Rational;

use super::circle::CircleHomeo;
use super::line::LineHomeo;
use super::PlError;

/// Position of the `k`-th tent peak inside the moved arc, as a fraction of its
/// length: 1/2, 1/4, 3/4, 1/8, 7/8, ...
fn peak_fraction(k: usize) -> Rational {
    if k == 0 {
        return Rational::new(1, 2);
    }
    let level = (k.div_ceil(2) + 1) as u32;
    let p = Rational::dyadic(level);
    if k % 2 == 1 {
        p
    } else {
        &Rational::one() - &p
    }
}

/// `count` tent maps, each the identity on the closed arc
/// `[center - radius, center + radius]` and strictly above the diagonal on the
/// complementary open arc. Members differ in where the tent peaks.
pub fn bump_family(center: &Rational, radius: &Rational, count: usize) -> Result<Vec<CircleHomeo>, PlError> {
    let half = Rational::new(1, 2);
    if !radius.is_positive() || radius >= &half {
        return Err(PlError::BadRadius);
    }
    if count == 0 {
        return Err(PlError::BadCount);
    }
    let start = center + radius;
    let len = &Rational::one() - &(radius + radius);
    (0..count)
        .map(|k| {
            let p = peak_fraction(k);
            let lean = std::cmp::min(p.clone(), &Rational::one() - &p);
            let lift = &len * &(&lean * &half);
            let peak = &start + &(&len * &p);
            let end = &start + &len;
            CircleHomeo::from_lift_samples(vec![
                (start.clone(), start.clone()),
                (peak.clone(), &peak + &lift),
                (end.clone(), end),
            ])
        })
        .collect()
}

/// Tent map of the line supported on `[lo, hi]`, pushing points up.
pub fn line_bump(lo: &Rational, hi: &Rational) -> Result<LineHomeo, PlError> {
    if lo >= hi {
        return Err(PlError::BadRadius);
    }
    let mid = lo.midpoint(hi);
    let lift = &(hi - lo) / &Rational::from_integer(4);
    LineHomeo::new(vec![
        (lo.clone(), lo.clone()),
        (mid.clone(), &mid + &lift),
        (hi.clone(), hi.clone()),
    ])
}
