//! Seeded random generators for maps, gap sets and points with bounded
//! denominators. Used by the property and acceptance suites.

use rand::seq::index::sample;
use rand::Rng;

use crate::model_actions::{AnnulusPoint, GapSet, Sign, SignAssignment};
use crate::pl_core::{CircleHomeo, IntervalHomeo, LineHomeo};
use crate::rational::Rational;

fn sorted_distinct<R: Rng + ?Sized>(rng: &mut R, range: std::ops::Range<i64>, count: usize) -> Vec<i64> {
    let len = (range.end - range.start) as usize;
    let mut picked: Vec<i64> = sample(rng, len, count.min(len))
        .into_iter()
        .map(|i| range.start + i as i64)
        .collect();
    picked.sort_unstable();
    picked
}

/// A PL circle homeomorphism with `1..=max_breaks` vertices on the grid `1/den`.
pub fn circle_homeo<R: Rng + ?Sized>(rng: &mut R, max_breaks: usize, den: i64) -> CircleHomeo {
    let n = rng.gen_range(1..=max_breaks.min(den as usize - 1).max(1));
    let xs = sorted_distinct(rng, 0..den, n);
    let y0 = rng.gen_range(0..den);
    let mut ys = vec![y0];
    ys.extend(sorted_distinct(rng, 1..den, n - 1).into_iter().map(|d| y0 + d));
    let pts: Vec<_> = xs
        .into_iter()
        .zip(ys)
        .map(|(x, y)| (Rational::new(x, den), Rational::new(y, den)))
        .collect();
    CircleHomeo::new(&pts).expect("sampled vertices are monotone")
}

/// A `K` with `0..=max_gaps` gaps and endpoints on the grid `1/den`; point
/// blocks are allowed.
pub fn gap_set<R: Rng + ?Sized>(rng: &mut R, max_gaps: usize, den: i64) -> GapSet {
    let g = rng.gen_range(0..=max_gaps.min(den as usize));
    loop {
        let mut cuts: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(0..=den)).collect();
        cuts.sort_unstable();
        if cuts.chunks(2).any(|c| c[0] >= c[1]) {
            continue;
        }
        let mut blocks = Vec::with_capacity(g + 1);
        let mut start = 0;
        for c in cuts.chunks(2) {
            blocks.push((Rational::new(start, den), Rational::new(c[0], den)));
            start = c[1];
        }
        blocks.push((Rational::new(start, den), Rational::one()));
        return GapSet::new(blocks).expect("sampled blocks are valid");
    }
}

pub fn signs<R: Rng + ?Sized>(rng: &mut R, len: usize) -> SignAssignment {
    SignAssignment(
        (0..len)
            .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

pub fn annulus_point<R: Rng + ?Sized>(rng: &mut R, den: i64) -> AnnulusPoint {
    AnnulusPoint::new(
        Rational::new(rng.gen_range(0..=den), den),
        Rational::new(rng.gen_range(0..den), den),
    )
    .expect("radius in [0, 1]")
}

/// An increasing PL homeomorphism of `[0, 1]` with up to `max_inner` interior vertices.
pub fn interval_homeo<R: Rng + ?Sized>(rng: &mut R, max_inner: usize, den: i64) -> IntervalHomeo {
    let n = rng.gen_range(0..=max_inner.min(den as usize - 1));
    let xs = sorted_distinct(rng, 1..den, n);
    let ys = sorted_distinct(rng, 1..den, n);
    let mut pts = vec![(Rational::zero(), Rational::zero())];
    pts.extend(xs.into_iter().zip(ys).map(|(x, y)| (Rational::new(x, den), Rational::new(y, den))));
    pts.push((Rational::one(), Rational::one()));
    IntervalHomeo::new(pts).expect("sampled vertices are monotone")
}

/// An increasing PL homeomorphism of the line supported in `[lo, hi]`.
pub fn line_homeo<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_inner: usize, den: i64) -> LineHomeo {
    let span = (hi - lo) * den;
    let n = rng.gen_range(1..=max_inner.min(span as usize - 1));
    let xs = sorted_distinct(rng, 1..span, n);
    let ys = sorted_distinct(rng, 1..span, n);
    let base = Rational::from_integer(lo);
    let mut pts = vec![(base.clone(), base.clone())];
    pts.extend(
        xs.into_iter()
            .zip(ys)
            .map(|(x, y)| (&base + &Rational::new(x, den), &base + &Rational::new(y, den))),
    );
    let top = Rational::from_integer(hi);
    pts.push((top.clone(), top));
    LineHomeo::new(pts).expect("sampled vertices are monotone")
}
