use crate::pl_core::{line_bump, LineHomeo};
use crate::rational::Rational;

use super::enclosure::{extrapolate, Enclosure};
use super::oracle::LineActionOracle;
use super::RecoveryError;

const FIRST_WINDOW: i64 = 4;
const FIRST_SAMPLES: i64 = 8192;
const SAMPLES: i64 = 64;
const BISECTION_DEPTH: u32 = 28;

/// `h(x)` recovered at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePoint {
    pub x: Rational,
    pub value: Rational,
    /// Zero when `value` is exact.
    pub width: Rational,
    /// Fixed interval at the last radius; always contains `h(x)`.
    pub enclosure: Enclosure,
    pub exact: bool,
}

/// `ε = 2^-k` for `k = 2..=24`.
pub fn default_shrink_schedule() -> Vec<Rational> {
    (2..=24).map(Rational::dyadic).collect()
}

type Component = (Enclosure, Enclosure);

fn bumps(x: &Rational, eps: &Rational) -> (LineHomeo, LineHomeo) {
    let one = Rational::one();
    let left = x - eps;
    let right = x + eps;
    (
        line_bump(&(&left - &one), &left).expect("nonempty support"),
        line_bump(&right, &(&right + &one)).expect("nonempty support"),
    )
}

/// The unique bounded component of `Fix ψ(b₋) ∩ Fix ψ(b₊)`.
fn component<O: LineActionOracle + ?Sized>(
    oracle: &O,
    x: &Rational,
    eps: &Rational,
    previous: Option<&Component>,
) -> Result<Component, RecoveryError> {
    let missing = || RecoveryError::NoBoundedComponent {
        x: x.clone(),
        epsilon: eps.clone(),
    };
    let (b1, b2) = bumps(x, eps);
    if let (Some(i1), Some(i2)) = (oracle.image(&b1), oracle.image(&b2)) {
        let set = i1.fixed_set().intersect(&i2.fixed_set());
        let mut bounded = set.bounded_components();
        let c = bounded.next().ok_or_else(missing)?;
        if bounded.next().is_some() {
            return Err(missing());
        }
        let lo = c.lo.finite().expect("bounded").clone();
        let hi = c.hi.finite().expect("bounded").clone();
        return Ok((Enclosure::exact(lo), Enclosure::exact(hi)));
    }

    let fixed = |y: &Rational| &oracle.apply(&b1, y) == y && &oracle.apply(&b2, y) == y;
    let (a, b, n) = match previous {
        Some((lo, hi)) => (lo.lo.clone(), hi.hi.clone(), SAMPLES),
        None => {
            let w = Rational::from_integer(FIRST_WINDOW);
            (x - &w, x + &w, FIRST_SAMPLES)
        }
    };
    let step = &(&b - &a) / &Rational::from_integer(n);
    let ys: Vec<Rational> = (0..=n).map(|i| &a + &(&step * &Rational::from_integer(i))).collect();
    let flags: Vec<bool> = ys.iter().map(fixed).collect();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < ys.len() {
        if !flags[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < ys.len() && flags[j + 1] {
            j += 1;
        }
        if i > 0 && j + 1 < ys.len() {
            runs.push((i, j));
        }
        i = j + 1;
    }
    let (i, j) = match runs.as_slice() {
        [only] => *only,
        _ => return Err(missing()),
    };
    let tol = Rational::dyadic(BISECTION_DEPTH);
    let refine = |mut moved: Rational, mut kept: Rational| {
        while (&kept - &moved).abs() > tol {
            let mid = moved.midpoint(&kept);
            if fixed(&mid) {
                kept = mid;
            } else {
                moved = mid;
            }
        }
        Enclosure::new(moved, kept)
    };
    Ok((refine(ys[i - 1].clone(), ys[i].clone()), refine(ys[j + 1].clone(), ys[j].clone())))
}

fn recover_point<O: LineActionOracle + ?Sized>(
    oracle: &O,
    x: &Rational,
    schedule: &[Rational],
) -> Result<LinePoint, RecoveryError> {
    let mut history: Vec<(Rational, Component)> = Vec::with_capacity(schedule.len());
    for eps in schedule {
        let c = component(oracle, x, eps, history.last().map(|(_, c)| c))?;
        if let Some((_, (plo, phi))) = history.last() {
            let nested = c.0.lo >= plo.lo && c.1.hi <= phi.hi;
            let shrinks = &c.1.hi - &c.0.lo < &phi.hi - &plo.lo;
            if !(nested && shrinks) {
                return Err(RecoveryError::NoShrink {
                    x: x.clone(),
                    epsilon: eps.clone(),
                });
            }
        }
        history.push((eps.clone(), c));
    }
    let (_, (lo, hi)) = history.last().expect("schedule is nonempty");
    let enclosure = Enclosure::new(lo.lo.clone(), hi.hi.clone());
    let exact_path = history.iter().all(|(_, (a, b))| a.is_exact() && b.is_exact());
    if exact_path {
        let ends = |pick: fn(&Component) -> &Enclosure| {
            let levels: Vec<_> = history.iter().map(|(e, c)| (e.clone(), pick(c).clone())).collect();
            extrapolate(&levels, 3)
        };
        if let (Some(l0), Some(h0)) = (ends(|c| &c.0), ends(|c| &c.1)) {
            if l0 == h0 && enclosure.overlaps(&l0) {
                return Ok(LinePoint {
                    x: x.clone(),
                    value: l0.lo,
                    width: Rational::zero(),
                    enclosure,
                    exact: true,
                });
            }
        }
    }
    Ok(LinePoint {
        x: x.clone(),
        value: enclosure.mid(),
        width: enclosure.width(),
        enclosure,
        exact: false,
    })
}

/// `h(x)` at every grid point for an action conjugate to the inclusion, read
/// off the fixed sets of bumps supported just left and right of `x`.
pub fn recover_line_conjugacy<O: LineActionOracle + ?Sized>(
    oracle: &O,
    grid: &[Rational],
    shrink_schedule: &[Rational],
) -> Result<Vec<LinePoint>, RecoveryError> {
    if shrink_schedule.is_empty() {
        return Err(RecoveryError::EmptySchedule);
    }
    if !shrink_schedule[0].is_positive() || shrink_schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(RecoveryError::BadSchedule);
    }
    grid.iter().map(|x| recover_point(oracle, x, shrink_schedule)).collect()
}
