//! Exact rational numbers.
//!
//! Values that fit in a reduced `i64` fraction are stored inline and every
//! operation is carried out in `i128`; anything larger falls back to
//! [`BigRational`]. The representation is canonical (inline whenever the
//! reduced value fits), so derived equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// An exact rational number in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn small_from_i128(num: i128, den: i128) -> Option<Rational> {
    debug_assert!(den > 0);
    if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
        let g = gcd64(n.unsigned_abs(), d as u64).max(1) as i64;
        let (n, d) = (n / g, d / g);
        if n != i64::MIN {
            return Some(Rational(Repr::Small { num: n, den: d }));
        }
        return None;
    }
    let g = gcd(num.unsigned_abs(), den as u128) as i128;
    let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
    if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
        Some(Rational(Repr::Small {
            num: num as i64,
            den: den as i64,
        }))
    } else {
        None
    }
}

/// Binary gcd, with a `u64` fast path.
fn gcd(a: u128, b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd64(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    let (mut a, mut b) = (a >> a.trailing_zeros(), b);
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if a == 1 {
            return 1 << shift;
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    let (mut a, mut b) = (a >> a.trailing_zeros(), b);
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if a == 1 {
            return 1 << shift;
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn from_i128(num: i128, den: i128) -> Rational {
    small_from_i128(num, den)
        .unwrap_or_else(|| Rational::from_big(BigRational::new(num.into(), den.into())))
}

impl Rational {
    /// Builds `num / den`. Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 {
            (-(num as i128), -(den as i128))
        } else {
            (num as i128, den as i128)
        };
        from_i128(num, den)
    }

    pub fn from_integer(n: i64) -> Self {
        Rational::new(n, 1)
    }

    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    /// `2^-k`.
    pub fn dyadic(k: u32) -> Self {
        if k < 62 {
            Rational::new(1, 1i64 << k)
        } else {
            Rational::from_big(BigRational::new(BigInt::one(), BigInt::one() << k))
        }
    }

    pub fn from_big(value: BigRational) -> Self {
        if let (Some(num), Some(den)) = (value.numer().to_i64(), value.denom().to_i64()) {
            if num != i64::MIN {
                return Rational(Repr::Small { num, den });
            }
        }
        Rational(Repr::Big(Box::new(value)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn signum(&self) -> Ordering {
        self.cmp(&Rational::zero())
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: num.div_euclid(*den),
                den: 1,
            }),
            Repr::Big(b) => Rational::from_big(b.floor()),
        }
    }

    /// `self - floor(self)`, the representative in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: num.rem_euclid(*den),
                den: *den,
            }),
            Repr::Big(_) => self - &self.floor(),
        }
    }

    /// Arithmetic mean of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        &(self + other) / &Rational::from_integer(2)
    }

    pub fn recip(&self) -> Rational {
        &Rational::one() / self
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let parse_int = |t: &str| {
            let t = t.trim();
            let t = t.strip_prefix('+').unwrap_or(t);
            BigInt::from_str(t).map_err(|_| ParseRationalError::Invalid(s.to_string()))
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `num / den` for a pair already known to be coprime with `den > 0`.
fn reduced(num: i128, den: i128) -> Rational {
    debug_assert!(den > 0);
    if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
        Rational(Repr::Small {
            num: num as i64,
            den: den as i64,
        })
    } else {
        reduced_big(num, den)
    }
}

#[cold]
fn reduced_big(num: i128, den: i128) -> Rational {
    Rational::from_big(BigRational::new_raw(num.into(), den.into()))
}

/// `a/b + c/d` for reduced inline operands, splitting the denominators'
/// common factor so that only small gcds are taken.
fn small_add(a: i64, b: i64, c: i64, d: i64) -> Rational {
    if b == d {
        return if b == 1 {
            reduced(a as i128 + c as i128, 1)
        } else {
            from_i128(a as i128 + c as i128, b as i128)
        };
    }
    if d == 1 {
        return reduced(a as i128 + c as i128 * b as i128, b as i128);
    }
    if b == 1 {
        return reduced(a as i128 * d as i128 + c as i128, d as i128);
    }
    let g = gcd64(b as u64, d as u64) as i64;
    if g == 1 {
        return reduced(a as i128 * d as i128 + c as i128 * b as i128, b as i128 * d as i128);
    }
    let (bg, dg) = (b / g, d / g);
    let t = a as i128 * dg as i128 + c as i128 * bg as i128;
    let g2 = gcd(t.unsigned_abs(), g as u128) as i64;
    let num = match (g2, i64::try_from(t)) {
        (1, _) => t,
        (_, Ok(t)) => (t / g2) as i128,
        (_, Err(_)) => t / g2 as i128,
    };
    reduced(num, bg as i128 * (d / g2) as i128)
}

fn small_mul(a: i64, b: i64, c: i64, d: i64) -> Rational {
    if a == 0 || c == 0 {
        return Rational::zero();
    }
    let g1 = gcd64(a.unsigned_abs(), d as u64) as i64;
    let g2 = gcd64(c.unsigned_abs(), b as u64) as i64;
    reduced(
        (a / g1) as i128 * (c / g2) as i128,
        (b / g2) as i128 * (d / g1) as i128,
    )
}

fn add_impl(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => small_add(*a, *b, *c, *d),
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn sub_impl(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => small_add(*a, *b, -*c, *d),
        _ => Rational::from_big(x.to_big() - y.to_big()),
    }
}

fn mul_impl(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => small_mul(*a, *b, *c, *d),
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn div_impl(x: &Rational, y: &Rational) -> Rational {
    assert!(!y.is_zero(), "division by zero");
    match (&x.0, &y.0) {
        (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
            if *c < 0 {
                small_mul(*a, *b, -*d, -*c)
            } else {
                small_mul(*a, *b, *d, *c)
            }
        }
        _ => Rational::from_big(x.to_big() / y.to_big()),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $imp(self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $imp(&self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small {
                num: -num,
                den: *den,
            }),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, 5), Rational::zero());
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/2".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), q(7, 1));
        assert_eq!("+1".parse::<Rational>().unwrap(), q(1, 1));
        assert!(matches!("1/0".parse::<Rational>(), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!("x/2".parse::<Rational>(), Err(ParseRationalError::Invalid(_))));
        assert!(matches!("".parse::<Rational>(), Err(ParseRationalError::Empty)));
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(q(-1, 4).floor(), q(-1, 1));
        assert_eq!(q(-1, 4).fract(), q(3, 4));
        assert_eq!(q(5, 4).fract(), q(1, 4));
        assert_eq!(q(2, 1).fract(), Rational::zero());
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let big = q(i64::MAX, 1) * q(i64::MAX, 1);
        assert!(big > q(i64::MAX, 1));
        let back = &big / &q(i64::MAX, 1);
        assert_eq!(back, q(i64::MAX, 1));
        assert!(matches!(back.0, Repr::Small { .. }));
        let tiny = Rational::dyadic(100);
        assert_eq!(&tiny * &Rational::from_big(BigRational::from_integer(BigInt::one() << 100)), Rational::one());
    }

    #[test]
    fn serde_string_form() {
        let v = serde_json::to_string(&q(-3, 8)).unwrap();
        assert_eq!(v, "\"-3/8\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, q(-3, 8));
    }

    fn big_of(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in any::<i64>(), b in 1i64..=i64::MAX, c in any::<i64>(), d in 1i64..=i64::MAX) {
            let (x, y) = (Rational::from_big(big_of(a, b)), Rational::from_big(big_of(c, d)));
            let (bx, by) = (big_of(a, b), big_of(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if !by.is_zero() {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!(x.floor().to_big(), bx.floor());
        }

        #[test]
        fn small_arithmetic_matches_bigrational(a in -4096i64..4096, b in 1i64..4096, c in -4096i64..4096, d in 1i64..4096) {
            let (x, y) = (q(a, b), q(c, d));
            let (bx, by) = (big_of(a, b), big_of(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if !by.is_zero() {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
        }

        #[test]
        fn display_parse_round_trip(a in any::<i64>(), b in 1i64..=i64::MAX) {
            let x = Rational::from_big(big_of(a, b));
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
