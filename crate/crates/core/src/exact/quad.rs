use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(n: &BigInt) -> Sign {
        if n.is_zero() {
            Sign::Zero
        } else if n.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_rational(r: &BigRational) -> Sign {
        Sign::of_int(r.numer())
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Exact element `a + b·√q` of a real quadratic field, with rational `a`, `b`.
///
/// Values are kept canonical: if `b = 0` or `q` is a perfect square the radical
/// is folded away and the radicand is stored as 1. Mixing two values with
/// different non-trivial radicands is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadReal {
    a: BigRational,
    b: BigRational,
    q: u64,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `floor(√r)` for a non-negative rational `r`.
pub(crate) fn floor_sqrt_rational(r: &BigRational) -> BigInt {
    debug_assert!(!r.is_negative());
    let nd = r.numer() * r.denom();
    nd.sqrt().div_floor(r.denom())
}

impl QuadReal {
    pub fn new(a: BigRational, b: BigRational, q: u64) -> QuadReal {
        if b.is_zero() || q == 0 {
            return QuadReal { a, b: BigRational::zero(), q: 1 };
        }
        let s = q.sqrt();
        if s * s == q {
            let a = a + b * BigRational::from_integer(BigInt::from(s));
            return QuadReal { a, b: BigRational::zero(), q: 1 };
        }
        QuadReal { a, b, q }
    }

    pub fn rational(a: BigRational) -> QuadReal {
        QuadReal { a, b: BigRational::zero(), q: 1 }
    }

    pub fn int(n: i64) -> QuadReal {
        QuadReal::rational(rat(n))
    }

    /// `√q` itself.
    pub fn sqrt_of(q: u64) -> QuadReal {
        QuadReal::new(BigRational::zero(), BigRational::one(), q)
    }

    /// `a + b·√q` with integer parts.
    pub fn from_ints(a: i64, b: i64, q: u64) -> QuadReal {
        QuadReal::new(rat(a), rat(b), q)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand; 1 when the value is rational.
    pub fn radicand(&self) -> u64 {
        self.q
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    fn common_radicand(&self, other: &QuadReal) -> u64 {
        match (self.q, other.q) {
            (1, x) | (x, 1) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("QuadReal radicand mismatch: {x} vs {y}"),
        }
    }

    /// Exact sign, decided by comparing `a²` with `b²q` when the parts disagree.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        if sb == Sign::Zero || sa == sb {
            return sa;
        }
        if sa == Sign::Zero {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.q));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Sign::Zero,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn conj(&self) -> QuadReal {
        QuadReal { a: self.a.clone(), b: -&self.b, q: self.q }
    }

    /// Field norm `a² − b²q`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.q))
    }

    pub fn abs(&self) -> QuadReal {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> QuadReal {
        let mut acc = QuadReal::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> QuadReal {
        QuadReal::new(&self.a * r, &self.b * r, self.q)
    }

    pub fn floor(&self) -> BigInt {
        let t = floor_sqrt_rational(&(&self.b * &self.b * BigRational::from_integer(BigInt::from(self.q))));
        let radical = if self.b.is_negative() { -t - 1 } else { t };
        let mut n = self.a.floor().to_integer() + radical;
        while (self - &QuadReal::from(n.clone())).is_negative() {
            n -= 1;
        }
        while !(self - &QuadReal::from(&n + 1)).is_negative() {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.q as f64).sqrt()
    }

    pub fn max(self, other: QuadReal) -> QuadReal {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: QuadReal) -> QuadReal {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
        }
    }
}

impl From<i64> for QuadReal {
    fn from(n: i64) -> Self {
        QuadReal::int(n)
    }
}

impl From<BigInt> for QuadReal {
    fn from(n: BigInt) -> Self {
        QuadReal::rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for QuadReal {
    fn from(r: BigRational) -> Self {
        QuadReal::rational(r)
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        if rhs.b.is_zero() {
            return QuadReal { a: &self.a + &rhs.a, b: self.b.clone(), q: self.q };
        }
        if self.b.is_zero() {
            return QuadReal { a: &self.a + &rhs.a, b: rhs.b.clone(), q: rhs.q };
        }
        let q = self.common_radicand(rhs);
        QuadReal::new(&self.a + &rhs.a, &self.b + &rhs.b, q)
    }
}

impl<'a> Sub<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        if rhs.b.is_zero() {
            return QuadReal { a: &self.a - &rhs.a, b: self.b.clone(), q: self.q };
        }
        if self.b.is_zero() {
            return QuadReal { a: &self.a - &rhs.a, b: -&rhs.b, q: rhs.q };
        }
        let q = self.common_radicand(rhs);
        QuadReal::new(&self.a - &rhs.a, &self.b - &rhs.b, q)
    }
}

impl<'a> Mul<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        if self.b.is_zero() {
            if rhs.b.is_zero() {
                return QuadReal::rational(&self.a * &rhs.a);
            }
            return QuadReal::new(&self.a * &rhs.a, &self.a * &rhs.b, rhs.q);
        }
        if rhs.b.is_zero() {
            return QuadReal::new(&self.a * &rhs.a, &self.b * &rhs.a, self.q);
        }
        let q = self.common_radicand(rhs);
        let qr = BigRational::from_integer(BigInt::from(q));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * qr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadReal::new(a, b, q)
    }
}

impl<'a> Div<&'a QuadReal> for &'a QuadReal {
    type Output = QuadReal;
    fn div(self, rhs: &QuadReal) -> QuadReal {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "QuadReal division by zero");
            return QuadReal::new(&self.a / &rhs.a, &self.b / &rhs.a, self.q);
        }
        let n = rhs.norm();
        let num = self * &rhs.conj();
        QuadReal::new(&num.a / &n, &num.b / &n, num.q)
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal { a: -&self.a, b: -&self.b, q: self.q }
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal { a: -self.a, b: -self.b, q: self.q }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadReal> for QuadReal {
            type Output = QuadReal;
            fn $m(self, rhs: QuadReal) -> QuadReal {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadReal> for QuadReal {
            type Output = QuadReal;
            fn $m(self, rhs: &QuadReal) -> QuadReal {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<QuadReal> for &'a QuadReal {
            type Output = QuadReal;
            fn $m(self, rhs: QuadReal) -> QuadReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Zero for QuadReal {
    fn zero() -> Self {
        QuadReal::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadReal {
    fn one() -> Self {
        QuadReal::rational(BigRational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        assert_eq!(QuadReal::from_ints(3, -2, 2).sign(), Sign::Positive);
        assert_eq!(QuadReal::from_ints(0, 0, 5).sign(), Sign::Zero);
        assert_eq!(QuadReal::from_ints(-7, 5, 2).sign(), Sign::Positive);
        assert_eq!(QuadReal::from_ints(-8, 5, 3).sign(), Sign::Positive);
        assert_eq!(QuadReal::from_ints(-9, 5, 3).sign(), Sign::Negative);
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let x = QuadReal::from_ints(1, 2, 9);
        assert!(x.is_rational());
        assert_eq!(x, QuadReal::int(7));
    }

    #[test]
    fn field_ops() {
        let r2 = QuadReal::sqrt_of(2);
        assert_eq!(&r2 * &r2, QuadReal::int(2));
        let x = QuadReal::from_ints(3, -2, 2);
        let y = QuadReal::from_ints(1, 1, 2);
        assert_eq!(&(&x / &y) * &y, x);
        assert_eq!((&x * &x.conj()).as_rational().cloned(), Some(x.norm()));
    }

    #[test]
    fn floor_ceil() {
        let x = QuadReal::from_ints(0, 2, 2);
        assert_eq!(x.floor(), BigInt::from(2));
        assert_eq!(x.ceil(), BigInt::from(3));
        assert_eq!((-&x).floor(), BigInt::from(-3));
        let half = QuadReal::rational(rat_frac(7, 2));
        assert_eq!(half.floor(), BigInt::from(3));
        assert_eq!(QuadReal::int(-4).floor(), BigInt::from(-4));
        assert_eq!(QuadReal::int(-4).ceil(), BigInt::from(-4));
        let big = QuadReal::new(rat_frac(-1, 3), rat_frac(41, 7), 13);
        assert_eq!(big.floor(), BigInt::from((-1.0 / 3.0 + 41.0 / 7.0 * 13f64.sqrt()).floor() as i64));
    }
}
