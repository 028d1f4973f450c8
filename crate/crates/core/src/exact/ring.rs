use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quad::{QuadReal, Sign};

/// Commutative ring of polynomial coefficients.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

pub trait Field: Ring + Div<Output = Self> {
    fn div_ref(&self, rhs: &Self) -> Self;
}

/// A field with an exact sign test.
pub trait OrderedField: Field {
    fn sign(&self) -> Sign;

    fn abs_val(&self) -> Self {
        match self.sign() {
            Sign::Negative => self.neg_ref(),
            _ => self.clone(),
        }
    }
}

macro_rules! ring_by_ref_ops {
    ($t:ty) => {
        fn add_ref(&self, rhs: &Self) -> Self {
            self + rhs
        }
        fn sub_ref(&self, rhs: &Self) -> Self {
            self - rhs
        }
        fn mul_ref(&self, rhs: &Self) -> Self {
            self * rhs
        }
        fn neg_ref(&self) -> Self {
            -self
        }
    };
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
    ring_by_ref_ops!(BigInt);
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    ring_by_ref_ops!(BigRational);
}

impl Field for BigRational {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl OrderedField for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Ring for QuadReal {
    fn from_i64(n: i64) -> Self {
        QuadReal::from(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        QuadReal::from(n.clone())
    }
    ring_by_ref_ops!(QuadReal);
}

impl Field for QuadReal {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl OrderedField for QuadReal {
    fn sign(&self) -> Sign {
        QuadReal::sign(self)
    }
}
