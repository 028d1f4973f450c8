use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::quad::QuadReal;
use super::ring::{Field, OrderedField, Ring};

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Trailing zeros are trimmed so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from coefficients listed from the leading term down.
    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// `x − r`.
    pub fn linear_root(r: &T) -> Self {
        Poly::new(vec![r.neg_ref(), T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficients from the leading term down.
    pub fn descending(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&T::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add_ref(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub_ref(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(T::one()), |acc, _| acc.mul(self))
    }

    /// `p(x) ↦ p(k·x + c)`.
    pub fn compose_linear(&self, k: &T, c: &T) -> Self {
        let lin = Poly::new(vec![c.clone(), k.clone()]);
        let mut acc = Poly::zero();
        for coef in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(coef.clone()));
        }
        acc
    }

    /// `p(x) ↦ p(−x)`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg_ref() } else { c.clone() })
                .collect(),
        )
    }

    /// Division by a monic divisor, valid over any ring.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let lc = divisor.lc();
        let monic = divisor.scale(&T::one().div_ref(&lc));
        let (q, r) = self.div_rem_monic(&monic);
        (q.scale(&T::one().div_ref(&lc)), r)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = T::one().div_ref(&self.lc());
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<T: OrderedField> Poly<T> {
    /// Divides by the absolute value of the leading coefficient, keeping signs.
    pub fn normalize_abs(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lc().abs_val();
        self.scale(&T::one().div_ref(&l))
    }
}

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_quad(&self) -> Poly<QuadReal> {
        self.map(|c| QuadReal::from(c.clone()))
    }
}

impl Poly<BigRational> {
    pub fn to_quad(&self) -> Poly<QuadReal> {
        self.map(|c| QuadReal::from(c.clone()))
    }
}

impl Poly<QuadReal> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| QuadReal::int(c)).collect())
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::quad::rat;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = qp(&[-2, 1]).mul(&qp(&[-1, 1])).mul(&qp(&[-1, 1]));
        let b = qp(&[-1, 1]).mul(&qp(&[3, 1]));
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn compose_and_eval() {
        let p = qp(&[1, 2, 3]);
        let shifted = p.compose_linear(&rat(1), &rat(2));
        assert_eq!(shifted.eval(&rat(0)), p.eval(&rat(2)));
        assert_eq!(p.reflect().eval(&rat(5)), p.eval(&rat(-5)));
        assert_eq!(p.derivative(), qp(&[2, 6]));
    }
}
