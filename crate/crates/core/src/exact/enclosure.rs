use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::quad::QuadReal;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// Precision schedule shared by every enclosure-driven decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub initial_bits: u32,
    pub cap_bits: u32,
    /// When enclosures stay ambiguous at the cap, decide exactly instead of
    /// failing with `PrecisionExhausted`.
    pub exact_fallback: bool,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { initial_bits: DEFAULT_PRECISION, cap_bits: DEFAULT_PRECISION_CAP, exact_fallback: true }
    }
}

impl PrecisionConfig {
    pub fn with_cap(cap_bits: u32) -> Self {
        PrecisionConfig { cap_bits, ..Default::default() }
    }

    /// The initial precision, clamped to the cap.
    pub fn start_bits(&self) -> u32 {
        self.initial_bits.clamp(2, self.cap_bits.max(2))
    }

    /// Precisions to try: the initial value doubled until the cap, which is
    /// always the last entry.
    pub fn schedule(&self) -> Vec<u32> {
        let cap = self.cap_bits.max(2);
        let mut p = self.start_bits();
        let mut out = vec![p];
        while p < cap {
            p = (p.saturating_mul(2)).min(cap);
            out.push(p);
        }
        out
    }

    /// Schedule for comparisons that may be exact ties: with an exact
    /// fallback available only the first three steps are tried, since ties
    /// never separate.
    pub fn refinement_schedule(&self) -> Vec<u32> {
        let mut s = self.schedule();
        if self.exact_fallback {
            s.truncate(3);
        }
        s
    }
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << p as usize
}

fn shift(x: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        x << by as usize
    } else {
        x.div_floor(&pow2((-by) as u32))
    }
}

fn shift_ceil(x: &BigInt, by: i64) -> BigInt {
    if by >= 0 {
        x << by as usize
    } else {
        -(-x).div_floor(&pow2((-by) as u32))
    }
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}

/// `floor(∛n)` for any integer.
fn floor_cbrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        -ceil_cbrt(&-n)
    } else {
        n.cbrt()
    }
}

fn ceil_cbrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        -floor_cbrt(&-n)
    } else {
        let s = n.cbrt();
        if &s * &s * &s == *n {
            s
        } else {
            s + 1
        }
    }
}

/// Rigorous real interval `[lo·2⁻ᵖ, hi·2⁻ᵖ]` with outward rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl Enclosure {
    fn raw(lo: BigInt, hi: BigInt, prec: u32) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi, prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Enclosure {
        let v = n << prec as usize;
        Enclosure::raw(v.clone(), v, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Enclosure {
        let n = r.numer() << prec as usize;
        let lo = n.div_floor(r.denom());
        let hi = -(-&n).div_floor(r.denom());
        Enclosure::raw(lo, hi, prec)
    }

    /// `±√r` for a rational `r ≥ 0`, sign given by `negative`.
    fn signed_sqrt_rational(r: &BigRational, negative: bool, prec: u32) -> Enclosure {
        let n = r.numer() << (2 * prec as usize);
        let lo = n.div_floor(r.denom()).sqrt();
        let hi = ceil_sqrt(&(-(-&n).div_floor(r.denom())));
        if negative {
            Enclosure::raw(-hi, -lo, prec)
        } else {
            Enclosure::raw(lo, hi, prec)
        }
    }

    pub fn from_quad(x: &QuadReal, prec: u32) -> Enclosure {
        let a = Enclosure::from_rational(x.rational_part(), prec);
        if x.is_rational() {
            return a;
        }
        let b = x.radical_part();
        let b2q = b * b * BigRational::from_integer(BigInt::from(x.radicand()));
        a.add(&Enclosure::signed_sqrt_rational(&b2q, b.is_negative(), prec))
    }

    pub fn hull_of(lo: &BigRational, hi: &BigRational, prec: u32) -> Enclosure {
        let l = Enclosure::from_rational(lo, prec);
        let h = Enclosure::from_rational(hi, prec);
        Enclosure::raw(l.lo, h.hi, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.prec))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.prec))
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, pow2(self.prec + 1))
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow2(self.prec + 1))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lower() <= *r && *r <= self.upper()
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        let (a, b) = align(self, other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    /// Exact comparison with a quadratic-field value, `None` if it lies inside.
    pub fn cmp_quad(&self, x: &QuadReal) -> Option<Ordering> {
        if QuadReal::from(self.upper()) < *x {
            Some(Ordering::Less)
        } else if QuadReal::from(self.lower()) > *x {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// `Some(true)` if certainly `self ≤ other`, `Some(false)` if certainly `self > other`.
    pub fn le(&self, other: &Enclosure) -> Option<bool> {
        let (a, b) = align(self, other);
        if a.hi <= b.lo {
            Some(true)
        } else if a.lo > b.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn at_prec(&self, prec: u32) -> Enclosure {
        let d = prec as i64 - self.prec as i64;
        Enclosure::raw(shift(&self.lo, d), shift_ceil(&self.hi, d), prec)
    }

    /// `(floor(lower), floor(upper))` as integers.
    pub fn floor_bounds(&self) -> (BigInt, BigInt) {
        let d = pow2(self.prec);
        (self.lo.div_floor(&d), self.hi.div_floor(&d))
    }

    /// `(ceil(lower), ceil(upper))` as integers.
    pub fn ceil_bounds(&self) -> (BigInt, BigInt) {
        let d = pow2(self.prec);
        (-(-&self.lo).div_floor(&d), -(-&self.hi).div_floor(&d))
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::raw(-&self.hi, -&self.lo, self.prec)
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        let (a, b) = align(self, other);
        Enclosure::raw(&a.lo + &b.lo, &a.hi + &b.hi, a.prec)
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let (a, b) = align(self, other);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let mn = products.iter().min().unwrap();
        let mx = products.iter().max().unwrap();
        let p = a.prec as i64;
        Enclosure::raw(shift(mn, -p), shift_ceil(mx, -p), a.prec)
    }

    pub fn sqr(&self) -> Enclosure {
        let r = self.mul(self);
        if self.contains_zero() {
            Enclosure::raw(BigInt::zero(), r.hi, r.prec)
        } else {
            r
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Enclosure {
        self.mul(&Enclosure::from_rational(r, self.prec))
    }

    pub fn mul_int(&self, k: i64) -> Enclosure {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if k.is_negative() {
            Enclosure::raw(b, a, self.prec)
        } else {
            Enclosure::raw(a, b, self.prec)
        }
    }

    /// Division; `None` when the divisor contains zero.
    pub fn div(&self, other: &Enclosure) -> Option<Enclosure> {
        if other.contains_zero() {
            return None;
        }
        let (a, b) = align(self, other);
        let p = a.prec as usize;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&a.lo, &a.hi] {
            for d in [&b.lo, &b.hi] {
                let num = n << p;
                let (fl, cl) = if d.is_negative() {
                    let (nn, dd) = (-&num, -d);
                    (nn.div_floor(&dd), -(-&nn).div_floor(&dd))
                } else {
                    (num.div_floor(d), -(-&num).div_floor(d))
                };
                lo = Some(lo.map_or(fl.clone(), |v| v.min(fl)));
                hi = Some(hi.map_or(cl.clone(), |v| v.max(cl)));
            }
        }
        Some(Enclosure::raw(lo.unwrap(), hi.unwrap(), a.prec))
    }

    /// Square root; `Err` if certainly negative, `Ok(None)` if undecided.
    pub fn sqrt(&self) -> Result<Option<Enclosure>> {
        if self.is_negative() {
            return Err(Error::DomainError("square root of a negative value".into()));
        }
        if self.lo.is_negative() {
            return Ok(None);
        }
        Ok(Some(self.sqrt_clamped()))
    }

    /// Square root of the non-negative part; for values known to be `≥ 0`.
    pub fn sqrt_clamped(&self) -> Enclosure {
        let p = self.prec as usize;
        let lo = if self.lo.is_positive() { (&self.lo << p).sqrt() } else { BigInt::zero() };
        let hi = if self.hi.is_positive() { ceil_sqrt(&(&self.hi << p)) } else { BigInt::zero() };
        Enclosure::raw(lo, hi, self.prec)
    }

    /// Real cube root.
    pub fn cbrt(&self) -> Enclosure {
        let p = 2 * self.prec as usize;
        Enclosure::raw(floor_cbrt(&(&self.lo << p)), ceil_cbrt(&(&self.hi << p)), self.prec)
    }

    pub fn max(&self, other: &Enclosure) -> Enclosure {
        let (a, b) = align(self, other);
        Enclosure::raw(a.lo.clone().max(b.lo.clone()), a.hi.clone().max(b.hi.clone()), a.prec)
    }

    pub fn min(&self, other: &Enclosure) -> Enclosure {
        let (a, b) = align(self, other);
        Enclosure::raw(a.lo.clone().min(b.lo.clone()), a.hi.clone().min(b.hi.clone()), a.prec)
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let (a, b) = align(self, other);
        Enclosure::raw(a.lo.clone().min(b.lo.clone()), a.hi.clone().max(b.hi.clone()), a.prec)
    }

    /// `[max(lo, 0), hi]`, for values known to be non-negative.
    pub fn clamp_nonneg(&self) -> Enclosure {
        Enclosure::raw(self.lo.clone().max(BigInt::zero()), self.hi.clone().max(BigInt::zero()), self.prec)
    }
}

fn align<'a>(a: &'a Enclosure, b: &'a Enclosure) -> (std::borrow::Cow<'a, Enclosure>, std::borrow::Cow<'a, Enclosure>) {
    use std::borrow::Cow;
    match a.prec.cmp(&b.prec) {
        Ordering::Equal => (Cow::Borrowed(a), Cow::Borrowed(b)),
        Ordering::Less => (Cow::Owned(a.at_prec(b.prec)), Cow::Borrowed(b)),
        Ordering::Greater => (Cow::Borrowed(a), Cow::Owned(b.at_prec(a.prec))),
    }
}

/// Order statistics of a family of enclosures: the `k`-th output encloses the
/// `k`-th smallest of the enclosed values, whatever the overlaps.
pub fn sorted_enclosures(values: &[Enclosure]) -> Vec<Enclosure> {
    let prec = values.iter().map(|e| e.prec).max().unwrap_or(0);
    let aligned: Vec<Enclosure> = values.iter().map(|e| e.at_prec(prec)).collect();
    let mut los: Vec<BigInt> = aligned.iter().map(|e| e.lo.clone()).collect();
    let mut his: Vec<BigInt> = aligned.iter().map(|e| e.hi.clone()).collect();
    los.sort();
    his.sort();
    los.into_iter().zip(his).map(|(lo, hi)| Enclosure::raw(lo, hi, prec)).collect()
}

/// Rectangle in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexEnclosure {
    pub re: Enclosure,
    pub im: Enclosure,
}

impl ComplexEnclosure {
    pub fn real(re: Enclosure) -> Self {
        let im = Enclosure::from_int(&BigInt::zero(), re.prec);
        ComplexEnclosure { re, im }
    }

    pub fn new(re: Enclosure, im: Enclosure) -> Self {
        ComplexEnclosure { re, im }
    }

    pub fn precision(&self) -> u32 {
        self.re.prec.max(self.im.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexEnclosure { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexEnclosure { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexEnclosure { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        ComplexEnclosure { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexEnclosure {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &Enclosure) -> Self {
        ComplexEnclosure { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = o.re.sqr().add(&o.im.sqr());
        let num = self.mul(&o.conj());
        Some(ComplexEnclosure { re: num.re.div(&den)?, im: num.im.div(&den)? })
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Some `n`-th root (`n` = 2 or 3) of every value in the rectangle lies in
    /// the result. A Newton approximation `w` is certified by the inclusion
    /// disc `|w − ω| ≤ |wⁿ − z| / |w|ⁿ⁻¹`.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n == 2 || n == 3);
        let prec = self.precision();
        let work = prec + 32;
        let z = ComplexEnclosure { re: self.re.at_prec(work), im: self.im.at_prec(work) };
        if !z.contains_zero() {
            if let Some(w) = newton_root(&z, n, work) {
                if let Some(r) = certify_root(&z, &w, n, work) {
                    return r.round_to(prec);
                }
            }
        }
        root_modulus_disc(&z, n, work).round_to(prec)
    }

    fn round_to(&self, prec: u32) -> Self {
        ComplexEnclosure { re: self.re.at_prec(prec), im: self.im.at_prec(prec) }
    }

    /// Upper bound on the modulus, as a fixed-point integer at this precision.
    fn modulus_upper(&self) -> BigInt {
        let m = self.re.lo.abs().max(self.re.hi.abs());
        let k = self.im.lo.abs().max(self.im.hi.abs());
        ceil_sqrt(&(&m * &m + &k * &k))
    }
}

fn midpoint_int(e: &Enclosure) -> BigInt {
    (&e.lo + &e.hi).div_floor(&BigInt::from(2))
}

fn to_f64_scaled(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits() as i64;
    let s = (bits - 60).max(0);
    let m = shift(x, -s).to_f64().unwrap_or(0.0);
    m * 2f64.powi((s - prec as i64) as i32)
}

fn from_f64_scaled(v: f64, prec: u32) -> Option<BigInt> {
    if !v.is_finite() {
        return None;
    }
    let m = BigInt::from_f64(v * 2f64.powi(60))?;
    Some(shift(&m, prec as i64 - 60))
}

fn fx_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt), w: u32) -> (BigInt, BigInt) {
    let re = &a.0 * &b.0 - &a.1 * &b.1;
    let im = &a.0 * &b.1 + &a.1 * &b.0;
    (shift(&re, -(w as i64)), shift(&im, -(w as i64)))
}

fn fx_div(a: &(BigInt, BigInt), b: &(BigInt, BigInt), w: u32) -> Option<(BigInt, BigInt)> {
    let den = &b.0 * &b.0 + &b.1 * &b.1;
    if den.is_zero() {
        return None;
    }
    let re = (&a.0 * &b.0 + &a.1 * &b.1) << w as usize;
    let im = (&a.1 * &b.0 - &a.0 * &b.1) << w as usize;
    Some((re.div_floor(&den), im.div_floor(&den)))
}

fn newton_root(z: &ComplexEnclosure, n: u32, w: u32) -> Option<(BigInt, BigInt)> {
    let zm = (midpoint_int(&z.re), midpoint_int(&z.im));
    let (zr, zi) = (to_f64_scaled(&zm.0, w), to_f64_scaled(&zm.1, w));
    let modulus = zr.hypot(zi);
    if modulus == 0.0 || !modulus.is_finite() {
        return None;
    }
    let arg = zi.atan2(zr) / n as f64;
    let r = modulus.powf(1.0 / n as f64);
    let mut x = (from_f64_scaled(r * arg.cos(), w)?, from_f64_scaled(r * arg.sin(), w)?);
    let nb = BigInt::from(n);
    let nm1 = BigInt::from(n - 1);
    for _ in 0..64 {
        let mut pw = (BigInt::one() << w as usize, BigInt::zero());
        for _ in 0..n - 1 {
            pw = fx_mul(&pw, &x, w);
        }
        let q = fx_div(&zm, &pw, w)?;
        let next = (
            (&x.0 * &nm1 + &q.0).div_floor(&nb),
            (&x.1 * &nm1 + &q.1).div_floor(&nb),
        );
        let done = (&next.0 - &x.0).abs() <= BigInt::from(4) && (&next.1 - &x.1).abs() <= BigInt::from(4);
        x = next;
        if done {
            break;
        }
    }
    Some(x)
}

fn certify_root(z: &ComplexEnclosure, x: &(BigInt, BigInt), n: u32, w: u32) -> Option<ComplexEnclosure> {
    let wx = ComplexEnclosure::new(Enclosure::raw(x.0.clone(), x.0.clone(), w), Enclosure::raw(x.1.clone(), x.1.clone(), w));
    let mut pw = wx.clone();
    for _ in 1..n {
        pw = pw.mul(&wx);
    }
    let err = pw.sub(z).modulus_upper();
    let m2 = &x.0 * &x.0 + &x.1 * &x.1;
    if m2.is_zero() {
        return None;
    }
    let radius = if n == 3 {
        let num = err << (2 * w as usize);
        -(-num).div_floor(&m2)
    } else {
        let m = m2.sqrt();
        if m.is_zero() {
            return None;
        }
        let num = err << w as usize;
        -(-num).div_floor(&m)
    };
    Some(ComplexEnclosure::new(
        Enclosure::raw(&x.0 - &radius, &x.0 + &radius, w),
        Enclosure::raw(&x.1 - &radius, &x.1 + &radius, w),
    ))
}

fn root_modulus_disc(z: &ComplexEnclosure, n: u32, w: u32) -> ComplexEnclosure {
    let m = z.modulus_upper();
    let r = if n == 3 { ceil_cbrt(&(m << (2 * w as usize))) } else { ceil_sqrt(&(m << w as usize)) };
    let e = Enclosure::raw(-&r, r, w);
    ComplexEnclosure::new(e.clone(), e)
}

/// Radical expression over Q(√q); complex values enter through `Complex`.
#[derive(Clone, Debug)]
pub enum Expr {
    Const(QuadReal),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Real square root of a real value, principal root of a complex value.
    Sqrt(Box<Expr>),
    /// Real cube root of a real value, some cube root of a complex value.
    Cbrt(Box<Expr>),
    /// `x^{3/2}` of a real `x ≥ 0`.
    Pow32(Box<Expr>),
    Complex(Box<Expr>, Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
    Conj(Box<Expr>),
}

impl Expr {
    pub fn c(x: impl Into<QuadReal>) -> Expr {
        Expr::Const(x.into())
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn cbrt(self) -> Expr {
        Expr::Cbrt(Box::new(self))
    }

    pub fn pow32(self) -> Expr {
        Expr::Pow32(Box::new(self))
    }

    pub fn complex(re: Expr, im: Expr) -> Expr {
        Expr::Complex(Box::new(re), Box::new(im))
    }

    pub fn re(self) -> Expr {
        Expr::Re(Box::new(self))
    }

    pub fn im(self) -> Expr {
        Expr::Im(Box::new(self))
    }

    pub fn conj(self) -> Expr {
        Expr::Conj(Box::new(self))
    }
}

macro_rules! expr_binop {
    ($tr:ident, $m:ident, $v:ident) => {
        impl std::ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}
expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Real(Enclosure),
    Complex(ComplexEnclosure),
}

impl Value {
    fn complex(self) -> ComplexEnclosure {
        match self {
            Value::Real(e) => ComplexEnclosure::real(e),
            Value::Complex(c) => c,
        }
    }
}

enum EvalIssue {
    Domain(String),
    Unresolved,
}

fn eval(expr: &Expr, prec: u32) -> std::result::Result<Value, EvalIssue> {
    use Value::{Complex as C, Real as R};
    Ok(match expr {
        Expr::Const(x) => R(Enclosure::from_quad(x, prec)),
        Expr::Neg(a) => match eval(a, prec)? {
            R(e) => R(e.neg()),
            C(c) => C(c.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            let (x, y) = (eval(a, prec)?, eval(b, prec)?);
            match (x, y) {
                (R(x), R(y)) => R(match expr {
                    Expr::Add(..) => x.add(&y),
                    Expr::Sub(..) => x.sub(&y),
                    Expr::Mul(..) => x.mul(&y),
                    _ => {
                        if y.is_exact_zero() {
                            return Err(EvalIssue::Domain("division by zero".into()));
                        }
                        x.div(&y).ok_or(EvalIssue::Unresolved)?
                    }
                }),
                (x, y) => {
                    let (x, y) = (x.complex(), y.complex());
                    C(match expr {
                        Expr::Add(..) => x.add(&y),
                        Expr::Sub(..) => x.sub(&y),
                        Expr::Mul(..) => x.mul(&y),
                        _ => {
                            if y.re.is_exact_zero() && y.im.is_exact_zero() {
                                return Err(EvalIssue::Domain("division by zero".into()));
                            }
                            x.div(&y).ok_or(EvalIssue::Unresolved)?
                        }
                    })
                }
            }
        }
        Expr::Sqrt(a) => match eval(a, prec)? {
            R(e) => match e.sqrt() {
                Err(_) => return Err(EvalIssue::Domain("square root of a negative value".into())),
                Ok(None) => return Err(EvalIssue::Unresolved),
                Ok(Some(s)) => R(s),
            },
            C(c) => C(c.nth_root(2)),
        },
        Expr::Cbrt(a) => match eval(a, prec)? {
            R(e) => R(e.cbrt()),
            C(c) => C(c.nth_root(3)),
        },
        Expr::Pow32(a) => match eval(a, prec)? {
            R(e) => match e.sqrt() {
                Err(_) => return Err(EvalIssue::Domain("x^(3/2) of a negative value".into())),
                Ok(None) => return Err(EvalIssue::Unresolved),
                Ok(Some(s)) => R(e.mul(&s)),
            },
            C(_) => return Err(EvalIssue::Domain("x^(3/2) of a complex value".into())),
        },
        Expr::Complex(a, b) => {
            let re = match eval(a, prec)? {
                R(e) => e,
                C(_) => return Err(EvalIssue::Domain("complex real part".into())),
            };
            let im = match eval(b, prec)? {
                R(e) => e,
                C(_) => return Err(EvalIssue::Domain("complex imaginary part".into())),
            };
            C(ComplexEnclosure::new(re, im))
        }
        Expr::Re(a) => R(eval(a, prec)?.complex().re),
        Expr::Im(a) => R(eval(a, prec)?.complex().im),
        Expr::Conj(a) => match eval(a, prec)? {
            R(e) => R(e),
            C(c) => C(c.conj()),
        },
    })
}

/// Encloses a real-valued expression at `prec` fractional bits, doubling the
/// working precision (up to `cap`) while a sign or division stays undecided.
pub fn enclose(expr: &Expr, prec: u32) -> Result<Enclosure> {
    enclose_with(expr, &PrecisionConfig { initial_bits: prec, cap_bits: prec.max(DEFAULT_PRECISION_CAP), exact_fallback: true })
}

pub fn enclose_with(expr: &Expr, cfg: &PrecisionConfig) -> Result<Enclosure> {
    for p in cfg.schedule() {
        match eval(expr, p) {
            Ok(Value::Real(e)) => return Ok(e),
            Ok(Value::Complex(c)) => {
                if !c.im.contains_zero() {
                    return Err(Error::DomainError("expression is not real".into()));
                }
                return Ok(c.re);
            }
            Err(EvalIssue::Domain(m)) => return Err(Error::DomainError(m)),
            Err(EvalIssue::Unresolved) => {}
        }
    }
    Err(Error::PrecisionExhausted { bits: cfg.cap_bits })
}

/// Like [`enclose_with`] but keeps doubling until the radius is at most `target`.
pub fn enclose_to_radius(expr: &Expr, cfg: &PrecisionConfig, target: &BigRational) -> Result<Enclosure> {
    for p in cfg.schedule() {
        let e = enclose_with(expr, &PrecisionConfig { initial_bits: p, cap_bits: p, exact_fallback: cfg.exact_fallback });
        match e {
            Ok(e) if e.radius() <= *target => return Ok(e),
            Ok(_) | Err(Error::PrecisionExhausted { .. }) => {}
            Err(err) => return Err(err),
        }
    }
    Err(Error::PrecisionExhausted { bits: cfg.cap_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::quad::{rat, rat_frac};

    #[test]
    fn sqrt_two() {
        let e = enclose(&Expr::c(2).sqrt(), 64).unwrap();
        assert!(e.radius() < BigRational::new(BigInt::one(), pow2(60)));
        assert!((e.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pow32_example() {
        // (9·0² − 24·0 + 96·2)^{3/2} / 216
        let e = enclose(&(Expr::c(192).pow32() / Expr::c(216)), 128).unwrap();
        assert!((e.to_f64() - 192f64.powf(1.5) / 216.0).abs() < 1e-12);
    }

    #[test]
    fn cbrt_zero_is_exact() {
        let e = enclose(&Expr::c(0).cbrt(), 64).unwrap();
        assert!(e.is_exact_zero());
    }

    #[test]
    fn negative_sqrt_is_domain_error() {
        assert!(matches!(enclose(&Expr::c(-1).sqrt(), 64), Err(Error::DomainError(_))));
    }

    #[test]
    fn complex_cube_root() {
        // a cube root of −8 + 0i, taken through the complex path
        let z = Expr::complex(Expr::c(-8), Expr::c(0));
        for p in [32, 128, 512] {
            let c = match eval(&z.clone().cbrt(), p) {
                Ok(Value::Complex(c)) => c,
                _ => panic!(),
            };
            let (re, im) = (c.re.to_f64(), c.im.to_f64());
            let cube = (re * re - im * im) * re - 2.0 * re * im * im;
            assert!((cube + 8.0).abs() < 1e-9, "{re} {im}");
            assert!(c.re.radius() < BigRational::new(BigInt::one(), pow2(p / 2)));
        }
    }

    #[test]
    fn quad_enclosure_contains_value() {
        let x = QuadReal::new(rat_frac(-3, 7), rat(5), 2);
        let e = Enclosure::from_quad(&x, 80);
        assert_eq!(e.cmp_quad(&x), None);
        assert!((e.to_f64() - x.to_f64()).abs() < 1e-15);
    }

    #[test]
    fn order_statistics() {
        let a = Enclosure::hull_of(&rat(3), &rat(5), 16);
        let b = Enclosure::hull_of(&rat(1), &rat(4), 16);
        let s = sorted_enclosures(&[a, b]);
        assert_eq!(s[0].lower(), rat(1));
        assert_eq!(s[0].upper(), rat(4));
        assert_eq!(s[1].upper(), rat(5));
    }
}
