use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::quad::{QuadReal, Sign};
use super::ring::Field;
use crate::error::{Error, Result};

/// Interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    At(QuadReal),
    PosInf,
}

impl Endpoint {
    pub fn at(x: impl Into<QuadReal>) -> Endpoint {
        Endpoint::At(x.into())
    }

    fn le(&self, other: &Endpoint) -> bool {
        match (self, other) {
            (Endpoint::NegInf, _) | (_, Endpoint::PosInf) => true,
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => false,
            (Endpoint::At(a), Endpoint::At(b)) => a <= b,
        }
    }
}

fn sign_at(p: &Poly<QuadReal>, at: &Endpoint) -> Sign {
    match at {
        Endpoint::At(x) => p.eval(x).sign(),
        Endpoint::PosInf => p.lc().sign(),
        Endpoint::NegInf => {
            let s = p.lc().sign();
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.flip()
            } else {
                s
            }
        }
    }
}

/// Sturm sequence of a squarefree polynomial over Q(√q).
///
/// Remainders are negated and divided by the absolute value of their leading
/// coefficient, which keeps the sign pattern intact.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly<QuadReal>>,
}

impl SturmChain {
    pub fn new(p: &Poly<QuadReal>) -> Result<SturmChain> {
        if p.is_zero() {
            return Err(Error::InvalidArgument("Sturm chain of the zero polynomial".into()));
        }
        let mut chain = vec![p.normalize_abs()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.normalize_abs());
            loop {
                let n = chain.len();
                let r = chain[n - 2].div_rem(&chain[n - 1]).1;
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().normalize_abs());
            }
        }
        if chain.last().and_then(|l| l.degree()).unwrap_or(0) > 0 {
            return Err(Error::NotSquarefree);
        }
        Ok(SturmChain { chain })
    }

    pub fn poly(&self) -> &Poly<QuadReal> {
        &self.chain[0]
    }

    fn variations(&self, at: &Endpoint) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for p in &self.chain {
            let s = sign_at(p, at);
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Endpoint, hi: &Endpoint) -> usize {
        if hi.le(lo) {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Distinct real roots of a squarefree `p` in `(lo, hi]`.
pub fn sturm_count(p: &Poly<QuadReal>, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// Yun's squarefree decomposition: monic, pairwise coprime factors with their
/// multiplicities, in increasing multiplicity order. Constants yield `[]`.
pub fn squarefree_decompose<T: Field>(p: &Poly<T>) -> Vec<(Poly<T>, u32)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a);
        let nc = d.exact_div(&a);
        d = nc.sub(&nb.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_part<T: Field>(p: &Poly<T>) -> Poly<T> {
    if p.degree().unwrap_or(0) == 0 {
        return p.monic();
    }
    p.monic().exact_div(&p.gcd(&p.derivative()))
}

/// Real roots in `(lo, hi]` counted with multiplicity.
pub fn count_real_roots_with_multiplicity(p: &Poly<QuadReal>, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("root count of the zero polynomial".into()));
    }
    let mut total = 0;
    for (factor, m) in squarefree_decompose(p) {
        total += m as usize * SturmChain::new(&factor)?.count(lo, hi);
    }
    Ok(total)
}

/// Multiplicity of `x` as a root of the nonzero polynomial `p`.
pub fn multiplicity_at(p: &Poly<QuadReal>, x: &QuadReal) -> usize {
    let mut k = 0;
    let mut d = p.clone();
    while !d.is_zero() && d.eval(x).is_zero() {
        k += 1;
        d = d.derivative();
    }
    k
}

/// Roots in the closed interval `[lo, hi]`, with multiplicity.
pub fn count_roots_closed(p: &Poly<QuadReal>, lo: &QuadReal, hi: &QuadReal) -> Result<usize> {
    if hi < lo {
        return Ok(0);
    }
    let open = count_real_roots_with_multiplicity(p, &Endpoint::At(lo.clone()), &Endpoint::At(hi.clone()))?;
    Ok(open + multiplicity_at(p, lo))
}

/// Whether every complex root of `p` is real (counted with multiplicity).
pub fn all_roots_real(p: &Poly<QuadReal>) -> Result<bool> {
    let n = p.degree().unwrap_or(0);
    Ok(count_real_roots_with_multiplicity(p, &Endpoint::NegInf, &Endpoint::PosInf)? == n)
}

/// Rational upper bound on `|x|`.
pub(crate) fn abs_upper(x: &QuadReal) -> BigRational {
    let sq = BigInt::from(x.radicand()).sqrt() + 1;
    x.rational_part().abs() + x.radical_part().abs() * BigRational::from_integer(sq)
}

/// Rational lower bound on `|x|` for nonzero `x`, strictly positive.
fn abs_lower(x: &QuadReal) -> BigRational {
    let mut lo = BigRational::zero();
    let mut step = abs_upper(x);
    let ax = x.abs();
    // bisect down until a positive lower bound is certified
    while lo.is_zero() {
        step = step / BigRational::from_integer(BigInt::from(2));
        if ax >= QuadReal::from(step.clone()) {
            lo = step.clone();
        }
    }
    lo
}

/// A power of two strictly larger than every root's absolute value (Cauchy).
pub fn root_bound(p: &Poly<QuadReal>) -> BigRational {
    let lc = abs_lower(&p.lc());
    let mut m = BigRational::zero();
    let n = p.coeffs().len();
    for c in &p.coeffs()[..n.saturating_sub(1)] {
        let r = abs_upper(c) / &lc;
        if r > m {
            m = r;
        }
    }
    let target = m + BigRational::one();
    let mut b = BigRational::one();
    while b <= target {
        b = b * BigRational::from_integer(BigInt::from(2));
    }
    b
}

/// An isolated real root: either an exact value or the unique root of a
/// squarefree defining polynomial inside the half-open interval `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct RealRoot {
    chain: Arc<SturmChain>,
    location: RootLocation,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootLocation {
    Exact(QuadReal),
    Interval { lo: BigRational, hi: BigRational },
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

fn at_rat(r: &BigRational) -> Endpoint {
    Endpoint::At(QuadReal::from(r.clone()))
}

impl RealRoot {
    pub fn defining(&self) -> &Poly<QuadReal> {
        self.chain.poly()
    }

    pub fn location(&self) -> &RootLocation {
        &self.location
    }

    pub fn exact(&self) -> Option<&QuadReal> {
        match &self.location {
            RootLocation::Exact(x) => Some(x),
            _ => None,
        }
    }

    /// Rational bounds `(lo, hi)` with `lo ≤ root ≤ hi`.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        match &self.location {
            RootLocation::Exact(x) => {
                let f = QuadReal::from(BigRational::from_integer(x.floor()));
                if f == *x {
                    let r = x.rational_part().clone();
                    (r.clone(), r)
                } else {
                    let lo = BigRational::from_integer(x.floor());
                    (lo.clone(), lo + BigRational::one())
                }
            }
            RootLocation::Interval { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn approx(&self) -> f64 {
        match &self.location {
            RootLocation::Exact(x) => x.to_f64(),
            RootLocation::Interval { lo, hi } => QuadReal::from(half(lo, hi)).to_f64(),
        }
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        let RootLocation::Interval { lo, hi } = &self.location else {
            return;
        };
        let mid = half(lo, hi);
        let mq = QuadReal::from(mid.clone());
        if self.chain.poly().eval(&mq).is_zero() {
            self.location = RootLocation::Exact(mq);
        } else if self.chain.count(&at_rat(lo), &at_rat(&mid)) == 1 {
            self.location = RootLocation::Interval { lo: lo.clone(), hi: mid };
        } else {
            self.location = RootLocation::Interval { lo: mid, hi: hi.clone() };
        }
    }

    /// Exact comparison of the root with `x`.
    pub fn cmp_value(&self, x: &QuadReal) -> Ordering {
        match &self.location {
            RootLocation::Exact(r) => r.cmp(x),
            RootLocation::Interval { lo, hi } => {
                let (lq, hq) = (QuadReal::from(lo.clone()), QuadReal::from(hi.clone()));
                if *x <= lq {
                    return Ordering::Greater;
                }
                if *x > hq {
                    return Ordering::Less;
                }
                if self.chain.poly().eval(x).is_zero() {
                    return Ordering::Equal;
                }
                if self.chain.count(&Endpoint::At(lq), &Endpoint::At(x.clone())) == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Exact sign of `f` at the root.
    pub fn sign_of(&self, f: &Poly<QuadReal>) -> Sign {
        if f.is_zero() {
            return Sign::Zero;
        }
        if let RootLocation::Exact(x) = &self.location {
            return f.eval(x).sign();
        }
        let g = f.gcd(self.chain.poly());
        if g.degree().unwrap_or(0) > 0 {
            let (lo, hi) = self.bounds();
            if sturm_count(&g, &at_rat(&lo), &at_rat(&hi)).unwrap_or(0) > 0 {
                return Sign::Zero;
            }
        }
        let fchain = SturmChain::new(&squarefree_part(f)).expect("squarefree part");
        let mut r = self.clone();
        loop {
            match &r.location {
                RootLocation::Exact(x) => return f.eval(x).sign(),
                RootLocation::Interval { lo, hi } => {
                    if fchain.count(&at_rat(lo), &at_rat(hi)) == 0 {
                        return f.eval(&QuadReal::from(hi.clone())).sign();
                    }
                }
            }
            r.refine();
        }
    }

    /// Exact order between two isolated roots.
    pub fn cmp_root(&self, other: &RealRoot) -> Ordering {
        if let RootLocation::Exact(x) = &other.location {
            return self.cmp_value(x);
        }
        if let RootLocation::Exact(x) = &self.location {
            return other.cmp_value(x).reverse();
        }
        let g = self.defining().gcd(other.defining());
        let common = g.degree().unwrap_or(0) > 0 && self.sign_of(&g) == Sign::Zero && other.sign_of(&g) == Sign::Zero;
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let (alo, ahi) = a.bounds();
            let (blo, bhi) = b.bounds();
            if ahi <= blo {
                return Ordering::Less;
            }
            if bhi <= alo {
                return Ordering::Greater;
            }
            if common {
                let lo = if alo < blo { alo } else { blo };
                let hi = if ahi > bhi { ahi } else { bhi };
                if sturm_count(&g, &at_rat(&lo), &at_rat(&hi)).unwrap_or(0) == 1 {
                    return Ordering::Equal;
                }
            }
            a.refine();
            b.refine();
        }
    }
}

fn isolate_squarefree(p: &Poly<QuadReal>, multiplicity: u32, out: &mut Vec<RealRoot>) -> Result<()> {
    let chain = Arc::new(SturmChain::new(p)?);
    if p.degree() == Some(1) {
        let x = -(p.coeff(0) / p.coeff(1));
        out.push(RealRoot { chain, location: RootLocation::Exact(x), multiplicity });
        return Ok(());
    }
    let m = root_bound(p);
    let mut stack = vec![(-m.clone(), m)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&at_rat(&lo), &at_rat(&hi));
        if n == 0 {
            continue;
        }
        if n == 1 {
            let root = if p.eval(&QuadReal::from(hi.clone())).is_zero() {
                RootLocation::Exact(QuadReal::from(hi))
            } else {
                RootLocation::Interval { lo, hi }
            };
            out.push(RealRoot { chain: chain.clone(), location: root, multiplicity });
            continue;
        }
        let mid = half(&lo, &hi);
        let mq = QuadReal::from(mid.clone());
        if p.eval(&mq).is_zero() {
            out.push(RealRoot { chain: chain.clone(), location: RootLocation::Exact(mq), multiplicity });
            // shrink the left piece so it no longer contains `mid`
            let mut gap = (&mid - &lo) / BigRational::from_integer(BigInt::from(2));
            while chain.count(&at_rat(&(&mid - &gap)), &at_rat(&mid)) > 1 {
                gap = gap / BigRational::from_integer(BigInt::from(2));
            }
            let left_hi = &mid - &gap;
            stack.push((mid, hi));
            stack.push((lo, left_hi));
        } else {
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    Ok(())
}

/// All real roots of a nonzero polynomial, sorted ascending, each with its
/// multiplicity.
pub fn isolate_real_roots(p: &Poly<QuadReal>) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    for (factor, m) in squarefree_decompose(p) {
        isolate_squarefree(&factor, m, &mut roots)?;
    }
    roots.sort_by(|a, b| a.cmp_root(b));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<QuadReal> {
        Poly::<QuadReal>::from_i64s(c)
    }

    #[test]
    fn sturm_examples() {
        let inf = Endpoint::PosInf;
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &Endpoint::at(0), &inf).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &Endpoint::NegInf, &inf).unwrap(), 0);
        let m = QuadReal::from_ints(0, 2, 2);
        let c = sturm_count(&p(&[0, -6, 0, 1]), &Endpoint::At(-&m), &Endpoint::At(m)).unwrap();
        assert_eq!(c, 3);
        assert_eq!(sturm_count(&p(&[1, -2, 1]), &Endpoint::NegInf, &inf), Err(Error::NotSquarefree));
    }

    #[test]
    fn half_open_interval() {
        let x2m1 = p(&[-1, 0, 1]);
        assert_eq!(sturm_count(&x2m1, &Endpoint::at(-1), &Endpoint::at(1)).unwrap(), 1);
        assert_eq!(sturm_count(&x2m1, &Endpoint::at(-2), &Endpoint::at(1)).unwrap(), 2);
    }

    #[test]
    fn squarefree_examples() {
        let f = p(&[2, -3, 0, 1]);
        let d = squarefree_decompose(&f);
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        let g = p(&[4, 0, -4, 0, 1]);
        assert_eq!(squarefree_decompose(&g), vec![(p(&[-2, 0, 1]), 2)]);
        let h = p(&[8, 0, 0, 0, 0, 0, 1]);
        assert_eq!(squarefree_decompose(&h), vec![(h.clone(), 1)]);
    }

    #[test]
    fn isolation_and_signs() {
        // (x - 1)^2 (x^2 - 2) (x + 3)
        let f = p(&[-1, 2, -1]).neg().mul(&p(&[-2, 0, 1])).mul(&p(&[3, 1]));
        let roots = isolate_real_roots(&f).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.approx()).collect();
        assert_eq!(roots.len(), 4);
        assert!((approx[0] + 3.0).abs() < 1e-9);
        assert!((approx[1] + 2f64.sqrt()).abs() < 1.0);
        assert_eq!(roots[2].multiplicity, 2);
        let x = p(&[0, 1]);
        assert_eq!(roots[1].sign_of(&x), Sign::Negative);
        assert_eq!(roots[3].sign_of(&p(&[-2, 0, 1])), Sign::Zero);
        assert_eq!(roots[3].cmp_value(&QuadReal::sqrt_of(2)), Ordering::Equal);
        assert_eq!(roots[3].cmp_value(&QuadReal::from_ints(0, 1, 3)), Ordering::Less);
    }

    #[test]
    fn closed_count() {
        let m = QuadReal::from_ints(0, 2, 2);
        // (x - 2√2)^2 (x + 1)
        let r = Poly::new(vec![-&m, QuadReal::one()]);
        let f = r.mul(&r).mul(&p(&[1, 1]));
        assert_eq!(count_roots_closed(&f, &-&m, &m).unwrap(), 3);
        assert_eq!(count_roots_closed(&f, &QuadReal::int(0), &QuadReal::int(2)).unwrap(), 0);
    }
}
