//! q-Weil polynomials: expansion from the coefficient prefix, the real
//! trace polynomial, the shifted polynomials `h±`, exact membership and the
//! structure of real roots.

pub mod prime;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{count_roots_closed, Poly, QuadReal};
use crate::realroots::{hyperbolic_nonneg_exact, RootMode};

pub use prime::{exact_sqrt, is_prime, prime_power};

/// A candidate `x^{2g} + a₁x^{2g−1} + … + a_g x^g + q a_{g−1}x^{g−1} + … + q^g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeilCandidate {
    pub q: u64,
    pub a: Vec<i64>,
}

/// The two degree-`g` polynomials whose roots are `2√q ∓ ωᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPlusMinus {
    pub hplus: Poly<QuadReal>,
    pub hminus: Poly<QuadReal>,
}

/// How the real roots `±√q` divide a Weil polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealRootClass {
    None,
    /// `q` a square: `h = (x + √q)^{2k} (x − √q)^{2l} h₀`.
    SqrtFactors { k: usize, l: usize, cofactor: Option<WeilCandidate> },
    /// `q` not a square: `h = (x² − q)^{2m} h₀` with `m = multiplicity`.
    XSqMinusQ { multiplicity: usize, cofactor: Option<WeilCandidate> },
}

pub fn validate_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn qpow(q: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// Trace coefficients `c₁ … c_g` (with `c₀ = 1` implicit) of the prefix
/// `a₁ … a_k`, `k ≤ g`; `c_j` depends only on `a₁ … a_j`.
pub fn trace_prefix(q: u64, g: usize, a: &[i64]) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=a.len() {
        let mut ck = big(a[k - 1]);
        for i in 1..=k / 2 {
            let b = binomial(BigInt::from(g - k + 2 * i), BigInt::from(i));
            ck -= &c[k - 2 * i] * b * qpow(q, i);
        }
        c.push(ck);
    }
    c.remove(0);
    c
}

/// Inverse of [`trace_prefix`]: `a_k = Σ_i c_{k−2i} binom(g−k+2i, i) qⁱ`.
pub fn a_from_trace(q: u64, g: usize, c: &[BigInt]) -> Vec<BigInt> {
    let coeff = |j: usize| if j == 0 { BigInt::one() } else { c[j - 1].clone() };
    (1..=c.len())
        .map(|k| {
            (0..=k / 2)
                .map(|i| coeff(k - 2 * i) * binomial(BigInt::from(g - k + 2 * i), BigInt::from(i)) * qpow(q, i))
                .sum()
        })
        .collect()
}

/// Whether the monic degree-`2g` polynomial satisfies
/// `h(x) = x^{2g} h(q/x) / q^g`.
pub fn functional_eq_holds(h: &Poly<BigInt>, q: u64, g: usize) -> bool {
    if h.degree() != Some(2 * g) || !h.lc().is_one() {
        return false;
    }
    (0..g).all(|i| h.coeff(i) == qpow(q, g - i) * h.coeff(2 * g - i))
}

impl WeilCandidate {
    pub fn new(q: u64, a: Vec<i64>) -> Result<WeilCandidate> {
        validate_q(q)?;
        if a.is_empty() {
            return Err(Error::InvalidArgument("g must be at least 1".into()));
        }
        Ok(WeilCandidate { q, a })
    }

    /// Reads the prefix back from a full polynomial.
    pub fn from_full(h: &Poly<BigInt>, q: u64) -> Result<WeilCandidate> {
        let deg = h.degree().unwrap_or(0);
        if deg == 0 || deg % 2 == 1 || !functional_eq_holds(h, q, deg / 2) {
            return Err(Error::InvalidArgument("not of the form x^g P(x + q/x)".into()));
        }
        let a = (1..=deg / 2)
            .map(|i| h.coeff(deg - i).to_i64().ok_or_else(|| Error::InvalidArgument("coefficient overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        WeilCandidate::new(q, a)
    }

    pub fn g(&self) -> usize {
        self.a.len()
    }

    /// The full polynomial, ascending coefficients.
    pub fn expand(&self) -> Poly<BigInt> {
        let g = self.g();
        let mut c = vec![BigInt::zero(); 2 * g + 1];
        c[2 * g] = BigInt::one();
        for (i, &ai) in self.a.iter().enumerate() {
            c[2 * g - 1 - i] = big(ai);
        }
        for i in 0..g {
            c[i] = qpow(self.q, g - i) * &c[2 * g - i];
        }
        Poly::new(c)
    }

    /// Coefficients of the full polynomial from the leading term down.
    pub fn full_coefficients(&self) -> Vec<BigInt> {
        self.expand().descending()
    }

    /// The monic integer `P` of degree `g` with `h(x) = x^g P(x + q/x)`.
    pub fn trace_poly(&self) -> Poly<BigInt> {
        let mut c = trace_prefix(self.q, self.g(), &self.a);
        c.insert(0, BigInt::one());
        Poly::from_descending(c)
    }

    pub fn two_sqrt_q(&self) -> QuadReal {
        QuadReal::from_ints(0, 2, self.q)
    }

    /// `h⁺(x) = P(x − 2√q)` and `h⁻(x) = (−1)^g P(2√q − x)`.
    pub fn h_plus_minus(&self) -> HPlusMinus {
        let p = self.trace_poly().to_quad();
        let m = self.two_sqrt_q();
        let hplus = p.compose_linear(&QuadReal::int(1), &-&m);
        let hminus = p.compose_linear(&QuadReal::int(-1), &m);
        let hminus = if self.g() % 2 == 1 { hminus.neg() } else { hminus };
        HPlusMinus { hplus, hminus }
    }

    /// Cheap necessary condition: `|c_k| ≤ binom(g, k)(2√q)^k`.
    fn trace_coefficients_bounded(&self, c: &[BigInt]) -> bool {
        let g = self.g();
        c.iter().enumerate().all(|(i, ck)| {
            let k = i + 1;
            let b = binomial(BigInt::from(g), BigInt::from(k));
            ck * ck <= &b * &b * Pow::pow(BigInt::from(4), k) * qpow(self.q, k)
        })
    }

    /// Exact membership: `P` has all `g` roots, with multiplicity, in
    /// `[−2√q, 2√q]`.
    pub fn is_weil(&self) -> bool {
        let c = trace_prefix(self.q, self.g(), &self.a);
        if !self.trace_coefficients_bounded(&c) {
            return false;
        }
        let m = self.two_sqrt_q();
        count_roots_closed(&self.trace_poly().to_quad(), &-&m, &m).expect("trace polynomial is monic") == self.g()
    }

    /// Membership through `h±`: both have only real non-negative roots.
    pub fn is_weil_via_h(&self) -> bool {
        let h = self.h_plus_minus();
        hyperbolic_nonneg_exact(&h.hplus, RootMode::RealNonNeg).expect("monic")
            && hyperbolic_nonneg_exact(&h.hminus, RootMode::RealNonNeg).expect("monic")
    }

    /// Whether `h` has a real root; `h⁺(0) = P(−2√q)` and `h⁻(0) = ±P(2√q)`.
    pub fn has_real_root(&self) -> Result<bool> {
        if !self.is_weil() {
            return Err(Error::NotWeil);
        }
        let p = self.trace_poly().to_quad();
        let m = self.two_sqrt_q();
        Ok(p.eval(&m).is_zero() || p.eval(&-&m).is_zero())
    }

    pub fn classify_real_roots(&self) -> Result<RealRootClass> {
        if !self.is_weil() {
            return Err(Error::NotWeil);
        }
        let mut h = self.expand();
        let divide_all = |h: &mut Poly<BigInt>, d: &Poly<BigInt>| {
            let mut n = 0;
            loop {
                let (quot, rem) = h.div_rem_monic(d);
                if !rem.is_zero() {
                    return n;
                }
                *h = quot;
                n += 1;
            }
        };
        let cofactor = |h: &Poly<BigInt>| -> Result<Option<WeilCandidate>> {
            if h.degree() == Some(0) {
                Ok(None)
            } else {
                WeilCandidate::from_full(h, self.q).map(Some)
            }
        };
        match exact_sqrt(self.q) {
            Some(r) => {
                let r = r as i64;
                let k = divide_all(&mut h, &Poly::<BigInt>::from_i64s(&[r * r, 2 * r, 1]));
                let l = divide_all(&mut h, &Poly::<BigInt>::from_i64s(&[r * r, -2 * r, 1]));
                if k + l == 0 {
                    return Ok(RealRootClass::None);
                }
                Ok(RealRootClass::SqrtFactors { k, l, cofactor: cofactor(&h)? })
            }
            None => {
                let q = BigInt::from(self.q);
                let d = Poly::new(vec![&q * &q, BigInt::zero(), big(-2) * &q, BigInt::zero(), BigInt::one()]);
                let m = divide_all(&mut h, &d);
                if m == 0 {
                    return Ok(RealRootClass::None);
                }
                Ok(RealRootClass::XSqMinusQ { multiplicity: m, cofactor: cofactor(&h)? })
            }
        }
    }
}

impl RealRootClass {
    pub fn is_none(&self) -> bool {
        matches!(self, RealRootClass::None)
    }

    /// Multiplies the factors back together.
    pub fn reconstruct(&self, q: u64, original: &Poly<BigInt>) -> Poly<BigInt> {
        let cof = |c: &Option<WeilCandidate>| c.as_ref().map_or_else(|| Poly::constant(BigInt::one()), |c| c.expand());
        match self {
            RealRootClass::None => original.clone(),
            RealRootClass::SqrtFactors { k, l, cofactor } => {
                let r = exact_sqrt(q).expect("square q") as i64;
                Poly::<BigInt>::from_i64s(&[r, 1])
                    .pow(2 * *k as u32)
                    .mul(&Poly::<BigInt>::from_i64s(&[-r, 1]).pow(2 * *l as u32))
                    .mul(&cof(cofactor))
            }
            RealRootClass::XSqMinusQ { multiplicity, cofactor } => {
                let base = Poly::new(vec![-BigInt::from(q), BigInt::zero(), BigInt::one()]);
                base.pow(2 * *multiplicity as u32).mul(&cof(cofactor))
            }
        }
    }
}

/// Multiplicities of the real roots of a nonzero integer polynomial.
pub fn real_root_multiplicities(h: &Poly<BigInt>) -> Vec<u32> {
    let hq = h.to_quad();
    let mut out = Vec::new();
    for (factor, m) in crate::exact::squarefree_decompose(&hq) {
        let n = crate::exact::count_real_roots_with_multiplicity(
            &factor,
            &crate::exact::Endpoint::NegInf,
            &crate::exact::Endpoint::PosInf,
        )
        .expect("nonzero factor");
        out.extend(std::iter::repeat_n(m, n));
    }
    out
}

/// Whether every multiplicity is even.
pub fn all_even(ms: &[u32]) -> bool {
    ms.iter().all(|m| m.is_even())
}

/// `binom(2g, i) ⌈q^{i/2}⌉`, a bound on `|aᵢ|` for members.
pub fn coefficient_box(q: u64, g: usize) -> Vec<i64> {
    (1..=g)
        .map(|i| {
            let b = binomial(BigInt::from(2 * g), BigInt::from(i));
            let root = if i % 2 == 0 {
                qpow(q, i / 2)
            } else {
                let s = (qpow(q, i)).sqrt();
                if &s * &s == qpow(q, i) {
                    s
                } else {
                    s + 1
                }
            };
            (b * root).to_i64().expect("box fits in i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(q: u64, a: &[i64]) -> WeilCandidate {
        WeilCandidate::new(q, a.to_vec()).unwrap()
    }

    fn ints(p: &Poly<BigInt>) -> Vec<i64> {
        p.descending().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(ints(&cand(2, &[3]).expand()), vec![1, 3, 2]);
        assert_eq!(ints(&cand(4, &[-4, 10]).expand()), vec![1, -4, 10, -16, 16]);
        assert_eq!(ints(&cand(2, &[0, -2, 0]).expand()), vec![1, 0, -2, 0, -4, 0, 8]);
        assert!(matches!(WeilCandidate::new(6, vec![1]), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn functional_equation() {
        assert!(functional_eq_holds(&Poly::<BigInt>::from_i64s(&[16, -16, 10, -4, 1]), 4, 2));
        assert!(!functional_eq_holds(&Poly::<BigInt>::from_i64s(&[1, 1, 1, 1, 1]), 2, 2));
        assert!(functional_eq_holds(&Poly::<BigInt>::from_i64s(&[2, 3, 1]), 2, 1));
    }

    #[test]
    fn trace_examples() {
        for q in [2u64, 3, 7] {
            let qi = q as i64;
            assert_eq!(ints(&cand(q, &[0, -2 * qi]).trace_poly()), vec![1, 0, -4 * qi]);
        }
        assert_eq!(ints(&cand(2, &[3]).trace_poly()), vec![1, 3]);
        assert_eq!(ints(&cand(2, &[0, 0, 0]).trace_poly()), vec![1, 0, -6, 0]);
    }

    #[test]
    fn h_plus_minus_examples() {
        let h = cand(2, &[0, 0, 0]).h_plus_minus();
        let s = |a, b| QuadReal::from_ints(a, b, 2);
        assert_eq!(h.hplus.descending(), vec![s(1, 0), s(0, -6), s(18, 0), s(0, -4)]);
        let h = cand(4, &[-4]).h_plus_minus();
        assert_eq!(h.hplus.descending(), vec![QuadReal::int(1), QuadReal::int(-8)]);
    }

    #[test]
    fn membership_examples() {
        assert!(cand(4, &[-4, 10]).is_weil());
        assert!(!cand(2, &[3]).is_weil());
        assert!(cand(2, &[0, -4, 0, 4, 0]).is_weil());
        assert!(!cand(4, &[-4, 10]).has_real_root().unwrap());
        assert!(cand(2, &[0, -2, 0]).has_real_root().unwrap());
        assert!(!cand(2, &[0, 0, 0]).has_real_root().unwrap());
        assert!(matches!(cand(2, &[3]).has_real_root(), Err(Error::NotWeil)));
    }

    #[test]
    fn classification_examples() {
        let c = cand(9, &[-18, 135, -540]);
        assert_eq!(c.classify_real_roots().unwrap(), RealRootClass::SqrtFactors { k: 0, l: 3, cofactor: None });
        let c = cand(2, &[0, -4, 0, 8]);
        assert_eq!(
            c.classify_real_roots().unwrap(),
            RealRootClass::XSqMinusQ { multiplicity: 1, cofactor: Some(cand(2, &[0, 0])) }
        );
        assert_eq!(cand(2, &[0, 0, 0]).classify_real_roots().unwrap(), RealRootClass::None);
    }

    #[test]
    fn trace_roundtrip() {
        let a = [3, -7, 11, 2, -5];
        let c = trace_prefix(5, 5, &a);
        let back: Vec<i64> = a_from_trace(5, 5, &c).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(back, a);
    }

    #[test]
    fn box_values() {
        assert_eq!(coefficient_box(2, 1), vec![4]);
        assert_eq!(coefficient_box(4, 2), vec![8, 24]);
    }
}
