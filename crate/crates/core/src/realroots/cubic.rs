//! The critical-value set of a quartic, computed from the depressed
//! derivative cubic `y³ + u₂y + u₃`.
//!
//! Each critical-value offset is `θ = −u₂y² − 3u₃y` for a root `y` of the
//! cubic; written through Cardano's formula this is
//! `−ζᵏω(9u₃/2 + 3√Δ/2) − ζ⁻ᵏω̄(9u₃/2 − 3√Δ/2) + 2u₂²/3`.
//! The three values are exactly the roots of the monic cubic returned by
//! [`theta_cubic`], which is used to detect ties and to settle comparisons
//! exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::enclosure::sorted_enclosures;
use crate::exact::quad::{rat, rat_frac};
use crate::exact::{
    count_real_roots_with_multiplicity, multiplicity_at, squarefree_decompose, ComplexEnclosure, Enclosure, Endpoint,
    Poly, PrecisionConfig, QuadReal,
};

/// `u₃² + 4u₂³/27`, the discriminant (up to a negative factor) of `y³ + u₂y + u₃`.
pub fn cubic_delta(u2: &QuadReal, u3: &QuadReal) -> QuadReal {
    u3 * u3 + u2.pow(3).scale(&rat_frac(4, 27))
}

/// `T(t) = t³ − 2u₂²t² + (u₂⁴ + 18u₂u₃²)t − (2u₂³u₃² + 27u₃⁴)`.
pub fn theta_cubic(u2: &QuadReal, u3: &QuadReal) -> Poly<QuadReal> {
    let u2s = u2 * u2;
    let u3s = u3 * u3;
    Poly::from_descending(vec![
        QuadReal::one(),
        u2s.scale(&rat(-2)),
        &u2s * &u2s + (u2 * &u3s).scale(&rat(18)),
        -((&u2s * u2 * &u3s).scale(&rat(2)) + (&u3s * &u3s).scale(&rat(27))),
    ])
}

/// One sorted critical-value offset.
#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub enclosure: Enclosure,
    /// Set when the value is pinned down exactly by a repeated root of `T`.
    pub exact: Option<QuadReal>,
}

impl ThetaValue {
    /// Exact comparison with `x` where the enclosure decides it.
    pub fn cmp_quad(&self, x: &QuadReal) -> Option<Ordering> {
        match &self.exact {
            Some(v) => Some(v.cmp(x)),
            None => self.enclosure.cmp_quad(x),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolventData {
    pub u2: QuadReal,
    pub u3: QuadReal,
    pub delta: QuadReal,
    pub cubic: Poly<QuadReal>,
    /// `θ₁ ≤ θ₂ ≤ θ₃`.
    pub sorted: [ThetaValue; 3],
    /// The same values in Cardano construction order `k = 0, 1, 2`.
    pub construction: [Enclosure; 3],
    pub precision: u32,
}

fn rotations(prec: u32) -> [ComplexEnclosure; 3] {
    let half = Enclosure::from_rational(&rat_frac(-1, 2), prec);
    let s3 = Enclosure::from_quad(&QuadReal::new(BigRational::zero(), rat_frac(1, 2), 3), prec);
    let one = ComplexEnclosure::real(Enclosure::from_int(&BigInt::one(), prec));
    let z1 = ComplexEnclosure::new(half.clone(), s3.clone());
    let z2 = ComplexEnclosure::new(half, s3.neg());
    [one, z1, z2]
}

/// Cardano roots `ζᵏω + ζ⁻ᵏω̄` of `y³ + u₂y + u₃` (requires `Δ ≤ 0`), in
/// construction order.
pub(crate) fn cardano_roots(u3: &QuadReal, delta: &QuadReal, prec: u32) -> [Enclosure; 3] {
    let neg_delta = Enclosure::from_quad(&-delta, prec).clamp_nonneg();
    let z = ComplexEnclosure::new(
        Enclosure::from_quad(&u3.scale(&rat_frac(-1, 2)), prec),
        neg_delta.sqrt_clamped().mul_rational(&rat_frac(1, 2)),
    );
    let omega = z.nth_root(3);
    let rot = rotations(prec);
    let two = BigRational::from_integer(BigInt::from(2));
    [0, 1, 2].map(|k| rot[k].mul(&omega).re.mul_rational(&two))
}

fn theta_from_root(u2: &Enclosure, u3: &Enclosure, y: &Enclosure) -> Enclosure {
    let t = u2.mul(y).add(&u3.mul_int(3));
    t.mul(y).neg()
}

impl ResolventData {
    /// Enclosures at a fixed precision, without requiring the values to be
    /// separated; overlapping values are still rigorously ordered as order
    /// statistics.
    pub fn at_precision(u2: &QuadReal, u3: &QuadReal, prec: u32) -> Result<ResolventData> {
        Self::build(u2, u3, prec, None)
    }

    fn build(u2: &QuadReal, u3: &QuadReal, prec: u32, sqf: Option<&[(Poly<QuadReal>, u32)]>) -> Result<ResolventData> {
        let delta = cubic_delta(u2, u3);
        if delta.is_positive() {
            return Err(Error::DeltaPositive);
        }
        let cubic = theta_cubic(u2, u3);
        let owned;
        let sqf = match sqf {
            Some(s) => s,
            None => {
                owned = squarefree_decompose(&cubic);
                &owned
            }
        };
        let ys = cardano_roots(u3, &delta, prec);
        let (eu2, eu3) = (Enclosure::from_quad(u2, prec), Enclosure::from_quad(u3, prec));
        let construction = ys.map(|y| theta_from_root(&eu2, &eu3, &y));
        let exact = exact_sorted(sqf);
        let sorted_enc = sorted_enclosures(&construction);
        let sorted: [ThetaValue; 3] = std::array::from_fn(|i| match &exact {
            Some(vals) => ThetaValue { enclosure: Enclosure::from_quad(&vals[i], prec), exact: Some(vals[i].clone()) },
            None => ThetaValue { enclosure: sorted_enc[i].clone(), exact: None },
        });
        Ok(ResolventData { u2: u2.clone(), u3: u3.clone(), delta, cubic, sorted, construction, precision: prec })
    }

    fn separated(&self) -> bool {
        if self.sorted.iter().all(|t| t.exact.is_some()) {
            return true;
        }
        let s = &self.sorted;
        s[0].enclosure.le(&s[1].enclosure) == Some(true)
            && s[1].enclosure.le(&s[2].enclosure) == Some(true)
            && !s[0].enclosure.intersects(&s[1].enclosure)
            && !s[1].enclosure.intersects(&s[2].enclosure)
    }

    /// `#{θ ≤ x}` counted with multiplicity, exactly.
    pub fn count_le(&self, x: &QuadReal) -> usize {
        count_real_roots_with_multiplicity(&self.cubic, &Endpoint::NegInf, &Endpoint::At(x.clone()))
            .expect("theta cubic is nonzero")
    }

    /// `#{θ < x}` counted with multiplicity, exactly.
    pub fn count_lt(&self, x: &QuadReal) -> usize {
        self.count_le(x) - multiplicity_at(&self.cubic, x)
    }

    /// Exact test of `θ₁ ≤ x ≤ θ₂`.
    pub fn between_first_two(&self, x: &QuadReal) -> bool {
        self.count_le(x) >= 1 && self.count_lt(x) <= 1
    }
}

/// Exact sorted values when `T` has a repeated root (then every root of `T`
/// is rational over the coefficient field).
fn exact_sorted(sqf: &[(Poly<QuadReal>, u32)]) -> Option<[QuadReal; 3]> {
    let root = |p: &Poly<QuadReal>| -p.coeff(0);
    match sqf {
        [(p, 3)] => {
            let r = root(p);
            Some([r.clone(), r.clone(), r])
        }
        [(p1, 1), (p2, 2)] if p1.degree() == Some(1) && p2.degree() == Some(1) => {
            let (s, d) = (root(p1), root(p2));
            if s < d {
                Some([s, d.clone(), d])
            } else {
                Some([d.clone(), d, s])
            }
        }
        _ => None,
    }
}

/// Sorted critical-value offsets `θ₁ ≤ θ₂ ≤ θ₃`, refining precision until the
/// enclosures of distinct values are disjoint. Exact ties come from the
/// squarefree structure of `T`.
pub fn theta_sorted(u2: &QuadReal, u3: &QuadReal, cfg: &PrecisionConfig) -> Result<ResolventData> {
    let delta = cubic_delta(u2, u3);
    if delta.is_positive() {
        return Err(Error::DeltaPositive);
    }
    let sqf = squarefree_decompose(&theta_cubic(u2, u3));
    for p in cfg.schedule() {
        let data = ResolventData::build(u2, u3, p, Some(&sqf))?;
        if data.separated() {
            return Ok(data);
        }
    }
    Err(Error::PrecisionExhausted { bits: cfg.cap_bits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(d: &ResolventData) -> Vec<f64> {
        d.sorted.iter().map(|t| t.enclosure.to_f64()).collect()
    }

    #[test]
    fn double_root_example() {
        let d = theta_sorted(&QuadReal::int(-3), &QuadReal::int(0), &PrecisionConfig::default()).unwrap();
        let vals: Vec<QuadReal> = d.sorted.iter().map(|t| t.exact.clone().unwrap()).collect();
        assert_eq!(vals, vec![QuadReal::int(0), QuadReal::int(9), QuadReal::int(9)]);
    }

    #[test]
    fn all_zero() {
        let d = theta_sorted(&QuadReal::int(0), &QuadReal::int(0), &PrecisionConfig::default()).unwrap();
        assert!(d.sorted.iter().all(|t| t.exact == Some(QuadReal::int(0))));
    }

    #[test]
    fn delta_positive() {
        let r = theta_sorted(&QuadReal::int(1), &QuadReal::int(1), &PrecisionConfig::default());
        assert!(matches!(r, Err(Error::DeltaPositive)));
    }

    #[test]
    fn distinct_values_match_direct_evaluation() {
        // y³ − 7y + 6 = (y − 1)(y − 2)(y + 3)
        let (u2, u3) = (QuadReal::int(-7), QuadReal::int(6));
        let d = theta_sorted(&u2, &u3, &PrecisionConfig::default()).unwrap();
        let mut direct: Vec<f64> = [1.0, 2.0, -3.0].iter().map(|y: &f64| 7.0 * y * y - 18.0 * y).collect();
        direct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in approx(&d).iter().zip(&direct) {
            assert!((a - b).abs() < 1e-20_f64.max(1e-12 * b.abs()), "{a} {b}");
        }
        assert!(d.between_first_two(&QuadReal::int(-10)));
        assert!(!d.between_first_two(&QuadReal::int(100)));
    }

    #[test]
    fn negating_u3_keeps_the_set() {
        let u2 = QuadReal::new(rat_frac(-13, 4), BigRational::zero(), 1);
        let u3 = QuadReal::new(rat_frac(5, 7), rat_frac(1, 3), 2);
        let a = theta_sorted(&u2, &u3, &PrecisionConfig::default()).unwrap();
        let b = theta_sorted(&u2, &-&u3, &PrecisionConfig::default()).unwrap();
        for (x, y) in a.sorted.iter().zip(&b.sorted) {
            assert!(x.enclosure.intersects(&y.enclosure));
        }
    }
}
