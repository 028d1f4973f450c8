//! Roots of the depressed quartic `x⁴ + 2u₂x² + 4u₃x + u₄` via Ferrari's
//! resolvent `r(x) = x³ + 2u₂x² + (u₂² − u₄)x − 2u₃²`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::enclosure::sorted_enclosures;
use crate::exact::quad::{rat, rat_frac};
use crate::exact::{all_roots_real, ComplexEnclosure, Enclosure, Poly, PrecisionConfig, QuadReal, Sign};

#[derive(Clone, Debug)]
pub struct FerrariData {
    pub u2: QuadReal,
    pub u3: QuadReal,
    pub u4: QuadReal,
    pub v2: QuadReal,
    pub v3: QuadReal,
    /// Whether all four roots are real (decided exactly).
    pub all_real: bool,
    /// Resolvent root used for the factorisation (absent when `u₃ = 0`).
    pub y: Option<Enclosure>,
    /// `γ₁ ≤ γ₂ ≤ γ₃ ≤ γ₄`; empty unless `all_real`.
    pub gammas: Vec<Enclosure>,
    pub precision: u32,
}

pub fn depressed_quartic(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal) -> Poly<QuadReal> {
    Poly::new(vec![u4.clone(), u3.scale(&rat(4)), u2.scale(&rat(2)), QuadReal::zero(), QuadReal::one()])
}

pub fn resolvent_cubic(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal) -> Poly<QuadReal> {
    Poly::new(vec![(u3 * u3).scale(&rat(-2)), u2 * u2 - u4, u2.scale(&rat(2)), QuadReal::one()])
}

fn v_coeffs(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal) -> (QuadReal, QuadReal) {
    let v2 = (u2 * u2).scale(&rat_frac(-1, 3)) - u4;
    let v3 = (u2 * u4).scale(&rat_frac(2, 3)) - u2.pow(3).scale(&rat_frac(2, 27)) - (u3 * u3).scale(&rat(2));
    (v2, v3)
}

fn rotation(branch: u8, prec: u32) -> ComplexEnclosure {
    let half = Enclosure::from_rational(&rat_frac(-1, 2), prec);
    let s3 = Enclosure::from_quad(&QuadReal::new(BigRational::zero(), rat_frac(1, 2), 3), prec);
    match branch % 3 {
        0 => ComplexEnclosure::real(Enclosure::from_int(&BigInt::one(), prec)),
        1 => ComplexEnclosure::new(half, s3),
        _ => ComplexEnclosure::new(half, s3.neg()),
    }
}

/// The resolvent root `y = C − v₂/(3C) − 2u₂/3` for the cube-root branch
/// `C·ζ^branch`. `None` when the enclosure cannot certify `y > 0`.
fn resolvent_root(u2: &QuadReal, v2: &QuadReal, v3: &QuadReal, branch: u8, prec: u32) -> Option<Enclosure> {
    let c = if v2.is_zero() {
        ComplexEnclosure::real(Enclosure::from_quad(&-v3, prec).cbrt())
    } else {
        let disc = v3 * v3 + v2.pow(3).scale(&rat_frac(4, 27));
        if disc.sign() != Sign::Negative {
            // pick the square-root sign that does not cancel against −v₃
            let sd = Enclosure::from_quad(&disc, prec).sqrt_clamped();
            let sd = if v3.is_positive() { sd.neg() } else { sd };
            let w = Enclosure::from_quad(&-v3, prec).add(&sd).mul_rational(&rat_frac(1, 2));
            ComplexEnclosure::real(w.cbrt())
        } else {
            let im = Enclosure::from_quad(&-&disc, prec).sqrt_clamped().mul_rational(&rat_frac(1, 2));
            let re = Enclosure::from_quad(&v3.scale(&rat_frac(-1, 2)), prec);
            ComplexEnclosure::new(re, im).nth_root(3)
        }
    };
    let c = c.mul(&rotation(branch, prec));
    let shift = Enclosure::from_quad(&u2.scale(&rat_frac(-2, 3)), prec);
    let y = if v2.is_zero() {
        c.re.add(&shift)
    } else {
        let three_c = c.scale(&Enclosure::from_int(&BigInt::from(3), prec));
        let frac = ComplexEnclosure::real(Enclosure::from_quad(v2, prec)).div(&three_c)?;
        let y = c.sub(&frac);
        if !y.im.contains_zero() {
            return None;
        }
        y.re.add(&shift)
    };
    y.is_positive().then_some(y)
}

/// Enclosures of the four real roots at one precision and cube-root branch;
/// `Ok(None)` when this precision is insufficient.
pub fn ferrari_at(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal, branch: u8, prec: u32) -> Option<(Option<Enclosure>, Vec<Enclosure>)> {
    let half = rat_frac(1, 2);
    if u3.is_zero() {
        let d = Enclosure::from_quad(&(u2 * u2 - u4), prec).sqrt_clamped();
        let mu2 = Enclosure::from_quad(&-u2, prec);
        let tp = mu2.add(&d).sqrt_clamped();
        let tm = mu2.sub(&d).sqrt_clamped();
        return Some((None, vec![tp.clone(), tp.neg(), tm.clone(), tm.neg()]));
    }
    let (v2, v3) = v_coeffs(u2, u3, u4);
    let y = resolvent_root(u2, &v2, &v3, branch, prec)?;
    let s = y.mul_int(2).sqrt_clamped();
    let base = Enclosure::from_quad(&u2.scale(&rat(-4)), prec).sub(&y.mul_int(2));
    let t = Enclosure::from_quad(&u3.scale(&rat(8)), prec).div(&s)?;
    let mut xs = Vec::with_capacity(4);
    for i1 in [1i64, -1] {
        let inner = base.sub(&t.mul_int(i1)).sqrt_clamped();
        let lead = s.mul_int(i1);
        xs.push(lead.add(&inner).mul_rational(&half));
        xs.push(lead.sub(&inner).mul_rational(&half));
    }
    Some((Some(y), xs))
}

/// Sorted real roots `γ₁ ≤ … ≤ γ₄` of the depressed quartic, computed with
/// the given cube-root branch for `C`.
pub fn ferrari_roots_branch(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal, branch: u8, cfg: &PrecisionConfig) -> Result<FerrariData> {
    let (v2, v3) = v_coeffs(u2, u3, u4);
    let all_real = all_roots_real(&depressed_quartic(u2, u3, u4))?;
    let mut data = FerrariData {
        u2: u2.clone(),
        u3: u3.clone(),
        u4: u4.clone(),
        v2,
        v3,
        all_real,
        y: None,
        gammas: Vec::new(),
        precision: cfg.start_bits(),
    };
    if !all_real {
        return Ok(data);
    }
    for p in cfg.schedule() {
        if let Some((y, xs)) = ferrari_at(u2, u3, u4, branch, p) {
            data.y = y;
            data.gammas = sorted_enclosures(&xs);
            data.precision = p;
            return Ok(data);
        }
    }
    Err(Error::PrecisionExhausted { bits: cfg.cap_bits })
}

pub fn ferrari_roots(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal, cfg: &PrecisionConfig) -> Result<FerrariData> {
    ferrari_roots_branch(u2, u3, u4, 0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QuadReal {
        QuadReal::rational(rat_frac(n, d))
    }

    #[test]
    fn biquadratic_example() {
        let d = ferrari_roots(&q(-5, 2), &q(0, 1), &q(9, 4), &PrecisionConfig::default()).unwrap();
        let g: Vec<f64> = d.gammas.iter().map(|e| e.to_f64()).collect();
        let s = 0.5f64.sqrt();
        let want = [-3.0 * s, -s, s, 3.0 * s];
        for (a, b) in g.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_quartic() {
        let d = ferrari_roots(&q(0, 1), &q(0, 1), &q(0, 1), &PrecisionConfig::default()).unwrap();
        assert!(d.gammas.iter().all(|e| e.contains_zero()));
    }

    #[test]
    fn general_quartic_all_branches() {
        // (x + 4)(x + 1)(x − 2)(x − 3) = x⁴ − 15x² + 10x + 24
        let (u2, u3, u4) = (q(-15, 2), q(10, 4), q(24, 1));
        for b in 0..3 {
            let d = ferrari_roots_branch(&u2, &u3, &u4, b, &PrecisionConfig::default()).unwrap();
            let g: Vec<f64> = d.gammas.iter().map(|e| e.to_f64()).collect();
            for (a, w) in g.iter().zip([-4.0, -1.0, 2.0, 3.0]) {
                assert!((a - w).abs() < 1e-12, "branch {b}: {g:?}");
            }
        }
    }

    #[test]
    fn complex_roots_flagged() {
        let d = ferrari_roots(&q(1, 1), &q(1, 1), &q(1, 1), &PrecisionConfig::default()).unwrap();
        assert!(!d.all_real);
        assert!(d.gammas.is_empty());
    }
}
