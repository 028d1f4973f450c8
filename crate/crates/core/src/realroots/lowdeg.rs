//! Closed-form tests for "all roots real and non-negative" (or positive) in
//! degrees two to five. Coefficients are passed from the leading term down.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::enclosure::sorted_enclosures;
use crate::exact::quad::{rat, rat_frac};
use crate::exact::{Enclosure, Poly, PrecisionConfig, QuadReal};

use super::cubic::ResolventData;
use super::ferrari::ferrari_at;
use super::{all_real_quartic_derivative, hyperbolic_nonneg_exact, Convention, RootMode};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PredicateOptions {
    /// Require strictly positive roots.
    pub strict: bool,
    pub convention: Convention,
    pub precision: PrecisionConfig,
}

impl PredicateOptions {
    pub fn strict(strict: bool) -> Self {
        PredicateOptions { strict, ..Default::default() }
    }

    fn mode(&self) -> RootMode {
        RootMode::from_strict(self.strict)
    }
}

/// `lhs ≤ rhs`, or `lhs < rhs` when `strict`.
fn le(lhs: &QuadReal, rhs: &QuadReal, strict: bool) -> bool {
    if strict {
        lhs < rhs
    } else {
        lhs <= rhs
    }
}

fn positive_lead(a: &QuadReal) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("leading coefficient must be positive".into()))
    }
}

fn r(n: i64, d: i64) -> num_rational::BigRational {
    rat_frac(n, d)
}

pub fn deg2_real_nonneg(a: &[QuadReal; 3], strict: bool) -> Result<bool> {
    deg2_real_nonneg_with(a, &PredicateOptions::strict(strict))
}

pub fn deg2_real_nonneg_with(a: &[QuadReal; 3], opts: &PredicateOptions) -> Result<bool> {
    let [a2, a1, a0] = a;
    positive_lead(a2)?;
    let zero = QuadReal::zero();
    let s = opts.strict;
    let linear = match opts.convention {
        Convention::Corrected => le(a1, &zero, s),
        Convention::PaperLiteral => le(&zero, a1, s),
    };
    Ok(linear && le(&zero, a0, s) && (a2 * a0).scale(&rat(4)) <= a1 * a1)
}

pub fn deg3_real_nonneg(a: &[QuadReal; 4], strict: bool) -> Result<bool> {
    deg3_real_nonneg_with(a, &PredicateOptions::strict(strict))
}

pub fn deg3_real_nonneg_with(a: &[QuadReal; 4], opts: &PredicateOptions) -> Result<bool> {
    let [a3, a2, a1, a0] = a;
    positive_lead(a3)?;
    let zero = QuadReal::zero();
    let s = opts.strict;
    let quad = match opts.convention {
        Convention::Corrected => le(a2, &zero, s),
        Convention::PaperLiteral => le(&zero, a2, s),
    };
    let disc = a2 * a2 - (a1 * a3).scale(&rat(3));
    if !(quad && le(&zero, a1, s) && !disc.is_negative() && le(a0, &zero, s)) {
        return Ok(false);
    }
    // |27a₃²a₀ + 2a₂³ − 9a₁a₂a₃| ≤ 2 disc^{3/2}, squared
    let lhs = (a3 * a3 * a0).scale(&rat(27)) + a2.pow(3).scale(&rat(2)) - (a1 * a2 * a3).scale(&rat(9));
    Ok(&lhs * &lhs <= disc.pow(3).scale(&rat(4)))
}

/// Decides `θ₁ ≤ x ≤ θ₂` for the critical-value offsets of `y³ + u₂y + u₃`:
/// enclosures first, then exactly through the cubic whose roots are the θ.
fn theta_bracket(u2: &QuadReal, u3: &QuadReal, x: &QuadReal, cfg: &PrecisionConfig) -> Result<bool> {
    let data = ResolventData::at_precision(u2, u3, cfg.start_bits())?;
    let lower = data.sorted[0].cmp_quad(x);
    let upper = data.sorted[1].cmp_quad(x);
    if lower == Some(Ordering::Greater) || upper == Some(Ordering::Less) {
        return Ok(false);
    }
    if lower.is_some() && upper.is_some() {
        return Ok(true);
    }
    Ok(data.between_first_two(x))
}

pub fn deg4_real_nonneg(a: &[QuadReal; 5], strict: bool) -> Result<bool> {
    deg4_real_nonneg_with(a, &PredicateOptions::strict(strict))
}

pub fn deg4_real_nonneg_with(a: &[QuadReal; 5], opts: &PredicateOptions) -> Result<bool> {
    let [a4, a3, a2, a1, a0] = a;
    positive_lead(a4)?;
    let zero = QuadReal::zero();
    let s = opts.strict;
    let constant = match opts.convention {
        Convention::Corrected => le(&zero, a0, s),
        Convention::PaperLiteral => le(a0, &zero, s),
    };
    if !(le(a3, &zero, s) && le(&zero, a2, s) && le(a1, &zero, s) && constant) {
        return Ok(false);
    }
    if (a4 * a2).scale(&rat(8)) > (a3 * a3).scale(&rat(3)) {
        return Ok(false);
    }
    // |a₁ − M| ≤ R^{3/2}/a₄², squared
    let a4s = a4 * a4;
    let m = (a3.pow(3) / &a4s).scale(&r(-1, 8)) + (a3 * a2 / a4).scale(&r(1, 2));
    let rr = (a3 * a3).scale(&r(1, 4)) - (a2 * a4).scale(&r(2, 3));
    let d = a1 - &m;
    if &d * &d * a4s.pow(2) > rr.pow(3) {
        return Ok(false);
    }
    let u2 = ((a2 * a4).scale(&rat(8)) - (a3 * a3).scale(&rat(3))) / a4s.scale(&rat(16));
    let u3 = (a3.pow(3) - (a2 * a3 * a4).scale(&rat(4)) + (a1 * &a4s).scale(&rat(8))) / a4.pow(3).scale(&rat(32));
    let g = (a3.pow(4) / a4.pow(3)).scale(&r(3, 256)) - (a3 * a3 * a2 / &a4s).scale(&r(1, 16))
        + (a3 * a1 / a4).scale(&r(1, 4));
    let x = (a0 - &g) / a4.clone();
    match theta_bracket(&u2, &u3, &x, &opts.precision) {
        Err(Error::DeltaPositive) => Ok(false),
        other => other,
    }
}

pub fn deg5_monic_real_nonneg(a: &[QuadReal; 5], strict: bool) -> Result<bool> {
    deg5_monic_real_nonneg_with(a, &PredicateOptions::strict(strict))
}

/// Monic quintic `x⁵ + a₄x⁴ + a₃x³ + a₂x² + a₁x + a₀`; `a` lists `a₄ … a₀`.
pub fn deg5_monic_real_nonneg_with(a: &[QuadReal; 5], opts: &PredicateOptions) -> Result<bool> {
    let [a4, a3, a2, a1, a0] = a;
    let zero = QuadReal::zero();
    let s = opts.strict;
    if !(le(a4, &zero, s) && le(&zero, a3, s) && le(a2, &zero, s) && le(&zero, a1, s) && le(a0, &zero, s)) {
        return Ok(false);
    }
    let a4s = a4 * a4;
    if a3 > &a4s.scale(&r(2, 5)) {
        return Ok(false);
    }
    let m = (a3 * a4).scale(&r(3, 5)) - a4.pow(3).scale(&r(4, 25));
    let rr = a4s.scale(&r(4, 25)) - a3.scale(&r(2, 5));
    let d = a2 - &m;
    if (&d * &d).scale(&rat(4)) > rr.pow(3).scale(&rat(25)) {
        return Ok(false);
    }
    let u2 = a3.scale(&r(3, 10)) - a4s.scale(&r(3, 25));
    let u3 = a4.pow(3).scale(&r(2, 125)) - (a3 * a4).scale(&r(3, 50)) + a2.scale(&r(1, 10));
    let k = a4.pow(4).scale(&r(3, 125)) - (&a4s * a3).scale(&r(3, 25)) + (a2 * a4).scale(&r(2, 5));
    let x = (a1 - &k).scale(&r(1, 5));
    match theta_bracket(&u2, &u3, &x, &opts.precision) {
        Ok(true) => {}
        Ok(false) | Err(Error::DeltaPositive) => return Ok(false),
        Err(e) => return Err(e),
    }
    let u4 = a4.pow(4).scale(&r(-3, 625)) + (&a4s * a3).scale(&r(3, 125)) - (a4 * a2).scale(&r(2, 25))
        + a1.scale(&r(1, 5));
    if !all_real_quartic_derivative(&u2, &u3, &u4)? {
        return Ok(false);
    }
    let f = Poly::new(vec![a0.clone(), a1.clone(), a2.clone(), a3.clone(), a4.clone(), QuadReal::one()]);
    let shift = a4.scale(&r(-1, 5));
    let target = -a0.clone();
    for p in opts.precision.refinement_schedule() {
        let Some((_, xs)) = ferrari_at(&u2, &u3, &u4, 0, p) else { continue };
        let gam = sorted_enclosures(&xs);
        let sh = Enclosure::from_quad(&shift, p);
        let value = |g: &Enclosure| {
            let b = g.add(&sh);
            let mut acc = Enclosure::from_int(&1.into(), p);
            for c in [a4, a3, a2, a1] {
                acc = acc.mul(&b).add(&Enclosure::from_quad(c, p));
            }
            acc.mul(&b)
        };
        let lam1 = value(&gam[3]).max(&value(&gam[1]));
        let lam2 = value(&gam[2]).min(&value(&gam[0]));
        let lo = lam1.cmp_quad(&target);
        let hi = lam2.cmp_quad(&target);
        if lo == Some(Ordering::Greater) || hi == Some(Ordering::Less) {
            return Ok(false);
        }
        if lo.is_some() && hi.is_some() {
            return Ok(true);
        }
    }
    if opts.precision.exact_fallback {
        hyperbolic_nonneg_exact(&f, opts.mode())
    } else {
        Err(Error::PrecisionExhausted { bits: opts.precision.cap_bits })
    }
}

/// Dispatches on the degree (1 to 5) of `f`, which must have a positive
/// leading coefficient.
pub fn real_nonneg_closed_form(f: &Poly<QuadReal>, opts: &PredicateOptions) -> Result<bool> {
    let lc = f.lc();
    positive_lead(&lc)?;
    let d: Vec<QuadReal> = f.descending();
    match d.len() - 1 {
        1 => {
            let root = -(&d[1] / &d[0]);
            Ok(le(&QuadReal::zero(), &root, opts.strict))
        }
        2 => deg2_real_nonneg_with(&[d[0].clone(), d[1].clone(), d[2].clone()], opts),
        3 => deg3_real_nonneg_with(&std::array::from_fn(|i| d[i].clone()), opts),
        4 => deg4_real_nonneg_with(&std::array::from_fn(|i| d[i].clone()), opts),
        5 => deg5_monic_real_nonneg_with(&std::array::from_fn(|i| &d[i + 1] / &lc), opts),
        n => Err(Error::PreconditionViolated(format!("degree {n} outside 1..=5"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<QuadReal> {
        v.iter().map(|&c| QuadReal::int(c)).collect()
    }

    fn arr<const N: usize>(v: &[i64]) -> [QuadReal; N] {
        let v = q(v);
        std::array::from_fn(|i| v[i].clone())
    }

    fn s2(a: i64, b: i64) -> QuadReal {
        QuadReal::from_ints(a, b, 2)
    }

    #[test]
    fn quadratic_examples() {
        assert!(deg2_real_nonneg(&arr(&[1, -3, 2]), false).unwrap());
        assert!(!deg2_real_nonneg(&arr(&[1, 2, 1]), false).unwrap());
        assert!(deg2_real_nonneg(&[s2(1, 0), s2(0, -4), s2(8, 0)], true).unwrap());
        // x² − 12x + 34 = P(x − 4) for P = x² − 4x + 2
        assert!(deg2_real_nonneg(&arr(&[1, -12, 34]), true).unwrap());
    }

    #[test]
    fn cubic_examples() {
        assert!(deg3_real_nonneg(&arr(&[1, -6, 11, -6]), true).unwrap());
        assert!(!deg3_real_nonneg(&arr(&[1, 0, 0, 1]), false).unwrap());
        assert!(deg3_real_nonneg(&[s2(1, 0), s2(0, -6), s2(18, 0), s2(0, -8)], true).unwrap());
    }

    #[test]
    fn quartic_examples() {
        assert!(deg4_real_nonneg(&arr(&[1, -10, 35, -50, 24]), true).unwrap());
        assert!(!deg4_real_nonneg(&arr(&[1, 0, 0, 0, 1]), false).unwrap());
        // complex pair near 3.25 ± 0.7i
        assert!(!deg4_real_nonneg(&arr(&[1, -20, 114, -248, 168]), false).unwrap());
        // (x − 1)²(x − 2)²: ties in the critical values
        assert!(deg4_real_nonneg(&arr(&[1, -6, 13, -12, 4]), true).unwrap());
        // x⁴: everything degenerates to zero
        assert!(deg4_real_nonneg(&arr(&[1, 0, 0, 0, 0]), false).unwrap());
        assert!(!deg4_real_nonneg(&arr(&[1, 0, 0, 0, 0]), true).unwrap());
    }

    #[test]
    fn quintic_examples() {
        assert!(deg5_monic_real_nonneg(&arr(&[-15, 85, -225, 274, -120]), true).unwrap());
        assert!(!deg5_monic_real_nonneg(&arr(&[0, 0, 0, 0, 1]), false).unwrap());
        // (x − 1)²(x − 2)²(x − 3)
        let lin = |r: i64| Poly::<QuadReal>::from_i64s(&[-r, 1]);
        let f = lin(1).pow(2).mul(&lin(2).pow(2)).mul(&lin(3));
        assert!(real_nonneg_closed_form(&f, &PredicateOptions::strict(true)).unwrap());
    }

    #[test]
    fn literal_convention_differs() {
        let opts = PredicateOptions { convention: Convention::PaperLiteral, ..Default::default() };
        assert!(!deg2_real_nonneg_with(&arr(&[1, -3, 2]), &opts).unwrap());
        assert!(!deg3_real_nonneg_with(&arr(&[1, -6, 11, -6]), &opts).unwrap());
        assert!(!deg4_real_nonneg_with(&arr(&[1, -10, 35, -50, 24]), &opts).unwrap());
    }

    #[test]
    fn closed_form_matches_oracle_on_small_grid() {
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let f = Poly::<QuadReal>::from_i64s(&[c, b, a, 1]);
                    for strict in [false, true] {
                        let want = hyperbolic_nonneg_exact(&f, RootMode::from_strict(strict)).unwrap();
                        let got = real_nonneg_closed_form(&f, &PredicateOptions::strict(strict)).unwrap();
                        assert_eq!(got, want, "{f:?} strict={strict}");
                    }
                }
            }
        }
    }
}
