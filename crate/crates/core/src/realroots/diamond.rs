use crate::error::{Error, Result};
use crate::exact::{isolate_real_roots, multiplicity_at, Endpoint, Poly, QuadReal, RealRoot, Sign};

use super::RootMode;

/// A polynomial together with the real roots of its derivative, listed with
/// multiplicity from the largest down (`β₁ ≥ β₂ ≥ …`).
#[derive(Clone, Debug)]
pub struct DiamondInput {
    pub f: Poly<QuadReal>,
    pub critical_points: Vec<RealRoot>,
}

fn positive_leading(f: &Poly<QuadReal>) -> Result<Poly<QuadReal>> {
    match f.lc().sign() {
        Sign::Zero => Err(Error::PreconditionViolated("zero polynomial".into())),
        Sign::Negative => Ok(f.neg()),
        Sign::Positive => Ok(f.clone()),
    }
}

impl DiamondInput {
    /// Isolates the roots of `f'`; fails unless all of them are real.
    pub fn from_poly(f: &Poly<QuadReal>) -> Result<DiamondInput> {
        let f = positive_leading(f)?;
        let k = f.degree().unwrap_or(0);
        if k == 0 {
            return Err(Error::PreconditionViolated("constant polynomial".into()));
        }
        let mut critical_points = Vec::new();
        if k > 1 {
            for r in isolate_real_roots(&f.derivative())?.into_iter().rev() {
                for _ in 0..r.multiplicity {
                    critical_points.push(r.clone());
                }
            }
        }
        if critical_points.len() != k - 1 {
            return Err(Error::PreconditionViolated("derivative has non-real roots".into()));
        }
        Ok(DiamondInput { f, critical_points })
    }
}

fn sign_at_zero(f: &Poly<QuadReal>) -> Sign {
    f.coeff(0).sign()
}

/// `(−1)^K f(0)` compared with zero as the mode requires, plus the position
/// of the smallest critical point.
fn origin_conditions(f: &Poly<QuadReal>, smallest_critical: Option<&RealRoot>, mode: RootMode) -> bool {
    let k = f.degree().unwrap_or(0);
    let s = if k % 2 == 1 { sign_at_zero(f).flip() } else { sign_at_zero(f) };
    let zero = QuadReal::int(0);
    match mode {
        RootMode::AllReal => true,
        RootMode::RealNonNeg => {
            s != Sign::Negative && smallest_critical.is_none_or(|b| b.cmp_value(&zero).is_ge())
        }
        RootMode::RealPos => s == Sign::Positive && smallest_critical.is_none_or(|b| b.cmp_value(&zero).is_gt()),
    }
}

/// Critical-value criterion: with `β₁ ≥ … ≥ β_{K−1}` the roots of `f'`,
/// `f` has only real roots iff `f(βᵢ) ≤ 0` for odd `i` and `≥ 0` for even `i`
/// (leading coefficient made positive). The modes add the position of the
/// critical points and the sign of `(−1)^K f(0)`.
pub fn diamond_all_real(input: &DiamondInput, mode: RootMode) -> Result<bool> {
    let f = positive_leading(&input.f)?;
    for (i, beta) in input.critical_points.iter().enumerate() {
        let s = beta.sign_of(&f);
        let ok = if i % 2 == 0 { s != Sign::Positive } else { s != Sign::Negative };
        if !ok {
            return Ok(false);
        }
    }
    Ok(origin_conditions(&f, input.critical_points.last(), mode))
}

/// Extrema of `f` (roots of `f'` of odd order) and the resulting sign pattern.
#[derive(Clone, Debug)]
pub struct CriticalPointProfile {
    /// `α₁ > α₂ > … > α_k`.
    pub extrema: Vec<RealRoot>,
    /// Signs of `f(α₀), …, f(α_{k+1})` including the sentinels at ±∞.
    pub signs: Vec<Sign>,
    pub sign_holds: bool,
    pub mult_holds: bool,
}

impl CriticalPointProfile {
    pub fn new(f: &Poly<QuadReal>) -> Result<CriticalPointProfile> {
        let f = positive_leading(f)?;
        let k = f.degree().unwrap_or(0);
        let roots = if k > 1 { isolate_real_roots(&f.derivative())? } else { Vec::new() };
        let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
        if total as usize != k.saturating_sub(1) {
            return Err(Error::PreconditionViolated("derivative has non-real roots".into()));
        }
        let mult_holds = roots.iter().filter(|r| r.multiplicity > 1).all(|r| r.sign_of(&f) == Sign::Zero);
        let extrema: Vec<RealRoot> = roots.into_iter().rev().filter(|r| r.multiplicity % 2 == 1).collect();
        let mut signs = vec![Sign::Positive];
        signs.extend(extrema.iter().map(|a| a.sign_of(&f)));
        signs.push(if k % 2 == 1 { Sign::Negative } else { Sign::Positive });
        let sign_holds = signs.windows(2).all(|w| w[0].times(w[1]) != Sign::Positive);
        Ok(CriticalPointProfile { extrema, signs, sign_holds, mult_holds })
    }
}

/// Real-rootedness through the extremum sign pattern and the multiple-root
/// condition on `f'`, with the same mode conditions as [`diamond_all_real`].
pub fn sign_mult_all_real(f: &Poly<QuadReal>, mode: RootMode) -> Result<bool> {
    let profile = CriticalPointProfile::new(f)?;
    if !(profile.sign_holds && profile.mult_holds) {
        return Ok(false);
    }
    let f = positive_leading(f)?;
    let k = f.degree().unwrap_or(0);
    let smallest = if k > 1 { isolate_real_roots(&f.derivative())?.into_iter().next() } else { None };
    Ok(origin_conditions(&f, smallest.as_ref(), mode))
}

/// Sturm-based cross-check: number of roots in the region required by the
/// mode equals the degree.
pub(crate) fn exact_count_matches(f: &Poly<QuadReal>, mode: RootMode) -> Result<bool> {
    let k = f.degree().unwrap_or(0);
    let zero = QuadReal::int(0);
    let n = match mode {
        RootMode::AllReal => {
            crate::exact::count_real_roots_with_multiplicity(f, &Endpoint::NegInf, &Endpoint::PosInf)?
        }
        RootMode::RealNonNeg => {
            crate::exact::count_real_roots_with_multiplicity(f, &Endpoint::At(zero.clone()), &Endpoint::PosInf)?
                + multiplicity_at(f, &zero)
        }
        RootMode::RealPos => {
            crate::exact::count_real_roots_with_multiplicity(f, &Endpoint::At(zero), &Endpoint::PosInf)?
        }
    };
    Ok(n == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realroots::hyperbolic_nonneg_exact;

    fn p(c: &[i64]) -> Poly<QuadReal> {
        Poly::<QuadReal>::from_i64s(c)
    }

    #[test]
    fn diamond_on_examples() {
        // (x − 1)(x − 2)(x − 3)
        let f = p(&[-6, 11, -6, 1]);
        let d = DiamondInput::from_poly(&f).unwrap();
        assert!(diamond_all_real(&d, RootMode::RealPos).unwrap());
        // x³ − x + 1 has one real root
        let g = p(&[1, -1, 0, 1]);
        assert!(!diamond_all_real(&DiamondInput::from_poly(&g).unwrap(), RootMode::AllReal).unwrap());
        // (x − 1)²(x + 1): real, but not non-negative
        let h = p(&[1, -1, -1, 1]);
        let dh = DiamondInput::from_poly(&h).unwrap();
        assert!(diamond_all_real(&dh, RootMode::AllReal).unwrap());
        assert!(!diamond_all_real(&dh, RootMode::RealNonNeg).unwrap());
        // x² + 1: f' real-rooted but f is not
        assert!(!diamond_all_real(&DiamondInput::from_poly(&p(&[1, 0, 1])).unwrap(), RootMode::AllReal).unwrap());
    }

    #[test]
    fn precondition() {
        // derivative 3x² + 1 has no real roots
        assert!(matches!(DiamondInput::from_poly(&p(&[0, 1, 0, 1])), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn sign_mult_with_inflection() {
        // x³: f' = 3x² has a double root which is a root of f
        assert!(sign_mult_all_real(&p(&[0, 0, 0, 1]), RootMode::RealNonNeg).unwrap());
        // x³ + 1: multiple root of f' is not a root of f
        assert!(!sign_mult_all_real(&p(&[1, 0, 0, 1]), RootMode::AllReal).unwrap());
        let f = p(&[-6, 11, -6, 1]);
        assert_eq!(sign_mult_all_real(&f, RootMode::RealPos).unwrap(), hyperbolic_nonneg_exact(&f, RootMode::RealPos).unwrap());
    }
}
