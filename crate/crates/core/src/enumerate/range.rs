use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::quad::floor_sqrt_rational;
use crate::exact::{enclose, Enclosure, Expr, PrecisionConfig, QuadReal};

pub(crate) fn to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::InvalidArgument(format!("bound {n} exceeds the 64-bit range")))
}

/// Integer interval `[lo, hi]` over-approximating the integers between two
/// real bounds. Integers in `[lo, lo_sure)` and `(hi_sure, hi]` lie where the
/// enclosure of a bound could not decide and must be settled exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
    pub lo_boundary: bool,
    pub hi_boundary: bool,
    lo_sure: i64,
    hi_sure: i64,
}

impl IntRange {
    pub fn exact(lo: i64, hi: i64) -> IntRange {
        IntRange { lo, hi, lo_boundary: false, hi_boundary: false, lo_sure: lo, hi_sure: hi }
    }

    /// Integers `n` with `lo ≤ n ≤ hi` for exact quadratic-field bounds.
    pub fn between(lo: &QuadReal, hi: &QuadReal) -> Result<IntRange> {
        Ok(IntRange::exact(to_i64(&lo.ceil())?, to_i64(&hi.floor())?))
    }

    /// Integers not below an exact bound (upper end unbounded).
    pub fn at_least(lo: &QuadReal) -> Result<IntRange> {
        Ok(IntRange::exact(to_i64(&lo.ceil())?, i64::MAX))
    }

    pub fn from_enclosures(lo: &Enclosure, hi: &Enclosure) -> Result<IntRange> {
        let (lo_lo, lo_hi) = lo.ceil_bounds();
        let (hi_lo, hi_hi) = hi.floor_bounds();
        let (lo, lo_sure) = (to_i64(&lo_lo)?, to_i64(&lo_hi)?);
        let (hi_sure, hi) = (to_i64(&hi_lo)?, to_i64(&hi_hi)?);
        Ok(IntRange { lo, hi, lo_boundary: lo < lo_sure, hi_boundary: hi_sure < hi, lo_sure, hi_sure })
    }

    /// `|n − m| ≤ √t` for rationals `m` and `t` (empty when `t < 0`).
    pub fn radical(m: &BigRational, t: &BigRational) -> Result<IntRange> {
        if t.is_negative() {
            return Ok(IntRange::exact(1, 0));
        }
        let within = |n: &BigInt| {
            let d = BigRational::from_integer(n.clone()) - m;
            &d * &d <= *t
        };
        let s = floor_sqrt_rational(t);
        let mut hi = (m + BigRational::from_integer(s.clone())).floor().to_integer();
        while within(&(&hi + 1)) {
            hi += 1;
        }
        while !within(&hi) && BigRational::from_integer(hi.clone()) > *m {
            hi -= 1;
        }
        let mut lo = (m - BigRational::from_integer(s)).ceil().to_integer();
        while within(&(&lo - 1)) {
            lo -= 1;
        }
        while !within(&lo) && BigRational::from_integer(lo.clone()) < *m {
            lo += 1;
        }
        if !within(&lo) {
            return Ok(IntRange::exact(1, 0));
        }
        Ok(IntRange::exact(to_i64(&lo)?, to_i64(&hi)?))
    }

    pub fn intersect(&self, o: &IntRange) -> IntRange {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        let lo_sure = self.lo_sure.max(o.lo_sure);
        let hi_sure = self.hi_sure.min(o.hi_sure);
        IntRange { lo, hi, lo_boundary: lo < lo_sure, hi_boundary: hi_sure < hi, lo_sure, hi_sure }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Whether `n` certainly satisfies both bounds.
    pub fn certain(&self, n: i64) -> bool {
        self.lo_sure <= n && n <= self.hi_sure
    }

    pub fn has_uncertain(&self) -> bool {
        !self.is_empty() && (self.lo_boundary || self.hi_boundary)
    }

    pub fn iter(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi as i128 - self.lo as i128 + 1) as u64
        }
    }
}

/// Smallest integer range containing every integer in `[lo, hi]`, with
/// precision doubled (within the refinement schedule) while an endpoint
/// stays undecided.
pub fn integer_range(lo: &Expr, hi: &Expr, cfg: &PrecisionConfig) -> Result<IntRange> {
    let mut last = None;
    for p in cfg.refinement_schedule() {
        let r = IntRange::from_enclosures(&enclose(lo, p)?, &enclose(hi, p)?)?;
        if !r.lo_boundary && !r.hi_boundary {
            return Ok(r);
        }
        last = Some(r);
    }
    Ok(last.expect("schedule is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::quad::rat_frac;

    #[test]
    fn range_of_two_sqrt_two() {
        let b = Expr::c(QuadReal::from_ints(0, 2, 2));
        let r = integer_range(&-b.clone(), &b, &PrecisionConfig::default()).unwrap();
        assert_eq!((r.lo, r.hi, r.lo_boundary, r.hi_boundary), (-2, 2, false, false));
    }

    #[test]
    fn lower_bound_example() {
        // 4√2 − 18 ≈ −12.34
        let r = IntRange::between(&QuadReal::from_ints(-18, 4, 2), &QuadReal::int(0)).unwrap();
        assert_eq!(r.lo, -12);
    }

    #[test]
    fn straddling_enclosure_is_flagged() {
        let tight = Enclosure::hull_of(&rat_frac(8, 1), &rat_frac(80_001, 10_000), 64);
        let r = IntRange::from_enclosures(&tight, &Enclosure::from_int(&BigInt::from(20), 64)).unwrap();
        assert!(r.lo_boundary);
        assert_eq!(r.lo, 8);
        assert!(!r.certain(8));
        assert!(r.certain(9));
    }

    #[test]
    fn radical_ranges() {
        // |n − 1/2| ≤ √(9/4) → n ∈ [−1, 2]
        let r = IntRange::radical(&rat_frac(1, 2), &rat_frac(9, 4)).unwrap();
        assert_eq!((r.lo, r.hi), (-1, 2));
        let r = IntRange::radical(&rat_frac(1, 3), &rat_frac(1, 100)).unwrap();
        assert!(r.is_empty());
        let r = IntRange::radical(&rat_frac(7, 1), &rat_frac(0, 1)).unwrap();
        assert_eq!((r.lo, r.hi), (7, 7));
    }
}
