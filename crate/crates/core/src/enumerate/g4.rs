//! `g = 4`, plus the critical-value bound on `a₄` shared with `g = 5`.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{Enclosure, QuadReal};
use crate::realroots::ResolventData;

use super::range::IntRange;
use super::{frac, rat, Ctx, Record, ThetaOrder};

/// Integers `n` in `base` with `θ₁ ≤ (n − k)/scale ≤ θ₂`, where the `θ` are
/// the critical-value offsets of `y³ + u₂y + u₃`. `prefix` is the coefficient
/// tuple so far, used when a boundary integer must go through the
/// membership test.
pub(super) fn theta_admitted(
    ctx: &Ctx,
    u2: &QuadReal,
    u3: &QuadReal,
    k: &BigRational,
    scale: i64,
    base: &IntRange,
    prefix: &[i64],
) -> Result<Vec<i64>> {
    if base.is_empty() {
        return Ok(Vec::new());
    }
    let p = ctx.cfg.precision.start_bits();
    let data = match ResolventData::at_precision(u2, u3, p) {
        Ok(d) => d,
        Err(Error::DeltaPositive) => {
            ctx.note_anomaly();
            return Ok(Vec::new());
        }
        Err(e) => return Err(e),
    };
    let (t1, t2) = match ctx.cfg.theta_order {
        ThetaOrder::Sorted => (data.sorted[0].enclosure.clone(), data.sorted[1].enclosure.clone()),
        ThetaOrder::Construction => (data.construction[0].clone(), data.construction[1].clone()),
    };
    let ke = Enclosure::from_rational(k, p);
    let range = IntRange::from_enclosures(&ke.add(&t1.mul_int(scale)), &ke.add(&t2.mul_int(scale)))?.intersect(base);
    let mut out = Vec::new();
    for n in range.iter() {
        let keep = if range.certain(n) {
            true
        } else {
            match ctx.cfg.theta_order {
                ThetaOrder::Sorted => {
                    ctx.note_exact_boundary();
                    let x = (rat(n) - k) / rat(scale);
                    data.between_first_two(&QuadReal::rational(x))
                }
                ThetaOrder::Construction => {
                    let mut a = prefix.to_vec();
                    a.push(n);
                    ctx.fallback(&a)?
                }
            }
        };
        if keep {
            out.push(n);
        }
    }
    Ok(out)
}

pub(crate) fn g4(ctx: &Ctx, a1: i64, out: &mut Vec<Record>) -> Result<()> {
    let sq = ctx.sqrt_q();
    let q = ctx.qr();
    let a1r = rat(a1);
    let a1_edge = (a1 as i128).pow(2) == 64 * ctx.q as i128;
    let b_star = (&sq * &QuadReal::int(a1.abs())).scale(&rat(6)) - QuadReal::rational(&q * rat(20));
    let b_up = QuadReal::rational(frac(3, 8) * &a1r * &a1r + &q * rat(4));
    for a2 in IntRange::between(&b_star, &b_up)?.iter() {
        let a2r = rat(a2);
        let a2_edge = a1_edge || QuadReal::int(a2) == b_star;
        // (c)
        let lin = QuadReal::rational(rat(-9) * &q * &a1r);
        let rad = (&sq * &QuadReal::int(a2)).scale(&rat(4)) + (&sq * &QuadReal::rational(q.clone())).scale(&rat(16));
        let (c_lo, c_hi) = (&lin - &rad, &lin + &rad);
        // (d): |a₃ − M| ≤ D^{3/2}/216
        let m = &a1r * &a2r * frac(1, 2) - frac(1, 8) * &a1r * &a1r * &a1r + &q * &a1r;
        let d = rat(9) * &a1r * &a1r - rat(24) * &a2r + rat(96) * &q;
        let r3 = IntRange::between(&c_lo, &c_hi)?.intersect(&IntRange::radical(&m, &(&d * &d * &d / rat(46_656)))?);
        for a3 in r3.iter() {
            let a3r = rat(a3);
            let x3 = QuadReal::int(a3);
            let a3_edge = a2_edge || x3 == c_lo || x3 == c_hi;
            // (e)
            let e_lo = (&sq * &QuadReal::rational((&q * &a1r + &a3r).abs())).scale(&rat(2))
                - QuadReal::rational(rat(2) * &q * &a2r + rat(2) * &q * &q);
            let base = IntRange::at_least(&e_lo)?;
            // (f)
            let u2 = QuadReal::rational(frac(-3, 16) * &a1r * &a1r + &a2r * frac(1, 2) - rat(2) * &q);
            let u3 = QuadReal::rational(
                frac(-1, 32) * &a1r * &a1r * &a1r + frac(1, 8) * &a1r * &a2r + frac(1, 4) * &a1r * &q
                    - frac(1, 4) * &a3r,
            );
            let a1sq = &a1r * &a1r;
            let k = frac(3, 256) * &a1sq * &a1sq - frac(1, 16) * &a1sq * &a2r - frac(1, 2) * &q * &a1sq
                + frac(1, 4) * &a1r * &a3r
                + rat(2) * &q * &a2r
                - rat(2) * &q * &q;
            let a4s = theta_admitted(ctx, &u2, &u3, &k, 1, &base, &[a1, a2, a3])?;
            ctx.visit(a4s.len() as u64);
            for a4 in a4s {
                let real = a3_edge || QuadReal::int(a4) == e_lo;
                ctx.emit(out, vec![a1, a2, a3, a4], real);
            }
        }
    }
    Ok(())
}
