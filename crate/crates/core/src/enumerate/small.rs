//! `g ≤ 3`: every bound is rational or lies in `Q(√q)`, so all decisions are
//! exact.

use crate::error::Result;
use crate::exact::QuadReal;

use super::range::{to_i64, IntRange};
use super::{frac, rat, Ctx, Record};

fn q_int(ctx: &Ctx, a: i64) -> QuadReal {
    let _ = ctx;
    QuadReal::int(a)
}

/// `|a₁| ≤ c√q` with `c = 2g`.
pub(crate) fn a1_range(ctx: &Ctx, g: usize) -> Result<IntRange> {
    let bound = ctx.sqrt_q().scale(&rat(2 * g as i64));
    let m = to_i64(&bound.floor())?;
    Ok(IntRange::exact(-m, m))
}

pub(crate) fn g1(ctx: &Ctx, a: i64, out: &mut Vec<Record>) {
    ctx.visit(1);
    let real = (a as i128) * (a as i128) == 4 * ctx.q as i128;
    ctx.emit(out, vec![a], real);
}

pub(crate) fn g2(ctx: &Ctx, a: i64, out: &mut Vec<Record>) -> Result<()> {
    let sq = ctx.sqrt_q();
    let q = ctx.qr();
    let lower = (&sq * &q_int(ctx, a.abs())).scale(&rat(2)) - QuadReal::rational(&q * rat(2));
    let upper = QuadReal::rational(&q * rat(2) + rat(a) * rat(a) * frac(1, 4));
    let edge = (a as i128).pow(2) == 16 * ctx.q as i128;
    let r = IntRange::between(&lower, &upper)?;
    ctx.visit(r.len());
    for b in r.iter() {
        let real = edge || QuadReal::int(b) == lower;
        ctx.emit(out, vec![a, b], real);
    }
    Ok(())
}

pub(crate) fn g3(ctx: &Ctx, a1: i64, out: &mut Vec<Record>) -> Result<()> {
    let sq = ctx.sqrt_q();
    let q = ctx.qr();
    let a1r = rat(a1);
    let a1_edge = (a1 as i128).pow(2) == 36 * ctx.q as i128;
    // (b*) and (b)
    let b_star = (&sq * &QuadReal::int(a1.abs())).scale(&rat(4)) - QuadReal::rational(&q * rat(9));
    let b_up = QuadReal::rational(&a1r * &a1r * frac(1, 3) + &q * rat(3));
    for a2 in IntRange::between(&b_star, &b_up)?.iter() {
        let a2r = rat(a2);
        // (c): |a₃ − M| ≤ (2/27) D^{3/2}
        let m = -frac(2, 27) * &a1r * &a1r * &a1r + &a1r * &a2r * frac(1, 3) + &q * &a1r;
        let d = &a1r * &a1r - rat(3) * &a2r + rat(9) * &q;
        let c = IntRange::radical(&m, &(frac(4, 729) * &d * &d * &d))?;
        // (d)
        let lin = QuadReal::rational(-rat(2) * &q * &a1r);
        let rad = (&sq * &QuadReal::int(a2)).scale(&rat(2)) + (&sq * &QuadReal::rational(q.clone())).scale(&rat(2));
        let (d_lo, d_hi) = (&lin - &rad, &lin + &rad);
        let r = c.intersect(&IntRange::between(&d_lo, &d_hi)?);
        ctx.visit(r.len());
        let edge = a1_edge || QuadReal::int(a2) == b_star;
        for a3 in r.iter() {
            let x = QuadReal::int(a3);
            let real = edge || x == d_lo || x == d_hi;
            ctx.emit(out, vec![a1, a2, a3], real);
        }
    }
    Ok(())
}
