//! `g = 5`: the `a₅` bound compares against the critical values of a
//! quintic, reached through the Ferrari roots of its derivative.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::Result;
use crate::exact::enclosure::sorted_enclosures;
use crate::exact::{Enclosure, QuadReal};
use crate::realroots::all_real_quartic_derivative;
use crate::realroots::ferrari::ferrari_at;

use super::g4::theta_admitted;
use super::range::IntRange;
use super::{frac, rat, Ctx, Record};

/// `H(x) = −x⁵ − (10/3)u₂x³ − 10u₃x² − 5u₄x` over enclosures.
fn h_value(x: &Enclosure, u2: &BigRational, u3: &BigRational, u4: &BigRational, p: u32) -> Enclosure {
    let c = |r: BigRational| Enclosure::from_rational(&r, p);
    let coeffs = [rat(-1), rat(0), frac(-10, 3) * u2, rat(-10) * u3, rat(-5) * u4];
    let mut acc = Enclosure::from_rational(&rat(0), p);
    for k in coeffs {
        acc = acc.mul(x).add(&c(k));
    }
    acc.mul(x)
}

/// Integers in `range_g` satisfying the `Λ₁ + A ≤ a₅ ≤ Λ₂ + A` bound.
fn a5_admitted(
    ctx: &Ctx,
    u: [&BigRational; 3],
    a: &BigRational,
    range_g: &IntRange,
    prefix: &[i64],
) -> Result<Vec<i64>> {
    let [u2, u3, u4] = u;
    let through_fallback = |r: &IntRange| -> Result<Vec<i64>> {
        let mut kept = Vec::new();
        for n in r.iter() {
            let mut t = prefix.to_vec();
            t.push(n);
            if ctx.fallback(&t)? {
                kept.push(n);
            }
        }
        Ok(kept)
    };
    let (q2, q3, q4) = (QuadReal::rational(u2.clone()), QuadReal::rational(u3.clone()), QuadReal::rational(u4.clone()));
    if !all_real_quartic_derivative(&q2, &q3, &q4)? {
        ctx.note_anomaly();
        return through_fallback(range_g);
    }
    let schedule = ctx.cfg.precision.refinement_schedule();
    let mut last = None;
    for &p in &schedule {
        let Some((_, xs)) = ferrari_at(&q2, &q3, &q4, 0, p) else { continue };
        let gam = sorted_enclosures(&xs);
        let h: Vec<Enclosure> = gam.iter().map(|g| h_value(g, u2, u3, u4, p)).collect();
        let ae = Enclosure::from_rational(a, p);
        let lam1 = h[0].max(&h[2]).add(&ae);
        let lam2 = h[1].min(&h[3]).add(&ae);
        let r = IntRange::from_enclosures(&lam1, &lam2)?.intersect(range_g);
        let done = !r.has_uncertain();
        last = Some(r);
        if done {
            break;
        }
    }
    let Some(r) = last else {
        return through_fallback(range_g);
    };
    let mut kept = Vec::new();
    for n in r.iter() {
        if r.certain(n) {
            kept.push(n);
        } else {
            let mut t = prefix.to_vec();
            t.push(n);
            if ctx.fallback(&t)? {
                kept.push(n);
            }
        }
    }
    Ok(kept)
}

pub(crate) fn g5(ctx: &Ctx, a1: i64, out: &mut Vec<Record>) -> Result<()> {
    let sq = ctx.sqrt_q();
    let q = ctx.qr();
    let qq = QuadReal::rational(q.clone());
    let a1r = rat(a1);
    let a1sq = &a1r * &a1r;
    let a1_edge = (a1 as i128).pow(2) == 100 * ctx.q as i128;
    let b_star = (&sq * &QuadReal::int(a1.abs())).scale(&rat(8)) - QuadReal::rational(&q * rat(35));
    let b_up = QuadReal::rational(frac(2, 5) * &a1sq + &q * rat(5));
    for a2 in IntRange::between(&b_star, &b_up)?.iter() {
        let a2r = rat(a2);
        let a2_edge = a1_edge || QuadReal::int(a2) == b_star;
        // (c): |a₃ − M| ≤ D^{3/2}/50
        let m = frac(-4, 25) * &a1sq * &a1r + frac(3, 5) * &a1r * &a2r + &q * &a1r;
        let d = rat(4) * &a1sq + rat(50) * &q - rat(10) * &a2r;
        let rc = IntRange::radical(&m, &(&d * &d * &d / rat(2500)))?;
        // (d)
        let lin = QuadReal::rational(rat(-20) * &q * &a1r);
        let rad = (&sq * &QuadReal::int(a2)).scale(&rat(6)) + (&sq * &qq).scale(&rat(50));
        let (d_lo, d_hi) = (&lin - &rad, &lin + &rad);
        for a3 in rc.intersect(&IntRange::between(&d_lo, &d_hi)?).iter() {
            let a3r = rat(a3);
            let x3 = QuadReal::int(a3);
            let a3_edge = a2_edge || x3 == d_lo || x3 == d_hi;
            // (f)
            let f_lo = (&sq * &QuadReal::rational((rat(4) * &q * &a1r + &a3r).abs())).scale(&rat(4))
                - QuadReal::rational(rat(9) * &q * &a2r + rat(25) * &q * &q);
            let base = IntRange::at_least(&f_lo)?;
            // (e)
            let u2 = frac(-3, 25) * &a1sq + frac(3, 10) * &a2r - frac(3, 2) * &q;
            let u3 = frac(2, 125) * &a1sq * &a1r - frac(3, 50) * &a1r * &a2r - frac(1, 10) * &q * &a1r
                + frac(1, 10) * &a3r;
            let k5 = frac(3, 125) * &a1sq * &a1sq - frac(3, 25) * &a1sq * &a2r - &q * &a1sq
                + frac(2, 5) * &a1r * &a3r
                + rat(3) * &q * &a2r
                - rat(5) * &q * &q;
            let a4s = theta_admitted(
                ctx,
                &QuadReal::rational(u2.clone()),
                &QuadReal::rational(u3.clone()),
                &k5,
                5,
                &base,
                &[a1, a2, a3],
            )?;
            for a4 in a4s {
                let a4r = rat(a4);
                let a4_edge = a3_edge || QuadReal::int(a4) == f_lo;
                // (g)
                let lin = QuadReal::rational(rat(-2) * &q * &a3r - rat(2) * &q * &q * &a1r);
                let rad = (&sq * &QuadReal::int(a4)).scale(&rat(2))
                    + (&sq * &QuadReal::rational(&q * &a2r)).scale(&rat(2))
                    + (&sq * &QuadReal::rational(&q * &q)).scale(&rat(2));
                let (g_lo, g_hi) = (&lin - &rad, &lin + &rad);
                let range_g = IntRange::between(&g_lo, &g_hi)?;
                if range_g.is_empty() {
                    continue;
                }
                // (h)
                let u4 = frac(-3, 625) * &a1sq * &a1sq + frac(3, 125) * &a1sq * &a2r + frac(1, 5) * &q * &a1sq
                    - frac(2, 25) * &a1r * &a3r
                    - frac(3, 5) * &q * &a2r
                    + frac(1, 5) * &a4r
                    + &q * &q;
                let a = frac(-4, 3125) * &a1sq * &a1sq * &a1r + &a1sq * &a1r * (&a2r + rat(15) * &q) / rat(125)
                    - &a1sq * &a3r / rat(25)
                    - &a1r * (rat(3) * &a2r * &q - &a4r + rat(5) * &q * &q) / rat(5)
                    + rat(2) * &q * &a3r;
                let a5s = a5_admitted(ctx, [&u2, &u3, &u4], &a, &range_g, &[a1, a2, a3, a4])?;
                ctx.visit(a5s.len() as u64);
                for a5 in a5s {
                    let x5 = QuadReal::int(a5);
                    let real = a4_edge || x5 == g_lo || x5 == g_hi;
                    ctx.emit(out, vec![a1, a2, a3, a4, a5], real);
                }
            }
        }
    }
    Ok(())
}
