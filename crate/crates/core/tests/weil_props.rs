use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use weilpoly_core::exact::{Poly, QuadReal};
use weilpoly_core::weil::{a_from_trace, all_even, real_root_multiplicities, trace_prefix, WeilCandidate};

fn cand(q: u64, a: &[i64]) -> WeilCandidate {
    WeilCandidate::new(q, a.to_vec()).unwrap()
}

fn bigpoly(c: &[i64]) -> Poly<BigInt> {
    Poly::<BigInt>::from_i64s(c)
}

/// `x^g P(x + q/x)` expanded term by term: `x^g (x + q/x)^k = Σ_j binom(k, j) q^j x^{g+k−2j}`.
fn expand_via_trace(c: &WeilCandidate) -> Poly<BigInt> {
    let g = c.g();
    let p = c.trace_poly();
    let mut out = vec![BigInt::zero(); 2 * g + 1];
    for k in 0..=g {
        let pk = p.coeff(k);
        for j in 0..=k {
            let b = num_integer::binomial(BigInt::from(k), BigInt::from(j));
            out[g + k - 2 * j] += &pk * b * num_traits::Pow::pow(BigInt::from(c.q), j);
        }
    }
    Poly::new(out)
}

fn quad(q: u64, a: i64, b: i64) -> QuadReal {
    QuadReal::from_ints(a, b, q)
}

fn descending(p: &Poly<QuadReal>) -> Vec<QuadReal> {
    p.descending()
}

#[test]
fn shifted_polynomials_match_the_explicit_tables() {
    // The printed tables list h⁻ (roots 2√q + ωᵢ) in the "+" column and h⁺ in the "−" column.
    for q in [2u64, 3, 4, 5, 9] {
        for a1 in -3..=3 {
            for a2 in -3..=3 {
                let h = cand(q, &[a1, a2]).h_plus_minus();
                let plus = [quad(q, 1, 0), quad(q, a1, -4), quad(q, 2 * q as i64 + a2, -2 * a1)];
                let minus = [quad(q, 1, 0), quad(q, -a1, -4), quad(q, 2 * q as i64 + a2, 2 * a1)];
                assert_eq!(descending(&h.hplus), plus);
                assert_eq!(descending(&h.hminus), minus);
                for a3 in -3..=3 {
                    let h = cand(q, &[a1, a2, a3]).h_plus_minus();
                    let qi = q as i64;
                    let plus = [
                        quad(q, 1, 0),
                        quad(q, a1, -6),
                        quad(q, a2 + 9 * qi, -4 * a1),
                        quad(q, a3 + 2 * qi * a1, -2 * a2 - 2 * qi),
                    ];
                    let minus = [
                        quad(q, 1, 0),
                        quad(q, -a1, -6),
                        quad(q, a2 + 9 * qi, 4 * a1),
                        quad(q, -a3 - 2 * qi * a1, -2 * a2 - 2 * qi),
                    ];
                    assert_eq!(descending(&h.hplus), plus);
                    assert_eq!(descending(&h.hminus), minus);
                    let a4 = a1 - a3;
                    let h = cand(q, &[a1, a2, a3, a4]).h_plus_minus();
                    let plus = [
                        quad(q, 1, 0),
                        quad(q, a1, -8),
                        quad(q, a2 + 20 * qi, -6 * a1),
                        quad(q, a3 + 9 * qi * a1, -4 * a2 - 16 * qi),
                        quad(q, a4 + 2 * qi * a2 + 2 * qi * qi, -2 * a3 - 2 * qi * a1),
                    ];
                    let minus = [
                        quad(q, 1, 0),
                        quad(q, -a1, -8),
                        quad(q, a2 + 20 * qi, 6 * a1),
                        quad(q, -a3 - 9 * qi * a1, -4 * a2 - 16 * qi),
                        quad(q, a4 + 2 * qi * a2 + 2 * qi * qi, 2 * a3 + 2 * qi * a1),
                    ];
                    assert_eq!(descending(&h.hplus), plus);
                    assert_eq!(descending(&h.hminus), minus);
                }
            }
        }
    }
}

#[test]
fn membership_tests_agree_on_small_boxes() {
    for q in [2u64, 3, 4, 5] {
        for g in 1..=3usize {
            let n = 11i64.pow(g as u32);
            for idx in 0..n {
                let a: Vec<i64> = (0..g).map(|i| (idx / 11i64.pow(i as u32)) % 11 - 5).collect();
                let c = cand(q, &a);
                assert_eq!(c.is_weil(), c.is_weil_via_h(), "{c:?}");
            }
        }
    }
}

#[test]
fn real_root_structure_on_members() {
    for q in [2u64, 3, 4, 9] {
        for g in 1..=3usize {
            let n = 13i64.pow(g as u32);
            for idx in 0..n {
                let a: Vec<i64> = (0..g).map(|i| (idx / 13i64.pow(i as u32)) % 13 - 6).collect();
                let c = cand(q, &a);
                if !c.is_weil() {
                    assert!(c.has_real_root().is_err());
                    continue;
                }
                let h = c.expand();
                let class = c.classify_real_roots().unwrap();
                assert_eq!(c.has_real_root().unwrap(), !class.is_none(), "{c:?}");
                assert_eq!(class.reconstruct(q, &h), h, "{c:?}");
                let ms = real_root_multiplicities(&h);
                assert!(all_even(&ms), "{c:?}");
                assert_eq!(ms.is_empty(), class.is_none(), "{c:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn expansion_roundtrips(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 25]), a in prop::collection::vec(-40i64..=40, 1..=5)) {
        let c = cand(q, &a);
        let h = c.expand();
        prop_assert_eq!(&h, &expand_via_trace(&c));
        prop_assert_eq!(WeilCandidate::from_full(&h, q).unwrap(), c.clone());
        let t = trace_prefix(q, c.g(), &a);
        let back: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(a_from_trace(q, c.g(), &t), back);
    }

    #[test]
    fn products_of_weil_factors_are_members(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 9]),
        seed in prop::collection::vec(0usize..1000, 1..=4),
    ) {
        let m = (4 * q).isqrt() as i64;
        let mut h = bigpoly(&[1]);
        for s in &seed {
            let a = (*s as i64) % (2 * m + 1) - m;
            h = h.mul(&bigpoly(&[q as i64, a, 1]));
        }
        let c = WeilCandidate::from_full(&h, q).unwrap();
        prop_assert!(c.is_weil());
        prop_assert!(c.is_weil_via_h());
    }

    #[test]
    fn factor_with_large_middle_term_is_rejected(q in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1i64..=5, other in -2i64..=2) {
        let m = (4 * q).isqrt() as i64;
        let h = bigpoly(&[q as i64, m + k, 1]).mul(&bigpoly(&[q as i64, other, 1]));
        let c = WeilCandidate::from_full(&h, q).unwrap();
        prop_assert!(!c.is_weil());
        prop_assert!(!c.is_weil_via_h());
    }
}
