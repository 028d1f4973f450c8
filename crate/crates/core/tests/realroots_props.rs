use proptest::prelude::*;
use weilpoly_core::exact::{isolate_real_roots, Enclosure, Poly, PrecisionConfig, QuadReal};
use weilpoly_core::realroots::{
    diamond_all_real, ferrari_roots_branch, hyperbolic_nonneg_exact, real_nonneg_closed_form, sign_mult_all_real,
    theta_cubic, theta_sorted, DiamondInput, PredicateOptions, RootMode,
};

fn poly(c: &[i64]) -> Poly<QuadReal> {
    Poly::<QuadReal>::from_i64s(c)
}

fn from_roots(roots: &[i64]) -> Poly<QuadReal> {
    roots.iter().fold(poly(&[1]), |acc, &r| acc.mul(&poly(&[-r, 1])))
}

/// Alternating-sign monic tuples, the only region where the predicates do
/// more than a sign test.
fn alternating(deg: usize) -> impl Strategy<Value = Poly<QuadReal>> {
    prop::collection::vec(0i64..=60, deg).prop_map(move |mags| {
        let mut c: Vec<i64> = mags
            .iter()
            .enumerate()
            .map(|(i, &m)| if (deg - i) % 2 == 1 { -m } else { m })
            .collect();
        c.push(1);
        poly(&c)
    })
}

fn check_closed_form(f: &Poly<QuadReal>) {
    for strict in [false, true] {
        let want = hyperbolic_nonneg_exact(f, RootMode::from_strict(strict)).unwrap();
        let got = real_nonneg_closed_form(f, &PredicateOptions::strict(strict)).unwrap();
        assert_eq!(got, want, "{f:?} strict={strict}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn quartic_closed_form_matches_sturm(f in alternating(4)) {
        check_closed_form(&f);
    }

    #[test]
    fn quintic_closed_form_matches_sturm(f in alternating(5)) {
        check_closed_form(&f);
    }

    #[test]
    fn closed_form_on_products_of_roots(roots in prop::collection::vec(-2i64..=8, 2..=5), shift in -3i64..=3) {
        let f = from_roots(&roots);
        check_closed_form(&f);
        let g = f.add(&poly(&[shift]));
        check_closed_form(&g);
    }

    #[test]
    fn diamond_agrees_with_sign_mult(roots in prop::collection::vec(-4i64..=4, 1..=7), c in -40i64..=40) {
        // antiderivative of a real-rooted f' plus a constant
        let d = from_roots(&roots);
        let mut coeffs = vec![QuadReal::int(c)];
        for (i, a) in d.coeffs().iter().enumerate() {
            coeffs.push(a.scale(&num_rational::BigRational::new(1.into(), ((i + 1) as i64).into())));
        }
        let f = Poly::new(coeffs);
        for mode in [RootMode::AllReal, RootMode::RealNonNeg, RootMode::RealPos] {
            let a = diamond_all_real(&DiamondInput::from_poly(&f).unwrap(), mode).unwrap();
            let b = sign_mult_all_real(&f, mode).unwrap();
            prop_assert_eq!(a, b);
            prop_assert_eq!(a, hyperbolic_nonneg_exact(&f, mode).unwrap());
        }
    }

    #[test]
    fn theta_invariant_under_u3_negation(n2 in -60i64..=0, d2 in 1i64..=6, n3 in -30i64..=30, d3 in 1i64..=6) {
        let u2 = QuadReal::rational(num_rational::BigRational::new(n2.into(), d2.into()));
        let u3 = QuadReal::rational(num_rational::BigRational::new(n3.into(), d3.into()));
        let cfg = PrecisionConfig::default();
        let (Ok(a), Ok(b)) = (theta_sorted(&u2, &u3, &cfg), theta_sorted(&u2, &-&u3, &cfg)) else {
            return Ok(());
        };
        let t = theta_cubic(&u2, &u3);
        for (x, y) in a.sorted.iter().zip(&b.sorted) {
            prop_assert!(x.enclosure.intersects(&y.enclosure));
            let p = x.enclosure.precision();
            let mut acc = Enclosure::from_int(&0.into(), p);
            for c in t.coeffs().iter().rev() {
                acc = acc.mul(&x.enclosure).add(&Enclosure::from_quad(c, p));
            }
            prop_assert!(acc.contains_zero());
        }
    }

    #[test]
    fn ferrari_branch_invariance(roots in prop::collection::vec(-9i64..=9, 4)) {
        // depress x⁴ + … with the four integer roots: shift by the mean
        let f = from_roots(&roots);
        let mean = QuadReal::rational(num_rational::BigRational::new(roots.iter().sum::<i64>().into(), 4.into()));
        let dep = f.compose_linear(&QuadReal::int(1), &mean);
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let quarter = num_rational::BigRational::new(1.into(), 4.into());
        let (u2, u3, u4) = (dep.coeff(2).scale(&half), dep.coeff(1).scale(&quarter), dep.coeff(0));
        let cfg = PrecisionConfig::default();
        let base = ferrari_roots_branch(&u2, &u3, &u4, 0, &cfg).unwrap();
        prop_assert!(base.all_real);
        let mut exact: Vec<f64> = roots.iter().map(|&r| r as f64 - mean.to_f64()).collect();
        exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for b in 1..3 {
            let other = ferrari_roots_branch(&u2, &u3, &u4, b, &cfg).unwrap();
            for (x, y) in base.gammas.iter().zip(&other.gammas) {
                prop_assert!(x.intersects(y));
            }
        }
        for (g, e) in base.gammas.iter().zip(&exact) {
            prop_assert!((g.to_f64() - e).abs() < 1e-9);
        }
    }

    #[test]
    fn roots_of_derivative_interlace(roots in prop::collection::vec(-6i64..=6, 5)) {
        let f = from_roots(&roots);
        let mut sorted = roots.clone();
        sorted.sort();
        let crit = isolate_real_roots(&f.derivative()).unwrap();
        let mut flat = Vec::new();
        for c in &crit {
            for _ in 0..c.multiplicity {
                flat.push(c.clone());
            }
        }
        prop_assert_eq!(flat.len(), 4);
        for (i, c) in flat.iter().enumerate() {
            prop_assert!(c.cmp_value(&QuadReal::int(sorted[i])).is_ge());
            prop_assert!(c.cmp_value(&QuadReal::int(sorted[i + 1])).is_le());
        }
    }
}
