//! Embedded invariant suite run by `weilpoly selftest`.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerate::{EnumConfig, ThetaOrder};
use crate::error::Result;
use crate::exact::{isolate_real_roots, Poly, PrecisionConfig, QuadReal};
use crate::realroots::{
    diamond_all_real, ferrari_roots_branch, hyperbolic_nonneg_exact, real_nonneg_closed_form, sign_mult_all_real,
    theta_sorted, DiamondInput, PredicateOptions, RootMode,
};
use crate::weil::{a_from_trace, functional_eq_holds, trace_prefix, WeilCandidate};

use super::{compare, CompareOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestConfig {
    pub precision: PrecisionConfig,
    pub theta_order: ThetaOrder,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { precision: PrecisionConfig::default(), theta_order: ThetaOrder::Sorted, seed: 7 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// `q` values of the genus-4 runs behind the critical-value ordering check;
/// the unsorted order already gives wrong decisions for `q = 2`.
pub const THETA_ORDER_QS: [u64; 1] = [2];

fn from_roots(roots: &[i64]) -> Poly<QuadReal> {
    roots.iter().fold(Poly::<QuadReal>::from_i64s(&[1]), |acc, &r| acc.mul(&Poly::<QuadReal>::from_i64s(&[-r, 1])))
}

fn check(name: &str, failure: Option<String>) -> Check {
    Check { name: name.into(), passed: failure.is_none(), detail: failure.unwrap_or_default() }
}

fn trace_identities(rng: &mut ChaCha8Rng) -> Option<String> {
    for _ in 0..200 {
        let q = [2u64, 3, 4, 5, 7, 8, 9][rng.random_range(0..7)];
        let g = rng.random_range(1..=5);
        let a: Vec<i64> = (0..g).map(|_| rng.random_range(-30..=30)).collect();
        let c = WeilCandidate { q, a: a.clone() };
        let h = c.expand();
        let back: Vec<i64> = a_from_trace(q, g, &trace_prefix(q, g, &a)).iter().map(|v| v.try_into().unwrap()).collect();
        if !functional_eq_holds(&h, q, g) || WeilCandidate::from_full(&h, q).ok() != Some(c.clone()) || back != a {
            return Some(format!("q={q} a={a:?}"));
        }
    }
    None
}

fn ferrari_branches(rng: &mut ChaCha8Rng, prec: &PrecisionConfig) -> Result<Option<String>> {
    for _ in 0..100 {
        let roots: Vec<i64> = (0..4).map(|_| rng.random_range(-9..=9)).collect();
        let f = from_roots(&roots);
        let mean = QuadReal::rational(BigRational::new(roots.iter().sum::<i64>().into(), 4.into()));
        let dep = f.compose_linear(&QuadReal::int(1), &mean);
        let half = BigRational::new(1.into(), 2.into());
        let quarter = BigRational::new(1.into(), 4.into());
        let (u2, u3, u4) = (dep.coeff(2).scale(&half), dep.coeff(1).scale(&quarter), dep.coeff(0));
        let base = ferrari_roots_branch(&u2, &u3, &u4, 0, prec)?;
        for b in 1..3 {
            let other = ferrari_roots_branch(&u2, &u3, &u4, b, prec)?;
            if !base.gammas.iter().zip(&other.gammas).all(|(x, y)| x.intersects(y)) {
                return Ok(Some(format!("roots {roots:?}, branch {b}")));
            }
        }
    }
    Ok(None)
}

fn interlacing(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..100 {
        let mut roots: Vec<i64> = (0..5).map(|_| rng.random_range(-6..=6)).collect();
        roots.sort();
        let crit = isolate_real_roots(&from_roots(&roots).derivative())?;
        let flat: Vec<_> = crit.iter().flat_map(|c| std::iter::repeat_n(c, c.multiplicity as usize)).collect();
        let ok = flat.len() == 4
            && flat.iter().enumerate().all(|(i, c)| {
                c.cmp_value(&QuadReal::int(roots[i])).is_ge() && c.cmp_value(&QuadReal::int(roots[i + 1])).is_le()
            });
        if !ok {
            return Ok(Some(format!("roots {roots:?}")));
        }
    }
    Ok(None)
}

fn theta_symmetry(rng: &mut ChaCha8Rng, prec: &PrecisionConfig) -> Result<Option<String>> {
    for _ in 0..100 {
        let u2 = QuadReal::rational(BigRational::new(rng.random_range(-60..=0).into(), rng.random_range(1..=6).into()));
        let u3 = QuadReal::rational(BigRational::new(rng.random_range(-30..=30).into(), rng.random_range(1..=6).into()));
        let (Ok(a), Ok(b)) = (theta_sorted(&u2, &u3, prec), theta_sorted(&u2, &-&u3, prec)) else {
            continue;
        };
        if !a.sorted.iter().zip(&b.sorted).all(|(x, y)| x.enclosure.intersects(&y.enclosure)) {
            return Ok(Some(format!("u2={u2:?} u3={u3:?}")));
        }
    }
    Ok(None)
}

fn closed_forms(prec: &PrecisionConfig) -> Result<Option<String>> {
    for deg in 2..=4usize {
        let n = 7i64.pow(deg as u32);
        for idx in 0..n {
            let mut c: Vec<i64> = (0..deg).map(|i| (idx / 7i64.pow(i as u32)) % 7 - 3).collect();
            c.push(1);
            let f = Poly::<QuadReal>::from_i64s(&c);
            for strict in [false, true] {
                let opts = PredicateOptions { strict, precision: *prec, ..Default::default() };
                if real_nonneg_closed_form(&f, &opts)? != hyperbolic_nonneg_exact(&f, RootMode::from_strict(strict))? {
                    return Ok(Some(format!("{c:?} strict={strict}")));
                }
            }
        }
    }
    Ok(None)
}

fn critical_point_criteria(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..100 {
        let k = rng.random_range(1..=6);
        let roots: Vec<i64> = (0..k).map(|_| rng.random_range(-4..=4)).collect();
        let d = from_roots(&roots);
        let mut coeffs = vec![QuadReal::int(rng.random_range(-40..=40))];
        for (i, a) in d.coeffs().iter().enumerate() {
            coeffs.push(a.scale(&BigRational::new(1.into(), ((i + 1) as i64).into())));
        }
        let f = Poly::new(coeffs);
        for mode in [RootMode::AllReal, RootMode::RealNonNeg, RootMode::RealPos] {
            let a = diamond_all_real(&DiamondInput::from_poly(&f)?, mode)?;
            if a != sign_mult_all_real(&f, mode)? || a != hyperbolic_nonneg_exact(&f, mode)? {
                return Ok(Some(format!("derivative roots {roots:?}, {mode:?}")));
            }
        }
    }
    Ok(None)
}

fn enumeration_vs_oracle(cfg: &SelftestConfig, pairs: &[(u64, usize)]) -> Result<Option<String>> {
    for &(q, g) in pairs {
        let enumeration = EnumConfig { precision: cfg.precision, theta_order: cfg.theta_order, ..EnumConfig::new(q, g) };
        let r = compare(q, g, &CompareOptions { enumeration: Some(enumeration), ..CompareOptions::new() })?;
        if !r.ok() {
            return Ok(Some(format!(
                "q={q} g={g}: {} missing, {} spurious, {} real-root violations",
                r.missing.len(),
                r.spurious.len(),
                r.realroot_violations.len()
            )));
        }
    }
    Ok(None)
}

/// Runs every check; errors (such as exhausted precision) abort the run.
pub fn run(cfg: &SelftestConfig) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let p = &cfg.precision;
    let theta_pairs: Vec<(u64, usize)> = THETA_ORDER_QS.iter().map(|&q| (q, 4)).collect();
    let checks = vec![
        check("trace-identities", trace_identities(&mut rng)),
        check("ferrari-branch-invariance", ferrari_branches(&mut rng, p)?),
        check("derivative-interlacing", interlacing(&mut rng)?),
        check("theta-u3-symmetry", theta_symmetry(&mut rng, p)?),
        check("closed-form-vs-sturm", closed_forms(p)?),
        check("diamond-vs-sign-mult", critical_point_criteria(&mut rng)?),
        check("enumeration-vs-oracle", enumeration_vs_oracle(cfg, &[(2, 1), (3, 2), (2, 3), (4, 3)])?),
        check("theta-sorting", enumeration_vs_oracle(cfg, &theta_pairs)?),
    ];
    Ok(SelftestReport { checks })
}
