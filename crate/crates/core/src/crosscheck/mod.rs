//! Brute-force membership oracles that never consult the coefficient
//! inequalities or the closed-form predicates, and the harness comparing them
//! with the enumeration.

pub mod selftest;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate, EnumConfig, EnumStats, Mode, Record};
use crate::error::{Error, Result};
use crate::exact::{count_roots_closed, Poly, QuadReal};
use crate::realroots::{real_nonneg_closed_form, Convention, PredicateOptions};
use crate::weil::{a_from_trace, coefficient_box, trace_prefix, validate_q, WeilCandidate};

/// Default cap on the number of tuples an oracle may visit.
pub const DEFAULT_BUDGET: u64 = 500_000_000;

/// The box `|aᵢ| ≤ binom(2g, i) ⌈q^{i/2}⌉` containing every member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffBox {
    pub q: u64,
    pub g: usize,
    pub bounds: Vec<i64>,
}

impl CoeffBox {
    pub fn new(q: u64, g: usize) -> Result<CoeffBox> {
        validate_q(q)?;
        if g == 0 {
            return Err(Error::InvalidArgument("g must be at least 1".into()));
        }
        Ok(CoeffBox { q, g, bounds: coefficient_box(q, g) })
    }

    /// Number of integer tuples in the box.
    pub fn size(&self) -> u128 {
        self.bounds.iter().map(|&b| 2 * b as u128 + 1).product()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<i64> {
        self.bounds.iter().map(|&b| rng.random_range(-b..=b)).collect()
    }

    /// Every tuple, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let mut cur: Option<Vec<i64>> = Some(self.bounds.iter().map(|&b| -b).collect());
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut i = self.g;
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                if next[i] < self.bounds[i] {
                    next[i] += 1;
                    cur = Some(next);
                    break;
                }
                next[i] = -self.bounds[i];
            }
            Some(out)
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    /// Walk the coefficient box `a₁, …, a_g`.
    #[default]
    CoeffBox,
    /// Walk the trace coefficients `c₁, …, c_g` of `P` and map back.
    TraceSpace,
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn spend(&self, n: u64) -> Result<()> {
        if self.used.fetch_add(n, Ordering::Relaxed) + n > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Whether the `(g − k)`-th derivative of `P`, determined by `c₁ … c_k`, has
/// all `k` roots in `[−2√q, 2√q]`; by Rolle's theorem this is necessary for
/// `P` to have all its roots there.
fn derivative_roots_inside(q: u64, g: usize, c: &[BigInt]) -> bool {
    let k = c.len();
    let coeff = |j: usize| if j == 0 { BigInt::one() } else { c[j - 1].clone() };
    // the coefficient of y^{k−j} is c_j (g − j)! / (k − j)!
    let desc: Vec<QuadReal> = (0..=k)
        .map(|j| {
            let f: BigInt = ((k - j + 1)..=(g - j)).map(BigInt::from).product();
            QuadReal::rational((coeff(j) * f).into())
        })
        .collect();
    let d = Poly::from_descending(desc);
    let m = QuadReal::from_ints(0, 2, q);
    count_roots_closed(&d, &-&m, &m).expect("monic up to a positive factor") == k
}

fn walk_coefficients(q: u64, g: usize, bounds: &[i64], prefix: &mut Vec<i64>, budget: &Budget, out: &mut Vec<WeilCandidate>) -> Result<()> {
    let k = prefix.len();
    let b = bounds[k];
    budget.spend(2 * b as u64 + 1)?;
    for x in -b..=b {
        prefix.push(x);
        if k + 1 == g {
            let c = WeilCandidate { q, a: prefix.clone() };
            if c.is_weil() {
                out.push(c);
            }
        } else if derivative_roots_inside(q, g, &trace_prefix(q, g, prefix)) {
            walk_coefficients(q, g, bounds, prefix, budget, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// `⌊binom(g, k) (2√q)^k⌋`, a bound on `|c_k|` for members.
fn trace_bound(q: u64, g: usize, k: usize) -> BigInt {
    let b = binomial(BigInt::from(g), BigInt::from(k));
    (&b * &b * Pow::pow(BigInt::from(4 * q), k)).sqrt()
}

fn walk_trace(q: u64, g: usize, prefix: &mut Vec<BigInt>, budget: &Budget, out: &mut Vec<WeilCandidate>) -> Result<()> {
    let k = prefix.len() + 1;
    let b = trace_bound(q, g, k);
    let width: BigInt = &b * 2 + 1;
    budget.spend(width.to_u64().unwrap_or(u64::MAX))?;
    let mut x = -b.clone();
    while x <= b {
        prefix.push(x.clone());
        if k == g {
            let a = a_from_trace(q, g, prefix)
                .iter()
                .map(|v| v.to_i64().ok_or_else(|| Error::InvalidArgument("coefficient overflow".into())))
                .collect::<Result<Vec<i64>>>()?;
            let c = WeilCandidate { q, a };
            if c.is_weil() {
                out.push(c);
            }
        } else if derivative_roots_inside(q, g, prefix) {
            walk_trace(q, g, prefix, budget, out)?;
        }
        prefix.pop();
        x += 1;
    }
    Ok(())
}

/// Every member of `W_q(g)`, decided by exact root counting alone. Both
/// walks prune a prefix when a derivative of `P` already has a root outside
/// `[−2√q, 2√q]`; `budget` caps the number of visited tuples.
pub fn brute_force_enum(q: u64, g: usize, kind: OracleKind, budget: u64) -> Result<Vec<WeilCandidate>> {
    let bx = CoeffBox::new(q, g)?;
    let budget = Budget { limit: budget, used: AtomicU64::new(0) };
    let mut out = match kind {
        OracleKind::CoeffBox => {
            budget.spend(2 * bx.bounds[0] as u64 + 1)?;
            let chunks = (-bx.bounds[0]..=bx.bounds[0])
                .into_par_iter()
                .map(|a1| -> Result<Vec<WeilCandidate>> {
                    let mut out = Vec::new();
                    if g == 1 {
                        let c = WeilCandidate { q, a: vec![a1] };
                        if c.is_weil() {
                            out.push(c);
                        }
                    } else if derivative_roots_inside(q, g, &trace_prefix(q, g, &[a1])) {
                        walk_coefficients(q, g, &bx.bounds, &mut vec![a1], &budget, &mut out)?;
                    }
                    Ok(out)
                })
                .collect::<Vec<_>>();
            let mut all = Vec::new();
            for c in chunks {
                all.extend(c?);
            }
            all
        }
        OracleKind::TraceSpace => {
            let mut out = Vec::new();
            walk_trace(q, g, &mut Vec::new(), &budget, &mut out)?;
            out
        }
    };
    out.sort();
    Ok(out)
}

/// Membership decided by the closed-form predicates with the printed sign
/// conventions, applied to `h±`; only meaningful for `2 ≤ g ≤ 4`.
pub fn literal_member(c: &WeilCandidate) -> Result<bool> {
    let opts = PredicateOptions { convention: Convention::PaperLiteral, ..Default::default() };
    let h = c.h_plus_minus();
    Ok(real_nonneg_closed_form(&h.hplus, &opts)? && real_nonneg_closed_form(&h.hminus, &opts)?)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub oracle: OracleKind,
    pub budget: u64,
    /// Replace the enumeration by the printed-sign predicates over the box.
    pub paper_literal: bool,
    pub enumeration: Option<EnumConfig>,
}

impl CompareOptions {
    pub fn new() -> CompareOptions {
        CompareOptions { budget: DEFAULT_BUDGET, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub q: u64,
    pub g: usize,
    pub oracle: OracleKind,
    pub paper_literal: bool,
    pub count_theorem: usize,
    pub count_oracle: usize,
    /// Oracle members the enumeration did not produce.
    pub missing: Vec<Vec<i64>>,
    /// Enumerated tuples the oracle rejects.
    pub spurious: Vec<Vec<i64>>,
    pub realroot_count: usize,
    /// Members whose real-root flag, root test and classification disagree.
    pub realroot_violations: Vec<Vec<i64>>,
    /// Whether safe mode produced the same records as theorem mode.
    pub safe_matches: Option<bool>,
    pub stats: Option<EnumStats>,
    pub elapsed_ms: f64,
}

impl CompareReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty()
            && self.spurious.is_empty()
            && self.realroot_violations.is_empty()
            && self.safe_matches != Some(false)
    }
}

/// Tuples of enumerated members whose three real-root signals disagree: the
/// equality flag, `has_real_root` and the classification.
pub fn realroot_violations(records: &[Record]) -> Vec<Vec<i64>> {
    records
        .par_iter()
        .filter(|r| {
            let c = &r.candidate;
            match (c.has_real_root(), c.classify_real_roots()) {
                (Ok(root), Ok(class)) => !(root == r.real_root && root == !class.is_none()),
                _ => false,
            }
        })
        .map(|r| r.candidate.a.clone())
        .collect()
}

fn diff(a: &BTreeSet<Vec<i64>>, b: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    a.difference(b).cloned().collect()
}

/// Compares the theorem-mode enumeration (or, with `paper_literal`, the
/// printed-sign predicates) against the oracle.
pub fn compare(q: u64, g: usize, opts: &CompareOptions) -> Result<CompareReport> {
    let start = Instant::now();
    let oracle = brute_force_enum(q, g, opts.oracle, opts.budget)?;
    let oracle_set: BTreeSet<Vec<i64>> = oracle.iter().map(|c| c.a.clone()).collect();
    let mut report = CompareReport {
        q,
        g,
        oracle: opts.oracle,
        paper_literal: opts.paper_literal,
        count_theorem: 0,
        count_oracle: oracle.len(),
        missing: Vec::new(),
        spurious: Vec::new(),
        realroot_count: 0,
        realroot_violations: Vec::new(),
        safe_matches: None,
        stats: None,
        elapsed_ms: 0.0,
    };
    let got: BTreeSet<Vec<i64>> = if opts.paper_literal {
        if !(2..=4).contains(&g) {
            return Err(Error::InvalidArgument("the printed-sign comparison needs 2 ≤ g ≤ 4".into()));
        }
        let bx = CoeffBox::new(q, g)?;
        if bx.size() > opts.budget as u128 {
            return Err(Error::BudgetExceeded { budget: opts.budget });
        }
        let tuples: Vec<Vec<i64>> = bx.iter().collect();
        let keep = tuples
            .par_iter()
            .map(|a| literal_member(&WeilCandidate { q, a: a.clone() }))
            .collect::<Result<Vec<bool>>>()?;
        tuples.into_iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| a).collect()
    } else {
        let mut cfg = opts.enumeration.clone().unwrap_or_else(|| EnumConfig::new(q, g));
        cfg.q = q;
        cfg.g = g;
        cfg.mode = Mode::Theorem;
        let theorem = enumerate(&cfg)?;
        let safe = enumerate(&EnumConfig { mode: Mode::Safe, ..cfg.clone() })?;
        report.safe_matches = Some(safe.records == theorem.records);
        report.realroot_count = theorem.records.iter().filter(|r| r.real_root).count();
        report.realroot_violations = realroot_violations(&theorem.records);
        report.stats = Some(theorem.stats);
        theorem.records.iter().map(|r| r.candidate.a.clone()).collect()
    };
    report.count_theorem = got.len();
    report.missing = diff(&oracle_set, &got);
    report.spurious = diff(&got, &oracle_set);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub q: u64,
    pub g: usize,
    pub samples: u64,
    pub seed: u64,
    pub enumerated: usize,
    /// Samples that are members.
    pub sampled_members: u64,
    /// Samples where membership in the enumeration and the exact test differ.
    pub disagreements: Vec<Vec<i64>>,
    /// Enumerated tuples rejected by the exact test.
    pub non_members_emitted: Vec<Vec<i64>>,
    pub realroot_violations: Vec<Vec<i64>>,
    pub stats: EnumStats,
    pub elapsed_ms: f64,
}

impl SampleReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty() && self.non_members_emitted.is_empty() && self.realroot_violations.is_empty()
    }
}

/// Checks the enumeration against the exact test on every enumerated tuple
/// and on `samples` uniform draws from the coefficient box.
pub fn sample_compare(cfg: &EnumConfig, samples: u64, seed: u64) -> Result<SampleReport> {
    let start = Instant::now();
    let bx = CoeffBox::new(cfg.q, cfg.g)?;
    let e = enumerate(cfg)?;
    let set: BTreeSet<Vec<i64>> = e.records.iter().map(|r| r.candidate.a.clone()).collect();
    let non_members_emitted: Vec<Vec<i64>> =
        e.records.par_iter().filter(|r| !r.candidate.is_weil()).map(|r| r.candidate.a.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<i64>> = (0..samples).map(|_| bx.sample(&mut rng)).collect();
    let verdicts: Vec<(bool, bool)> = draws
        .par_iter()
        .map(|a| (WeilCandidate { q: cfg.q, a: a.clone() }.is_weil(), set.contains(a)))
        .collect();
    let sampled_members = verdicts.iter().filter(|v| v.0).count() as u64;
    let disagreements =
        draws.into_iter().zip(&verdicts).filter(|(_, v)| v.0 != v.1).map(|(a, _)| a).collect();
    Ok(SampleReport {
        q: cfg.q,
        g: cfg.g,
        samples,
        seed,
        enumerated: e.records.len(),
        sampled_members,
        disagreements,
        non_members_emitted,
        realroot_violations: realroot_violations(&e.records),
        stats: e.stats,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// A tuple on which the unsorted critical-value order gives the wrong
/// membership decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaFault {
    pub q: u64,
    pub a: Vec<i64>,
    pub accepted_unsorted: bool,
    pub is_weil: bool,
}

/// Runs the `g = 4` enumeration with the Cardano construction order and
/// returns every tuple whose decision differs from the exact test.
pub fn theta_order_faults(q: u64) -> Result<Vec<ThetaFault>> {
    use crate::enumerate::ThetaOrder;
    let sorted = enumerate(&EnumConfig::new(q, 4))?;
    let unsorted = enumerate(&EnumConfig { theta_order: ThetaOrder::Construction, ..EnumConfig::new(q, 4) })?;
    let s: BTreeSet<Vec<i64>> = sorted.records.iter().map(|r| r.candidate.a.clone()).collect();
    let u: BTreeSet<Vec<i64>> = unsorted.records.iter().map(|r| r.candidate.a.clone()).collect();
    let mut out: Vec<ThetaFault> = Vec::new();
    for a in s.symmetric_difference(&u) {
        let c = WeilCandidate { q, a: a.clone() };
        let member = c.is_weil();
        let accepted = u.contains(a);
        if accepted != member {
            out.push(ThetaFault { q, a: a.clone(), accepted_unsorted: accepted, is_weil: member });
        }
    }
    Ok(out)
}

/// The first `q` in `qs` exhibiting a wrong decision under the unsorted order.
pub fn find_theta_fault(qs: &[u64]) -> Result<Option<ThetaFault>> {
    for &q in qs {
        if let Some(f) = theta_order_faults(q)?.into_iter().next() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
