//! Nested-loop enumeration of `W_q(g)` for `g ≤ 5` driven by the coefficient
//! inequalities, with sound integer ranges and exact boundary resolution.

mod g4;
mod g5;
mod range;
mod small;

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{PrecisionConfig, QuadReal};
use crate::weil::{validate_q, WeilCandidate};

pub use range::{integer_range, IntRange};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Membership decided by the inequalities alone.
    #[default]
    Theorem,
    /// Every emitted candidate is also checked with the exact membership test.
    Safe,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    #[default]
    All,
    RealRootsOnly,
    NoRealRoots,
}

impl Filter {
    fn keep(self, real_root: bool) -> bool {
        match self {
            Filter::All => true,
            Filter::RealRootsOnly => real_root,
            Filter::NoRealRoots => !real_root,
        }
    }
}

/// Order in which the critical-value offsets enter the `a₄` bounds for
/// `g = 4` and `g = 5`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaOrder {
    #[default]
    Sorted,
    /// The unsorted Cardano order `k = 0, 1`; a deliberate fault used to
    /// show that sorting matters.
    Construction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    pub q: u64,
    pub g: usize,
    pub mode: Mode,
    pub filter: Filter,
    pub precision: PrecisionConfig,
    /// Worker threads; `0` or `1` runs sequentially.
    pub jobs: usize,
    pub theta_order: ThetaOrder,
}

impl EnumConfig {
    pub fn new(q: u64, g: usize) -> EnumConfig {
        EnumConfig {
            q,
            g,
            mode: Mode::default(),
            filter: Filter::default(),
            precision: PrecisionConfig::default(),
            jobs: 1,
            theta_order: ThetaOrder::default(),
        }
    }
}

/// One enumerated polynomial; `real_root` records that one of the
/// designated inequalities holds with equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub candidate: WeilCandidate,
    pub real_root: bool,
}

#[derive(Debug, Default)]
struct Counters {
    innermost: AtomicU64,
    exact_boundary: AtomicU64,
    fallback: AtomicU64,
    safe_rejections: AtomicU64,
    anomalies: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    /// Integers visited in the innermost loop.
    pub innermost: u64,
    /// Boundary integers settled through the exact critical-value cubic.
    pub exact_boundary: u64,
    /// Boundary integers settled by the exact membership test.
    pub fallback: u64,
    /// Safe mode: candidates accepted by the inequalities but rejected by the
    /// membership test.
    pub safe_rejections: u64,
    /// Cases where the inequalities' preconditions failed unexpectedly
    /// (non-real critical values); handled by the membership test.
    pub anomalies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub q: u64,
    pub g: usize,
    pub records: Vec<Record>,
    pub stats: EnumStats,
}

/// Shared per-run state handed to the genus-specific loops.
pub(crate) struct Ctx<'a> {
    pub q: u64,
    pub cfg: &'a EnumConfig,
    counters: &'a Counters,
}

impl Ctx<'_> {
    pub fn sqrt_q(&self) -> QuadReal {
        QuadReal::sqrt_of(self.q)
    }

    pub fn qr(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.q))
    }

    pub fn visit(&self, n: u64) {
        self.counters.innermost.fetch_add(n, Ordering::Relaxed);
    }

    pub fn note_exact_boundary(&self) {
        self.counters.exact_boundary.fetch_add(1, Ordering::Relaxed);
    }

    pub fn note_anomaly(&self) {
        self.counters.anomalies.fetch_add(1, Ordering::Relaxed);
    }

    /// Settles a boundary candidate with the exact membership test, or fails
    /// when the configuration forbids it.
    pub fn fallback(&self, a: &[i64]) -> Result<bool> {
        if !self.cfg.precision.exact_fallback {
            return Err(Error::PrecisionExhausted { bits: self.cfg.precision.cap_bits });
        }
        self.counters.fallback.fetch_add(1, Ordering::Relaxed);
        Ok(WeilCandidate { q: self.q, a: a.to_vec() }.is_weil())
    }

    /// Applies safe mode and the real-root filter, then stores the record.
    pub fn emit(&self, out: &mut Vec<Record>, a: Vec<i64>, real_root: bool) {
        if !self.cfg.filter.keep(real_root) {
            return;
        }
        let candidate = WeilCandidate { q: self.q, a };
        if self.cfg.mode == Mode::Safe && !candidate.is_weil() {
            self.counters.safe_rejections.fetch_add(1, Ordering::Relaxed);
            return;
        }
        out.push(Record { candidate, real_root });
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Runs the enumeration for `cfg.g ∈ 1..=5`; records are sorted
/// lexicographically in `(a₁, …, a_g)`.
pub fn enumerate(cfg: &EnumConfig) -> Result<Enumeration> {
    validate_q(cfg.q)?;
    if !(1..=5).contains(&cfg.g) {
        return Err(Error::InvalidArgument(format!("g = {} outside 1..=5", cfg.g)));
    }
    let counters = Counters::default();
    let ctx = Ctx { q: cfg.q, cfg, counters: &counters };
    let outer = small::a1_range(&ctx, cfg.g)?;
    let run = |a1: i64| -> Result<Vec<Record>> {
        let mut out = Vec::new();
        match cfg.g {
            1 => small::g1(&ctx, a1, &mut out),
            2 => small::g2(&ctx, a1, &mut out)?,
            3 => small::g3(&ctx, a1, &mut out)?,
            4 => g4::g4(&ctx, a1, &mut out)?,
            _ => g5::g5(&ctx, a1, &mut out)?,
        }
        Ok(out)
    };
    let chunks: Vec<Result<Vec<Record>>> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| outer.iter().collect::<Vec<_>>().into_par_iter().map(run).collect())
    } else {
        outer.iter().map(run).collect()
    };
    let mut records = Vec::new();
    for c in chunks {
        records.extend(c?);
    }
    let stats = EnumStats {
        innermost: counters.innermost.into_inner(),
        exact_boundary: counters.exact_boundary.into_inner(),
        fallback: counters.fallback.into_inner(),
        safe_rejections: counters.safe_rejections.into_inner(),
        anomalies: counters.anomalies.into_inner(),
    };
    Ok(Enumeration { q: cfg.q, g: cfg.g, records, stats })
}

fn enum_default(q: u64, g: usize) -> Result<Vec<WeilCandidate>> {
    Ok(enumerate(&EnumConfig::new(q, g))?.records.into_iter().map(|r| r.candidate).collect())
}

pub fn enum_g1(q: u64) -> Result<Vec<WeilCandidate>> {
    enum_default(q, 1)
}

pub fn enum_g2(q: u64) -> Result<Vec<WeilCandidate>> {
    enum_default(q, 2)
}

pub fn enum_g3(q: u64) -> Result<Vec<WeilCandidate>> {
    enum_default(q, 3)
}

pub fn enum_g4(q: u64) -> Result<Vec<WeilCandidate>> {
    enum_default(q, 4)
}

pub fn enum_g5(q: u64) -> Result<Vec<WeilCandidate>> {
    enum_default(q, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(v: &[WeilCandidate], a: &[i64]) -> bool {
        v.iter().any(|c| c.a == a)
    }

    #[test]
    fn genus_one_counts() {
        assert_eq!(enum_g1(2).unwrap().len(), 5);
        assert_eq!(enum_g1(3).unwrap().len(), 7);
        let e = enumerate(&EnumConfig::new(4, 1)).unwrap();
        assert_eq!(e.records.len(), 9);
        let real: Vec<i64> = e.records.iter().filter(|r| r.real_root).map(|r| r.candidate.a[0]).collect();
        assert_eq!(real, vec![-4, 4]);
    }

    #[test]
    fn genus_two_examples() {
        let w = enum_g2(2).unwrap();
        assert_eq!(w.len(), 35);
        assert!(has(&enum_g2(4).unwrap(), &[-4, 10]));
        let e = enumerate(&EnumConfig::new(2, 2)).unwrap();
        assert!(e.records.iter().any(|r| r.candidate.a == [0, -4] && r.real_root));
    }

    #[test]
    fn genus_three_examples() {
        let w = enum_g3(2).unwrap();
        assert!(has(&w, &[0, 0, 0]));
        assert!(has(&w, &[0, -2, 0]));
        assert!(has(&enum_g3(9).unwrap(), &[-18, 135, -540]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(enumerate(&EnumConfig::new(6, 2)), Err(Error::NotPrimePower(6))));
        assert!(matches!(enumerate(&EnumConfig::new(2, 6)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn higher_genus_members_pass_membership_test() {
        for (q, g) in [(2, 4), (3, 4), (2, 5)] {
            let e = enumerate(&EnumConfig::new(q, g)).unwrap();
            assert!(!e.records.is_empty());
            assert_eq!(e.stats.anomalies, 0);
            for r in &e.records {
                assert!(r.candidate.is_weil(), "{:?}", r.candidate);
                assert_eq!(r.real_root, r.candidate.has_real_root().unwrap(), "{:?}", r.candidate);
            }
        }
    }
}
