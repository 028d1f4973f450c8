//! Record layouts for JSONL and CSV output.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use weilpoly_core::enumerate::Record;
use weilpoly_core::weil::{RealRootClass, WeilCandidate};
use weilpoly_core::Result;

/// Largest genus whose coefficients get their own CSV column.
const CSV_MAX_G: usize = 5;

/// `kind` is `none`, `sqrt-factors` (`q` a square, `(x+√q)^{2k}(x−√q)^{2l}`)
/// or `x2-q-factor` (`(x²−q)^{2m}`); `cofactor` is the remaining `a` prefix.
#[derive(Clone, Debug, Serialize)]
pub struct ClassView {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<Vec<i64>>,
}

impl ClassView {
    pub fn from_class(c: &RealRootClass) -> ClassView {
        let none = ClassView { kind: "none", k: None, l: None, multiplicity: None, cofactor: None };
        let cof = |c: &Option<WeilCandidate>| c.as_ref().map(|c| c.a.clone());
        match c {
            RealRootClass::None => none,
            RealRootClass::SqrtFactors { k, l, cofactor } => {
                ClassView { kind: "sqrt-factors", k: Some(*k), l: Some(*l), cofactor: cof(cofactor), ..none }
            }
            RealRootClass::XSqMinusQ { multiplicity, cofactor } => {
                ClassView { kind: "x2-q-factor", multiplicity: Some(*multiplicity), cofactor: cof(cofactor), ..none }
            }
        }
    }

    /// Compact single-field rendering for CSV.
    pub fn compact(&self) -> String {
        let mut parts = Vec::new();
        if let (Some(k), Some(l)) = (self.k, self.l) {
            parts.push(format!("k={k}"));
            parts.push(format!("l={l}"));
        }
        if let Some(m) = self.multiplicity {
            parts.push(format!("m={m}"));
        }
        if let Some(c) = &self.cofactor {
            parts.push(format!("cofactor={}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        }
        if parts.is_empty() {
            self.kind.to_string()
        } else {
            format!("{}({})", self.kind, parts.join(";"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub q: u64,
    pub g: usize,
    pub a: Vec<i64>,
    /// Full coefficients from the leading term down; integers beyond the
    /// 64-bit range are written as decimal strings.
    pub coeffs: Vec<Value>,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_root: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassView>,
}

fn json_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

impl OutputRecord {
    fn base(c: &WeilCandidate, member: bool) -> OutputRecord {
        OutputRecord {
            q: c.q,
            g: c.g(),
            a: c.a.clone(),
            coeffs: c.full_coefficients().iter().map(json_int).collect(),
            member,
            real_root: None,
            class: None,
        }
    }

    /// An enumerated member; the real-root flag is the enumeration's.
    pub fn from_record(r: &Record) -> Result<OutputRecord> {
        let mut out = Self::base(&r.candidate, true);
        out.real_root = Some(r.real_root);
        out.class = Some(ClassView::from_class(&r.candidate.classify_real_roots()?));
        Ok(out)
    }

    /// An arbitrary prefix, decided exactly.
    pub fn from_candidate(c: &WeilCandidate) -> Result<OutputRecord> {
        let mut out = Self::base(c, c.is_weil());
        if out.member {
            out.real_root = Some(c.has_real_root()?);
            out.class = Some(ClassView::from_class(&c.classify_real_roots()?));
        }
        Ok(out)
    }
}

pub fn csv_header() -> Vec<String> {
    let mut h = vec!["q".to_string(), "g".to_string()];
    h.extend((1..=CSV_MAX_G).map(|i| format!("a{i}")));
    h.push("real_root".into());
    h.push("class".into());
    h
}

pub fn csv_row(r: &OutputRecord) -> Vec<String> {
    let mut row = vec![r.q.to_string(), r.g.to_string()];
    row.extend((0..CSV_MAX_G).map(|i| r.a.get(i).map(|x| x.to_string()).unwrap_or_default()));
    row.push(r.real_root.map(|b| b.to_string()).unwrap_or_default());
    row.push(r.class.as_ref().map(|c| c.compact()).unwrap_or_default());
    row
}
