//! Exact enumeration and verification of q-Weil polynomials of small degree.
//!
//! A monic integer polynomial of degree `2g` is a q-Weil polynomial when all
//! of its complex roots have absolute value `√q`. The crate provides the
//! exact-arithmetic substrate, closed-form real-root predicates for degrees
//! up to five, membership tests, inequality-driven enumerators for `g ≤ 5`
//! and brute-force cross-checks.

pub mod crosscheck;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod realroots;
pub mod weil;

pub use error::{Error, Result};
