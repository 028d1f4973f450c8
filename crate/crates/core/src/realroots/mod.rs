//! Real-rootedness predicates: the critical-value criterion, the extremum
//! sign-pattern criterion, closed forms for degrees two to five and the exact
//! Sturm oracle backing all of them.

pub mod cubic;
pub mod diamond;
pub mod ferrari;
pub mod lowdeg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Poly, QuadReal};

pub use cubic::{cubic_delta, theta_cubic, theta_sorted, ResolventData, ThetaValue};
pub use diamond::{diamond_all_real, sign_mult_all_real, CriticalPointProfile, DiamondInput};
pub use ferrari::{depressed_quartic, ferrari_roots, ferrari_roots_branch, resolvent_cubic, FerrariData};
pub use lowdeg::{
    deg2_real_nonneg, deg2_real_nonneg_with, deg3_real_nonneg, deg3_real_nonneg_with, deg4_real_nonneg,
    deg4_real_nonneg_with, deg5_monic_real_nonneg, deg5_monic_real_nonneg_with, real_nonneg_closed_form,
    PredicateOptions,
};

/// Where the roots are required to lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootMode {
    AllReal,
    RealNonNeg,
    RealPos,
}

impl RootMode {
    pub fn from_strict(strict: bool) -> RootMode {
        if strict {
            RootMode::RealPos
        } else {
            RootMode::RealNonNeg
        }
    }
}

/// Sign conventions for the closed-form predicates. `PaperLiteral` reverses
/// the sign of the linear coefficient test in degree 2, of the quadratic
/// coefficient test in degree 3 and of the constant term test in degree 4,
/// and is only meant for diagnostics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    Corrected,
    PaperLiteral,
}

/// Exact decision by counting roots with multiplicity in the region the mode
/// requires.
pub fn hyperbolic_nonneg_exact(p: &Poly<QuadReal>, mode: RootMode) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    }
    diamond::exact_count_matches(p, mode)
}

/// Whether `x⁴ + 2u₂x² + 4u₃x + u₄` has only real roots.
pub(crate) fn all_real_quartic_derivative(u2: &QuadReal, u3: &QuadReal, u4: &QuadReal) -> Result<bool> {
    crate::exact::all_roots_real(&depressed_quartic(u2, u3, u4))
}
