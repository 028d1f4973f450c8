//! Exact arithmetic: quadratic-field scalars, polynomials, Sturm sequences
//! and outward-rounded enclosures of radical expressions.

pub mod enclosure;
pub mod poly;
pub mod quad;
pub mod ring;
pub mod sturm;

pub use enclosure::{enclose, enclose_to_radius, enclose_with, ComplexEnclosure, Enclosure, Expr, PrecisionConfig};
pub use poly::Poly;
pub use quad::{QuadReal, Sign};
pub use ring::{Field, OrderedField, Ring};
pub use sturm::{
    all_roots_real, count_real_roots_with_multiplicity, count_roots_closed, isolate_real_roots, multiplicity_at,
    squarefree_decompose, squarefree_part, sturm_count, Endpoint, RealRoot, RootLocation, SturmChain,
};
