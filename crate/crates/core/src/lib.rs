//! Lattices from monic integer polynomials of degree 2–4.
//!
//! Four constructions map a polynomial's roots to lattice basis rows: two
//! distinct real quadratic roots, a complex-conjugate quadratic pair, a cubic
//! circulant, and a symmetric quartic (one root pair summing to zero). For
//! each, the Gram matrix and its determinant have exact closed forms in the
//! coefficients, which this crate treats as the single source of truth.
//!
//! On top of that sit an exact shortest-vector engine (LDL^T-driven
//! enumeration over rationals), closed-form well-roundedness and density
//! criteria, and a sweep harness that checks criterion against engine across
//! coefficient grids and emits deterministic CSV/JSON reports.

pub mod construct;
pub mod criteria;
pub mod error;
pub mod gram;
pub mod poly;
mod roots;
pub mod svp;
pub mod sweep;

pub use construct::{
    ConstructionFamily, LatticeInstance, build, det_closed_form, family_for_kind,
    gram_entries_for_family, gram_for_family,
};
pub use criteria::{Branch, CriterionVerdict, density_closed_form, wr_predicate};
pub use error::{Error, Result};
pub use gram::ExactGram;
pub use poly::{
    IntPolynomial, RootClassification, RootKind, classify, detect_symmetric_quartic,
    discriminant_cubic, discriminant_quadratic, roots_numeric, synthesize_symmetric_quartic,
};
pub use svp::{
    CenterDensitySq, CoordinateVector, MinResult, center_density_sq, form_value,
    is_well_rounded, naive_shortest_vectors, shortest_vectors,
};
pub use sweep::{
    GoldenCheck, SweepReport, SweepSpec, VerifyOutcome, cross_check_instance,
    report_to_csv, report_to_json, run_default_verification, run_sweep,
};
