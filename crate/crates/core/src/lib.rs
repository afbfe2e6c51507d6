//! Combinatorial model spaces of small singular cycles.
//!
//! A cycle built from one or two singular simplices is determined, up to the
//! topology of the map, by a *matching*: a perfect, sign-cancelling pairing of
//! the facets of the simplices involved. Gluing the facets according to the
//! matching produces a quotient Delta-complex, the *model space* of the cycle.
//!
//! This crate materializes that machinery:
//!
//! * [`matchings`] — matchings and signed matching systems: validation,
//!   enumeration, trivial extension, a catalog of named systems, and a
//!   canonical text descriptor grammar.
//! * [`quotient`] — the quotient complex of a matching system, with integer
//!   boundary matrices, connected components, and a few combinatorial
//!   extracts (vertex identifications, spanning trees, front-face boundary).
//! * [`homology`] — exact integer linear algebra: Smith normal form,
//!   cellular homology profiles, sphere/Poincaré-duality/suspension checks.
//! * [`pi1`] — fundamental group presentations read off the 2-skeleton,
//!   Tietze simplification, and cyclicity classification.
//! * [`survey`] — batch pipelines over matching families, claim verification,
//!   table emission, and a resumable on-disk result store.

pub mod homology;
pub mod matchings;
pub mod pi1;
pub mod quotient;
pub mod survey;

pub use homology::{
    generation_rank, homology, is_sphere_profile, pd_compatible, smith_normal_form,
    suspension_shift_check, AbelianGroup, HomologyError, HomologyProfile, IntMatrix, PdVerdict,
    SnfResult,
};
pub use matchings::{
    canonical_descriptor, catalog, catalog_entries, dedup_by_symmetry, enumerate_single,
    enumerate_two_simplex, parse_descriptor, validate_system, CatalogEntry, Described,
    DescriptorError, Matching, MatchingError, MatchingSystem, ParityFact, Sign, SignType, Slot,
    ValidationReport, Violation,
};
pub use pi1::{
    abelianization, classify, classify_with_budget, presentation, tietze_simplify, GroupKind,
    GroupVerdict, Pi1Error, Presentation, Word, DEFAULT_MOVE_BUDGET,
};
pub use quotient::{
    build_quotient, front_face_boundary, spanning_tree_edges, vertex_equivalence, Face, FaceClass,
    FrontFaceReport, QuotientComplex, QuotientError,
};
pub use survey::{
    analyze_system, emit_tables, run_cached, survey_single, survey_two_simplex, verify_h1_membership,
    verify_h2_rank_zero, verify_pi1_trivial, version_tag, ClaimReport, ComponentReport, SurveyError,
    SurveyFamily, SurveyOptions, SurveyPlan, SurveyRecord, SurveyRun, TableFormat,
};
