//! Finite pointed ternary algebras `(A, p, 0, 1)` as executable objects.
//!
//! The crate revolves around a single data type, a finite carrier with two
//! distinguished constants and a total ternary operation table. On top of it:
//!
//! - [`model`] — representation, the four derived operations (`bar`, `·`,
//!   `∘`, `+`), relabeling, and canonical forms under constant-fixing
//!   isomorphisms;
//! - [`term`] — an equation language over the signature with a parser,
//!   evaluator, and exhaustive universal checker with counterexamples;
//! - [`laws`] — the axiom suite T1..T4 and the derived-law suite L1..L10 +
//!   EQ1, including conditional laws with universal or pointwise hypotheses;
//! - [`classify`] — independent evaluation of every condition of the three
//!   subvariety characterizations (Boolean algebra, unitary ring of
//!   characteristic 2, unitary right near-ring of characteristic 2) and the
//!   audit that conditions within one characterization agree;
//! - [`construct`] — building algebras from near-ring presentations via the
//!   affine, church, ring2 and nearring2 formulas, plus a catalog of
//!   ready-made examples;
//! - [`finder`] — exhaustive enumeration of all models on a small carrier
//!   with constraint propagation and isomorphism deduplication.

pub mod classify;
pub mod construct;
pub mod finder;
pub mod laws;
pub mod model;
pub mod term;

pub use classify::{classify, equivalence_audit, ClassificationReport, Verdicts};
pub use construct::{
    build_model, catalog_model, catalog_presentation, derived_vs_source, ConstructError,
    FormulaKind, NearRingPresentation, CATALOG_NAMES,
};
pub use finder::{enumerate, iso_classes, EnumerationResult, FinderError, SearchOptions};
pub use laws::{axiom_suite, check_law_by_id, law_suite, LawId, LawReport, Verdict};
pub use model::{DerivedOps, ModelError, PointedTernaryAlgebra, Relabeling};
pub use term::{
    check_equation, eval_term, parse, parse_equation, parse_term, CheckOutcome, Counterexample,
    Equation, Parsed, Term,
};
