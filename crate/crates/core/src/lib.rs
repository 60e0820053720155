//! Verification workbench for finite Boolean restriction, ample and
//! inverse monoids.
//!
//! The pieces, bottom up:
//!
//! - [`monoid`]: tables with star/plus structure, the axioms A1–A7, the
//!   natural order, compatible joins, the Boolean restriction check,
//!   classification and homomorphisms.
//! - [`filters`]: prime filters, the category they form, and the Stone
//!   space of the projection algebra.
//! - [`category`]: finite categories, cancellation/groupoid/right
//!   reversibility checks, local bisections and the bisection monoid.
//! - [`duality`]: the double-dual isomorphisms in both directions and the
//!   morphism-level duality via covering relational functors.
//! - [`fractions`]: condition (C), the groupoid of fractions with fully
//!   verified well-definedness, uniqueness up to isomorphism, and the
//!   converse presentation check.
//! - [`ore`]: a bounded symbolic fraction backend over pluggable oracles,
//!   with the free commutative monoid built in.
//! - [`embedding`]: the end-to-end pipeline embedding a Boolean ample
//!   monoid satisfying condition (C) fully into a Boolean inverse monoid,
//!   with exhaustively computed certificates.
//! - [`generate`]: deterministic random instances for the property suites.
//! - [`suite`]: the acceptance checks and the machine-readable report.
//!
//! Everything is table-driven, pure and immutable after validation, so
//! all operations can run concurrently without coordination. Claims are
//! verified rather than trusted: a failed law anywhere surfaces as a
//! serialized theorem-violation witness, kept distinct from ordinary
//! input errors.

pub mod category;
pub mod duality;
pub mod embedding;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod fractions;
pub mod generate;
pub mod io;
pub mod monoid;
pub mod ore;
pub mod report;
pub mod suite;

pub use error::{Error, Result, Violation};
