//! Exact arithmetic for Reid's plurigenera formula over baskets of terminal
//! quotient singularities, and an exhaustive search for the baskets of a
//! minimal 3-fold of general type with chi(O_X) = 1.
//!
//! Everything is computed over exact rationals; no floating point appears
//! anywhere. The crate is organized around the pipeline
//!
//! * [`singularity`] — quotient singularity classes `1/r(a,-a,1)` and
//!   multisets of them (baskets),
//! * [`reid`] — the local correction terms `l(Q,m)`, plurigenera, canonical
//!   volume, and the `Delta`/`nabla` invariants with their unimodular
//!   reduction,
//! * [`catalog`] — the 271-class table for `r <= 42` together with an
//!   embedded transcription of the published reference values and a
//!   cell-level diff,
//! * [`search`] — the admissible plurigenus profiles, their integer target
//!   vectors, and a complete depth-first enumeration of all baskets hitting
//!   a target,
//! * [`filters`] — the feasibility predicates (volume positivity, the
//!   Miyaoka–Reid inequality, pluricanonical volume bounds) that cut the
//!   raw enumeration down to geometrically admissible solutions.
//!
//! The headline computation: over all admissible profiles the smallest
//! surviving canonical volume is exactly `1/420`, attained by the basket
//! `3*1/2(1) + 1/4(3) + 1/5(3) + 1/6(5) + 1/7(5)`.

pub mod catalog;
mod error;
pub mod filters;
pub mod rational;
pub mod reid;
pub mod search;
pub mod singularity;

pub use error::Error;
pub use rational::Rational;
pub use singularity::{Basket, QuotientSingularity};
