//! Finite permutoids and rigid pseudogroups.
//!
//! A permutoid is a set of partial permutations of a finite set that contains the identity and
//! in which every defined composition has at most one extension in the set. This crate builds
//! and validates them (including the permutoids of left multiplications on balls of a marked
//! group), enumerates their quotients, searches for finite developments, and works with the
//! associated pseudogroups.

pub mod canon;
pub mod develop;
pub mod groups;
pub mod io;
pub mod morphism;
pub mod partial;
pub mod permutoid;
pub mod pseudogroup;
pub mod quotient;

pub use canon::{canonical_form, canonical_form_with_cap, CanonicalKey, GroundSetTooLarge};
pub use morphism::{validate_morphism, Morphism, MorphismError, MorphismKind};
pub use partial::{GraphError, GroundSetMismatch, PartialPermutation, Perm};
pub use permutoid::{is_rigid_permutoid, validate_permutoid, Permutoid, ValidationError, Witness};
pub use quotient::{enumerate_quotients, Quotient, QuotientOptions};
