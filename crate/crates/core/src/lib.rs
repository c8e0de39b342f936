//! Finite non-degenerate cycle sets, encoded as cycle matrices.
//!
//! An `n×n` matrix with entries in `{1..n}` is a cycle matrix when
//! `i·j = m_ij` makes `{1..n}` a non-degenerate cycle set. This crate
//! validates such matrices, computes isomorphisms and automorphisms under
//! the relabelling action of `Sym_n`, retractions and multipermutation
//! levels, decomposability, exact determinants, and builds new solutions
//! from old ones. [`enumerate`] generates every cycle matrix of a small
//! order up to isomorphism.
//!
//! Labels are 1-based everywhere in the public API.

pub mod action;
pub mod constructions;
pub mod det;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod perm;
pub mod retract;
pub mod structure;

pub use action::{act, are_isomorphic, automorphisms, canonical_form, is_automorphism};
pub use det::{determinant, determinant_of};
pub use error::{ConstructionError, Error, InputError, PermutationError, Result};
pub use matrix::{
    validate, validate_rows, Axiom, CycleMatrix, LabelMatrix, ValidationReport, Violation,
};
pub use perm::{CycleType, Permutation};
pub use retract::{
    multipermutation_level, retract_once, retraction_chain, ClassMap, RetractionChain,
    RetractionOutcome,
};
pub use structure::{is_decomposable, is_transpose_cycle_matrix, permutation_group, point_orbits};
