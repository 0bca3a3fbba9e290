//! Uninorms on finite bounded lattices: lattice algebra, the region-formula
//! constructions, and exhaustive verification.

pub mod constructions;
pub mod gen;
pub mod io;
pub mod lattice;
pub mod ops;
pub mod verifier;

pub use constructions::{
    check_preconditions, construct, ConditionId, ConditionReport, ConstructionError, ConstructionSpec, MethodId, Role,
};
pub use lattice::{build_lattice, ElementId, FiniteBoundedLattice, LatticeError};
pub use ops::{canonical_op, classify_op, CanonicalKind, Carrier, OpTable};
pub use verifier::{check_uninorm, compare_pointwise, iff_audit, Comparison, VerificationReport};
