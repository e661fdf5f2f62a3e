//! Classifications, concept lattices and the maps between them.
//!
//! Relations are dense boolean matrices ([`relalg::Relation`]) with
//! diagrammatic composition: `r.compose(s)` relates `a` to `c` when
//! `a r b` and `b s c` for some `b`.

pub mod bitset;
pub mod bond;
pub mod classification;
pub mod colimit;
pub mod error;
pub mod functors;
pub mod infomorphism;
pub mod lattice;
pub mod relalg;
pub mod verify;

pub use bitset::BitSet;
pub use bond::{Bond, BondingPair};
pub use classification::{Classification, InstanceSet, TypeSet};
pub use error::{BondViolation, Error, Result};
pub use infomorphism::{FunctionalInfomorphism, RelationalInfomorphism};
pub use lattice::{AbstractConceptLattice, CollectiveConcept, CompleteLattice, ConceptLattice, FormalConcept, Transport};
pub use relalg::{FunctionGraph, Relation};
