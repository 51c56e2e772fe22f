//! Finite groupoids in Brandt form: construction, axiom checking and
//! structural analysis, together with quasipermutation groupoids,
//! subgroupoid lattices, morphisms and group-groupoids over prime fields.
//!
//! Elements are indices into a [`FiniteGroupoid`]; labels are for display.
//! The product `x·y` is defined exactly when `β(x) = α(y)`.

pub mod constructions;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod iso;
pub mod morphisms;
pub mod quasiperm;
pub mod report;
pub mod structured;
pub mod subgroupoids;

/// Index of an element inside a groupoid.
pub type Elem = usize;

pub use error::{Error, Result};
pub use group::GroupTable;
pub use groupoid::{Conjugation, FiniteGroupoid, GroupoidTables, GroupoidType, IsotropyGroup};
pub use iso::{is_isomorphic, is_isomorphic_bounded, Isomorphism, DEFAULT_ISO_BOUND};
pub use morphisms::GroupoidMorphism;
pub use quasiperm::{
    count_formulas, enumerated_counts, CountInt, Counts, QuasipermGroupoid, Quasipermutation, Signature,
};
pub use report::{Rule, ValidationReport, Violation};
pub use subgroupoids::{Classification, Subgroupoid};

/// Closed-form counts in checked 64-bit arithmetic.
pub type Counts64 = Counts<u64>;
/// Closed-form counts in arbitrary precision.
pub type CountsBig = Counts<num_bigint::BigUint>;
