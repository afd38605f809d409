//! Pastures and their hexagons, lifts, morphisms and matroid representations.

pub mod error;
pub mod field;
mod finite;
pub mod group;
pub mod hexagon;
pub mod lift;
pub mod matroid;
pub mod morphism;
pub mod pasture;
mod snf;

pub use error::{Error, Result};
pub use hexagon::{hexagons, FundamentalPair, Hexagon, HexagonKind};
pub use lift::{binary_lift, grs_lift, ternary_lift, wlum_lift, FactorDescriptor, LiftKind, LiftResult};
pub use morphism::{compose, hom_set, iso_check, IsoResult, PastureMorphism};
pub use group::{AbelianGroup, GroupElement};
pub use pasture::{
    f1pm, finite_field, free_algebra, named, product, quotient, tensor, NamedPasture,
    NullTripleOrbit, Pasture, PastureElement,
};
