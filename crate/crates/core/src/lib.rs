//! Exact cohomology rings of torus bundles over the circle.
//!
//! The fundamental group of such a bundle is `G = (Z ⊕ Z) ⋊_θ Z` for a
//! gluing matrix `θ ∈ GL2(Z)`. This crate builds an explicit length-three
//! free resolution of `Z` over `ZG`, computes `H*(G; R)` for `R = Z, Z/p`
//! and the cup-product ring structure.

pub mod cohomology;
pub mod cup_product;
pub mod error;
pub mod group_ring;
pub mod int;
pub mod linalg;
pub mod resolution;
pub mod verify;

pub use error::{Error, Result};
pub use group_ring::{GluingMatrix, GroupElement, GroupRingElement};
