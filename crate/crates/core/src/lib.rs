//! Automorphism towers, normalizer towers and boxed wreath-product
//! constructions over small finite groups.
//!
//! Groups are Cayley tables ([`FiniteGroup`]) with the identity at index 0.
//! [`tower::run_tower`] iterates `G -> Aut(G)` through finite stages, takes
//! the direct limit at ω when the stages become periodic, and reports the
//! ordinal at which the natural map first becomes an isomorphism.

pub mod automorphism;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod boxed;
pub mod group;
pub mod iso;
pub mod named;
pub mod normtower;
pub mod ordinal;
pub mod perm;
pub mod tower;

pub use automorphism::{automorphism_group, inner_homomorphism, is_complete, AutGroup, Completeness};
pub use error::{Error, Result};
pub use group::{Fingerprint, FiniteGroup, GroupFile, Homomorphism, Subgroup};
pub use iso::find_isomorphism;
pub use named::construct_named;
pub use ordinal::Ordinal;
pub use tower::{run_tower, Budget, TowerRun, TowerStatus};

/// Size limits. Each is the single place its cap is configured.
pub mod limits {
    /// Largest base group whose automorphism group will be computed.
    pub const MAX_AUT_BASE_ORDER: usize = 512;
    /// Largest group materialized as a Cayley table.
    pub const MAX_TABLE_ORDER: usize = 2048;
    /// Largest direct product accepted by the named constructors.
    pub const MAX_PRODUCT_ORDER: usize = 200;
    /// `S<n>` and `A<n>` are available for n up to this degree.
    pub const MAX_SYMMETRIC_DEGREE: usize = 6;
    /// Largest vertex count for graph automorphism search.
    pub const MAX_GRAPH_VERTICES: usize = 64;
    /// Most automorphisms a graph search will enumerate.
    pub const MAX_GRAPH_AUTOMORPHISMS: usize = 50_000;
    /// Most slots a boxed construction may carry.
    pub const MAX_SLOTS: usize = 20;
    /// Largest catalog order.
    pub const MAX_CATALOG_ORDER: usize = 48;
}
