//! Exact computational invariant theory for finite matrix groups.
//!
//! Given a finite group `G ⊂ GL(n, ℚ)` described by generator matrices, this
//! crate computes
//!
//! * generators of the ring of `G`-invariant polynomials, checked degree by
//!   degree against the Molien series,
//! * generators of the module of `G`-equivariant polynomial vector fields over
//!   that ring, obtained from invariants of the induced action on polynomials
//!   in `(x, ξ)` that are linear in `ξ`,
//! * the reduction of an equivariant vector field to the orbit space through
//!   the Hilbert map, with an exact relatedness check and an RK4 numeric
//!   witness.
//!
//! All algebra is exact over the rationals. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]

extern crate alloc;

pub mod actions;
pub mod equivariants;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod reduction;
pub mod rk4;
pub mod univariate;

pub use actions::{
    is_invariant, pairing, reynolds, unpairing, Invariance, LinearAction, PhaseAction, PhasePoly,
    PolyAction, PolyVectorField, VectorFieldAction,
};
pub use equivariants::{
    equivariant_basis, equivariant_module_generators, molien_equivariant, EquivariantGens,
    ModuleLevel,
};
pub use error::{Error, Result};
pub use group::{MatGroup, DEFAULT_CAP};
pub use invariants::{
    invariant_basis, invariant_ring_generators, molien, InvariantGens, InvariantLevel,
    MolienSeries, RelationSet,
};
pub use matrix::RatMatrix;
pub use poly::{Monomial, MultiPoly};
pub use rat::Rat;
pub use reduction::{
    check_related, integrate_pair, reduce, ReducedSystem, Relatedness, TrajectoryReport,
};
