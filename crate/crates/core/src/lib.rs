//! Extra translation invariance of shift-invariant spaces on finite abelian groups.
//!
//! Given a subgroup `H` of a finite abelian group `G` and generators `Phi`, the
//! `H`-invariant space `S_H(Phi)` may be invariant under a larger subgroup
//! `M`. This crate decides that through fiberization (Gramian ranks and
//! fiber-space membership), computes the largest such `M`, and constructs
//! generators whose spaces are invariant under exactly a prescribed `M`.
//! The [`oracle`] module answers the same questions with dense linear algebra
//! on the full `|G|`-dimensional space.

pub mod error;
pub mod fibering;
pub mod group;
pub mod invariance;
pub mod oracle;
pub mod report;
pub mod spectral;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use fibering::{
    dim_function, fiber_membership, fiberize, gramian, numerical_rank, FiberContext, FiberMatrix, Gramian,
    Membership, DEFAULT_TOL,
};
pub use group::{all_subgroups, annihilator, subgroups_between, transversal, Element, Group, Subgroup, Transversal};
pub use invariance::{
    construct_exactly_invariant, cutoff, invariance_set, is_invariant_rank, is_invariant_subspace,
    periodized_character, refine_context, support_report, transfer_function, InvarianceContext, InvarianceReport,
    SupportReport, TransferFunction,
};
pub use spectral::{dft, idft, translate, Signal, Spectrum};
