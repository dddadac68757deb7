//! Exact integer arithmetic for locally linear involutions on
//! simply-connected spin 4-manifolds with intersection form n(-E8) + mH.
//!
//! The crate builds an equivariant intersection form for parameters
//! (n, m, r), checks the realization conditions for a locally linear
//! involution with isolated fixed points, and then plays the smooth-case
//! obstruction: the sign assignment attached to the equivariant handles, the
//! spin types of the fixed points, and the signature congruence for smooth
//! spin 4-manifolds. The outcome is a replayable certificate whose verdict is
//! `Nonsmoothable` exactly when the deduced spin-type partition violates the
//! congruence.
//!
//! Everything is computed over arbitrary-precision integers (and exact
//! rationals for inertia); no tolerance appears anywhere.

pub mod construction;
pub mod equivariant;
pub mod forms;
pub mod intlinalg;
pub mod obstruction;

#[cfg(test)]
pub(crate) mod testutil;

pub use construction::{build_action, elliptic_preset, ActionParams, StandardAction};
pub use equivariant::{EquivariantForm, ModuleDecomposition, RealizationReport};
pub use forms::{CanonicalEvenForm, FormInvariants, IntSymForm};
pub use intlinalg::{Inertia, IntMatrix};
pub use obstruction::{certify, verify_certificate, Certificate, Verdict, VerdictKind};
