//! Numerical verification of conformal-Killing 2-form identities on
//! quaternionic projective space HP^n and its twistor space.
//!
//! The crate is organized in layers:
//!
//! * [`algebra`] — pointwise quaternionic-Hermitian linear algebra: admissible
//!   triples, Kaehler forms, the three-way splitting of 2-forms, the model
//!   curvature tensor and the Weitzenboeck curvature term q(R);
//! * [`geometry`] — HP^n in an affine chart with the canonical metric
//!   normalized to reduced scalar curvature 1, Christoffel symbols and the
//!   Riemann tensor by finite differences, the isometry algebra sp(n+1) as
//!   Killing fields, admissible frame fields, and covariant/exterior
//!   differential operators;
//! * [`ckforms`] — the conformal-Killing 2-form attached to each Killing
//!   field and all of its residual identities;
//! * [`twistor`] — the twistor space Z = S(Q) as a coordinate manifold,
//!   its Kaehler-Einstein structure, Killing-field lifts, Hamiltonians and
//!   the Obata residual;
//! * [`checks`] — the named verification checks, deterministic sampling and
//!   machine-readable reports behind the `qkverify` CLI.

pub mod algebra;
pub mod error;
pub mod quat;

pub use error::{QkError, Result};
