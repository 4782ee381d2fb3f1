//! Exact symbolic computation in Brown-Peterson type cohomology theories.
//!
//! The crate is organized around a handful of cooperating modules:
//!
//! * [`coeff`] — graded coefficient rings (`BP*`, `P(n)*`, `k(n)*`, `K(n)*`,
//!   `BP<n>*`), their ideals, and module presentations built from cyclic
//!   summands.
//! * [`fgl`] — p-series of formal group laws and the one-generator quotient
//!   rings they present.
//! * [`palg`] — presented (bi)graded mod-p cohomology algebras together with
//!   Milnor-operation tables and weight bookkeeping.
//! * [`ahss`] — the Atiyah-Hirzebruch style spectral-sequence engine with
//!   differentials of the shape `v_s ⊗ Q_s`.
//! * [`theories`] — quotient oriented theories on module presentations, the
//!   connective tower, exact-triangle consistency checks, and the curated
//!   example library.
//! * [`adjoint`] — normal-ordered Pontryagin-ring computations with the
//!   adjoint action `ad(y)`.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here can be shared freely between threads.

pub mod adjoint;
pub mod ahss;
pub mod coeff;
pub mod fgl;
pub mod linalg;
pub mod palg;
pub mod theories;
