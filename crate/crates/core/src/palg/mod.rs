//! Presented (bi)graded mod-p cohomology algebras with Milnor-operation
//! tables.
//!
//! Two base rings occur: `Z/p[t]` (an algebraically closed base field, with
//! `t` the class of bidegree (0,1)) and `Z/2[r,t]` (the real numbers, with
//! `r` the class of -1 in bidegree (1,1)). Over `Z/p[t]` the operations
//! `Q_i` extend to products as derivations commuting with t-multiplication.
//! Over `Z/2[r,t]` only `Q_0` is a derivation; `Q_i` for `i >= 1` is driven
//! entirely by a per-monomial table, and a missing entry is an error rather
//! than a silent zero.
//!
//! The weight of a class of bidegree (m, m') is `w = 2m' - m` and its
//! dimension is `d = m - m'`; `w(Q_i) = -1` and `|Q_i| = 2p^i - 1`.

mod algebra;
pub mod builders;
mod freeness;
pub mod rost;
mod text;

pub use algebra::{
    AlgGenerator, BaseRing, BasisElem, Element, Monomial, PalgError, Parity, PresentedAlgebra,
    SliceLabel,
};
pub use freeness::{verify_q_freeness, FreenessFailure, QModuleBasis};
pub use rost::{cycle_map, rost_motive, CycleMapImage};
pub use text::{parse_algebra, print_algebra};
