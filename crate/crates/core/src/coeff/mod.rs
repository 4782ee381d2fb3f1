//! Graded coefficient rings and module presentations.
//!
//! The rings handled here are the polynomial rings on Hazewinkel-style
//! generators `v_1, v_2, ...` with `|v_i| = -2(p^i - 1)`: the p-local ring
//! `BP* = Z_(p)[v_1, v_2, ...]`, its quotients `P(n)* = BP*/I_n`,
//! `k(n)* = Z/p[v_n]`, `K(n)* = Z/p[v_n, v_n^{-1}]`, the truncated ring
//! `BP<n>* = Z_(p)[v_1, ..., v_n]`, and the degenerate cases `HZ` and `HFp`.
//!
//! All rings are infinitely generated, so every ring handle carries an
//! explicit degree bound `D` and silently truncates terms of absolute
//! topological degree above `D`. The default bound is `2(p^4 - 1)`.

mod element;
mod ideal;
mod presentation;
mod ring;
mod text;
mod theory;

pub use element::{Coef, CoeffElement, VMonomial};
pub use ideal::IdealSpec;
pub use presentation::{
    base_change, CyclicSummand, ModulePresentation, PresentationError, SummandDegree,
};
pub use ring::{quotient_theory, reduce_mod, Ring, RingError};
pub use text::{parse_ideal_token, parse_poly, parse_presentation, print_presentation, TextError};
pub use theory::{default_degree_bound, ScalarMode, Support, Theory, TheoryError, TheoryKind};
