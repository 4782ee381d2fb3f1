//! The Atiyah-Hirzebruch style spectral-sequence engine.
//!
//! Pages live over a height theory `P(s)` with mod-p coefficients. The
//! starting page is `H^{*,*'}(X; Z/p) (x) P(s)*`, sliced by (first degree,
//! second degree, coefficient degree); the only differentials are
//!
//! ```text
//! d_{2p^s - 1} = v_s (x) Q_s
//! ```
//!
//! of bidegree shift `(2p^s - 1, p^s - 1)` on the cohomology part and
//! `-2(p^s - 1)` on the coefficient degree, so that `w(d) = -1` on every
//! class it moves.
//!
//! Slice arithmetic is exact row reduction over F_p. `d∘d = 0` is checked
//! before each quotient is taken, a differential that fails to descend to
//! the current page aborts loudly, and after the last rule the engine
//! refuses to emit E_infinity unless every remaining differential provably
//! lands in an empty slice (or a force flag overrides the check).
//!
//! Windows are enlarged internally by the total shift of the rules to be
//! applied, so classes inside the requested window always see their
//! differentials; the enlarged margin is discarded before reporting.

mod engine;
mod page;

pub use engine::{run_to_collapse, AhssError, RunReport};
pub use page::{
    apply_differential, coefficient_monomials, e2_page, permanent_cycle_check, Page,
    PermanentCycleReport, SliceKey, Window,
};
