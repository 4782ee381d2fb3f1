//! Quotient oriented theories on module presentations: reduction by the
//! invariant ideals, Morava K-theory by base change, the connective tower
//! between heights, exact-triangle consistency checks, and the curated
//! example library.

mod dvr;
pub mod examples;
mod les;
mod quotients;
mod tower;

pub use dvr::DvrModule;
pub use les::{check_les, GradedNode, LesError, LesReport, Triangle};
pub use quotients::{chow_part, morava_k, omega_quotient, to_integral, TheoriesError};
pub use tower::{collapse_k, tower_step, TowerError};
