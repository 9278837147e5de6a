//! Exact computations around Thurston pullback maps: rank bounds from
//! portraits, pushforwards of quadratic differentials, monodromy checks,
//! the bicritical Hurwitz curve and the elliptic curve behind a constant
//! pullback example.

pub mod bicritical;
pub mod citation;
pub mod cli;
pub mod dynamics;
pub mod lattes;
pub mod monodromy;
pub mod portrait;
pub mod pushforward;
pub mod ratfield;
pub mod report;
pub mod tables;
