//! Knödel graphs, explicit dominating sets from primitive-root conditions,
//! certificates, an exact domination oracle and a range-scan driver.

pub mod construct;
pub mod exact;
pub mod knodel;
pub mod numtheory;
pub mod par;
pub mod records;
pub mod scan;
pub mod verify;

pub use construct::{best_bound, Construction, ConstructionResult};
pub use exact::{exact_gamma, Budget, Solve, SolveOptions};
pub use knodel::{KnodelGraph, VertexSet};
pub use verify::{certify, BoundReport, Certificate};
