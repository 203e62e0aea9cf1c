//! Exact contact Kirby calculus on front diagrams.

pub mod front;
pub mod linalg;
pub mod invariants;
pub mod surgery;
pub mod moves;
pub mod mcg;
pub mod script;
