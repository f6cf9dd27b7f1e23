//! Quantitative constructions outside the operator algebra.

pub mod coercivity;
pub mod cutoff;
pub mod nesting;
pub mod poly;
