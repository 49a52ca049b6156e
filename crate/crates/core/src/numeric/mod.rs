//! Certified numerics: complex balls, root isolation and truncated series.

pub mod ball;
pub mod real_roots;
pub mod roots;
pub mod series;
