//! Plane projective curves: coordinate changes, points, Puiseux branches
//! and intersection theory.

pub mod intersect;
pub mod point;
pub mod puiseux;
pub mod sample;
pub mod transform;
