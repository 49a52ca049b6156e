//! Exact coefficient field and multivariate polynomial ring.

pub mod conjugate;
pub mod division;
pub mod gaussian;
pub mod gaussint;
pub mod gcd;
pub mod homogeneous;
pub mod linalg;
pub mod poly;
pub mod resultant;
pub mod text;
pub mod univariate;
