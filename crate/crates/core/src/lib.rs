//! Exact toolkit for plane-curve intersection theory, pencils of curves,
//! Segre varieties and Levi-flat real hypersurfaces.
//!
//! The computational core is generic over a [`scalar::Scalar`] coefficient
//! type; the aliases below fix the concrete coefficient domains used by the
//! analyses: Gaussian rationals for exact work and rationals for real
//! defining functions.

pub mod algebra;
pub mod curves;
pub mod error;
pub mod leviflat;
pub mod numeric;
pub mod pencil;
pub mod scalar;
pub mod segre;

use num_complex::Complex;
use num_rational::BigRational;

pub use algebra::homogeneous::HomogeneousForm;
pub use algebra::poly::{Degree, Monomial, MultiPoly, Roster};
pub use error::{Error, Result};

/// Gaussian rational `a + b i`.
pub type ExactComplex = Complex<BigRational>;
/// Polynomial over the Gaussian rationals.
pub type Poly = MultiPoly<ExactComplex>;
/// Polynomial over the rationals.
pub type RealPoly = MultiPoly<BigRational>;
