//! Scalar abstractions shared by polynomials, series and linear algebra.
//!
//! Everything in the crate is written against [`Scalar`] (a commutative ring
//! with conjugation) or [`Field`]. Exact algorithms that branch on zero tests
//! (division, gcd, resultants, rank) additionally require [`ExactField`].

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring element with a conjugation involution.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Complex conjugate; the identity on real scalars.
    fn conj(&self) -> Self;
}

/// A [`Scalar`] with division by nonzero elements.
pub trait Field: Scalar + Div<Output = Self> {}

/// A field whose arithmetic is exact, so `is_zero` is decisive.
pub trait ExactField: Field + Eq + Hash {
    /// Gaussian-rational view of the element, used for printing and
    /// numerical seeding.
    fn to_gaussian(&self) -> Complex<BigRational>;
    /// Inverse of [`ExactField::to_gaussian`] on the image of the field.
    fn from_gaussian(z: &Complex<BigRational>) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Field for BigRational {}

impl ExactField for BigRational {
    fn to_gaussian(&self) -> Complex<BigRational> {
        Complex::new(self.clone(), BigRational::zero())
    }
    fn from_gaussian(z: &Complex<BigRational>) -> Self {
        debug_assert!(z.im.is_zero(), "non-real value in a real field");
        z.re.clone()
    }
}

impl Scalar for Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

impl Field for Complex<BigRational> {}

impl ExactField for Complex<BigRational> {
    fn to_gaussian(&self) -> Complex<BigRational> {
        self.clone()
    }
    fn from_gaussian(z: &Complex<BigRational>) -> Self {
        z.clone()
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_i64(n: i64) -> Self {
                n as $f
            }
            fn conj(&self) -> Self {
                *self
            }
        }

        impl Field for $f {}

        impl Scalar for Complex<$f> {
            fn from_i64(n: i64) -> Self {
                Complex::new(n as $f, 0.0)
            }
            fn conj(&self) -> Self {
                Complex::conj(self)
            }
        }

        impl Field for Complex<$f> {}
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

/// Integer power by repeated squaring.
pub fn pow<C: Scalar>(base: &C, mut exp: u32) -> C {
    let mut acc = C::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// Multiplicative inverse in a field.
pub fn inv<C: Field>(x: &C) -> C {
    C::one() / x.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = Complex::new(q(1, 2), q(-3, 1));
        let mut acc = Complex::<BigRational>::one();
        for e in 0..7 {
            assert_eq!(pow(&z, e), acc);
            acc = acc * z.clone();
        }
    }

    #[test]
    fn conjugation_is_involutive() {
        let z = Complex::new(q(2, 3), q(5, 7));
        assert_eq!(Scalar::conj(&Scalar::conj(&z)), z);
        assert_eq!(Scalar::conj(&q(4, 9)), q(4, 9));
        assert_eq!(Scalar::conj(&Complex::new(1.0f64, 2.0)), Complex::new(1.0, -2.0));
    }
}
