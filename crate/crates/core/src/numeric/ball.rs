//! Complex midpoint-radius balls with exact rational endpoints.
//!
//! A ball `{re + i im, rad}` stands for the closed disk of radius `rad`
//! around `re + i im`. With `prec == 0` arithmetic is exact (radius stays
//! whatever the inputs carry). With `prec > 0` every result midpoint is
//! rounded to the grid `2^-prec` and the rounding error is added to the
//! radius, which keeps numerator and denominator sizes bounded.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::gaussian::rational_to_f64;
use crate::scalar::Scalar;
use crate::ExactComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub re: BigRational,
    pub im: BigRational,
    pub rad: BigRational,
    pub prec: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Nearest multiple of `2^-prec`.
fn round_to_grid(q: &BigRational, prec: u32) -> BigRational {
    let scaled = q * BigRational::from_integer(pow2(prec));
    BigRational::new(scaled.round().to_integer(), pow2(prec))
}

/// Smallest multiple of `2^-prec` that is `>= q`.
fn ceil_to_grid(q: &BigRational, prec: u32) -> BigRational {
    let scaled = q * BigRational::from_integer(pow2(prec));
    BigRational::new(scaled.ceil().to_integer(), pow2(prec))
}

/// A lower bound on `sqrt(q)` accurate to `2^-bits`, for `q >= 0`.
pub fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let n = (q.numer() << (2 * bits as usize)).div_floor(q.denom());
    BigRational::new(n.sqrt(), pow2(bits))
}

/// An upper bound on `sqrt(q)` accurate to `2^-bits`, for `q >= 0`.
pub fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let n = (q.numer() << (2 * bits as usize)).div_ceil(q.denom());
    let s = n.sqrt();
    let s = if &s * &s < n { s + 1 } else { s };
    BigRational::new(s, pow2(bits))
}

impl Ball {
    pub fn exact(z: &ExactComplex) -> Self {
        Ball {
            re: z.re.clone(),
            im: z.im.clone(),
            rad: BigRational::zero(),
            prec: 0,
        }
    }

    pub fn new(center: &ExactComplex, rad: BigRational, prec: u32) -> Self {
        Ball {
            re: center.re.clone(),
            im: center.im.clone(),
            rad,
            prec,
        }
        .rounded()
    }

    /// Same value, rounding all later operations at `prec` bits.
    pub fn at_prec(z: &ExactComplex, prec: u32) -> Self {
        Ball {
            prec,
            ..Ball::exact(z)
        }
    }

    pub fn center(&self) -> ExactComplex {
        Complex::new(self.re.clone(), self.im.clone())
    }

    pub fn to_c64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn rad_f64(&self) -> f64 {
        rational_to_f64(&self.rad)
    }

    /// Upper bound on `|center|` (the L1 norm of its parts).
    pub fn mag_upper(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    /// Upper bound on every `|z|` with `z` in the ball.
    pub fn abs_upper(&self) -> BigRational {
        self.mag_upper() + self.rad.clone()
    }

    /// Lower bound on every `|z|` with `z` in the ball; zero when the ball
    /// reaches the origin.
    pub fn abs_lower(&self) -> BigRational {
        let c = sqrt_lower(&(&self.re * &self.re + &self.im * &self.im), 64);
        let d = c - &self.rad;
        if d.is_positive() {
            d
        } else {
            BigRational::zero()
        }
    }

    /// Upper bound on every `|z|` with `z` in the ball, Euclidean.
    pub fn abs_upper_l2(&self) -> BigRational {
        sqrt_upper(&(&self.re * &self.re + &self.im * &self.im), 64) + &self.rad
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    /// Certified nonzero: the whole disk avoids the origin.
    pub fn excludes_zero(&self) -> bool {
        &self.re * &self.re + &self.im * &self.im > &self.rad * &self.rad
    }

    pub fn contains(&self, z: &ExactComplex) -> bool {
        let dr = &self.re - &z.re;
        let di = &self.im - &z.im;
        &dr * &dr + &di * &di <= &self.rad * &self.rad
    }

    /// True when the two disks share a point.
    pub fn overlaps(&self, other: &Ball) -> bool {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let r = &self.rad + &other.rad;
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.rounded()
    }

    fn rounded(mut self) -> Self {
        if self.prec == 0 {
            return self;
        }
        let re = round_to_grid(&self.re, self.prec);
        let im = round_to_grid(&self.im, self.prec);
        if re != self.re || im != self.im {
            let err = BigRational::new(BigInt::one(), pow2(self.prec));
            self.rad = &self.rad + err;
            self.re = re;
            self.im = im;
        }
        if !self.rad.is_zero() && !self.rad.denom().is_one() {
            self.rad = ceil_to_grid(&self.rad, self.prec + 2);
        }
        self
    }

    /// Enclosure of `1 / z` for all `z` in the ball; `None` if the ball
    /// touches zero.
    pub fn try_inv(&self) -> Option<Ball> {
        if !self.excludes_zero() {
            return None;
        }
        let mag2 = &self.re * &self.re + &self.im * &self.im;
        let re = &self.re / &mag2;
        let im = -(&self.im / &mag2);
        if self.rad.is_zero() {
            return Some(
                Ball {
                    re,
                    im,
                    rad: BigRational::zero(),
                    prec: self.prec,
                }
                .rounded(),
            );
        }
        let mut bits = self.prec.max(64) + 16;
        loop {
            let low = sqrt_lower(&mag2, bits);
            if low > self.rad {
                let rad = &self.rad / (&low * (&low - &self.rad));
                return Some(
                    Ball {
                        re,
                        im,
                        rad,
                        prec: self.prec,
                    }
                    .rounded(),
                );
            }
            bits *= 2;
            if bits > 1 << 16 {
                return None;
            }
        }
    }

    pub fn try_div(&self, other: &Ball) -> Option<Ball> {
        Some(self * &other.try_inv()?)
    }

    pub fn powi(&self, e: u32) -> Ball {
        crate::scalar::pow(self, e)
    }
}

impl From<ExactComplex> for Ball {
    fn from(z: ExactComplex) -> Self {
        Ball::exact(&z)
    }
}

impl Zero for Ball {
    fn zero() -> Self {
        Ball::exact(&Complex::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
}

impl One for Ball {
    fn one() -> Self {
        Ball::exact(&Complex::one())
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        Ball {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
            rad: &self.rad + &rhs.rad,
            prec: self.prec.max(rhs.prec),
        }
        .rounded()
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        Ball {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
            rad: &self.rad + &rhs.rad,
            prec: self.prec.max(rhs.prec),
        }
        .rounded()
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        let rad = if self.rad.is_zero() && rhs.rad.is_zero() {
            BigRational::zero()
        } else {
            self.mag_upper() * &rhs.rad + rhs.mag_upper() * &self.rad + &self.rad * &rhs.rad
        };
        Ball {
            re,
            im,
            rad,
            prec: self.prec.max(rhs.prec),
        }
        .rounded()
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            re: -self.re.clone(),
            im: -self.im.clone(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl Scalar for Ball {
    fn from_i64(n: i64) -> Self {
        Ball::exact(&Complex::new(BigRational::from_integer(n.into()), BigRational::zero()))
    }
    fn conj(&self) -> Self {
        Ball {
            im: -self.im.clone(),
            ..self.clone()
        }
    }
}

/// `Some(true)` when `|z| <= tol` on the whole ball, `Some(false)` when
/// `|z| > tol` on the whole ball, `None` otherwise.
pub fn compare_abs(v: &Ball, tol: &BigRational) -> Option<bool> {
    if &v.abs_upper_l2() <= tol {
        Some(true)
    } else if &v.abs_lower() > tol {
        Some(false)
    } else {
        None
    }
}

/// Coefficients on which series and branch code can decide zero-ness:
/// exactly for exact fields, and one-sidedly for balls.
pub trait Certified: Scalar {
    /// Provably nonzero.
    fn certainly_nonzero(&self) -> bool;
    /// Provably zero.
    fn certainly_zero(&self) -> bool;
    fn checked_inv(&self) -> Option<Self>;
    fn to_ball(&self) -> Ball;
}

impl Certified for ExactComplex {
    fn certainly_nonzero(&self) -> bool {
        !self.is_zero()
    }
    fn certainly_zero(&self) -> bool {
        self.is_zero()
    }
    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactComplex::one() / self.clone())
        }
    }
    fn to_ball(&self) -> Ball {
        Ball::exact(self)
    }
}

impl Certified for Ball {
    fn certainly_nonzero(&self) -> bool {
        self.excludes_zero()
    }
    fn certainly_zero(&self) -> bool {
        self.is_zero()
    }
    fn checked_inv(&self) -> Option<Self> {
        self.try_inv()
    }
    fn to_ball(&self) -> Ball {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{gi, rat};
    use proptest::prelude::*;

    fn cplx(a: i64, b: i64, d: i64) -> ExactComplex {
        Complex::new(rat(a, d), rat(b, d))
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = rat(2, 1);
        let lo = sqrt_lower(&two, 40);
        let hi = sqrt_upper(&two, 40);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(hi - lo <= rat(1, 1 << 39));
    }

    #[test]
    fn inverse_of_exact_ball_is_exact() {
        let b = Ball::exact(&gi(3, 4));
        let inv = b.try_inv().unwrap();
        assert!(inv.contains(&(gi(1, 0) / gi(3, 4))));
        assert!(Ball::zero().try_inv().is_none());
    }

    proptest! {
        #[test]
        fn operations_enclose_exact_results(
            a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50,
            d1 in 1i64..30, d2 in 1i64..30, prec in 8u32..80,
        ) {
            let x = cplx(a, b, d1);
            let y = cplx(c, e, d2);
            let bx = Ball::at_prec(&x, prec);
            let by = Ball::at_prec(&y, prec);
            prop_assert!((&bx + &by).contains(&(x.clone() + y.clone())));
            prop_assert!((&bx - &by).contains(&(x.clone() - y.clone())));
            let p = &bx * &by;
            prop_assert!(p.contains(&(x.clone() * y.clone())));
            // products of already-widened balls still enclose
            let q = &p * &bx;
            prop_assert!(q.contains(&(x.clone() * y.clone() * x.clone())));
            if !y.is_zero() {
                if let Some(inv) = q.try_inv() {
                    prop_assert!(inv.contains(&(ExactComplex::one() / (x.clone() * y.clone() * x.clone()))));
                }
            }
        }
    }
}
