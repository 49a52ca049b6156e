//! Points of P^2: exact Gaussian-rational points and algebraic points held
//! as (eliminant, coordinate change, isolating disk).

use std::sync::Arc;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::transform::Transform;
use crate::algebra::gaussian::format_complex_short;
use crate::algebra::gaussint;
use crate::algebra::homogeneous::dehomogenize;
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numeric::ball::Ball;
use crate::numeric::roots::{eval_ball, refine_disk, RootDisk};
use crate::{ExactComplex, Poly};

/// Homogeneous coordinates normalized so that the last nonzero one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: [ExactComplex; 3],
}

impl RationalPoint {
    pub fn new(coords: [ExactComplex; 3]) -> Result<Self> {
        let k = (0..3)
            .rev()
            .find(|&i| !coords[i].is_zero())
            .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))?;
        let s = ExactComplex::one() / coords[k].clone();
        Ok(RationalPoint {
            coords: std::array::from_fn(|i| coords[i].clone() * s.clone()),
        })
    }

    pub fn coords(&self) -> &[ExactComplex; 3] {
        &self.coords
    }

    /// Index of the normalized (unit) coordinate.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).unwrap()
    }

    pub fn lies_on(&self, f: &Poly) -> Result<bool> {
        Ok(f.eval(&self.coords)?.is_zero())
    }
}

/// A point whose transformed coordinates are `[1 : xi : eta]` with `xi` a
/// root of `eliminant` (squarefree, with no Gaussian-rational roots) and
/// `eta = -fiber.0(xi) / fiber.1(xi)`. Original coordinates are
/// `transform * [1, xi, eta]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicPoint {
    pub transform: Arc<Transform>,
    pub eliminant: Arc<UniPoly<ExactComplex>>,
    pub fiber: Arc<(UniPoly<ExactComplex>, UniPoly<ExactComplex>)>,
    pub disk: RootDisk,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlanePoint {
    Rational(RationalPoint),
    Algebraic(AlgebraicPoint),
}

impl AlgebraicPoint {
    /// Isolating disk of `xi` with radius at most `2^-bits`.
    pub fn refined_disk(&self, bits: u32) -> Result<RootDisk> {
        refine_disk(&self.eliminant, &self.disk, bits)
    }

    pub fn xi(&self, bits: u32) -> Result<Ball> {
        Ok(self.refined_disk(bits)?.ball(bits + 8))
    }

    /// Transformed affine coordinates `(xi, eta)`.
    pub fn local(&self, bits: u32) -> Result<(Ball, Ball)> {
        let xi = self.xi(bits)?;
        let s0 = eval_ball(&self.fiber.0, &xi);
        let s1 = eval_ball(&self.fiber.1, &xi);
        let eta = (-&s0)
            .try_div(&s1)
            .ok_or_else(|| Error::FieldEscape("fibre denominator not separated from zero".into()))?;
        Ok((xi, eta))
    }

    /// Original homogeneous coordinates (not normalized).
    pub fn coords(&self, bits: u32) -> Result<[Ball; 3]> {
        let (xi, eta) = self.local(bits)?;
        Ok(self.transform.apply(&[Ball::one().with_prec(bits + 8), xi, eta]))
    }

    /// Exact test whether the point lies on the projective curve `f = 0`.
    ///
    /// With `f(T [1, x, y]) = sum_j c_j(x) y^j` of degree `d` in `y`, the
    /// point lies on the curve iff `xi` is a root of
    /// `N = sum_j c_j (-s0)^j s1^(d-j)` (as `s1(xi) != 0`), i.e. of
    /// `h = gcd(eliminant, N)`. Since the eliminant is squarefree exactly one
    /// of `h(xi)` and `(eliminant / h)(xi)` vanishes, and certified ball
    /// evaluation at increasing precision decides which.
    pub fn lies_on(&self, f: &Poly) -> Result<bool> {
        let g = self.transform.pull_back(f)?;
        let z0 = g.vars()[0].clone();
        let aff = dehomogenize(&g, &z0)?;
        let cols = aff.coefficients_in(1);
        let d = cols.len().saturating_sub(1);
        // N up to a constant factor, over Z[i]
        let cs: Vec<Vec<ExactComplex>> = cols
            .iter()
            .map(|c| UniPoly::from_multi(c, 0).expect("coefficient in x only").coeffs().to_vec())
            .collect();
        let (s0, s1) = (&self.fiber.0, &self.fiber.1);
        let neg_s0 = (-s0).coeffs().to_vec();
        let mut refs: Vec<&[ExactComplex]> = vec![&neg_s0, s1.coeffs()];
        refs.extend(cs.iter().map(Vec::as_slice));
        let ints = gaussint::common_integral(&refs);
        let mut n_int = Vec::new();
        for (j, c) in ints[2..].iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..j {
                t = gaussint::poly_mul(&t, &ints[0]);
            }
            for _ in j..d {
                t = gaussint::poly_mul(&t, &ints[1]);
            }
            n_int = gaussint::poly_add(&n_int, &t);
        }
        let e_int = gaussint::integral_primitive(self.eliminant.coeffs());
        if gaussint::divides(&e_int, &n_int) {
            return Ok(true);
        }
        let n = UniPoly::from_gint(&n_int);
        let h = self.eliminant.gcd(&n);
        if h.is_constant() {
            return Ok(false);
        }
        if h.deg() == self.eliminant.deg() {
            return Ok(true);
        }
        let rest = self.eliminant.exact_div(&h);
        let mut bits = 96;
        loop {
            let xi = self.xi(bits)?;
            if eval_ball(&h, &xi).excludes_zero() {
                return Ok(false);
            }
            if eval_ball(&rest, &xi).excludes_zero() {
                return Ok(true);
            }
            bits *= 2;
            if bits > 8192 {
                return Err(Error::FieldEscape("membership test did not separate".into()));
            }
        }
    }
}

impl PlanePoint {
    pub fn rational(coords: [ExactComplex; 3]) -> Result<Self> {
        Ok(PlanePoint::Rational(RationalPoint::new(coords)?))
    }

    pub fn as_rational(&self) -> Option<&RationalPoint> {
        match self {
            PlanePoint::Rational(p) => Some(p),
            PlanePoint::Algebraic(_) => None,
        }
    }

    pub fn lies_on(&self, f: &Poly) -> Result<bool> {
        match self {
            PlanePoint::Rational(p) => p.lies_on(f),
            PlanePoint::Algebraic(p) => p.lies_on(f),
        }
    }

    /// Certified enclosures of the original homogeneous coordinates.
    pub fn coords_ball(&self, bits: u32) -> Result<[Ball; 3]> {
        match self {
            PlanePoint::Rational(p) => Ok(std::array::from_fn(|i| Ball::exact(&p.coords[i]))),
            PlanePoint::Algebraic(p) => p.coords(bits),
        }
    }

    /// Floating approximation normalized by the last coordinate that is
    /// certainly nonzero.
    pub fn approx(&self) -> [Complex<f64>; 3] {
        match self.coords_ball(60) {
            Ok(b) => {
                let k = (0..3).rev().find(|&i| b[i].excludes_zero()).unwrap_or(2);
                let d = b[k].to_c64();
                std::array::from_fn(|i| b[i].to_c64() / d)
            }
            Err(_) => [Complex::new(f64::NAN, f64::NAN); 3],
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PlanePoint::Rational(p) => format!(
                "[{} : {} : {}]",
                format_complex_short(&p.coords[0]),
                format_complex_short(&p.coords[1]),
                format_complex_short(&p.coords[2])
            ),
            PlanePoint::Algebraic(_) => {
                let a = self.approx();
                let f = |z: Complex<f64>| format!("{:.12}{:+.12}i", z.re, z.im);
                format!("~[{} : {} : {}]", f(a[0]), f(a[1]), f(a[2]))
            }
        }
    }
}

/// Point helper for affine charts: `[1 : x : y]`.
pub fn affine_point(x: ExactComplex, y: ExactComplex) -> PlanePoint {
    PlanePoint::rational([ExactComplex::one(), x, y]).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;

    #[test]
    fn normalization_is_canonical() {
        let p = RationalPoint::new([gi(2, 0), gi(4, 0), gi(0, 0)]).unwrap();
        assert_eq!(p.coords(), &[gi(1, 0) / gi(2, 0), gi(1, 0), gi(0, 0)]);
        assert_eq!(p.chart(), 1);
        assert!(RationalPoint::new([gi(0, 0), gi(0, 0), gi(0, 0)]).is_err());
        let q = RationalPoint::new([gi(0, 2), gi(0, 0), gi(1, 1)]).unwrap();
        assert_eq!(q.coords()[2], gi(1, 0));
        assert_eq!(q.coords()[0], gi(0, 2) / gi(1, 1));
    }
}
