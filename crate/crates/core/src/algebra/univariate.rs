//! Dense univariate polynomials, used for eliminants, edge polynomials and
//! fibre computations.

use std::ops::{Add, Mul, Neg, Sub};

use super::gaussint::{self, GInt};
use super::poly::{Degree, Monomial, MultiPoly, Roster};
use crate::scalar::{ExactField, Field, Scalar};

/// Coefficients in increasing degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() as u32 - 1)
        }
    }

    /// Degree as a plain index; zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<D: Scalar, F: FnMut(&C) -> D>(&self, f: F) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(x + s)`
    pub fn shift(&self, s: &C) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![s.clone(), C::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn to_multi(&self, vars: Roster, idx: usize) -> MultiPoly<C> {
        let n = vars.len();
        MultiPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; n];
                e[idx] = k as u32;
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Reads a polynomial that only involves variable `idx`.
    pub fn from_multi(p: &MultiPoly<C>, idx: usize) -> Option<Self> {
        let mut coeffs = vec![C::zero(); p.degree_in(idx).finite().map_or(0, |d| d as usize + 1)];
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(j, &e)| j != idx && e > 0) {
                return None;
            }
            coeffs[m.exps()[idx] as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }
}

impl<C: Field> UniPoly<C> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = C::one() / self.leading_coeff();
        self.scale(&inv)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = C::one() / d.leading_coeff();
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }
}

impl<C: ExactField> UniPoly<C> {
    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`,
    /// computed without divisions.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = d.leading_coeff();
        let delta = self.deg() - dd;
        let mut r = self.coeffs.clone();
        let mut steps = 0;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x = x.clone() * lc.clone();
            }
            if !c.is_zero() {
                let shift = top - dd;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[shift + j] = r[shift + j].clone() - c.clone() * dc.clone();
                }
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            steps += 1;
        }
        let mut out = Self::new(r);
        for _ in steps..=delta {
            out = out.scale(&lc);
        }
        out
    }

    /// Denominator-free, content-free associate whose leading coefficient
    /// lies in the first quadrant. Keeps coefficients small, unlike
    /// [`UniPoly::monic`].
    pub fn primitive(&self) -> Self {
        Self::from_gint(&gaussint::make_primitive(self.to_gint()))
    }

    pub(crate) fn to_gint(&self) -> Vec<GInt> {
        let g: Vec<_> = self.coeffs.iter().map(|c| c.to_gaussian()).collect();
        gaussint::integral_primitive(&g)
    }

    pub(crate) fn from_gint(v: &[GInt]) -> Self {
        Self::new(gaussint::to_gaussian(v).iter().map(C::from_gaussian).collect())
    }

    /// Gcd normalized as in [`UniPoly::primitive`], computed over `Z[i]` by
    /// the subresultant remainder sequence after a modular coprimality test.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero(),
            (true, false) => other.primitive(),
            (false, true) => self.primitive(),
            (false, false) => Self::from_gint(&gaussint::prs_gcd(&self.to_gint(), &other.to_gint())),
        }
    }

    /// Whether `self` divides `other` (`self` nonzero).
    pub fn divides(&self, other: &Self) -> bool {
        other.is_zero() || gaussint::divides(&self.to_gint(), &other.to_gint())
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Yun's squarefree decomposition: primitive squarefree, pairwise
    /// coprime factors `(f_k, k)` with `self = c * prod f_k^k`; trivial
    /// factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.primitive();
        let df = f.derivative();
        let c = f.gcd(&df);
        if c.is_constant() {
            return vec![(f, 1)];
        }
        let mut w = f.exact_div(&c);
        let mut y = df.exact_div(&c);
        let mut z = &y - &w.derivative();
        let mut out = Vec::new();
        let mut k = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.primitive(), k));
            }
            w = w.exact_div(&g);
            y = z.exact_div(&g);
            z = &y - &w.derivative();
            k += 1;
        }
        out
    }

    /// Primitive squarefree part.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let c = self.gcd(&self.derivative());
        if c.is_constant() {
            return self.primitive();
        }
        self.exact_div(&c).primitive()
    }

    /// Multiplicity of `x = a` as a root.
    pub fn root_multiplicity(&self, a: &C) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let shifted = self.shift(a);
        shifted.valuation().unwrap_or(0)
    }
}

impl<C: Scalar> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<C: Scalar> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<C: Scalar> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<C: Scalar> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: &UniPoly<C>) -> UniPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}
