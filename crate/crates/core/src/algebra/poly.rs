//! Sparse multivariate polynomials over a [`Scalar`] ring.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered
//! graded-lexicographically with respect to the declared variable roster, so
//! iteration is deterministic and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Total degree with a distinct sentinel for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// The finite degree; panics on the zero-polynomial sentinel.
    pub fn unwrap(self) -> u32 {
        self.finite().expect("degree of the zero polynomial")
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

pub type Roster = Arc<[String]>;

pub fn roster<S: AsRef<str>>(names: &[S]) -> Roster {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

fn union_roster(a: &Roster, b: &Roster) -> Roster {
    if a == b {
        return a.clone();
    }
    let mut names: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !names.contains(v) {
            names.push(v.clone());
        }
    }
    names.into()
}

#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    vars: Roster,
    terms: BTreeMap<Monomial, C>,
    degree: Degree,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: Roster) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
            degree: Degree::NegInfinity,
        }
    }

    pub fn constant(vars: Roster, c: C) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::one(n), c)])
    }

    pub fn one(vars: Roster) -> Self {
        Self::constant(vars, C::one())
    }

    /// The coordinate function of variable `name`.
    pub fn var(vars: Roster, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(vars, idx))
    }

    pub fn var_index(vars: Roster, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::from_terms(vars, [(Monomial(e), C::one())])
    }

    pub fn monomial(vars: Roster, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        Self::from_terms(vars, [(Monomial(exps), c)])
    }

    /// Builds a polynomial summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(vars: Roster, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), vars.len());
            accumulate(&mut map, m, c);
        }
        Self::from_map(vars, map)
    }

    fn from_map(vars: Roster, mut terms: BTreeMap<Monomial, C>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let degree = terms
            .keys()
            .map(Monomial::total)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite);
        MultiPoly { vars, terms, degree }
    }

    pub fn vars(&self) -> &Roster {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_position(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree <= Degree::Finite(0)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading_term().map_or_else(C::zero, |(_, c)| c.clone())
    }

    pub fn degree_in(&self, idx: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[idx])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Lowest total degree among the terms (order of vanishing at the origin).
    pub fn order(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::total)
            .min()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Re-expresses the polynomial over another roster. Variables missing from
    /// `vars` are only allowed if they do not occur.
    pub fn with_vars(&self, vars: &Roster) -> Result<Self> {
        if &self.vars == vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if !self.uses_var(i) => map.push(None),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = x;
                }
            }
            (Monomial(e), c.clone())
        });
        Ok(Self::from_terms(vars.clone(), terms))
    }

    /// Brings two polynomials onto the union of their rosters.
    pub fn align(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = union_roster(&self.vars, &other.vars);
        (
            self.with_vars(&u).expect("union roster"),
            other.with_vars(&u).expect("union roster"),
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()));
        Self::from_terms(self.vars.clone(), terms)
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.mul(mono), a.clone() * c.clone()));
        Self::from_terms(self.vars.clone(), terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Scalar, F: FnMut(&C) -> D>(&self, mut f: F) -> MultiPoly<D> {
        MultiPoly::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Applies `f` to every coefficient; `f` may keep the monomial or drop it.
    pub fn filter_terms<F: FnMut(&Monomial, &C) -> bool>(&self, mut f: F) -> Self {
        Self::from_terms(
            self.vars.clone(),
            self.terms
                .iter()
                .filter(|(m, c)| f(m, c))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Exact value at `point`, accumulating cached variable powers.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let powers = self.power_tables(point);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    fn power_tables(&self, point: &[C]) -> Vec<Vec<C>> {
        (0..self.nvars())
            .map(|i| {
                let maxe = self.degree_in(i).finite().unwrap_or(0) as usize;
                let mut p = Vec::with_capacity(maxe + 1);
                p.push(C::one());
                for k in 1..=maxe {
                    let next = p[k - 1].clone() * point[i].clone();
                    p.push(next);
                }
                p
            })
            .collect()
    }

    pub fn partial(&self, name: &str) -> Result<Self> {
        Ok(self.partial_index(self.var_position(name)?))
    }

    pub fn partial_index(&self, idx: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[idx] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[idx];
            e[idx] -= 1;
            (Monomial(e), c.clone() * C::from_i64(k as i64))
        });
        Self::from_terms(self.vars.clone(), terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.partial_index(i)).collect()
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// roster, which becomes the roster of the result.
    pub fn compose(&self, images: &[MultiPoly<C>]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        let images: Vec<MultiPoly<C>> = images
            .iter()
            .map(|p| p.with_vars(&target))
            .collect::<Result<_>>()?;
        let mut cache: Vec<Vec<MultiPoly<C>>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target.clone()), p.clone()])
            .collect();
        let mut acc = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Replaces variable `name` by `value`; the result lives on the union
    /// roster of `self` and `value`.
    pub fn substitute(&self, name: &str, value: &MultiPoly<C>) -> Result<Self> {
        let idx = self.var_position(name)?;
        let u = union_roster(&self.vars, &value.vars);
        let base = self.with_vars(&u)?;
        let images: Vec<MultiPoly<C>> = (0..u.len())
            .map(|j| {
                if j == idx {
                    value.with_vars(&u).expect("union roster")
                } else {
                    MultiPoly::var_index(u.clone(), j)
                }
            })
            .collect();
        base.compose(&images)
    }

    /// Sets variable `idx` to the constant `value`, keeping the roster.
    pub fn specialize(&self, idx: usize, value: &C) -> Self {
        let maxe = self.degree_in(idx).finite().unwrap_or(0) as usize;
        let mut p = vec![C::one()];
        for k in 1..=maxe {
            p.push(p[k - 1].clone() * value.clone());
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[idx] as usize;
            e[idx] = 0;
            (Monomial(e), c.clone() * p[k].clone())
        });
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Coefficients with respect to variable `idx`: entry `k` multiplies
    /// `x_idx^k`. Coefficients keep the full roster (with `x_idx` absent).
    pub fn coefficients_in(&self, idx: usize) -> Vec<Self> {
        let d = match self.degree_in(idx) {
            Degree::NegInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize,
        };
        let mut maps: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[idx] as usize;
            e[idx] = 0;
            maps[k].insert(Monomial(e), c.clone());
        }
        maps.into_iter()
            .map(|t| Self::from_map(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of [`Self::coefficients_in`].
    pub fn from_coefficients_in(vars: Roster, idx: usize, coeffs: &[Self]) -> Self {
        let mut map = BTreeMap::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.0.clone();
                e[idx] += k as u32;
                accumulate(&mut map, Monomial(e), c.clone());
            }
        }
        Self::from_map(vars, map)
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Self {
        self.filter_terms(|m, _| m.total() == d)
    }

    /// Terms of total degree below `d`.
    pub fn truncate_below(&self, d: u32) -> Self {
        self.filter_terms(|m, _| m.total() < d)
    }
}

fn accumulate<C: Scalar>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            *o.get_mut() = s;
        }
    }
}

impl<C: Scalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.align(other);
        a.terms == b.terms
    }
}

impl<C: Scalar> Eq for MultiPoly<C> where C: Eq {}

impl<'a, C: Scalar> Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        let (a, b) = if self.vars == rhs.vars {
            (None, None)
        } else {
            let (a, b) = self.align(rhs);
            (Some(a), Some(b))
        };
        let a = a.as_ref().unwrap_or(self);
        let b = b.as_ref().unwrap_or(rhs);
        let mut map = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut map, m.clone(), c.clone());
        }
        MultiPoly::from_map(a.vars.clone(), map)
    }
}

impl<'a, C: Scalar> Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
            degree: self.degree,
        }
    }
}

impl<'a, C: Scalar> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &'a MultiPoly<C>) -> MultiPoly<C> {
        let (a, b) = if self.vars == rhs.vars {
            (None, None)
        } else {
            let (a, b) = self.align(rhs);
            (Some(a), Some(b))
        };
        let a = a.as_ref().unwrap_or(self);
        let b = b.as_ref().unwrap_or(rhs);
        let mut map = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut map, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        MultiPoly::from_map(a.vars.clone(), map)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

/// `c * x^k` in a single-variable-style helper used by tests and builders.
pub fn term<C: Scalar>(vars: &Roster, c: C, exps: &[u32]) -> MultiPoly<C> {
    MultiPoly::monomial(vars.clone(), exps.to_vec(), c)
}

/// `base^e` for scalar coefficients, re-exported for polynomial builders.
pub fn cpow<C: Scalar>(base: &C, e: u32) -> C {
    scalar::pow(base, e)
}
