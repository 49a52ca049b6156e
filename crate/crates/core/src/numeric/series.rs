//! Truncated power series `sum_{k < N} c_k t^k` known modulo `t^N`.

use super::ball::Certified;
use crate::algebra::poly::MultiPoly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Outcome of reading the valuation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// The first certainly-nonzero coefficient sits at this index and every
    /// earlier coefficient is certainly zero.
    Exact(usize),
    /// A certainly-nonzero coefficient sits at this index but some earlier
    /// coefficient could not be decided; the true valuation is at most it.
    AtMost(usize),
    /// No coefficient below the truncation order is certainly nonzero.
    Undecided,
}

impl<C: Scalar> Series<C> {
    /// Series with the given coefficients, truncated at `n` terms.
    pub fn new(mut coeffs: Vec<C>, n: usize) -> Self {
        coeffs.resize(n, C::zero());
        Series { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Series::new(Vec::new(), n)
    }

    pub fn constant(c: C, n: usize) -> Self {
        Series::new(vec![c], n)
    }

    /// `c t^k`
    pub fn monomial(c: C, k: usize, n: usize) -> Self {
        let mut v = vec![C::zero(); n];
        if k < n {
            v[k] = c;
        }
        Series { coeffs: v }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn set(&mut self, k: usize, c: C) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() + o.coeffs[k].clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series {
            coeffs: (0..n).map(|k| self.coeffs[k].clone() - o.coeffs[k].clone()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(n);
        Series { coeffs: c }
    }

    /// `self(u t)`
    pub fn rescale(&self, u: &C) -> Self {
        let mut p = C::one();
        let mut out = Vec::with_capacity(self.order());
        for c in &self.coeffs {
            out.push(c.clone() * p.clone());
            p = p * u.clone();
        }
        Series { coeffs: out }
    }

    pub fn map<D: Scalar, F: FnMut(&C) -> D>(&self, f: F) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<C: Certified> Series<C> {
    pub fn valuation(&self) -> Valuation {
        let mut undecided = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.certainly_nonzero() {
                return if undecided {
                    Valuation::AtMost(k)
                } else {
                    Valuation::Exact(k)
                };
            }
            if !c.certainly_zero() {
                undecided = true;
            }
        }
        Valuation::Undecided
    }

    /// Whether every coefficient is certainly zero.
    pub fn certainly_zero(&self) -> bool {
        self.coeffs.iter().all(Certified::certainly_zero)
    }
}

/// Evaluates a polynomial at a tuple of series, all truncated alike.
pub fn eval_poly<C: Scalar, D: Scalar>(
    p: &MultiPoly<C>,
    args: &[Series<D>],
    lift: impl Fn(&C) -> D,
) -> Series<D> {
    let n = args.iter().map(Series::order).min().unwrap_or(0);
    let mut powers: Vec<Vec<Series<D>>> = args.iter().map(|a| vec![Series::constant(D::one(), n), a.truncate(n)]).collect();
    let mut acc = Series::zero(n);
    for (m, c) in p.terms() {
        let mut t = Series::constant(lift(c), n);
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&powers[i][1]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::{ExactComplex, Poly};

    #[test]
    fn cusp_substitution() {
        let v = roster(&["x", "y"]);
        let x = Poly::var_index(v.clone(), 0);
        let y = Poly::var_index(v, 1);
        let f = &(&y * &y) - &x.pow(3);
        let n = 10;
        let xt = Series::monomial(gi(1, 0), 2, n);
        let yt = Series::monomial(gi(1, 0), 3, n);
        let s = eval_poly(&f, &[xt.clone(), yt.clone()], ExactComplex::clone);
        assert!(s.certainly_zero());
        let s = eval_poly(&y, &[xt, yt], ExactComplex::clone);
        assert_eq!(s.valuation(), Valuation::Exact(3));
    }
}
