use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Division with remainder by a single divisor under graded-lex order:
/// returns `(q, r)` with `f = q g + r` and no term of `r` divisible by the
/// leading monomial of `g`.
pub fn div_rem<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>) -> Result<(MultiPoly<C>, MultiPoly<C>)> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut p, g) = f.align(g);
    let vars = p.vars().clone();
    let (lm_g, lc_g) = {
        let (m, c) = g.leading_term().expect("nonzero divisor");
        (m.clone(), c.clone())
    };
    let mut q = MultiPoly::zero(vars.clone());
    let mut r = MultiPoly::zero(vars.clone());
    while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        if lm_g.divides(&m) {
            let t = MultiPoly::monomial(vars.clone(), lm_g.quotient_of(&m).exps().to_vec(), c / lc_g.clone());
            p = &p - &(&t * &g);
            q = &q + &t;
        } else {
            let t = MultiPoly::monomial(vars.clone(), m.exps().to_vec(), c);
            p = &p - &t;
            r = &r + &t;
        }
    }
    Ok((q, r))
}

/// `f / g` when `g` divides `f` exactly.
pub fn exact_divide<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    let (q, r) = div_rem(f, g)?;
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NotDivisible)
    }
}

pub fn divides<C: Field>(g: &MultiPoly<C>, f: &MultiPoly<C>) -> bool {
    matches!(div_rem(f, g), Ok((_, r)) if r.is_zero())
}
