use super::poly::{Monomial, MultiPoly, Roster};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Poly;

/// A polynomial all of whose terms have total degree `degree`. The zero
/// polynomial is a form of every degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousForm {
    poly: Poly,
    degree: u32,
}

impl HomogeneousForm {
    pub fn new(poly: Poly, degree: u32) -> Result<Self> {
        if poly.terms().any(|(m, _)| m.total() != degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(HomogeneousForm { poly, degree })
    }

    /// Infers the degree from a nonzero homogeneous polynomial.
    pub fn from_poly(poly: Poly) -> Result<Self> {
        let d = poly.degree().finite().ok_or(Error::Zero("form"))?;
        Self::new(poly, d)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &Roster {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Homogenizes `f` to `degree` with the new variable placed first in the
/// roster (or reused if already present and unused).
pub fn homogenize<C: Scalar>(f: &MultiPoly<C>, new_var: &str, degree: u32) -> Result<MultiPoly<C>> {
    if let Some(d) = f.degree().finite() {
        if d > degree {
            return Err(Error::DegreeTooSmall { required: d, requested: degree });
        }
    }
    let (vars, idx, base) = match f.var_position(new_var) {
        Ok(i) if !f.uses_var(i) => (f.vars().clone(), i, f.clone()),
        Ok(_) => return Err(Error::InvalidInput(format!("`{new_var}` already occurs in the polynomial"))),
        Err(_) => {
            let mut names = vec![new_var.to_string()];
            names.extend(f.vars().iter().cloned());
            let vars: Roster = names.into();
            let base = f.with_vars(&vars)?;
            (vars, 0, base)
        }
    };
    Ok(MultiPoly::from_terms(
        vars,
        base.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[idx] = degree - m.total();
            (Monomial::new(e), c.clone())
        }),
    ))
}

/// Homogenized form wrapped with its degree.
pub fn homogenize_form(f: &Poly, new_var: &str, degree: u32) -> Result<HomogeneousForm> {
    HomogeneousForm::new(homogenize(f, new_var, degree)?, degree)
}

/// Sets `var = 1` and drops it from the roster.
pub fn dehomogenize<C: Scalar>(f: &MultiPoly<C>, var: &str) -> Result<MultiPoly<C>> {
    let idx = f.var_position(var)?;
    let vars: Roster = f
        .vars()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, v)| v.clone())
        .collect();
    Ok(MultiPoly::from_terms(
        vars,
        f.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.remove(idx);
            (Monomial::new(e), c.clone())
        }),
    ))
}

/// Renames variables positionally, keeping coefficients and exponents.
pub fn rename<C: Scalar>(f: &MultiPoly<C>, names: &[&str]) -> Result<MultiPoly<C>> {
    if names.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: names.len(),
        });
    }
    let vars = super::poly::roster(names);
    Ok(MultiPoly::from_terms(vars, f.terms().map(|(m, c)| (m.clone(), c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_poly;

    #[test]
    fn homogenize_affine_line() {
        let v = roster(&["x"]);
        let f = &Poly::var(v.clone(), "x").unwrap() - &Poly::constant(v, gi(3, 0));
        let h = rename(&homogenize(&f, "z0", 1).unwrap(), &["z0", "z1"]).unwrap();
        let want = parse_poly("(1 + 0 i) * z1 + (-3 + 0 i) * z0", &roster(&["z0", "z1"])).unwrap();
        assert_eq!(h, want);
    }

    #[test]
    fn dehomogenize_conic() {
        let v = roster(&["z0", "z1", "z2"]);
        let f = parse_poly("(-1 + 0 i) * z1^2 + (1 + 0 i) * z0 z2", &v).unwrap();
        let g = dehomogenize(&f, "z0").unwrap();
        assert_eq!(g, parse_poly("(-1 + 0 i) * z1^2 + (1 + 0 i) * z2", &roster(&["z1", "z2"])).unwrap());
        assert_eq!(homogenize(&g, "z0", 2).unwrap(), f);
    }

    #[test]
    fn zero_and_too_small() {
        let v = roster(&["x", "y"]);
        assert!(homogenize(&Poly::zero(v.clone()), "z0", 3).unwrap().is_zero());
        let f = Poly::var(v, "x").unwrap().pow(2);
        assert!(matches!(homogenize(&f, "z0", 1), Err(Error::DegreeTooSmall { .. })));
    }
}
