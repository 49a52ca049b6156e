//! Singular-locus systems of real defining functions.

use crate::algebra::gcd::is_squarefree;
use crate::error::{Error, Result};
use crate::pencil::common_roster;
use crate::scalar::inv;
use crate::segre::ComplexifiedHypersurface;
use crate::Poly;

/// `{phi, d phi / d x_1, ..}` in real coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocusSystem {
    pub equations: Vec<Poly>,
    /// The defining function has a repeated factor, so its gradient
    /// vanishes on a whole component of the hypersurface.
    pub non_reduced: bool,
}

impl SingularLocusSystem {
    /// Certainly no common zero: some equation is a nonzero constant.
    pub fn is_certainly_empty(&self) -> bool {
        self.equations.iter().any(|e| e.is_constant() && !e.is_zero())
    }
}

pub fn singular_locus_system(h: &ComplexifiedHypersurface) -> SingularLocusSystem {
    let phi = h.real_form();
    let non_reduced = !is_squarefree(&phi);
    let mut equations = vec![phi.clone()];
    equations.extend(phi.gradient());
    SingularLocusSystem { equations, non_reduced }
}

/// Does the locus cut out by `candidate` lie inside the common zeros of
/// `system`?
///
/// Each candidate equation must be solvable for some variable that occurs
/// in it linearly with a constant coefficient; the solutions are substituted
/// into the system, which must then vanish identically. This covers
/// coordinate subspaces and graphs, the shapes singular loci are given in.
pub fn contains_variety(system: &[Poly], candidate: &[Poly]) -> Result<bool> {
    if system.is_empty() {
        return Ok(true);
    }
    let all: Vec<&Poly> = system.iter().chain(candidate).collect();
    let mut polys = common_roster(&all);
    let mut cands: Vec<Poly> = polys.split_off(system.len());
    let mut eqs = polys;
    while let Some(c) = cands.pop() {
        if c.is_zero() {
            continue;
        }
        let v = (0..c.nvars())
            .find(|&v| {
                let co = c.coefficients_in(v);
                co.len() == 2 && co[1].is_constant()
            })
            .ok_or_else(|| {
                Error::InvalidInput(format!("candidate equation {c} cannot be solved for a variable"))
            })?;
        let co = c.coefficients_in(v);
        let value = (-&co[0]).scale(&inv(&co[1].constant_term()));
        let name = c.vars()[v].clone();
        eqs = eqs.iter().map(|e| e.substitute(&name, &value)).collect::<Result<_>>()?;
        cands = cands.iter().map(|e| e.substitute(&name, &value)).collect::<Result<_>>()?;
    }
    Ok(eqs.iter().all(Poly::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_expr;
    use crate::segre::{complexify, complexify_real};

    fn brunella() -> ComplexifiedHypersurface {
        let v = roster(&["x", "y", "s", "t"]);
        let phi = parse_expr("t^2 - 4*(y^2 + s)*y^2", &v).unwrap();
        complexify_real(&phi, &[("x", "y"), ("s", "t")], &["z1", "z2"], &["w1", "w2"]).unwrap()
    }

    #[test]
    fn brunella_singular_set_is_contained() {
        let h = brunella();
        let sys = singular_locus_system(&h);
        assert_eq!(sys.equations.len(), 5);
        assert!(!sys.non_reduced);
        let v = roster(&["x", "y", "s", "t"]);
        let cand = [parse_expr("t", &v).unwrap(), parse_expr("y", &v).unwrap()];
        assert!(contains_variety(&sys.equations, &cand).unwrap());
        let wrong = [parse_expr("t", &v).unwrap(), parse_expr("s", &v).unwrap()];
        assert!(!contains_variety(&sys.equations, &wrong).unwrap());
        let bad = [parse_expr("t^2 + y^2", &v).unwrap()];
        assert!(contains_variety(&sys.equations, &bad).is_err());
    }

    #[test]
    fn flat_and_squared_examples() {
        let zw = roster(&["z1", "z2", "w1", "w2"]);
        let pairs = [("z1", "w1"), ("z2", "w2")];
        let im = complexify(&parse_expr("-1/2*i*(z2 - w2)", &zw).unwrap(), &pairs).unwrap();
        let sys = singular_locus_system(&im);
        assert!(sys.is_certainly_empty());
        assert!(!sys.non_reduced);
        let sq = complexify(&parse_expr("-1/4*(z2 - w2)^2", &zw).unwrap(), &pairs).unwrap();
        assert!(singular_locus_system(&sq).non_reduced);
    }
}
