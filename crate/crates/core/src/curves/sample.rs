//! Seeded random forms for sweeps and property checks.

use rand::Rng;

use crate::algebra::gaussian::gi;
use crate::algebra::homogeneous::HomogeneousForm;
use crate::algebra::poly::{roster, Monomial, Roster};
use crate::curves::intersect::is_smooth_curve;
use crate::Poly;

/// The default projective roster `z0, z1, z2`.
pub fn plane_roster() -> Roster {
    roster(&["z0", "z1", "z2"])
}

/// Exponent vectors of all degree-`d` monomials in `n` variables, in a
/// fixed order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// A form of degree `d` in `z0, z1, z2` whose coefficients are Gaussian
/// integers with parts in `-bound..=bound` (never the zero form).
pub fn random_form<R: Rng>(rng: &mut R, d: u32, bound: i64) -> HomogeneousForm {
    let vars = plane_roster();
    loop {
        let p = Poly::from_terms(
            vars.clone(),
            monomials_of_degree(3, d)
                .into_iter()
                .map(|e| (Monomial::new(e), gi(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)))),
        );
        if !p.is_zero() {
            return HomogeneousForm::new(p, d).expect("homogeneous by construction");
        }
    }
}

/// A random form of degree `d` certified smooth (hence irreducible).
pub fn random_smooth_form<R: Rng>(rng: &mut R, d: u32, bound: i64) -> HomogeneousForm {
    loop {
        let f = random_form(rng, d, bound);
        if is_smooth_curve(&f, rng).unwrap_or(false) {
            return f;
        }
    }
}
