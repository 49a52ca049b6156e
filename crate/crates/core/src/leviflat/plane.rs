//! Restriction of forms and foliations on `P^n` to linearly embedded planes.

use crate::algebra::gcd::{gcd_many, is_squarefree};
use crate::algebra::linalg::rank;
use crate::curves::sample::plane_roster;
use crate::error::{Error, Result};
use crate::pencil::FoliationForm;
use crate::{ExactComplex, HomogeneousForm, Poly};

/// A linear map `P^2 -> P^n`, `z_k = sum_r rows[r][k] u_r`, of rank 3.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneMap {
    rows: [Vec<ExactComplex>; 3],
}

impl PlaneMap {
    pub fn new(rows: [Vec<ExactComplex>; 3]) -> Result<Self> {
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidInput("plane rows differ in length".into()));
        }
        let r = rank(&rows);
        if r != 3 {
            return Err(Error::RankDeficientPlane(r));
        }
        Ok(PlaneMap { rows })
    }

    pub fn rows(&self) -> &[Vec<ExactComplex>; 3] {
        &self.rows
    }

    /// Number of homogeneous coordinates of the target space.
    pub fn target_len(&self) -> usize {
        self.rows[0].len()
    }

    /// `z_k` as linear forms in the plane coordinates `(z0, z1, z2)`.
    fn images(&self) -> Vec<Poly> {
        let u = plane_roster();
        (0..self.target_len())
            .map(|k| {
                (0..3).fold(Poly::zero(u.clone()), |acc, r| {
                    &acc + &Poly::var_index(u.clone(), r).scale(&self.rows[r][k])
                })
            })
            .collect()
    }

    fn check_arity(&self, nvars: usize) -> Result<()> {
        if nvars != self.target_len() {
            return Err(Error::ArityMismatch {
                expected: self.target_len(),
                found: nvars,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedForm {
    /// The pulled-back polynomial on the plane roster; zero when the plane
    /// lies inside the hypersurface.
    pub poly: Poly,
    /// The restriction is nonzero, hence of the original degree.
    pub degree_preserved: bool,
    /// The restriction is squarefree (coprime to its partials).
    pub squarefree: bool,
}

pub fn restrict_form(f: &HomogeneousForm, plane: &PlaneMap) -> Result<RestrictedForm> {
    plane.check_arity(f.vars().len())?;
    let poly = f.poly().compose(&plane.images())?;
    let degree_preserved = !poly.is_zero();
    let squarefree = degree_preserved && is_squarefree(&poly);
    Ok(RestrictedForm {
        poly,
        degree_preserved,
        squarefree,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedFoliation {
    /// Coefficients of the pulled-back 1-form before the gcd is removed.
    pub raw: Vec<Poly>,
    /// The saturated restricted foliation, absent when the pull-back is zero.
    pub form: Option<FoliationForm>,
    /// The saturated restriction keeps the degree of the original form.
    pub degree_preserved: bool,
    /// The raw coefficients share no common factor, so the singular set of
    /// the restriction is finite.
    pub discrete_singular_set: bool,
}

/// Pulls `omega = sum A_k dz_k` back along the plane:
/// the coefficient of `du_r` is `sum_k A_k(z(u)) rows[r][k]`.
pub fn restrict_foliation(omega: &FoliationForm, plane: &PlaneMap) -> Result<RestrictedFoliation> {
    plane.check_arity(omega.coeffs().len())?;
    let images = plane.images();
    let pulled: Vec<Poly> = omega.coeffs().iter().map(|a| a.compose(&images)).collect::<Result<_>>()?;
    let u = plane_roster();
    let raw: Vec<Poly> = (0..3)
        .map(|r| {
            pulled
                .iter()
                .zip(&plane.rows[r])
                .fold(Poly::zero(u.clone()), |acc, (a, m)| &acc + &a.scale(m))
        })
        .collect();
    let g = gcd_many(raw.iter().filter(|c| !c.is_zero()));
    let discrete_singular_set = g.as_ref().map_or(false, Poly::is_constant);
    let form = if g.is_some() { Some(FoliationForm::new(&raw)?) } else { None };
    let degree_preserved = form.as_ref().map_or(false, |f| f.degree() == omega.degree());
    Ok(RestrictedFoliation {
        raw,
        form,
        degree_preserved,
        discrete_singular_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_expr;

    fn row(v: &[i64]) -> Vec<ExactComplex> {
        v.iter().map(|&k| gi(k, 0)).collect()
    }

    #[test]
    fn hyperplane_foliation_restricts_to_the_plane() {
        let v = roster(&["z0", "z1", "z2", "z3"]);
        let omega = FoliationForm::new(&[
            parse_expr("-z1", &v).unwrap(),
            parse_expr("z0", &v).unwrap(),
            parse_expr("0", &v).unwrap(),
            parse_expr("0", &v).unwrap(),
        ])
        .unwrap();
        let plane = PlaneMap::new([row(&[1, 0, 0, 0]), row(&[0, 1, 0, 0]), row(&[0, 0, 1, 0])]).unwrap();
        let r = restrict_foliation(&omega, &plane).unwrap();
        let u = plane_roster();
        let want = FoliationForm::new(&[
            parse_expr("-z1", &u).unwrap(),
            parse_expr("z0", &u).unwrap(),
            parse_expr("0", &u).unwrap(),
        ])
        .unwrap();
        assert_eq!(r.form, Some(want));
        assert!(r.discrete_singular_set && r.degree_preserved);
    }

    #[test]
    fn quadric_restricted_to_a_plane() {
        let v = roster(&["z0", "z1", "z2", "z3"]);
        let f = HomogeneousForm::from_poly(parse_expr("z0*z3 - z1*z2", &v).unwrap()).unwrap();
        let plane = PlaneMap::new([row(&[1, 0, 0, 1]), row(&[0, 1, 0, 0]), row(&[0, 0, 1, 0])]).unwrap();
        let r = restrict_form(&f, &plane).unwrap();
        assert_eq!(r.poly, parse_expr("z0^2 - z1*z2", &plane_roster()).unwrap());
        assert!(r.degree_preserved && r.squarefree);

        let inside = PlaneMap::new([row(&[1, 0, 0, 0]), row(&[0, 1, 0, 0]), row(&[0, 0, 0, 1])]).unwrap();
        let f = HomogeneousForm::from_poly(parse_expr("z0*z2", &v).unwrap()).unwrap();
        let r = restrict_form(&f, &inside).unwrap();
        assert!(r.poly.is_zero() && !r.degree_preserved);
    }

    #[test]
    fn rank_deficient_plane_is_rejected() {
        let p = PlaneMap::new([row(&[1, 0, 0]), row(&[2, 0, 0]), row(&[0, 0, 1])]);
        assert_eq!(p, Err(Error::RankDeficientPlane(2)));
    }
}
