//! Invariance of curves and hypersurfaces under holomorphic 1-forms, and the
//! quadratic 2-web check.

use rand::Rng;

use super::levi::check_reduced;
use super::sampling::{certify_on_surface, SampleOptions, SampleOutcome, SampleTable, Witness};
use crate::algebra::division::div_rem;
use crate::algebra::gcd::is_squarefree;
use crate::algebra::poly::roster;
use crate::error::{Error, Result};
use crate::numeric::ball::Ball;
use crate::pencil::{common_roster, FoliationForm};
use crate::segre::ComplexifiedHypersurface;
use crate::{Poly, Roster};

/// An affine holomorphic 1-form `sum a_k dx_k`; coefficient `k` belongs to
/// variable `k` of the roster.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineForm {
    coeffs: Vec<Poly>,
}

impl AffineForm {
    pub fn new(coeffs: &[Poly]) -> Result<Self> {
        let refs: Vec<&Poly> = coeffs.iter().collect();
        let coeffs = common_roster(&refs);
        if coeffs.is_empty() || coeffs.len() != coeffs[0].nvars() {
            return Err(Error::InvalidInput(
                "an affine 1-form needs one coefficient per variable".into(),
            ));
        }
        if coeffs.iter().all(Poly::is_zero) {
            return Err(Error::Zero("1-form"));
        }
        Ok(AffineForm { coeffs })
    }

    /// The chart `z_0 = 1` of a projective foliation form on `(z_0, .., z_n)`,
    /// written on the affine roster `names`.
    pub fn from_projective(omega: &FoliationForm, names: &[&str]) -> Result<Self> {
        let n = names.len();
        if omega.coeffs().len() != n + 1 {
            return Err(Error::ArityMismatch {
                expected: n + 1,
                found: omega.coeffs().len(),
            });
        }
        let target = roster(names);
        let images: Vec<Poly> = std::iter::once(Poly::one(target.clone()))
            .chain((0..n).map(|k| Poly::var_index(target.clone(), k)))
            .collect();
        let coeffs: Vec<Poly> = omega.coeffs()[1..]
            .iter()
            .map(|a| a.compose(&images))
            .collect::<Result<_>>()?;
        AffineForm::new(&coeffs)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn vars(&self) -> &Roster {
        self.coeffs[0].vars()
    }
}

/// A 1-form accepted by [`curve_invariance`].
#[derive(Clone, Debug, PartialEq)]
pub enum OneForm {
    Affine(AffineForm),
    Projective(FoliationForm),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangencyVerdict {
    Invariant,
    NotInvariant,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TangencyEvidence {
    /// `tau_k = cofactor_k * P` exactly.
    Cofactors(Vec<Poly>),
    /// Nonzero remainders of `tau_k` modulo `P`.
    Residuals(Vec<Poly>),
    Samples(SampleTable),
    Witness(Witness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangencyReport {
    /// The tangency polynomials whose vanishing on the object is tested.
    pub tau: Vec<Poly>,
    pub verdict: TangencyVerdict,
    pub evidence: TangencyEvidence,
}

impl TangencyReport {
    /// True for verdicts certified by exact division.
    pub fn is_exact(&self) -> bool {
        matches!(
            self.evidence,
            TangencyEvidence::Cofactors(_) | TangencyEvidence::Residuals(_)
        )
    }
}

fn divide_all(tau: Vec<Poly>, p: &Poly) -> Result<TangencyReport> {
    let mut cofactors = Vec::with_capacity(tau.len());
    let mut residuals = Vec::new();
    for t in &tau {
        let (q, r) = div_rem(t, p)?;
        if r.is_zero() {
            cofactors.push(q);
        } else {
            residuals.push(r);
        }
    }
    Ok(if residuals.is_empty() {
        TangencyReport {
            tau,
            verdict: TangencyVerdict::Invariant,
            evidence: TangencyEvidence::Cofactors(cofactors),
        }
    } else {
        TangencyReport {
            tau,
            verdict: TangencyVerdict::NotInvariant,
            evidence: TangencyEvidence::Residuals(residuals),
        }
    })
}

/// Is the curve `{P = 0}` invariant by `omega`?
///
/// For an affine form `a dx + b dy` this is `P | a P_y - b P_x`; for a
/// projective foliation form it is `P | omega ^ dP` componentwise.
pub fn curve_invariance(omega: &OneForm, p: &Poly) -> Result<TangencyReport> {
    if p.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    if !is_squarefree(p) {
        return Err(Error::NotSquarefree);
    }
    match omega {
        OneForm::Affine(form) => {
            if form.coeffs.len() != 2 {
                return Err(Error::InvalidInput("affine invariance needs a form a dx + b dy".into()));
            }
            let polys = common_roster(&[&form.coeffs[0], &form.coeffs[1], p]);
            let (a, b, p) = (&polys[0], &polys[1], &polys[2]);
            let (x, y) = (form.vars()[0].as_str(), form.vars()[1].as_str());
            let tau = &(a * &p.partial(y)?) - &(b * &p.partial(x)?);
            divide_all(vec![tau], p)
        }
        OneForm::Projective(form) => {
            let polys = common_roster(&[&form.coeffs()[0], p]);
            divide_all(form.wedge_differential(p), &polys[1])
        }
    }
}

/// Tangency of the foliation `omega = a dz_1 + b dz_2` with the real
/// hypersurface `{phi = 0}` of `C^2`.
///
/// `tau = a phi_{z2} - b phi_{z1}` (complexified) vanishes on the
/// hypersurface exactly where the leaves of `omega` are tangent to it. The
/// exact tier divides `tau` by `phi_C`; otherwise `tau` is evaluated on
/// certified sample points. The scope is the regular part of the
/// hypersurface away from the singular set of `omega`.
pub fn hypersurface_tangency<R: Rng>(
    omega: &AffineForm,
    h: &ComplexifiedHypersurface,
    opts: &SampleOptions,
    rng: &mut R,
) -> Result<TangencyReport> {
    if h.n() != 2 || omega.coeffs.len() != 2 {
        return Err(Error::InvalidInput("hypersurface tangency is computed in C^2".into()));
    }
    check_reduced(h)?;
    let phi = h.phi_c();
    let a = h.lift_holomorphic(&omega.coeffs[0])?;
    let b = h.lift_holomorphic(&omega.coeffs[1])?;
    let tau = &(&a * &phi.partial_index(1)) - &(&b * &phi.partial_index(0));
    let (q, r) = div_rem(&tau, phi)?;
    if r.is_zero() {
        return Ok(TangencyReport {
            tau: vec![tau],
            verdict: TangencyVerdict::Invariant,
            evidence: TangencyEvidence::Cofactors(vec![q]),
        });
    }
    let tau_ball = tau.map_coeffs(Ball::exact);
    let outcome = certify_on_surface(h, opts, rng, |p| Ok(vec![tau_ball.eval(&p.zw_balls())?]))?;
    Ok(match outcome {
        SampleOutcome::Vanishes(t) => TangencyReport {
            tau: vec![tau],
            verdict: TangencyVerdict::Invariant,
            evidence: TangencyEvidence::Samples(t),
        },
        SampleOutcome::Witness(w) => TangencyReport {
            tau: vec![tau],
            verdict: TangencyVerdict::NotInvariant,
            evidence: TangencyEvidence::Witness(w),
        },
    })
}

/// A quadratic 2-web `a dw^2 + b dw dz + c dz^2 = 0` on a plane with
/// coordinates `(z, w)`; the coefficients live on that two-variable roster.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticWeb {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl QuadraticWeb {
    pub fn new(a: &Poly, b: &Poly, c: &Poly) -> Result<Self> {
        let polys = common_roster(&[a, b, c]);
        if polys[0].nvars() != 2 {
            return Err(Error::InvalidInput("a plane 2-web needs exactly two coordinates".into()));
        }
        Ok(QuadraticWeb {
            a: polys[0].clone(),
            b: polys[1].clone(),
            c: polys[2].clone(),
        })
    }
}

/// Checks that every leaf `w = g(z, c)` of a family satisfies the web
/// equation identically: `a g_z^2 + b g_z + c = 0` after substituting
/// `w = g`. `z` names the free coordinate on the leaf roster.
pub fn web2_tangency(web: &QuadraticWeb, leaf: &Poly, z: &str) -> Result<bool> {
    let zi = leaf.var_position(z)?;
    let images = [Poly::var_index(leaf.vars().clone(), zi), leaf.clone()];
    let at = |p: &Poly| p.compose(&images);
    let slope = leaf.partial_index(zi);
    let total = &(&(&at(&web.a)? * &(&slope * &slope)) + &(&at(&web.b)? * &slope)) + &at(&web.c)?;
    Ok(total.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_expr;
    use crate::pencil::{pencil_foliation_form, Pencil};
    use crate::segre::complexify;
    use crate::HomogeneousForm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xy(s: &str) -> Poly {
        parse_expr(s, &roster(&["x", "y"])).unwrap()
    }

    fn affine(a: &str, b: &str) -> OneForm {
        OneForm::Affine(AffineForm::new(&[xy(a), xy(b)]).unwrap())
    }

    #[test]
    fn affine_curve_invariance_examples() {
        let r = curve_invariance(&affine("1", "0"), &xy("x - 3")).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::Invariant);
        assert_eq!(r.evidence, TangencyEvidence::Cofactors(vec![xy("0")]));

        let r = curve_invariance(&affine("-y", "x"), &xy("y - 5*x")).unwrap();
        assert_eq!(r.tau, vec![xy("-(y - 5*x)")]);
        assert_eq!(r.evidence, TangencyEvidence::Cofactors(vec![xy("-1")]));

        let r = curve_invariance(&affine("-y", "x"), &xy("x^2 + y^2 - 1")).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::NotInvariant);
        assert_eq!(r.tau, vec![xy("-2*x^2 - 2*y^2")]);
        assert_eq!(r.evidence, TangencyEvidence::Residuals(vec![xy("-2")]));

        assert_eq!(curve_invariance(&affine("1", "0"), &xy("0")), Err(Error::Zero("polynomial")));
        assert_eq!(curve_invariance(&affine("1", "0"), &xy("x^2")), Err(Error::NotSquarefree));
        assert!(AffineForm::new(&[xy("0"), xy("0")]).is_err());
    }

    #[test]
    fn projective_invariance_of_pencil_members() {
        let v = roster(&["z0", "z1", "z2"]);
        let f = HomogeneousForm::from_poly(parse_expr("z0^2 - z1*z2", &v).unwrap()).unwrap();
        let g = HomogeneousForm::from_poly(parse_expr("z1^2 + z2^2", &v).unwrap()).unwrap();
        let omega = pencil_foliation_form(&Pencil::new(&f, &g).unwrap()).unwrap();
        let member = parse_expr("3*z0^2 - 3*z1*z2 + 2*z1^2 + 2*z2^2", &v).unwrap();
        let r = curve_invariance(&OneForm::Projective(omega.clone()), &member).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::Invariant);
        let outsider = parse_expr("z0*z1 + z2^2", &v).unwrap();
        let r = curve_invariance(&OneForm::Projective(omega), &outsider).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::NotInvariant);
    }

    #[test]
    fn hypersurface_tangency_examples() {
        let zw = roster(&["z1", "z2", "w1", "w2"]);
        let pairs = [("z1", "w1"), ("z2", "w2")];
        let z = roster(&["z1", "z2"]);
        let dz2 = AffineForm::new(&[Poly::zero(z.clone()), Poly::one(z.clone())]).unwrap();
        let opts = SampleOptions {
            samples: 10,
            ..SampleOptions::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);

        let im_z2 = complexify(&parse_expr("-1/2*i*(z2 - w2)", &zw).unwrap(), &pairs).unwrap();
        let r = hypersurface_tangency(&dz2, &im_z2, &opts, &mut rng).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::Invariant);
        assert!(r.tau[0].is_zero());

        let im_z1 = complexify(&parse_expr("-1/2*i*(z1 - w1)", &zw).unwrap(), &pairs).unwrap();
        let r = hypersurface_tangency(&dz2, &im_z1, &opts, &mut rng).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::NotInvariant);
        assert!(matches!(r.evidence, TangencyEvidence::Witness(_)));

        // levels |z1|^2 = 4 |z2|^2 of the pencil (z1, z2) under z2 dz1 - z1 dz2
        let level = complexify(&parse_expr("z1*w1 - 4*z2*w2", &zw).unwrap(), &pairs).unwrap();
        let omega = AffineForm::new(&[parse_expr("z2", &z).unwrap(), parse_expr("-z1", &z).unwrap()]).unwrap();
        let r = hypersurface_tangency(&omega, &level, &opts, &mut rng).unwrap();
        assert_eq!(r.verdict, TangencyVerdict::Invariant);
        assert!(r.is_exact());
    }

    #[test]
    fn brunella_web() {
        let zw = roster(&["z", "w"]);
        let web = QuadraticWeb::new(
            &parse_expr("1", &zw).unwrap(),
            &parse_expr("0", &zw).unwrap(),
            &parse_expr("-4*w", &zw).unwrap(),
        )
        .unwrap();
        let zc = roster(&["z", "c"]);
        assert!(web2_tangency(&web, &parse_expr("(z + c)^2", &zc).unwrap(), "z").unwrap());
        assert!(!web2_tangency(&web, &parse_expr("z + c", &zc).unwrap(), "z").unwrap());
        assert!(!web2_tangency(&web, &parse_expr("c", &zc).unwrap(), "z").unwrap());
    }
}
