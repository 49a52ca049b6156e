//! Complexification of real defining functions and their Segre varieties.
//!
//! A real polynomial `phi(z, conj z)` on `C^n` is stored as its
//! complexification `phi_C(z, w)`, a polynomial on the roster
//! `(z_1..z_n, w_1..w_n)` in which `w` stands for `conj z`. Reality is the
//! statement that `phi_C` is a fixed point of
//! [`conjugate_swap`](crate::algebra::conjugate::conjugate_swap).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::conjugate::conjugate_swap;
use crate::algebra::gaussian::{imag_unit, rat};
use crate::algebra::gcd::normalize;
use crate::algebra::poly::{roster, Monomial};
use crate::error::{Error, Result};
use crate::numeric::ball::Ball;
use crate::{ExactComplex, Poly, Roster};

/// Evidence that `phi_C` is real: every coefficient was compared with its
/// mirror under the `z <-> w` swap.
#[derive(Clone, Debug, PartialEq)]
pub struct RealityCertificate {
    /// Number of terms of `phi_C` checked against their mirror.
    pub terms_checked: usize,
    /// Number of terms lying on the diagonal (`z` and `w` exponents equal),
    /// whose coefficients were checked to be real.
    pub diagonal_terms: usize,
}

/// A real hypersurface `{phi = 0}` of `C^n` in complexified form.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexifiedHypersurface {
    phi_c: Poly,
    n: usize,
    real_vars: Vec<(String, String)>,
    certificate: RealityCertificate,
}

fn reality_check(phi_c: &Poly) -> Result<RealityCertificate> {
    let n = phi_c.nvars() / 2;
    let mirror = conjugate_swap(phi_c)?;
    let mut diagonal_terms = 0;
    for (m, c) in phi_c.terms() {
        let e = m.exps();
        let swapped: Vec<u32> = e[n..].iter().chain(&e[..n]).copied().collect();
        if mirror.coeff(e) != *c {
            let (z_exps, w_exps) = (e[..n].to_vec(), e[n..].to_vec());
            return Err(Error::RealityViolation { z_exps, w_exps });
        }
        if swapped == e {
            diagonal_terms += 1;
        }
    }
    Ok(RealityCertificate {
        terms_checked: phi_c.num_terms(),
        diagonal_terms,
    })
}

/// Default names for the real and imaginary parts of `z`.
fn real_names(z: &str) -> (String, String) {
    (format!("re_{z}"), format!("im_{z}"))
}

/// Complexifies `phi`, given on a roster containing each `z_k` and its
/// conjugate `zbar_k`, listed as `(z_k, zbar_k)` in `pairs`. The conjugate
/// names become the `w` block of the complexified roster.
pub fn complexify(phi: &Poly, pairs: &[(&str, &str)]) -> Result<ComplexifiedHypersurface> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("at least one conjugate pair is required".into()));
    }
    let names: Vec<&str> = pairs.iter().map(|p| p.0).chain(pairs.iter().map(|p| p.1)).collect();
    let mut seen = names.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != names.len() {
        return Err(Error::InvalidInput("conjugate pairs repeat a variable".into()));
    }
    let vars = roster(&names);
    let phi_c = phi.with_vars(&vars)?;
    let certificate = reality_check(&phi_c)?;
    let real_vars = pairs.iter().map(|p| real_names(p.0)).collect();
    Ok(ComplexifiedHypersurface {
        phi_c,
        n: pairs.len(),
        real_vars,
        certificate,
    })
}

/// Complexifies a defining function written in real coordinates. Each entry
/// `(x, y)` of `real_pairs` declares `z_k = x + i y`; `z_names` and `w_names`
/// name the holomorphic and antiholomorphic complex variables.
pub fn complexify_real(
    phi: &Poly,
    real_pairs: &[(&str, &str)],
    z_names: &[&str],
    w_names: &[&str],
) -> Result<ComplexifiedHypersurface> {
    let n = real_pairs.len();
    if n == 0 || z_names.len() != n || w_names.len() != n {
        return Err(Error::InvalidInput(
            "real pairs, z names and w names must have one entry per complex coordinate".into(),
        ));
    }
    let zw: Vec<&str> = z_names.iter().chain(w_names).copied().collect();
    let target = roster(&zw);
    let var = |i: usize| Poly::var_index(target.clone(), i);
    let half = rat(1, 2).into();
    let minus_half_i = imag_unit() * ExactComplex::from(rat(-1, 2));
    let mut images = Vec::with_capacity(phi.nvars());
    for v in phi.vars().iter() {
        let image = real_pairs.iter().enumerate().find_map(|(k, (x, y))| {
            if v == x {
                Some((&var(k) + &var(n + k)).scale(&half))
            } else if v == y {
                Some((&var(k) - &var(n + k)).scale(&minus_half_i))
            } else {
                None
            }
        });
        match image {
            Some(p) => images.push(p),
            None if !phi.uses_var(phi.var_position(v)?) => images.push(Poly::zero(target.clone())),
            None => return Err(Error::UnknownVariable(v.clone())),
        }
    }
    let phi_c = phi.compose(&images)?;
    let certificate = reality_check(&phi_c)?;
    Ok(ComplexifiedHypersurface {
        phi_c,
        n,
        real_vars: real_pairs.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        certificate,
    })
}

impl ComplexifiedHypersurface {
    /// `phi_C(z, w)` on the roster `(z, w)`.
    pub fn phi_c(&self) -> &Poly {
        &self.phi_c
    }

    /// Complex dimension of the ambient space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Roster {
        self.phi_c.vars()
    }

    /// The `z` block of the roster.
    pub fn z_roster(&self) -> Roster {
        roster(&self.vars()[..self.n])
    }

    /// The `w` block of the roster.
    pub fn w_roster(&self) -> Roster {
        roster(&self.vars()[self.n..])
    }

    pub fn certificate(&self) -> &RealityCertificate {
        &self.certificate
    }

    /// Names `(x_k, y_k)` of the real coordinates `z_k = x_k + i y_k`.
    pub fn real_vars(&self) -> &[(String, String)] {
        &self.real_vars
    }

    /// `phi` written in the real coordinates `(x_1, y_1, .., x_n, y_n)`.
    /// Its coefficients are real.
    pub fn real_form(&self) -> Poly {
        let names: Vec<&str> = self.real_vars.iter().flat_map(|(x, y)| [x.as_str(), y.as_str()]).collect();
        let target = roster(&names);
        let var = |i: usize| Poly::var_index(target.clone(), i);
        let i_unit = Poly::constant(target.clone(), imag_unit());
        let z: Vec<Poly> = (0..self.n).map(|k| &var(2 * k) + &(&i_unit * &var(2 * k + 1))).collect();
        let w: Vec<Poly> = (0..self.n).map(|k| &var(2 * k) - &(&i_unit * &var(2 * k + 1))).collect();
        let images: Vec<Poly> = z.into_iter().chain(w).collect();
        self.phi_c.compose(&images).expect("one image per variable")
    }

    /// Lifts a polynomial in the `z` variables (by name) onto the `(z, w)`
    /// roster.
    pub fn lift_holomorphic(&self, p: &Poly) -> Result<Poly> {
        p.with_vars(self.vars())
    }

    /// `phi_C(z, w)` evaluated exactly at `w = conj(q)`, leaving `z` free.
    fn at_conjugate(&self, q: &[ExactComplex]) -> Result<Poly> {
        if q.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: q.len(),
            });
        }
        let z = self.z_roster();
        let images: Vec<Poly> = (0..self.n)
            .map(|k| Poly::var_index(z.clone(), k))
            .chain(q.iter().map(|c| Poly::constant(z.clone(), c.conj())))
            .collect();
        self.phi_c.compose(&images)
    }

    /// `phi_C(p, conj q)`.
    pub fn pairing(&self, p: &[ExactComplex], q: &[ExactComplex]) -> Result<ExactComplex> {
        let point: Vec<ExactComplex> = p.iter().cloned().chain(q.iter().map(|c| c.conj())).collect();
        self.phi_c.eval(&point)
    }

    /// `phi(q, conj q)`, real for a real hypersurface.
    pub fn value_at(&self, q: &[ExactComplex]) -> Result<ExactComplex> {
        self.pairing(q, q)
    }
}

/// The Segre variety `{z : phi_C(z, conj q) = 0}` of a base point `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegreVariety {
    pub base: Vec<ExactComplex>,
    /// Defining polynomial on the `z` roster.
    pub poly: Poly,
    /// True when the defining polynomial vanishes identically.
    pub degenerate: bool,
}

pub fn segre_variety(h: &ComplexifiedHypersurface, q: &[ExactComplex]) -> Result<SegreVariety> {
    let poly = h.at_conjugate(q)?;
    Ok(SegreVariety {
        base: q.to_vec(),
        degenerate: poly.is_zero(),
        poly,
    })
}

pub fn is_segre_degenerate(h: &ComplexifiedHypersurface, q: &[ExactComplex]) -> Result<bool> {
    Ok(segre_variety(h, q)?.degenerate)
}

/// Coefficients of `phi_C` with respect to the `z` monomials, as
/// polynomials on the `w` roster. Their common zeros `w` are exactly the
/// conjugates of the Segre-degenerate points. Each equation is normalized,
/// duplicates are removed, and the list is ordered by `z` monomial.
pub fn degenerate_locus_system(h: &ComplexifiedHypersurface) -> Vec<Poly> {
    let n = h.n;
    let w = h.w_roster();
    let mut by_z: BTreeMap<Monomial, Vec<(Monomial, ExactComplex)>> = BTreeMap::new();
    for (m, c) in h.phi_c.terms() {
        let e = m.exps();
        by_z.entry(Monomial::new(e[..n].to_vec()))
            .or_default()
            .push((Monomial::new(e[n..].to_vec()), c.clone()));
    }
    let mut out: Vec<Poly> = Vec::new();
    for terms in by_z.into_values() {
        let p = normalize(&Poly::from_terms(w.clone(), terms));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Whether `q` solves the system returned by [`degenerate_locus_system`].
pub fn satisfies_degenerate_system(system: &[Poly], q: &[ExactComplex]) -> Result<bool> {
    let w: Vec<ExactComplex> = q.iter().map(|c| c.conj()).collect();
    for p in system {
        if !p.eval(&w)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runtime self-check of Segre symmetry at exact points:
/// `q in Sigma_p <=> p in Sigma_q`.
pub fn segre_symmetry_check(h: &ComplexifiedHypersurface, p: &[ExactComplex], q: &[ExactComplex]) -> Result<bool> {
    let q_in_p = h.pairing(q, p)?.is_zero();
    let p_in_q = h.pairing(p, q)?.is_zero();
    Ok(q_in_p == p_in_q)
}

/// Membership of `q` in `Sigma_p` for points known only as balls: `Some(true)`
/// when `|phi_C(q, conj p)| <= tol` is certified, `Some(false)` when it is
/// certainly above `tol`, `None` when the enclosure straddles `tol`.
pub fn segre_membership_ball(
    h: &ComplexifiedHypersurface,
    q: &[Ball],
    p: &[Ball],
    tol: &num_rational::BigRational,
) -> Result<Option<bool>> {
    let point: Vec<Ball> = q.iter().cloned().chain(p.iter().map(conj_ball)).collect();
    let v = h.phi_c.map_coeffs(Ball::exact).eval(&point)?;
    Ok(crate::numeric::ball::compare_abs(&v, tol))
}

/// Segre symmetry at ball points; `None` when either membership is
/// undecided at the given tolerance.
pub fn segre_symmetry_check_ball(
    h: &ComplexifiedHypersurface,
    p: &[Ball],
    q: &[Ball],
    tol: &num_rational::BigRational,
) -> Result<Option<bool>> {
    let a = segre_membership_ball(h, q, p, tol)?;
    let b = segre_membership_ball(h, p, q, tol)?;
    Ok(a.zip(b).map(|(a, b)| a == b))
}

fn conj_ball(b: &Ball) -> Ball {
    Ball {
        im: -b.im.clone(),
        ..b.clone()
    }
}

/// `true` iff `phi_C` does not involve `w` at all; then either every point
/// is Segre-degenerate (`phi = 0`) or none is.
pub fn is_antiholomorphically_trivial(h: &ComplexifiedHypersurface) -> bool {
    (h.n..2 * h.n).all(|i| !h.phi_c.uses_var(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::text::parse_expr;

    fn zw() -> Roster {
        roster(&["z1", "z2", "w1", "w2"])
    }

    fn lebl() -> ComplexifiedHypersurface {
        let phi = parse_expr("-i*(z1*w2 - w1*z2)", &zw()).unwrap();
        complexify(&phi, &[("z1", "w1"), ("z2", "w2")]).unwrap()
    }

    #[test]
    fn complexify_examples() {
        let v = roster(&["z1", "w1"]);
        let sphere = complexify(&parse_expr("z1*w1 - 1", &v).unwrap(), &[("z1", "w1")]).unwrap();
        assert_eq!(sphere.certificate().terms_checked, 2);
        assert_eq!(sphere.certificate().diagonal_terms, 2);
        let bad = complexify(&parse_expr("z1", &v).unwrap(), &[("z1", "w1")]);
        assert_eq!(
            bad,
            Err(Error::RealityViolation {
                z_exps: vec![1],
                w_exps: vec![0]
            })
        );
        assert_eq!(lebl().certificate().diagonal_terms, 0);
    }

    #[test]
    fn real_coordinates_round_trip() {
        let v = roster(&["x", "y", "s", "t"]);
        let phi = parse_expr("t^2 - 4*(y^2 + s)*y^2", &v).unwrap();
        let h = complexify_real(&phi, &[("x", "y"), ("s", "t")], &["z1", "z2"], &["w1", "w2"]).unwrap();
        assert_eq!(h.real_form(), phi.with_vars(&roster(&["x", "y", "s", "t"])).unwrap());
    }

    #[test]
    fn segre_examples() {
        let v = roster(&["z1", "w1"]);
        let h = complexify(&parse_expr("z1*w1 - 1", &v).unwrap(), &[("z1", "w1")]).unwrap();
        let s = segre_variety(&h, &[gi(1, 0)]).unwrap();
        assert_eq!(s.poly, parse_expr("z1 - 1", &h.z_roster()).unwrap());

        let l = lebl();
        let s = segre_variety(&l, &[gi(1, 0), gi(1, 0)]).unwrap();
        assert_eq!(s.poly, parse_expr("-i*(z1 - z2)", &l.z_roster()).unwrap());
        assert!(!s.degenerate);
        assert!(is_segre_degenerate(&l, &[gi(0, 0), gi(0, 0)]).unwrap());
    }

    #[test]
    fn lebl_degenerate_system() {
        let l = lebl();
        let sys = degenerate_locus_system(&l);
        let w = l.w_roster();
        let mut want = vec![Poly::var_index(w.clone(), 0), Poly::var_index(w, 1)];
        let mut got = sys.clone();
        got.sort_by_key(|p| p.to_string());
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
        assert!(satisfies_degenerate_system(&sys, &[gi(0, 0), gi(0, 0)]).unwrap());
        assert!(!satisfies_degenerate_system(&sys, &[gi(0, 1), gi(0, 0)]).unwrap());
    }

    #[test]
    fn symmetry_examples() {
        let l = lebl();
        let (p, q) = ([gi(1, 0), gi(1, 0)], [gi(2, 0), gi(2, 0)]);
        assert!(l.pairing(&q, &p).unwrap().is_zero());
        assert!(segre_symmetry_check(&l, &p, &q).unwrap());
        let s = complexify(
            &parse_expr("z1*w1 + z2*w2 - 1", &zw()).unwrap(),
            &[("z1", "w1"), ("z2", "w2")],
        )
        .unwrap();
        let (p, q) = ([gi(1, 0), gi(0, 0)], [gi(0, 0), gi(1, 0)]);
        assert!(!s.pairing(&q, &p).unwrap().is_zero());
        assert!(segre_symmetry_check(&s, &p, &q).unwrap());
    }
}
