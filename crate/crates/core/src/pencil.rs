//! Pencils of plane curves: membership by exact linear algebra, pencil
//! detection in finite families, branch-level intersection profiles, and
//! the foliation `G dF - F dG` of the rational first integral `F / G`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::division::exact_divide;
use crate::algebra::gcd::{gcd, gcd_many, is_squarefree};
use crate::algebra::homogeneous::HomogeneousForm;
use crate::algebra::linalg::{rank, row_relations};
use crate::algebra::poly::Monomial;
use crate::curves::intersect::{ball_branch_order, branch_orders_at, intersection_points, IntersectionSet};
use crate::curves::point::PlanePoint;
use crate::curves::puiseux::BranchOrder;
use crate::error::{Error, Result};
use crate::{ExactComplex, Poly, Roster};

/// Brings polynomials onto one common roster.
pub fn common_roster(polys: &[&Poly]) -> Vec<Poly> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let mut acc = (*first).clone();
    for p in &polys[1..] {
        acc = acc.align(p).0;
    }
    polys
        .iter()
        .map(|p| p.with_vars(acc.vars()).expect("union roster"))
        .collect()
}

/// Rows of coefficients over the union of the monomial supports.
fn coefficient_rows(polys: &[Poly]) -> Vec<Vec<ExactComplex>> {
    let mut support: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let k = support.len();
            support.entry(m.clone()).or_insert(k);
        }
    }
    polys
        .iter()
        .map(|p| {
            let mut row = vec![ExactComplex::zero(); support.len()];
            for (m, c) in p.terms() {
                row[support[m]] = c.clone();
            }
            row
        })
        .collect()
}

/// Scales a projective pair so that its first nonzero entry is one.
fn normalize_pair(a: ExactComplex, b: ExactComplex) -> [ExactComplex; 2] {
    if !a.is_zero() {
        let s = ExactComplex::one() / a.clone();
        [ExactComplex::one(), b * s]
    } else {
        let s = ExactComplex::one() / b.clone();
        [a, b * s]
    }
}

/// The linear family `alpha F + beta G` of two independent forms of one
/// degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    f: HomogeneousForm,
    g: HomogeneousForm,
}

impl Pencil {
    pub fn new(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                expected: f.degree(),
                found: g.degree(),
            });
        }
        let (fp, gp) = f.poly().align(g.poly());
        if rank(&coefficient_rows(&[fp.clone(), gp.clone()])) < 2 {
            return Err(Error::ProportionalGenerators);
        }
        Ok(Pencil {
            f: HomogeneousForm::new(fp, f.degree())?,
            g: HomogeneousForm::new(gp, g.degree())?,
        })
    }

    pub fn f(&self) -> &HomogeneousForm {
        &self.f
    }

    pub fn g(&self) -> &HomogeneousForm {
        &self.g
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn vars(&self) -> &Roster {
        self.f.vars()
    }

    /// `alpha F + beta G`.
    pub fn member(&self, alpha: &ExactComplex, beta: &ExactComplex) -> HomogeneousForm {
        let p = &self.f.poly().scale(alpha) + &self.g.poly().scale(beta);
        HomogeneousForm::new(p, self.degree()).expect("same degree")
    }

    /// The same pencil in its reduced echelon basis: both generators are
    /// monic at their leading monomials and each leading monomial is absent
    /// from the other generator. Equal spans give equal canonical pencils.
    pub fn canonical(&self) -> Pencil {
        let monic = |p: &Poly| {
            let lc = p.leading_coeff();
            p.scale(&(ExactComplex::one() / lc))
        };
        let lead = |p: &Poly| p.leading_term().expect("nonzero generator").0.exps().to_vec();
        let f = monic(self.f.poly());
        let lf = lead(&f);
        let g = monic(&(self.g.poly() - &f.scale(&self.g.poly().coeff(&lf))));
        let lg = lead(&g);
        let f = &f - &g.scale(&f.coeff(&lg));
        let (f, g) = if lf > lg { (f, g) } else { (g, f) };
        let wrap = |p: Poly| HomogeneousForm::new(p, self.degree()).expect("same degree");
        Pencil { f: wrap(f), g: wrap(g) }
    }

    /// The rational first integral `F / G` as text.
    pub fn first_integral(&self) -> String {
        format!("({}) / ({})", self.f.poly(), self.g.poly())
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    /// `H = alpha F + beta G` with `[alpha : beta]` normalized.
    Member([ExactComplex; 2]),
    NotInPencil,
}

/// Whether `H` lies in the pencil, by a rank test on the coefficient rows
/// of `F`, `G`, `H`.
pub fn pencil_membership(h: &HomogeneousForm, pencil: &Pencil) -> Result<Membership> {
    if h.is_zero() {
        return Err(Error::Zero("form"));
    }
    if h.degree() != pencil.degree() {
        return Err(Error::DegreeMismatch {
            expected: pencil.degree(),
            found: h.degree(),
        });
    }
    let polys = common_roster(&[pencil.f.poly(), pencil.g.poly(), h.poly()]);
    let rows = coefficient_rows(&polys);
    // a relation a F + b G + c H = 0 has c != 0 since F, G are independent
    match row_relations(&rows).first() {
        None => Ok(Membership::NotInPencil),
        Some(rel) => {
            let c = rel[2].clone();
            Ok(Membership::Member(normalize_pair(-(rel[0].clone() / c.clone()), -(rel[1].clone() / c))))
        }
    }
}

/// A pencil spanning a family, or a witness that none exists.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyPencil {
    Pencil {
        pencil: Pencil,
        /// Indices of the two generating members.
        generators: [usize; 2],
        /// Normalized `[alpha : beta]` of every member, in input order.
        coords: Vec<[ExactComplex; 2]>,
    },
    /// Three members with linearly independent coefficient rows.
    NoPencil { witness: [usize; 3] },
}

/// Detects a pencil containing every member of `family`.
///
/// The generators are the first two independent members in input order
/// (the first two members whenever they are not proportional). A family of
/// rank at least three yields the lexicographically first independent
/// triple chosen greedily as its witness.
pub fn pencil_from_family(family: &[HomogeneousForm]) -> Result<FamilyPencil> {
    if family.len() < 2 {
        return Err(Error::RankTooSmall(family.len().min(1)));
    }
    let d = family[0].degree();
    if let Some(h) = family.iter().find(|h| h.degree() != d) {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: h.degree(),
        });
    }
    let refs: Vec<&Poly> = family.iter().map(HomogeneousForm::poly).collect();
    let rows = coefficient_rows(&common_roster(&refs));
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<ExactComplex>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == 3 {
                return Ok(FamilyPencil::NoPencil {
                    witness: [basis[0], basis[1], basis[2]],
                });
            }
        }
    }
    if basis.len() < 2 {
        return Err(Error::RankTooSmall(basis.len()));
    }
    let pencil = Pencil::new(&family[basis[0]], &family[basis[1]])?;
    let coords = family
        .iter()
        .map(|h| match pencil_membership(h, &pencil)? {
            Membership::Member(c) => Ok(c),
            Membership::NotInPencil => Err(Error::OracleDisagreement("rank-two family with a non-member".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyPencil::Pencil {
        pencil,
        generators: [basis[0], basis[1]],
        coords,
    })
}

/// One profile entry: the order of `C` along branch `branch` of `P` at
/// `sing_points[point]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProfileEntry {
    pub point: usize,
    pub branch: usize,
    pub order: BranchOrder,
}

/// Branch-level intersection data of `C` against a reference curve `P`,
/// keyed by (point index, branch index). Only points where both curves
/// vanish carry entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub entries: Vec<ProfileEntry>,
    /// Sum of all orders, present when no branch is contained in `C`.
    pub total: Option<u64>,
}

impl IntersectionProfile {
    pub fn has_contained(&self) -> bool {
        self.entries.iter().any(|e| e.order == BranchOrder::Contained)
    }

    pub fn max_order(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(|e| match e.order {
                BranchOrder::Order(k) => Some(k),
                BranchOrder::Contained => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Indices into `sing_points` paired with the record each one matches,
/// keeping only the first point per record.
fn match_points(set: &IntersectionSet, sing_points: &[PlanePoint]) -> Result<Vec<(usize, usize)>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (i, p) in sing_points.iter().enumerate() {
        if let Some(r) = set.locate(p)? {
            if !seen.contains(&r) {
                seen.push(r);
                out.push((i, r));
            }
        }
    }
    Ok(out)
}

fn orders_at(
    p: &Poly,
    c: &Poly,
    point: &PlanePoint,
    expected: Option<u32>,
    truncation: Option<usize>,
) -> Result<Vec<BranchOrder>> {
    match point {
        PlanePoint::Rational(rp) => branch_orders_at(p, c, rp, expected, truncation),
        PlanePoint::Algebraic(ap) => {
            // the reference curve must be smooth here: one branch
            let expected = expected.ok_or_else(|| {
                Error::FieldEscape("containment at a point outside Q(i) is not measured branchwise".into())
            })?;
            let (k, _) = ball_branch_order(p, c, ap, expected, truncation, false)?;
            Ok(vec![BranchOrder::Order(k)])
        }
    }
}

/// The intersection profile of `C` along the branches of the squarefree
/// reference curve `P` at the given points.
///
/// When `P` and `C` are coprime, the orders must account for the whole
/// Bezout number `deg P * deg C`; a deficit means `sing_points` misses an
/// intersection. When they share a component, the branches of `P` on it
/// are reported as contained and no total is checked.
pub fn intersection_profile<R: Rng>(
    p: &HomogeneousForm,
    c: &HomogeneousForm,
    sing_points: &[PlanePoint],
    rng: &mut R,
    truncation: Option<usize>,
) -> Result<IntersectionProfile> {
    let (pp, cp) = p.poly().align(c.poly());
    if !is_squarefree(&pp) {
        return Err(Error::NotSquarefree);
    }
    let expected_total = (p.degree() as u64) * (c.degree() as u64);
    let h = gcd(&pp, &cp);
    if h.is_constant() {
        let set = intersection_points(p, c, rng)?;
        let mut entries = Vec::new();
        let mut total = 0u64;
        for (i, r) in match_points(&set, sing_points)? {
            let m = set.records[r].multiplicity;
            for (b, order) in orders_at(&pp, &cp, &sing_points[i], Some(m), truncation)?.into_iter().enumerate() {
                if let BranchOrder::Order(k) = order {
                    total += k as u64;
                }
                entries.push(ProfileEntry { point: i, branch: b, order });
            }
        }
        if total != expected_total {
            return Err(Error::IncompletePointSet {
                found: total,
                expected: expected_total,
            });
        }
        return Ok(IntersectionProfile {
            entries,
            total: Some(total),
        });
    }

    // shared component: strip every common factor from C for the points
    // off the common part
    let mut rest = cp.clone();
    loop {
        let k = gcd(&pp, &rest);
        if k.is_constant() {
            break;
        }
        rest = exact_divide(&rest, &k)?;
    }
    let rest_set = if rest.is_constant() {
        None
    } else {
        Some(intersection_points(p, &HomogeneousForm::from_poly(rest.clone())?, rng)?)
    };
    let mut entries = Vec::new();
    let mut done: Vec<PlanePoint> = Vec::new();
    for (i, point) in sing_points.iter().enumerate() {
        if done.contains(point) || !point.lies_on(&pp)? || !point.lies_on(&cp)? {
            continue;
        }
        done.push(point.clone());
        let orders = if point.lies_on(&h)? {
            match point {
                PlanePoint::Rational(_) => orders_at(&pp, &cp, point, None, truncation)?,
                PlanePoint::Algebraic(_) => vec![BranchOrder::Contained],
            }
        } else {
            let set = rest_set.as_ref().expect("point of C off the common part");
            let r = set
                .locate(point)?
                .ok_or_else(|| Error::OracleDisagreement("common point missing from the residual set".into()))?;
            orders_at(&pp, &rest, point, Some(set.records[r].multiplicity), truncation)?
        };
        for (b, order) in orders.into_iter().enumerate() {
            entries.push(ProfileEntry { point: i, branch: b, order });
        }
    }
    Ok(IntersectionProfile { entries, total: None })
}

/// A projective 1-form `sum A_i dz_i` with homogeneous coefficients of one
/// degree, Euler contraction `sum A_i z_i = 0`, and constant coefficient gcd.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationForm {
    coeffs: Vec<Poly>,
    degree: u32,
}

impl FoliationForm {
    /// Validates the coefficients and divides out their gcd.
    pub fn new(coeffs: &[Poly]) -> Result<Self> {
        let refs: Vec<&Poly> = coeffs.iter().collect();
        let coeffs = common_roster(&refs);
        if coeffs.len() != coeffs.first().map_or(0, Poly::nvars) || coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a 1-form needs one coefficient per homogeneous coordinate".into(),
            ));
        }
        let g = gcd_many(coeffs.iter().filter(|c| !c.is_zero())).ok_or(Error::Zero("1-form"))?;
        let coeffs: Vec<Poly> = coeffs.iter().map(|c| exact_divide(c, &g)).collect::<Result<_>>()?;
        let degree = coeffs
            .iter()
            .find_map(|c| c.degree().finite())
            .expect("a nonzero coefficient");
        if coeffs.iter().any(|c| !c.is_zero() && (!c.is_homogeneous() || c.degree().finite() != Some(degree))) {
            return Err(Error::NotHomogeneous);
        }
        let form = FoliationForm { coeffs, degree };
        if !form.euler_contraction().is_zero() {
            return Err(Error::InvalidInput("Euler contraction of the 1-form is not zero".into()));
        }
        Ok(form)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vars(&self) -> &Roster {
        self.coeffs[0].vars()
    }

    /// `sum A_i z_i`.
    pub fn euler_contraction(&self) -> Poly {
        let vars = self.vars().clone();
        self.coeffs
            .iter()
            .enumerate()
            .fold(Poly::zero(vars.clone()), |acc, (i, a)| &acc + &(a * &Poly::var_index(vars.clone(), i)))
    }

    /// Components of `omega ^ d omega` on `dz_i ^ dz_j ^ dz_k`, `i < j < k`.
    pub fn integrability(&self) -> Vec<Poly> {
        let a = &self.coeffs;
        let n = a.len();
        let d = |f: &Poly, i: usize| f.partial_index(i);
        let curl = |i: usize, j: usize| &d(&a[j], i) - &d(&a[i], j);
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t = &(&(&a[i] * &curl(j, k)) + &(&a[j] * &curl(k, i))) + &(&a[k] * &curl(i, j));
                    out.push(t);
                }
            }
        }
        out
    }

    /// Components of `omega ^ dP` on `dz_i ^ dz_j`, `i < j`.
    pub fn wedge_differential(&self, p: &Poly) -> Vec<Poly> {
        let polys = common_roster(&[&self.coeffs[0], p]);
        let p = &polys[1];
        let a: Vec<Poly> = self.coeffs.iter().map(|c| c.with_vars(p.vars()).expect("union roster")).collect();
        two_form(&a, &p.gradient())
    }
}

/// Components of `(sum a_i dz_i) ^ (sum b_i dz_i)` on `dz_i ^ dz_j`, `i < j`.
fn two_form(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.push(&(&a[i] * &b[j]) - &(&a[j] * &b[i]));
        }
    }
    out
}

fn raw_pencil_form(pencil: &Pencil) -> Vec<Poly> {
    let (f, g) = (pencil.f.poly(), pencil.g.poly());
    f.gradient()
        .iter()
        .zip(g.gradient())
        .map(|(fi, gi)| &(g * fi) - &(f * &gi))
        .collect()
}

/// The foliation `G dF - F dG` of the pencil's first integral `F / G`, with
/// the gcd of its coefficients divided out.
pub fn pencil_foliation_form(pencil: &Pencil) -> Result<FoliationForm> {
    FoliationForm::new(&raw_pencil_form(pencil))
}

/// Exact evidence that a pencil member is a level of `F / G`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCertificate {
    /// `h` with `(G dF - F dG) ^ d(alpha F + beta G) = h dF ^ dG`.
    pub cofactor: Poly,
    /// Number of 2-form components checked.
    pub components: usize,
}

/// Verifies `(G dF - F dG) ^ d(alpha F + beta G) = (alpha F + beta G) dF ^ dG`
/// componentwise, recovering the cofactor by exact division.
pub fn verify_level_invariance(pencil: &Pencil, alpha: &ExactComplex, beta: &ExactComplex) -> Result<LevelCertificate> {
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::InvalidInput("[alpha : beta] must not be [0 : 0]".into()));
    }
    let omega = raw_pencil_form(pencil);
    let member = pencil.member(alpha, beta);
    let lhs = two_form(&omega, &member.poly().gradient());
    let rhs = two_form(&pencil.f.poly().gradient(), &pencil.g.poly().gradient());
    let k = rhs
        .iter()
        .position(|r| !r.is_zero())
        .ok_or_else(|| Error::OracleDisagreement("dF ^ dG vanishes identically".into()))?;
    let cofactor = exact_divide(&lhs[k], &rhs[k])
        .map_err(|_| Error::OracleDisagreement("level identity fails: no polynomial cofactor".into()))?;
    for (l, r) in lhs.iter().zip(&rhs) {
        if l != &(&cofactor * r) {
            return Err(Error::OracleDisagreement("level identity fails componentwise".into()));
        }
    }
    if cofactor != *member.poly() {
        return Err(Error::OracleDisagreement("level cofactor differs from the member".into()));
    }
    Ok(LevelCertificate {
        cofactor,
        components: lhs.len(),
    })
}
