//! Intersection theory of plane projective curves.
//!
//! Global intersection points come from eliminating `z2` after a random
//! coordinate change `T`: the resultant `R(xi) = Res_{z2} F'(1, xi, z2),
//! G'(1, xi, z2)` has full degree `deg F * deg G`, every root `xi` of
//! multiplicity `k` carries exactly one intersection point of multiplicity
//! `k` (certified through the first subresultant), and the point is read off
//! the fibre.
//!
//! Local multiplicities at a point are computed along two independent
//! routes and must agree: the order of a resultant after shears that put the
//! point alone on its fibre, and the sum of branch orders over the Puiseux
//! branches of one curve.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use super::point::{AlgebraicPoint, PlanePoint, RationalPoint};
use super::puiseux::{puiseux_branches, solve_regular, Branch, BranchOrder, BASE_BITS};
use super::transform::{describe, Transform};
use crate::algebra::division::exact_divide;
use crate::algebra::gcd::{gcd, gcd_many, squarefree_part};
use crate::algebra::homogeneous::{dehomogenize, homogenize, HomogeneousForm};
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::algebra::resultant::{first_subresultant, resultant_index};
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numeric::ball::Ball;
use crate::numeric::roots::{
    eval_ball, isolate_roots, rational_root_bits, rational_roots_in_disks, RootDisk,
};
use crate::numeric::series::{eval_poly, Series, Valuation};
use crate::{ExactComplex, Poly};

/// Random coordinate changes tried before giving up.
pub const MAX_SHEARS: usize = 64;

/// One intersection point with its exact multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionRecord {
    pub point: PlanePoint,
    pub multiplicity: u32,
}

/// All intersection points of two curves, computed in one coordinate frame.
#[derive(Clone, Debug)]
pub struct IntersectionSet {
    pub f: Poly,
    pub g: Poly,
    pub transform: Arc<Transform>,
    pub records: Vec<IntersectionRecord>,
    /// Coordinate changes drawn (including rejected ones).
    pub attempts: usize,
    /// Pairwise disjoint isolating disks of all distinct roots of the
    /// eliminant, each tagged with its record.
    disks: Vec<(RootDisk, usize)>,
}

/// A local intersection multiplicity with the evidence of both routes.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMultiplicity {
    pub value: u32,
    /// Resultant orders, one per independent shear (or the exact
    /// eliminant multiplicity for points outside `Q(i)`).
    pub resultant_orders: Vec<u32>,
    /// Branch orders summed by the second route.
    pub branch_orders: Vec<u32>,
    /// Whether every branch order was exact (otherwise ball upper bounds
    /// whose sum matched the resultant value).
    pub exact_branches: bool,
    pub truncation: usize,
    /// Shears used by the resultant route, as text matrices.
    pub shears: Vec<Vec<Vec<String>>>,
}

fn three_vars(f: &Poly) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: f.nvars(),
        });
    }
    Ok(())
}

fn uni(p: &Poly, idx: usize) -> UniPoly<ExactComplex> {
    UniPoly::from_multi(p, idx).expect("univariate by construction")
}

fn total_degree(p: &Poly) -> u32 {
    p.degree().finite().unwrap_or(0)
}

fn top_z2(p: &Poly) -> ExactComplex {
    p.coeff(&[0, 0, total_degree(p)])
}

/// Intersection points of the projective curves `F = 0`, `G = 0`.
pub fn intersection_points<R: Rng>(f: &HomogeneousForm, g: &HomogeneousForm, rng: &mut R) -> Result<IntersectionSet> {
    let (fp, gp) = f.poly().align(g.poly());
    three_vars(&fp)?;
    if fp.is_zero() || gp.is_zero() {
        return Err(Error::Zero("curve"));
    }
    if !gcd(&fp, &gp).is_constant() {
        return Err(Error::CommonComponent);
    }
    for attempt in 1..=MAX_SHEARS {
        let t = Transform::random(rng);
        if let Some(mut set) = points_in_frame(&fp, &gp, t)? {
            set.attempts = attempt;
            return Ok(set);
        }
    }
    Err(Error::ShearExhausted(MAX_SHEARS))
}

enum Slot {
    Rational(usize),
    Algebraic(usize),
}

fn points_in_frame(f: &Poly, g: &Poly, t: Transform) -> Result<Option<IntersectionSet>> {
    let (df, dg) = (total_degree(f), total_degree(g));
    let t = Arc::new(t);
    let empty = |t: Arc<Transform>| IntersectionSet {
        f: f.clone(),
        g: g.clone(),
        transform: t,
        records: Vec::new(),
        attempts: 0,
        disks: Vec::new(),
    };
    if df == 0 || dg == 0 {
        return Ok(Some(empty(t)));
    }
    let fp = t.pull_back(f)?;
    let gp = t.pull_back(g)?;
    if top_z2(&fp).is_zero() || top_z2(&gp).is_zero() {
        return Ok(None);
    }
    let z0 = fp.vars()[0].clone();
    let fa = dehomogenize(&fp, &z0)?;
    let ga = dehomogenize(&gp, &z0)?;
    let r = uni(&resultant_index(&fa, &ga, 1)?, 0);
    if r.deg() != (df * dg) as usize {
        // an intersection on the line z0 = 0 of the new frame
        return Ok(None);
    }
    let sq = r.squarefree_part();
    let mut bits = BASE_BITS.max(rational_root_bits(&sq) + 4);
    let mut disks = isolate_roots(&sq, bits)?;
    let mut rational = rational_roots_in_disks(&sq, &disks);
    rational.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
    let mut etas = Vec::new();
    for xi in &rational {
        let h = uni(&fa.specialize(0, xi), 1).gcd(&uni(&ga.specialize(0, xi), 1));
        let h = h.squarefree_part();
        if h.deg() != 1 {
            return Ok(None);
        }
        etas.push(-(h.coeff(0) / h.coeff(1)));
    }
    let mut reduced = Vec::new();
    for (factor, k) in r.squarefree_decomposition() {
        let mut red = factor;
        for xi in &rational {
            if red.eval(xi).is_zero() {
                red = red.exact_div(&UniPoly::new(vec![-xi.clone(), ExactComplex::one()]));
            }
        }
        if red.deg() > 0 {
            reduced.push((Arc::new(red), k));
        }
    }
    let fiber = if reduced.is_empty() {
        None
    } else {
        let (s0, s1) = first_subresultant(&fa, &ga, 1)?;
        let (s0, s1) = (uni(&s0, 0), uni(&s1, 0));
        for (red, _) in &reduced {
            if !red.gcd(&s1).is_constant() {
                return Ok(None);
            }
        }
        Some(Arc::new((s0, s1)))
    };

    // isolate all distinct roots at once and attribute each to a factor
    let (disks, slots) = loop {
        let mut slots = Vec::with_capacity(disks.len());
        for d in &disks {
            if let Some(i) = rational.iter().position(|r| d.ball(0).contains(r)) {
                slots.push(Slot::Rational(i));
                continue;
            }
            let b = d.ball(bits + 8);
            let cands: Vec<usize> = (0..reduced.len())
                .filter(|&i| !eval_ball(&reduced[i].0, &b).excludes_zero())
                .collect();
            if cands.len() != 1 {
                break;
            }
            slots.push(Slot::Algebraic(cands[0]));
        }
        if slots.len() == disks.len() {
            break (disks, slots);
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::FieldEscape("could not attribute eliminant roots to factors".into()));
        }
        disks = isolate_roots(&sq, bits)?;
    };

    let mut set = empty(t.clone());
    for (d, slot) in disks.into_iter().zip(slots) {
        let rec = match slot {
            Slot::Rational(i) => {
                let xi = &rational[i];
                let coords = t.apply_exact(&[ExactComplex::one(), xi.clone(), etas[i].clone()]);
                IntersectionRecord {
                    point: PlanePoint::Rational(RationalPoint::new(coords)?),
                    multiplicity: r.root_multiplicity(xi) as u32,
                }
            }
            Slot::Algebraic(i) => IntersectionRecord {
                point: PlanePoint::Algebraic(AlgebraicPoint {
                    transform: t.clone(),
                    eliminant: reduced[i].0.clone(),
                    fiber: fiber.clone().expect("fiber computed"),
                    disk: d.clone(),
                }),
                multiplicity: reduced[i].1,
            },
        };
        set.disks.push((d, set.records.len()));
        set.records.push(rec);
    }
    Ok(Some(set))
}

impl IntersectionSet {
    pub fn total_multiplicity(&self) -> u64 {
        self.records.iter().map(|r| r.multiplicity as u64).sum()
    }

    pub fn shear(&self) -> Vec<Vec<String>> {
        describe(&self.transform)
    }

    /// Index of the record at the point `p`, or `None` when `p` is not a
    /// common point of the two curves. Points from other computations are
    /// matched exactly for `Q(i)` points; algebraic points are first shown
    /// to lie on both curves exactly and are then identified by the unique
    /// isolating disk their coordinate meets in this frame.
    pub fn locate(&self, p: &PlanePoint) -> Result<Option<usize>> {
        match p {
            PlanePoint::Rational(rp) => Ok(self.records.iter().position(|r| r.point.as_rational() == Some(rp))),
            PlanePoint::Algebraic(ap) => {
                if !ap.lies_on(&self.f)? || !ap.lies_on(&self.g)? {
                    return Ok(None);
                }
                let inv = self.transform.inverse();
                let mut bits = BASE_BITS;
                while bits <= 4096 {
                    let w = inv.apply(&ap.coords(bits)?);
                    if let Some(xi) = w[1].try_div(&w[0]) {
                        let hits: Vec<usize> = self
                            .disks
                            .iter()
                            .filter(|(d, _)| d.ball(0).overlaps(&xi))
                            .map(|(_, i)| *i)
                            .collect();
                        if hits.len() == 1 {
                            return Ok(Some(hits[0]));
                        }
                        if hits.is_empty() {
                            return Err(Error::OracleDisagreement(
                                "a common point misses every eliminant root".into(),
                            ));
                        }
                    }
                    bits *= 2;
                }
                Err(Error::FieldEscape("could not match an algebraic point".into()))
            }
        }
    }

    /// Recomputes the multiplicity of record `idx` by a route independent
    /// of this set's eliminant and checks it against the record.
    pub fn verify<R: Rng>(&self, idx: usize, rng: &mut R, truncation: Option<usize>) -> Result<LocalMultiplicity> {
        let rec = &self.records[idx];
        let lm = match &rec.point {
            PlanePoint::Rational(_) => local_multiplicity(&self.f, &self.g, &rec.point, rng, truncation)?,
            PlanePoint::Algebraic(ap) => {
                let (k, n) = ball_branch_check(&self.f, &self.g, ap, rec.multiplicity, None)?;
                LocalMultiplicity {
                    value: k,
                    resultant_orders: vec![rec.multiplicity],
                    branch_orders: vec![k],
                    exact_branches: false,
                    truncation: n,
                    shears: vec![self.shear()],
                }
            }
        };
        if lm.value != rec.multiplicity {
            return Err(Error::OracleDisagreement(format!(
                "eliminant multiplicity {} against local multiplicity {}",
                rec.multiplicity, lm.value
            )));
        }
        Ok(lm)
    }
}

/// `f(x + a, y + b)` for a two-variable polynomial.
pub fn translate(f: &Poly, a: &ExactComplex, b: &ExactComplex) -> Result<Poly> {
    let v = f.vars().clone();
    let x = &Poly::var_index(v.clone(), 0) + &Poly::constant(v.clone(), a.clone());
    let y = &Poly::var_index(v.clone(), 1) + &Poly::constant(v, b.clone());
    f.compose(&[x, y])
}

fn swap_xy<C: crate::scalar::Scalar>(f: &MultiPoly<C>) -> MultiPoly<C> {
    MultiPoly::from_terms(
        f.vars().clone(),
        f.terms().map(|(m, c)| (Monomial::new(vec![m.exps()[1], m.exps()[0]]), c.clone())),
    )
}

/// Factors `f = s_1 s_2 ...` with every `s_i` squarefree.
fn squarefree_pieces(f: &Poly) -> Result<Vec<Poly>> {
    let mut a = f.clone();
    let mut out = Vec::new();
    while !a.is_constant() {
        let s = squarefree_part(&a);
        a = exact_divide(&a, &s)?;
        out.push(s);
    }
    Ok(out)
}

/// Affine chart of a form at a `Q(i)` point: dehomogenize at the point's
/// unit coordinate and move the point to the origin.
pub fn local_chart(f: &Poly, p: &RationalPoint) -> Result<Poly> {
    let k = p.chart();
    let c = p.coords();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let aff = dehomogenize(f, &f.vars()[k].clone())?;
    translate(&aff, &c[others[0]], &c[others[1]])
}

/// Route (a): order at `0` of `Res_{z2}(F'(1, z1, z2), G'(1, z1, z2))`
/// under a shear `T` with `T e0 = p`, accepted only when the centre of
/// projection is off both curves and `p` is alone on its fibre.
fn resultant_route<R: Rng>(f: &Poly, g: &Poly, p: &RationalPoint, rng: &mut R) -> Result<(u32, Transform)> {
    for _ in 0..MAX_SHEARS {
        let t = Transform::random_through(p.coords(), rng);
        let fp = t.pull_back(f)?;
        let gp = t.pull_back(g)?;
        if top_z2(&fp).is_zero() || top_z2(&gp).is_zero() {
            continue;
        }
        let z0 = fp.vars()[0].clone();
        let fa = dehomogenize(&fp, &z0)?;
        let ga = dehomogenize(&gp, &z0)?;
        let zero = ExactComplex::zero();
        let h = uni(&fa.specialize(0, &zero), 1).gcd(&uni(&ga.specialize(0, &zero), 1));
        if h.coeffs()[..h.deg()].iter().any(|c| !c.is_zero()) {
            continue;
        }
        let r = uni(&resultant_index(&fa, &ga, 1)?, 0);
        let ord = r.valuation().ok_or(Error::CommonComponent)?;
        return Ok((ord as u32, t));
    }
    Err(Error::ShearExhausted(MAX_SHEARS))
}

/// Route (b): the sum of branch orders of `g` along the branches of `f`
/// (both origin-centred). Returns `(orders, all exact)`, or `None` when the
/// truncation or precision did not suffice.
fn branch_route(f: &Poly, g: &Poly, n: usize, bits: u32) -> Result<Option<(Vec<u32>, bool)>> {
    let mut orders = Vec::new();
    let mut exact = true;
    for piece in squarefree_pieces(f)? {
        if !piece.constant_term().is_zero() {
            continue;
        }
        let branches: Vec<Branch> = puiseux_branches(&piece, n)?;
        for b in &branches {
            match b.order_bound(g, n, bits)? {
                Some((k, e)) => {
                    orders.push(k);
                    exact &= e;
                }
                None => return Ok(None),
            }
        }
    }
    Ok(Some((orders, exact)))
}

/// `I_p(F, G)` for forms `F`, `G` in three variables, computed along both
/// routes. A factor shared by `F` and `G` that misses `p` is divided out; a
/// shared factor through `p` is a common component.
pub fn local_multiplicity<R: Rng>(
    f: &Poly,
    g: &Poly,
    p: &PlanePoint,
    rng: &mut R,
    truncation: Option<usize>,
) -> Result<LocalMultiplicity> {
    let (mut f, mut g) = f.align(g);
    three_vars(&f)?;
    let h = gcd(&f, &g);
    if !h.is_constant() {
        if p.lies_on(&h)? {
            return Err(Error::CommonComponent);
        }
        f = exact_divide(&f, &h)?;
        g = exact_divide(&g, &h)?;
    }
    let n0 = truncation.unwrap_or((total_degree(&f) * total_degree(&g)) as usize + 1);
    if !p.lies_on(&f)? || !p.lies_on(&g)? {
        return Ok(LocalMultiplicity {
            value: 0,
            resultant_orders: vec![0, 0],
            branch_orders: Vec::new(),
            exact_branches: true,
            truncation: n0,
            shears: Vec::new(),
        });
    }
    match p {
        PlanePoint::Algebraic(ap) => {
            let set = intersection_points(&HomogeneousForm::from_poly(f.clone())?, &HomogeneousForm::from_poly(g.clone())?, rng)?;
            let idx = set
                .locate(p)?
                .ok_or_else(|| Error::OracleDisagreement("common point absent from the intersection set".into()))?;
            let m = set.records[idx].multiplicity;
            let (k, n) = ball_branch_check(&f, &g, ap, m, truncation)?;
            Ok(LocalMultiplicity {
                value: k,
                resultant_orders: vec![m],
                branch_orders: vec![k],
                exact_branches: false,
                truncation: n,
                shears: vec![set.shear()],
            })
        }
        PlanePoint::Rational(rp) => {
            let (a1, t1) = resultant_route(&f, &g, rp, rng)?;
            let (a2, t2) = resultant_route(&f, &g, rp, rng)?;
            if a1 != a2 {
                return Err(Error::OracleDisagreement(format!("resultant orders {a1} and {a2} under two shears")));
            }
            let fl = local_chart(&f, rp)?;
            let gl = local_chart(&g, rp)?;
            let mut n = n0;
            let mut bits = BASE_BITS;
            loop {
                let attempt = match branch_route(&fl, &gl, n, bits) {
                    Err(Error::FieldEscape(_)) => branch_route(&gl, &fl, n, bits)?,
                    other => other?,
                };
                match attempt {
                    None => {
                        n *= 2;
                        if n > 4 * n0 {
                            return Err(Error::TruncationTooShort(n / 2));
                        }
                    }
                    Some((orders, exact)) => {
                        let sum: u32 = orders.iter().sum();
                        if sum == a1 {
                            return Ok(LocalMultiplicity {
                                value: a1,
                                resultant_orders: vec![a1, a2],
                                branch_orders: orders,
                                exact_branches: exact,
                                truncation: n,
                                shears: vec![describe(&t1), describe(&t2)],
                            });
                        }
                        if exact || sum < a1 {
                            return Err(Error::OracleDisagreement(format!(
                                "resultant order {a1} against branch sum {sum}"
                            )));
                        }
                        bits *= 2;
                        if bits > 4096 {
                            return Err(Error::FieldEscape("branch orders not certified".into()));
                        }
                    }
                }
            }
        }
    }
}

/// `I_p(f, g)` for affine curves in two variables at the point
/// `p = [1 : x : y]` (first coordinate the homogenizing one).
pub fn intersection_multiplicity<R: Rng>(
    f: &Poly,
    g: &Poly,
    p: &PlanePoint,
    rng: &mut R,
    truncation: Option<usize>,
) -> Result<LocalMultiplicity> {
    let (f, g) = f.align(g);
    if f.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.nvars(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::Zero("curve"));
    }
    let name = homogenizing_name(f.vars());
    let fh = homogenize(&f, &name, total_degree(&f))?;
    let gh = homogenize(&g, &name, total_degree(&g))?;
    local_multiplicity(&fh, &gh, p, rng, truncation)
}

fn homogenizing_name(vars: &[String]) -> String {
    let mut name = "h".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// Translates a form's affine chart (in the point's own frame) to the
/// algebraic point, over balls, with the constant term set to its exact
/// value zero.
fn ball_germ(f: &Poly, ap: &AlgebraicPoint, xi: &Ball, eta: &Ball) -> Result<MultiPoly<Ball>> {
    let fp = ap.transform.pull_back(f)?;
    let z0 = fp.vars()[0].clone();
    let fa = dehomogenize(&fp, &z0)?.map_coeffs(Ball::exact);
    let v = fa.vars().clone();
    let x = &MultiPoly::var_index(v.clone(), 0) + &MultiPoly::constant(v.clone(), xi.clone());
    let y = &MultiPoly::var_index(v.clone(), 1) + &MultiPoly::constant(v, eta.clone());
    Ok(fa.compose(&[x, y])?.filter_terms(|m, _| !m.is_one()))
}

/// Certifies the branch order at an algebraic common point: one of the
/// curves must be certainly smooth there, its single branch is expanded
/// over balls, and the order of the other curve along it is bounded above.
/// The bound must reach `expected` (the exact eliminant multiplicity);
/// precision is escalated while it exceeds it, and a bound below it is an
/// oracle disagreement. Returns the certified order and the truncation.
pub fn ball_branch_check(
    f: &Poly,
    g: &Poly,
    ap: &AlgebraicPoint,
    expected: u32,
    truncation: Option<usize>,
) -> Result<(u32, usize)> {
    ball_branch_order(f, g, ap, expected, truncation, true)
}

/// As [`ball_branch_check`] but the branch is always taken on `carrier`.
pub fn ball_branch_order(
    carrier: &Poly,
    other: &Poly,
    ap: &AlgebraicPoint,
    expected: u32,
    truncation: Option<usize>,
    allow_swap: bool,
) -> Result<(u32, usize)> {
    let n = truncation.unwrap_or(0).max(expected as usize + 1).max(2);
    let mut bits = BASE_BITS;
    while bits <= 4096 {
        let (xi, eta) = ap.local(bits)?;
        let fb = ball_germ(carrier, ap, &xi, &eta)?;
        let gb = ball_germ(other, ap, &xi, &eta)?;
        let mut pick = None;
        for (c, o) in [(&fb, &gb), (&gb, &fb)].into_iter().take(if allow_swap { 2 } else { 1 }) {
            let (cx, cy) = (c.coeff(&[1, 0]), c.coeff(&[0, 1]));
            if cy.excludes_zero() {
                pick = Some((c.clone(), false, o.clone()));
                break;
            }
            if cx.excludes_zero() {
                pick = Some((swap_xy(c), true, o.clone()));
                break;
            }
        }
        if let Some((reg, swapped, other_b)) = pick {
            if let Some(ys) = solve_regular(&reg, n) {
                let t = Series::monomial(Ball::one(), 1, n);
                let args = if swapped { [ys, t] } else { [t, ys] };
                match eval_poly(&other_b, &args, Ball::clone).valuation() {
                    Valuation::Exact(k) | Valuation::AtMost(k) => {
                        let k = k as u32;
                        if k == expected {
                            return Ok((k, n));
                        }
                        if k < expected {
                            return Err(Error::OracleDisagreement(format!(
                                "branch order bound {k} below eliminant multiplicity {expected}"
                            )));
                        }
                    }
                    Valuation::Undecided => {}
                }
            }
        }
        bits *= 2;
    }
    Err(Error::FieldEscape(
        "no certified smooth branch at an algebraic point".into(),
    ))
}

/// Whether the projective curve `F = 0` is smooth. In a random frame with
/// `F'(0, 0, 1) != 0`, a singular point is a common zero of `F'` and its
/// three partials, so it forces a common factor of the binary forms
/// `Res_{z2}(F', dF'/dz_i)`; a constant gcd proves smoothness. Two
/// independent frames must agree.
pub fn is_smooth_curve<R: Rng>(f: &HomogeneousForm, rng: &mut R) -> Result<bool> {
    three_vars(f.poly())?;
    match f.degree() {
        0 => return Err(Error::InvalidInput("a constant form defines no curve".into())),
        1 => return Ok(true),
        _ => {}
    }
    for _ in 0..MAX_SHEARS / 4 {
        let a = smooth_in_frame(f.poly(), rng)?;
        let b = smooth_in_frame(f.poly(), rng)?;
        if a == b {
            return Ok(a);
        }
    }
    Err(Error::ShearExhausted(MAX_SHEARS / 4))
}

fn smooth_in_frame<R: Rng>(f: &Poly, rng: &mut R) -> Result<bool> {
    for _ in 0..MAX_SHEARS {
        let t = Transform::random(rng);
        let fp = t.pull_back(f)?;
        if top_z2(&fp).is_zero() {
            continue;
        }
        let grad = fp.gradient();
        let mut res = Vec::with_capacity(3);
        for d in &grad {
            if d.is_zero() {
                continue;
            }
            res.push(resultant_index(&fp, d, 2)?);
        }
        let h = gcd_many(res.iter()).unwrap_or_else(|| Poly::zero(fp.vars().clone()));
        return Ok(h.is_constant() && !h.is_zero());
    }
    Err(Error::ShearExhausted(MAX_SHEARS))
}

/// Orders of `g` along each branch of `f` at the `Q(i)` point `p`, in the
/// canonical branch order of [`puiseux_branches`]; `f` must be squarefree
/// at `p`.
///
/// With `expected = Some(I_p(f, g))` (known from elimination) ball upper
/// bounds are certified by summing to it, and precision is escalated while
/// the sum is too large. Without it every branch must be measured on its
/// own, which also detects branches contained in `g = 0`.
pub fn branch_orders_at(
    f: &Poly,
    g: &Poly,
    p: &RationalPoint,
    expected: Option<u32>,
    truncation: Option<usize>,
) -> Result<Vec<BranchOrder>> {
    let (f, g) = f.align(g);
    let fl = local_chart(&f, p)?;
    let gl = local_chart(&g, p)?;
    if !fl.constant_term().is_zero() {
        return Ok(Vec::new());
    }
    let n0 = truncation.unwrap_or((total_degree(&f) * total_degree(&g)) as usize + 1);
    let branches = puiseux_branches(&fl, n0)?;
    let Some(expected) = expected else {
        return branches.iter().map(|b| b.order(&gl)).collect();
    };
    let mut n = n0;
    let mut bits = BASE_BITS;
    loop {
        let bounds: Option<Vec<(u32, bool)>> = branches
            .iter()
            .map(|b| b.order_bound(&gl, n, bits))
            .collect::<Result<_>>()?;
        let Some(bounds) = bounds else {
            n *= 2;
            if n > 4 * n0 {
                return Err(Error::TruncationTooShort(n / 2));
            }
            continue;
        };
        let sum: u32 = bounds.iter().map(|b| b.0).sum();
        let exact = bounds.iter().all(|b| b.1);
        if sum == expected {
            return Ok(bounds.into_iter().map(|b| BranchOrder::Order(b.0)).collect());
        }
        if exact || sum < expected {
            return Err(Error::OracleDisagreement(format!(
                "branch orders sum to {sum}, elimination gives {expected}"
            )));
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::FieldEscape("branch orders not certified".into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_expr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn form(s: &str) -> HomogeneousForm {
        HomogeneousForm::from_poly(parse_expr(s, &roster(&["z0", "z1", "z2"])).unwrap()).unwrap()
    }

    fn aff(s: &str) -> Poly {
        parse_expr(s, &roster(&["x", "y"])).unwrap()
    }

    fn origin() -> PlanePoint {
        PlanePoint::rational([gi(1, 0), gi(0, 0), gi(0, 0)]).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn two_conics_tangent_twice() {
        let s = intersection_points(&form("z0 z2 - z1^2"), &form("z0 z2 - 2 z1^2"), &mut rng()).unwrap();
        let mut got: Vec<(String, u32)> = s.records.iter().map(|r| (r.point.describe(), r.multiplicity)).collect();
        got.sort();
        assert_eq!(got, vec![("[0 : 0 : 1]".into(), 2), ("[1 : 0 : 0]".into(), 2)]);
    }

    #[test]
    fn line_and_conic() {
        let s = intersection_points(&form("z1"), &form("z0 z2 - z1^2"), &mut rng()).unwrap();
        let m: Vec<u32> = s.records.iter().map(|r| r.multiplicity).collect();
        assert_eq!(m, vec![1, 1]);
        let s = intersection_points(&form("z2"), &form("z0 z2 - z1^2"), &mut rng()).unwrap();
        assert_eq!(s.records.len(), 1);
        assert_eq!(s.records[0].multiplicity, 2);
    }

    #[test]
    fn common_component_rejected() {
        let f = form("z0 z2 - z1^2");
        assert_eq!(intersection_points(&f, &f, &mut rng()).unwrap_err(), Error::CommonComponent);
    }

    #[test]
    fn irrational_points_are_located() {
        let f = form("z1^2 - 2 z0^2");
        let g = form("z2^2 - 3 z0^2 + z1 z2");
        let mut r = rng();
        let s = intersection_points(&f, &g, &mut r).unwrap();
        assert_eq!(s.total_multiplicity(), 4);
        let s2 = intersection_points(&f, &g, &mut r).unwrap();
        let mut seen = vec![false; s2.records.len()];
        for rec in &s.records {
            let j = s2.locate(&rec.point).unwrap().unwrap();
            assert!(!seen[j]);
            seen[j] = true;
        }
        for i in 0..s.records.len() {
            s.verify(i, &mut r, None).unwrap();
        }
    }

    #[test]
    fn local_multiplicities() {
        let mut r = rng();
        let m = intersection_multiplicity(&aff("y"), &aff("y - x^2"), &origin(), &mut r, None).unwrap();
        assert_eq!(m.value, 2);
        let m = intersection_multiplicity(&aff("y^2 - x^3"), &aff("y"), &origin(), &mut r, None).unwrap();
        assert_eq!(m.value, 3);
        assert_eq!(m.branch_orders, vec![3]);
        let m = intersection_multiplicity(&aff("y - x"), &aff("y + 2 x"), &origin(), &mut r, None).unwrap();
        assert_eq!(m.value, 1);
        let e = intersection_multiplicity(&aff("y (x - 1)"), &aff("y (x + 1)"), &origin(), &mut r, None);
        assert_eq!(e.unwrap_err(), Error::CommonComponent);
        // the shared factor x - 1 misses the origin and is divided out
        let m = intersection_multiplicity(&aff("(x - 1) y"), &aff("(x - 1) (y - x^3)"), &origin(), &mut r, None).unwrap();
        assert_eq!(m.value, 3);
    }

    #[test]
    fn irrational_tangent_branches_sum_correctly() {
        let mut r = rng();
        let m = intersection_multiplicity(&aff("y^2 - 2 x^2 + x^3"), &aff("y^2 - 2 x^2"), &origin(), &mut r, None).unwrap();
        assert_eq!(m.value, 6);
        assert!(!m.exact_branches);
    }

    #[test]
    fn smoothness() {
        let mut r = rng();
        assert!(is_smooth_curve(&form("z0^2 + z1^2 + z2^2"), &mut r).unwrap());
        assert!(is_smooth_curve(&form("z0 z2 - z1^2"), &mut r).unwrap());
        assert!(!is_smooth_curve(&form("z2 z1^2 - z0^3 - z0^2 z2"), &mut r).unwrap());
        assert!(!is_smooth_curve(&form("z1 z2"), &mut r).unwrap());
    }
}
