//! Newton-Puiseux branches of a plane curve germ at the origin.
//!
//! Branches are produced by the rational (Duval-style) variant of the
//! Newton polygon algorithm: an edge of slope `q/p` with characteristic
//! root `tau` is resolved by the substitution
//! `x = tau^v X^p, y = X^q (tau^u + Y)` with `u p - v q = 1`, which keeps
//! every step inside the coefficient field of `tau`. Roots in `Q(i)` are
//! followed exactly. A simple root outside `Q(i)` ends in a regular step
//! whose coefficients are certified balls; a repeated one is reported as a
//! field escape.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::point::PlanePoint;
use crate::algebra::gaussian::format_complex_short;
use crate::algebra::gcd::{gcd, gcd_many};
use crate::algebra::division::exact_divide;
use crate::algebra::poly::{cpow, Monomial, MultiPoly};
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numeric::ball::{Ball, Certified};
use crate::numeric::roots::{gaussian_rational_roots, isolate_roots, refine_disk, RootDisk};
use crate::numeric::series::{eval_poly, Series, Valuation};
use crate::scalar::Scalar;
use crate::{ExactComplex, Poly};

/// Working precision (bits) for ball branches before any escalation.
pub const BASE_BITS: u32 = 128;

/// Outcome of measuring a curve along a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchOrder {
    /// `ord_t g(x(t), y(t))`.
    Order(u32),
    /// The branch lies on `g = 0` (confirmed by a shared factor).
    Contained,
}

#[derive(Clone, Debug, PartialEq)]
struct Edge {
    p: u32,
    q: u32,
    u: u32,
    v: u32,
    l: u32,
}

#[derive(Clone, Debug, PartialEq)]
enum Recipe {
    /// `x = A(t, Y(t)), y = B(t, Y(t))` where `Y` solves `reg(t, Y) = 0`
    /// (or `Y = 0` when `reg` is absent).
    Exact { chart: [Poly; 2], reg: Option<Poly> },
    /// The last step uses a simple root `tau` of `factor` outside `Q(i)`,
    /// isolated by `disk`; `pre` and `chart` are the exact state before it.
    Simple {
        pre: Poly,
        chart: [Poly; 2],
        edge: Edge,
        factor: UniPoly<ExactComplex>,
        disk: RootDisk,
    },
}

/// A local branch at the origin, with its parametrization recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    /// Point of `P^2` at which the affine chart is centred.
    pub base: Option<PlanePoint>,
    /// The origin-centred curve the branch lies on.
    curve: Poly,
    recipe: Recipe,
    /// Multiplicity of the branch (order of its parametrization).
    pub ramification: u32,
    /// Number of series coefficients computed (`t^0 .. t^{N-1}`).
    pub truncation: usize,
}

/// A branch parametrization truncated modulo `t^N`.
#[derive(Clone, Debug, PartialEq)]
pub enum Parametrization {
    Exact(Series<ExactComplex>, Series<ExactComplex>),
    Approx(Series<Ball>, Series<Ball>),
}

/// Substitutes `x = lam X^p, y = X^q (mu + Y)` and divides by `X^l`.
fn edge_substitute<C: Scalar>(f: &MultiPoly<C>, lam: &C, mu: &C, p: u32, q: u32, l: u32) -> MultiPoly<C> {
    let vars = f.vars().clone();
    let shift = &MultiPoly::constant(vars.clone(), mu.clone()) + &MultiPoly::var_index(vars.clone(), 1);
    let mut powers = vec![MultiPoly::one(vars.clone())];
    let mut out = MultiPoly::zero(vars);
    for (m, c) in f.terms() {
        let (i, j) = (m.exps()[0], m.exps()[1] as usize);
        while powers.len() <= j {
            let next = powers.last().unwrap() * &shift;
            powers.push(next);
        }
        let e = p * i + q * j as u32 - l;
        let coef = c.clone() * cpow(lam, i);
        out = &out + &powers[j].mul_monomial(&Monomial::new(vec![e, 0]), &coef);
    }
    out
}

fn ord_y_at_x0<C: Scalar>(f: &MultiPoly<C>) -> Option<u32> {
    f.terms().filter(|(m, _)| m.exps()[0] == 0).map(|(m, _)| m.exps()[1]).min()
}

fn ord_x_at_y0<C: Scalar>(f: &MultiPoly<C>) -> Option<u32> {
    f.terms().filter(|(m, _)| m.exps()[1] == 0).map(|(m, _)| m.exps()[0]).min()
}

/// Edges of the lower Newton polygon from `(0, j0)` down to `(i0, 0)`,
/// with each edge's characteristic polynomial.
fn newton_edges(f: &Poly) -> Vec<(Edge, UniPoly<ExactComplex>)> {
    let pts: Vec<(u32, u32)> = f.terms().map(|(m, _)| (m.exps()[0], m.exps()[1])).collect();
    let j0 = ord_y_at_x0(f).expect("x does not divide f");
    let mut cur = (0u32, j0);
    let mut out = Vec::new();
    while cur.1 > 0 {
        // next vertex: least run per unit drop, farthest on ties
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in &pts {
            if j >= cur.1 || i < cur.0 {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    let lhs = (i - cur.0) as u64 * (cur.1 - bj) as u64;
                    let rhs = (bi - cur.0) as u64 * (cur.1 - j) as u64;
                    if lhs < rhs || (lhs == rhs && j < bj) {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        let (ib, jb) = best.expect("y does not divide f");
        let di = ib - cur.0;
        let dj = cur.1 - jb;
        let g = di.gcd(&dj);
        let (q, p) = (di / g, dj / g);
        let u = if q == 1 { 1 } else { (1..q).find(|u| (u * p) % q == 1).unwrap() };
        let v = (u * p - 1) / q;
        let l = p * cur.0 + q * cur.1;
        let psi = UniPoly::new(
            (0..=g)
                .map(|k| f.coeff(&[ib - k * q, jb + k * p]))
                .collect(),
        );
        out.push((Edge { p, q, u, v, l }, psi));
        cur = (ib, jb);
    }
    out
}

fn cmp_gaussian(a: &ExactComplex, b: &ExactComplex) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then(a.im.cmp(&b.im))
}

struct Builder {
    out: Vec<(Recipe, u32)>,
}

impl Builder {
    fn ramification(ox: u32, oy: Option<u32>) -> u32 {
        oy.map_or(ox, |o| o.min(ox))
    }

    fn recurse(&mut self, f: Poly, chart: [Poly; 2], ox: u32, oy: Option<u32>) -> Result<()> {
        let vars = f.vars().clone();
        let mut f = f;
        // a factor Y is a branch whose expansion terminates here
        if ord_x_at_y0(&f).is_none() {
            self.out.push((
                Recipe::Exact {
                    chart: chart.clone(),
                    reg: None,
                },
                Self::ramification(ox, oy),
            ));
            f = exact_divide(&f, &MultiPoly::var_index(vars.clone(), 1))?;
        }
        if !f.constant_term().is_zero() {
            return Ok(());
        }
        let j0 = ord_y_at_x0(&f).expect("X does not divide a transformed germ");
        if j0 == 1 {
            self.out.push((
                Recipe::Exact {
                    chart,
                    reg: Some(f),
                },
                Self::ramification(ox, oy),
            ));
            return Ok(());
        }
        for (edge, psi) in newton_edges(&f) {
            let nox = ox * edge.p;
            let noy = Some(oy.map_or(edge.q, |o| o * edge.p));
            let mut rational = gaussian_rational_roots(&psi)?;
            rational.sort_by(cmp_gaussian);
            let mut rest = psi.clone();
            for r in &rational {
                let lin = UniPoly::new(vec![-r.clone(), ExactComplex::one()]);
                while rest.eval(r).is_zero() {
                    rest = rest.exact_div(&lin);
                }
                let lam = cpow(r, edge.v);
                let mu = cpow(r, edge.u);
                let next = edge_substitute(&f, &lam, &mu, edge.p, edge.q, edge.l);
                let nchart = [
                    edge_substitute(&chart[0], &lam, &mu, edge.p, edge.q, 0),
                    edge_substitute(&chart[1], &lam, &mu, edge.p, edge.q, 0),
                ];
                self.recurse(next, nchart, nox, noy)?;
            }
            if rest.deg() == 0 {
                continue;
            }
            for (factor, k) in rest.squarefree_decomposition() {
                if factor.deg() == 0 {
                    continue;
                }
                if k > 1 {
                    return Err(Error::FieldEscape(
                        "repeated characteristic root outside Q(i) in a Newton polygon edge".into(),
                    ));
                }
                let mut disks = isolate_roots(&factor, BASE_BITS)?;
                disks.sort_by(|a, b| cmp_gaussian(&a.center, &b.center));
                for disk in disks {
                    self.out.push((
                        Recipe::Simple {
                            pre: f.clone(),
                            chart: chart.clone(),
                            edge: edge.clone(),
                            factor: factor.clone(),
                            disk,
                        },
                        Self::ramification(nox, noy),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The singular factor test: `f` is locally squarefree at the origin iff
/// `gcd(f, f_x, f_y)` does not vanish there.
pub fn is_locally_squarefree(f: &Poly) -> bool {
    let g = f.gradient();
    let h = gcd_many([f, &g[0], &g[1]]).expect("nonempty");
    !h.constant_term().is_zero()
}

/// All branches at the origin of the curve `f(x, y) = 0`, with series
/// computed modulo `t^max_order`.
pub fn puiseux_branches(f: &Poly, max_order: usize) -> Result<Vec<Branch>> {
    if f.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: f.nvars(),
        });
    }
    if f.is_zero() {
        return Err(Error::Zero("curve"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    if !is_locally_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let vars = f.vars().clone();
    let x = Poly::var_index(vars.clone(), 0);
    let y = Poly::var_index(vars.clone(), 1);
    let zero = Poly::zero(vars);
    let mut b = Builder { out: Vec::new() };
    let mut g = f.clone();
    if ord_y_at_x0(&g).is_none() {
        // the y-axis: x = 0, y = t
        b.out.push((
            Recipe::Exact {
                chart: [zero.clone(), x.clone()],
                reg: None,
            },
            1,
        ));
        g = exact_divide(&g, &x)?;
    }
    if g.constant_term().is_zero() {
        b.recurse(g, [x, y], 1, None)?;
    }
    b.out
        .into_iter()
        .map(|(recipe, ramification)| {
            Ok(Branch {
                base: None,
                curve: f.clone(),
                recipe,
                ramification,
                truncation: max_order.max(1),
            })
        })
        .collect()
}

fn series_inverse<C: Certified>(a: &Series<C>) -> Option<Series<C>> {
    let n = a.order();
    let a0 = a.coeff(0).checked_inv()?;
    let mut b = vec![C::zero(); n];
    if n == 0 {
        return Some(Series::new(b, 0));
    }
    b[0] = a0.clone();
    for k in 1..n {
        let mut s = C::zero();
        for i in 1..=k {
            let ai = a.coeff(i);
            if !ai.is_zero() {
                s = s + ai * b[k - i].clone();
            }
        }
        b[k] = -(s * a0.clone());
    }
    Some(Series::new(b, n))
}

/// Solves `g(X, Y(X)) = 0` with `Y(0) = 0` modulo `X^n` by Newton
/// iteration; requires `g(0, 0) = 0` and `g_Y(0, 0)` certainly nonzero.
pub fn solve_regular<C: Certified>(g: &MultiPoly<C>, n: usize) -> Option<Series<C>> {
    let gy = g.partial_index(1);
    let x = Series::monomial(C::one(), 1, n);
    let mut y: Series<C> = Series::zero(n);
    let mut k = 1usize;
    loop {
        k = (2 * k).min(n.max(1));
        let xs = x.truncate(k);
        let ys = y.truncate(k);
        let r = eval_poly(g, &[xs.clone(), ys.clone()], C::clone);
        let d = eval_poly(&gy, &[xs, ys.clone()], C::clone);
        let corr = r.mul(&series_inverse(&d)?);
        let mut next = ys.sub(&corr).coeffs().to_vec();
        next[0] = C::zero();
        y = Series::new(next, n);
        if k >= n {
            return Some(y);
        }
    }
}

fn chart_series<C: Certified>(chart: &[MultiPoly<C>; 2], reg: Option<&MultiPoly<C>>, n: usize) -> Option<(Series<C>, Series<C>)> {
    let t = Series::monomial(C::one(), 1, n);
    let yt = match reg {
        Some(g) => solve_regular(g, n)?,
        None => Series::zero(n),
    };
    let args = [t, yt];
    Some((eval_poly(&chart[0], &args, C::clone), eval_poly(&chart[1], &args, C::clone)))
}

impl Branch {
    pub fn curve(&self) -> &Poly {
        &self.curve
    }

    /// Whether every coefficient of the parametrization is exact.
    pub fn is_exact(&self) -> bool {
        matches!(self.recipe, Recipe::Exact { .. })
    }

    /// The parametrization modulo `t^n`; ball coefficients use `bits` of
    /// precision for the characteristic root.
    pub fn parametrization(&self, n: usize, bits: u32) -> Result<Parametrization> {
        match &self.recipe {
            Recipe::Exact { chart, reg } => {
                let (x, y) = chart_series(chart, reg.as_ref(), n).expect("exact regular step");
                Ok(Parametrization::Exact(x, y))
            }
            Recipe::Simple {
                pre,
                chart,
                edge,
                factor,
                disk,
            } => {
                let tau = refine_disk(factor, disk, bits)?.ball(bits + 16);
                let lam = tau.powi(edge.v);
                let mu = tau.powi(edge.u);
                let pre_b = pre.map_coeffs(Ball::exact);
                // the constant term is psi(tau) times a unit, exactly zero
                let reg = edge_substitute(&pre_b, &lam, &mu, edge.p, edge.q, edge.l).filter_terms(|m, _| !m.is_one());
                let chart_b = [
                    edge_substitute(&chart[0].map_coeffs(Ball::exact), &lam, &mu, edge.p, edge.q, 0),
                    edge_substitute(&chart[1].map_coeffs(Ball::exact), &lam, &mu, edge.p, edge.q, 0),
                ];
                let (x, y) = chart_series(&chart_b, Some(&reg), n)
                    .ok_or_else(|| Error::FieldEscape("regular step not certified at this precision".into()))?;
                Ok(Parametrization::Approx(x, y))
            }
        }
    }

    /// Valuation of `g` along the branch modulo `t^n`.
    fn valuation(&self, g: &Poly, n: usize, bits: u32) -> Result<Valuation> {
        Ok(match self.parametrization(n, bits)? {
            Parametrization::Exact(x, y) => eval_poly(g, &[x, y], ExactComplex::clone).valuation(),
            Parametrization::Approx(x, y) => eval_poly(g, &[x, y], Ball::exact).valuation(),
        })
    }

    /// Upper bound on `ord_t g(gamma(t))`, exact for exact branches:
    /// `Ok(Some((k, exact)))`, or `Ok(None)` when nothing below the
    /// truncation is certainly nonzero.
    pub fn order_bound(&self, g: &Poly, n: usize, bits: u32) -> Result<Option<(u32, bool)>> {
        if !g.constant_term().is_zero() {
            return Ok(Some((0, true)));
        }
        Ok(match self.valuation(g, n, bits)? {
            Valuation::Exact(k) => Some((k as u32, true)),
            // a branch through the origin meets g (through the origin) with order >= 1
            Valuation::AtMost(1) => Some((1, true)),
            Valuation::AtMost(k) => Some((k as u32, false)),
            Valuation::Undecided => None,
        })
    }

    /// Order of `g` along the branch, or `Contained` when the branch lies on
    /// `g = 0`. The truncation is doubled up to four times its initial
    /// value; containment is only reported once a common factor of `g` and
    /// the curve is shown to carry the branch.
    pub fn order(&self, g: &Poly) -> Result<BranchOrder> {
        let mut n = self.truncation;
        let mut bits = BASE_BITS;
        while n <= 4 * self.truncation {
            match self.order_bound(g, n, bits)? {
                Some((k, true)) => return Ok(BranchOrder::Order(k)),
                Some((_, false)) => {
                    bits *= 2;
                    if bits > 4096 {
                        return Err(Error::FieldEscape("branch order not certified over balls".into()));
                    }
                    continue;
                }
                None => {}
            }
            n *= 2;
        }
        let (f, g) = self.curve.align(g);
        let h = gcd(&f, &g);
        if !h.is_constant() {
            let rest = exact_divide(&f, &h)?;
            let nn = 4 * self.truncation;
            if let Some((_, _)) = self.order_bound(&rest, nn, BASE_BITS)? {
                return Ok(BranchOrder::Contained);
            }
        }
        Err(Error::TruncationTooShort(4 * self.truncation))
    }

    /// Text rendering of the leading coefficients of `x(t)` and `y(t)`.
    pub fn describe(&self, terms: usize) -> Result<(String, String)> {
        let render = |cs: Vec<String>| {
            let parts: Vec<String> = cs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| c != "0")
                .map(|(k, c)| format!("({c}) t^{k}"))
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        Ok(match self.parametrization(terms, BASE_BITS)? {
            Parametrization::Exact(x, y) => (
                render(x.coeffs().iter().map(format_complex_short).collect()),
                render(y.coeffs().iter().map(format_complex_short).collect()),
            ),
            Parametrization::Approx(x, y) => {
                let f = |b: &Ball| {
                    if b.is_zero() {
                        "0".to_string()
                    } else {
                        let z = b.to_c64();
                        format!("~{:.12}{:+.12}i", z.re, z.im)
                    }
                };
                (
                    render(x.coeffs().iter().map(f).collect()),
                    render(y.coeffs().iter().map(f).collect()),
                )
            }
        })
    }
}

/// Order of vanishing of `f` at the origin (lowest total degree).
pub fn origin_order(f: &Poly) -> u32 {
    f.order().finite().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::gi;
    use crate::algebra::poly::roster;
    use crate::algebra::text::parse_expr;

    fn p(s: &str) -> Poly {
        parse_expr(s, &roster(&["x", "y"])).unwrap()
    }

    fn exact(b: &Branch, n: usize) -> (Series<ExactComplex>, Series<ExactComplex>) {
        match b.parametrization(n, BASE_BITS).unwrap() {
            Parametrization::Exact(x, y) => (x, y),
            _ => panic!("expected exact branch"),
        }
    }

    #[test]
    fn cusp_has_one_branch_t2_t3() {
        let f = p("y^2 - x^3");
        let bs = puiseux_branches(&f, 8).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification, 2);
        let (x, y) = exact(&bs[0], 8);
        assert_eq!(x.coeffs()[..4], [gi(0, 0), gi(0, 0), gi(1, 0), gi(0, 0)]);
        assert_eq!(y.coeffs()[..4], [gi(0, 0), gi(0, 0), gi(0, 0), gi(1, 0)]);
    }

    #[test]
    fn node_splits_into_two_lines() {
        let bs = puiseux_branches(&p("y^2 - x^2"), 6).unwrap();
        assert_eq!(bs.len(), 2);
        let ys: Vec<ExactComplex> = bs.iter().map(|b| exact(b, 4).1.coeff(1)).collect();
        assert_eq!(ys, vec![gi(-1, 0), gi(1, 0)]);
        assert!(bs.iter().all(|b| b.ramification == 1));
    }

    #[test]
    fn smooth_parabola() {
        let bs = puiseux_branches(&p("y - x^2"), 6).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification, 1);
        let (x, y) = exact(&bs[0], 6);
        assert_eq!(x.coeff(1), gi(1, 0));
        assert_eq!(y.coeff(2), gi(1, 0));
        assert_eq!(y.coeff(3), gi(0, 0));
    }

    #[test]
    fn irrational_tangents_become_ball_branches() {
        let f = p("y^2 - 2 x^2 + x^3");
        let bs = puiseux_branches(&f, 8).unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| !b.is_exact()));
        let y = p("y");
        for b in &bs {
            assert_eq!(b.order(&y).unwrap(), BranchOrder::Order(1));
        }
        // along either branch, y^2 - 2x^2 restricts to -x^3: order 3,
        // visible over balls only as an upper bound
        let h = p("y^2 - 2 x^2");
        for b in &bs {
            assert_eq!(b.order_bound(&h, 8, BASE_BITS).unwrap(), Some((3, false)));
        }
    }

    #[test]
    fn branch_orders() {
        let cusp = &puiseux_branches(&p("y^2 - x^3"), 8).unwrap()[0];
        assert_eq!(cusp.order(&p("y")).unwrap(), BranchOrder::Order(3));
        let par = &puiseux_branches(&p("y - x^2"), 6).unwrap()[0];
        assert_eq!(par.order(&p("y - x^2")).unwrap(), BranchOrder::Contained);
        let axis = &puiseux_branches(&p("y"), 4).unwrap()[0];
        assert_eq!(axis.order(&p("x")).unwrap(), BranchOrder::Order(1));
    }

    #[test]
    fn rejects_bad_germs() {
        assert_eq!(puiseux_branches(&p("y - 1"), 4), Err(Error::NotThroughOrigin));
        assert_eq!(puiseux_branches(&p("y^2"), 4), Err(Error::NotSquarefree));
        assert_eq!(puiseux_branches(&p("(y - x)^2 (y + 1)"), 4), Err(Error::NotSquarefree));
    }
}
