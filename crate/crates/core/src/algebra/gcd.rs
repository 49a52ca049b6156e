//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! Coefficients live in a field, so the numeric content is normalized away
//! at each step by making the leading coefficient one; only the polynomial
//! content in the remaining variables needs a recursive gcd.

use super::division::exact_divide;
use super::poly::{roster, Monomial, MultiPoly};
use super::univariate::UniPoly;
use crate::scalar::ExactField;

/// Scales `p` so its graded-lex leading coefficient is one.
pub fn normalize<C: ExactField>(p: &MultiPoly<C>) -> MultiPoly<C> {
    if p.is_zero() {
        return p.clone();
    }
    let lc = p.leading_coeff();
    p.scale(&(C::one() / lc))
}

/// Normalized greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>) -> MultiPoly<C> {
    let (f, g) = f.align(g);
    if f.is_zero() {
        return normalize(&g);
    }
    if g.is_zero() {
        return normalize(&f);
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars().clone());
    }
    if coprime_on_a_line(&f, &g) {
        return MultiPoly::one(f.vars().clone());
    }
    let v = match (0..f.nvars()).find(|&i| f.uses_var(i) || g.uses_var(i)) {
        Some(v) => v,
        None => return MultiPoly::one(f.vars().clone()),
    };
    let cf = content(&f, v);
    let cg = content(&g, v);
    let c = gcd(&cf, &cg);
    let pf = exact_divide(&f, &cf).expect("content divides");
    let pg = exact_divide(&g, &cg).expect("content divides");
    let h = primitive_gcd(&pf, &pg, v);
    normalize(&(&c * &h))
}

pub fn gcd_many<'a, C: ExactField + 'a, I>(polys: I) -> Option<MultiPoly<C>>
where
    I: IntoIterator<Item = &'a MultiPoly<C>>,
{
    let mut it = polys.into_iter();
    let first = normalize(it.next()?);
    Some(it.fold(first, |acc, p| {
        if acc.is_constant() && !acc.is_zero() {
            acc
        } else {
            gcd(&acc, p)
        }
    }))
}

/// Restriction of `p` to the line `x = a + b t`.
fn on_line<C: ExactField>(p: &MultiPoly<C>, a: &[C], b: &[C]) -> UniPoly<C> {
    let t = roster(&["t"]);
    let images: Vec<MultiPoly<C>> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| MultiPoly::from_terms(t.clone(), [(Monomial::new(vec![0]), ai.clone()), (Monomial::new(vec![1]), bi.clone())]))
        .collect();
    UniPoly::from_multi(&p.compose(&images).expect("one image per variable"), 0).expect("univariate")
}

/// Certifies `gcd(f, g) = 1` through a line `x = a + b t` with
/// `f_top(b) != 0`, where `f_top` is the top-degree part of `f`.
///
/// A common factor `h` has `h_top | f_top`, so `h` keeps its degree on such
/// a line and its restriction divides both restrictions. A constant gcd of
/// the restrictions therefore proves coprimality; `false` means "unknown".
fn coprime_on_a_line<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>) -> bool {
    let (f, g) = if f.degree() >= g.degree() { (f, g) } else { (g, f) };
    let n = f.nvars();
    let top = f.component(f.degree().unwrap());
    for k in 0..3i64 {
        let b: Vec<C> = (0..n as i64).map(|i| C::from_i64((i + 1) * (2 * k + 3) % 7 + 1)).collect();
        if top.eval(&b).expect("arity").is_zero() {
            continue;
        }
        let a: Vec<C> = (0..n as i64).map(|i| C::from_i64((5 * i + 3 * k) % 11 - 5)).collect();
        return on_line(f, &a, &b).gcd(&on_line(g, &a, &b)).is_constant();
    }
    false
}

/// Content with respect to variable `v`: the gcd of the coefficients of
/// `p` viewed as a polynomial in `v`.
pub fn content<C: ExactField>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let coeffs = p.coefficients_in(v);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero())).unwrap_or_else(|| MultiPoly::zero(p.vars().clone()))
}

pub fn primitive_part<C: ExactField>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    if p.is_zero() {
        return p.clone();
    }
    normalize(&exact_divide(p, &content(p, v)).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
pub fn pseudo_remainder<C: ExactField>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let db = b.degree_in(v).unwrap();
    let bc = b.coefficients_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v).finite() {
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let mut e = vec![0; r.nvars()];
        e[v] = dr - db;
        let shifted = b.mul_monomial(&super::poly::Monomial::new(e), &C::one());
        r = &(&lb * &r) - &(&lr * &shifted);
        r = normalize(&r);
    }
    r
}

fn primitive_gcd<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let (mut a, mut b) = if f.degree_in(v) >= g.degree_in(v) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    if b.degree_in(v).finite() == Some(0) {
        return MultiPoly::one(f.vars().clone());
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v).finite() == Some(0) {
            return MultiPoly::one(f.vars().clone());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// `p` is squarefree iff it shares no factor with all of its partials.
pub fn is_squarefree<C: ExactField>(p: &MultiPoly<C>) -> bool {
    if p.is_zero() {
        return false;
    }
    let parts: Vec<MultiPoly<C>> = p.gradient().into_iter().filter(|q| !q.is_zero()).collect();
    let mut g = p.clone();
    for d in &parts {
        g = gcd(&g, d);
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

/// Squarefree part `p / gcd(p, dp/dx_1, ..., dp/dx_n)`, normalized.
pub fn squarefree_part<C: ExactField>(p: &MultiPoly<C>) -> MultiPoly<C> {
    if p.is_constant() {
        return normalize(p);
    }
    let mut g = p.clone();
    for d in p.gradient() {
        if !d.is_zero() {
            g = gcd(&g, &d);
        }
    }
    normalize(&exact_divide(p, &g).expect("gcd divides"))
}
