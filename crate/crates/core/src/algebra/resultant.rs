//! Sylvester resultants and first subresultants.
//!
//! Sign convention: the Sylvester matrix lists the `deg_y g` shifted copies
//! of `f` above the `deg_y f` shifted copies of `g`, coefficients in
//! decreasing powers of `y` from left to right.

use super::division::exact_divide;
use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
pub fn bareiss_det<C: ExactField>(mut m: Vec<Vec<MultiPoly<C>>>, vars: &super::poly::Roster) -> MultiPoly<C> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(vars.clone());
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(vars.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(vars.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if k == 0 {
                    num
                } else {
                    exact_divide(&num, &prev).expect("Bareiss quotient is exact")
                };
            }
            m[i][k] = MultiPoly::zero(vars.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

fn shifted_rows<C: ExactField>(
    coeffs_desc: &[MultiPoly<C>],
    copies: usize,
    width: usize,
    zero: &MultiPoly<C>,
) -> Vec<Vec<MultiPoly<C>>> {
    (0..copies)
        .map(|s| {
            let mut row = vec![zero.clone(); width];
            for (j, c) in coeffs_desc.iter().enumerate() {
                row[s + j] = c.clone();
            }
            row
        })
        .collect()
}

fn desc_coeffs<C: ExactField>(p: &MultiPoly<C>, v: usize) -> Vec<MultiPoly<C>> {
    let mut c = p.coefficients_in(v);
    c.reverse();
    c
}

/// Sylvester matrix of `f`, `g` in variable index `v`.
pub fn sylvester_matrix<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>, v: usize) -> Vec<Vec<MultiPoly<C>>> {
    let m = f.degree_in(v).finite().unwrap_or(0) as usize;
    let n = g.degree_in(v).finite().unwrap_or(0) as usize;
    let zero = MultiPoly::zero(f.vars().clone());
    let mut rows = shifted_rows(&desc_coeffs(f, v), n, m + n, &zero);
    rows.extend(shifted_rows(&desc_coeffs(g, v), m, m + n, &zero));
    rows
}

/// `Res_v(f, g)` as a polynomial on the common roster (free of `v`).
pub fn resultant<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>, var: &str) -> Result<MultiPoly<C>> {
    let (f, g) = f.align(g);
    let v = f.var_position(var)?;
    resultant_index(&f, &g, v)
}

pub fn resultant_index<C: ExactField>(f: &MultiPoly<C>, g: &MultiPoly<C>, v: usize) -> Result<MultiPoly<C>> {
    let (f, g) = f.align(g);
    let df = f.degree_in(v);
    let dg = g.degree_in(v);
    let m = df.finite().unwrap_or(0);
    let n = dg.finite().unwrap_or(0);
    if m == 0 && n == 0 {
        return Err(Error::DegenerateDegrees(f.vars()[v].clone()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(MultiPoly::zero(f.vars().clone()));
    }
    Ok(bareiss_det(sylvester_matrix(&f, &g, v), f.vars()))
}

/// First subresultant coefficients `(s0, s1)` with
/// `S1 = s1 * v + s0`. Requires `deg_v f, deg_v g >= 1` and not both 1.
pub fn first_subresultant<C: ExactField>(
    f: &MultiPoly<C>,
    g: &MultiPoly<C>,
    v: usize,
) -> Result<(MultiPoly<C>, MultiPoly<C>)> {
    let (f, g) = f.align(g);
    let m = f.degree_in(v).finite().unwrap_or(0) as usize;
    let n = g.degree_in(v).finite().unwrap_or(0) as usize;
    if m < 1 || n < 1 || m + n < 3 {
        return Err(Error::DegenerateDegrees(f.vars()[v].clone()));
    }
    let zero = MultiPoly::zero(f.vars().clone());
    let width = m + n - 1;
    let mut rows = shifted_rows(&desc_coeffs(&f, v), n - 1, width, &zero);
    rows.extend(shifted_rows(&desc_coeffs(&g, v), m - 1, width, &zero));
    // columns 0..width-3 hold powers v^{m+n-2}..v^{2}; column width-2 is v^1,
    // column width-1 is v^0.
    let lead = width - 2;
    let pick = |col: usize| -> Vec<Vec<MultiPoly<C>>> {
        rows.iter()
            .map(|r| {
                let mut out: Vec<MultiPoly<C>> = r[..lead].to_vec();
                out.push(r[col].clone());
                out
            })
            .collect()
    };
    let s1 = bareiss_det(pick(width - 2), f.vars());
    let s0 = bareiss_det(pick(width - 1), f.vars());
    Ok((s0, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gcd::gcd;
    use crate::algebra::poly::roster;
    use crate::Poly;

    fn xy() -> (Poly, Poly) {
        let v = roster(&["x", "y"]);
        (Poly::var_index(v.clone(), 0), Poly::var_index(v, 1))
    }

    #[test]
    fn hand_computed_resultants() {
        let (x, y) = xy();
        assert_eq!(resultant(&(&y - &(&x * &x)), &y, "y").unwrap(), &x * &x);
        let cusp = &(&y * &y) - &x.pow(3);
        assert_eq!(resultant(&cusp, &y, "y").unwrap(), -x.pow(3));
    }

    #[test]
    fn common_factor_gives_zero() {
        let (x, y) = xy();
        let f = &(&y * &y) + &x;
        let h = &y - &(&x * &x);
        assert!(resultant(&f, &(&f * &h), "y").unwrap().is_zero());
    }

    #[test]
    fn degenerate_degrees_rejected() {
        let (x, _) = xy();
        assert_eq!(resultant(&x, &(&x * &x), "y"), Err(Error::DegenerateDegrees("y".into())));
    }

    #[test]
    fn first_subresultant_is_gcd_when_linear() {
        // f, g share exactly the linear factor y - x
        let (x, y) = xy();
        let one = Poly::one(x.vars().clone());
        let l = &y - &x;
        let f = &l * &(&y + &one);
        let g = &l * &(&(&y * &y) + &x);
        let (s0, s1) = first_subresultant(&f, &g, 1).unwrap();
        let s = &(&s1 * &y) + &s0;
        assert!(!s.is_zero());
        assert_eq!(gcd(&s, &l), crate::algebra::gcd::normalize(&l));
        assert!(crate::algebra::division::divides(&l, &s));
    }
}
