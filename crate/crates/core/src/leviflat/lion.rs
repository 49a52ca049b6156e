//! Singular lines of the Levi foliation built from an R-linear map of `C`.
//!
//! For an R-linear, not C-linear `A : C -> C`, the complex line `L_z`
//! through `(0, z)` and `(1, A z)` is `t -> (t, z + t (A - I) z)`. Two lines
//! `L_z`, `L_{z + a w}` (a real) meet exactly when `w` is a real eigenvector
//! of `A - I` with eigenvalue `lambda != 0`, and they meet on the line
//! `z_1 = -1 / lambda`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::gaussian::rat;
use crate::algebra::linalg::kernel;
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::numeric::real_roots::{isolate_real_roots, refine_root, RealRoot};

/// An exact rational or an isolating interval of a real algebraic number.
pub type RealValue = RealRoot;

fn exact(q: BigRational) -> RealValue {
    RealRoot { lo: q.clone(), hi: q }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LionLine {
    /// Nonzero real eigenvalue of `A - I`.
    pub eigenvalue: RealValue,
    /// The singular line is `z_1 = line`, with `line = -1 / eigenvalue`.
    pub line: RealValue,
    /// A real eigenvector `(re, im)`, given when the eigenvalue is rational.
    pub eigenvector: Option<[BigRational; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LionReport {
    pub lines: Vec<LionLine>,
    /// Real kernel direction of `A - I`: lines `L_z`, `L_{z + a w}` along it
    /// are parallel and never meet at finite distance.
    pub parallel: Option<[BigRational; 2]>,
}

/// `A` acts on `z = x + i y` as a real 2x2 matrix on `(x, y)`.
pub fn is_complex_linear(a: &[[BigRational; 2]; 2]) -> bool {
    a[0][0] == a[1][1] && a[0][1] == -a[1][0].clone()
}

fn eigenvector(b: &[[BigRational; 2]; 2], lambda: &BigRational) -> Option<[BigRational; 2]> {
    let m = vec![
        vec![&b[0][0] - lambda, b[0][1].clone()],
        vec![b[1][0].clone(), &b[1][1] - lambda],
    ];
    kernel(&m, 2).into_iter().next().map(|v| [v[0].clone(), v[1].clone()])
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    let r = BigRational::new(n, d);
    (&r * &r == *q).then_some(r)
}

pub fn lion_singular_lines(a: &[[BigRational; 2]; 2]) -> Result<LionReport> {
    if is_complex_linear(a) {
        return Err(Error::ComplexLinear);
    }
    let one = BigRational::one();
    let b = [
        [&a[0][0] - &one, a[0][1].clone()],
        [a[1][0].clone(), &a[1][1] - &one],
    ];
    let tr = &b[0][0] + &b[1][1];
    let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
    let disc = &tr * &tr - rat(4, 1) * &det;
    let mut report = LionReport {
        lines: Vec::new(),
        parallel: None,
    };
    if disc.is_negative() {
        return Ok(report);
    }
    let two = rat(2, 1);
    if let Some(s) = rational_sqrt(&disc) {
        let mut eig = vec![(&tr - &s) / &two, (&tr + &s) / &two];
        eig.dedup();
        for l in eig {
            if l.is_zero() {
                report.parallel = eigenvector(&b, &l);
                continue;
            }
            report.lines.push(LionLine {
                line: exact(-one.clone() / &l),
                eigenvector: eigenvector(&b, &l),
                eigenvalue: exact(l),
            });
        }
        return Ok(report);
    }
    // irrational eigenvalues: both nonzero, since det != 0 here
    let chi = UniPoly::new(vec![det, -tr, one.clone()]);
    let width = rat(1, 1_000_000_000_000);
    for mut root in isolate_real_roots(&chi, &width) {
        while root.lo.signum() != root.hi.signum() || root.lo.is_zero() || root.hi.is_zero() {
            let w = root.width() / rat(1024, 1);
            root = refine_root(&chi, &root, &w);
        }
        let line = RealRoot {
            lo: -one.clone() / &root.lo,
            hi: -one.clone() / &root.hi,
        };
        report.lines.push(LionLine {
            eigenvalue: root,
            line,
            eigenvector: None,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: [[i64; 2]; 2]) -> [[BigRational; 2]; 2] {
        v.map(|r| r.map(|x| rat(x, 1)))
    }

    #[test]
    fn conjugation() {
        let r = lion_singular_lines(&m([[1, 0], [0, -1]])).unwrap();
        assert_eq!(r.lines.len(), 1);
        assert_eq!(r.lines[0].eigenvalue, exact(rat(-2, 1)));
        assert_eq!(r.lines[0].line, exact(rat(1, 2)));
        assert_eq!(r.lines[0].eigenvector, Some([rat(0, 1), rat(1, 1)]));
        assert_eq!(r.parallel, Some([rat(1, 1), rat(0, 1)]));
    }

    #[test]
    fn diagonal_and_rejected() {
        let r = lion_singular_lines(&m([[2, 0], [0, 3]])).unwrap();
        let lines: Vec<_> = r.lines.iter().map(|l| l.line.clone()).collect();
        assert_eq!(lines, vec![exact(rat(-1, 1)), exact(rat(-1, 2))]);
        assert!(r.parallel.is_none());
        assert_eq!(lion_singular_lines(&m([[1, 0], [0, 1]])), Err(Error::ComplexLinear));
        assert_eq!(lion_singular_lines(&m([[2, -3], [3, 2]])), Err(Error::ComplexLinear));
    }

    #[test]
    fn irrational_eigenvalues_are_isolated() {
        // A - I = [[1, 1], [1, 0]] has eigenvalues (1 +- sqrt 5) / 2
        let r = lion_singular_lines(&m([[2, 1], [1, 1]])).unwrap();
        assert_eq!(r.lines.len(), 2);
        for l in &r.lines {
            let lam = l.eigenvalue.mid();
            assert!((&lam * &lam - &lam - rat(1, 1)).abs() < rat(1, 1_000_000));
            let z = l.line.mid();
            assert!((z * lam + rat(1, 1)).abs() < rat(1, 1_000_000));
        }
    }
}
