//! Real root isolation for rational univariate polynomials by Sturm
//! sequences and exact bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::univariate::UniPoly;

/// A real root in the closed interval `[lo, hi]` (a point when `lo == hi`).
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealRoot {
    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn sturm_chain(p: &UniPoly<BigRational>) -> Vec<UniPoly<BigRational>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(chain: &[UniPoly<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(p: &UniPoly<BigRational>) -> BigRational {
    let lc = p.leading_coeff().abs();
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Isolates all real roots of `p` (multiplicities ignored) into disjoint
/// intervals of width at most `width`, in increasing order.
pub fn isolate_real_roots(p: &UniPoly<BigRational>, width: &BigRational) -> Vec<RealRoot> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let chain = sturm_chain(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // invariant: roots counted in (lo, hi]
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine(&sf, lo, hi, width));
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval returned by [`isolate_real_roots`] for the
/// squarefree `p` to width at most `width`.
pub fn refine_root(p: &UniPoly<BigRational>, root: &RealRoot, width: &BigRational) -> RealRoot {
    if root.lo == root.hi || &root.width() <= width {
        return root.clone();
    }
    refine(p, root.lo.clone(), root.hi.clone(), width)
}

/// Shrinks an interval `(lo, hi]` holding exactly one root of the
/// squarefree `p` until its width is at most `width`.
fn refine(p: &UniPoly<BigRational>, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> RealRoot {
    let two = BigRational::from_integer(BigInt::from(2));
    if p.eval(&hi).is_zero() {
        return RealRoot { lo: hi.clone(), hi };
    }
    let mut slo = p.eval(&lo).signum();
    if slo.is_zero() {
        // root sits at lo itself, which is excluded from (lo, hi]: nudge
        let step = (&hi - &lo) / BigRational::from_integer(BigInt::from(1024));
        lo = &lo + step;
        slo = p.eval(&lo).signum();
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let sm = p.eval(&mid).signum();
        if sm.is_zero() {
            return RealRoot { lo: mid.clone(), hi: mid };
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RealRoot { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::rat;

    fn up(c: &[i64]) -> UniPoly<BigRational> {
        UniPoly::new(c.iter().map(|&k| rat(k, 1)).collect())
    }

    #[test]
    fn isolates_sqrt2_and_rational_root() {
        // (x^2 - 2)(2x - 1) = 2x^3 - x^2 - 4x + 2
        let p = up(&[2, -4, -1, 2]);
        let w = rat(1, 1 << 40);
        let roots = isolate_real_roots(&p, &w);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.width() <= w));
        let m = roots[2].mid();
        assert!((&m * &m - rat(2, 1)).abs() < rat(1, 1 << 30));
        assert!(roots[1].lo <= rat(1, 2) && rat(1, 2) <= roots[1].hi);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&up(&[1, 0, 1]), &rat(1, 1000)).is_empty());
    }
}
