//! Certified isolation of the complex roots of a squarefree univariate
//! polynomial over the Gaussian rationals.
//!
//! Approximations come from an Aberth iteration (first in `f64`, then in
//! fixed-point big-integer arithmetic). They are certified with Smith's inclusion
//! theorem: for `p` of degree `n` with leading coefficient `a` and pairwise
//! distinct approximations `z_i`, put
//! `W_i = p(z_i) / (a * prod_{j != i} (z_i - z_j))`. Every root lies in the
//! union of the disks `D(z_i, n |W_i|)`, and a union of `k` of these disks
//! that is disjoint from the others holds exactly `k` roots. Pairwise
//! disjoint disks therefore isolate one root each.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use super::ball::{sqrt_upper, Ball};
use crate::algebra::gaussian::{norm_sqr, to_c64};
use crate::algebra::gaussint::{self, integral_primitive, GInt};
use crate::algebra::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::ExactComplex;

/// One isolated root: the disk `D(center, radius)` contains exactly one
/// root of the polynomial it was computed for.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisk {
    pub center: ExactComplex,
    pub radius: BigRational,
}

impl RootDisk {
    pub fn ball(&self, prec: u32) -> Ball {
        Ball {
            re: self.center.re.clone(),
            im: self.center.im.clone(),
            rad: self.radius.clone(),
            prec,
        }
    }

    pub fn overlaps(&self, other: &RootDisk) -> bool {
        self.ball(0).overlaps(&other.ball(0))
    }
}

fn aberth_f64(p: &UniPoly<ExactComplex>) -> Vec<Complex<f64>> {
    let lc = to_c64(&p.leading_coeff());
    let c: Vec<Complex<f64>> = p.coeffs().iter().map(|a| to_c64(a) / lc).collect();
    let n = p.deg();
    // Cauchy bound for the starting circle
    let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let r = bound.min(1e6).max(1e-3) * 0.5;
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex<f64>| -> (Complex<f64>, Complex<f64>) {
        let mut v = Complex::new(0.0, 0.0);
        let mut d = Complex::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Fixed-point complex number: components scaled by `2^w`.
type Fx = Complex<BigInt>;

fn shr(z: &Fx, k: usize) -> Fx {
    Complex::new(&z.re >> k, &z.im >> k)
}

fn shl(z: &Fx, k: usize) -> Fx {
    Complex::new(&z.re << k, &z.im << k)
}

fn fmul(a: &Fx, b: &Fx, w: usize) -> Fx {
    shr(&(a * b), w)
}

fn fdiv(a: &Fx, b: &Fx, w: usize) -> Option<Fx> {
    let n = &b.re * &b.re + &b.im * &b.im;
    if n.is_zero() {
        return None;
    }
    let t = shl(&(a * b.conj()), w);
    Some(Complex::new(&t.re / &n, &t.im / &n))
}

fn feval(c: &[GInt], z: &Fx, w: usize) -> Fx {
    let mut acc = Complex::new(BigInt::zero(), BigInt::zero());
    for a in c.iter().rev() {
        acc = fmul(&acc, z, w) + shl(a, w);
    }
    acc
}

fn fixed_from_f64(x: Complex<f64>, w: usize) -> Fx {
    let m = |t: f64| {
        let t = if t.is_finite() { t } else { 0.0 };
        BigInt::from_f64((t * 2f64.powi(52)).round()).unwrap_or_default()
    };
    let z = Complex::new(m(x.re), m(x.im));
    if w >= 52 {
        shl(&z, w - 52)
    } else {
        shr(&z, 52 - w)
    }
}

fn fixed_to_exact(z: &Fx, w: usize) -> ExactComplex {
    let s = BigInt::one() << w;
    Complex::new(
        BigRational::new(z.re.clone(), s.clone()),
        BigRational::new(z.im.clone(), s),
    )
}

/// Aberth sweeps at fixed-point precision `w` until every correction is
/// below `2^-(w - 8)` or the iteration budget runs out. The evaluations are
/// rounded; they only drive the iteration and are never used to certify.
fn aberth_fixed(c: &[GInt], dc: &[GInt], z: &mut [Fx], w: usize, iters: usize) {
    let n = z.len();
    let one = Complex::new(BigInt::one() << w, BigInt::zero());
    let tiny = BigInt::one() << 8usize;
    for _ in 0..iters {
        let mut done = true;
        for i in 0..n {
            let v = feval(c, &z[i], w);
            if v.is_zero() {
                continue;
            }
            let Some(ratio) = fdiv(&v, &feval(dc, &z[i], w), w) else {
                continue;
            };
            let mut s = Complex::new(BigInt::zero(), BigInt::zero());
            for j in 0..n {
                if j != i {
                    if let Some(q) = fdiv(&one, &(&z[i] - &z[j]), w) {
                        s = s + q;
                    }
                }
            }
            let Some(step) = fdiv(&ratio, &(&one - fmul(&ratio, &s, w)), w) else {
                continue;
            };
            if step.re.magnitude() > tiny.magnitude() || step.im.magnitude() > tiny.magnitude() {
                done = false;
            }
            z[i] = &z[i] - step;
        }
        if done {
            break;
        }
    }
}

/// Exact Smith radii `n |W_i|` (rounded upward) for the fixed-point
/// approximations `z` at scale `2^w`, or `None` if two of them coincide.
fn smith_radii(c: &[GInt], z: &[Fx], w: usize, bits: u32) -> Option<Vec<BigRational>> {
    let n = z.len();
    let lc = c.last().expect("nonconstant");
    let norm = |t: &Fx| &t.re * &t.re + &t.im * &t.im;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // num = p(z_i / 2^w) * 2^(wn), den = lc * prod (z_i - z_j) (scale 2^(w(n-1)))
        let mut num = lc.clone();
        for (k, a) in c.iter().enumerate().rev().skip(1) {
            num = &num * &z[i] + shl(a, w * (n - k));
        }
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                let d = &z[i] - &z[j];
                if d.is_zero() {
                    return None;
                }
                den = &den * &d;
            }
        }
        let w2 = BigRational::new(norm(&num), norm(&den) << (2 * w));
        out.push(sqrt_upper(&w2, bits + 8) * BigRational::from_integer(BigInt::from(n)));
    }
    Some(out)
}

fn disjoint(z: &[ExactComplex], r: &[BigRational]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let s = &r[i] + &r[j];
            if norm_sqr(&(z[i].clone() - z[j].clone())) <= &s * &s {
                return false;
            }
        }
    }
    true
}

/// Isolates every root of the squarefree polynomial `p` in disjoint disks of
/// radius at most `2^-bits` (when the precision budget allows).
pub fn isolate_roots(p: &UniPoly<ExactComplex>, bits: u32) -> Result<Vec<RootDisk>> {
    let n = p.deg();
    if p.is_zero() {
        return Err(Error::Zero("polynomial"));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let root = -(p.coeff(0) / p.coeff(1));
        return Ok(vec![RootDisk {
            center: root,
            radius: BigRational::zero(),
        }]);
    }
    let c = integral_primitive(p.coeffs());
    let dc: Vec<GInt> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a * BigInt::from(k))
        .collect();
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
    let mut w = 64usize;
    let mut z: Vec<Fx> = aberth_f64(p).into_iter().map(|x| fixed_from_f64(x, w)).collect();
    let mut goal = bits as usize + 16;
    for _ in 0..8 {
        // double the working precision up to the goal, letting Newton-like
        // convergence catch up at each level
        loop {
            aberth_fixed(&c, &dc, &mut z, w, if w >= goal { 60 } else { 12 });
            if w >= goal {
                break;
            }
            let next = (2 * w).min(goal);
            z = z.iter().map(|t| shl(t, next - w)).collect();
            w = next;
        }
        if let Some(r) = smith_radii(&c, &z, w, bits) {
            let centers: Vec<ExactComplex> = z.iter().map(|t| fixed_to_exact(t, w)).collect();
            if r.iter().all(|x| x <= &target) && disjoint(&centers, &r) {
                return Ok(centers
                    .into_iter()
                    .zip(r)
                    .map(|(center, radius)| RootDisk { center, radius })
                    .collect());
            }
        }
        // perturb coincident or stuck approximations before retrying
        for (k, zi) in z.iter_mut().enumerate() {
            let eps = BigInt::from(k as i64 + 1) << (w - 20);
            *zi = Complex::new(&zi.re + &eps, &zi.im - &eps);
        }
        goal = goal.max(w) * 2;
    }
    Err(Error::FieldEscape(format!(
        "could not certify the {n} roots of an eliminant within the precision budget"
    )))
}

/// Precision at which [`isolate_roots`] disks of the squarefree `p` are
/// fine enough for [`rational_roots_in_disks`].
pub fn rational_root_bits(p: &UniPoly<ExactComplex>) -> u32 {
    let c = integral_primitive(p.coeffs());
    let lc = c.last().expect("nonzero");
    let n = &lc.re * &lc.re + &lc.im * &lc.im;
    (n.bits() / 2 + 4) as u32
}

/// Exact roots of the squarefree `p` lying in `Q(i)`, read off from a
/// complete set of isolating disks of radius below `2^-rational_root_bits`.
///
/// For the primitive integral form with leading coefficient `a`, `a * root`
/// is a Gaussian integer whenever the root is Gaussian rational, so rounding
/// `a * center` recovers it; every candidate is then tested exactly.
pub fn rational_roots_in_disks(p: &UniPoly<ExactComplex>, disks: &[RootDisk]) -> Vec<ExactComplex> {
    let c = integral_primitive(p.coeffs());
    let lc = gaussint::to_gaussian(&c[c.len() - 1..])[0].clone();
    let mut out = Vec::new();
    for d in disks {
        let w = lc.clone() * d.center.clone();
        let g = Complex::new(
            BigRational::from_integer(w.re.round().to_integer()),
            BigRational::from_integer(w.im.round().to_integer()),
        );
        let cand = g / lc.clone();
        if !out.contains(&cand) && p.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

/// Exact roots of `p` lying in `Q(i)`.
pub fn gaussian_rational_roots(p: &UniPoly<ExactComplex>) -> Result<Vec<ExactComplex>> {
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    let sf = p.squarefree_part();
    let disks = isolate_roots(&sf, rational_root_bits(&sf) + 4)?;
    Ok(rational_roots_in_disks(&sf, &disks))
}

pub fn integral_form(p: &UniPoly<ExactComplex>) -> UniPoly<ExactComplex> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = num_integer::lcm(l, c.re.denom().clone());
        l = num_integer::lcm(l, c.im.denom().clone());
    }
    p.scale(&Complex::new(BigRational::from_integer(l), BigRational::zero()))
}

/// Certified enclosure of `p(x)` by Horner evaluation over balls.
pub fn eval_ball(p: &UniPoly<ExactComplex>, x: &Ball) -> Ball {
    p.coeffs()
        .iter()
        .rev()
        .fold(Ball::zero(), |acc, c| &(&acc * x) + &Ball::exact(c))
}

/// Shrinks an isolating disk of a root of the squarefree `p` to radius at
/// most `2^-bits`, keeping the identity of the root: the result is the
/// unique disk of a finer isolation that meets `disk`.
pub fn refine_disk(p: &UniPoly<ExactComplex>, disk: &RootDisk, bits: u32) -> Result<RootDisk> {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
    if disk.radius <= target {
        return Ok(disk.clone());
    }
    let mut b = bits;
    while b <= bits + 2048 {
        let disks = isolate_roots(p, b)?;
        let mut hits = disks.into_iter().filter(|d| d.overlaps(disk));
        if let (Some(d), None) = (hits.next(), hits.next()) {
            return Ok(d);
        }
        b += 64;
    }
    Err(Error::FieldEscape("could not refine an isolating disk".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{gi, rat};
    use num_traits::Signed;

    fn up(c: Vec<ExactComplex>) -> UniPoly<ExactComplex> {
        UniPoly::new(c)
    }

    #[test]
    fn isolates_roots_of_unity_and_sqrt2() {
        // x^4 - 1
        let p = up(vec![gi(-1, 0), gi(0, 0), gi(0, 0), gi(0, 0), gi(1, 0)]);
        let disks = isolate_roots(&p, 60).unwrap();
        assert_eq!(disks.len(), 4);
        for r in [gi(1, 0), gi(-1, 0), gi(0, 1), gi(0, -1)] {
            assert_eq!(disks.iter().filter(|d| d.ball(0).contains(&r)).count(), 1);
        }
        // x^2 - 2: disks straddle +-sqrt 2 within 2^-60
        let q = up(vec![gi(-2, 0), gi(0, 0), gi(1, 0)]);
        let disks = isolate_roots(&q, 60).unwrap();
        for d in &disks {
            let x = d.center.re.clone();
            let err = (&x * &x - rat(2, 1)).abs();
            assert!(err < rat(1, 1 << 50));
        }
    }

    #[test]
    fn finds_gaussian_rational_roots() {
        // (3x - (1+2i)) (x^2 - 2) (2x + 5)
        let a = up(vec![-gi(1, 2), gi(3, 0)]);
        let b = up(vec![gi(-2, 0), gi(0, 0), gi(1, 0)]);
        let c = up(vec![gi(5, 0), gi(2, 0)]);
        let p = &(&a * &b) * &c;
        let mut roots = gaussian_rational_roots(&p).unwrap();
        roots.sort_by(|x, y| x.re.cmp(&y.re));
        assert_eq!(roots, vec![Complex::new(rat(-5, 2), rat(0, 1)), Complex::new(rat(1, 3), rat(2, 3))]);
    }
}
