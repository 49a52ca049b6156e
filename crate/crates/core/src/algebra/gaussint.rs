//! Univariate kernels over the Gaussian integers `Z[i]`.
//!
//! Polynomials over `Q(i)` are cleared of denominators and content before the
//! gcd computations run, so intermediate values never need rational
//! normalization. Coefficient vectors are little-endian and trimmed.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type GInt = Complex<BigInt>;

fn trim(v: &mut Vec<GInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn norm(z: &GInt) -> BigInt {
    &z.re * &z.re + &z.im * &z.im
}

/// `round(n / d)` for `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let num: BigInt = n * 2 + d;
    num.div_floor(&(d * 2))
}

/// Exact quotient in `Z[i]`; the caller guarantees divisibility.
pub fn div_exact(a: &GInt, b: &GInt) -> GInt {
    let n = norm(b);
    let t = a * b.conj();
    debug_assert!((&t.re % &n).is_zero() && (&t.im % &n).is_zero());
    Complex::new(&t.re / &n, &t.im / &n)
}

/// Euclidean gcd in `Z[i]`, normalized by [`unit_normal`].
pub fn gint_gcd(a: &GInt, b: &GInt) -> GInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let n = norm(&b);
        let t = &a * b.conj();
        let q = Complex::new(round_div(&t.re, &n), round_div(&t.im, &n));
        let r = &a - &q * &b;
        a = b;
        b = r;
    }
    unit_normal(&a).0
}

/// Associate of `z` with `re > 0, im >= 0` (zero stays zero), together with
/// the unit it was multiplied by.
pub fn unit_normal(z: &GInt) -> (GInt, GInt) {
    let units = [
        Complex::new(BigInt::one(), BigInt::zero()),
        Complex::new(BigInt::zero(), BigInt::one()),
        Complex::new(-BigInt::one(), BigInt::zero()),
        Complex::new(BigInt::zero(), -BigInt::one()),
    ];
    if z.is_zero() {
        return (z.clone(), units[0].clone());
    }
    for u in units {
        let w = z * &u;
        if w.re.is_positive() && !w.im.is_negative() {
            return (w, u);
        }
    }
    unreachable!("some associate lies in the first quadrant")
}

/// Clears denominators of a `Q(i)` coefficient vector and removes the
/// content; the leading coefficient is unit-normal.
pub fn integral_primitive(coeffs: &[Complex<BigRational>]) -> Vec<GInt> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let mut v: Vec<GInt> = coeffs
        .iter()
        .map(|c| {
            let re = (&c.re * BigRational::from_integer(den.clone())).to_integer();
            let im = (&c.im * BigRational::from_integer(den.clone())).to_integer();
            Complex::new(re, im)
        })
        .collect();
    trim(&mut v);
    make_primitive(v)
}

/// Scales every vector by one common denominator so all become integral;
/// ratios between the vectors are preserved.
pub fn common_integral(polys: &[&[Complex<BigRational>]]) -> Vec<Vec<GInt>> {
    let mut den = BigInt::one();
    for c in polys.iter().flat_map(|p| p.iter()) {
        den = den.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let d = BigRational::from_integer(den);
    polys
        .iter()
        .map(|p| {
            let mut v: Vec<GInt> = p
                .iter()
                .map(|c| Complex::new((&c.re * &d).to_integer(), (&c.im * &d).to_integer()))
                .collect();
            trim(&mut v);
            v
        })
        .collect()
}

pub fn poly_mul(a: &[GInt], b: &[GInt]) -> Vec<GInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex::new(BigInt::zero(), BigInt::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn poly_add(a: &[GInt], b: &[GInt]) -> Vec<GInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, x) in out.iter_mut().zip(short) {
        *o += x;
    }
    trim(&mut out);
    out
}

pub fn make_primitive(mut v: Vec<GInt>) -> Vec<GInt> {
    trim(&mut v);
    let Some(last) = v.last() else {
        return v;
    };
    let mut content = Complex::new(BigInt::zero(), BigInt::zero());
    for c in v.iter().rev() {
        content = gint_gcd(&content, c);
        if norm(&content).is_one() {
            break;
        }
    }
    let (_, u) = unit_normal(last);
    let unit_only = norm(&content).is_one();
    v.into_iter()
        .map(|c| {
            let c = &c * &u;
            if unit_only {
                c
            } else {
                div_exact(&c, &content)
            }
        })
        .collect()
}

pub fn to_gaussian(v: &[GInt]) -> Vec<Complex<BigRational>> {
    v.iter()
        .map(|c| {
            Complex::new(
                BigRational::from_integer(c.re.clone()),
                BigRational::from_integer(c.im.clone()),
            )
        })
        .collect()
}

fn pseudo_rem(a: &[GInt], d: &[GInt]) -> Vec<GInt> {
    let dd = d.len() - 1;
    let lc = &d[dd];
    let delta = a.len() - 1 - dd;
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top].clone();
        for x in r.iter_mut() {
            *x = &*x * lc;
        }
        if !c.is_zero() {
            let shift = top - dd;
            for (j, dc) in d.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &c * dc;
            }
        }
        r.pop();
        trim(&mut r);
        steps += 1;
    }
    for _ in steps..=delta {
        for x in r.iter_mut() {
            *x = &*x * lc;
        }
    }
    r
}

/// Whether the nonzero `d` divides `a` in `Q(i)[x]`, by one pseudo-division.
pub fn divides(d: &[GInt], a: &[GInt]) -> bool {
    a.is_empty() || (a.len() >= d.len() && pseudo_rem(a, d).is_empty())
}

fn gpow(z: &GInt, e: u32) -> GInt {
    let mut out = Complex::new(BigInt::one(), BigInt::zero());
    for _ in 0..e {
        out = &out * z;
    }
    out
}

/// Primitive, unit-normal gcd of two primitive integral polynomials by the
/// subresultant remainder sequence. Both inputs must be nonzero.
pub fn prs_gcd(a: &[GInt], b: &[GInt]) -> Vec<GInt> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    let one = Complex::new(BigInt::one(), BigInt::zero());
    if b.len() == 1 {
        return vec![one];
    }
    if modular_coprime(&a, &b) {
        return vec![one];
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return make_primitive(b);
        }
        if r.len() == 1 {
            return vec![one];
        }
        let beta = &g * gpow(&h, delta);
        a = std::mem::replace(&mut b, r.iter().map(|c| div_exact(c, &beta)).collect());
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = div_exact(&gpow(&g, delta), &gpow(&h, delta - 1));
        }
    }
}

struct ModPrime {
    p: u64,
    /// A square root of -1 modulo `p`.
    s: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mod_prime() -> &'static ModPrime {
    static P: OnceLock<ModPrime> = OnceLock::new();
    P.get_or_init(|| {
        let mut p = (1u64 << 62) + 1;
        while !is_prime(p) {
            p += 4;
        }
        let s = (2..)
            .map(|c| pow_mod(c, (p - 1) / 4, p))
            .find(|&t| mul_mod(t, t, p) == p - 1)
            .unwrap();
        ModPrime { p, s }
    })
}

fn reduce(z: &GInt, m: &ModPrime) -> u64 {
    let p = BigInt::from(m.p);
    let re = z.re.mod_floor(&p).to_u64().unwrap();
    let im = z.im.mod_floor(&p).to_u64().unwrap();
    (re + mul_mod(im, m.s, m.p)) % m.p
}

/// Certifies coprimality through the ring map `Z[i] -> F_p`, `i -> s`.
///
/// When neither leading coefficient vanishes modulo `p`, the image of the
/// true gcd divides both images without losing degree, so a constant gcd
/// modulo `p` proves the inputs coprime. `false` means "not certified".
pub fn modular_coprime(a: &[GInt], b: &[GInt]) -> bool {
    let m = mod_prime();
    let p = m.p;
    let mut x: Vec<u64> = a.iter().map(|c| reduce(c, m)).collect();
    let mut y: Vec<u64> = b.iter().map(|c| reduce(c, m)).collect();
    if x.last() == Some(&0) || y.last() == Some(&0) || x.is_empty() || y.is_empty() {
        return false;
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return true;
        }
        let inv = pow_mod(*y.last().unwrap(), p - 2, p);
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().unwrap(), inv, p);
            let shift = x.len() - y.len();
            for (j, &d) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + p - mul_mod(c, d, p)) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        if x.is_empty() {
            return false;
        }
        std::mem::swap(&mut x, &mut y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GInt {
        Complex::new(BigInt::from(re), BigInt::from(im))
    }

    #[test]
    fn gaussian_gcd_and_units() {
        // 5 = (2 + i)(2 - i)
        let d = gint_gcd(&g(5, 0), &(g(2, 1) * g(1, 1)));
        assert_eq!(d, unit_normal(&g(2, 1)).0);
        assert_eq!(unit_normal(&g(-3, 0)).0, g(3, 0));
        assert_eq!(unit_normal(&g(0, -2)).0, g(2, 0));
    }

    #[test]
    fn prs_finds_common_factor() {
        // (x - i)(x + 2) and (x - i)(3x - 1)
        let a = vec![g(0, -2), g(2, -1), g(1, 0)];
        let b = vec![g(0, 1), g(-1, -3), g(3, 0)];
        let h = prs_gcd(&a, &b);
        assert_eq!(h, make_primitive(vec![g(0, -1), g(1, 0)]));
        assert!(!modular_coprime(&a, &b));
        assert!(modular_coprime(&a, &[g(1, 0), g(1, 0)]));
    }
}
