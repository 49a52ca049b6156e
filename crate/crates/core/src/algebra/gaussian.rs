//! Gaussian rationals `a + b i` with exact rational parts.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ExactComplex;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `re + im i` from integers.
pub fn gi(re: i64, im: i64) -> ExactComplex {
    Complex::new(int(re), int(im))
}

pub fn from_rational(re: BigRational) -> ExactComplex {
    Complex::new(re, BigRational::zero())
}

pub fn imag_unit() -> ExactComplex {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn is_real(z: &ExactComplex) -> bool {
    z.im.is_zero()
}

pub fn norm_sqr(z: &ExactComplex) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // rescale both parts to avoid overflow
            let nb = q.numer().bits() as i64;
            let db = q.denom().bits() as i64;
            let shift = nb.max(db) - 900;
            let n = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub fn to_c64(z: &ExactComplex) -> Complex<f64> {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// Nearest dyadic rational `n / 2^bits` to `x`.
pub fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical `p/q + r/s i` rendering; both parts are always printed.
pub fn format_complex(z: &ExactComplex) -> String {
    format!("{} + {} i", format_rational(&z.re), format_rational(&z.im))
}

/// Short human rendering (`3`, `-i`, `1/2 - 2 i`).
pub fn format_complex_short(z: &ExactComplex) -> String {
    let re = format_rational(&z.re);
    if z.im.is_zero() {
        return re;
    }
    let im_abs = z.im.abs();
    let im = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{} i", format_rational(&im_abs))
    };
    let neg = z.im.is_negative();
    if z.re.is_zero() {
        if neg {
            format!("-{im}")
        } else {
            im
        }
    } else {
        format!("{re} {} {im}", if neg { "-" } else { "+" })
    }
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q` and `q != 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err("malformed numerator"))?;
    let d: BigInt = den.parse().map_err(|_| err("malformed denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses the canonical `p/q + r/s i` form produced by [`format_complex`].
pub fn parse_complex(s: &str) -> Result<ExactComplex> {
    let t = s.trim();
    let err = || Error::Parse {
        pos: 0,
        msg: format!("malformed complex coefficient `{t}`"),
    };
    let body = t.strip_suffix('i').ok_or_else(err)?.trim_end();
    let (re, im) = body.split_once(" + ").ok_or_else(err)?;
    Ok(Complex::new(parse_rational(re)?, parse_rational(im)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn complex_text_round_trips() {
        for z in [gi(0, 0), gi(3, -1), Complex::new(rat(1, 2), rat(-7, 3))] {
            assert_eq!(parse_complex(&format_complex(&z)).unwrap(), z);
        }
        assert_eq!(format_complex(&Complex::new(rat(1, 2), rat(-7, 3))), "1/2 + -7/3 i");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { .. })));
        assert!(parse_rational("1/x").is_err());
    }

    #[test]
    fn short_format() {
        assert_eq!(format_complex_short(&gi(0, -1)), "-i");
        assert_eq!(format_complex_short(&Complex::new(rat(1, 2), int(-2))), "1/2 - 2 i");
        assert_eq!(format_complex_short(&gi(5, 0)), "5");
    }

    #[test]
    fn field_axioms_hold_on_samples() {
        let a = Complex::new(rat(1, 3), rat(2, 5));
        let b = Complex::new(rat(-7, 2), rat(1, 1));
        let one = gi(1, 0);
        assert_eq!(a.clone() * (one.clone() / a.clone()), one);
        assert_eq!((a.clone() + b.clone()) * b.clone(), a.clone() * b.clone() + b.clone() * b.clone());
        assert_eq!(Complex::conj(&Complex::conj(&a)), a);
    }
}
