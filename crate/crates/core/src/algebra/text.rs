//! Canonical text form: `(p/q + r/s i) * z1^2 z2 + (…) * 1`, terms in
//! descending graded-lex order, the zero polynomial printed as `0`.

use std::fmt;

use super::gaussian::{format_complex, gi, parse_complex};
use super::poly::{Monomial, MultiPoly, Roster};
use crate::error::{Error, Result};
use crate::ExactComplex;

pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

pub fn format_poly(p: &MultiPoly<ExactComplex>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .rev()
        .map(|(m, c)| format!("({}) * {}", format_complex(c), format_monomial(p.vars(), m)))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for MultiPoly<ExactComplex> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

/// Inverse of [`format_poly`] over the given roster.
pub fn parse_poly(text: &str, vars: &Roster) -> Result<MultiPoly<ExactComplex>> {
    let s = text.trim();
    if s == "0" {
        return Ok(MultiPoly::zero(vars.clone()));
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut terms = Vec::new();
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    loop {
        if bytes.get(pos) != Some(&b'(') {
            return Err(err(pos, "expected `(` opening a coefficient"));
        }
        let close = s[pos..]
            .find(')')
            .map(|k| pos + k)
            .ok_or_else(|| err(pos, "unterminated coefficient"))?;
        let coeff = parse_complex(&s[pos + 1..close]).map_err(|e| match e {
            Error::Parse { msg, .. } => err(pos + 1, &msg),
            other => other,
        })?;
        pos = close + 1;
        let rest = &s[pos..];
        let after = rest
            .strip_prefix(" * ")
            .ok_or_else(|| err(pos, "expected ` * ` after coefficient"))?;
        pos += 3;
        let end = after.find(" + (").unwrap_or(after.len());
        let mono_text = &after[..end];
        let mono = parse_monomial(mono_text, vars).map_err(|e| match e {
            Error::Parse { pos: p, msg } => err(pos + p, &msg),
            other => other,
        })?;
        terms.push((mono, coeff));
        pos += end;
        if pos >= s.len() {
            break;
        }
        pos += 3;
    }
    Ok(MultiPoly::from_terms(vars.clone(), terms))
}

fn parse_monomial(text: &str, vars: &Roster) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    if text.trim() == "1" {
        return Ok(Monomial::new(exps));
    }
    let mut offset = 0;
    for factor in text.split(' ') {
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<u32>().map_err(|_| Error::Parse {
                    pos: offset,
                    msg: format!("bad exponent in `{factor}`"),
                })?,
            ),
            None => (factor, 1),
        };
        let idx = vars.iter().position(|v| v == name).ok_or(Error::Parse {
            pos: offset,
            msg: format!("unknown variable `{name}`"),
        })?;
        exps[idx] += e;
        offset += factor.len() + 1;
    }
    Ok(Monomial::new(exps))
}

/// Parses an infix expression such as `y^2 - 2*x^3 + (1/2 + i) x y` or
/// `(y - x)^2 (y + 1)`. Juxtaposition multiplies; `/` divides by nonzero
/// constants only; `i` is the imaginary unit unless it names a variable.
pub fn parse_expr(text: &str, vars: &Roster) -> Result<MultiPoly<ExactComplex>> {
    let mut p = ExprParser {
        s: text.as_bytes(),
        pos: 0,
        vars,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a Roster,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly<ExactComplex>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly<ExactComplex>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    let c = gi(1, 0) / f.constant_term();
                    acc = acc.scale(&c);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly<ExactComplex>> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<ExactComplex>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: num_bigint::BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                let c = super::gaussian::from_rational(num_rational::BigRational::from_integer(n));
                Ok(MultiPoly::constant(self.vars.clone(), c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if let Some(idx) = self.vars.iter().position(|v| v == name) {
                    return Ok(MultiPoly::var_index(self.vars.clone(), idx));
                }
                if name == "i" {
                    return Ok(MultiPoly::constant(
                        self.vars.clone(),
                        gi(0, 1),
                    ));
                }
                self.pos = start;
                Err(self.err(&format!("unknown variable `{name}`")))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::{gi, rat};
    use crate::algebra::poly::roster;
    use num_complex::Complex;

    #[test]
    fn prints_canonically() {
        let v = roster(&["z1", "z2"]);
        let p = MultiPoly::from_terms(
            v.clone(),
            [
                (Monomial::new(vec![2, 1]), gi(1, 0)),
                (Monomial::new(vec![0, 0]), Complex::new(rat(-1, 2), rat(3, 4))),
                (Monomial::new(vec![0, 1]), gi(0, -1)),
            ],
        );
        assert_eq!(
            format_poly(&p),
            "(1 + 0 i) * z1^2 z2 + (0 + -1 i) * z2 + (-1/2 + 3/4 i) * 1"
        );
        assert_eq!(parse_poly(&format_poly(&p), &v).unwrap(), p);
    }

    #[test]
    fn zero_and_errors() {
        let v = roster(&["x"]);
        assert!(parse_poly("0", &v).unwrap().is_zero());
        assert!(parse_poly("(1 + 0 i) * y", &v).is_err());
        assert!(parse_poly("(1/0 + 0 i) * x", &v).is_err());
        assert!(parse_poly("1 * x", &v).is_err());
    }

    #[test]
    fn infix_expressions() {
        let v = roster(&["x", "y"]);
        let a = parse_expr("(y - x)^2 (y + 1)", &v).unwrap();
        let b = parse_expr("y^3 - 2 x y^2 + x^2 y + y^2 - 2*x*y + x^2", &v).unwrap();
        assert_eq!(a, b);
        let c = parse_expr("(1/2 + i) x - 3/4", &v).unwrap();
        assert_eq!(c.coeff(&[1, 0]), Complex::new(rat(1, 2), rat(1, 1)));
        assert_eq!(c.coeff(&[0, 0]), Complex::new(rat(-3, 4), rat(0, 1)));
        assert!(parse_expr("x / y", &v).is_err());
        assert!(parse_expr("x + q", &v).is_err());
    }
}
