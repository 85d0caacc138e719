//! Canonical text form for Laurent polynomials and its parser.
//!
//! Terms are written in descending exponent order with explicit signs:
//! `z1^2*z2^-1 - 3/2i*w1 + (1-2i)`. The parser accepts this form and
//! anything whitespace-equivalent to it.

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, LaurentPoly, Monomial, Scalar, Var};

pub(crate) fn render_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let e = m.exp(v);
        match e {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Splits a coefficient into (is_negative, body) where body renders |c|
/// (or the whole complex value in parentheses).
fn coeff_parts(c: &Scalar) -> (bool, Option<String>) {
    if c.is_real() {
        let neg = c.re().is_negative();
        let mag = Scalar::real(c.re().abs());
        (neg, if mag.is_one() { None } else { Some(mag.to_string()) })
    } else if c.re().is_zero() {
        let neg = c.im().is_negative();
        let mag = Scalar::new(num_rational::BigRational::zero(), c.im().abs());
        (neg, Some(mag.to_string()))
    } else {
        (false, Some(c.to_string()))
    }
}

pub fn render_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let (neg, body) = coeff_parts(c);
        let mono = render_monomial(m);
        let term = match (body, mono.is_empty()) {
            (None, true) => "1".to_string(),
            (None, false) => mono,
            (Some(b), true) => b,
            (Some(b), false) => format!("{b}*{mono}"),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<String, AlgebraError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<(Monomial, Scalar), AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                let start = self.pos + 1;
                while self.peek().is_some_and(|b| b != b')') {
                    self.pos += 1;
                }
                if !self.eat(b')') {
                    return Err(self.err("unclosed parenthesis"));
                }
                let inner = String::from_utf8_lossy(&self.s[start..self.pos - 1]).into_owned();
                Ok((Monomial::ONE, inner.parse()?))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok((Monomial::ONE, Scalar::i()))
            }
            Some(b) if b.is_ascii_digit() => {
                let mut txt = self.int()?;
                if self.eat(b'/') {
                    txt.push('/');
                    txt.push_str(&self.int()?);
                }
                let mut c: Scalar = txt.parse()?;
                if self.eat(b'i') {
                    c = &c * &Scalar::i();
                }
                Ok((Monomial::ONE, c))
            }
            Some(b'z') | Some(b'w') => {
                let name = String::from_utf8_lossy(&self.s[self.pos..(self.pos + 2).min(self.s.len())]).into_owned();
                let v = Var::from_name(&name).ok_or_else(|| self.err("unknown variable"))?;
                self.pos += 2;
                let mut e = 1i32;
                if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let n: i32 = self.int()?.parse().map_err(|_| self.err("exponent overflow"))?;
                    e = if neg { -n } else { n };
                }
                Ok((Monomial::var(v, e), Scalar::one()))
            }
            _ => Err(self.err("unexpected input")),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar), AlgebraError> {
        let (mut m, mut c) = self.factor()?;
        while self.eat(b'*') {
            let (m2, c2) = self.factor()?;
            m = m.mul(&m2);
            c = &c * &c2;
        }
        Ok((m, c))
    }
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly, AlgebraError> {
    let compact: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut p = Parser { s: &compact, pos: 0 };
    let mut out = Vec::new();
    let mut neg = if p.eat(b'-') {
        true
    } else {
        p.eat(b'+');
        false
    };
    loop {
        let (m, c) = p.term()?;
        out.push((m, if neg { -c } else { c }));
        match p.peek() {
            None => break,
            Some(b'+') => neg = false,
            Some(b'-') => neg = true,
            Some(_) => return Err(p.err("expected sign")),
        }
        p.pos += 1;
    }
    Ok(LaurentPoly::from_terms(out))
}

impl std::str::FromStr for LaurentPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_one() {
        assert_eq!(render_poly(&LaurentPoly::zero()), "0");
        assert_eq!(render_poly(&LaurentPoly::one()), "1");
        assert_eq!(parse_poly("0").unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn descending_order_explicit_signs() {
        let p: LaurentPoly = "z2^2 - z1^2".parse().unwrap();
        assert_eq!(p.to_string(), "-z1^2 + z2^2");
        let q: LaurentPoly = "-3/2i*w1 + (1-2i) + z1^2*z2^-1".parse().unwrap();
        assert_eq!(q.to_string(), "z1^2*z2^-1 - 3/2i*w1 + (1-2i)");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_poly("z3").is_err());
        assert!(parse_poly("z1 z2").is_err());
        assert!(parse_poly("(1+i").is_err());
    }
}
