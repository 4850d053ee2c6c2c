//! Text grammar for polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := coeff ['*' factors] | factors
//! coeff  := digits ['/' digits]
//! factor := 'x' digits ['^' [sign] digits]      (factors joined by '*')
//! ```
//! Whitespace is insignificant. Variable indices are 1-based.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{Mode, Polynomial};
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, n: usize, mode: Mode) -> Result<Polynomial> {
    Parser { src: text.as_bytes(), pos: 0, n, mode }.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit run parses"))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n, self.mode);
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -BigRational::one()
            } else if self.eat(b'+') || first {
                BigRational::one()
            } else {
                return self.err("expected '+' or '-'");
            };
            let term = self.term()?;
            out = &out + &term.scale(&sign);
            first = false;
            if self.peek().is_none() {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut coeff = BigRational::one();
        let mut exponent = vec![0i64; self.n];
        let mut expect_factor = true;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.digits()?;
            let den = if self.eat(b'/') { self.digits()? } else { BigInt::one() };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            coeff = BigRational::new(num, den);
            expect_factor = self.eat(b'*');
            if !expect_factor && self.peek() == Some(b'x') {
                expect_factor = true;
            }
        }
        if expect_factor {
            self.factor(&mut exponent)?;
            while self.eat(b'*') || self.peek() == Some(b'x') {
                self.factor(&mut exponent)?;
            }
        }
        Polynomial::monomial(self.n, self.mode, exponent, coeff)
    }

    fn factor(&mut self, exponent: &mut [i64]) -> Result<()> {
        if !self.eat(b'x') {
            return self.err("expected variable 'xK'");
        }
        let index: usize = match self.digits()?.try_into() {
            Ok(k) => k,
            Err(_) => return self.err("variable index too large"),
        };
        if index == 0 || index > self.n {
            return Err(Error::VariableOutOfRange { index, n: self.n });
        }
        let mut e: i64 = 1;
        if self.eat(b'^') {
            let negative = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let mag: i64 = match self.digits()?.try_into() {
                Ok(k) => k,
                Err(_) => return self.err("exponent too large"),
            };
            e = if negative { -mag } else { mag };
            if e < 0 && self.mode == Mode::Affine {
                return Err(Error::NegativeExponentInAffine);
            }
        }
        exponent[index - 1] += e;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn terms(p: &Polynomial) -> Vec<(Vec<i64>, BigRational)> {
        p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect()
    }

    #[test]
    fn zero_parses_to_empty_support() {
        assert!(parse_poly("0", 2, Mode::Affine).unwrap().is_zero());
    }

    #[test]
    fn simplex_generator() {
        let p = parse_poly("1 + x1 + x2", 2, Mode::Affine).unwrap();
        assert_eq!(terms(&p), vec![(vec![0, 0], rat(1)), (vec![0, 1], rat(1)), (vec![1, 0], rat(1))]);
    }

    #[test]
    fn laurent_terms() {
        let p = parse_poly("x1^2*x2 - 3*x2^-1", 2, Mode::Torus).unwrap();
        assert_eq!(terms(&p), vec![(vec![0, -1], rat(-3)), (vec![2, 1], rat(1))]);
    }

    #[test]
    fn whitespace_and_implicit_products() {
        let a = parse_poly(" 3 x1 x2^2 - 1/2 ", 2, Mode::Affine).unwrap();
        let b = parse_poly("3*x1*x2^2-1/2", 2, Mode::Affine).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x1^-1", 1, Mode::Affine), Err(Error::NegativeExponentInAffine));
        assert_eq!(parse_poly("x3", 2, Mode::Affine), Err(Error::VariableOutOfRange { index: 3, n: 2 }));
        assert_eq!(parse_poly("x0", 2, Mode::Affine), Err(Error::VariableOutOfRange { index: 0, n: 2 }));
        assert!(matches!(parse_poly("1 +", 2, Mode::Affine), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x1 x", 2, Mode::Affine), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("2 3", 2, Mode::Affine), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("", 2, Mode::Affine), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", 2, Mode::Affine), Err(Error::Syntax { .. })));
    }
}
