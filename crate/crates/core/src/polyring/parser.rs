//! Recursive-descent parser for the polynomial text format.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! coeff  := integer ['/' positive-integer]
//! factor := 'x' index ['^' positive-integer]
//! ```
//!
//! Variables are `x0..xn`. Every term must have the same total degree;
//! mixed degrees are rejected as non-homogeneous even if they would cancel.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::polyring::{HomPoly, Rational};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

/// Parses `text` as a homogeneous polynomial in `x0..xn`.
pub fn parse(text: &str, n: usize) -> Result<HomPoly> {
    if !text.is_ascii() {
        return Err(Error::SyntaxError {
            pos: 0,
            message: "input must be ASCII".into(),
        });
    }
    Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    }
    .poly()
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError {
            pos: self.pos,
            message: message.into(),
        })
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

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
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
        if self.pos == start {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }

    fn digits_usize(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let big = self.digits()?;
        usize::try_from(&big).map_err(|_| Error::SyntaxError {
            pos: start,
            message: format!("number {big} too large"),
        })
    }

    /// `integer ['/' positive-integer]`; a sign on the numerator is allowed.
    fn coeff(&mut self) -> Result<Rational> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut num = self.digits()?;
        if negative {
            num = -num;
        }
        let den = if self.eat(b'/') {
            self.skip_ws();
            let den_pos = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::SyntaxError {
                    pos: den_pos,
                    message: "denominator must be positive".into(),
                });
            }
            d
        } else {
            BigInt::one()
        };
        Ok(Rational::new(num, den))
    }

    /// `'x' index ['^' positive-integer]`; accumulates into `exps`.
    fn factor(&mut self, exps: &mut [usize]) -> Result<()> {
        let var_pos = self.pos;
        if self.bump() != Some(b'x') {
            self.pos = var_pos;
            return self.err("expected a variable like x0");
        }
        let idx_pos = self.pos;
        let idx = self.digits_usize()?;
        if idx > self.n {
            return Err(Error::WrongVariable {
                index: idx,
                max: self.n,
            });
        }
        let exp = if self.eat(b'^') {
            let exp_pos = self.pos;
            let e = self.digits_usize()?;
            if e == 0 {
                return Err(Error::SyntaxError {
                    pos: exp_pos,
                    message: "exponent must be positive".into(),
                });
            }
            e
        } else {
            1
        };
        let _ = idx_pos;
        exps[idx] += exp;
        Ok(())
    }

    /// One term; `sign` comes from the separator in front of it.
    fn term(&mut self, sign: bool) -> Result<(MultiIndex, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0usize; self.n + 1];
        let mut saw_factor = false;

        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'-' || b == b'+' => {
                coeff = self.coeff()?;
                if self.eat(b'*') {
                    self.factor(&mut exps)?;
                    saw_factor = true;
                }
            }
            Some(b'x') => {
                self.factor(&mut exps)?;
                saw_factor = true;
            }
            _ => return self.err("expected a term"),
        }
        if saw_factor {
            while self.eat(b'*') {
                self.factor(&mut exps)?;
            }
        }
        if sign {
            coeff = -coeff;
        }
        Ok((MultiIndex::new(exps), coeff))
    }

    fn poly(&mut self) -> Result<HomPoly> {
        let mut terms: Vec<(MultiIndex, Rational)> = Vec::new();
        let leading_minus = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        terms.push(self.term(leading_minus)?);
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                Some(b) => return self.err(format!("unexpected character {:?}", b as char)),
            }
        }

        let d = terms[0].0.order();
        for (i, _) in &terms {
            if i.order() != d {
                return Err(Error::NotHomogeneous {
                    expected: d,
                    found: i.order(),
                });
            }
        }
        HomPoly::from_terms(self.n, d, terms)
    }
}
