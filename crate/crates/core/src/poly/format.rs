//! Text and JSON forms of bivariate polynomials.
//!
//! Text: a sum of terms `c*x^i*y^j` in graded order, with `^1`, `*1` and
//! unit coefficients elided, e.g. `4*y + x^5` over F_5. The parser also
//! accepts `-` between terms and factors in any order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::{BivariatePoly, Monomial};

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.raw_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if c != 1 || m.degree() == 0 {
                parts.push(c.to_string());
            }
            for (name, e) in [("x", m.x), ("y", m.y)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
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

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                line: 1,
                column: start + 1,
                message: "number too large".into(),
            })
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            u32::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn term(&mut self, field: PrimeField) -> Result<(Monomial, u64)> {
        let mut coeff = 1u64;
        let mut m = Monomial::new(0, 0);
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    m.x += self.exponent()?;
                }
                Some(b'y') => {
                    self.pos += 1;
                    m.y += self.exponent()?;
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = field.mul(coeff, field.reduce(n));
                }
                Some(_) => return Err(self.err("expected a coefficient, x or y")),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((m, coeff));
            }
        }
    }
}

impl BivariatePoly {
    /// Parses the text form over `field`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut poly = BivariatePoly::zero(field);
        let mut negate = false;
        match parser.peek() {
            Some(b'-') => {
                negate = true;
                parser.pos += 1;
            }
            Some(b'+') => parser.pos += 1,
            None => return Err(parser.err("empty polynomial")),
            _ => {}
        }
        loop {
            let (m, c) = parser.term(field)?;
            poly.add_term(m, if negate { field.neg(c) } else { c });
            match parser.peek() {
                None => return Ok(poly),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return Err(parser.err("expected '+' or '-'")),
            }
            parser.pos += 1;
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            p: self.field().modulus(),
            terms: self
                .raw_terms()
                .map(|(m, c)| [c, m.x as u64, m.y as u64])
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let field = PrimeField::new(json.p as u64)?;
        let mut poly = BivariatePoly::zero(field);
        for &[c, i, j] in &json.terms {
            if c >= field.p64() {
                return Err(Error::RangeError(format!(
                    "coefficient {c} is not a residue mod {}",
                    json.p
                )));
            }
            let (i, j) = (
                u32::try_from(i).map_err(|_| Error::RangeError("exponent too large".into()))?,
                u32::try_from(j).map_err(|_| Error::RangeError("exponent too large".into()))?,
            );
            poly.add_term(Monomial::new(i, j), c);
        }
        Ok(poly)
    }
}

/// Canonical JSON form: the modulus and `[c, i, j]` triples in graded order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub p: u32,
    pub terms: Vec<[u64; 3]>,
}

impl From<BivariatePoly> for PolyJson {
    fn from(h: BivariatePoly) -> Self {
        h.to_json()
    }
}

impl TryFrom<PolyJson> for BivariatePoly {
    type Error = Error;

    fn try_from(json: PolyJson) -> Result<Self> {
        BivariatePoly::from_json(&json)
    }
}
