//! Canonical text form of polynomials.
//!
//! Terms are written in descending degree reverse lexicographic order,
//! products with `*`, powers with `^`, rational coefficients as `p/q`:
//!
//! ```text
//! 2*r2^3*r3^3 - r2^4*r3^2 + 1/2*r3 - 1
//! ```
//!
//! The parser accepts this form and, more generally, any expression built
//! from `+ - * ^`, parentheses, integer or `p/q` constants, and the ring's
//! variable names.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, MonomialOrder, MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

impl MultiPoly {
    pub fn to_text(&self) -> String {
        self.to_text_with(&MonomialOrder::degrevlex(self.nvars()))
    }

    pub fn to_text_with(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = self.ring().names();
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<MultiPoly> {
        let mut p = Parser {
            ring,
            src: text.as_bytes(),
            pos: 0,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.to_text())
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.err("division only by nonzero constants"));
                }
                let c = d.coefficient(&Monomial::one(self.ring.nvars()));
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MultiPoly::constant(self.ring, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.index_of(name) {
                    Some(i) => Ok(MultiPoly::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prints_canonical_form() {
        let ring = Ring::new(["r2", "r3"]);
        let p = MultiPoly::parse(&ring, "1 - r2^4 + 6*r2*r3 + 2*r2^3*r3^3 - 1/2*r3").unwrap();
        assert_eq!(p.to_text(), "2*r2^3*r3^3 - r2^4 + 6*r2*r3 - 1/2*r3 + 1");
        assert_eq!(MultiPoly::zero(&ring).to_text(), "0");
        assert_eq!(MultiPoly::parse(&ring, "-r3").unwrap().to_text(), "-r3");
    }

    #[test]
    fn parses_general_expressions() {
        let ring = Ring::new(["x", "y"]);
        let p = MultiPoly::parse(&ring, "(x + y)*(x - y)").unwrap();
        assert_eq!(p.to_text(), "x^2 - y^2");
        let q = MultiPoly::parse(&ring, "3/6*x^2 + x/2").unwrap();
        assert_eq!(q.to_text(), "1/2*x^2 + 1/2*x");
    }

    #[test]
    fn rejects_bad_input() {
        let ring = Ring::new(["x"]);
        assert!(matches!(
            MultiPoly::parse(&ring, "x + z"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(MultiPoly::parse(&ring, "x +").is_err());
        assert!(MultiPoly::parse(&ring, "(x").is_err());
        assert!(MultiPoly::parse(&ring, "x/x").is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(terms in prop::collection::vec((prop::collection::vec(0u32..5, 3), -50i64..50, 1i64..9), 0..8)) {
            let ring = Ring::new(["a", "b", "c"]);
            let p = MultiPoly::from_terms(&ring, terms.into_iter().map(|(e, n, d)| {
                (Monomial::new(e), Rational::new(n.into(), d.into()))
            }));
            let back = MultiPoly::parse(&ring, &p.to_text()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
