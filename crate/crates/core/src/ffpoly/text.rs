//! Text forms of polynomials.
//!
//! Canonical: monomials in decreasing degree, coefficients in 0..q-1, e.g.
//! `t^3+2*t+1`; the zero polynomial is `0`. The parser also accepts `-`,
//! parentheses, implicit products (`2t`, `t(t+1)`), integer coefficients of
//! any size, and a comma-separated coefficient list lowest degree first
//! (`1,2,0,1`).

use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs().len()).rev() {
            let c = self.coeff(i);
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Poly {
    /// Comma-separated coefficient list, lowest degree first (`0` for zero).
    pub fn to_coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Parses either text form.
    pub fn parse(q: u32, s: &str) -> Result<Poly> {
        super::field::check_modulus(q)?;
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s.contains(',') {
            let coeffs = s
                .split(',')
                .map(|c| c.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::from_i64(q, &coeffs));
        }
        let mut p = Parser { q, s: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected {:?} at {}", p.s[p.pos] as char, p.pos)));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    q: u32,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.q);
        let mut neg = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            neg = c == b'-';
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            acc = if neg { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b't' | b'(' | b'0'..=b'9') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e as u64));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::t(self.q))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse(format!("missing ')' at {}", self.pos)));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(Poly::constant(self.q, (n % self.q as u128) as i64))
            }
            Some(c) => Err(Error::Parse(format!("unexpected {:?} at {}", c as char, self.pos))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn integer(&mut self) -> Result<u128> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected integer at {start}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::enumerate::enumerate_upto;

    #[test]
    fn canonical_form() {
        assert_eq!(Poly::from_i64(3, &[1, 2, 0, 1]).to_string(), "t^3+2*t+1");
        assert_eq!(Poly::zero(3).to_string(), "0");
        assert_eq!(Poly::from_i64(5, &[0, 1]).to_string(), "t");
        assert_eq!(Poly::from_i64(3, &[1, 2, 0, 1]).to_coeff_list(), "1,2,0,1");
    }

    #[test]
    fn parses_expressions() {
        let q = 3;
        assert_eq!(Poly::parse(q, "t^3+2*t+1").unwrap(), Poly::from_i64(q, &[1, 2, 0, 1]));
        assert_eq!(Poly::parse(q, "1,2,0,1").unwrap(), Poly::from_i64(q, &[1, 2, 0, 1]));
        assert_eq!(Poly::parse(q, "-t").unwrap(), Poly::from_i64(q, &[0, 2]));
        assert_eq!(Poly::parse(q, "t(t+1)").unwrap(), Poly::from_i64(q, &[0, 1, 1]));
        assert_eq!(Poly::parse(q, "2t^2 + 2t").unwrap(), Poly::from_i64(q, &[0, 2, 2]));
        assert_eq!(Poly::parse(q, "t^3-t-1").unwrap(), Poly::from_i64(q, &[2, 2, 0, 1]));
        assert_eq!(Poly::parse(q, "(t+1)^2").unwrap(), Poly::from_i64(q, &[1, 2, 1]));
        assert!(Poly::parse(q, "t^").is_err());
        assert!(Poly::parse(q, "x").is_err());
        assert!(Poly::parse(q, "").is_err());
        assert!(Poly::parse(4, "t").is_err());
    }

    #[test]
    fn roundtrip() {
        for q in [3u32, 5] {
            for f in enumerate_upto(q, 3) {
                assert_eq!(Poly::parse(q, &f.to_string()).unwrap(), f);
                assert_eq!(Poly::parse(q, &f.to_coeff_list()).unwrap(), f);
            }
        }
    }
}
