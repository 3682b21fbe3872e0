//! Recursive-descent reader for the text form.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' factor))*
//! factor := '-' factor | atom ('^' ['-'] integer)?
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//! Division is only allowed by a nonzero constant. Negative exponents are
//! accepted on monomials when the result may be Laurent.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use super::{CoefficientRing, Coeff, Monomial, PolyError, Polynomial, VarSet};

/// Parses `text` over `ring` with the given variables. Numeric literals are
/// read as rationals and then coerced, so `1/3` in `Z(2)` is accepted and
/// `1/2` is rejected.
pub fn parse_polynomial(text: &str, ring: CoefficientRing, vars: &Arc<VarSet>) -> Result<Polynomial, PolyError> {
    let none = BTreeMap::new();
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring, vars: vars.clone(), params: &none };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Like [`parse_polynomial`], with named scalar parameters (such as the
/// undetermined `delta1`) replaced by the given constants.
pub fn parse_polynomial_with(
    text: &str,
    ring: CoefficientRing,
    vars: &Arc<VarSet>,
    params: &BTreeMap<String, Coeff>,
) -> Result<Polynomial, PolyError> {
    // Parameters may be divisors (`(c4p - c4)/a`), so parse over Q and move
    // into `ring` at the end; only the result must lie in `ring`.
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring: CoefficientRing::Rationals, vars: vars.clone(), params };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    out.change_ring(ring)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: CoefficientRing,
    vars: Arc<VarSet>,
    params: &'a BTreeMap<String, Coeff>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.ring, self.vars.clone());
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.try_mul(&f)?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let f = self.factor()?;
                if f.is_zero() {
                    return Err(PolyError::DivisionByZero);
                }
                if f.degree() != Some(0) || f.len() != 1 {
                    return Err(PolyError::Parse { pos: at, msg: "division by a non-constant".into() });
                }
                let c = f.constant_term();
                acc = acc.scale(&(Coeff::from_integer(1.into()) / c))?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let n = self.integer()?;
        let k: u32 = n.try_into().map_err(|_| PolyError::Parse { pos: at, msg: "exponent too large".into() })?;
        if !neg {
            return Ok(base.pow(k));
        }
        // Negative powers only make sense for a single monomial with unit
        // coefficient, i.e. a Laurent monomial.
        let (m, c) = match base.leading_term() {
            Some((m, c)) if base.len() == 1 && c == &Coeff::from_integer(1.into()) => (m.clone(), c.clone()),
            _ => return Err(PolyError::Parse { pos: at, msg: "negative power of a non-monomial".into() }),
        };
        let exps: Vec<i32> = m.exps().iter().map(|e| -e * k as i32).collect();
        Polynomial::monomial(self.ring, self.vars.clone(), Monomial::new(exps, &self.vars), c)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Polynomial::constant(self.ring, self.vars.clone(), Coeff::from_integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.params.get(name) {
                    Some(c) => Polynomial::constant(self.ring, self.vars.clone(), c.clone()),
                    None => Polynomial::var(self.ring, self.vars.clone(), name),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
