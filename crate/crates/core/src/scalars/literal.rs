//! Scalar literals as typed on the command line.
//!
//! Accepted forms include `p/q`, `sqrt(p/q)`, `(p+q*sqrt(d))/r`, `golden`
//! and decimal floats; in general any expression built from numbers,
//! `golden`, `sqrt(..)`, parentheses and `+ - * /`. The result stays exact
//! unless a decimal point appears or a square root leaves `Q(√d)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::quadratic::ArithOp;
use super::{sqrt_exact, Quadratic, ScalarError};

#[derive(Clone, Debug, PartialEq)]
pub enum Literal {
    Exact(Quadratic),
    Float(f64),
}

impl Literal {
    pub fn as_exact(&self) -> Option<&Quadratic> {
        match self {
            Literal::Exact(q) => Some(q),
            Literal::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Literal::Exact(q) => q.to_f64(),
            Literal::Float(x) => *x,
        }
    }

    fn binary(
        self,
        rhs: Literal,
        exact: impl Fn(&Quadratic, &Quadratic) -> Result<Quadratic, ScalarError>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Result<Literal, ScalarError> {
        match (self, rhs) {
            (Literal::Exact(a), Literal::Exact(b)) => exact(&a, &b).map(Literal::Exact),
            (a, b) => Ok(Literal::Float(float(a.to_f64(), b.to_f64()))),
        }
    }
}

pub fn parse_literal(src: &str) -> Result<Literal, ScalarError> {
    let mut p = Parser {
        src,
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        let end = self.pos + n;
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Literal, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = acc.binary(rhs, |a, b| a.arith(b, ArithOp::Add), |a, b| a + b)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.binary(rhs, |a, b| a.arith(b, ArithOp::Sub), |a, b| a - b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Literal, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = acc.binary(rhs, |a, b| a.arith(b, ArithOp::Mul), |a, b| a * b)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                if rhs.to_f64() == 0.0 {
                    return Err(ScalarError::DivisionByZero);
                }
                acc = acc.binary(rhs, |a, b| a.arith(b, ArithOp::Div), |a, b| a / b)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Literal, ScalarError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Literal::Exact(q) => Literal::Exact(-q),
                Literal::Float(x) => Literal::Float(-x),
            });
        }
        self.eat('+');
        self.primary()
    }

    fn primary(&mut self) -> Result<Literal, ScalarError> {
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(v);
        }
        if self.keyword("golden") {
            return Ok(Literal::Exact(Quadratic::golden()));
        }
        if self.keyword("sqrt") {
            if !self.eat('(') {
                return Err(self.err("expected `(` after sqrt"));
            }
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            return match v {
                Literal::Exact(q) => {
                    if let Some(r) = q.to_rational() {
                        sqrt_exact(&r).map(Literal::Exact)
                    } else if let Some(root) = q.sqrt_in_field() {
                        Ok(Literal::Exact(root))
                    } else if q.to_f64() >= 0.0 {
                        Ok(Literal::Float(q.to_f64().sqrt()))
                    } else {
                        Err(ScalarError::NegativeSqrt(q.to_string()))
                    }
                }
                Literal::Float(x) if x >= 0.0 => Ok(Literal::Float(x.sqrt())),
                Literal::Float(x) => Err(ScalarError::NegativeSqrt(x.to_string())),
            };
        }
        self.number()
    }

    fn number(&mut self) -> Result<Literal, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let mut float = false;
        if self.eat('.') {
            float = true;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            float = true;
            self.pos += 1;
            if !self.eat('-') {
                self.eat('+');
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if float {
            text.parse::<f64>()
                .map(Literal::Float)
                .map_err(|e| self.err(&e.to_string()))
        } else {
            let n: BigInt = text.parse().map_err(|_| self.err("bad integer"))?;
            Ok(Literal::Exact(Quadratic::rational(BigRational::from_integer(n))))
        }
    }
}
