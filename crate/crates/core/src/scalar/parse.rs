//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ['-'] atom
//! atom   := INT | 'sqrt' '(' ['-'] INT ')' | '(' expr ')'
//! ```
//!
//! `p/q` is covered by `term`. A negative radicand is accepted so that
//! rendered imaginary values parse back.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::ball::Ball;
use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sqrt(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Exact where possible, otherwise an interval at the working precision.
    pub fn eval(&self) -> Result<Scalar> {
        Ok(match self {
            Expr::Int(n) => Scalar::from_bigint(n.clone()),
            Expr::Sqrt(n) => Scalar::sqrt_int(*n),
            Expr::Neg(e) => e.eval()?.neg_ref(),
            Expr::Add(a, b) => a.eval()?.add_ref(&b.eval()?),
            Expr::Sub(a, b) => a.eval()?.sub_ref(&b.eval()?),
            Expr::Mul(a, b) => a.eval()?.mul_ref(&b.eval()?),
            Expr::Div(a, b) => a.eval()?.div_ref(&b.eval()?)?,
        })
    }

    /// Evaluates every node as a ball at `prec` bits, never using exact arithmetic.
    pub fn eval_interval(&self, prec: u32) -> Result<Ball> {
        Ok(match self {
            Expr::Int(n) => Ball::from_integer(n, prec),
            Expr::Sqrt(n) => Ball::sqrt_of_integer(&BigInt::from(*n), prec),
            Expr::Neg(e) => e.eval_interval(prec)?.neg(),
            Expr::Add(a, b) => a.eval_interval(prec)?.add(&b.eval_interval(prec)?),
            Expr::Sub(a, b) => a.eval_interval(prec)?.sub(&b.eval_interval(prec)?),
            Expr::Mul(a, b) => a.eval_interval(prec)?.mul(&b.eval_interval(prec)?),
            Expr::Div(a, b) => a.eval_interval(prec)?.div(&b.eval_interval(prec)?)?,
        })
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sqrt(n) => write!(f, "sqrt({n})"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.atom()?)));
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return self.error("unknown identifier");
                }
                self.pos += 4;
                self.expect(b'(')?;
                let negative = if self.peek() == Some(b'-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let at = self.pos;
                let n = self.integer()?;
                let n = if negative { -n } else { n };
                let n = match n.to_i64() {
                    Some(n) => n,
                    None => {
                        self.pos = at;
                        return self.error("radicand out of range");
                    }
                };
                self.expect(b')')?;
                Ok(if n.is_zero() { Expr::Int(BigInt::zero()) } else { Expr::Sqrt(n) })
            }
            Some(_) => self.error("unexpected character"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Parses and evaluates `text`. The value is exact when it lies in `Q` or a
/// single `Q(sqrt(d))`; otherwise it is a ball at the working precision.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    parse_expr(text)?.eval()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let phi = parse_scalar("(1+sqrt(5))/2").unwrap();
        assert_eq!(phi.render(), "1/2+1/2*sqrt(5)");
        assert_eq!(parse_scalar("3/6").unwrap(), Scalar::from_ratio(1, 2).unwrap());
        assert_eq!(parse_scalar("sqrt(2)*sqrt(2)").unwrap(), Scalar::from_int(2));
        assert_eq!(parse_scalar(" - 4 / ( 2 ) ").unwrap(), Scalar::from_int(-2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_scalar("1 + * 2"),
            Err(Error::Syntax { position: 4, message: "unexpected character".into() })
        );
        assert!(matches!(parse_scalar("(1+2"), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_scalar("sqr(2)"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_scalar("1 2"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_scalar(""), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(parse_scalar("1/(2-2)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn incompatible_radicals_fall_back_to_intervals() {
        let x = parse_scalar("sqrt(2)+sqrt(3)").unwrap();
        assert!(!x.is_exact());
        assert!((x.approx().0 - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn imaginary_radicands_round_trip() {
        let w = parse_scalar("(-1+sqrt(-3))/2").unwrap();
        assert_eq!(parse_scalar(&w.render()).unwrap(), w);
    }
}
