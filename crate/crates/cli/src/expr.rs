//! A small language for algebra elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom
//! atom  := INT ('/' INT)? | 'p(' vertex ')' | 's(' edge ('.' edge)* ')' | 'adj(' expr ')' | '(' expr ')'
//! ```
//!
//! `adj` is the involution. A rational on the left of `*` scales the right operand;
//! `a - b` reads as `a + -1*b`. The parser never builds a product with a rational left
//! factor, and printing relies on that.

use std::fmt;

use kpgraph::algebra::{gen, mul, unit, Element, Scalar};
use kpgraph::graph::KGraphPresentation;
use kpgraph::path::path_from_ids;
use kpgraph::{Error, Result};
use num::{BigInt, One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Scalar),
    P(String),
    S(Vec<String>),
    Adj(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(Scalar, Box<Expr>),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    /// Raw text up to the next `)`.
    fn raw_argument(&mut self) -> Result<&'a str> {
        let rest = self.rest();
        let end = rest.find(')').ok_or_else(|| self.error("unclosed parenthesis"))?;
        let arg = rest[..end].trim();
        if arg.is_empty() || arg.contains(char::is_whitespace) || arg.contains('(') {
            return Err(self.error("expected an identifier"));
        }
        self.pos += end + 1;
        Ok(arg)
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let n = self.rest()[..len].parse().ok();
        self.pos += len;
        n
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat("-") {
                let rhs = negate(self.term()?);
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while self.eat("*") {
            let rhs = self.unary()?;
            acc = match acc {
                Expr::Rational(r) => Expr::Scale(r, Box::new(rhs)),
                other => Expr::Mul(Box::new(other), Box::new(rhs)),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        if let Some(p) = self.integer() {
            let q = if self.eat("/") {
                self.integer().ok_or_else(|| self.error("expected a denominator"))?
            } else {
                BigInt::one()
            };
            if q.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Expr::Rational(Scalar::new(p, q)));
        }
        if self.eat("adj(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Adj(Box::new(inner)));
        }
        if self.eat("p(") {
            return Ok(Expr::P(self.raw_argument()?.to_string()));
        }
        if self.eat("s(") {
            let ids: Vec<String> = self.raw_argument()?.split('.').map(str::to_string).collect();
            if ids.iter().any(String::is_empty) {
                return Err(self.error("empty edge id in path"));
            }
            return Ok(Expr::S(ids));
        }
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        Err(self.error("expected a number, p(..), s(..), adj(..) or a parenthesis"))
    }
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Rational(r) => Expr::Rational(-r),
        other => Expr::Scale(-Scalar::one(), Box::new(other)),
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) => 1,
            Expr::Mul(..) | Expr::Scale(..) => 2,
            _ => 3,
        }
    }
}

fn rational(r: &Scalar) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| {
            if e.precedence() < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Rational(r) => write!(f, "{}", rational(r)),
            Expr::P(v) => write!(f, "p({v})"),
            Expr::S(ids) => write!(f, "s({})", ids.join(".")),
            Expr::Adj(e) => write!(f, "adj({e})"),
            Expr::Add(a, b) => write!(f, "{} + {}", a, wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Scale(r, e) => write!(f, "{}*{}", rational(r), wrap(e, 3)),
        }
    }
}

/// Evaluates `e` in the Kumjian-Pask algebra of `g`. A bare rational needs a unit, so it
/// is only allowed on graphs with finitely many vertices.
pub fn eval(g: &KGraphPresentation, e: &Expr) -> Result<Element> {
    Ok(match e {
        Expr::Rational(r) => {
            let vs = g.finite_vertices().ok_or_else(|| {
                Error::Unsupported("a bare scalar needs a unit; this graph has infinitely many vertices".into())
            })?;
            let one = vs.iter().try_fold(Element::zero(g), |acc, v| acc.add(&unit(g, v)?))?;
            one.scale(r)
        }
        Expr::P(v) => unit(g, &v.as_str().into())?,
        Expr::S(ids) => {
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            gen(g, &path_from_ids(g, &ids)?)?
        }
        Expr::Adj(a) => eval(g, a)?.involution(),
        Expr::Add(a, b) => eval(g, a)?.add(&eval(g, b)?)?,
        Expr::Mul(a, b) => mul(g, &eval(g, a)?, &eval(g, b)?)?,
        Expr::Scale(r, a) => eval(g, a)?.scale(r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let e = parse("adj(s(e))*s(e)").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Adj(Box::new(Expr::S(vec!["e".into()])))),
                Box::new(Expr::S(vec!["e".into()]))
            )
        );
        assert_eq!(
            parse("2*p(v)").unwrap(),
            Expr::Scale(Scalar::from_integer(2.into()), Box::new(Expr::P("v".into())))
        );
        assert_eq!(parse("s(a.b)").unwrap(), Expr::S(vec!["a".into(), "b".into()]));
        assert_eq!(parse("p(1,2)").unwrap(), Expr::P("1,2".into()));
        assert!(parse("s()").is_err());
        assert!(parse("p(v) p(w)").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("s(a..b)").is_err());
    }

    #[test]
    fn precedence() {
        let e = parse("p(a) + p(b)*p(c)").unwrap();
        assert!(matches!(e, Expr::Add(_, ref r) if matches!(**r, Expr::Mul(..))));
        let e = parse("(p(a) + p(b))*p(c)").unwrap();
        assert!(matches!(e, Expr::Mul(ref l, _) if matches!(**l, Expr::Add(..))));
        assert_eq!(parse("p(a) - p(b)").unwrap().to_string(), "p(a) + -1*p(b)");
    }
}
