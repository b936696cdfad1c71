//! Text forms for fields, elements and polynomials.
//!
//! Elements and polynomials share one expression grammar: integer literals,
//! generator symbols (`t`, `u`, ... one per tower level), the polynomial
//! variable `x`, `+ - * ^` and parentheses. Juxtaposition multiplies, so
//! `2x^2` and `2*x^2` are the same.

use crate::error::{Error, Result};
use crate::field::{Fe, Field, SYMBOLS};
use crate::poly::Poly;

/// Renders ascending `(coeff text, coeff is one, exponent)` terms in
/// descending order.
pub(crate) fn format_terms(terms: &[(String, bool, usize)], sym: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = terms
        .iter()
        .rev()
        .map(|(c, is_one, e)| {
            if *e == 0 {
                return c.clone();
            }
            let mon = if *e == 1 {
                sym.to_string()
            } else {
                format!("{sym}^{e}")
            };
            if *is_one {
                mon
            } else if c.chars().all(|ch| ch.is_ascii_alphanumeric()) {
                format!("{c}*{mon}")
            } else {
                format!("({c})*{mon}")
            }
        })
        .collect();
    parts.join("+")
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| Error::Parse(format!("integer {text} too large")))?;
            out.push(Token::Int(v));
        } else if c.is_ascii_alphabetic() {
            out.push(Token::Ident(c.to_string()));
            i += 1;
        } else if "+-*^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Int(u64),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u64),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let implicit = matches!(
                self.peek(),
                Some(Token::Int(_) | Token::Ident(_) | Token::Op('('))
            );
            if self.eat('*') || implicit {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: tokenize(s)?,
        pos: 0,
    };
    if parser.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            parser.tokens[parser.pos]
        )));
    }
    Ok(e)
}

fn generator_for(field: &Field, sym: &str) -> Result<Fe> {
    let levels = field.levels();
    let depth = SYMBOLS
        .iter()
        .position(|&s| s == sym)
        .map(|i| i + 1)
        .filter(|&d| d < levels.len())
        .ok_or_else(|| Error::Parse(format!("unknown symbol {sym:?} for field {field}")))?;
    Ok(levels[depth].generator().expect("extension level"))
}

fn int_elem(field: &Field, v: u64) -> Fe {
    Fe(v % field.characteristic())
}

fn eval_elem(field: &Field, e: &Expr) -> Result<Fe> {
    Ok(match e {
        Expr::Int(v) => int_elem(field, *v),
        Expr::Sym(s) => generator_for(field, s)?,
        Expr::Add(a, b) => field.add(eval_elem(field, a)?, eval_elem(field, b)?),
        Expr::Sub(a, b) => field.sub(eval_elem(field, a)?, eval_elem(field, b)?),
        Expr::Mul(a, b) => field.mul(eval_elem(field, a)?, eval_elem(field, b)?),
        Expr::Neg(a) => field.neg(eval_elem(field, a)?),
        Expr::Pow(a, k) => field.pow(eval_elem(field, a)?, *k as u128),
    })
}

fn eval_poly(field: &Field, e: &Expr) -> Result<Poly> {
    Ok(match e {
        Expr::Int(v) => Poly::constant(field.clone(), int_elem(field, *v)),
        Expr::Sym(s) if s == "x" => Poly::x(field.clone()),
        Expr::Sym(s) => Poly::constant(field.clone(), generator_for(field, s)?),
        Expr::Add(a, b) => eval_poly(field, a)?.add(&eval_poly(field, b)?)?,
        Expr::Sub(a, b) => eval_poly(field, a)?.sub(&eval_poly(field, b)?)?,
        Expr::Mul(a, b) => eval_poly(field, a)?.mul(&eval_poly(field, b)?)?,
        Expr::Neg(a) => eval_poly(field, a)?.neg(),
        Expr::Pow(a, k) => eval_poly(field, a)?.pow(*k),
    })
}

impl Field {
    /// Parses an element in generator notation, e.g. `t+1`.
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        eval_elem(self, &parse_expr(s)?)
    }

    /// Parses a descriptor: `p`, `p^k`, `p^k:modulus`, optionally followed
    /// by `/k` (default extension) or `/modulus` per further tower level.
    pub fn parse(desc: &str) -> Result<Field> {
        let mut parts = desc.split('/');
        let head = parts.next().unwrap_or_default().trim();
        let (power, modulus) = match head.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b)),
            None => (head, None),
        };
        let (p, k) = match power.split_once('^') {
            Some((p, k)) => (parse_u64(p)?, parse_u64(k)? as u32),
            None => (parse_u64(power)?, 1),
        };
        let prime = Field::prime(p)?;
        let mut field = match modulus {
            None => Field::default_extension(&prime, k)?,
            Some(m) => {
                let m = Poly::parse(&prime, m)?;
                if m.degree() != Some(k as usize) {
                    return Err(Error::WrongDegree {
                        expected: k as usize,
                        got: m.degree().unwrap_or(0),
                    });
                }
                Field::extend(&prime, &m)?
            }
        };
        for part in parts {
            let part = part.trim();
            field = match part.parse::<u32>() {
                Ok(k) => Field::default_extension(&field, k)?,
                Err(_) => Field::extend(&field, &Poly::parse(&field, part)?)?,
            };
        }
        Ok(field)
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}")))
}

impl Poly {
    /// Parses a polynomial in `x`, e.g. `x^4+x+1` or `(t+1)*x^2 + t`.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        eval_poly(field, &parse_expr(s)?)
    }
}
