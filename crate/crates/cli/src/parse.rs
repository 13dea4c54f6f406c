//! Element expressions and integer polynomials.
//!
//! Elements: signed rationals, `sqrt(k)`, `+ - * / ( ) ^` with integer
//! exponents. Every `sqrt` must land in the same quadratic field.

use std::fmt;

use cfperiod_core::qfield::{rat_int, square_split};
use cfperiod_core::{QuadElem, QuadField, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// A parsed element: rational, or in a fixed real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Quad(QuadElem),
}

impl Value {
    pub fn in_field(&self, k: QuadField) -> Result<QuadElem, String> {
        match self {
            Value::Rational(r) => Ok(k.rational(r.clone())),
            Value::Quad(x) if x.field() == k => Ok(x.clone()),
            Value::Quad(x) => Err(format!("element lives in Q(sqrt {}), expected Q(sqrt {})", x.d(), k.d())),
        }
    }

    pub fn field(&self) -> Option<QuadField> {
        match self {
            Value::Rational(_) => None,
            Value::Quad(x) => Some(x.field()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{}", cfperiod_core::qfield::fmt_rational(r)),
            Value::Quad(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Node {
    Num(BigInt),
    Sqrt(Box<Node>, usize),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, i64, usize),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, chars: src.char_indices().collect(), pos: 0 }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.src.len())
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map(|i| before[i + 1..].chars().count()).unwrap_or(before.chars().count()) + 1;
        ParseError { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.offset(), message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
                None => Err(self.error(format!("expected '{c}', found end of input"))),
            }
        }
    }

    fn digits(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> PResult<Node> {
        let mut lhs = self.term()?;
        loop {
            let at = self.offset();
            if self.eat('+') {
                lhs = Node::Bin('+', Box::new(lhs), Box::new(self.term()?), at);
            } else if self.eat('-') {
                lhs = Node::Bin('-', Box::new(lhs), Box::new(self.term()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Node> {
        let mut lhs = self.unary()?;
        loop {
            let at = self.offset();
            if self.eat('*') {
                lhs = Node::Bin('*', Box::new(lhs), Box::new(self.unary()?), at);
            } else if self.eat('/') {
                lhs = Node::Bin('/', Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Node> {
        let base = self.atom()?;
        let at = self.offset();
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = self.digits()?;
        if paren {
            self.expect(')')?;
        }
        let e = e.to_i64().filter(|e| *e <= 1 << 20).ok_or_else(|| self.error_at(at, "exponent too large"))?;
        Ok(Node::Pow(Box::new(base), if neg { -e } else { e }, at))
    }

    fn atom(&mut self) -> PResult<Node> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Node::Num(self.digits()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.offset();
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
                if name != "sqrt" {
                    return Err(self.error_at(at, format!("unknown name '{name}'")));
                }
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Node::Sqrt(Box::new(arg), at))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

struct Eval<'a> {
    parser: &'a Parser<'a>,
    field: Option<QuadField>,
}

impl Eval<'_> {
    fn rational(&self, n: &Node) -> PResult<Rational> {
        match n {
            Node::Num(v) => Ok(rat_int(v.clone())),
            Node::Neg(a) => Ok(-self.rational(a)?),
            Node::Sqrt(arg, at) => match self.sqrt_parts(arg, *at)? {
                (_, core) if core.is_zero() => Ok(Rational::zero()),
                (f, core) if core.is_one() => Ok(f),
                _ => Err(self.parser.error_at(*at, "nested sqrt is not supported")),
            },
            Node::Bin(op, a, b, at) => {
                let (x, y) = (self.rational(a)?, self.rational(b)?);
                Ok(match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ => {
                        if y.is_zero() {
                            return Err(self.parser.error_at(*at, "division by zero"));
                        }
                        x / y
                    }
                })
            }
            Node::Pow(a, e, at) => {
                let x = self.rational(a)?;
                if x.is_zero() && *e < 0 {
                    return Err(self.parser.error_at(*at, "division by zero"));
                }
                Ok(num_traits::pow::Pow::pow(x, *e as i32))
            }
        }
    }

    /// `sqrt(r) = f * sqrt(core) / den` with `core` squarefree.
    fn sqrt_parts(&self, arg: &Node, at: usize) -> PResult<(Rational, BigInt)> {
        let r = self.rational(arg)?;
        if r.is_negative() {
            return Err(self.parser.error_at(at, "sqrt of a negative number"));
        }
        let nd = r.numer() * r.denom();
        let (f, core) = square_split(&nd);
        Ok((Rational::new(f, r.denom().clone()), core))
    }

    fn collect_field(&mut self, n: &Node) -> PResult<()> {
        match n {
            Node::Num(_) => Ok(()),
            Node::Neg(a) | Node::Pow(a, _, _) => self.collect_field(a),
            Node::Bin(_, a, b, _) => {
                self.collect_field(a)?;
                self.collect_field(b)
            }
            Node::Sqrt(arg, at) => {
                let (_, core) = self.sqrt_parts(arg, *at)?;
                if core.is_one() || core.is_zero() {
                    return Ok(());
                }
                let d = core.to_i64().ok_or_else(|| self.parser.error_at(*at, "field parameter too large"))?;
                match self.field {
                    Some(k) if k.d() != d => Err(self.parser.error_at(
                        *at,
                        format!("sqrt({d}) is not in Q(sqrt {}); mixed fields are not supported", k.d()),
                    )),
                    Some(_) => Ok(()),
                    None => {
                        self.field = Some(QuadField::new(d).map_err(|e| self.parser.error_at(*at, e.to_string()))?);
                        Ok(())
                    }
                }
            }
        }
    }

    fn quad(&self, k: QuadField, n: &Node) -> PResult<QuadElem> {
        match n {
            Node::Num(v) => Ok(k.rational(rat_int(v.clone()))),
            Node::Neg(a) => Ok(-&self.quad(k, a)?),
            Node::Sqrt(arg, at) => {
                let (f, core) = self.sqrt_parts(arg, *at)?;
                if core.is_one() || core.is_zero() {
                    Ok(k.rational(if core.is_zero() { Rational::zero() } else { f }))
                } else {
                    Ok(k.elem(Rational::zero(), f))
                }
            }
            Node::Bin(op, a, b, at) => {
                let (x, y) = (self.quad(k, a)?, self.quad(k, b)?);
                Ok(match op {
                    '+' => &x + &y,
                    '-' => &x - &y,
                    '*' => &x * &y,
                    _ => {
                        if y.is_zero() {
                            return Err(self.parser.error_at(*at, "division by zero"));
                        }
                        &x * &y.inv().expect("nonzero")
                    }
                })
            }
            Node::Pow(a, e, at) => self.quad(k, a)?.pow(*e).map_err(|e| self.parser.error_at(*at, e.to_string())),
        }
    }
}

fn parse_tree(src: &str) -> PResult<(Parser<'_>, Node)> {
    let mut p = Parser::new(src);
    let node = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    Ok((p, node))
}

/// Parses an element; the field is inferred from the `sqrt` arguments.
pub fn parse_element(src: &str) -> PResult<Value> {
    parse_element_in(src, None)
}

/// Parses an element, forcing the field if `field` is given.
pub fn parse_element_in(src: &str, field: Option<QuadField>) -> PResult<Value> {
    let (p, node) = parse_tree(src)?;
    let mut ev = Eval { parser: &p, field };
    ev.collect_field(&node)?;
    match ev.field {
        None => Ok(Value::Rational(ev.rational(&node)?)),
        Some(k) => {
            let x = ev.quad(k, &node)?;
            Ok(match (field, x.as_rational()) {
                (None, Some(r)) => Value::Rational(r),
                _ => Value::Quad(x),
            })
        }
    }
}

/// A rational literal such as `-3`, `7/2` or `0`.
pub fn parse_rational(src: &str) -> PResult<Rational> {
    let (p, node) = parse_tree(src)?;
    let ev = Eval { parser: &p, field: None };
    ev.rational(&node)
}

/// An integer polynomial in `x` such as `2x^2+1` or `3*X^3 - x`.
/// Coefficients are returned constant term first.
pub fn parse_int_poly(src: &str) -> PResult<Vec<BigInt>> {
    let mut p = Parser::new(src);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let sign = if p.eat('-') {
            -1
        } else if p.eat('+') || first {
            1
        } else {
            break;
        };
        first = false;
        let mut c = BigInt::one();
        let mut have_coeff = false;
        if p.peek().is_some_and(|c| c.is_ascii_digit()) {
            c = p.digits()?;
            have_coeff = true;
            p.eat('*');
        }
        let mut deg = 0usize;
        if matches!(p.peek(), Some('x') | Some('X')) {
            p.pos += 1;
            deg = 1;
            if p.eat('^') {
                let at = p.offset();
                deg = p.digits()?.to_usize().filter(|d| *d <= 4096).ok_or_else(|| p.error_at(at, "degree too large"))?;
            }
        } else if !have_coeff {
            return Err(p.error("expected a coefficient or x"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += c * sign;
    }
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(p.error_at(0, "zero polynomial"));
    }
    Ok(coeffs)
}

pub fn eval_int_poly(coeffs: &[BigInt], n: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * n + c)
}
