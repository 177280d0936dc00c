//! A small grammar for closed forms and order-1 equations.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary := ('+' | '-') unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := number | t | u | f | f' | name '(' expr ')' | '(' expr ')'
//! name  := exp | ln | log | sqrt | rev | d
//! ```
//! Runs of letters split into single variables, so `tff'` is `t*f*f'`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{q, Coeff, ExactSeries, Provenance};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Var(Var),
    Func(Func),
    Op(u8),
    Open,
    Close,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    T,
    U,
    F,
    Fp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Func {
    Exp,
    Ln,
    Sqrt,
    Rev,
    D,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let mut value: BigRational =
                    BigRational::from_integer(src[start..i].parse().unwrap_or_default());
                if i < b.len() && b[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    if fs == i && fs == start + 1 {
                        return Err(Error::parse(start, "malformed number"));
                    }
                    let frac: BigInt = if fs == i {
                        BigInt::zero()
                    } else {
                        src[fs..i].parse().unwrap()
                    };
                    let scale = BigInt::from(10).pow((i - fs) as u32);
                    value += BigRational::new(frac, scale);
                }
                out.push((start, Tok::Num(value)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &src[start..i];
                let mut j = i;
                while j < b.len() && b[j] == b' ' {
                    j += 1;
                }
                let func = match word {
                    "exp" => Some(Func::Exp),
                    "ln" | "log" => Some(Func::Ln),
                    "sqrt" => Some(Func::Sqrt),
                    "rev" => Some(Func::Rev),
                    "d" => Some(Func::D),
                    _ => None,
                };
                if let (Some(f), Some(b'(')) = (func, b.get(j)) {
                    out.push((start, Tok::Func(f)));
                    continue;
                }
                for (k, ch) in word.bytes().enumerate() {
                    let pos = start + k;
                    let v = match ch {
                        b't' => Var::T,
                        b'u' => Var::U,
                        b'f' if k + 1 == word.len() && b.get(i) == Some(&b'\'') => {
                            i += 1;
                            Var::Fp
                        }
                        b'f' => Var::F,
                        _ => {
                            return Err(Error::parse(
                                pos,
                                format!("unknown name '{}'", &src[pos..start + word.len()]),
                            ))
                        }
                    };
                    out.push((pos, Tok::Var(v)));
                }
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            _ => {
                return Err(Error::parse(
                    i,
                    format!("unexpected character '{}'", c as char),
                ))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Num(BigRational),
    Var(Var),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i64),
    Call(Func, Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn parse(src: &str) -> Result<Ast> {
        let mut p = Parser {
            toks: tokenize(src)?,
            pos: 0,
            len: src.len(),
        };
        let e = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(Error::parse(p.here(), "unexpected input"));
        }
        Ok(e)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ (b'+' | b'-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                Ast::Add(Box::new(acc), Box::new(rhs))
            } else {
                Ast::Sub(Box::new(acc), Box::new(rhs))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ast> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op(b'*')) => {
                    self.pos += 1;
                    acc = Ast::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Op(b'/')) => {
                    self.pos += 1;
                    acc = Ast::Div(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Func(_) | Tok::Open) => {
                    acc = Ast::Mul(Box::new(acc), Box::new(self.power()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Op(b'-')) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op(b'+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Tok::Op(b'^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op(b'-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.here();
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(Error::parse(at, "expected an integer exponent"));
            };
            self.pos += 1;
            if !n.is_integer() {
                return Err(Error::parse(at, "exponent must be an integer"));
            }
            let e = n
                .to_integer()
                .to_i64()
                .filter(|e| *e <= 10_000)
                .ok_or_else(|| Error::parse(at, "exponent too large"))?;
            return Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Ast::Var(v))
            }
            Some(Tok::Func(f)) => {
                self.pos += 1;
                self.expect_open()?;
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(Ast::Call(f, Box::new(inner)))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_close()?;
                Ok(inner)
            }
            _ => Err(Error::parse(at, "expected a number, variable or '('")),
        }
    }

    fn expect_open(&mut self) -> Result<()> {
        if self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.here(), "expected '('"))
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.here(), "expected ')'"))
        }
    }
}

fn eval_series<C: Coeff>(ast: &Ast, order: usize) -> Result<ExactSeries<C>> {
    Ok(match ast {
        Ast::Num(n) => ExactSeries::constant(C::from_rational(n.clone()), order),
        Ast::Var(Var::T) => ExactSeries::t(order),
        Ast::Var(Var::U) => {
            let u = C::parameter()
                .ok_or_else(|| Error::arg("the parameter u needs polynomial coefficients"))?;
            ExactSeries::constant(u, order)
        }
        Ast::Var(Var::F | Var::Fp) => {
            return Err(Error::arg("f and f' are only allowed in equations"))
        }
        Ast::Add(a, b) => eval_series::<C>(a, order)?.add(&eval_series(b, order)?),
        Ast::Sub(a, b) => eval_series::<C>(a, order)?.sub(&eval_series(b, order)?),
        Ast::Mul(a, b) => eval_series::<C>(a, order)?
            .mul(&eval_series(b, order)?)
            .truncate(order),
        Ast::Div(a, b) => {
            let num = eval_series::<C>(a, order)?;
            let den = eval_series::<C>(b, order)?;
            divide(&num, &den)?
        }
        Ast::Neg(a) => eval_series::<C>(a, order)?.neg(),
        Ast::Pow(a, e) => eval_series::<C>(a, order)?.pow(*e)?.truncate(order),
        Ast::Call(f, a) => {
            let x = eval_series::<C>(a, order)?;
            match f {
                Func::Exp => x.exp()?,
                Func::Ln => x.ln()?,
                Func::Sqrt => x.sqrt()?,
                Func::Rev => x.reverse()?,
                Func::D => {
                    // one more input coefficient keeps the order
                    let wide = eval_series::<C>(a, order + 1)?;
                    wide.derive()
                }
            }
        }
    })
}

/// Division that cancels a common power of `t` first, so `t/t` works.
fn divide<C: Coeff>(num: &ExactSeries<C>, den: &ExactSeries<C>) -> Result<ExactSeries<C>> {
    let Some(v) = den.valuation() else {
        return Err(Error::series("division by zero"));
    };
    if v == 0 {
        return num.div(den);
    }
    if num.valuation().is_some_and(|w| w < v) {
        return Err(Error::series("quotient is not a power series"));
    }
    let shift = |s: &ExactSeries<C>| {
        let c = s.coeffs()[v.min(s.order())..].to_vec();
        ExactSeries::new(
            if c.is_empty() { vec![C::zero()] } else { c },
            Provenance::Computed,
        )
    };
    let q = shift(num).div(&shift(den))?;
    // the quotient loses `v` orders of precision
    Ok(q)
}

/// Expands a closed form to the given order.
pub fn elementary<C: Coeff>(text: &str, order: usize) -> Result<ExactSeries<C>> {
    let ast = Parser::parse(text)?;
    Ok(eval_series::<C>(&ast, order)?.with_provenance(Provenance::Expression))
}

/// A polynomial in `t`, `f` and `f'` with rational coefficients; keys are
/// the exponents of `(t, f, f')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeExpression {
    terms: BTreeMap<(u32, u32, u32), BigRational>,
}

type Poly3 = BTreeMap<(u32, u32, u32), BigRational>;

fn poly_add(a: &Poly3, b: &Poly3, sign: i64) -> Poly3 {
    let mut out = a.clone();
    for (k, c) in b {
        *out.entry(*k).or_insert_with(<BigRational as Zero>::zero) += c * q(sign);
    }
    out.retain(|_, c| !Zero::is_zero(c));
    out
}

fn poly_mul(a: &Poly3, b: &Poly3) -> Poly3 {
    let mut out = Poly3::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
            *out.entry(k).or_insert_with(<BigRational as Zero>::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !Zero::is_zero(c));
    out
}

fn eval_poly(ast: &Ast) -> Result<Poly3> {
    let constant = |c: BigRational| {
        let mut p = Poly3::new();
        if !Zero::is_zero(&c) {
            p.insert((0, 0, 0), c);
        }
        p
    };
    Ok(match ast {
        Ast::Num(n) => constant(n.clone()),
        Ast::Var(v) => {
            let k = match v {
                Var::T => (1, 0, 0),
                Var::F => (0, 1, 0),
                Var::Fp => (0, 0, 1),
                Var::U => return Err(Error::arg("u is not allowed in equations")),
            };
            Poly3::from([(k, <BigRational as One>::one())])
        }
        Ast::Add(a, b) => poly_add(&eval_poly(a)?, &eval_poly(b)?, 1),
        Ast::Sub(a, b) => poly_add(&eval_poly(a)?, &eval_poly(b)?, -1),
        Ast::Mul(a, b) => poly_mul(&eval_poly(a)?, &eval_poly(b)?),
        Ast::Neg(a) => poly_add(&Poly3::new(), &eval_poly(a)?, -1),
        Ast::Div(a, b) => {
            let d = eval_poly(b)?;
            let c = match d.iter().next() {
                Some((&(0, 0, 0), c)) if d.len() == 1 => c.clone(),
                _ => return Err(Error::arg("equations may only divide by constants")),
            };
            eval_poly(a)?
                .into_iter()
                .map(|(k, x)| (k, x / &c))
                .collect()
        }
        Ast::Pow(a, e) => {
            if *e < 0 {
                return Err(Error::arg("equations need nonnegative exponents"));
            }
            let base = eval_poly(a)?;
            let mut acc = constant(<BigRational as One>::one());
            for _ in 0..*e {
                acc = poly_mul(&acc, &base);
            }
            acc
        }
        Ast::Call(..) => return Err(Error::arg("equations are polynomials in t, f and f'")),
    })
}

impl FromStr for OdeExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = eval_poly(&Parser::parse(s)?)?;
        if !terms.keys().any(|&(_, a, b)| a + b > 0) {
            return Err(Error::arg("an equation must involve f or f'"));
        }
        Ok(OdeExpression { terms })
    }
}

impl OdeExpression {
    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), BigRational> {
        &self.terms
    }

    /// Whether `f'` occurs.
    pub fn is_differential(&self) -> bool {
        self.terms.keys().any(|&(_, _, b)| b > 0)
    }

    /// `e(t, f, f')` as a series of order one less than `f`.
    pub fn evaluate<C: Coeff>(&self, f: &ExactSeries<C>) -> Result<ExactSeries<C>> {
        let n = f.order().saturating_sub(1);
        let t = ExactSeries::<C>::t(n);
        let fs = f.truncate(n);
        let fp = f.derive();
        let mut acc = ExactSeries::<C>::zero(n);
        for (&(a, b, c), coeff) in &self.terms {
            let mut term = ExactSeries::constant(C::from_rational(coeff.clone()), n);
            for _ in 0..a {
                term = term.mul(&t).truncate(n);
            }
            for _ in 0..b {
                term = term.mul(&fs).truncate(n);
            }
            for _ in 0..c {
                term = term.mul(&fp).truncate(n);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for OdeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(a, b, c), coeff) in self.terms.iter().rev() {
            let factors: Vec<String> = [("t", a), ("f", b), ("f'", c)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if coeff.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
