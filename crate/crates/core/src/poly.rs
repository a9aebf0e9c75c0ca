//! Multivariate polynomials over a [`FieldSpec`] under graded reverse
//! lexicographic order, and the text grammar used for presentations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomial arity mismatch ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("invalid ring: {0}")]
    InvalidContext(String),
}

/// Exponent vector with its cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial::new(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` if this is `x_i^e` with `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nonzero = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        let (i, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(i)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, names }
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in self.names.iter().zip(&self.mono.exps) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded reverse lexicographic comparison.
pub fn monomial_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
    if a.arity() != b.arity() {
        return Err(PolyError::ArityMismatch(a.arity(), b.arity()));
    }
    Ok(grevlex(a, b))
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        for (x, y) in a.exps.iter().zip(&b.exps).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity());
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient field and variable names of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    field: FieldSpec,
    var_names: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: Into<String>>(field: FieldSpec, names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        let var_names: Vec<String> = names.into_iter().map(Into::into).collect();
        if var_names.is_empty() {
            return Err(PolyError::InvalidContext("no variables".into()));
        }
        for (i, n) in var_names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::InvalidContext(format!("`{n}` is not an identifier")));
            }
            if var_names[..i].contains(n) {
                return Err(PolyError::InvalidContext(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(RingContext { field, var_names }))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }
}

/// Polynomial as a strictly descending term list with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ctx: Arc<RingContext>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_ring(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Scalar) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn var(ctx: &Arc<RingContext>, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.nvars(), i), ctx.field.one())
    }

    pub fn term(ctx: &Arc<RingContext>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.arity(), ctx.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms(ctx: &Arc<RingContext>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ctx.nvars());
            add_into(&mut acc, m, &c);
        }
        Self::from_map(ctx, acc)
    }

    pub(crate) fn from_map(ctx: &Arc<RingContext>, map: BTreeMap<Monomial, Scalar>) -> Self {
        let p = Polynomial {
            ctx: ctx.clone(),
            terms: map.into_iter().rev().collect(),
        };
        p.debug_check();
        p
    }

    /// Takes terms already sorted strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ctx: &Arc<RingContext>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let p = Polynomial {
            ctx: ctx.clone(),
            terms,
        };
        p.debug_check();
        p
    }

    fn debug_check(&self) {
        debug_assert!(
            self.terms.windows(2).all(|w| w[0].0 > w[1].0),
            "terms not strictly descending"
        );
        debug_assert!(self.terms.iter().all(|(_, c)| !c.is_zero()), "zero coefficient stored");
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_coeff(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ctx.field.zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inverse().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-&self.ctx.field.one())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_into(&mut acc, ma.mul(mb), &(ca * cb));
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(&self.ctx, self.ctx.field.one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Self::from_sorted(&self.ctx, out)
    }
}

pub(crate) fn add_into(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c.clone());
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from the same ring")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from the same ring")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from the same ring")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ctx.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display_with(names))?;
            } else {
                write!(f, "{a}*{}", m.display_with(names))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(PolyError::Syntax {
                    position: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((start, t));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<RingContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expression(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        match self.peek() {
            None | Some(Tok::Plus) | Some(Tok::Minus) | Some(Tok::RParen) => Ok(acc),
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                self.err("implicit multiplication is not allowed; use `*`")
            }
            Some(t) => {
                let t = format!("{t:?}");
                self.err(format!("unexpected token {t}"))
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let field = self.ctx.field();
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Minus => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Tok::LParen => {
                self.pos += 1;
                let e = self.expression()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Int(n) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::Slash) {
                    return Ok(Polynomial::constant(self.ctx, field.from_bigint(&n)));
                }
                self.pos += 1;
                let Some(Tok::Int(d)) = self.peek().cloned() else {
                    return self.err("expected a positive integer denominator");
                };
                self.pos += 1;
                let literal = format!("{n}/{d}");
                if field.is_finite() || d == BigInt::from(0) {
                    return Err(PolyError::BadCoefficient(literal));
                }
                let c = field
                    .from_ratio(&n, &d)
                    .map_err(|_| PolyError::BadCoefficient(literal))?;
                Ok(Polynomial::constant(self.ctx, c))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                let i = self
                    .ctx
                    .var_index(&name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                let mut e = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let Some(Tok::Int(n)) = self.peek().cloned() else {
                        return self.err("expected a natural exponent after `^`");
                    };
                    e = match u32::try_from(&n) {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                }
                let mut exps = vec![0; self.ctx.nvars()];
                exps[i] = e;
                Ok(Polynomial::term(self.ctx, Monomial::new(exps), field.one()))
            }
            t => self.err(format!("unexpected token {t:?}")),
        }
    }
}

/// Parses `src` per the presentation grammar:
///
/// ```text
/// expression  ::= term (('+'|'-') term)*
/// term        ::= factor ('*' factor)*
/// factor      ::= coefficient | variable ('^' natural)? | '(' expression ')' | '-' factor
/// coefficient ::= integer | integer '/' positive-integer      (ℚ only)
/// ```
pub fn parse_poly(src: &str, ctx: &Arc<RingContext>) -> Result<Polynomial, PolyError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        ctx,
    };
    let out = p.expression()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(field: FieldSpec, names: &[&str]) -> Arc<RingContext> {
        RingContext::new(field, names.iter().copied()).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let x = Monomial::new(vec![1, 0]);
        let y2 = Monomial::new(vec![0, 2]);
        assert_eq!(monomial_cmp(&x2, &xy), Ok(Ordering::Greater));
        assert_eq!(monomial_cmp(&x, &y2), Ok(Ordering::Less));
        assert_eq!(monomial_cmp(&xy, &xy), Ok(Ordering::Equal));
        assert_eq!(monomial_cmp(&x, &Monomial::one(3)), Err(PolyError::ArityMismatch(2, 3)));
        // grevlex, not lex: x*z^2 < y^3 in three variables
        assert!(Monomial::new(vec![1, 0, 2]) < Monomial::new(vec![0, 3, 0]));
    }

    #[test]
    fn char_two_square() {
        let r = ctx(FieldSpec::prime(2).unwrap(), &["x", "y"]);
        let s = parse_poly("x+y", &r).unwrap();
        assert_eq!((&s * &s).to_string(), "x^2 + y^2");
    }

    #[test]
    fn expansion_and_inverse() {
        let r = ctx(FieldSpec::Rationals, &["x1", "x2", "x3"]);
        let s = parse_poly("x1 + x2 + x3", &r).unwrap();
        let x3 = Polynomial::var(&r, 2);
        assert_eq!((&s * &x3).to_string(), "x1*x3 + x2*x3 + x3^2");
        assert!((&s + &s.neg()).is_zero());
        assert_eq!(parse_poly("x1*x2 + x3^2", &r).unwrap().terms().len(), 2);
    }

    #[test]
    fn parse_examples() {
        let r = ctx(FieldSpec::Rationals, &["u", "v", "x", "y", "z"]);
        let p = parse_poly("x^2 - 2*v*y", &r).unwrap();
        assert_eq!(p.to_string(), "x^2 - 2*v*y");
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert_eq!(parse_poly("1/2*u - (3/6)*u", &r).unwrap(), Polynomial::zero(&r));
        assert_eq!(parse_poly("-(u - v)", &r).unwrap().to_string(), "-u + v");
        // exponents attach to variables only
        assert!(matches!(parse_poly("(u - v)^2", &r), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn parse_errors() {
        let q = ctx(FieldSpec::Rationals, &["x", "y"]);
        let f2 = ctx(FieldSpec::prime(2).unwrap(), &["x", "y"]);
        assert!(matches!(
            parse_poly("x y", &q),
            Err(PolyError::Syntax { position: 2, .. })
        ));
        assert!(matches!(parse_poly("2x", &q), Err(PolyError::Syntax { .. })));
        assert_eq!(parse_poly("x + w", &q), Err(PolyError::UnknownVariable("w".into())));
        assert_eq!(parse_poly("1/2*x", &f2), Err(PolyError::BadCoefficient("1/2".into())));
        assert_eq!(parse_poly("1/0", &q), Err(PolyError::BadCoefficient("1/0".into())));
        assert!(matches!(parse_poly("(x + y", &q), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x^", &q), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("", &q), Err(PolyError::Syntax { .. })));
        assert!(matches!(
            parse_poly("x $ y", &q),
            Err(PolyError::Syntax { position: 2, .. })
        ));
    }

    #[test]
    fn context_mismatch() {
        let a = ctx(FieldSpec::Rationals, &["x"]);
        let b = ctx(FieldSpec::Rationals, &["y"]);
        assert_eq!(
            Polynomial::var(&a, 0).try_add(&Polynomial::var(&b, 0)),
            Err(PolyError::ContextMismatch)
        );
        assert!(RingContext::new(FieldSpec::Rationals, ["x", "x"]).is_err());
        assert!(RingContext::new(FieldSpec::Rationals, Vec::<String>::new()).is_err());
    }
}
