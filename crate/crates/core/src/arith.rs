//! Exact scalars over ℚ and 𝔽ₚ, and polynomials in auxiliary indeterminates
//! used to compute ranks at a generic point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    InvalidModulus(u64),
    #[error("unknown field `{0}` (expected `Q` or `F<p>`)")]
    UnknownField(String),
}

/// Coefficient field of a presentation.
///
/// Construct prime fields through [`FieldSpec::prime`], which validates the
/// modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

const MAX_MODULUS: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ArithError> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(ArithError::InvalidModulus(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// Number of elements, `None` for ℚ.
    pub fn size(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p as u64),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u32().expect("residue fits in u32"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` as a canonical field element.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ArithError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::PrimeField(_) => self.from_bigint(num).div(&d),
        }
    }

    /// The `index`-th element in the fixed enumeration 0, 1, …, p−1 of 𝔽ₚ.
    pub fn element(&self, index: u64) -> Scalar {
        match *self {
            FieldSpec::Rationals => panic!("ℚ has no finite enumeration"),
            FieldSpec::PrimeField(p) => {
                assert!(index < p as u64, "index out of range for F{p}");
                Scalar::Modular {
                    value: index as u32,
                    modulus: p,
                }
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// A pseudo-random element; over ℚ an integer in `[-bound, bound]`.
    pub fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => self.from_i64(rng.random_range(-bound..=bound)),
            FieldSpec::PrimeField(p) => self.from_i64(rng.random_range(0..p as i64)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| ArithError::UnknownField(t.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| ArithError::UnknownField(t.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// A canonical element of ℚ or 𝔽ₚ.
///
/// Rationals are kept reduced with positive denominator; residues lie in
/// `[0, p)`. Mixing elements of different fields in one operation panics:
/// callers establish a common field before doing arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Rebuilds the canonical representative. Values produced by this module
    /// are already canonical; this exists for values assembled by hand.
    pub fn canonicalize(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(BigRational::new(r.numer().clone(), r.denom().clone())),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: value % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inverse(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        Ok(self * &other.inverse()?)
    }

    /// Whether the value is negative when printed (only rationals can be).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            s => s.clone(),
        }
    }

    /// Numerator and denominator of a rational; residues return `(v, 1)`.
    pub fn as_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Modular { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Scalar::Modular {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Polynomial in auxiliary indeterminates `c₁..c_m` with field coefficients.
///
/// Terms are keyed by exponent vector; the lexicographic order on those
/// vectors is a monomial order, which exact division relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffPoly {
    field: FieldSpec,
    arity: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CoeffPoly {
    pub fn zero(field: FieldSpec, arity: usize) -> Self {
        CoeffPoly {
            field,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, arity: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    /// The indeterminate `c_i` (0-based).
    pub fn var(field: FieldSpec, arity: usize, i: usize) -> Self {
        assert!(i < arity);
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(field, arity);
        p.terms.insert(e, field.one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(field: FieldSpec, arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = Self::zero(field, arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent arity");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> CoeffPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.arity);
        }
        CoeffPoly {
            field: self.field,
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &CoeffPoly) -> CoeffPoly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &CoeffPoly) -> CoeffPoly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> CoeffPoly {
        self.scale(&-&self.field.one())
    }

    pub fn mul(&self, other: &CoeffPoly) -> CoeffPoly {
        self.check(other);
        let mut out = Self::zero(self.field, self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder or the divisor is zero.
    pub fn exact_div(&self, divisor: &CoeffPoly) -> Option<CoeffPoly> {
        self.check(divisor);
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let lead_inv = lead_c.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.arity);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let mut qe = Vec::with_capacity(self.arity);
            for (a, b) in e.iter().zip(lead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = c * &lead_inv;
            for (de, dc) in &divisor.terms {
                let te: Vec<u32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, &-&(dc * &qc));
            }
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Value at the point `c = point`.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    fn check(&self, other: &CoeffPoly) {
        assert_eq!(self.field, other.field, "coefficient field mismatch");
        assert_eq!(self.arity, other.arity, "indeterminate arity mismatch");
    }
}

/// Specializes every entry of a polynomial matrix at `point`.
pub fn specialize(matrix: &[Vec<CoeffPoly>], point: &[Scalar]) -> Vec<Vec<Scalar>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|p| p.evaluate(point)).collect())
        .collect()
}

fn matrix_shape(matrix: &[Vec<CoeffPoly>]) -> Option<(FieldSpec, usize)> {
    matrix.iter().flatten().next().map(|p| (p.field, p.arity))
}

/// Rank of `matrix` over the rational function field `k(c₁..c_m)`.
pub fn generic_rank(matrix: &[Vec<CoeffPoly>]) -> usize {
    generic_rank_bounded(matrix, usize::MAX)
}

/// As [`generic_rank`], given a proven upper bound `ceiling` on the answer.
///
/// Any specialization has rank at most the generic rank, so a specialization
/// reaching `min(rows, cols, ceiling)` settles the value without symbolic
/// elimination.
pub fn generic_rank_bounded(matrix: &[Vec<CoeffPoly>], ceiling: usize) -> usize {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let Some((field, arity)) = matrix_shape(matrix) else {
        return 0;
    };
    let limit = rows.min(cols).min(ceiling);
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_9e4e);
    for _ in 0..3 {
        let point: Vec<Scalar> = (0..arity).map(|_| field.random(&mut rng, 1000)).collect();
        if linalg::rank(&specialize(matrix, &point)) >= limit {
            return limit;
        }
    }
    bareiss_rank(matrix)
}

/// Fraction-free elimination with full pivoting; every division is exact.
#[allow(clippy::needless_range_loop)]
fn bareiss_rank(matrix: &[Vec<CoeffPoly>]) -> usize {
    let Some((field, arity)) = matrix_shape(matrix) else {
        return 0;
    };
    let mut a: Vec<Vec<CoeffPoly>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = CoeffPoly::constant(field, arity, field.one());
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Smallest entries make the cheapest pivots.
        let mut best: Option<(usize, usize, (usize, u32))> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if p.is_zero() {
                    continue;
                }
                let key = (p.num_terms(), p.total_degree());
                if best.as_ref().is_none_or(|b| key < b.2) {
                    best = Some((i, j, key));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = a[k][k].clone();
        for i in k + 1..rows {
            let factor = a[i][k].clone();
            for j in k + 1..cols {
                let num = pivot.mul(&a[i][j]).sub(&factor.mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = CoeffPoly::zero(field, arity);
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
