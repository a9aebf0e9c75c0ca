//! μ, the Rees and Dilworth numbers, Lefschetz checks and exactness
//! verdicts with re-checkable certificates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, ArtinianAlgebra, Element, IdealInA};
use crate::arith::{generic_rank_bounded, CoeffPoly, FieldSpec, Scalar};
use crate::hilbert::{is_unimodal, OSequence};
use crate::linalg::{self, Subspace};
use crate::par::{self, Parallelism};

/// Default bound on enumerated states.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what} exceeds the enumeration cap of {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("this computation needs a finite field")]
    NotFiniteField,
    #[error("generic computations are only supported over Q; enumerate instead")]
    FiniteFieldUnsupported,
    #[error("the defining ideal is not a monomial ideal")]
    NotMonomialIdeal,
    #[error("element is not homogeneous of degree one")]
    NotDegreeOne,
    #[error("element or ideal is not contained in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, InvariantError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReesMode {
    /// Every element of m; finite fields only.
    ExhaustiveAll,
    /// Degree-one elements of a graded algebra.
    GradedDegreeOne,
    /// A generic element of m with symbolic coefficients; ℚ only.
    GenericSymbolic,
    /// Fallback upper bound from the variables alone.
    VariableScan,
}

impl fmt::Display for ReesMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReesMode::ExhaustiveAll => "exhaustive",
            ReesMode::GradedDegreeOne => "degree1",
            ReesMode::GenericSymbolic => "generic",
            ReesMode::VariableScan => "variables",
        })
    }
}

impl FromStr for ReesMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exhaustive" => Ok(ReesMode::ExhaustiveAll),
            "degree1" => Ok(ReesMode::GradedDegreeOne),
            "generic" => Ok(ReesMode::GenericSymbolic),
            _ => Err(format!("unknown mode `{s}` (expected exhaustive, degree1 or generic)")),
        }
    }
}

/// Knobs for the expensive searches.
#[derive(Clone, Debug)]
pub struct Effort {
    pub cap: u64,
    pub parallelism: Parallelism,
    /// Extra ideals whose μ feeds the Dilworth lower bound.
    pub registered: Vec<(String, IdealInA)>,
    /// Forces a Rees mode instead of picking the best available.
    pub rees_mode: Option<ReesMode>,
    /// Coefficient range `{−b..b}` for the ξ search over ℚ.
    pub xi_bound: i64,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            cap: DEFAULT_CAP,
            parallelism: Parallelism::default(),
            registered: Vec::new(),
            rees_mode: None,
            xi_bound: 2,
        }
    }
}

fn in_m(e: &Element) -> bool {
    e.coeffs()[0].is_zero()
}

fn m_basis(a: &ArtinianAlgebra) -> Vec<Vec<Scalar>> {
    (1..a.dim()).map(|i| a.basis_element(i).into_coeffs()).collect()
}

/// `μ(N) = dim N − dim mN`.
pub fn mu(a: &ArtinianAlgebra, n: &IdealInA) -> Result<usize> {
    a.require_local()?;
    a.check_space(n.space())?;
    Ok(n.dim() - a.m_times(n.space()).dim())
}

/// `ℓ(A/xA)`.
pub fn colength(a: &ArtinianAlgebra, x: &Element) -> usize {
    a.dim() - a.mult_rank(x)
}

/// Largest `μ(m^i)` over `i ≥ 1` and the registered ideals, with the
/// ideal attaining it. Every ideal's μ bounds both numbers from below.
pub fn mu_lower_bound(a: &ArtinianAlgebra, effort: &Effort) -> Result<(usize, String, IdealInA)> {
    a.require_local()?;
    let mut best = (0, "0".to_string(), a.zero_ideal());
    let mut i = 1;
    loop {
        let p = a.mpow(i);
        if p.dim() == 0 {
            break;
        }
        let v = mu(a, &p)?;
        if v > best.0 {
            best = (v, format!("m^{i}"), p);
        }
        i += 1;
    }
    for (name, ideal) in &effort.registered {
        let v = mu(a, ideal)?;
        if v > best.0 {
            best = (v, name.clone(), ideal.clone());
        }
    }
    Ok(best)
}

fn q_pow(q: u64, t: usize) -> Option<u64> {
    u32::try_from(t).ok().and_then(|t| q.checked_pow(t))
}

fn enumeration_size(a: &ArtinianAlgebra, t: usize, cap: u64, what: &str) -> Result<u64> {
    let q = a.field().size().ok_or(InvariantError::NotFiniteField)?;
    match q_pow(q, t) {
        Some(n) if n <= cap => Ok(n),
        _ => Err(InvariantError::CapExceeded {
            what: format!("{what} ({q}^{t} elements)"),
            cap,
        }),
    }
}

/// The `index`-th combination of `family` in base-q digit order, the first
/// family member being the least significant digit.
fn combination(field: FieldSpec, family: &[Vec<Scalar>], dim: usize, mut index: u64) -> Vec<Scalar> {
    let q = field.size().expect("finite field");
    let mut out = vec![field.zero(); dim];
    for f in family {
        let d = index % q;
        index /= q;
        if d != 0 {
            let c = field.element(d);
            for (o, x) in out.iter_mut().zip(f) {
                if !x.is_zero() {
                    *o = &*o + &(&c * x);
                }
            }
        }
    }
    out
}

fn combine(field: FieldSpec, family: &[Vec<Scalar>], dim: usize, coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (f, c) in family.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(f) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

/// Integer coefficient vectors over `{−h..h}` of height exactly `h`, via
/// index into base `2h+1` with digits ordered `0, 1, −1, 2, −2, …`.
fn small_vector(t: usize, h: i64, mut index: u64) -> Option<Vec<i64>> {
    let base = (2 * h + 1) as u64;
    let mut v = Vec::with_capacity(t);
    for _ in 0..t {
        let d = (index % base) as i64;
        index /= base;
        v.push(if d == 0 {
            0
        } else if d % 2 == 1 {
            (d + 1) / 2
        } else {
            -(d / 2)
        });
    }
    (v.iter().map(|x| x.abs()).max() == Some(h)).then_some(v)
}

/// Scans small integer combinations of `family` by height, then seeded
/// random ones, for the first satisfying `pred`.
fn search_small<F>(
    a: &ArtinianAlgebra,
    family: &[Vec<Scalar>],
    bound: i64,
    budget: u64,
    mode: Parallelism,
    pred: F,
) -> (Option<Element>, u64)
where
    F: Fn(&Element) -> bool + Sync + Send,
{
    let field = a.field();
    let t = family.len();
    let mut examined = 0;
    let to_element = |v: &[i64]| {
        let coeffs: Vec<Scalar> = v.iter().map(|&c| field.from_i64(c)).collect();
        Element::new(combine(field, family, a.dim(), &coeffs))
    };
    for h in 1..=bound {
        let Some(n) = q_pow((2 * h + 1) as u64, t).filter(|&n| examined + n <= budget) else {
            break;
        };
        examined += n;
        let hit = par::find_first(n, mode, |i| {
            small_vector(t, h, i).is_some_and(|v| pred(&to_element(&v)))
        });
        if let Some(i) = hit {
            return (
                Some(to_element(&small_vector(t, h, i).expect("height matches"))),
                examined,
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0f_fee5);
    for _ in 0..32 {
        examined += 1;
        let coeffs: Vec<Scalar> = (0..t).map(|_| field.random(&mut rng, 1000)).collect();
        let e = Element::new(combine(field, family, a.dim(), &coeffs));
        if pred(&e) {
            return (Some(e), examined);
        }
    }
    (None, examined)
}

/// Matrix of multiplication by `Σ c_i f_i` restricted to the columns
/// `b_j, j ∈ cols`, with the `c_i` symbolic.
fn generic_mult_matrix(a: &ArtinianAlgebra, family: &[Vec<Scalar>], cols: &[usize]) -> Vec<Vec<CoeffPoly>> {
    let field = a.field();
    let t = family.len();
    let products: Vec<Vec<Vec<Scalar>>> = family
        .iter()
        .map(|f| {
            let e = Element::new(f.clone());
            cols.iter()
                .map(|&j| a.mul(&e, &a.basis_element(j)).into_coeffs())
                .collect()
        })
        .collect();
    (0..a.dim())
        .map(|r| {
            (0..cols.len())
                .map(|k| {
                    CoeffPoly::from_terms(
                        field,
                        t,
                        (0..t).map(|i| {
                            let mut e = vec![0; t];
                            e[i] = 1;
                            (e, products[i][k][r].clone())
                        }),
                    )
                })
                .collect()
        })
        .filter(|row: &Vec<CoeffPoly>| row.iter().any(|p| !p.is_zero()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesResult {
    pub value: usize,
    pub mode: ReesMode,
    /// Whether `value` is proven to equal r(A); otherwise it is an upper bound.
    pub exact: bool,
    /// An element with `ℓ(A/xA) = value`, when one was produced.
    pub witness: Option<Element>,
    pub examined: u64,
}

/// `min ℓ(A/xA)` over the family selected by `mode`.
pub fn rees_number(a: &ArtinianAlgebra, mode: ReesMode, effort: &Effort) -> Result<ReesResult> {
    a.require_local()?;
    let (lower, _, _) = mu_lower_bound(a, effort)?;
    let field = a.field();
    let family = match mode {
        ReesMode::ExhaustiveAll => {
            if !field.is_finite() {
                return Err(InvariantError::NotFiniteField);
            }
            m_basis(a)
        }
        ReesMode::GradedDegreeOne => {
            a.require_homogeneous()?;
            a.degree_one_space().rows().to_vec()
        }
        ReesMode::GenericSymbolic => {
            if field.is_finite() {
                return Err(InvariantError::FiniteFieldUnsupported);
            }
            m_basis(a)
        }
        ReesMode::VariableScan => return Ok(variable_scan(a)),
    };
    if family.is_empty() {
        return Ok(ReesResult {
            value: a.dim(),
            mode,
            exact: true,
            witness: Some(a.zero()),
            examined: 1,
        });
    }
    if field.is_finite() {
        let n = enumeration_size(a, family.len(), effort.cap, "Rees enumeration")?;
        let value_at = |i: u64| colength(a, &Element::new(combination(field, &family, a.dim(), i)));
        // Every colength is at least `lower`; stop at the first that meets it.
        let (value, index) = match par::find_first(n - 1, effort.parallelism, |i| value_at(i + 1) == lower) {
            Some(i) => (lower, i + 1),
            None => par::min_by_key(1, n, effort.parallelism, value_at).expect("nonempty range"),
        };
        return Ok(ReesResult {
            value,
            mode,
            exact: mode == ReesMode::ExhaustiveAll,
            witness: Some(Element::new(combination(field, &family, a.dim(), index))),
            examined: n - 1,
        });
    }
    let cols: Vec<usize> = (0..a.dim()).collect();
    let matrix = generic_mult_matrix(a, &family, &cols);
    let rank = generic_rank_bounded(&matrix, a.dim() - lower);
    let value = a.dim() - rank;
    let (witness, examined) = search_small(a, &family, 1, 5_000, effort.parallelism, |x| colength(a, x) == value);
    Ok(ReesResult {
        value,
        mode,
        exact: true,
        witness,
        examined,
    })
}

fn variable_scan(a: &ArtinianAlgebra) -> ReesResult {
    let (value, v) = (0..a.nvars())
        .map(|v| (colength(a, &a.var(v)), v))
        .min()
        .expect("at least one variable");
    ReesResult {
        value,
        mode: ReesMode::VariableScan,
        exact: false,
        witness: Some(a.var(v)),
        examined: a.nvars() as u64,
    }
}

/// The forced mode if any, else the strongest mode that applies.
pub fn best_rees(a: &ArtinianAlgebra, effort: &Effort) -> Result<ReesResult> {
    if let Some(mode) = effort.rees_mode {
        return rees_number(a, mode, effort);
    }
    a.require_local()?;
    let field = a.field();
    if field.is_finite() {
        for mode in [ReesMode::ExhaustiveAll, ReesMode::GradedDegreeOne] {
            match rees_number(a, mode, effort) {
                Ok(r) => return Ok(r),
                Err(InvariantError::CapExceeded { .. })
                | Err(InvariantError::Algebra(AlgebraError::NotHomogeneous)) => {}
                Err(e) => return Err(e),
            }
        }
        return Ok(variable_scan(a));
    }
    if a.is_homogeneous() {
        rees_number(a, ReesMode::GradedDegreeOne, effort)
    } else {
        rees_number(a, ReesMode::GenericSymbolic, effort)
    }
}

#[derive(Clone, Debug)]
pub struct DilworthOracle {
    pub value: usize,
    /// First maximizer in enumeration order (by dimension, then echelon form).
    pub maximizer: IdealInA,
    pub maximizers: Vec<IdealInA>,
    /// Ideals contained in m, the zero ideal included.
    pub ideal_count: u64,
    pub visited: u64,
}

fn colon_m_in_m(a: &ArtinianAlgebra, j: &Subspace) -> Subspace {
    // Kernel of y ↦ (x_v y mod J)_v, intersected with m.
    let field = a.field();
    let dim = a.dim();
    let mut rows = Vec::new();
    for v in 0..a.nvars() {
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .map(|k| {
                let mut c = a.mul_var(v, &a.basis_element(k)).into_coeffs();
                j.reduce(&mut c);
                c
            })
            .collect();
        rows.extend((0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>()));
    }
    let mut e0 = vec![field.zero(); dim];
    e0[0] = field.one();
    rows.push(e0);
    Subspace::span(field, dim, linalg::kernel(field, &rows, dim))
}

fn lines_count(q: u64, t: usize) -> u64 {
    (0..t)
        .map(|p| q.saturating_pow((t - 1 - p) as u32))
        .fold(0u64, u64::saturating_add)
}

/// All ideals covering `j` inside m: `J + kv` for each line `kv` in
/// `((J : m) ∩ m) / J`.
fn covers(a: &ArtinianAlgebra, j: &Subspace) -> Vec<Subspace> {
    let field = a.field();
    let q = field.size().expect("finite field");
    let colon = colon_m_in_m(a, j);
    let w = j.complement_in(&colon);
    let t = w.len();
    let mut out = Vec::new();
    for lead in 0..t {
        // coefficient 1 at `lead`, zero before, anything after
        let tail = &w[lead + 1..];
        let n = q.pow(tail.len() as u32);
        for i in 0..n {
            let mut v = combination(field, tail, a.dim(), i);
            for (o, x) in v.iter_mut().zip(&w[lead]) {
                *o = &*o + x;
            }
            let mut next = j.clone();
            next.insert(v);
            out.push(next);
        }
    }
    out
}

fn cover_count(a: &ArtinianAlgebra, j: &Subspace) -> u64 {
    let q = a.field().size().expect("finite field");
    let colon = colon_m_in_m(a, j);
    lines_count(q, colon.dim() - j.dim())
}

/// Exact D(A) by walking the lattice of ideals inside m one dimension at
/// a time. Finite fields only.
pub fn dilworth_oracle(a: &ArtinianAlgebra, effort: &Effort) -> Result<DilworthOracle> {
    a.require_local()?;
    let field = a.field();
    if !field.is_finite() {
        return Err(InvariantError::NotFiniteField);
    }
    let mode = effort.parallelism;
    let mut level = vec![Subspace::zero(field, a.dim())];
    let mut visited: u64 = 1;
    let mut ideal_count: u64 = 0;
    let mut best = 0usize;
    let mut maximizers: Vec<Subspace> = Vec::new();
    while !level.is_empty() {
        ideal_count += level.len() as u64;
        let mus = par::map(&level, mode, |j| j.dim() - a.m_times(j).dim());
        for (j, &m) in level.iter().zip(&mus) {
            if m > best {
                best = m;
                maximizers.clear();
            }
            if m == best {
                maximizers.push(j.clone());
            }
        }
        let upcoming: u64 = par::map(&level, mode, |j| cover_count(a, j))
            .into_iter()
            .fold(0, u64::saturating_add);
        visited = visited.saturating_add(upcoming);
        if visited > effort.cap {
            return Err(InvariantError::CapExceeded {
                what: format!("ideal enumeration ({visited} states so far)"),
                cap: effort.cap,
            });
        }
        let next: HashSet<Subspace> = par::map(&level, mode, |j| covers(a, j)).into_iter().flatten().collect();
        level = next.into_iter().collect();
        level.sort();
    }
    let maximizers: Vec<IdealInA> = maximizers.into_iter().map(IdealInA::from_closed).collect();
    Ok(DilworthOracle {
        value: best,
        maximizer: maximizers[0].clone(),
        maximizers,
        ideal_count,
        visited,
    })
}

#[derive(Clone, Debug)]
pub struct DilworthBounds {
    pub lower: usize,
    /// `m^i` or a registered ideal name.
    pub lower_source: String,
    pub lower_ideal: IdealInA,
    pub upper: usize,
    pub rees: ReesResult,
}

/// `sup μ(m^i)` (and registered ideals) below, the Rees number above.
pub fn dilworth_bounds(a: &ArtinianAlgebra, effort: &Effort) -> Result<DilworthBounds> {
    let (lower, lower_source, lower_ideal) = mu_lower_bound(a, effort)?;
    let rees = best_rees(a, effort)?;
    Ok(DilworthBounds {
        lower,
        lower_source,
        lower_ideal,
        upper: rees.value,
        rees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactMainReport {
    /// `(0 : a) ⊆ N`.
    pub annihilator_in_n: bool,
    /// `mN = aN`.
    pub m_n_equals_a_n: bool,
    pub mu: usize,
    /// `ℓ(A/aA)`.
    pub colength: usize,
    pub equality: bool,
    /// Equality holds exactly when both conditions do.
    pub biconditional_holds: bool,
}

/// Checks both sides of the criterion `μ(N) = ℓ(A/aA)` ⟺ `(0:a) ⊆ N` and
/// `mN = aN`, for `a ∈ m` and `N ⊆ m`.
pub fn fact_main_check(a: &ArtinianAlgebra, x: &Element, n: &IdealInA) -> Result<FactMainReport> {
    a.require_local()?;
    a.check(x)?;
    a.check_space(n.space())?;
    if !in_m(x) || !n.space().is_subspace_of(a.maximal_ideal().space()) {
        return Err(InvariantError::NotInMaximalIdeal);
    }
    let annihilator_in_n = a.annihilator(x).space().is_subspace_of(n.space());
    let m_n_equals_a_n = a.m_times(n.space()) == a.element_times(x, n.space());
    let mu = mu(a, n)?;
    let colength = colength(a, x);
    let equality = mu == colength;
    Ok(FactMainReport {
        annihilator_in_n,
        m_n_equals_a_n,
        mu,
        colength,
        equality,
        biconditional_holds: equality == (annihilator_in_n && m_n_equals_a_n),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiFamily {
    DegreeOne,
    AllOfM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiSearch {
    pub witness: Option<Element>,
    pub examined: u64,
    /// The family provably contains no witness.
    pub exhausted: bool,
}

/// `mξ = m²` for `ξ ∈ m`.
pub fn is_xi_witness(a: &ArtinianAlgebra, xi: &Element) -> bool {
    !xi.is_zero() && in_m(xi) && a.element_times(xi, a.maximal_ideal().space()).dim() == a.mpow(2).dim()
}

/// Looks for `ξ` in the family with `mξ = m²`.
pub fn xi_certificate_search(a: &ArtinianAlgebra, family: XiFamily, effort: &Effort) -> Result<XiSearch> {
    a.require_local()?;
    let field = a.field();
    let basis = match family {
        XiFamily::DegreeOne => a.degree_one_space().rows().to_vec(),
        XiFamily::AllOfM => m_basis(a),
    };
    let check = |e: &Element| is_xi_witness(a, e);
    if field.is_finite() {
        let n = enumeration_size(a, basis.len(), effort.cap, "xi search")?;
        let hit = par::find_first(n.saturating_sub(1), effort.parallelism, |i| {
            check(&Element::new(combination(field, &basis, a.dim(), i + 1)))
        });
        return Ok(XiSearch {
            witness: hit.map(|i| Element::new(combination(field, &basis, a.dim(), i + 1))),
            examined: hit.map_or(n.saturating_sub(1), |i| i + 1),
            exhausted: hit.is_none(),
        });
    }
    if basis.is_empty() {
        return Ok(XiSearch {
            witness: None,
            examined: 0,
            exhausted: true,
        });
    }
    let bound = match family {
        XiFamily::DegreeOne => effort.xi_bound,
        XiFamily::AllOfM => 1,
    };
    let mut examined = 0;
    for h in 1..=bound {
        let Some(n) = q_pow((2 * h + 1) as u64, basis.len()).filter(|&n| examined + n <= effort.cap) else {
            break;
        };
        let t = basis.len();
        let to_element = |v: &[i64]| {
            let coeffs: Vec<Scalar> = v.iter().map(|&c| field.from_i64(c)).collect();
            Element::new(combine(field, &basis, a.dim(), &coeffs))
        };
        let hit = par::find_first(n, effort.parallelism, |i| {
            small_vector(t, h, i).is_some_and(|v| check(&to_element(&v)))
        });
        if let Some(i) = hit {
            return Ok(XiSearch {
                witness: Some(to_element(&small_vector(t, h, i).expect("height matches"))),
                examined: examined + i + 1,
                exhausted: false,
            });
        }
        examined += n;
    }
    // Symbolic: does the generic ξ of the family reach dim m² = dim mξ?
    let target = a.mpow(2).dim();
    let cols: Vec<usize> = (1..a.dim()).collect();
    let matrix = generic_mult_matrix(a, &basis, &cols);
    if generic_rank_bounded(&matrix, target) < target {
        return Ok(XiSearch {
            witness: None,
            examined,
            exhausted: true,
        });
    }
    let (witness, more) = search_small(a, &basis, 0, 0, effort.parallelism, check);
    Ok(XiSearch {
        witness,
        examined: examined + more,
        exhausted: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCriterion {
    pub passes: bool,
    /// `dim mσ` for `σ = Σ x_i`.
    pub dim_m_sigma: usize,
    pub dim_m2: usize,
    pub deficit: usize,
    /// `dim (mσ)_2` and `dim (m²)_2` in the associated graded sense.
    pub degree_two: (usize, usize),
}

/// Compares `m·Σx_i` with `m²` for a monomial ideal.
pub fn watanabe_monomial_criterion(a: &ArtinianAlgebra) -> Result<MonomialCriterion> {
    a.require_local()?;
    if !a.is_monomial() {
        return Err(InvariantError::NotMonomialIdeal);
    }
    let sigma = (0..a.nvars()).fold(a.zero(), |s, v| s.add(&a.var(v)));
    let m_sigma = a.element_times(&sigma, a.maximal_ideal().space());
    let m2 = a.mpow(2);
    Ok(MonomialCriterion {
        passes: m_sigma.dim() == m2.dim(),
        dim_m_sigma: m_sigma.dim(),
        dim_m2: m2.dim(),
        deficit: m2.dim() - m_sigma.dim(),
        degree_two: (a.filtered_piece_dim(&m_sigma, 2), a.filtered_piece_dim(m2.space(), 2)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlRow {
    pub degree: usize,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlReport {
    pub rows: Vec<WlRow>,
    pub holds: bool,
    /// `ℓ(A/lA)`.
    pub colength: usize,
}

fn wl_rows(a: &ArtinianAlgebra, ranks: impl Fn(usize) -> usize) -> Vec<WlRow> {
    let top = a.standard_monomials().by_degree().len();
    (0..top.saturating_sub(1))
        .map(|i| {
            let (s, t) = (a.degree_indices(i).len(), a.degree_indices(i + 1).len());
            let rank = ranks(i);
            WlRow {
                degree: i,
                rank,
                source_dim: s,
                target_dim: t,
                maximal: rank == s.min(t),
            }
        })
        .collect()
}

/// Ranks of `×l : A_i → A_{i+1}` against `min(h_i, h_{i+1})`.
pub fn weak_lefschetz(a: &ArtinianAlgebra, l: &Element) -> Result<WlReport> {
    a.require_local()?;
    a.require_homogeneous()?;
    a.check(l)?;
    let deg1 = a.degree_indices(1);
    if l.coeffs()
        .iter()
        .enumerate()
        .any(|(i, c)| !c.is_zero() && !deg1.contains(&i))
    {
        return Err(InvariantError::NotDegreeOne);
    }
    let rows = wl_rows(a, |i| a.graded_rank(l, i));
    Ok(WlReport {
        holds: rows.iter().all(|r| r.maximal),
        colength: colength(a, l),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericWl {
    pub holds: bool,
    pub rows: Vec<WlRow>,
    /// For unimodal Hilbert functions: whether `holds` agrees with
    /// `max h_i = ℓ(A) − Σ ranks`.
    pub cross_check: Option<bool>,
}

/// Whether the generic degree-one element is weak Lefschetz (ℚ only).
pub fn has_wl_generic(a: &ArtinianAlgebra) -> Result<GenericWl> {
    a.require_local()?;
    a.require_homogeneous()?;
    if a.field().is_finite() {
        return Err(InvariantError::FiniteFieldUnsupported);
    }
    let family: Vec<Vec<Scalar>> = a
        .degree_indices(1)
        .iter()
        .map(|&i| a.basis_element(i).into_coeffs())
        .collect();
    let rows = wl_rows(a, |i| {
        let src = a.degree_indices(i);
        let dst = a.degree_indices(i + 1);
        if src.is_empty() || dst.is_empty() || family.is_empty() {
            return 0;
        }
        let full = generic_mult_matrix_rows(a, &family, src, dst);
        generic_rank_bounded(&full, src.len().min(dst.len()))
    });
    let holds = rows.iter().all(|r| r.maximal);
    let h = OSequence::new(a.hilbert_function()?.iter().map(|&x| x as u64).collect()).ok();
    let cross_check = h.filter(is_unimodal).map(|h| {
        let peak = *h.values().iter().max().expect("nonempty") as usize;
        let total: usize = rows.iter().map(|r| r.rank).sum();
        (peak == a.dim() - total) == holds
    });
    Ok(GenericWl {
        holds,
        rows,
        cross_check,
    })
}

fn generic_mult_matrix_rows(
    a: &ArtinianAlgebra,
    family: &[Vec<Scalar>],
    src: &[usize],
    dst: &[usize],
) -> Vec<Vec<CoeffPoly>> {
    let field = a.field();
    let t = family.len();
    let products: Vec<Vec<Vec<Scalar>>> = family
        .iter()
        .map(|f| {
            let e = Element::new(f.clone());
            src.iter()
                .map(|&j| a.mul(&e, &a.basis_element(j)).into_coeffs())
                .collect()
        })
        .collect();
    dst.iter()
        .map(|&r| {
            (0..src.len())
                .map(|k| {
                    CoeffPoly::from_terms(
                        field,
                        t,
                        (0..t).map(|i| {
                            let mut e = vec![0; t];
                            e[i] = 1;
                            (e, products[i][k][r].clone())
                        }),
                    )
                })
                .collect()
        })
        .collect()
}

/// Evidence attached to an exactness verdict. Each kind is re-checked by
/// [`Certificate::verify`] with a single linear-algebra computation.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// `mξ = m²`, so `ℓ(A/ξA) = μ(m)`.
    XiWitness { xi: Element },
    /// `μ(N) = ℓ(A/xA)`.
    IdealWitness {
        ideal: IdealInA,
        label: String,
        element: Element,
    },
    /// `dim m² − dim mσ > 0` for a monomial algebra over ℚ.
    MonomialCriterionFailure { deficit: usize },
    /// Exhaustive ideal enumeration; carries the maximizer and an element
    /// attaining the Rees number.
    ExhaustiveEnumeration {
        ideal_count: u64,
        maximizer: IdealInA,
        rees_witness: Element,
    },
    /// The algebra is the field itself: the only ideal in m is zero.
    Trivial,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::XiWitness { .. } => "xi_witness",
            Certificate::IdealWitness { .. } => "ideal_witness",
            Certificate::MonomialCriterionFailure { .. } => "monomial_criterion_failure",
            Certificate::ExhaustiveEnumeration { .. } => "exhaustive_enumeration",
            Certificate::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Debug)]
pub enum ExactnessVerdict {
    Exact {
        value: usize,
        witness: Certificate,
    },
    NotExact {
        dilworth_lower: usize,
        dilworth_upper: usize,
        rees: usize,
        evidence: Certificate,
    },
    Unknown {
        lower: usize,
        upper: usize,
    },
}

impl ExactnessVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ExactnessVerdict::Exact { .. } => "Exact",
            ExactnessVerdict::NotExact { .. } => "NotExact",
            ExactnessVerdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExactnessVerdict::Exact { .. })
    }

    /// D(A) when the verdict pins it down.
    pub fn dilworth(&self) -> Option<usize> {
        match *self {
            ExactnessVerdict::Exact { value, .. } => Some(value),
            ExactnessVerdict::NotExact {
                dilworth_lower,
                dilworth_upper,
                ..
            } if dilworth_lower == dilworth_upper => Some(dilworth_lower),
            _ => None,
        }
    }
}

impl fmt::Display for ExactnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactnessVerdict::Exact { value, .. } => write!(f, "Exact({value})"),
            ExactnessVerdict::NotExact {
                dilworth_lower,
                dilworth_upper,
                rees,
                ..
            } if dilworth_lower == dilworth_upper => write!(f, "NotExact({dilworth_lower}, {rees})"),
            ExactnessVerdict::NotExact {
                dilworth_lower,
                dilworth_upper,
                rees,
                ..
            } => write!(f, "NotExact({dilworth_lower}..{dilworth_upper}, {rees})"),
            ExactnessVerdict::Unknown { lower, upper } => write!(f, "Unknown({lower}, {upper})"),
        }
    }
}

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(InvariantError::Internal(msg.into()))
}

impl Certificate {
    /// Re-checks the certificate against the values claimed by `verdict`.
    pub fn verify(&self, a: &ArtinianAlgebra, verdict: &ExactnessVerdict) -> Result<()> {
        let claimed = match *verdict {
            ExactnessVerdict::Exact { value, .. } => (value, value),
            ExactnessVerdict::NotExact {
                dilworth_lower, rees, ..
            } => (dilworth_lower, rees),
            ExactnessVerdict::Unknown { .. } => return fail("unknown verdicts carry no certificate"),
        };
        match self {
            Certificate::XiWitness { xi } => {
                a.check(xi)?;
                if !is_xi_witness(a, xi) {
                    return fail("xi witness does not satisfy m*xi = m^2");
                }
                if mu(a, &a.maximal_ideal())? != claimed.0 || colength(a, xi) != claimed.1 {
                    return fail("xi witness does not match the claimed value");
                }
            }
            Certificate::IdealWitness { ideal, element, .. } => {
                a.check(element)?;
                let inside = ideal.space().is_subspace_of(a.maximal_ideal().space());
                if !inside || !in_m(element) || !a.is_ideal(ideal.space()) {
                    return fail("ideal witness is not an ideal inside m");
                }
                if mu(a, ideal)? != claimed.0 || colength(a, element) != claimed.1 {
                    return fail("ideal witness values disagree with the verdict");
                }
            }
            Certificate::MonomialCriterionFailure { deficit } => {
                let c = watanabe_monomial_criterion(a)?;
                if c.passes || c.deficit != *deficit || a.field().is_finite() {
                    return fail("monomial criterion failure does not reproduce");
                }
            }
            Certificate::ExhaustiveEnumeration {
                maximizer,
                rees_witness,
                ..
            } => {
                a.check(rees_witness)?;
                if !a.is_ideal(maximizer.space())
                    || mu(a, maximizer)? != claimed.0
                    || colength(a, rees_witness) != claimed.1
                {
                    return fail("enumeration certificate values disagree with the verdict");
                }
            }
            Certificate::Trivial => {
                if a.dim() != 1 || claimed != (0, 1) {
                    return fail("trivial certificate on a nontrivial algebra");
                }
            }
        }
        Ok(())
    }
}

fn verified(a: &ArtinianAlgebra, v: ExactnessVerdict) -> Result<ExactnessVerdict> {
    match &v {
        ExactnessVerdict::Exact { witness, .. } => witness.verify(a, &v)?,
        ExactnessVerdict::NotExact {
            dilworth_lower,
            dilworth_upper,
            rees,
            evidence,
        } => {
            if !(dilworth_lower <= dilworth_upper && dilworth_upper < rees) {
                return Err(InvariantError::Internal(format!("inconsistent NotExact bounds in {v}")));
            }
            evidence.verify(a, &v)?;
        }
        ExactnessVerdict::Unknown { lower, upper } => {
            if lower > upper {
                return Err(InvariantError::Internal(format!("inconsistent bounds in {v}")));
            }
        }
    }
    Ok(v)
}

/// Decides whether `D(A) = r(A)`, with a certificate for the answer.
///
/// Order of attack: a ξ with `mξ = m²`; matching lower and upper bounds;
/// Watanabe's criterion for monomial algebras over ℚ; the exhaustive ideal
/// oracle over finite fields. Anything left is `Unknown`.
pub fn exactness(a: &ArtinianAlgebra, effort: &Effort) -> Result<ExactnessVerdict> {
    a.require_local()?;
    if a.dim() == 1 {
        return verified(
            a,
            ExactnessVerdict::NotExact {
                dilworth_lower: 0,
                dilworth_upper: 0,
                rees: 1,
                evidence: Certificate::Trivial,
            },
        );
    }
    let mu_m = mu(a, &a.maximal_ideal())?;
    let (lower, label, lower_ideal) = mu_lower_bound(a, effort)?;

    // A ξ only helps when nothing beats μ(m) already.
    if lower == mu_m {
        match xi_certificate_search(a, XiFamily::DegreeOne, effort) {
            Ok(XiSearch { witness: Some(xi), .. }) => {
                return verified(
                    a,
                    ExactnessVerdict::Exact {
                        value: mu_m,
                        witness: Certificate::XiWitness { xi },
                    },
                )
            }
            Ok(_) | Err(InvariantError::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    let rees = best_rees(a, effort)?;
    if lower == rees.value {
        let element = match rees.witness.clone() {
            Some(x) => x,
            None => {
                return Ok(ExactnessVerdict::Unknown {
                    lower,
                    upper: rees.value,
                })
            }
        };
        return verified(
            a,
            ExactnessVerdict::Exact {
                value: lower,
                witness: Certificate::IdealWitness {
                    ideal: lower_ideal,
                    label,
                    element,
                },
            },
        );
    }

    if !a.field().is_finite() && a.is_monomial() && rees.exact {
        let c = watanabe_monomial_criterion(a)?;
        if !c.passes {
            return verified(
                a,
                ExactnessVerdict::NotExact {
                    dilworth_lower: lower,
                    dilworth_upper: rees.value - 1,
                    rees: rees.value,
                    evidence: Certificate::MonomialCriterionFailure { deficit: c.deficit },
                },
            );
        }
    }

    if a.field().is_finite() {
        match dilworth_oracle(a, effort) {
            Ok(oracle) => {
                let rees_witness = rees.witness.clone().expect("enumerated modes carry witnesses");
                if oracle.value == rees.value {
                    return verified(
                        a,
                        ExactnessVerdict::Exact {
                            value: oracle.value,
                            witness: Certificate::IdealWitness {
                                ideal: oracle.maximizer,
                                label: "oracle maximizer".into(),
                                element: rees_witness,
                            },
                        },
                    );
                }
                if rees.exact {
                    return verified(
                        a,
                        ExactnessVerdict::NotExact {
                            dilworth_lower: oracle.value,
                            dilworth_upper: oracle.value,
                            rees: rees.value,
                            evidence: Certificate::ExhaustiveEnumeration {
                                ideal_count: oracle.ideal_count,
                                maximizer: oracle.maximizer,
                                rees_witness,
                            },
                        },
                    );
                }
                return Ok(ExactnessVerdict::Unknown {
                    lower: oracle.value,
                    upper: rees.value,
                });
            }
            Err(InvariantError::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    Ok(ExactnessVerdict::Unknown {
        lower,
        upper: rees.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingContext;

    fn build(field: FieldSpec, vars: &[&str], gens: &[&str]) -> ArtinianAlgebra {
        let ctx = RingContext::new(field, vars.iter().copied()).unwrap();
        ArtinianAlgebra::from_strings(&ctx, gens).unwrap()
    }

    fn f2_cube() -> ArtinianAlgebra {
        build(FieldSpec::prime(2).unwrap(), &["x", "y", "z"], &["x^2", "y^2", "z^2"])
    }

    #[test]
    fn small_vectors_cover_each_height_once() {
        let all: Vec<Vec<i64>> = (1..=2)
            .flat_map(|h| (0..(2 * h as u64 + 1).pow(2)).filter_map(move |i| small_vector(2, h, i)))
            .collect();
        assert_eq!(all.len(), 24);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 24);
        assert_eq!(all[0], [1, 0]);
    }

    #[test]
    fn flagship_numbers() {
        let a = f2_cube();
        let e = Effort::default();
        assert_eq!(mu(&a, &a.maximal_ideal()).unwrap(), 3);
        assert_eq!(mu(&a, &a.zero_ideal()).unwrap(), 0);
        let all = rees_number(&a, ReesMode::ExhaustiveAll, &e).unwrap();
        assert_eq!((all.value, all.examined), (4, 127));
        let deg1 = rees_number(&a, ReesMode::GradedDegreeOne, &e).unwrap();
        assert_eq!((deg1.value, deg1.examined), (4, 7));
        let d = dilworth_oracle(&a, &e).unwrap();
        assert_eq!(d.value, 3);
        assert!(d.maximizers.iter().any(|m| m.space() == a.maximal_ideal().space()));
        let v = exactness(&a, &e).unwrap();
        assert_eq!(v.to_string(), "NotExact(3, 4)");
        assert!(xi_certificate_search(&a, XiFamily::AllOfM, &e)
            .unwrap()
            .witness
            .is_none());
        assert!(!watanabe_monomial_criterion(&a).unwrap().passes);
    }

    #[test]
    fn chain_ring_is_exact() {
        for field in [FieldSpec::prime(2).unwrap(), FieldSpec::Rationals] {
            let a = build(field, &["x"], &["x^3"]);
            let e = Effort::default();
            assert!(watanabe_monomial_criterion(&a).unwrap().passes);
            assert_eq!(exactness(&a, &e).unwrap().to_string(), "Exact(1)");
            if field.is_finite() {
                assert_eq!(dilworth_oracle(&a, &e).unwrap().value, 1);
            }
        }
    }

    #[test]
    fn generic_lefschetz() {
        let a = build(FieldSpec::Rationals, &["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let g = has_wl_generic(&a).unwrap();
        assert!(g.holds);
        assert_eq!(g.cross_check, Some(true));
        assert_eq!(
            has_wl_generic(&f2_cube()).unwrap_err(),
            InvariantError::FiniteFieldUnsupported
        );
        let zero = weak_lefschetz(&a, &a.zero()).unwrap();
        assert!(!zero.holds && !zero.rows[0].maximal);
        assert_eq!(
            weak_lefschetz(&a, &a.parse_element("x*y").unwrap()).unwrap_err(),
            InvariantError::NotDegreeOne
        );
    }

    #[test]
    fn fact_main_degenerate_branch() {
        let a = f2_cube();
        let r = fact_main_check(&a, &a.zero(), &a.maximal_ideal()).unwrap();
        assert!(!r.annihilator_in_n && !r.equality && r.biconditional_holds);
    }
}
