//! The finite-dimensional algebra `A = k[x]/I` over its standard-monomial
//! basis: multiplication, ideals, the m-adic filtration and socle.

use std::sync::Arc;

use thiserror::Error;

use crate::arith::{FieldSpec, Scalar};
use crate::groebner::{self, buchberger, normal_form, GroebnerBasis, GroebnerError, StandardMonomials};
use crate::linalg::{self, Subspace};
use crate::poly::{parse_poly, Monomial, PolyError, Polynomial, RingContext};

/// Hard cap on `ℓ(A)`.
pub const MAX_DIM: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] PolyError),
    #[error("quotient is not artinian: no power of `{0}` lies in the leading-term ideal")]
    NotArtinian(String),
    #[error("quotient has dimension above {0}")]
    TooLarge(usize),
    #[error("the ideal is the unit ideal; the quotient is the zero ring")]
    ZeroRing,
    #[error("algebra is not local (the variables do not generate a nilpotent ideal)")]
    NotLocal,
    #[error("element or subspace belongs to a different algebra")]
    AlgebraMismatch,
    #[error("presentation is not homogeneous")]
    NotHomogeneous,
}

impl From<GroebnerError> for AlgebraError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::NotArtinian { variable } => AlgebraError::NotArtinian(variable),
            GroebnerError::TooLarge { cap } => AlgebraError::TooLarge(cap),
        }
    }
}

/// Coordinates of an element of `A` in the standard-monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Element { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

/// An ideal of `A`, as a subspace closed under the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInA {
    space: Subspace,
    generators_hint: Option<Vec<Element>>,
}

impl IdealInA {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn generators_hint(&self) -> Option<&[Element]> {
        self.generators_hint.as_deref()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.space.contains(e.coeffs())
    }

    /// Wraps a subspace already known to be closed under multiplication.
    pub(crate) fn from_closed(space: Subspace) -> Self {
        IdealInA {
            space,
            generators_hint: None,
        }
    }
}

type SparseCol = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct ArtinianAlgebra {
    ctx: Arc<RingContext>,
    generators: Vec<Polynomial>,
    gb: GroebnerBasis,
    basis: StandardMonomials,
    /// `var_mats[v][j]` is the normal form of `x_v · b_j`, sparse.
    var_mats: Vec<Vec<SparseCol>>,
    /// `b_i = x_v · b_p` as `(v, p)`; `None` for `b_0 = 1`.
    parent: Vec<Option<(usize, usize)>>,
    filtration: Vec<Subspace>,
}

impl ArtinianAlgebra {
    /// Builds `k[x]/(generators)`.
    pub fn new(ctx: &Arc<RingContext>, generators: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        let gb = buchberger(ctx, &generators);
        if gb.is_unit() {
            return Err(AlgebraError::ZeroRing);
        }
        let basis = groebner::standard_monomials(&gb, MAX_DIM)?;
        let n = ctx.nvars();
        let dim = basis.len();
        let field = ctx.field();

        let mut var_mats = vec![Vec::with_capacity(dim); n];
        for (v, mat) in var_mats.iter_mut().enumerate() {
            for b in basis.basis() {
                let m = b.mul(&Monomial::var(n, v));
                let col = match basis.index_of(&m) {
                    Some(k) => vec![(k, field.one())],
                    None => {
                        let nf = normal_form(&Polynomial::term(ctx, m, field.one()), &gb);
                        let mut col: SparseCol = nf
                            .terms()
                            .iter()
                            .map(|(mono, c)| (basis.index_of(mono).expect("normal form is standard"), c.clone()))
                            .collect();
                        col.sort_by_key(|(k, _)| *k);
                        col
                    }
                };
                mat.push(col);
            }
        }

        let parent = basis
            .basis()
            .iter()
            .map(|b| {
                let v = b.exps().iter().position(|&e| e > 0)?;
                let p = b.div(&Monomial::var(n, v)).expect("variable divides");
                Some((v, basis.index_of(&p).expect("standard monomials form an order ideal")))
            })
            .collect();

        let mut alg = ArtinianAlgebra {
            ctx: ctx.clone(),
            generators,
            gb,
            basis,
            var_mats,
            parent,
            filtration: Vec::new(),
        };
        alg.filtration = alg.compute_filtration();
        Ok(alg)
    }

    /// Parses generator strings in `ctx` and builds the quotient.
    pub fn from_strings<S: AsRef<str>>(ctx: &Arc<RingContext>, gens: &[S]) -> Result<Self, AlgebraError> {
        let polys = gens
            .iter()
            .map(|g| parse_poly(g.as_ref(), ctx))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ctx, polys)
    }

    fn compute_filtration(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.field(), self.dim())];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.m_times(last);
            if next.dim() == last.dim() {
                // Stable: either zero (local) or a nonzero idempotent piece.
                if !next.is_zero() {
                    out.push(next);
                }
                break;
            }
            let stop = next.is_zero();
            out.push(next);
            if stop {
                break;
            }
        }
        out
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        self.ctx.field()
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn standard_monomials(&self) -> &StandardMonomials {
        &self.basis
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gb.is_homogeneous()
    }

    pub fn is_monomial(&self) -> bool {
        self.gb.is_monomial()
    }

    /// Whether every variable is nilpotent, so `A` is local with maximal
    /// ideal generated by the variables.
    pub fn is_local(&self) -> bool {
        self.filtration.last().is_some_and(Subspace::is_zero)
    }

    pub fn require_local(&self) -> Result<(), AlgebraError> {
        if self.is_local() {
            Ok(())
        } else {
            Err(AlgebraError::NotLocal)
        }
    }

    pub fn require_homogeneous(&self) -> Result<(), AlgebraError> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![self.field().zero(); self.dim()])
    }

    pub fn one(&self) -> Element {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coeffs[i] = self.field().one();
        e
    }

    /// Image of the variable `x_v`.
    pub fn var(&self, v: usize) -> Element {
        self.mul_var(v, &self.one())
    }

    /// Reduces a polynomial to its class in `A`.
    pub fn element(&self, f: &Polynomial) -> Result<Element, AlgebraError> {
        if **f.ctx() != *self.ctx {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let nf = normal_form(f, &self.gb);
        let mut e = self.zero();
        for (m, c) in nf.terms() {
            e.coeffs[self.basis.index_of(m).expect("normal form is standard")] = c.clone();
        }
        Ok(e)
    }

    pub fn parse_element(&self, src: &str) -> Result<Element, AlgebraError> {
        self.element(&parse_poly(src, &self.ctx)?)
    }

    /// The normal-form polynomial representing `e`.
    pub fn to_poly(&self, e: &Element) -> Polynomial {
        Polynomial::from_terms(
            &self.ctx,
            self.basis
                .basis()
                .iter()
                .zip(e.coeffs())
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn check(&self, e: &Element) -> Result<(), AlgebraError> {
        let ok = e.coeffs.len() == self.dim() && e.coeffs.iter().all(|c| c.field() == self.field());
        if ok {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn check_space(&self, s: &Subspace) -> Result<(), AlgebraError> {
        if s.ambient() == self.dim() && s.field() == self.field() {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    fn mul_var_vec(&self, v: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (j, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in &self.var_mats[v][j] {
                out[*k] = &out[*k] + &(a * c);
            }
        }
        out
    }

    pub fn mul_var(&self, v: usize, e: &Element) -> Element {
        Element::new(self.mul_var_vec(v, &e.coeffs))
    }

    /// `e · b_j` for every basis element, in basis order.
    fn products_with_basis(&self, e: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let col = match self.parent[j] {
                None => e.to_vec(),
                // Parents precede children in ascending order.
                Some((v, p)) => self.mul_var_vec(v, &out[p]),
            };
            out.push(col);
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let cols = self.products_with_basis(&a.coeffs);
        let mut out = vec![self.field().zero(); self.dim()];
        for (col, c) in cols.iter().zip(&b.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(col) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
        Element::new(out)
    }

    /// Structure constants of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        self.mul(&self.basis_element(i), &self.basis_element(j))
    }

    /// Row-major matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &Element) -> Vec<Vec<Scalar>> {
        let cols = self.products_with_basis(&a.coeffs);
        (0..self.dim())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect()
    }

    /// Rank of multiplication by `a` on `A`.
    pub fn mult_rank(&self, a: &Element) -> usize {
        Subspace::span(self.field(), self.dim(), self.products_with_basis(&a.coeffs)).dim()
    }

    /// `a · A`, the principal ideal.
    pub fn principal(&self, a: &Element) -> IdealInA {
        IdealInA {
            space: Subspace::span(self.field(), self.dim(), self.products_with_basis(&a.coeffs)),
            generators_hint: Some(vec![a.clone()]),
        }
    }

    /// `a · U` for a subspace `U`.
    pub fn element_times(&self, a: &Element, u: &Subspace) -> Subspace {
        let cols = self.products_with_basis(&a.coeffs);
        u.image(|x| linalg_combine(self.field(), self.dim(), &cols, x))
    }

    /// `m · U = Σ_v x_v U`.
    pub fn m_times(&self, u: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field(), self.dim());
        for r in u.rows() {
            for v in 0..self.nvars() {
                out.insert(self.mul_var_vec(v, r));
            }
        }
        out
    }

    /// Whether `U` is closed under every variable.
    pub fn is_ideal(&self, u: &Subspace) -> bool {
        u.rows()
            .iter()
            .all(|r| (0..self.nvars()).all(|v| u.contains(&self.mul_var_vec(v, r))))
    }

    /// The smallest ideal containing `gens`.
    pub fn ideal_from_generators(&self, gens: &[Element]) -> IdealInA {
        let mut space = Subspace::zero(self.field(), self.dim());
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            if space.insert(g.coeffs.clone()) {
                queue.push(g.coeffs.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for v in 0..self.nvars() {
                let y = self.mul_var_vec(v, &x);
                if space.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        IdealInA {
            space,
            generators_hint: Some(gens.to_vec()),
        }
    }

    /// Closure of a subspace under multiplication.
    pub fn ideal_closure(&self, u: &Subspace) -> IdealInA {
        let gens: Vec<Element> = u.rows().iter().cloned().map(Element::new).collect();
        let mut ideal = self.ideal_from_generators(&gens);
        ideal.generators_hint = None;
        ideal
    }

    pub fn unit_ideal(&self) -> IdealInA {
        IdealInA::from_closed(Subspace::full(self.field(), self.dim()))
    }

    pub fn zero_ideal(&self) -> IdealInA {
        IdealInA::from_closed(Subspace::zero(self.field(), self.dim()))
    }

    /// `m^i`; `m^0 = A`.
    pub fn mpow(&self, i: usize) -> IdealInA {
        let space = match self.filtration.get(i) {
            Some(s) => s.clone(),
            None if self.is_local() => Subspace::zero(self.field(), self.dim()),
            None => self.filtration.last().expect("nonempty").clone(),
        };
        IdealInA::from_closed(space)
    }

    pub fn maximal_ideal(&self) -> IdealInA {
        self.mpow(1)
    }

    /// Dimensions of `m^0, m^1, …` down to the first zero (or the stable
    /// piece for a non-local algebra).
    pub fn filtration_dims(&self) -> Vec<usize> {
        self.filtration.iter().map(Subspace::dim).collect()
    }

    /// Least `s` with `m^s = 0`.
    pub fn loewy_length(&self) -> Result<usize, AlgebraError> {
        self.require_local()?;
        Ok(self.filtration.len() - 1)
    }

    /// `h_i = dim m^i − dim m^{i+1}`, trailing zeros dropped.
    pub fn hilbert_function(&self) -> Result<Vec<usize>, AlgebraError> {
        self.require_local()?;
        Ok(self.filtration.windows(2).map(|w| w[0].dim() - w[1].dim()).collect())
    }

    /// `dim ((U ∩ m^i) + m^{i+1}) − dim m^{i+1}`: the degree-`i` part of `U`
    /// in the associated graded sense.
    pub fn filtered_piece_dim(&self, u: &Subspace, i: usize) -> usize {
        let mi = self.mpow(i);
        let mi1 = self.mpow(i + 1);
        u.intersection(mi.space()).sum(mi1.space()).dim() - mi1.dim()
    }

    /// `(0 : a)`.
    pub fn annihilator(&self, a: &Element) -> IdealInA {
        let k = linalg::kernel(self.field(), &self.mult_matrix(a), self.dim());
        IdealInA::from_closed(Subspace::span(self.field(), self.dim(), k))
    }

    /// `(0 : N) = { y : yN = 0 }`.
    pub fn ideal_annihilator(&self, n: &Subspace) -> IdealInA {
        let mut rows = Vec::new();
        for g in n.rows() {
            rows.extend(self.mult_matrix(&Element::new(g.clone())));
        }
        let k = linalg::kernel(self.field(), &rows, self.dim());
        IdealInA::from_closed(Subspace::span(self.field(), self.dim(), k))
    }

    /// `(0 : m)`.
    pub fn socle(&self) -> Result<IdealInA, AlgebraError> {
        self.require_local()?;
        let mut rows = Vec::new();
        for mat in &self.var_mats {
            for r in 0..self.dim() {
                let mut row = vec![self.field().zero(); self.dim()];
                for (j, col) in mat.iter().enumerate() {
                    if let Some((_, c)) = col.iter().find(|(k, _)| *k == r) {
                        row[j] = c.clone();
                    }
                }
                rows.push(row);
            }
        }
        let k = linalg::kernel(self.field(), &rows, self.dim());
        Ok(IdealInA::from_closed(Subspace::span(self.field(), self.dim(), k)))
    }

    pub fn is_gorenstein(&self) -> Result<bool, AlgebraError> {
        Ok(self.socle()?.dim() == 1)
    }

    /// Whether the defining ideal is generated by `nvars` elements.
    ///
    /// For a local algebra this is `μ(I) = ℓ(k[x]/mI) − ℓ(A)`, computed in
    /// the polynomial ring. Otherwise generators whose normal form modulo
    /// the others vanishes are dropped greedily and the rest counted.
    pub fn is_complete_intersection(&self) -> Result<bool, AlgebraError> {
        Ok(self.minimal_generator_count()? == self.nvars())
    }

    pub fn minimal_generator_count(&self) -> Result<usize, AlgebraError> {
        let gens: Vec<Polynomial> = self.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if self.is_local() {
            let mut products = Vec::new();
            for v in 0..self.nvars() {
                let x = Polynomial::var(&self.ctx, v);
                products.extend(self.gb.generators().iter().map(|g| &x * g));
            }
            let gb = buchberger(&self.ctx, &products);
            let bigger = groebner::standard_monomials(&gb, MAX_DIM * (self.nvars() + 1))?;
            return Ok(bigger.len() - self.dim());
        }
        let mut kept = gens.clone();
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Polynomial> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let gb = buchberger(&self.ctx, &others);
            if normal_form(&kept[i], &gb).is_zero() {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(kept.len())
    }

    /// `ℓ(A / (gens))`.
    pub fn quotient_length(&self, gens: &[Element]) -> usize {
        self.dim() - self.ideal_from_generators(gens).dim()
    }

    /// Span of the variable images.
    pub fn degree_one_space(&self) -> Subspace {
        Subspace::span(self.field(), self.dim(), (0..self.nvars()).map(|v| self.var(v).coeffs))
    }

    /// Indices of standard monomials of degree `i`.
    pub fn degree_indices(&self, i: usize) -> &[usize] {
        self.basis.by_degree().get(i).map_or(&[], Vec::as_slice)
    }

    /// Rank of `×ℓ : A_i → A_{i+1}` in a graded algebra.
    pub fn graded_rank(&self, l: &Element, i: usize) -> usize {
        linalg::rank(&self.graded_block(l, i))
    }

    /// Matrix of `×ℓ : A_i → A_{i+1}` (rows index degree `i+1`).
    pub fn graded_block(&self, l: &Element, i: usize) -> Vec<Vec<Scalar>> {
        let src = self.degree_indices(i);
        let dst = self.degree_indices(i + 1);
        let cols = self.products_with_basis(&l.coeffs);
        dst.iter()
            .map(|&r| src.iter().map(|&j| cols[j][r].clone()).collect())
            .collect()
    }

    /// Basis vectors `x_v · b_j` spanning `m · span(b_j)` for generic
    /// element construction: `var_mats[v]` as sparse columns.
    pub fn var_column(&self, v: usize, j: usize) -> &[(usize, Scalar)] {
        &self.var_mats[v][j]
    }

    /// Vectors `b_j · b_k` for all `j, k`, row-indexed by output coordinate:
    /// entry `[k][j]` is `b_j · b_k`. Used for generic multiplication maps.
    pub fn basis_products(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim())
            .map(|k| self.products_with_basis(&self.basis_element(k).coeffs))
            .collect()
    }
}

fn linalg_combine(field: FieldSpec, dim: usize, cols: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dim];
    for (col, c) in cols.iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(col) {
            if !y.is_zero() {
                *o = &*o + &(c * y);
            }
        }
    }
    out
}
