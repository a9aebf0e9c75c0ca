//! Dense exact linear algebra over a [`FieldSpec`]: rank, kernels and
//! subspaces kept in reduced row echelon form.

use crate::arith::{FieldSpec, Scalar};

fn field_of(rows: &[Vec<Scalar>]) -> Option<FieldSpec> {
    rows.iter().flatten().next().map(Scalar::field)
}

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns, one per remaining row.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{ v : M v = 0 }` for the `rows × ncols` matrix `M`.
pub fn kernel(field: FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

/// Matrix–vector product for a row-major matrix.
pub fn mat_vec(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let field = v.first().map(Scalar::field).or_else(|| field_of(rows));
    rows.iter()
        .map(|row| {
            let mut acc = field.expect("nonempty").zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// A subspace of `field^ambient`, stored as the reduced row echelon basis.
///
/// The representation is canonical, so equality and hashing are equality
/// of subspaces. The derived order (by rows, then pivots) is used only to
/// make enumeration order deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let pivots = rref(&mut rows);
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the projection onto the pivot coordinates, leaving the
    /// canonical remainder of `v` modulo this subspace.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // Combinations of our basis whose remainder modulo `other` vanishes.
        let remainders: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| {
                let mut w = r.clone();
                other.reduce(&mut w);
                w
            })
            .collect();
        let k = self.rows.len();
        let transposed: Vec<Vec<Scalar>> = (0..self.ambient)
            .map(|c| remainders.iter().map(|r| r[c].clone()).collect())
            .collect();
        let coeffs = kernel(self.field, &transposed, k);
        Subspace::span(self.field, self.ambient, coeffs.into_iter().map(|a| self.combine(&a)))
    }

    /// `Σ a_i row_i`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.ambient];
        for (a, row) in coeffs.iter().zip(&self.rows) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x + &(a * y);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(r))
    }

    /// Image of this subspace under a linear map given on vectors.
    pub fn image<F>(&self, map: F) -> Subspace
    where
        F: Fn(&[Scalar]) -> Vec<Scalar>,
    {
        let mut out = Subspace::zero(self.field, self.ambient);
        for r in &self.rows {
            out.insert(map(r));
        }
        out
    }

    /// Basis of a complement of `self` inside `larger` (given modulo `self`).
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vec<Scalar>> {
        let mut quotient = Subspace::zero(self.field, self.ambient);
        for r in &larger.rows {
            let mut w = r.clone();
            self.reduce(&mut w);
            quotient.insert(w);
        }
        quotient.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| FieldSpec::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(rank(&m), 2);
        let k = kernel(FieldSpec::Rationals, &m, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn lattice_idempotence() {
        let f = FieldSpec::Rationals;
        let u = Subspace::span(f, 3, [q(&[1, 1, 0]), q(&[0, 1, 1])]);
        assert_eq!(u.sum(&u), u);
        assert_eq!(u.intersection(&u), u);
        let v = Subspace::span(f, 3, [q(&[1, 0, 0])]);
        assert_eq!(u.intersection(&v).dim(), 0);
        assert_eq!(u.sum(&v), Subspace::full(f, 3));
    }

    #[test]
    fn insert_keeps_canonical_form() {
        let f = FieldSpec::prime(3).unwrap();
        let v = |a: &[i64]| a.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut s = Subspace::zero(f, 3);
        assert!(s.insert(v(&[0, 1, 2])));
        assert!(s.insert(v(&[1, 1, 1])));
        assert!(!s.insert(v(&[1, 2, 0])));
        assert_eq!(s, Subspace::span(f, 3, [v(&[1, 0, 2]), v(&[0, 2, 1])]));
    }
}
