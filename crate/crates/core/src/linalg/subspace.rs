use crate::error::{Error, Result};
use crate::field::Field;

use super::matrix::Matrix;

/// A subspace of `k^n`, stored canonically: the basis vectors are the rows of
/// a reduced row echelon matrix with no zero rows. Two spanning sets of the
/// same space therefore yield identical values, and `==` is subspace equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<K: Field> {
    ambient: usize,
    basis: Matrix<K>,
    pivots: Vec<usize>,
}

/// Result of testing whether a sum of subspaces is direct.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSum<K: Field> {
    pub direct: bool,
    pub witness: Option<Dependency<K>>,
}

/// A nontrivial relation `Σ components[i] = 0` with each
/// `components[i]` in the `i`-th subspace and at least two of them nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Dependency<K: Field> {
    /// Coefficients against the concatenated canonical bases.
    pub coefficients: Vec<K::Elem>,
    pub components: Vec<Vec<K::Elem>>,
}

/// `k^n / S` with an explicit projection and a right inverse of it.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient<K: Field> {
    pub dim: usize,
    /// `dim x n`, surjective with kernel `S`.
    pub projection: Matrix<K>,
    /// `n x dim`, `projection * section = id`.
    pub section: Matrix<K>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: &K, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &K, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix<K>) -> Self {
        let ech = m.echelon();
        let rank = ech.pivots.len();
        let keep: Vec<usize> = (0..rank).collect();
        Self {
            ambient: m.cols(),
            basis: ech.reduced.select_rows(&keep),
            pivots: ech.pivots,
        }
    }

    /// Column space of `m`.
    pub fn column_span(m: &Matrix<K>) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn from_vectors(field: &K, ambient: usize, vectors: &[Vec<K::Elem>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        Self::row_span(&Matrix::from_rows(field, vectors.to_vec()))
    }

    pub fn field(&self) -> &K {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis vectors as rows.
    pub fn basis_rows(&self) -> &Matrix<K> {
        &self.basis
    }

    /// Canonical basis vectors as columns (`ambient x dim`).
    pub fn basis_columns(&self) -> Matrix<K> {
        self.basis.transpose()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<K::Elem>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Reduces `v` against the basis; the residue vanishes iff `v` lies in the space.
    pub fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let factor = out[pc].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (c, b) in self.basis.row(r).iter().enumerate() {
                if !f.is_zero(b) {
                    out[c] = f.sub(&out[c], &f.mul(&factor, b));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[K::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }

    pub fn contains(&self, other: &Self) -> bool {
        assert_eq!(self.ambient, other.ambient);
        other.basis_vectors().iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field();
        let stacked = Matrix::vstack(f, self.ambient, &[&self.basis, &other.basis]);
        Self::row_span(&stacked)
    }

    pub fn sum_all(field: &K, ambient: usize, spaces: &[Self]) -> Self {
        spaces.iter().fold(Self::zero(field, ambient), |acc, s| acc.sum(s))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let f = self.field();
        // x = B1^T a = B2^T b  <=>  [B1^T | -B2^T] (a;b) = 0
        let b1 = self.basis_columns();
        let b2 = other.basis_columns().neg();
        let kernel = Matrix::hstack(f, self.ambient, &[&b1, &b2]).kernel();
        let coeffs = kernel.block(0, 0, self.dim(), kernel.cols());
        Self::column_span(&b1.mul(&coeffs))
    }

    /// Image of the space under `map` (`m x ambient`).
    pub fn image_under(&self, map: &Matrix<K>) -> Self {
        assert_eq!(map.cols(), self.ambient);
        Self::column_span(&map.mul(&self.basis_columns()))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        if !self.contains_vector(v) {
            return None;
        }
        // Rows are in RREF, so the coordinate on row r is v[pivot_r].
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Projection onto `k^n / self` using the non-pivot coordinates.
    pub fn quotient(&self) -> Quotient<K> {
        let f = self.field();
        let n = self.ambient;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(f, free.len(), n);
        let mut section = Matrix::zeros(f, n, free.len());
        for (j, &fc) in free.iter().enumerate() {
            section.set(fc, j, f.one());
        }
        for c in 0..n {
            let mut e = vec![f.zero(); n];
            e[c] = f.one();
            let residue = self.reduce(&e);
            for (j, &fc) in free.iter().enumerate() {
                projection.set(j, c, residue[fc].clone());
            }
        }
        Quotient {
            dim: free.len(),
            projection,
            section,
        }
    }
}

/// Decides whether `Σ spaces` is direct, i.e. `dim Σ = Σ dim`.
pub fn sum_is_direct<K: Field>(field: &K, ambient: usize, spaces: &[Subspace<K>]) -> Result<DirectSum<K>> {
    if let Some(s) = spaces.iter().find(|s| s.ambient != ambient) {
        return Err(Error::Dimension(format!(
            "subspace of k^{} in a sum inside k^{ambient}",
            s.ambient
        )));
    }
    let columns: Vec<Matrix<K>> = spaces.iter().map(Subspace::basis_columns).collect();
    let refs: Vec<&Matrix<K>> = columns.iter().collect();
    let stacked = Matrix::hstack(field, ambient, &refs);
    let kernel = stacked.kernel();
    if kernel.cols() == 0 {
        return Ok(DirectSum {
            direct: true,
            witness: None,
        });
    }
    let coefficients = kernel.column(0);
    let mut components = Vec::with_capacity(spaces.len());
    let mut offset = 0;
    for s in spaces {
        let c = &coefficients[offset..offset + s.dim()];
        components.push(s.basis_columns().mul_vec(c));
        offset += s.dim();
    }
    Ok(DirectSum {
        direct: false,
        witness: Some(Dependency {
            coefficients,
            components,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn vecs(f: &PrimeField, rows: &[&[i64]]) -> Vec<Vec<u64>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn canonical_equality() {
        let f = PrimeField::default();
        let a = Subspace::from_vectors(&f, 3, &vecs(&f, &[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::from_vectors(&f, 3, &vecs(&f, &[&[1, 2, 1], &[1, 0, -1], &[2, 3, 1]]));
        assert_eq!(a, b);
    }

    #[test]
    fn direct_sums() {
        let f = PrimeField::default();
        let e1 = Subspace::from_vectors(&f, 2, &vecs(&f, &[&[1, 0]]));
        let e2 = Subspace::from_vectors(&f, 2, &vecs(&f, &[&[0, 1]]));
        let diag = Subspace::from_vectors(&f, 2, &vecs(&f, &[&[1, 1]]));
        assert!(sum_is_direct(&f, 2, &[e1.clone(), e2.clone()]).unwrap().direct);
        let res = sum_is_direct(&f, 2, &[e1, diag, e2]).unwrap();
        assert!(!res.direct);
        let w = res.witness.unwrap();
        let total = w.components.iter().fold(vec![0u64; 2], |acc, c| {
            acc.iter().zip(c).map(|(a, b)| f.add(a, b)).collect()
        });
        assert_eq!(total, vec![0, 0]);
        assert!(w.components.iter().filter(|c| c.iter().any(|&e| e != 0)).count() >= 2);
        assert!(sum_is_direct(&f, 2, &[]).unwrap().direct);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = PrimeField::default();
        assert!(sum_is_direct(&f, 2, &[Subspace::zero(&f, 3)]).is_err());
    }

    #[test]
    fn quotients() {
        let f = PrimeField::default();
        let e3 = Subspace::from_vectors(&f, 3, &vecs(&f, &[&[0, 0, 1]]));
        assert_eq!(e3.quotient().dim, 2);
        let q = Subspace::zero(&f, 3).quotient();
        assert_eq!(q.projection, Matrix::identity(&f, 3));

        let f2 = PrimeField::new(2).unwrap();
        let diag = Subspace::from_vectors(&f2, 2, &vecs(&f2, &[&[1, 1]]));
        let q = diag.quotient();
        assert_eq!(q.dim, 1);
        assert_eq!(q.projection.mul_vec(&[1, 1]), vec![0]);
        assert_eq!(q.projection.mul(&q.section), Matrix::identity(&f2, 1));
    }

    #[test]
    fn intersection_and_sum() {
        let f = PrimeField::default();
        let a = Subspace::from_vectors(&f, 3, &vecs(&f, &[&[1, 0, 0], &[0, 1, 0]]));
        let b = Subspace::from_vectors(&f, 3, &vecs(&f, &[&[0, 1, 0], &[0, 0, 1]]));
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(&f, 3, &vecs(&f, &[&[0, 1, 0]])));
        assert_eq!(a.sum(&b), Subspace::full(&f, 3));
    }
}
