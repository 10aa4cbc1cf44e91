use std::fmt;

use rand::Rng;

use crate::field::Field;

/// Dense row-major matrix over a field. Maps act on column vectors, so a
/// map `k^n -> k^m` is an `m x n` matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.literal(e)).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon<K: Field> {
    pub reduced: Matrix<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    pub fn new(field: K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self::new(field.clone(), rows, cols, data)
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &K, rows: Vec<Vec<K::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(field.clone(), r, c, rows.into_iter().flatten().collect())
    }

    /// Integer literals reduced into the field; mostly for tests.
    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn column_vector(field: &K, v: Vec<K::Elem>) -> Self {
        let n = v.len();
        Self::new(field.clone(), n, 1, v)
    }

    pub fn from_columns(field: &K, rows: usize, columns: &[Vec<K::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, e) in col.iter().enumerate() {
                m.data[r * m.cols + c] = e.clone();
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &K, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Self::new(field.clone(), rows, cols, data)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<K::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.rows,
            "cannot multiply {:?} by {:?}",
            self.shape(),
            other.shape()
        );
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&K::Elem, &K::Elem) -> K::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Self::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Self::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Self::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    /// Side-by-side concatenation; all blocks share the row count `rows`.
    pub fn hstack(field: &K, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.paste(0, offset, b);
            offset += b.cols;
        }
        out
    }

    pub fn vstack(field: &K, cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.paste(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(field: &K, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.data[r * block.cols + c].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.data[(r0 + r) * self.cols + c0 + c].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        Self::new(self.field.clone(), idx.len(), self.cols, data)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = f.mul(a, other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting. Deterministic.
    pub fn echelon(&self) -> Echelon<K> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let delta = f.mul(&factor, m.get(row, c));
                    if !f.is_zero(&delta) {
                        let v = f.sub(m.get(r, c), &delta);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space as the columns of a `cols x nullity` matrix.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, f.neg(reduced.get(r, fc)));
            }
        }
        out
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = &self.field;
        let aug = Self::hstack(f, self.rows, &[self, rhs]);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Self::identity(&self.field, self.rows))
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.is_injective()
    }
}
