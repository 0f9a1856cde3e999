//! Dense matrices over an exact scalar ring.
//!
//! Row-major storage, zero-sized dimensions allowed everywhere (a 0×n matrix
//! is the unique map from Z^n to the zero module). Multiplication skips zero
//! entries, which matters a lot in practice: almost every structural matrix
//! in this crate (cofaces, degeneracies, block embeddings) is 0/±1 sparse.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor for literal test matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| T::from_i64(v))).collect();
        Matrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() + other.at(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() - other.at(i, j).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| T::mul_ref(self.at(i, j), c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = T::mul_ref(a, b);
                    T::add_assign_ref(&mut out.entries[i * other.cols + j], &prod);
                }
            }
        }
        out
    }

    /// Writes `block` into `self` with upper-left corner at `(r0, c0)`.
    pub fn insert_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.at(i, j).clone());
            }
        }
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(parts: &[&Self]) -> Self {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows), "hstack: row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.insert_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&Self]) -> Self {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols), "vstack: column mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.insert_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.insert_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.at(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn column_range(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.cols);
        Self::from_fn(self.rows, hi - lo, |i, j| self.at(i, lo + j).clone())
    }

    pub fn row_range(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.rows);
        Self::from_fn(hi - lo, self.cols, |i, j| self.at(lo + i, j).clone())
    }

    /// Kronecker product: `(a ⊗ b)[i*p+k, j*q+l] = a[i,j] * b[k,l]`.
    pub fn kronecker(a: &Self, b: &Self) -> Self {
        let mut out = Self::zeros(a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let e = a.at(i, j);
                if e.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let f = b.at(k, l);
                        if !f.is_zero() {
                            out.set(i * b.rows + k, j * b.cols + l, T::mul_ref(e, f));
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            // pivot: first nonzero in column k at or below row k
            let pivot = (k..n).find(|&r| !m.at(r, k).is_zero());
            let Some(p) = pivot else {
                return T::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = T::mul_ref(m.at(k, k), m.at(i, j));
                    let sub = T::mul_ref(m.at(i, k), m.at(k, j));
                    let (q, r) = (num - sub).div_rem(&prev);
                    debug_assert!(r.is_zero(), "bareiss division must be exact");
                    m.set(i, j, q);
                }
                m.set(i, k, T::zero());
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_target -= q * row_source
    pub fn row_sub_multiple(&mut self, target: usize, source: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let prod = T::mul_ref(self.at(source, j), q);
            T::sub_assign_ref(&mut self.entries[target * self.cols + j], &prod);
        }
    }

    /// col_target -= q * col_source
    pub fn col_sub_multiple(&mut self, target: usize, source: usize, q: &T) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let prod = T::mul_ref(self.at(i, source), q);
            T::sub_assign_ref(&mut self.entries[i * self.cols + target], &prod);
        }
    }

    /// Replaces rows (a, b) by (x·a + y·b, z·a + w·b).
    pub fn row_transform(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) {
        for j in 0..self.cols {
            let va = self.at(a, j).clone();
            let vb = self.at(b, j).clone();
            self.set(a, j, T::mul_ref(x, &va) + T::mul_ref(y, &vb));
            self.set(b, j, T::mul_ref(z, &va) + T::mul_ref(w, &vb));
        }
    }

    /// Replaces columns (a, b) by (x·a + y·b, z·a + w·b).
    pub fn col_transform(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) {
        for i in 0..self.rows {
            let va = self.at(i, a).clone();
            let vb = self.at(i, b).clone();
            self.set(i, a, T::mul_ref(x, &va) + T::mul_ref(y, &vb));
            self.set(i, b, T::mul_ref(z, &va) + T::mul_ref(w, &vb));
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = self.at(r, j).clone();
            self.set(r, j, -v);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = self.at(i, c).clone();
            self.set(i, c, -v);
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Nonzero entries of column `j` as `(row, value)` pairs.
    pub fn column_support(&self, j: usize) -> Vec<(usize, &T)> {
        (0..self.rows).filter(|&i| !self.at(i, j).is_zero()).map(|i| (i, self.at(i, j))).collect()
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    type M = Matrix<Int>;

    #[test]
    fn product_against_hand_value() {
        let a = M::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = M::from_i64_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(a.mul(&b), M::from_i64_rows(&[&[2, 3], &[4, 7]]));
    }

    #[test]
    fn zero_dimensional_edges() {
        let a = M::zeros(0, 3);
        let b = M::zeros(3, 2);
        let c = a.mul(&b);
        assert_eq!((c.rows(), c.cols()), (0, 2));
        assert!(M::identity(0).is_square());
        let d = M::zeros(2, 0).mul(&M::zeros(0, 5));
        assert!(d.is_zero());
        assert_eq!((d.rows(), d.cols()), (2, 5));
    }

    #[test]
    fn kronecker_shape_and_values() {
        let a = M::from_i64_rows(&[&[1, 2]]);
        let b = M::from_i64_rows(&[&[3], &[5]]);
        let k = M::kronecker(&a, &b);
        assert_eq!(k, M::from_i64_rows(&[&[3, 6], &[5, 10]]));
    }

    #[test]
    fn determinant_examples() {
        let m = M::from_i64_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(m.determinant(), Int::from(-8));
        let id = M::identity(4);
        assert_eq!(id.determinant(), Int::from(1));
        let singular = M::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), Int::from(0));
        assert_eq!(M::identity(0).determinant(), Int::from(1));
    }

    #[test]
    fn stacking() {
        let a = M::identity(2);
        let b = M::zeros(2, 1);
        let h = M::hstack(&[&a, &b]);
        assert_eq!((h.rows(), h.cols()), (2, 3));
        let v = M::vstack(&[&a, &M::zeros(1, 2)]);
        assert_eq!((v.rows(), v.cols()), (3, 2));
        let d = M::block_diag(&[&a, &M::identity(3)]);
        assert_eq!((d.rows(), d.cols()), (5, 5));
        assert_eq!(d, M::identity(5));
    }
}
