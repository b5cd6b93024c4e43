use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExactlinError, Scalar};

/// A sparse matrix over [`Scalar`], stored as a sorted `(row, col) -> value`
/// map with zero entries never present. Sizes are explicit so zero rows and
/// columns are meaningful.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

/// One explicit entry of a serialized matrix: `[row, col, scalar]`.
#[derive(Clone, Serialize, Deserialize)]
pub struct MatEntry(pub usize, pub usize, pub Scalar);

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for k in 0..n {
            m.set(k, k, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Build from integer entries given row-major.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_int(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Set an entry, removing it if the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Add `v` into the entry at `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    /// Sorted iterator over nonzero entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Nonzero entries of one row, sorted by column.
    pub fn row_iter(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), v)| (c, v))
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        let mut m = Mat::zero(self.rows, self.cols);
        if k.is_zero() {
            return m;
        }
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), v * k);
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut m = self.clone();
        for (r, c, v) in other.iter() {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let mut m = Mat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.entries.insert((r, c), -v);
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in multiply");
        let mut m = Mat::zero(self.rows, other.cols);
        for (r, k, a) in self.iter() {
            for (c, b) in other.row_iter(k) {
                let mut cur = m.get(r, c);
                cur.add_mul_assign(a, b);
                m.set(r, c, cur);
            }
        }
        m
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Scalar::zero();
        for k in 0..self.rows {
            if let Some(v) = self.entries.get(&(k, k)) {
                t += v;
            }
        }
        t
    }

    /// Kronecker (tensor) product; index `(i, j)` of the result corresponds
    /// to `i = r_a * other.rows + r_b`, `j = c_a * other.cols + c_b`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut m = Mat::zero(self.rows * other.rows, self.cols * other.cols);
        for (ra, ca, a) in self.iter() {
            for (rb, cb, b) in other.iter() {
                m.entries
                    .insert((ra * other.rows + rb, ca * other.cols + cb), a * b);
            }
        }
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn insert_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for (r, c, v) in block.iter() {
            self.set(r0 + r, c0 + c, v.clone());
        }
    }

    /// Matrix-vector product with a dense vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = vec![Scalar::zero(); self.rows];
        for (r, c, a) in self.iter() {
            out[r].add_mul_assign(a, &v[c]);
        }
        out
    }

    /// Row-major flattening to a dense vector of length `rows * cols`.
    pub fn to_dense_vec(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rows * self.cols];
        for (r, c, v) in self.iter() {
            out[r * self.cols + c] = v.clone();
        }
        out
    }

    /// Inverse of [`Mat::to_dense_vec`].
    pub fn from_dense_vec(rows: usize, cols: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), rows * cols, "length mismatch");
        let mut m = Mat::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, v[r * cols + c].clone());
            }
        }
        m
    }

    /// Entry-list form used by the JSON interchange formats.
    pub fn to_entry_list(&self) -> Vec<MatEntry> {
        self.iter().map(|(r, c, v)| MatEntry(r, c, v.clone())).collect()
    }

    pub fn from_entry_list(
        rows: usize,
        cols: usize,
        entries: &[MatEntry],
    ) -> Result<Mat, ExactlinError> {
        let mut m = Mat::zero(rows, cols);
        for MatEntry(r, c, v) in entries {
            if *r >= rows || *c >= cols {
                return Err(ExactlinError::Dimension { expected: rows * cols, got: r * cols + c });
            }
            m.set(*r, *c, v.clone());
        }
        Ok(m)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            write!(f, "  ")?;
            for c in 0..self.cols.min(16) {
                write!(f, "{:>8}", self.get(r, c).to_string())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_commutator() {
        let a = Mat::from_int_rows(&[&[0, 1], &[0, 0]]);
        let b = Mat::from_int_rows(&[&[0, 0], &[1, 0]]);
        let h = a.commutator(&b);
        assert_eq!(h, Mat::from_int_rows(&[&[1, 0], &[0, -1]]));
        assert_eq!(h.trace(), Scalar::zero());
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = Mat::from_int_rows(&[&[1, 2]]);
        let b = Mat::from_int_rows(&[&[0, 3], &[4, 0]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k.get(0, 1), Scalar::from_int(3));
        assert_eq!(k.get(1, 2), Scalar::from_int(8));
    }

    #[test]
    fn dense_round_trip() {
        let a = Mat::from_int_rows(&[&[1, 0, -2], &[0, 5, 0]]);
        let v = a.to_dense_vec();
        assert_eq!(Mat::from_dense_vec(2, 3, &v), a);
    }
}
