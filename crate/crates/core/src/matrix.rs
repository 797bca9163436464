//! Dense matrices over a runtime-chosen exact field.
//!
//! Row-major storage; every matrix carries its [`Field`] descriptor and all
//! binary operations check field agreement.  Sizes in this library are small
//! (a few hundred rows/columns at the top end), so the representation favors
//! clarity over asymptotics.  Zero-row and zero-column matrices are fully
//! supported — graded objects produce them constantly.
//!
//! The Kronecker product uses the row-major pairing convention: the entry of
//! `kron(A, B)` at row `(i, j)` and column `(k, l)` is `A[i,k] * B[j,l]`,
//! with pair `(i, j)` flattened to `i * rows(B) + j`.  Under this convention
//! `kron` is strictly associative and `vec(A X B) = kron(B^T, A) vec(X)`
//! holds for the column-major vectorization used by the linear-system layer.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    /// Build from integer rows; convenient in tests and examples.
    pub fn from_rows_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field, self.rows)
    }

    fn same_field(&self, other: &Matrix) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in add");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.same_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in sub");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self.field.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.field.neg(self.get(i, j)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.field.mul(s, self.get(i, j)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.same_field(other);
        assert!(
            self.cols == other.rows,
            "shape mismatch in mul: {}x{} * {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = f.add(cur, &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// All entries as one column, rows first.
    pub fn flatten(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows * self.cols, 1, |i, _| {
            self.get(i / self.cols, i % self.cols).clone()
        })
    }

    /// Accumulate `block` into `self` with its top-left corner at
    /// `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of bounds");
        let f = self.field;
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = f.add(self.get(r0 + i, c0 + j), block.get(i, j));
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    /// Horizontal concatenation `[A | B | ...]`; all blocks share row count.
    pub fn hstack(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |m| m.rows);
        assert!(blocks.iter().all(|m| m.rows == rows && m.field == field), "hstack shape/field mismatch");
        let cols: usize = blocks.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in blocks {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share column count.
    pub fn vstack(field: Field, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |m| m.cols);
        assert!(blocks.iter().all(|m| m.cols == cols && m.field == field), "vstack shape/field mismatch");
        let rows: usize = blocks.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in blocks {
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|m| m.rows).sum();
        let cols: usize = blocks.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in blocks {
            assert!(m.field == field, "block_diag field mismatch");
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Kronecker product with row-major index pairing (see module docs).
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.same_field(other);
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(j, l);
                        if f.is_zero(b) {
                            continue;
                        }
                        out.set(i * other.rows + j, k * other.cols + l, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// The `j`-th column as an `rows x 1` matrix.
    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    /// Columns selected by `indices`, in order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, indices.len(), |i, j| self.get(i, indices[j]).clone())
    }

    /// The submatrix of rows `r0..r1`, all columns.
    /// Columns `c0..c1` as a new matrix.
    pub fn col_slice(&self, c0: usize, c1: usize) -> Matrix {
        assert!(c0 <= c1 && c1 <= self.cols, "column slice out of bounds");
        Matrix::from_fn(self.field, self.rows, c1 - c0, |i, j| self.get(i, c0 + j).clone())
    }

    pub fn row_slice(&self, r0: usize, r1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows);
        Matrix::from_fn(self.field, r1 - r0, self.cols, |i, j| self.get(r0 + i, j).clone())
    }

    /// Check the shape against an expectation, with a named context for the
    /// error message.
    pub fn expect_shape(&self, rows: usize, cols: usize, context: &str) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::dim(
                context,
                format!("{rows}x{cols}"),
                format!("{}x{}", self.rows, self.cols),
            ));
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn mul_identity_and_shapes() {
        let a = Matrix::from_rows_i64(q(), &[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(a.mul(&Matrix::identity(q(), 2)), a);
        assert_eq!(Matrix::identity(q(), 3).mul(&a), a);
        let z = Matrix::zeros(q(), 2, 0);
        let w = Matrix::zeros(q(), 0, 5);
        let p = z.mul(&w);
        assert_eq!((p.rows(), p.cols()), (2, 5));
        assert!(p.is_zero());
    }

    #[test]
    fn kron_is_strictly_associative() {
        let a = Matrix::from_rows_i64(q(), &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_rows_i64(q(), &[&[2, 0, 1]]);
        let c = Matrix::from_rows_i64(q(), &[&[1], &[3]]);
        assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn kron_mixed_product() {
        // (A kron B)(C kron D) = AC kron BD
        let a = Matrix::from_rows_i64(q(), &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_rows_i64(q(), &[&[0, 1], &[1, 1]]);
        let c = Matrix::from_rows_i64(q(), &[&[2], &[1]]);
        let d = Matrix::from_rows_i64(q(), &[&[1, 0], &[0, 2]]);
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn stacking_round_trip() {
        let a = Matrix::from_rows_i64(q(), &[&[1], &[2]]);
        let b = Matrix::from_rows_i64(q(), &[&[3], &[4]]);
        let h = Matrix::hstack(q(), &[&a, &b]);
        assert_eq!(h, Matrix::from_rows_i64(q(), &[&[1, 3], &[2, 4]]));
        let v = Matrix::vstack(q(), &[&a.transpose(), &b.transpose()]);
        assert_eq!(v, Matrix::from_rows_i64(q(), &[&[1, 2], &[3, 4]]));
    }

    proptest! {
        #[test]
        fn transpose_reverses_products(
            a in proptest::collection::vec(-5i64..5, 6),
            b in proptest::collection::vec(-5i64..5, 6),
        ) {
            let a = Matrix::from_fn(q(), 2, 3, |i, j| q().from_i64(a[i * 3 + j]));
            let b = Matrix::from_fn(q(), 3, 2, |i, j| q().from_i64(b[i * 2 + j]));
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }
}
