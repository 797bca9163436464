//! Exact Gaussian elimination and everything built on it: rank, kernels,
//! images, inverses, subspace arithmetic, quotients, and a solver for affine
//! systems whose unknowns are whole families of matrices.
//!
//! Subspaces of `K^n` are represented as matrices whose columns span the
//! subspace.  Bases produced here are echelon-reduced but otherwise
//! arbitrary; callers should compare subspaces by dimension and containment,
//! never by literal basis entries.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Reduced row echelon form together with the pivot column indices.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let f = m.field();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        // Find a pivot in this column at or below `row`.
        let Some(p) = (row..a.rows()).find(|&r| !f.is_zero(a.get(r, col))) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols() {
                let x = a.get(row, j).clone();
                let y = a.get(p, j).clone();
                a.set(row, j, y);
                a.set(p, j, x);
            }
        }
        let inv = f.inv(a.get(row, col)).expect("pivot is nonzero");
        for j in col..a.cols() {
            let v = f.mul(&inv, a.get(row, j));
            a.set(row, j, v);
        }
        for r in 0..a.rows() {
            if r == row || f.is_zero(a.get(r, col)) {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in col..a.cols() {
                let v = f.sub(a.get(r, j), &f.mul(&factor, a.get(row, j)));
                a.set(r, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Basis of the null space `{x : Mx = 0}`, as columns.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let f = m.field();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(f, m.cols(), free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, f.one());
        for (prow, &pc) in pivots.iter().enumerate() {
            out.set(pc, k, f.neg(r.get(prow, fc)));
        }
    }
    out
}

/// Basis of the column span: the pivot columns of the original matrix.
pub fn image_basis(m: &Matrix) -> Matrix {
    let (_, pivots) = rref(m);
    m.select_columns(&pivots)
}

/// Solve `A X = B` for `X` exactly; `None` when inconsistent.  Free
/// variables are set to zero.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let f = a.field();
    let aug = Matrix::hstack(f, &[a, b]);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = Matrix::zeros(f, a.cols(), b.cols());
    for (prow, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(pc, j, r.get(prow, a.cols() + j).clone());
        }
    }
    Some(x)
}

/// Inverse of a square matrix; `None` when singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let x = solve(a, &Matrix::identity(a.field(), a.rows()))?;
    // A has full column rank iff the solve pivoted in every column.
    if rank(a) < a.rows() {
        return None;
    }
    Some(x)
}

/// Does the column span of `inner` lie inside the column span of `outer`?
pub fn contains(outer: &Matrix, inner: &Matrix) -> bool {
    solve(outer, inner).is_some()
}

/// Do two column spans coincide?
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    contains(a, b) && contains(b, a)
}

/// Basis of the intersection of two column spans in the same ambient space.
pub fn intersection(u: &Matrix, w: &Matrix) -> Result<Matrix> {
    if u.rows() != w.rows() {
        return Err(Error::dim("intersection", format!("ambient {}", u.rows()), format!("{}", w.rows())));
    }
    let f = u.field();
    // (x, y) with Ux + Wy = 0  =>  Ux ranges over the intersection.
    let k = kernel_basis(&Matrix::hstack(f, &[u, &w.neg()]));
    let x_part = k.row_slice(0, u.cols());
    Ok(image_basis(&u.mul(&x_part)))
}

/// Basis of the sum of two column spans.
pub fn sum(u: &Matrix, w: &Matrix) -> Result<Matrix> {
    if u.rows() != w.rows() {
        return Err(Error::dim("sum", format!("ambient {}", u.rows()), format!("{}", w.rows())));
    }
    Ok(image_basis(&Matrix::hstack(u.field(), &[u, w])))
}

/// A complement of the column span of `u` inside the ambient `K^n`:
/// standard basis vectors completing `u` to a basis.
pub fn complement(u: &Matrix) -> Matrix {
    let f = u.field();
    let n = u.rows();
    let idn = Matrix::identity(f, n);
    let (_, pivots) = rref(&Matrix::hstack(f, &[u, &idn]));
    let extra: Vec<usize> = pivots.iter().filter(|&&p| p >= u.cols()).map(|&p| p - u.cols()).collect();
    idn.select_columns(&extra)
}

/// The quotient `K^n / span(u)`: a projection, and a section picking
/// representatives, with `proj . section = id` and `proj . u = 0`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub proj: Matrix,
    pub section: Matrix,
}

pub fn quotient(u: &Matrix) -> Quotient {
    let f = u.field();
    let n = u.rows();
    let ubasis = image_basis(u);
    let comp = complement(&ubasis);
    let basis = Matrix::hstack(f, &[&ubasis, &comp]);
    let inv = invert(&basis).expect("basis change is invertible");
    let proj = inv.row_slice(ubasis.cols(), n);
    Quotient { proj, section: comp }
}

/// The map induced on quotients by `f : K^n -> K^m` when `f(span u)` lies
/// inside `span w`.  Fails with a named error otherwise.
pub fn induced_on_quotient(f: &Matrix, u: &Quotient, usub: &Matrix, w: &Quotient, wsub: &Matrix) -> Result<Matrix> {
    let image_of_sub = f.mul(usub);
    if !contains(wsub, &image_of_sub) {
        return Err(Error::broken("f(U) in W", "induced quotient map"));
    }
    Ok(w.proj.mul(&f.mul(&u.section)))
}

/// An affine system whose unknowns are matrices `X_0, ..., X_{k-1}` of fixed
/// shapes, with equations of the form `sum_i  A_i X_{u_i} B_i = C`.
///
/// Internally each unknown is vectorized column-major, so a term
/// `A X B = C` contributes the block `kron(B^T, A)`.
pub struct LinearSystem {
    field: Field,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    total: usize,
    rows: Vec<Matrix>,
    rhs: Vec<Matrix>,
}

/// One term `A X_u B` of an equation.
pub struct Term<'a> {
    pub unknown: usize,
    pub left: &'a Matrix,
    pub right: &'a Matrix,
}

impl LinearSystem {
    pub fn new(field: Field, shapes: Vec<(usize, usize)>) -> LinearSystem {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        LinearSystem { field, shapes, offsets, total, rows: Vec::new(), rhs: Vec::new() }
    }

    fn vec_of(m: &Matrix) -> Matrix {
        // Column-major vectorization as a single column.
        Matrix::from_fn(m.field(), m.rows() * m.cols(), 1, |i, _| {
            m.get(i % m.rows(), i / m.rows()).clone()
        })
    }

    fn unvec(&self, v: &Matrix, col: usize, unknown: usize) -> Matrix {
        let (r, c) = self.shapes[unknown];
        let off = self.offsets[unknown];
        Matrix::from_fn(self.field, r, c, |i, j| v.get(off + j * r + i, col).clone())
    }

    /// Add the equation `sum_i A_i X_{u_i} B_i = rhs`.
    pub fn equation(&mut self, terms: &[Term<'_>], rhs: &Matrix) {
        let (er, ec) = (rhs.rows(), rhs.cols());
        let mut row = Matrix::zeros(self.field, er * ec, self.total);
        for t in terms {
            let (xr, xc) = self.shapes[t.unknown];
            assert_eq!(t.left.cols(), xr, "term left factor shape");
            assert_eq!(t.right.rows(), xc, "term right factor shape");
            assert_eq!(t.left.rows(), er, "term result rows");
            assert_eq!(t.right.cols(), ec, "term result cols");
            let block = t.right.transpose().kron(t.left);
            let off = self.offsets[t.unknown];
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = self.field.add(row.get(i, off + j), block.get(i, j));
                    row.set(i, off + j, v);
                }
            }
        }
        self.rows.push(row);
        self.rhs.push(Self::vec_of(rhs));
    }

    fn assembled(&self) -> (Matrix, Matrix) {
        if self.rows.is_empty() {
            return (Matrix::zeros(self.field, 0, self.total), Matrix::zeros(self.field, 0, 1));
        }
        let coeff = Matrix::vstack(self.field, &self.rows.iter().collect::<Vec<_>>());
        let rhs = Matrix::vstack(self.field, &self.rhs.iter().collect::<Vec<_>>());
        (coeff, rhs)
    }

    /// A particular solution, or `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<Matrix>> {
        let (coeff, rhs) = self.assembled();
        let x = solve(&coeff, &rhs)?;
        Some((0..self.shapes.len()).map(|u| self.unvec(&x, 0, u)).collect())
    }

    /// Basis of the homogeneous solution space; each element is a full
    /// family of unknown matrices.
    pub fn kernel(&self) -> Vec<Vec<Matrix>> {
        let (coeff, _) = self.assembled();
        let k = kernel_basis(&coeff);
        (0..k.cols())
            .map(|col| (0..self.shapes.len()).map(|u| self.unvec(&k, col, u)).collect())
            .collect()
    }
}
