//! Simplicial vector spaces, truncated at a shared top level `D`.
//!
//! A simplicial vector space stores one finite-dimensional space per level
//! `0..=D`, face operators `d_i : X_n -> X_(n-1)` for `0 <= i <= n`, and
//! degeneracy operators `s_i : X_n -> X_(n+1)` for `0 <= i <= n` and
//! `n < D`.  All five simplicial identity families are asserted on
//! construction, as far as they stay inside the truncation window:
//!
//! * `d_i d_j = d_(j-1) d_i`           for `i < j`,
//! * `s_i s_j = s_(j+1) s_i`           for `i <= j`,
//! * `d_i s_j = s_(j-1) d_i`           for `i < j`,
//! * `d_j s_j = id = d_(j+1) s_j`,
//! * `d_i s_j = s_j d_(i-1)`           for `i > j + 1`.
//!
//! Levelwise tensor products, the symmetry swap, and transports along
//! levelwise isomorphisms live here too; the normalization functor and its
//! inverse are in a separate module.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialVectorSpace {
    field: Field,
    dims: Vec<usize>,
    /// `faces[n-1][i]` is `d_i : X_n -> X_(n-1)` for `1 <= n <= D`.
    faces: Vec<Vec<Matrix>>,
    /// `degens[n][i]` is `s_i : X_n -> X_(n+1)` for `0 <= n < D`.
    degens: Vec<Vec<Matrix>>,
}

impl SimplicialVectorSpace {
    pub fn new(
        field: Field,
        dims: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degens: Vec<Vec<Matrix>>,
    ) -> Result<SimplicialVectorSpace> {
        if dims.is_empty() {
            return Err(Error::dim("simplicial dims", "at least level 0", "empty"));
        }
        let top = dims.len() - 1;
        if faces.len() != top || degens.len() != top {
            return Err(Error::dim(
                "simplicial operator families",
                format!("{top} face levels and {top} degeneracy levels"),
                format!("{} and {}", faces.len(), degens.len()),
            ));
        }
        for n in 1..=top {
            if faces[n - 1].len() != n + 1 {
                return Err(Error::dim(format!("faces at level {n}"), format!("{}", n + 1), format!("{}", faces[n - 1].len())));
            }
            for (i, d) in faces[n - 1].iter().enumerate() {
                d.expect_shape(dims[n - 1], dims[n], &format!("d_{i} at level {n}"))?;
            }
        }
        for n in 0..top {
            if degens[n].len() != n + 1 {
                return Err(Error::dim(format!("degeneracies at level {n}"), format!("{}", n + 1), format!("{}", degens[n].len())));
            }
            for (i, s) in degens[n].iter().enumerate() {
                s.expect_shape(dims[n + 1], dims[n], &format!("s_{i} at level {n}"))?;
            }
        }
        let x = SimplicialVectorSpace { field, dims, faces, degens };
        x.check_identities()?;
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.top();
        // d_i d_j = d_(j-1) d_i for i < j, composites X_n -> X_(n-2).
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face(n - 1, i).mul(self.face(n, j));
                    let rhs = self.face(n - 1, j - 1).mul(self.face(n, i));
                    if lhs != rhs {
                        return Err(Error::broken("d_i d_j = d_(j-1) d_i", format!("level {n}, i={i}, j={j}")));
                    }
                }
            }
        }
        // s_i s_j = s_(j+1) s_i for i <= j, composites X_n -> X_(n+2).
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degen(n + 1, i).mul(self.degen(n, j));
                    let rhs = self.degen(n + 1, j + 1).mul(self.degen(n, i));
                    if lhs != rhs {
                        return Err(Error::broken("s_i s_j = s_(j+1) s_i", format!("level {n}, i={i}, j={j}")));
                    }
                }
            }
        }
        // Mixed identities, composites X_n -> X_n.
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.face(n + 1, i).mul(self.degen(n, j));
                    let rhs = if i < j {
                        self.degen(n - 1, j - 1).mul(self.face(n, i))
                    } else if i == j || i == j + 1 {
                        Matrix::identity(self.field, self.dims[n])
                    } else {
                        self.degen(n - 1, j).mul(self.face(n, i - 1))
                    };
                    if lhs != rhs {
                        return Err(Error::broken("d_i s_j identities", format!("level {n}, i={i}, j={j}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The truncation level `D`.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `d_i : X_n -> X_(n-1)`.
    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        assert!(n >= 1 && n <= self.top() && i <= n, "face (n={n}, i={i}) out of range");
        &self.faces[n - 1][i]
    }

    /// `s_i : X_n -> X_(n+1)`.
    pub fn degen(&self, n: usize, i: usize) -> &Matrix {
        assert!(n < self.top() && i <= n, "degeneracy (n={n}, i={i}) out of range");
        &self.degens[n][i]
    }

    /// The constant simplicial space on `K`: every level is `K`, all
    /// operators are the identity.
    pub fn constant_unit(field: Field, top: usize) -> SimplicialVectorSpace {
        let dims = vec![1; top + 1];
        let faces = (1..=top).map(|n| vec![Matrix::identity(field, 1); n + 1]).collect();
        let degens = (0..top).map(|n| vec![Matrix::identity(field, 1); n + 1]).collect();
        SimplicialVectorSpace::new(field, dims, faces, degens).expect("constant simplicial space")
    }

    pub fn zero(field: Field, top: usize) -> SimplicialVectorSpace {
        let dims = vec![0; top + 1];
        let faces = (1..=top).map(|n| vec![Matrix::zeros(field, 0, 0); n + 1]).collect();
        let degens = (0..top).map(|n| vec![Matrix::zeros(field, 0, 0); n + 1]).collect();
        SimplicialVectorSpace::new(field, dims, faces, degens).expect("zero simplicial space")
    }

    pub fn direct_sum(&self, other: &SimplicialVectorSpace) -> SimplicialVectorSpace {
        assert_eq!(self.top(), other.top(), "direct sum needs a shared truncation");
        let top = self.top();
        let dims = (0..=top).map(|n| self.dim(n) + other.dim(n)).collect();
        let faces = (1..=top)
            .map(|n| (0..=n).map(|i| Matrix::block_diag(self.field, &[self.face(n, i), other.face(n, i)])).collect())
            .collect();
        let degens = (0..top)
            .map(|n| (0..=n).map(|i| Matrix::block_diag(self.field, &[self.degen(n, i), other.degen(n, i)])).collect())
            .collect();
        SimplicialVectorSpace::new(self.field, dims, faces, degens).expect("direct sum of simplicial spaces")
    }

    /// Apply a composite of faces given by indices in application order:
    /// `apply_faces(n, [i, j])` is `d_j . d_i` starting from level `n`
    /// (first `d_i : X_n -> X_(n-1)`, then `d_j`).
    pub fn apply_faces(&self, n: usize, indices: &[usize]) -> Matrix {
        let mut level = n;
        let mut m = Matrix::identity(self.field, self.dim(n));
        for &i in indices {
            m = self.face(level, i).mul(&m);
            level -= 1;
        }
        m
    }

    /// Apply a composite of degeneracies in application order.
    pub fn apply_degens(&self, n: usize, indices: &[usize]) -> Matrix {
        let mut level = n;
        let mut m = Matrix::identity(self.field, self.dim(n));
        for &i in indices {
            m = self.degen(level, i).mul(&m);
            level += 1;
        }
        m
    }

    /// The operator `X(eta) : X_k -> X_n` induced by a monotone surjection
    /// `eta : [n] ->> [k]`.  With repeat indices `i_1 < ... < i_r` (those
    /// `i` with `eta(i) = eta(i+1)`), `eta` factors as
    /// `sigma_(i_1) . ... . sigma_(i_r)` and contravariance gives the
    /// operator `s_(i_r) . ... . s_(i_1)`, lowest index applied first.
    pub fn surjection_operator(&self, eta: &[usize]) -> Matrix {
        let n = eta.len() - 1;
        let k = eta[n];
        let repeats = (0..n).filter(|&i| eta[i] == eta[i + 1]);
        let mut m = Matrix::identity(self.field, self.dim(k));
        let mut level = k;
        for i in repeats {
            m = self.degen(level, i).mul(&m);
            level += 1;
        }
        m
    }

    /// Transport the simplicial structure along a levelwise isomorphism
    /// given by invertible matrices `iso[n] : X_n -> Y_n`.
    pub fn transport(&self, iso: &[Matrix]) -> Result<SimplicialVectorSpace> {
        let top = self.top();
        assert_eq!(iso.len(), top + 1, "one isomorphism per level");
        let mut inv = Vec::new();
        for (n, m) in iso.iter().enumerate() {
            m.expect_shape(self.dim(n), self.dim(n), &format!("transport level {n}"))?;
            inv.push(linalg::invert(m).ok_or_else(|| Error::Inconsistent(format!("transport matrix at level {n} is singular")))?);
        }
        let dims = self.dims.clone();
        let faces = (1..=top)
            .map(|n| (0..=n).map(|i| iso[n - 1].mul(self.face(n, i)).mul(&inv[n])).collect())
            .collect();
        let degens = (0..top)
            .map(|n| (0..=n).map(|i| iso[n + 1].mul(self.degen(n, i)).mul(&inv[n])).collect())
            .collect();
        SimplicialVectorSpace::new(self.field, dims, faces, degens)
    }
}

/// A levelwise map commuting with faces and degeneracies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialVectorSpace,
    target: SimplicialVectorSpace,
    parts: Vec<Matrix>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialVectorSpace,
        target: SimplicialVectorSpace,
        parts: Vec<Matrix>,
    ) -> Result<SimplicialMap> {
        if source.top() != target.top() {
            return Err(Error::dim("simplicial map truncation", format!("{}", source.top()), format!("{}", target.top())));
        }
        if parts.len() != source.top() + 1 {
            return Err(Error::dim("simplicial map parts", format!("{}", source.top() + 1), format!("{}", parts.len())));
        }
        for (n, p) in parts.iter().enumerate() {
            p.expect_shape(target.dim(n), source.dim(n), &format!("simplicial map level {n}"))?;
        }
        for n in 1..=source.top() {
            for i in 0..=n {
                if target.face(n, i).mul(&parts[n]) != parts[n - 1].mul(source.face(n, i)) {
                    return Err(Error::broken("f d_i = d_i f", format!("level {n}, i={i}")));
                }
            }
        }
        for n in 0..source.top() {
            for i in 0..=n {
                if target.degen(n, i).mul(&parts[n]) != parts[n + 1].mul(source.degen(n, i)) {
                    return Err(Error::broken("f s_i = s_i f", format!("level {n}, i={i}")));
                }
            }
        }
        Ok(SimplicialMap { source, target, parts })
    }

    pub fn identity(x: &SimplicialVectorSpace) -> SimplicialMap {
        let parts = (0..=x.top()).map(|n| Matrix::identity(x.field(), x.dim(n))).collect();
        SimplicialMap::new(x.clone(), x.clone(), parts).expect("identity simplicial map")
    }

    pub fn zero(source: &SimplicialVectorSpace, target: &SimplicialVectorSpace) -> SimplicialMap {
        let parts = (0..=source.top())
            .map(|n| Matrix::zeros(source.field(), target.dim(n), source.dim(n)))
            .collect();
        SimplicialMap::new(source.clone(), target.clone(), parts).expect("zero simplicial map")
    }

    pub fn source(&self) -> &SimplicialVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &SimplicialVectorSpace {
        &self.target
    }

    pub fn part(&self, n: usize) -> &Matrix {
        &self.parts[n]
    }

    pub fn parts(&self) -> &[Matrix] {
        &self.parts
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &SimplicialMap) -> SimplicialMap {
        assert_eq!(other.target, self.source, "composition mismatch");
        let parts = (0..=self.source.top()).map(|n| self.parts[n].mul(&other.parts[n])).collect();
        SimplicialMap::new(other.source.clone(), self.target.clone(), parts).expect("composite simplicial map")
    }

    pub fn is_levelwise_injective(&self) -> bool {
        self.parts.iter().all(|p| linalg::rank(p) == p.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.parts.iter().all(|p| p.rows() == p.cols() && linalg::invert(p).is_some())
    }

    pub fn inverse(&self) -> Option<SimplicialMap> {
        let mut parts = Vec::new();
        for p in &self.parts {
            parts.push(linalg::invert(p)?);
        }
        SimplicialMap::new(self.target.clone(), self.source.clone(), parts).ok()
    }
}

/// Levelwise tensor product: `(X (x) Y)_n = X_n (x) Y_n` with diagonal
/// operators `d_i (x) d_i` and `s_i (x) s_i`.
pub fn level_tensor(x: &SimplicialVectorSpace, y: &SimplicialVectorSpace) -> SimplicialVectorSpace {
    assert_eq!(x.field(), y.field(), "tensor factors share a field");
    assert_eq!(x.top(), y.top(), "tensor factors share a truncation");
    let top = x.top();
    let field = x.field();
    let dims = (0..=top).map(|n| x.dim(n) * y.dim(n)).collect();
    let faces = (1..=top)
        .map(|n| (0..=n).map(|i| x.face(n, i).kron(y.face(n, i))).collect())
        .collect();
    let degens = (0..top)
        .map(|n| (0..=n).map(|i| x.degen(n, i).kron(y.degen(n, i))).collect())
        .collect();
    SimplicialVectorSpace::new(field, dims, faces, degens).expect("levelwise tensor of simplicial spaces")
}

pub fn level_tensor_map(f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
    let src = level_tensor(f.source(), g.source());
    let tgt = level_tensor(f.target(), g.target());
    let parts = (0..=src.top()).map(|n| f.part(n).kron(g.part(n))).collect();
    SimplicialMap::new(src, tgt, parts).expect("tensor of simplicial maps")
}

/// The symmetry `X (x) Y -> Y (x) X`, levelwise the Kronecker transposition
/// permutation (no signs: levels are plain vector spaces).
pub fn level_swap(x: &SimplicialVectorSpace, y: &SimplicialVectorSpace) -> SimplicialMap {
    let src = level_tensor(x, y);
    let tgt = level_tensor(y, x);
    let field = x.field();
    let parts = (0..=x.top())
        .map(|n| {
            let (a, b) = (x.dim(n), y.dim(n));
            let mut m = Matrix::zeros(field, b * a, a * b);
            for i in 0..a {
                for j in 0..b {
                    m.set(j * a + i, i * b + j, field.one());
                }
            }
            m
        })
        .collect();
    SimplicialMap::new(src, tgt, parts).expect("swap is a simplicial map")
}
