//! Truncated cochain complexes: the degreewise linear duals of truncated
//! chain complexes, with the differential raising degree.
//!
//! Duality is plain matrix transposition: `dual_complex` sends a chain
//! complex `C` to the cochain complex with `(C*)^n = (C_n)*` and
//! `delta^n = (d_(n+1))^T`, and `complex_dual` inverts it.  Tensor
//! products reuse [`TensorLayout`] (pure dimension bookkeeping), so the
//! dual of a tensor product equals the tensor product of the duals with
//! identical basis ordering, block by block.

use crate::chain::{ChainComplex, TensorLayout};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Quotient};
use crate::matrix::Matrix;

/// A cochain complex supported in degrees `0..=top` with `delta` raising
/// degree by one and `delta . delta = 0` inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    dims: Vec<usize>,
    /// `diffs[n] : X^n -> X^(n+1)` for `n` in `0..top`.
    diffs: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(field: Field, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<CochainComplex> {
        if dims.is_empty() {
            return Err(Error::dim("cochain complex dims", "at least degree 0", "empty"));
        }
        let top = dims.len() - 1;
        if diffs.len() != top {
            return Err(Error::dim("cochain differentials", format!("{top}"), format!("{}", diffs.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            d.expect_shape(dims[n + 1], dims[n], &format!("codifferential at degree {n}"))?;
        }
        for n in 0..top.saturating_sub(1) {
            if !diffs[n + 1].mul(&diffs[n]).is_zero() {
                return Err(Error::broken("delta.delta = 0", format!("degree {n}")));
            }
        }
        Ok(CochainComplex { field, dims, diffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `delta : X^n -> X^(n+1)`.
    pub fn d(&self, n: usize) -> &Matrix {
        &self.diffs[n]
    }

    pub fn zero(field: Field, top: usize) -> CochainComplex {
        let dims = vec![0; top + 1];
        let diffs = vec![Matrix::zeros(field, 0, 0); top];
        CochainComplex::new(field, dims, diffs).expect("zero cochain complex")
    }

    /// `K` in degree 0.
    pub fn point(field: Field, top: usize) -> CochainComplex {
        let mut dims = vec![0; top + 1];
        dims[0] = 1;
        let diffs = (0..top).map(|n| Matrix::zeros(field, dims[n + 1], dims[n])).collect();
        CochainComplex::new(field, dims, diffs).expect("point cochain complex")
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        assert_eq!(self.top(), other.top(), "direct sum needs a shared truncation");
        let dims = (0..=self.top()).map(|n| self.dim(n) + other.dim(n)).collect();
        let diffs = (0..self.top())
            .map(|n| Matrix::block_diag(self.field, &[self.d(n), other.d(n)]))
            .collect();
        CochainComplex::new(self.field, dims, diffs).expect("direct sum of cochain complexes")
    }

    /// Quotient by a degreewise subspace closed under `delta`, with
    /// projections and sections.
    pub fn quotient_by(&self, subs: &[Matrix]) -> Result<(CochainComplex, Vec<Matrix>, Vec<Matrix>)> {
        assert_eq!(subs.len(), self.top() + 1, "one subspace per degree");
        let quos: Vec<Quotient> = subs.iter().map(linalg::quotient).collect();
        let mut diffs = Vec::new();
        for n in 0..self.top() {
            let induced = linalg::induced_on_quotient(self.d(n), &quos[n], &subs[n], &quos[n + 1], &subs[n + 1])
                .map_err(|_| Error::broken("delta(U) in U", format!("subcomplex at degree {n}")))?;
            diffs.push(induced);
        }
        let dims = quos.iter().map(|q| q.proj.rows()).collect();
        let complex = CochainComplex::new(self.field, dims, diffs)?;
        let proj = quos.iter().map(|q| q.proj.clone()).collect();
        let section = quos.iter().map(|q| q.section.clone()).collect();
        Ok((complex, proj, section))
    }
}

/// Degreewise dual of a chain complex: transposed differentials, degree
/// kept.
pub fn dual_complex(c: &ChainComplex) -> CochainComplex {
    let top = c.top();
    let dims = c.dims().to_vec();
    let diffs = (0..top).map(|n| c.d(n + 1).transpose()).collect();
    CochainComplex::new(c.field(), dims, diffs).expect("dual of a chain complex")
}

/// Degreewise dual of a cochain complex; inverse to [`dual_complex`].
pub fn complex_dual(c: &CochainComplex) -> ChainComplex {
    let top = c.top();
    let dims = c.dims().to_vec();
    let diffs = (1..=top).map(|n| c.d(n - 1).transpose()).collect();
    ChainComplex::new(c.field(), dims, diffs).expect("dual of a cochain complex")
}

/// A degreewise map commuting with the codifferentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainMap {
    source: CochainComplex,
    target: CochainComplex,
    parts: Vec<Matrix>,
}

impl CochainMap {
    pub fn new(source: CochainComplex, target: CochainComplex, parts: Vec<Matrix>) -> Result<CochainMap> {
        if source.top() != target.top() {
            return Err(Error::dim("cochain map truncation", format!("{}", source.top()), format!("{}", target.top())));
        }
        if parts.len() != source.top() + 1 {
            return Err(Error::dim("cochain map parts", format!("{}", source.top() + 1), format!("{}", parts.len())));
        }
        for (n, p) in parts.iter().enumerate() {
            p.expect_shape(target.dim(n), source.dim(n), &format!("cochain map degree {n}"))?;
        }
        for n in 0..source.top() {
            if target.d(n).mul(&parts[n]) != parts[n + 1].mul(source.d(n)) {
                return Err(Error::broken("f delta = delta f", format!("degree {n}")));
            }
        }
        Ok(CochainMap { source, target, parts })
    }

    pub fn identity(c: &CochainComplex) -> CochainMap {
        let parts = (0..=c.top()).map(|n| Matrix::identity(c.field(), c.dim(n))).collect();
        CochainMap::new(c.clone(), c.clone(), parts).expect("identity cochain map")
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn part(&self, n: usize) -> &Matrix {
        &self.parts[n]
    }

    pub fn parts(&self) -> &[Matrix] {
        &self.parts
    }

    pub fn compose(&self, other: &CochainMap) -> CochainMap {
        assert_eq!(other.target, self.source, "cochain composition mismatch");
        let parts = (0..=self.source.top()).map(|n| self.parts[n].mul(other.part(n))).collect();
        CochainMap::new(other.source.clone(), self.target.clone(), parts).expect("composite cochain map")
    }
}

/// Iterated tensor product of cochain complexes with the Koszul
/// differential raising degree; the empty product is the point.
pub fn cotensor_many(field: Field, top: usize, factors: &[&CochainComplex]) -> (CochainComplex, TensorLayout) {
    assert!(factors.iter().all(|f| f.field() == field && f.top() == top), "cotensor factors share field and truncation");
    let layout = TensorLayout::new(factors.iter().map(|f| f.dims().to_vec()).collect(), top);
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut d = Matrix::zeros(field, dims[n + 1], dims[n]);
        for comp in layout.compositions(n) {
            if layout.block_size(&comp) == 0 {
                continue;
            }
            let src_off = layout.block_offset(n, &comp);
            let mut sign_exp = 0usize;
            for i in 0..factors.len() {
                let mut tgt_comp = comp.clone();
                tgt_comp[i] += 1;
                if tgt_comp[i] <= top && layout.block_size(&tgt_comp) != 0 {
                    let tgt_off = layout.block_offset(n + 1, &tgt_comp);
                    // Kronecker factor acting in slot i, identities elsewhere.
                    let mut block = Matrix::identity(field, 1);
                    for (j, f) in factors.iter().enumerate() {
                        let piece = if j == i {
                            f.d(comp[j]).clone()
                        } else {
                            Matrix::identity(field, f.dim(comp[j]))
                        };
                        block = block.kron(&piece);
                    }
                    if sign_exp % 2 == 1 {
                        block = block.neg();
                    }
                    d.add_block(tgt_off, src_off, &block);
                }
                sign_exp += comp[i];
            }
        }
        diffs.push(d);
    }
    (CochainComplex::new(field, dims, diffs).expect("cotensor differential squares to zero"), layout)
}

pub fn cotensor(a: &CochainComplex, b: &CochainComplex) -> (CochainComplex, TensorLayout) {
    cotensor_many(a.field(), a.top(), &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn dual_of_a_disk_round_trips() {
        let d2 = ChainComplex::disk(q(), 2, 3);
        let dual = dual_complex(&d2);
        assert_eq!(dual.dims(), &[0, 1, 1, 0]);
        assert_eq!(dual.d(1), &Matrix::identity(q(), 1));
        assert_eq!(complex_dual(&dual), d2);
    }

    #[test]
    fn dual_of_a_tensor_product_is_the_cotensor_of_duals() {
        let a = ChainComplex::disk(q(), 1, 3);
        let b = ChainComplex::sphere(q(), 1, 3).direct_sum(&ChainComplex::disk(q(), 2, 3));
        let (tens, _) = chain::tensor_many(&[&a, &b]);
        let da = dual_complex(&a);
        let db = dual_complex(&b);
        let (cot, _) = cotensor_many(q(), 3, &[&da, &db]);
        assert_eq!(dual_complex(&tens), cot);
    }

    #[test]
    fn empty_cotensor_is_the_point() {
        let (unit, layout) = cotensor_many(q(), 2, &[]);
        assert_eq!(unit, CochainComplex::point(q(), 2));
        assert_eq!(layout.dim(0), 1);
        assert_eq!(layout.dim(1), 0);
    }

    #[test]
    fn quotient_kills_a_stable_subspace() {
        // Dual of the disk: K in degrees 1, 2 with identity differential.
        let c = dual_complex(&ChainComplex::disk(q(), 2, 2));
        // The subspace spanned by degree 1 is not delta-stable.
        let subs = vec![
            Matrix::zeros(q(), 0, 0),
            Matrix::identity(q(), 1),
            Matrix::zeros(q(), 1, 0),
        ];
        assert!(c.quotient_by(&subs).is_err());
        // The full positive part is stable; quotient is the point.
        let subs = vec![
            Matrix::zeros(q(), 0, 0),
            Matrix::identity(q(), 1),
            Matrix::identity(q(), 1),
        ];
        let (quo, _, _) = c.quotient_by(&subs).unwrap();
        assert_eq!(quo.dims(), &[0, 0, 0]);
    }

    #[test]
    fn cochain_map_validation_checks_commutation() {
        let c = dual_complex(&ChainComplex::disk(q(), 1, 2));
        let p = CochainComplex::point(q(), 2);
        // Including the point at degree 0 does not commute: delta is
        // injective out of degree 0 in the target but zero in the source.
        let parts = vec![
            Matrix::identity(q(), 1),
            Matrix::zeros(q(), 1, 0),
            Matrix::zeros(q(), 0, 0),
        ];
        assert!(CochainMap::new(p.clone(), c.clone(), parts).is_err());
        let ok = CochainMap::identity(&c);
        assert_eq!(ok.part(1), &Matrix::identity(q(), 1));
    }
}
