//! Seeded random generation of the objects the verification suites
//! quantify over: complexes, chain maps, simplicial vector spaces and
//! maps, connected coalgebras, and coalgebra maps.
//!
//! Everything is driven by a [`Sampler`] holding a counter-based
//! generator, so a seed determines every produced object exactly and
//! suites are reproducible.  Complexes are built differential-first
//! (each differential lands in the kernel of the previous one), chain
//! maps are drawn uniformly from a computed basis of the space of all
//! chain maps, and simplicial objects are produced by transporting a
//! combinatorially structured object along random levelwise
//! isomorphisms so that no test can exploit the structured basis.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{self, ChainComplex, ChainMap};
use crate::coalg::DGCoalgebra;
use crate::cofree;
use crate::colimit;
use crate::comparison;
use crate::doldkan;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg;
use crate::matrix::Matrix;
use crate::simplicial::{SimplicialMap, SimplicialVectorSpace};

/// A basis of the vector space of all chain maps `src -> tgt`, found by
/// solving the degreewise commutation constraints as one linear system.
pub fn chain_map_basis(src: &ChainComplex, tgt: &ChainComplex) -> Vec<ChainMap> {
    let f = src.field();
    let top = src.top();
    assert_eq!(top, tgt.top(), "chain map spaces need a shared truncation");
    let mut base = vec![0usize; top + 2];
    for n in 0..=top {
        base[n + 1] = base[n] + tgt.dim(n) * src.dim(n);
    }
    let vars = base[top + 1];
    let eqs: usize = (1..=top).map(|n| tgt.dim(n - 1) * src.dim(n)).sum();
    let mut sys = Matrix::zeros(f, eqs, vars);
    let mut row = 0usize;
    for n in 1..=top {
        let dt = tgt.d(n);
        let ds = src.d(n);
        for i in 0..tgt.dim(n - 1) {
            for j in 0..src.dim(n) {
                // (d f_n - f_(n-1) d)[i, j] = 0.
                for k in 0..tgt.dim(n) {
                    let c = dt.get(i, k);
                    if !f.is_zero(c) {
                        sys.set(row, base[n] + k * src.dim(n) + j, c.clone());
                    }
                }
                for l in 0..src.dim(n - 1) {
                    let c = ds.get(l, j);
                    if !f.is_zero(c) {
                        sys.set(row, base[n - 1] + i * src.dim(n - 1) + l, f.neg(c));
                    }
                }
                row += 1;
            }
        }
    }
    let kernel = linalg::kernel_basis(&sys);
    let mut out = Vec::new();
    for col in 0..kernel.cols() {
        let parts: Vec<Matrix> = (0..=top)
            .map(|n| {
                Matrix::from_fn(f, tgt.dim(n), src.dim(n), |i, j| {
                    kernel.get(base[n] + i * src.dim(n) + j, col).clone()
                })
            })
            .collect();
        out.push(
            ChainMap::new(src.clone(), tgt.clone(), parts)
                .expect("kernel elements of the commutation system are chain maps"),
        );
    }
    out
}

/// A simplicial object produced by transporting a structured one along
/// random levelwise isomorphisms, remembering the transport so that
/// maps between such objects can be produced compatibly.
#[derive(Debug, Clone)]
pub struct DisguisedObject {
    pub space: SimplicialVectorSpace,
    /// The complex the object was built from.
    pub base: ChainComplex,
    /// Levelwise change of basis, structured basis to visible basis.
    pub iso: Vec<Matrix>,
    pub iso_inv: Vec<Matrix>,
}

/// Deterministic random generation with a fixed field and seed.
pub struct Sampler {
    field: Field,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Sampler {
        Sampler { field, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// A uniformly chosen index below `n`.
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A small scalar, zero half of the time so matrices stay sparse.
    pub fn entry(&mut self) -> Scalar {
        if self.rng.gen_bool(0.5) {
            self.field.zero()
        } else {
            self.nonzero()
        }
    }

    /// A small nonzero scalar.
    pub fn nonzero(&mut self) -> Scalar {
        match self.field {
            Field::Rationals => {
                let choices = [-2i64, -1, 1, 2, 3];
                let pick = choices[self.below(choices.len())];
                self.field.from_i64(pick)
            }
            Field::Prime(p) => self.field.from_i64(self.rng.gen_range(1..p) as i64),
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.entry());
            }
        }
        m
    }

    /// A random invertible matrix: unit triangulars times a scaled
    /// permutation, so invertibility holds by construction.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let f = self.field;
        let mut lower = Matrix::identity(f, n);
        let mut upper = Matrix::identity(f, n);
        for i in 0..n {
            for j in 0..i {
                lower.set(i, j, self.entry());
                upper.set(j, i, self.entry());
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i + 1);
            perm.swap(i, j);
        }
        let mut scaled = Matrix::zeros(f, n, n);
        for (i, &p) in perm.iter().enumerate() {
            scaled.set(i, p, self.nonzero());
        }
        lower.mul(&upper).mul(&scaled)
    }

    /// Random dimensions, one per degree, each at most `max_dim`.
    pub fn dims(&mut self, top: usize, max_dim: usize) -> Vec<usize> {
        (0..=top).map(|_| self.below(max_dim + 1)).collect()
    }

    /// A random complex: dimensions first, then each differential drawn
    /// from the kernel of the previous one so the square is zero.
    pub fn complex(&mut self, top: usize, max_dim: usize) -> ChainComplex {
        let dims = self.dims(top, max_dim);
        self.complex_with_dims(&dims)
    }

    /// A random complex on prescribed dimensions.
    pub fn complex_with_dims(&mut self, dims: &[usize]) -> ChainComplex {
        let f = self.field;
        let top = dims.len() - 1;
        let mut diffs: Vec<Matrix> = Vec::new();
        for n in 1..=top {
            let d = if n == 1 {
                self.matrix(dims[0], dims[1])
            } else {
                let kernel = linalg::kernel_basis(&diffs[n - 2]);
                kernel.mul(&self.matrix(kernel.cols(), dims[n]))
            };
            diffs.push(d);
        }
        ChainComplex::new(f, dims.to_vec(), diffs).expect("differentials square to zero by construction")
    }

    /// A random complex with nothing in degree zero.
    pub fn connected_complex(&mut self, top: usize, max_dim: usize) -> ChainComplex {
        let mut dims = self.dims(top, max_dim);
        dims[0] = 0;
        self.complex_with_dims(&dims)
    }

    /// A small connected complex whose word constructions stay
    /// desk-sized: total dimension at most `total`.
    pub fn tiny_connected_complex(&mut self, top: usize, total: usize) -> ChainComplex {
        let mut dims = vec![0usize; top + 1];
        let budget = 1 + self.below(total.max(1));
        for _ in 0..budget {
            let d = 1 + self.below(top);
            dims[d] += 1;
        }
        self.complex_with_dims(&dims)
    }

    /// A connected acyclic complex: the cone of a random connected one.
    pub fn acyclic_connected(&mut self, top: usize, total: usize) -> ChainComplex {
        chain::cone(&self.tiny_connected_complex(top, total))
    }

    /// A random chain map `src -> tgt`: a random combination of a basis
    /// of the space of all chain maps.
    pub fn chain_map(&mut self, src: &ChainComplex, tgt: &ChainComplex) -> ChainMap {
        let basis = chain_map_basis(src, tgt);
        let f = self.field;
        let mut parts: Vec<Matrix> =
            (0..=src.top()).map(|n| Matrix::zeros(f, tgt.dim(n), src.dim(n))).collect();
        for b in &basis {
            let c = self.entry();
            if f.is_zero(&c) {
                continue;
            }
            for (n, part) in parts.iter_mut().enumerate() {
                *part = part.add(&b.part(n).scale(&c));
            }
        }
        ChainMap::new(src.clone(), tgt.clone(), parts).expect("combinations of chain maps are chain maps")
    }

    /// A random simplicial object: a structured one transported along
    /// random levelwise isomorphisms.
    pub fn simplicial_object(&mut self, top: usize, max_dim: usize) -> DisguisedObject {
        let base = self.complex(top, max_dim);
        self.disguise(base)
    }

    /// Transport the canonical simplicial object on `base` along fresh
    /// random isomorphisms.
    pub fn disguise(&mut self, base: ChainComplex) -> DisguisedObject {
        let g = doldkan::gamma(&base);
        let iso: Vec<Matrix> = (0..=base.top()).map(|n| self.invertible(g.space.dim(n))).collect();
        let iso_inv: Vec<Matrix> =
            iso.iter().map(|m| linalg::invert(m).expect("transport matrices are invertible")).collect();
        let space = g.space.transport(&iso).expect("transport along isomorphisms succeeds");
        DisguisedObject { space, base, iso, iso_inv }
    }

    /// A random simplicial map between disguised objects, produced from
    /// a random chain map between their bases.
    pub fn simplicial_map(&mut self, a: &DisguisedObject, b: &DisguisedObject) -> SimplicialMap {
        let f = self.chain_map(&a.base, &b.base);
        let gf = doldkan::gamma_map(&f);
        let parts: Vec<Matrix> = (0..=a.base.top())
            .map(|n| b.iso[n].mul(gf.part(n)).mul(&a.iso_inv[n]))
            .collect();
        SimplicialMap::new(a.space.clone(), b.space.clone(), parts)
            .expect("transported simplicial maps commute with faces and degeneracies")
    }

    /// A random connected coalgebra, drawn from word coalgebras, their
    /// coproducts, and their homology coalgebras.
    pub fn connected_coalgebra(&mut self, top: usize, total: usize) -> Result<DGCoalgebra> {
        match self.below(4) {
            0 | 1 => {
                let v = self.tiny_connected_complex(top, total);
                Ok(cofree::tensor_coalgebra(&v)?.coalgebra)
            }
            2 => {
                let a = cofree::tensor_coalgebra(&self.tiny_connected_complex(top, 1))?;
                let b = cofree::tensor_coalgebra(&self.tiny_connected_complex(top, 1))?;
                Ok(colimit::coproduct(&a.coalgebra, &b.coalgebra)?.object)
            }
            _ => {
                // Homology of a word coalgebra one degree up, so the
                // result still reaches the requested truncation.
                let v = self.tiny_connected_complex(top + 1, total);
                Ok(comparison::homology_coalgebra(&cofree::tensor_coalgebra(&v)?.coalgebra)?.coalgebra)
            }
        }
    }

    /// A random coalgebra map out of `c` into a word coalgebra on a
    /// fresh random base.
    pub fn coalgebra_map_from(
        &mut self,
        c: &DGCoalgebra,
        top: usize,
        total: usize,
    ) -> Result<crate::coalg::CoalgebraMap> {
        let w = self.tiny_connected_complex(top, total);
        let target = cofree::tensor_coalgebra(&w)?;
        let (reduced, _) = cofree::reduced_complex(c)?;
        let phi = self.chain_map(&reduced, &w);
        cofree::cofree_induced_map(c, &target, phi.parts())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn sampled_complexes_are_reproducible() {
        let a = Sampler::new(q(), 7).complex(4, 3);
        let b = Sampler::new(q(), 7).complex(4, 3);
        assert_eq!(a, b);
        let c = Sampler::new(q(), 8).complex(4, 3);
        assert!(a != c || a.dims().iter().sum::<usize>() == 0);
    }

    #[test]
    fn invertible_matrices_invert() {
        let mut s = Sampler::new(q(), 1);
        for n in 0..6 {
            assert!(linalg::invert(&s.invertible(n)).is_some());
        }
        let f = Field::prime(5).unwrap();
        let mut s = Sampler::new(f, 2);
        for n in 0..6 {
            assert!(linalg::invert(&s.invertible(n)).is_some());
        }
    }

    #[test]
    fn chain_map_basis_spans_only_chain_maps() {
        let mut s = Sampler::new(q(), 3);
        let a = s.complex(3, 3);
        let b = s.complex(3, 3);
        // Construction already validates each basis element; check the
        // count against an independent description: dimension of the
        // kernel equals total Hom dimension minus the rank of the
        // constraint system, which `kernel_basis` guarantees.  Spot
        // check: random combinations validate too.
        for _ in 0..3 {
            let f = s.chain_map(&a, &b);
            assert_eq!(f.source(), &a);
        }
    }

    #[test]
    fn identity_is_in_the_chain_map_space() {
        let mut s = Sampler::new(q(), 4);
        let a = s.complex(3, 2);
        let basis = chain_map_basis(&a, &a);
        // Solve for the identity inside the basis span.
        let f = q();
        let cols: Vec<Matrix> = basis
            .iter()
            .map(|m| {
                let stacked: Vec<Matrix> = (0..=a.top()).map(|n| m.part(n).flatten()).collect();
                Matrix::vstack(f, &stacked.iter().collect::<Vec<_>>())
            })
            .collect();
        let frame = Matrix::hstack(f, &cols.iter().collect::<Vec<_>>());
        let id = ChainMap::identity(&a);
        let stacked: Vec<Matrix> = (0..=a.top()).map(|n| id.part(n).flatten()).collect();
        let rhs = Matrix::vstack(f, &stacked.iter().collect::<Vec<_>>());
        assert!(linalg::solve(&frame, &rhs).is_some());
    }

    #[test]
    fn disguised_objects_hide_an_equivalent_complex() {
        let mut s = Sampler::new(q(), 5);
        let obj = s.simplicial_object(3, 2);
        let n = doldkan::normalize(&obj.space);
        assert_eq!(
            chain::homology(&n.complex).dims,
            chain::homology(&obj.base).dims
        );
    }

    #[test]
    fn sampled_simplicial_maps_validate() {
        let mut s = Sampler::new(q(), 6);
        let a = s.simplicial_object(3, 2);
        let b = s.simplicial_object(3, 2);
        let f = s.simplicial_map(&a, &b);
        assert_eq!(f.source(), &a.space);
        assert_eq!(f.target(), &b.space);
    }

    #[test]
    fn sampled_coalgebras_are_connected() {
        let mut s = Sampler::new(q(), 9);
        for _ in 0..4 {
            let c = s.connected_coalgebra(3, 2).unwrap();
            assert!(cofree::is_connected_coalgebra(&c));
        }
    }

    #[test]
    fn sampled_coalgebra_maps_validate_over_gf5() {
        let f = Field::prime(5).unwrap();
        let mut s = Sampler::new(f, 10);
        let c = s.connected_coalgebra(3, 2).unwrap();
        let g = s.coalgebra_map_from(&c, 3, 2).unwrap();
        assert_eq!(g.source(), &c);
    }
}
