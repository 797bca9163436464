//! Products of a connected coalgebra with a tensor coalgebra, computed
//! through linear duality, together with the factorization and lifting
//! machinery they support.
//!
//! The product `C x T(V)` is not built directly: its linear dual is the
//! free product of the dual algebra of `C` with the word algebra on the
//! dual of `V`, and that free product has an explicit word basis.  The
//! construction here dualizes back, carries the two projections, and
//! provides the universal pairing: a map into the product from any
//! connected coalgebra is assembled from a map into `C` and a map into
//! the tensor coalgebra, the latter reduced to a plain chain map by the
//! cofree adjunction.
//!
//! On top of the product sit the mapping factorization (any map factors
//! as a degreewise split injection followed by a homology equivalence),
//! the stage-zero approximation, and a lift solver for squares whose
//! right leg is the product projection.  The solver reduces the square
//! to a chain-level extension problem and reports failure honestly
//! rather than guessing.

use crate::algebra::{self, FreeProduct};
use crate::chain::{self, ChainComplex, ChainMap};
use crate::coalg::{CoalgebraMap, DGCoalgebra};
use crate::cofree::{self, CofreeCoalgebra};
use crate::error::{Error, Result};
use crate::lifting::{find_lift, LiftingSquare};
use crate::matrix::Matrix;

/// The product of a connected coalgebra with a tensor coalgebra, with
/// its two projections and the dual-side presentation.
#[derive(Debug, Clone)]
pub struct ProductWithCofree {
    pub object: DGCoalgebra,
    pub first: DGCoalgebra,
    pub cofree: CofreeCoalgebra,
    pub to_first: CoalgebraMap,
    pub to_cofree: CoalgebraMap,
    dual: FreeProduct,
}

/// Build `C x T(V)` for a connected coalgebra `C` and a connected chain
/// complex `V`.
pub fn product_with_cofree(c: &DGCoalgebra, v: &ChainComplex) -> Result<ProductWithCofree> {
    if !cofree::is_connected_coalgebra(c) {
        return Err(Error::NotConnected("product needs a connected first factor".into()));
    }
    let cofree_factor = cofree::tensor_coalgebra(v)?;
    let a = algebra::dual_algebra(c);
    let tv = algebra::dual_algebra(&cofree_factor.coalgebra);
    let fp = algebra::free_product(&a, &tv)?;
    let object = algebra::dual_coalgebra(&fp.algebra);
    let to_first = CoalgebraMap::new(
        object.clone(),
        c.clone(),
        ChainMap::new(
            object.carrier.clone(),
            c.carrier.clone(),
            fp.incl_left.iter().map(Matrix::transpose).collect(),
        )?,
    )?;
    let to_cofree = CoalgebraMap::new(
        object.clone(),
        cofree_factor.coalgebra.clone(),
        ChainMap::new(
            object.carrier.clone(),
            cofree_factor.coalgebra.carrier.clone(),
            fp.incl_right.iter().map(Matrix::transpose).collect(),
        )?,
    )?;
    Ok(ProductWithCofree {
        object,
        first: c.clone(),
        cofree: cofree_factor,
        to_first,
        to_cofree,
        dual: fp,
    })
}

impl ProductWithCofree {
    /// The universal pairing: the unique map `X -> C x T(V)` whose two
    /// projections are `u` and `w`.  Dually, an algebra map out of the
    /// free product is evaluated word by word and checked to kill the
    /// collapse ideal.
    pub fn pairing(&self, u: &CoalgebraMap, w: &CoalgebraMap) -> Result<CoalgebraMap> {
        if u.source() != w.source() {
            return Err(Error::Inconsistent("pairing legs need a common source".into()));
        }
        if u.target() != &self.first || w.target() != &self.cofree.coalgebra {
            return Err(Error::Inconsistent("pairing legs do not match the product factors".into()));
        }
        let x = u.source().clone();
        let xalg = algebra::dual_algebra(&x);
        let f = x.carrier.field();
        let top = x.carrier.top();
        let ustar: Vec<Matrix> = u.map().parts().iter().map(Matrix::transpose).collect();
        let wstar: Vec<Matrix> = w.map().parts().iter().map(Matrix::transpose).collect();
        // Letter map into the dual of X: left letters through u, right
        // letters through w.
        let letter = |d: usize| -> Matrix {
            let la = self.dual.left_dims[d];
            let all = self.dual.layout.base_dims()[d];
            let mut m = Matrix::zeros(f, xalg.carrier.dim(d), all);
            if d >= 1 {
                // In positive degrees the letter space is the whole
                // factor, left block then right block.
                m.add_block(0, 0, &ustar[d]);
                m.add_block(0, la, &wstar[d]);
            }
            m
        };
        // Evaluate every ambient word: fold the letters through the
        // multiplication of the dual of X.
        let mut psi: Vec<Matrix> = Vec::new();
        for n in 0..=top {
            let mut m = Matrix::zeros(f, xalg.carrier.dim(n), self.dual.layout.dim(n));
            for word in self.dual.layout.words(n) {
                if self.dual.layout.block_size(&word) == 0 {
                    continue;
                }
                let mut acc = xalg.unit.clone();
                let mut deg = 0usize;
                for &d in &word {
                    let next = xalg.mult_block(deg, d).mul(&acc.kron(&letter(d)));
                    deg += d;
                    acc = next;
                }
                m.add_block(0, self.dual.layout.block_offset(n, &word), &acc);
            }
            psi.push(m);
        }
        // The evaluation must kill the collapse ideal; then it descends.
        for n in 0..=top {
            if !psi[n].mul(&self.dual.ideal[n]).is_zero() {
                return Err(Error::broken("word evaluation kills the collapse ideal", format!("degree {n}")));
            }
        }
        let parts: Vec<Matrix> = (0..=top)
            .map(|n| psi[n].mul(&self.dual.section[n]).transpose())
            .collect();
        let map = ChainMap::new(x.carrier.clone(), self.object.carrier.clone(), parts)?;
        let out = CoalgebraMap::new(x, self.object.clone(), map)?;
        for (leg, proj) in [(u, &self.to_first), (w, &self.to_cofree)] {
            for n in 0..=top {
                if proj.map().part(n).mul(out.map().part(n)) != *leg.map().part(n) {
                    return Err(Error::broken("pairing projects to its legs", format!("degree {n}")));
                }
            }
        }
        Ok(out)
    }

    /// The dual-side free product (for inspection).
    pub fn dual_presentation(&self) -> &FreeProduct {
        &self.dual
    }
}

/// A factorization of a coalgebra map through a product with a cofree
/// factor: `incl` is injective in positive degrees, `proj` is a
/// homology equivalence, and their composite is the original map.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub middle: DGCoalgebra,
    pub incl: CoalgebraMap,
    pub proj: CoalgebraMap,
}

/// Factor `f : C -> D` through `D x T(cone of the positive part of C)`.
pub fn factorization(f: &CoalgebraMap) -> Result<Factorization> {
    let c = f.source();
    let d = f.target();
    let (cbar, _) = cofree::reduced_complex(c)?;
    let cone = chain::cone(&cbar);
    let chi = chain::cone_inclusion(&cbar);
    let prod = product_with_cofree(d, &cone)?;
    let g = cofree::cofree_induced_map(c, &prod.cofree, chi.parts())?;
    let incl = prod.pairing(f, &g)?;
    for n in 1..=c.carrier.top() {
        if crate::linalg::kernel_basis(incl.map().part(n)).cols() != 0 {
            return Err(Error::broken("factorization embeds positive degrees", format!("degree {n}")));
        }
    }
    Ok(Factorization { middle: prod.object.clone(), incl, proj: prod.to_first })
}

/// The stage-zero approximation of `f : C -> D`: the product of `D`
/// with the tensor coalgebra on the positive part of `C`, received by
/// the pairing of `f` with the canonical word expansion of `C`.
pub fn stage_zero(f: &CoalgebraMap) -> Result<(ProductWithCofree, CoalgebraMap)> {
    let c = f.source();
    let (cbar, _) = cofree::reduced_complex(c)?;
    let prod = product_with_cofree(f.target(), &cbar)?;
    let id_parts: Vec<Matrix> = (0..=cbar.top()).map(|n| Matrix::identity(cbar.field(), cbar.dim(n))).collect();
    let g = cofree::cofree_induced_map(c, &prod.cofree, &id_parts)?;
    let into = prod.pairing(f, &g)?;
    Ok((prod, into))
}

/// Solve a lifting square whose right leg is the projection of a
/// product with a cofree factor:
///
/// ```text
///        h
///   A ------> C x T(V)
///   |            |
/// j |            | to_first
///   v            v
///   B ------>    C
///        k
/// ```
///
/// The square reduces to extending a chain map along the positive part
/// of `j`; when that extension exists the lift is assembled and
/// verified, otherwise `None` is returned.
pub fn lift_against_projection(
    prod: &ProductWithCofree,
    j: &CoalgebraMap,
    h: &CoalgebraMap,
    k: &CoalgebraMap,
) -> Result<Option<CoalgebraMap>> {
    let top = prod.object.carrier.top();
    if h.source() != j.source() || k.source() != j.target() {
        return Err(Error::Inconsistent("lifting square corners do not match".into()));
    }
    if h.target() != &prod.object || k.target() != &prod.first {
        return Err(Error::Inconsistent("lifting square legs do not hit the product".into()));
    }
    for n in 0..=top {
        let lhs = prod.to_first.map().part(n).mul(h.map().part(n));
        let rhs = k.map().part(n).mul(j.map().part(n));
        if lhs != rhs {
            return Err(Error::broken("p h = k j", format!("degree {n}")));
        }
    }
    let a = j.source();
    let b = j.target();
    let ht = prod.to_cofree.compose(h);
    let hz = cofree::base_component(&ht, &prod.cofree);
    let (abar, _) = cofree::reduced_complex(a)?;
    let (bbar, _) = cofree::reduced_complex(b)?;
    let f = abar.field();
    let jbar_parts: Vec<Matrix> = (0..=top)
        .map(|n| if n == 0 { Matrix::zeros(f, 0, 0) } else { j.map().part(n).clone() })
        .collect();
    let jbar = ChainMap::new(abar.clone(), bbar.clone(), jbar_parts)?;
    let hz_parts: Vec<Matrix> = (0..=top)
        .map(|n| if n == 0 { Matrix::zeros(f, prod.cofree.base.dim(0), 0) } else { hz[n].clone() })
        .collect();
    let hzmap = ChainMap::new(abar.clone(), prod.cofree.base.clone(), hz_parts)?;
    let zero = ChainComplex::zero(f, top);
    let square = LiftingSquare::new(
        jbar,
        ChainMap::zero(&prod.cofree.base, &zero),
        hzmap,
        ChainMap::zero(&bbar, &zero),
    )?;
    let Some(ext) = find_lift(&square) else {
        return Ok(None);
    };
    let g = cofree::cofree_induced_map(b, &prod.cofree, ext.parts())?;
    let lift = prod.pairing(k, &g)?;
    for n in 0..=top {
        if lift.map().part(n).mul(j.map().part(n)) != *h.map().part(n) {
            return Err(Error::broken("lift restricts to the top edge", format!("degree {n}")));
        }
    }
    Ok(Some(lift))
}

/// The canonical embedding of a connected coalgebra into the tensor
/// coalgebra on its positive part.
pub fn embed_in_cofree(c: &DGCoalgebra) -> Result<(CofreeCoalgebra, CoalgebraMap)> {
    let (cbar, _) = cofree::reduced_complex(c)?;
    let t = cofree::tensor_coalgebra(&cbar)?;
    let id_parts: Vec<Matrix> = (0..=cbar.top()).map(|n| Matrix::identity(cbar.field(), cbar.dim(n))).collect();
    let i = cofree::cofree_induced_map(c, &t, &id_parts)?;
    Ok((t, i))
}

/// Present a connected coalgebra as a retract of a product with a
/// cofree factor: factor the identity, so the product projection
/// retracts the factorization's inclusion on the nose.
pub fn retract_presentation(c: &DGCoalgebra) -> Result<Factorization> {
    let id = CoalgebraMap::new(c.clone(), c.clone(), ChainMap::identity(&c.carrier))?;
    let fact = factorization(&id)?;
    verify_retract(&fact.incl, &fact.proj)?;
    Ok(fact)
}

/// Check that `r` retracts `i`: both are (already validated) coalgebra
/// maps and their composite is the identity.
pub fn verify_retract(i: &CoalgebraMap, r: &CoalgebraMap) -> Result<()> {
    if i.source() != r.target() || i.target() != r.source() {
        return Err(Error::Inconsistent("retract endpoints do not match".into()));
    }
    let top = i.source().carrier.top();
    for n in 0..=top {
        let comp = r.map().part(n).mul(i.map().part(n));
        if comp != Matrix::identity(comp.field(), i.source().carrier.dim(n)) {
            return Err(Error::broken("r i = id", format!("degree {n}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::check_dg_coalgebra;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn circle_words(top: usize) -> DGCoalgebra {
        cofree::tensor_coalgebra(&ChainComplex::sphere(q(), 1, top)).unwrap().coalgebra
    }

    #[test]
    fn product_of_two_word_coalgebras_counts_alternating_words() {
        let c = circle_words(4);
        let prod = product_with_cofree(&c, &ChainComplex::sphere(q(), 2, 4)).unwrap();
        assert_eq!(prod.object.carrier.dims(), &[1, 1, 2, 3, 5]);
        assert!(check_dg_coalgebra(&prod.object).ok());
    }

    #[test]
    fn product_with_the_unit_first_factor_is_the_cofree_part() {
        let v = ChainComplex::sphere(q(), 1, 3).direct_sum(&ChainComplex::sphere(q(), 2, 3));
        let prod = product_with_cofree(&DGCoalgebra::unit(q(), 3), &v).unwrap();
        assert_eq!(prod.object.carrier.dims(), prod.cofree.coalgebra.carrier.dims());
        assert!(prod.to_cofree.is_iso());
    }

    #[test]
    fn pairing_projects_back_to_its_legs() {
        // X = T(circle), legs: identity to X and the counit-induced map
        // to the unit coalgebra... instead pair into T(circle) x T(S^2):
        // u = id on the circle words, w = induced from a chain map.
        let c = circle_words(4);
        let v = ChainComplex::sphere(q(), 2, 4);
        let prod = product_with_cofree(&c, &v).unwrap();
        let u = CoalgebraMap::new(c.clone(), c.clone(), ChainMap::identity(&c.carrier)).unwrap();
        // Chain map from the positive part of C to V: degree 2 word
        // x^2 goes to the sphere generator.
        let (cbar, _) = cofree::reduced_complex(&c).unwrap();
        let mut phi: Vec<Matrix> = Vec::new();
        for n in 0..=4 {
            let mut m = Matrix::zeros(q(), v.dim(n), cbar.dim(n));
            if n == 2 {
                m.set(0, 0, q().one());
            }
            phi.push(m);
        }
        let w = cofree::cofree_induced_map(&c, &prod.cofree, &phi).unwrap();
        let paired = prod.pairing(&u, &w).unwrap();
        for n in 0..=4 {
            assert_eq!(
                prod.to_first.map().part(n).mul(paired.map().part(n)),
                *u.map().part(n)
            );
            assert_eq!(
                prod.to_cofree.map().part(n).mul(paired.map().part(n)),
                *w.map().part(n)
            );
        }
    }

    #[test]
    fn factoring_the_counit_gives_an_acyclic_middle() {
        // C -> unit coalgebra, factored: the middle is the tensor
        // coalgebra on an acyclic complex, so its homology is the unit.
        let c = circle_words(3);
        let unit = DGCoalgebra::unit(q(), 3);
        let counit_map =
            CoalgebraMap::new(c.clone(), unit.clone(), c.counit_map().unwrap()).unwrap();
        let fact = factorization(&counit_map).unwrap();
        for n in 0..=3 {
            assert_eq!(
                fact.proj.map().part(n).mul(fact.incl.map().part(n)),
                *counit_map.map().part(n)
            );
        }
        let h = chain::homology(&fact.middle.carrier);
        assert_eq!(&h.dims[..3], &[1, 0, 0]);
    }

    #[test]
    fn factoring_the_identity_splits_it() {
        let c = circle_words(3);
        let id = CoalgebraMap::new(c.clone(), c.clone(), ChainMap::identity(&c.carrier)).unwrap();
        let fact = factorization(&id).unwrap();
        // Projection of the factorization is a homology equivalence.
        let hmid = chain::homology(&fact.middle.carrier);
        let hc = chain::homology(&c.carrier);
        assert_eq!(&hmid.dims[..3], &hc.dims[..3]);
    }

    #[test]
    fn stage_zero_of_the_counit_is_the_word_coalgebra() {
        let c = circle_words(3);
        let unit = DGCoalgebra::unit(q(), 3);
        let f = CoalgebraMap::new(c.clone(), unit.clone(), c.counit_map().unwrap()).unwrap();
        let (prod, into) = stage_zero(&f).unwrap();
        // The unit contributes nothing: the product is the word
        // coalgebra on the positive part of C, and C embeds.
        assert_eq!(prod.object.carrier.dims(), prod.cofree.coalgebra.carrier.dims());
        for n in 1..=3 {
            assert_eq!(crate::linalg::kernel_basis(into.map().part(n)).cols(), 0);
        }
    }

    #[test]
    fn projection_lifts_against_the_factorization_inclusion() {
        // j: C -> middle from factoring the identity is injective with
        // homology-equivalent projection back; lift the square whose
        // top edge is j itself and bottom edge the projection.
        let c = circle_words(3);
        let id = CoalgebraMap::new(c.clone(), c.clone(), ChainMap::identity(&c.carrier)).unwrap();
        // Rebuild the product so the square talks to the same object.
        let (cbar, _) = cofree::reduced_complex(&c).unwrap();
        let cone = chain::cone(&cbar);
        let prod = product_with_cofree(&c, &cone).unwrap();
        let chi = chain::cone_inclusion(&cbar);
        let g = cofree::cofree_induced_map(&c, &prod.cofree, chi.parts()).unwrap();
        let j = prod.pairing(&id, &g).unwrap();
        let lift = lift_against_projection(&prod, &j, &j, &prod.to_first).unwrap();
        let lift = lift.expect("identity-shaped square lifts");
        for n in 0..=3 {
            assert_eq!(
                lift.map().part(n).mul(j.map().part(n)),
                *j.map().part(n)
            );
        }
    }

    #[test]
    fn every_connected_coalgebra_retracts_off_its_identity_factorization() {
        let c = circle_words(3);
        let fact = retract_presentation(&c).unwrap();
        verify_retract(&fact.incl, &fact.proj).unwrap();
        // The middle strictly extends C.
        assert!(fact.middle.carrier.dim(2) > c.carrier.dim(2));
    }

    #[test]
    fn word_expansion_satisfies_the_adjunction_triangle() {
        // Expand a tensor coalgebra into words on its own positive part,
        // then collapse back through the induced map on base projections:
        // the composite is the identity.
        let v = ChainComplex::sphere(q(), 1, 3).direct_sum(&ChainComplex::disk(q(), 2, 3));
        let t = cofree::tensor_coalgebra(&v).unwrap();
        let (t2, i) = embed_in_cofree(&t.coalgebra).unwrap();
        // phi: the positive part of T(W) projects onto W = positive part
        // of T(V), which projects onto V letter by letter.
        let f = q();
        let mut phi = Vec::new();
        for n in 0..=3 {
            if n == 0 {
                phi.push(Matrix::zeros(f, v.dim(0), 1));
                continue;
            }
            let woff = t2.layout.block_offset(n, &[n]);
            let wdim = t2.layout.base_dims()[n];
            let first = Matrix::from_fn(f, wdim, t2.coalgebra.carrier.dim(n), |r, c| {
                if c == woff + r { f.one() } else { f.zero() }
            });
            let voff = t.layout.block_offset(n, &[n]);
            let second = Matrix::from_fn(f, v.dim(n), wdim, |r, c| {
                if c == voff + r { f.one() } else { f.zero() }
            });
            phi.push(second.mul(&first));
        }
        let r = cofree::cofree_induced_map(&t2.coalgebra, &t, &phi).unwrap();
        verify_retract(&i, &r).unwrap();
    }
}
