//! Colimits of connected coalgebras: quotients by coideals, binary
//! coproducts, and coequalizers.
//!
//! All three are quotient constructions on the carrier.  A degreewise
//! subspace `K` supports a quotient coalgebra when the counit kills it
//! and the comultiplication sends it into `K (x) C + C (x) K`; both
//! conditions are verified before the structure is transported, so a
//! subspace that is not a coideal is reported instead of silently
//! producing garbage.
//!
//! The coproduct of two connected coalgebras glues their direct sum
//! along the two unit lines.  The coequalizer of a parallel pair divides
//! the target by the image of the difference.  Both come with their
//! structure maps, and the coproduct with a mediator realizing its
//! universal property.

use crate::chain::ChainMap;
use crate::coalg::{CoalgebraMap, DGCoalgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;

/// Quotient of a coalgebra by a degreewise subspace, which must be a
/// coideal: counit zero on it, comultiplication into the two-sided
/// mixed part.  Returns the quotient with the projections and a choice
/// of sections.
pub fn quotient_coalgebra(c: &DGCoalgebra, subs: &[Matrix]) -> Result<(DGCoalgebra, Vec<Matrix>, Vec<Matrix>)> {
    let f = c.carrier.field();
    let top = c.carrier.top();
    let (quo, proj, section) = c.carrier.quotient_by(subs)?;
    if !c.counit.mul(&subs[0]).is_zero() {
        return Err(Error::broken("counit kills the subspace", "coalgebra quotient"));
    }
    let mut comult = Vec::new();
    for n in 0..=top {
        // (pi (x) pi) Delta, blockwise over the pair layout.
        let mut pp_rows: Vec<Matrix> = Vec::new();
        let mut off = 0usize;
        for p in 0..=n {
            let q = n - p;
            let size = c.carrier.dim(p) * c.carrier.dim(q);
            let block = c.comult[n].row_slice(off, off + size);
            pp_rows.push(proj[p].kron(&proj[q]).mul(&block));
            off += size;
        }
        let pp = Matrix::vstack(f, &pp_rows.iter().collect::<Vec<_>>());
        if !pp.mul(&subs[n]).is_zero() {
            return Err(Error::broken("comultiplication keeps the subspace a coideal", format!("degree {n}")));
        }
        comult.push(pp.mul(&section[n]));
    }
    let counit = c.counit.mul(&section[0]);
    let out = DGCoalgebra::new(quo, comult, counit)?;
    Ok((out, proj, section))
}

/// A binary coproduct: the glued object and the two structure maps.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub object: DGCoalgebra,
    pub from_left: CoalgebraMap,
    pub from_right: CoalgebraMap,
    /// Projections from the direct-sum carrier.
    proj: Vec<Matrix>,
    /// Sections of those projections.
    section: Vec<Matrix>,
    left: DGCoalgebra,
    right: DGCoalgebra,
}

/// Direct sum of two coalgebras (before any gluing): not connected,
/// used internally as the ambient object.
fn direct_sum_coalgebra(a: &DGCoalgebra, b: &DGCoalgebra) -> DGCoalgebra {
    let f = a.carrier.field();
    let top = a.carrier.top();
    let sum = a.carrier.direct_sum(&b.carrier);
    let mut comult = Vec::new();
    for n in 0..=top {
        let da: Vec<usize> = (0..=n).map(|p| a.carrier.dim(p) * a.carrier.dim(n - p)).collect();
        let db: Vec<usize> = (0..=n).map(|p| b.carrier.dim(p) * b.carrier.dim(n - p)).collect();
        let mut m = Matrix::zeros(
            f,
            (0..=n).map(|p| sum.dim(p) * sum.dim(n - p)).sum(),
            sum.dim(n),
        );
        let mut off_pair = 0usize;
        let mut off_a = 0usize;
        let mut off_b = 0usize;
        for p in 0..=n {
            let q = n - p;
            // Inside the (p, q) pair block of the sum, the rows are
            // row-major over (A_p + B_p) x (A_q + B_q); the A (x) A and
            // B (x) B corners receive the summand comultiplications.
            let ablock = a.comult[n].row_slice(off_a, off_a + da[p]);
            let bblock = b.comult[n].row_slice(off_b, off_b + db[p]);
            for (block, is_right) in [(&ablock, false), (&bblock, true)] {
                let side = if is_right { b } else { a };
                let col_base = if is_right { a.carrier.dim(n) } else { 0 };
                let rows_at = if is_right { a.carrier.dim(p) } else { 0 };
                let cols_at = if is_right { a.carrier.dim(q) } else { 0 };
                let (ap, aq) = (side.carrier.dim(p), side.carrier.dim(q));
                for i in 0..ap {
                    for j in 0..aq {
                        let local = i * aq + j;
                        let row = off_pair + (rows_at + i) * sum.dim(q) + cols_at + j;
                        for col in 0..side.carrier.dim(n) {
                            let v = block.get(local, col).clone();
                            if !f.is_zero(&v) {
                                m.set(row, col_base + col, v);
                            }
                        }
                    }
                }
            }
            off_pair += sum.dim(p) * sum.dim(q);
            off_a += da[p];
            off_b += db[p];
        }
        comult.push(m);
    }
    let counit = Matrix::hstack(f, &[&a.counit, &b.counit]);
    DGCoalgebra::new(sum, comult, counit).expect("direct sum of coalgebras is a coalgebra")
}

/// Coproduct of two connected coalgebras: direct sum with the unit
/// lines identified.
pub fn coproduct(a: &DGCoalgebra, b: &DGCoalgebra) -> Result<Coproduct> {
    let f = a.carrier.field();
    let top = a.carrier.top();
    if a.carrier.dim(0) != 1 || b.carrier.dim(0) != 1 {
        return Err(Error::NotConnected("coproduct needs connected coalgebras".into()));
    }
    let sum = direct_sum_coalgebra(a, b);
    // Glue: kill u_A - u_B, normalized so both counits give 1.
    let ea = a.counit.get(0, 0);
    let eb = b.counit.get(0, 0);
    let mut glue = Matrix::zeros(f, 2, 1);
    glue.set(0, 0, f.inv(ea).expect("counit is nonzero"));
    glue.set(1, 0, f.neg(&f.inv(eb).expect("counit is nonzero")));
    let mut subs = vec![glue];
    for n in 1..=top {
        subs.push(Matrix::zeros(f, sum.carrier.dim(n), 0));
    }
    let (object, proj, section) = quotient_coalgebra(&sum, &subs)?;
    let mut left_parts = Vec::new();
    let mut right_parts = Vec::new();
    for n in 0..=top {
        let wa = a.carrier.dim(n);
        let wb = b.carrier.dim(n);
        let mut ia = Matrix::zeros(f, wa + wb, wa);
        for i in 0..wa {
            ia.set(i, i, f.one());
        }
        let mut ib = Matrix::zeros(f, wa + wb, wb);
        for i in 0..wb {
            ib.set(wa + i, i, f.one());
        }
        left_parts.push(proj[n].mul(&ia));
        right_parts.push(proj[n].mul(&ib));
    }
    let from_left = CoalgebraMap::new(
        a.clone(),
        object.clone(),
        ChainMap::new(a.carrier.clone(), object.carrier.clone(), left_parts)?,
    )?;
    let from_right = CoalgebraMap::new(
        b.clone(),
        object.clone(),
        ChainMap::new(b.carrier.clone(), object.carrier.clone(), right_parts)?,
    )?;
    Ok(Coproduct { object, from_left, from_right, proj, section, left: a.clone(), right: b.clone() })
}

impl Coproduct {
    /// The mediating map to `target` induced by maps out of the two
    /// summands, provided they agree with the gluing (they always do for
    /// coalgebra maps out of connected summands).
    pub fn mediator(&self, f: &CoalgebraMap, g: &CoalgebraMap) -> Result<CoalgebraMap> {
        if f.source() != &self.left || g.source() != &self.right || f.target() != g.target() {
            return Err(Error::Inconsistent("mediator legs do not match the coproduct".into()));
        }
        let field = self.object.carrier.field();
        let top = self.object.carrier.top();
        let parts: Vec<Matrix> = (0..=top)
            .map(|n| {
                let joint = Matrix::hstack(field, &[f.map().part(n), g.map().part(n)]);
                joint.mul(&self.section[n])
            })
            .collect();
        // Well-definedness is not assumed: the chain and coalgebra
        // conditions are re-verified on construction.
        let m = ChainMap::new(self.object.carrier.clone(), f.target().carrier.clone(), parts)?;
        let out = CoalgebraMap::new(self.object.clone(), f.target().clone(), m)?;
        for (leg, inc) in [(f, &self.from_left), (g, &self.from_right)] {
            for n in 0..=top {
                if out.map().part(n).mul(inc.map().part(n)) != *leg.map().part(n) {
                    return Err(Error::broken("mediator restricts to the given legs", format!("degree {n}")));
                }
            }
        }
        Ok(out)
    }

    /// The projections from the direct-sum carrier onto the glued object.
    pub fn projections(&self) -> &[Matrix] {
        &self.proj
    }
}

/// Coequalizer of a parallel pair of coalgebra maps: the target divided
/// by the image of the difference.  Returns the quotient and the
/// projection map.
pub fn coequalizer(f: &CoalgebraMap, g: &CoalgebraMap) -> Result<(DGCoalgebra, CoalgebraMap)> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Inconsistent("coequalizer needs a parallel pair".into()));
    }
    let tgt = f.target();
    let top = tgt.carrier.top();
    let subs: Vec<Matrix> = (0..=top)
        .map(|n| linalg::image_basis(&f.map().part(n).sub(g.map().part(n))))
        .collect();
    let (quo, proj, _) = quotient_coalgebra(tgt, &subs)?;
    let parts: Vec<Matrix> = proj.clone();
    let m = ChainMap::new(tgt.carrier.clone(), quo.carrier.clone(), parts)?;
    let out = CoalgebraMap::new(tgt.clone(), quo.clone(), m)?;
    Ok((quo, out))
}
