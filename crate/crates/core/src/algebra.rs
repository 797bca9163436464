//! Differential graded algebras on cochain carriers, related to coalgebras
//! by degreewise linear duality.
//!
//! Under truncation every degree is finite-dimensional, so dualizing is
//! plain transposition: comultiplication transposes to multiplication and
//! counit to unit, and the double dual is the identity on the nose.  The
//! algebra laws are checked through that duality: transposing an equation
//! of matrices preserves it, so associativity of `A` is coassociativity of
//! its dual coalgebra, and so on.
//!
//! The word constructions (tensor algebra, free product) share a basis
//! convention: words of positive-degree letters ordered by word length,
//! then lexicographically by the degree composition, with row-major
//! Kronecker indexing inside each word block.  The same convention is used
//! by the tensor coalgebra, which makes "dual of the tensor algebra equals
//! the tensor coalgebra" an equality of matrices, not just an isomorphism.

use crate::chain::TensorLayout;
use crate::coalg::{check_dg_coalgebra, DGCoalgebra};
use crate::cochain::{self, CochainComplex, CochainMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::matrix::Matrix;

/// A unital differential graded algebra: multiplication lowers nothing,
/// the differential raises degree by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAlgebra {
    pub carrier: CochainComplex,
    /// `mult[n] : (A (x) A)^n -> A^n` in the tensor layout of the carrier.
    pub mult: Vec<Matrix>,
    /// `unit : K -> A^0`, a single column.
    pub unit: Matrix,
}

impl DGAlgebra {
    pub fn new(carrier: CochainComplex, mult: Vec<Matrix>, unit: Matrix) -> Result<DGAlgebra> {
        let layout = TensorLayout::new(vec![carrier.dims().to_vec(), carrier.dims().to_vec()], carrier.top());
        if mult.len() != carrier.top() + 1 {
            return Err(Error::dim("multiplication parts", format!("{}", carrier.top() + 1), format!("{}", mult.len())));
        }
        for (n, m) in mult.iter().enumerate() {
            m.expect_shape(carrier.dim(n), layout.dim(n), &format!("multiplication degree {n}"))?;
        }
        unit.expect_shape(carrier.dim(0), 1, "unit")?;
        Ok(DGAlgebra { carrier, mult, unit })
    }

    /// `K` in degree 0 with its only algebra structure.
    pub fn scalar(field: Field, top: usize) -> DGAlgebra {
        let carrier = CochainComplex::point(field, top);
        let mut mult = vec![Matrix::identity(field, 1)];
        for _ in 1..=top {
            mult.push(Matrix::zeros(field, 0, 0));
        }
        DGAlgebra::new(carrier, mult, Matrix::identity(field, 1)).expect("scalar algebra")
    }

    pub fn is_connected(&self) -> bool {
        self.carrier.dim(0) == 1 && !self.unit.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub mult_is_cochain_map: bool,
    pub unit_is_cocycle: bool,
    pub associative: bool,
    pub unital: bool,
}

impl AlgebraReport {
    pub fn ok(&self) -> bool {
        self.mult_is_cochain_map && self.unit_is_cocycle && self.associative && self.unital
    }
}

/// Check the algebra laws by transposing to the dual coalgebra: each law
/// is the transpose of the corresponding coalgebra law, so the verdicts
/// carry over exactly.
pub fn check_algebra(a: &DGAlgebra) -> AlgebraReport {
    let report = check_dg_coalgebra(&dual_coalgebra(a));
    AlgebraReport {
        mult_is_cochain_map: report.comult_is_chain_map,
        unit_is_cocycle: report.counit_is_chain_map,
        associative: report.coassociative,
        unital: report.counital,
    }
}

/// Degreewise dual of a coalgebra: transposed structure matrices.
pub fn dual_algebra(c: &DGCoalgebra) -> DGAlgebra {
    let carrier = cochain::dual_complex(&c.carrier);
    let mult = c.comult.iter().map(Matrix::transpose).collect();
    let unit = c.counit.transpose();
    DGAlgebra::new(carrier, mult, unit).expect("dual of a coalgebra")
}

/// Degreewise dual of an algebra; inverse to [`dual_algebra`].
pub fn dual_coalgebra(a: &DGAlgebra) -> DGCoalgebra {
    let carrier = cochain::complex_dual(&a.carrier);
    let comult = a.mult.iter().map(Matrix::transpose).collect();
    let counit = a.unit.transpose();
    DGCoalgebra::new(carrier, comult, counit).expect("dual of an algebra")
}

/// Whether `parts` defines a map of algebras: a cochain map preserving
/// multiplication and unit.
pub fn is_algebra_map(src: &DGAlgebra, tgt: &DGAlgebra, parts: &[Matrix]) -> bool {
    let f = src.carrier.field();
    let Ok(map) = CochainMap::new(src.carrier.clone(), tgt.carrier.clone(), parts.to_vec()) else {
        return false;
    };
    if tgt.unit != map.part(0).mul(&src.unit) {
        return false;
    }
    let src_layout = TensorLayout::new(vec![src.carrier.dims().to_vec(); 2], src.carrier.top());
    let tgt_layout = TensorLayout::new(vec![tgt.carrier.dims().to_vec(); 2], tgt.carrier.top());
    (0..=src.carrier.top()).all(|n| {
        // f (x) f assembled blockwise between the two pair layouts.
        let mut ff = Matrix::zeros(f, tgt_layout.dim(n), src_layout.dim(n));
        for comp in src_layout.compositions(n) {
            if src_layout.block_size(&comp) == 0 || tgt_layout.block_size(&comp) == 0 {
                continue;
            }
            let block = map.part(comp[0]).kron(map.part(comp[1]));
            ff.add_block(tgt_layout.block_offset(n, &comp), src_layout.block_offset(n, &comp), &block);
        }
        map.part(n).mul(&src.mult[n]) == tgt.mult[n].mul(&ff)
    })
}

/// The augmentation `A -> K[0]`: kills positive degrees, sends the unit
/// to 1.  Defined when the algebra is connected.
pub fn augmentation(a: &DGAlgebra) -> Result<CochainMap> {
    if !a.is_connected() {
        return Err(Error::Inconsistent("augmentation needs a connected algebra".into()));
    }
    let f = a.carrier.field();
    let point = CochainComplex::point(f, a.carrier.top());
    let scale = f.inv(a.unit.get(0, 0)).expect("unit coordinate is invertible");
    let mut parts = vec![Matrix::from_fn(f, 1, 1, |_, _| scale.clone())];
    for n in 1..=a.carrier.top() {
        parts.push(Matrix::zeros(f, 0, a.carrier.dim(n)));
    }
    CochainMap::new(a.carrier.clone(), point, parts)
}

/// The kernel of the augmentation: the positive-degree part of a
/// connected algebra, as a cochain complex.
pub fn augmentation_ideal(a: &DGAlgebra) -> Result<CochainComplex> {
    if !a.is_connected() {
        return Err(Error::Inconsistent("augmentation ideal needs a connected algebra".into()));
    }
    let f = a.carrier.field();
    let top = a.carrier.top();
    let mut dims = vec![0];
    dims.extend((1..=top).map(|n| a.carrier.dim(n)));
    let diffs = (0..top)
        .map(|n| {
            if n == 0 {
                Matrix::zeros(f, a.carrier.dim(1), 0)
            } else {
                a.carrier.d(n).clone()
            }
        })
        .collect();
    CochainComplex::new(f, dims, diffs)
}

/// Basis layout for word constructions over a positive-degree base: in
/// each total degree, words are compositions into positive parts, ordered
/// by length and then lexicographically, with row-major indexing inside a
/// word block.
#[derive(Debug, Clone)]
pub struct WordLayout {
    base_dims: Vec<usize>,
    top: usize,
}

impl WordLayout {
    pub fn new(base_dims: Vec<usize>, top: usize) -> WordLayout {
        WordLayout { base_dims, top }
    }

    pub fn base_dim(&self, degree: usize) -> usize {
        self.base_dims.get(degree).copied().unwrap_or(0)
    }

    /// All compositions of `degree` into positive parts, shortest words
    /// first, lexicographic within a length; degree 0 has the empty word.
    pub fn words(&self, degree: usize) -> Vec<Vec<usize>> {
        fn go(remaining: usize, len_left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if len_left == 0 {
                if remaining == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            for first in 1..=remaining.saturating_sub(len_left - 1) {
                acc.push(first);
                go(remaining - first, len_left - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        for len in 0..=degree {
            go(degree, len, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn block_size(&self, word: &[usize]) -> usize {
        word.iter().map(|&d| self.base_dim(d)).product()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.words(degree).iter().map(|w| self.block_size(w)).sum()
    }

    pub fn block_offset(&self, degree: usize, word: &[usize]) -> usize {
        let mut off = 0;
        for w in self.words(degree) {
            if w == word {
                return off;
            }
            off += self.block_size(&w);
        }
        panic!("word {word:?} not found in degree {degree}");
    }

    /// Flat index of a basis element of a word block.
    pub fn position(&self, degree: usize, word: &[usize], indices: &[usize]) -> usize {
        let mut inner = 0;
        for (&d, &i) in word.iter().zip(indices) {
            debug_assert!(i < self.base_dim(d));
            inner = inner * self.base_dim(d) + i;
        }
        self.block_offset(degree, word) + inner
    }

    /// Enumerate `(word, indices)` pairs in basis order.
    pub fn enumerate(&self, degree: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for word in self.words(degree) {
            let radices: Vec<usize> = word.iter().map(|&d| self.base_dim(d)).collect();
            let total: usize = radices.iter().product();
            for flat in 0..total {
                let mut idx = vec![0usize; radices.len()];
                let mut rest = flat;
                for k in (0..radices.len()).rev() {
                    idx[k] = rest % radices[k];
                    rest /= radices[k];
                }
                out.push((word.clone(), idx));
            }
        }
        out
    }

    pub fn base_dims(&self) -> &[usize] {
        &self.base_dims
    }

    pub fn top(&self) -> usize {
        self.top
    }
}

/// The Koszul differential on the word space over a cochain base: the sum
/// over letters of the letter differential, signed by the total degree of
/// the letters to the left.
fn word_differentials(field: Field, base: &CochainComplex, layout: &WordLayout) -> Vec<Matrix> {
    let top = layout.top();
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut d = Matrix::zeros(field, dims[n + 1], dims[n]);
        for word in layout.words(n) {
            if layout.block_size(&word) == 0 {
                continue;
            }
            let src_off = layout.block_offset(n, &word);
            let mut sign_exp = 0usize;
            for i in 0..word.len() {
                let mut tgt_word = word.clone();
                tgt_word[i] += 1;
                if tgt_word[i] <= top && layout.block_size(&tgt_word) != 0 {
                    let tgt_off = layout.block_offset(n + 1, &tgt_word);
                    let mut block = Matrix::identity(field, 1);
                    for (j, &dj) in word.iter().enumerate() {
                        let piece = if j == i {
                            base.d(dj).clone()
                        } else {
                            Matrix::identity(field, base.dim(dj))
                        };
                        block = block.kron(&piece);
                    }
                    if sign_exp % 2 == 1 {
                        block = block.neg();
                    }
                    d.add_block(tgt_off, src_off, &block);
                }
                sign_exp += word[i];
            }
        }
        diffs.push(d);
    }
    diffs
}

/// Concatenation product on the word space: a pure reindexing with no
/// signs, word block by word block.
fn concatenation_mult(field: Field, layout: &WordLayout) -> Vec<Matrix> {
    let top = layout.top();
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let pair = TensorLayout::new(vec![dims.clone(), dims.clone()], top);
    let mut mult = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(field, dims[n], pair.dim(n));
        for pq in pair.compositions(n) {
            let (p, q) = (pq[0], pq[1]);
            if pair.block_size(&pq) == 0 {
                continue;
            }
            let pair_off = pair.block_offset(n, &pq);
            for left in layout.words(p) {
                let ls = layout.block_size(&left);
                if ls == 0 {
                    continue;
                }
                let loff = layout.block_offset(p, &left);
                for right in layout.words(q) {
                    let rs = layout.block_size(&right);
                    if rs == 0 {
                        continue;
                    }
                    let roff = layout.block_offset(q, &right);
                    let mut joined = left.clone();
                    joined.extend_from_slice(&right);
                    let tgt_off = layout.block_offset(n, &joined);
                    for i in 0..ls {
                        for j in 0..rs {
                            let col = pair_off + (loff + i) * dims[q] + (roff + j);
                            // Row-major concatenation: the joined index is
                            // the left index shifted past the right block.
                            let row = tgt_off + i * rs + j;
                            m.set(row, col, field.one());
                        }
                    }
                }
            }
        }
        mult.push(m);
    }
    mult
}

/// The tensor algebra on a positive-degree cochain base: words with
/// concatenation, truncated by degree (connectivity keeps every degree
/// finite).
pub fn tensor_algebra(base: &CochainComplex) -> Result<(DGAlgebra, WordLayout)> {
    if base.dim(0) != 0 {
        return Err(Error::Inconsistent("tensor algebra needs a base with zero degree-0 part".into()));
    }
    let field = base.field();
    let top = base.top();
    let layout = WordLayout::new(base.dims().to_vec(), top);
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let carrier = CochainComplex::new(field, dims, word_differentials(field, base, &layout))?;
    let mult = concatenation_mult(field, &layout);
    let mut unit = Matrix::zeros(field, carrier.dim(0), 1);
    unit.set(0, 0, field.one());
    Ok((DGAlgebra::new(carrier, mult, unit)?, layout))
}

/// The product of connected algebras: `K` in degree 0, the direct sum in
/// positive degrees, componentwise multiplication.
pub fn algebra_product(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGAlgebra> {
    if !a.is_connected() || !b.is_connected() {
        return Err(Error::Inconsistent("algebra product needs connected factors".into()));
    }
    let f = a.carrier.field();
    let top = a.carrier.top();
    assert_eq!(top, b.carrier.top(), "product needs a shared truncation");
    let mut dims = vec![1usize];
    dims.extend((1..=top).map(|n| a.carrier.dim(n) + b.carrier.dim(n)));
    // The degree-0 basis vector is the pair of units, so its differential
    // is the units pushed through the factor differentials.
    let mut diffs = Vec::new();
    for n in 0..top {
        if n == 0 {
            let da = a.carrier.d(0).mul(&a.unit);
            let db = b.carrier.d(0).mul(&b.unit);
            diffs.push(Matrix::vstack(f, &[&da, &db]));
        } else {
            diffs.push(Matrix::block_diag(f, &[a.carrier.d(n), b.carrier.d(n)]));
        }
    }
    let carrier = CochainComplex::new(f, dims.clone(), diffs)?;
    let pair = TensorLayout::new(vec![dims.clone(), dims.clone()], top);
    let mut mult = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(f, carrier.dim(n), pair.dim(n));
        for pq in pair.compositions(n) {
            let (p, q) = (pq[0], pq[1]);
            if pair.block_size(&pq) == 0 {
                continue;
            }
            let off = pair.block_offset(n, &pq);
            let block = if p == 0 && q == 0 {
                Matrix::identity(f, 1)
            } else if p == 0 || q == 0 {
                // The unit coordinate acts as the identity.
                Matrix::identity(f, carrier.dim(n))
            } else {
                // Componentwise product; cross terms between the factors
                // vanish.
                let da = a.carrier.dim(p);
                let db = b.carrier.dim(p);
                let ea = a.carrier.dim(q);
                let eb = b.carrier.dim(q);
                let pa = Matrix::hstack(f, &[&Matrix::identity(f, da), &Matrix::zeros(f, da, db)]);
                let pb = Matrix::hstack(f, &[&Matrix::zeros(f, db, da), &Matrix::identity(f, db)]);
                let qa = Matrix::hstack(f, &[&Matrix::identity(f, ea), &Matrix::zeros(f, ea, eb)]);
                let qb = Matrix::hstack(f, &[&Matrix::zeros(f, eb, ea), &Matrix::identity(f, eb)]);
                let ma = a.mult_block(p, q).mul(&pa.kron(&qa));
                let mb = b.mult_block(p, q).mul(&pb.kron(&qb));
                Matrix::vstack(f, &[&ma, &mb])
            };
            m.add_block(0, off, &block);
        }
        mult.push(m);
    }
    let mut unit = Matrix::zeros(f, 1, 1);
    unit.set(0, 0, f.one());
    DGAlgebra::new(carrier, mult, unit)
}

impl DGAlgebra {
    /// The `(p, q)` column block of the multiplication in degree `p + q`.
    pub fn mult_block(&self, p: usize, q: usize) -> Matrix {
        let layout = TensorLayout::new(vec![self.carrier.dims().to_vec(); 2], self.carrier.top());
        let n = p + q;
        let off = layout.block_offset(n, &[p, q]);
        let size = layout.block_size(&[p, q]);
        self.mult[n].col_slice(off, off + size)
    }

    /// Multiply two homogeneous vectors.
    pub fn mult_vec(&self, p: usize, x: &Matrix, q: usize, y: &Matrix) -> Matrix {
        self.mult_block(p, q).mul(&x.kron(y))
    }
}

/// The coproduct (free product) of connected algebras: the tensor algebra
/// on the direct sum of the positive parts, modulo collapsing adjacent
/// letters from the same factor to their product there.
/// A free product of two connected algebras: the glued algebra together
/// with its presentation as a quotient of the word algebra on the
/// positive parts, the quotient data, and the two inclusions.
#[derive(Debug, Clone)]
pub struct FreeProduct {
    pub algebra: DGAlgebra,
    /// Inclusion of the left factor, one matrix per degree.
    pub incl_left: Vec<Matrix>,
    /// Inclusion of the right factor, one matrix per degree.
    pub incl_right: Vec<Matrix>,
    /// Projections from the ambient word algebra.
    pub proj: Vec<Matrix>,
    /// Sections of those projections.
    pub section: Vec<Matrix>,
    /// Degreewise basis of the collapse ideal inside the word algebra.
    pub ideal: Vec<Matrix>,
    /// The ambient word algebra on the direct sum of the positive parts.
    pub ambient: DGAlgebra,
    /// Word layout of the ambient algebra.
    pub layout: WordLayout,
    /// Dimensions of the left factor's positive part, per degree.
    pub left_dims: Vec<usize>,
}

pub fn free_product(a: &DGAlgebra, b: &DGAlgebra) -> Result<FreeProduct> {
    let f = a.carrier.field();
    let top = a.carrier.top();
    let abar = augmentation_ideal(a)?;
    let bbar = augmentation_ideal(b)?;
    let sum = abar.direct_sum(&bbar);
    let (t, layout) = tensor_algebra(&sum)?;
    // Letter i of degree d is from factor A when i < dim abar_d.  The
    // collapse of two same-factor letters is the column of that factor's
    // multiplication, re-embedded.
    let collapse_pair = |d1: usize, i1: usize, d2: usize, i2: usize| -> Option<Matrix> {
        let asz = abar.dim(d1);
        let asz2 = abar.dim(d2);
        let from_a = i1 < asz;
        if from_a != (i2 < asz2) {
            return None;
        }
        let d = d1 + d2;
        let mut out = Matrix::zeros(f, sum.dim(d), 1);
        if from_a {
            let col = a.mult_block(d1, d2).col_slice(i1 * a.carrier.dim(d2) + i2, i1 * a.carrier.dim(d2) + i2 + 1);
            out.add_block(0, 0, &col);
        } else {
            let j1 = i1 - asz;
            let j2 = i2 - asz2;
            let col = b.mult_block(d1, d2).col_slice(j1 * b.carrier.dim(d2) + j2, j1 * b.carrier.dim(d2) + j2 + 1);
            out.add_block(abar.dim(d), 0, &col);
        }
        Some(out)
    };
    // Degreewise spanning set of the two-sided collapse ideal: every basis
    // word with a marked adjacent same-factor pair contributes the word
    // minus its collapsed form.
    let mut subs = Vec::new();
    for n in 0..=top {
        let mut gens: Vec<Matrix> = Vec::new();
        for (word, idx) in layout.enumerate(n) {
            for t_pos in 0..word.len().saturating_sub(1) {
                let (d1, d2) = (word[t_pos], word[t_pos + 1]);
                let Some(prod) = collapse_pair(d1, idx[t_pos], d2, idx[t_pos + 1]) else {
                    continue;
                };
                let mut gen = Matrix::zeros(f, layout.dim(n), 1);
                gen.set(layout.position(n, &word, &idx), 0, f.one());
                // Subtract the collapsed word: same letters with the pair
                // replaced by each basis component of the product.
                let mut collapsed_word: Vec<usize> = word[..t_pos].to_vec();
                collapsed_word.push(d1 + d2);
                collapsed_word.extend_from_slice(&word[t_pos + 2..]);
                for r in 0..prod.rows() {
                    let coeff = prod.get(r, 0);
                    if f.is_zero(coeff) {
                        continue;
                    }
                    let mut cidx: Vec<usize> = idx[..t_pos].to_vec();
                    cidx.push(r);
                    cidx.extend_from_slice(&idx[t_pos + 2..]);
                    let pos = layout.position(n, &collapsed_word, &cidx);
                    let v = f.sub(gen.get(pos, 0), coeff);
                    gen.set(pos, 0, v);
                }
                gens.push(gen);
            }
        }
        let stacked = if gens.is_empty() {
            Matrix::zeros(f, layout.dim(n), 0)
        } else {
            Matrix::hstack(f, &gens.iter().collect::<Vec<_>>())
        };
        subs.push(linalg::image_basis(&stacked));
    }
    let (carrier, proj, section) = t.carrier.quotient_by(&subs)?;
    // Induced multiplication; well-definedness needs the span to absorb
    // products, checked degree block by degree block.
    let qdims: Vec<usize> = carrier.dims().to_vec();
    let pair = TensorLayout::new(vec![qdims.clone(), qdims.clone()], top);
    let mut mult = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(f, carrier.dim(n), pair.dim(n));
        for pq in pair.compositions(n) {
            let (p, q) = (pq[0], pq[1]);
            if pair.block_size(&pq) == 0 {
                continue;
            }
            let t_block = t.mult_block(p, q);
            let absorbed_left = proj[n].mul(&t_block).mul(&subs[p].kron(&Matrix::identity(f, layout.dim(q))));
            let absorbed_right = proj[n].mul(&t_block).mul(&Matrix::identity(f, layout.dim(p)).kron(&subs[q]));
            if !absorbed_left.is_zero() || !absorbed_right.is_zero() {
                return Err(Error::broken("ideal absorbs products", format!("degrees ({p}, {q})")));
            }
            let block = proj[n].mul(&t_block).mul(&section[p].kron(&section[q]));
            m.add_block(0, pair.block_offset(n, &pq), &block);
        }
        mult.push(m);
    }
    let unit = proj[0].mul(&t.unit);
    let algebra = DGAlgebra::new(carrier, mult, unit)?;
    // Factor inclusions: units to the unit, positive parts to length-1
    // words.  The multiplicativity is forced by the collapse ideal and
    // double-checked by the caller-facing tests.
    let mut incl_left = Vec::new();
    let mut incl_right = Vec::new();
    for n in 0..=top {
        if n == 0 {
            let ua = f.inv(a.unit.get(0, 0)).expect("unit coefficient is invertible");
            let ub = f.inv(b.unit.get(0, 0)).expect("unit coefficient is invertible");
            incl_left.push(algebra.unit.scale(&ua));
            incl_right.push(algebra.unit.scale(&ub));
        } else {
            let off = layout.block_offset(n, &[n]);
            let asz = abar.dim(n);
            let bsz = bbar.dim(n);
            let mut la = Matrix::zeros(f, layout.dim(n), asz);
            for i in 0..asz {
                la.set(off + i, i, f.one());
            }
            let mut lb = Matrix::zeros(f, layout.dim(n), bsz);
            for i in 0..bsz {
                lb.set(off + asz + i, i, f.one());
            }
            incl_left.push(proj[n].mul(&la));
            incl_right.push(proj[n].mul(&lb));
        }
    }
    let left_dims = (0..=top).map(|n| abar.dim(n)).collect();
    Ok(FreeProduct {
        algebra,
        incl_left,
        incl_right,
        proj,
        section,
        ideal: subs,
        ambient: t,
        layout,
        left_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;

    fn q() -> Field {
        Field::Rationals
    }

    /// The coalgebra with one basis vector in each degree and
    /// "all splittings" comultiplication; its dual is a polynomial-like
    /// algebra on one generator per degree constraint.
    fn word_coalgebra(field: Field, top: usize) -> DGCoalgebra {
        let dims = vec![1; top + 1];
        let diffs = (1..=top).map(|_| Matrix::zeros(field, 1, 1)).collect();
        let carrier = ChainComplex::new(field, dims, diffs).unwrap();
        let comult = (0..=top)
            .map(|n| Matrix::from_fn(field, n + 1, 1, |_, _| field.one()))
            .collect();
        DGCoalgebra::new(carrier, comult, Matrix::identity(field, 1)).unwrap()
    }

    #[test]
    fn double_dual_is_the_identity() {
        let c = word_coalgebra(q(), 3);
        let a = dual_algebra(&c);
        assert!(check_algebra(&a).ok());
        assert_eq!(dual_coalgebra(&a), c);
    }

    #[test]
    fn dual_of_the_unit_coalgebra_is_the_scalar_algebra() {
        let c = DGCoalgebra::unit(q(), 2);
        assert_eq!(dual_algebra(&c), DGAlgebra::scalar(q(), 2));
    }

    #[test]
    fn tensor_algebra_on_one_degree_one_generator_is_polynomial() {
        // Dual of the circle complex: K in degree 1.
        let base = cochain::dual_complex(&ChainComplex::sphere(q(), 1, 4));
        let (t, layout) = tensor_algebra(&base).unwrap();
        assert_eq!(t.carrier.dims(), &[1, 1, 1, 1, 1]);
        assert!(check_algebra(&t).ok());
        // x^2 . x = x^3 under concatenation.
        let x2 = Matrix::identity(q(), 1);
        let x1 = Matrix::identity(q(), 1);
        let prod = t.mult_vec(2, &x2, 1, &x1);
        assert_eq!(prod, Matrix::identity(q(), 1));
        assert_eq!(layout.words(3).len(), 4);
    }

    #[test]
    fn tensor_algebra_word_dims_double_with_two_generators() {
        let dims = vec![0, 2, 0, 0];
        let diffs = vec![
            Matrix::zeros(q(), 2, 0),
            Matrix::zeros(q(), 0, 2),
            Matrix::zeros(q(), 0, 0),
        ];
        let base = CochainComplex::new(q(), dims, diffs).unwrap();
        let (t, _) = tensor_algebra(&base).unwrap();
        assert_eq!(t.carrier.dims(), &[1, 2, 4, 8]);
        assert!(check_algebra(&t).ok());
    }

    #[test]
    fn dual_of_the_tensor_coalgebra_relation() {
        // Deconcatenation transposes to concatenation: the dual of the
        // one-generator word coalgebra multiplies like the tensor algebra.
        let c = word_coalgebra(q(), 3);
        let a = dual_algebra(&c);
        let base = cochain::dual_complex(&ChainComplex::sphere(q(), 1, 3));
        let (t, _) = tensor_algebra(&base).unwrap();
        assert_eq!(a.carrier.dims(), t.carrier.dims());
        assert_eq!(a.mult, t.mult);
    }

    #[test]
    fn product_has_terminal_unit() {
        let a = dual_algebra(&word_coalgebra(q(), 3));
        let p = algebra_product(&a, &DGAlgebra::scalar(q(), 3)).unwrap();
        assert!(check_algebra(&p).ok());
        assert_eq!(p.carrier.dims(), a.carrier.dims());
        assert_eq!(p.mult, a.mult);
    }

    #[test]
    fn product_of_polynomial_algebras_multiplies_componentwise() {
        let base = cochain::dual_complex(&ChainComplex::sphere(q(), 1, 3));
        let (t, _) = tensor_algebra(&base).unwrap();
        let p = algebra_product(&t, &t).unwrap();
        assert_eq!(p.carrier.dims(), &[1, 2, 2, 2]);
        assert!(check_algebra(&p).ok());
        // (x, 0) . (0, y) = 0.
        let ex = Matrix::from_fn(q(), 2, 1, |i, _| if i == 0 { q().one() } else { q().zero() });
        let ey = Matrix::from_fn(q(), 2, 1, |i, _| if i == 1 { q().one() } else { q().zero() });
        assert!(p.mult_vec(1, &ex, 1, &ey).is_zero());
        // (x, 0) . (x, 0) = (x^2, 0).
        assert_eq!(p.mult_vec(1, &ex, 1, &ex), ex);
    }

    #[test]
    fn free_product_of_polynomial_algebras_has_word_dims() {
        let base = cochain::dual_complex(&ChainComplex::sphere(q(), 1, 3));
        let (t, _) = tensor_algebra(&base).unwrap();
        let fp = free_product(&t, &t).unwrap();
        // Alternating words in x and y: 2 of each length per degree.
        assert_eq!(fp.algebra.carrier.dims(), &[1, 2, 4, 8]);
        assert!(check_algebra(&fp.algebra).ok());
        assert!(is_algebra_map(&t, &fp.algebra, &fp.incl_left));
        assert!(is_algebra_map(&t, &fp.algebra, &fp.incl_right));
    }

    #[test]
    fn free_product_with_the_scalar_algebra_is_the_identity() {
        let a = dual_algebra(&word_coalgebra(q(), 3));
        let fp = free_product(&a, &DGAlgebra::scalar(q(), 3)).unwrap();
        assert_eq!(fp.algebra.carrier.dims(), a.carrier.dims());
        assert!(check_algebra(&fp.algebra).ok());
        assert!(is_algebra_map(&a, &fp.algebra, &fp.incl_left));
    }

    #[test]
    fn dual_of_a_coalgebra_map_is_an_algebra_map() {
        // The coaugmentation K[0] -> C is a coalgebra map; its transpose
        // is the augmentation of the dual algebra, an algebra map.
        let c = word_coalgebra(q(), 3);
        let a = dual_algebra(&c);
        let incl: Vec<Matrix> = (0..=3)
            .map(|n| {
                if n == 0 {
                    Matrix::identity(q(), 1)
                } else {
                    Matrix::zeros(q(), 1, 0)
                }
            })
            .collect();
        let transposed: Vec<Matrix> = incl.iter().map(Matrix::transpose).collect();
        assert!(is_algebra_map(&a, &DGAlgebra::scalar(q(), 3), &transposed));
        // A non-multiplicative map is rejected: kill degree 1 only.
        let bad: Vec<Matrix> = (0..=3)
            .map(|n| {
                if n == 1 {
                    Matrix::zeros(q(), 1, 1)
                } else {
                    Matrix::identity(q(), 1)
                }
            })
            .collect();
        assert!(!is_algebra_map(&a, &a, &bad));
    }
}
