//! Tensor coalgebras on connected bases, in chain and simplicial flavors,
//! with the associated adjunction machinery.
//!
//! For a connected chain complex `V` (zero in degree 0) the tensor
//! coalgebra has the words in positive-degree letters as its basis, the
//! Koszul differential, and deconcatenation as comultiplication:
//! a word of length `w` splits as the sum over the `w + 1` ways of cutting
//! it in two.  Connectivity bounds word length by degree, so every degree
//! is finite-dimensional inside the truncation.
//!
//! The simplicial flavor applies the same construction levelwise to a
//! connected simplicial vector space.  A level is an ungraded vector
//! space, so its word space is infinite-dimensional; words are truncated
//! at a configurable cap.  Deconcatenation never lengthens words, so the
//! truncated object is a genuine coalgebra, and the homology seen through
//! normalization stabilizes once the cap reaches the truncation degree
//! (checked in tests, not assumed).
//!
//! Mapping into a tensor coalgebra is a linear matter: coalgebra maps
//! `C -> T(V)` correspond to chain maps from the coaugmentation quotient
//! of `C` to `V`.  [`cofree_induced_map`] realizes one direction by
//! iterating the comultiplication and applying the linear map letterwise;
//! [`base_component`] extracts the other.

use crate::algebra::WordLayout;
use crate::chain::{ChainComplex, ChainMap, TensorLayout};
use crate::coalg::{CoalgebraMap, DGCoalgebra, SimplicialCoalgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::simplicial::{SimplicialMap, SimplicialVectorSpace};

/// A tensor coalgebra remembering its base and word layout.
#[derive(Debug, Clone)]
pub struct CofreeCoalgebra {
    pub coalgebra: DGCoalgebra,
    pub base: ChainComplex,
    pub layout: WordLayout,
}

pub fn is_connected_coalgebra(c: &DGCoalgebra) -> bool {
    c.carrier.dim(0) == 1 && !c.counit.is_zero()
}

/// The coaugmentation quotient of a connected coalgebra: degree 0 is
/// killed, positive degrees and their differentials survive.  Returns the
/// quotient complex and the degreewise projections.
pub fn reduced_complex(c: &DGCoalgebra) -> Result<(ChainComplex, Vec<Matrix>)> {
    if !is_connected_coalgebra(c) {
        return Err(Error::NotConnected("coaugmentation quotient needs a connected coalgebra".into()));
    }
    let f = c.carrier.field();
    let top = c.carrier.top();
    let mut dims = vec![0usize];
    dims.extend((1..=top).map(|n| c.carrier.dim(n)));
    let diffs = (1..=top)
        .map(|n| {
            if n == 1 {
                Matrix::zeros(f, 0, c.carrier.dim(1))
            } else {
                c.carrier.d(n).clone()
            }
        })
        .collect();
    let complex = ChainComplex::new(f, dims, diffs)?;
    let proj = (0..=top)
        .map(|n| {
            if n == 0 {
                Matrix::zeros(f, 0, c.carrier.dim(0))
            } else {
                Matrix::identity(f, c.carrier.dim(n))
            }
        })
        .collect();
    Ok((complex, proj))
}

/// Koszul differential on the word space over a chain-complex base.
fn word_chain_differentials(field: Field, base: &ChainComplex, layout: &WordLayout) -> Vec<Matrix> {
    let top = layout.top();
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let mut d = Matrix::zeros(field, dims[n - 1], dims[n]);
        for word in layout.words(n) {
            if layout.block_size(&word) == 0 {
                continue;
            }
            let src_off = layout.block_offset(n, &word);
            let mut sign_exp = 0usize;
            for i in 0..word.len() {
                let mut tgt_word = word.clone();
                tgt_word[i] -= 1;
                // A letter dropping to degree 0 dies: the base is
                // connected.
                if tgt_word[i] >= 1 && layout.block_size(&tgt_word) != 0 {
                    let tgt_off = layout.block_offset(n - 1, &tgt_word);
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

/// Deconcatenation into the pair layout of the word space.
fn deconcatenation(field: Field, layout: &WordLayout) -> Vec<Matrix> {
    let top = layout.top();
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let pair = TensorLayout::new(vec![dims.clone(), dims.clone()], top);
    let mut comult = Vec::new();
    for n in 0..=top {
        let mut m = Matrix::zeros(field, pair.dim(n), dims[n]);
        for word in layout.words(n) {
            let bs = layout.block_size(&word);
            if bs == 0 {
                continue;
            }
            let src_off = layout.block_offset(n, &word);
            for r in 0..=word.len() {
                let left: Vec<usize> = word[..r].to_vec();
                let right: Vec<usize> = word[r..].to_vec();
                let p: usize = left.iter().sum();
                let q = n - p;
                let loff = layout.block_offset(p, &left);
                let roff = layout.block_offset(q, &right);
                let rs = layout.block_size(&right);
                let pair_off = pair.block_offset(n, &[p, q]);
                for i in 0..(bs / rs.max(1)) {
                    for j in 0..rs {
                        // Row-major: the source index splits as
                        // (left part) * |right block| + (right part).
                        let src = src_off + i * rs + j;
                        let row = pair_off + (loff + i) * dims[q] + (roff + j);
                        m.set(row, src, field.one());
                    }
                }
            }
        }
        comult.push(m);
    }
    comult
}

/// The tensor coalgebra on a connected chain complex: words with the
/// Koszul differential and deconcatenation.
pub fn tensor_coalgebra(base: &ChainComplex) -> Result<CofreeCoalgebra> {
    if base.dim(0) != 0 {
        return Err(Error::NotConnected("tensor coalgebra needs a base with zero degree-0 part".into()));
    }
    let field = base.field();
    let top = base.top();
    let layout = WordLayout::new(base.dims().to_vec(), top);
    let dims: Vec<usize> = (0..=top).map(|n| layout.dim(n)).collect();
    let carrier = ChainComplex::new(field, dims, word_chain_differentials(field, base, &layout))?;
    let comult = deconcatenation(field, &layout);
    let mut counit = Matrix::zeros(field, 1, carrier.dim(0));
    counit.set(0, 0, field.one());
    let coalgebra = DGCoalgebra::new(carrier, comult, counit)?;
    Ok(CofreeCoalgebra { coalgebra, base: base.clone(), layout })
}

/// The coalgebra map `C -> T(V)` induced by a chain map from the
/// coaugmentation quotient of `C` to `V`: the length-`w` component is the
/// `w`-fold reduced comultiplication followed by the map letterwise.
///
/// `phi` gives one matrix per degree, `C_n -> V_n`; the degree-0 entry is
/// never read (the base has nothing in degree 0).  The matrices must form
/// a chain map off degree 0 (checked via the reduced complex).
pub fn cofree_induced_map(src: &DGCoalgebra, target: &CofreeCoalgebra, phi: &[Matrix]) -> Result<CoalgebraMap> {
    let f = src.carrier.field();
    let top = src.carrier.top();
    let (cbar, _) = reduced_complex(src)?;
    // Validates degreewise shapes and the chain condition away from
    // degree 0.
    let phi_fixed: Vec<Matrix> = (0..=top)
        .map(|n| if n == 0 { Matrix::zeros(f, target.base.dim(0), 0) } else { phi[n].clone() })
        .collect();
    ChainMap::new(cbar, target.base.clone(), phi_fixed)?;

    let vdims = target.base.dims().to_vec();
    let cpair = TensorLayout::new(vec![src.carrier.dims().to_vec(); 2], top);
    // Per word length w, the layout of V^(x)w and the component matrices
    // h[w][n] : C_n -> (V^(x)w)_n.
    let mut power_layouts: Vec<TensorLayout> = Vec::new();
    let mut h: Vec<Vec<Matrix>> = Vec::new();
    for w in 0..=top {
        power_layouts.push(TensorLayout::new(vec![vdims.clone(); w], top));
        let comp = match w {
            0 => (0..=top)
                .map(|n| {
                    if n == 0 {
                        src.counit.clone()
                    } else {
                        Matrix::zeros(f, 0, src.carrier.dim(n))
                    }
                })
                .collect::<Vec<_>>(),
            1 => (0..=top)
                .map(|n| {
                    if n == 0 {
                        Matrix::zeros(f, target.base.dim(0), src.carrier.dim(0))
                    } else {
                        phi[n].clone()
                    }
                })
                .collect(),
            _ => {
                let prev = &h[w - 1];
                let one = &h[1];
                let small = &power_layouts[w - 1];
                let big = &power_layouts[w];
                (0..=top)
                    .map(|n| {
                        let mut out = Matrix::zeros(f, big.dim(n), src.carrier.dim(n));
                        for pq in cpair.compositions(n) {
                            let (p, q) = (pq[0], pq[1]);
                            if cpair.block_size(&pq) == 0 {
                                continue;
                            }
                            let block = one[p].kron(&prev[q]);
                            if block.rows() == 0 {
                                continue;
                            }
                            let off = cpair.block_offset(n, &pq);
                            let delta_rows = src.comult[n].row_slice(off, off + cpair.block_size(&pq));
                            let applied = block.mul(&delta_rows);
                            // Scatter the binary rows (V_p, (V^(x)(w-1))_q)
                            // into the flat w-letter layout.
                            for (inner_comp, inner_idx) in small.enumerate(q) {
                                let mut full = vec![p];
                                full.extend_from_slice(&inner_comp);
                                let bs: usize = inner_comp.iter().enumerate().map(|(l, &dg)| small_dim(&vdims, l, dg)).product();
                                let inner_pos = small.position(q, &inner_comp, &inner_idx) ;
                                for iv in 0..target.base.dim(p) {
                                    let src_row = iv * small.dim(q) + inner_pos;
                                    let tgt_row = big.block_offset(n, &full) + iv * bs + inner_pos - small.block_offset(q, &inner_comp);
                                    for col in 0..applied.cols() {
                                        let v = f.add(out.get(tgt_row, col), applied.get(src_row, col));
                                        out.set(tgt_row, col, v);
                                    }
                                }
                            }
                        }
                        out
                    })
                    .collect()
            }
        };
        h.push(comp);
    }
    let parts: Vec<Matrix> = (0..=top)
        .map(|n| {
            let blocks: Vec<&Matrix> = (0..=top).map(|w| &h[w][n]).collect();
            Matrix::vstack(f, &blocks)
        })
        .collect();
    let map = ChainMap::new(src.carrier.clone(), target.coalgebra.carrier.clone(), parts)?;
    CoalgebraMap::new(src.clone(), target.coalgebra.clone(), map)
}

fn small_dim(vdims: &[usize], _letter: usize, degree: usize) -> usize {
    vdims.get(degree).copied().unwrap_or(0)
}

/// The adjunct of a coalgebra map into a tensor coalgebra: its length-1
/// word component, one matrix per degree (zero rows in degree 0).
pub fn base_component(g: &CoalgebraMap, target: &CofreeCoalgebra) -> Vec<Matrix> {
    let top = target.base.top();
    let f = target.base.field();
    (0..=top)
        .map(|n| {
            if n == 0 || target.base.dim(n) == 0 {
                Matrix::zeros(f, if n == 0 { 0 } else { target.base.dim(n) }, g.map().part(n).cols())
            } else {
                let off = target.layout.block_offset(n, &[n]);
                g.map().part(n).row_slice(off, off + target.base.dim(n))
            }
        })
        .collect()
}

/// A levelwise tensor coalgebra remembering its base and word cap.
#[derive(Debug, Clone)]
pub struct SimplicialCofree {
    pub coalgebra: SimplicialCoalgebra,
    pub base: SimplicialVectorSpace,
    pub cap: usize,
}

fn level_word_offsets(base_dim: usize, cap: usize) -> Vec<usize> {
    let mut offs = vec![0usize];
    let mut size = 1usize;
    for _ in 0..cap {
        let last = *offs.last().unwrap();
        offs.push(last + size);
        size *= base_dim;
    }
    offs
}

fn level_dim(base_dim: usize, cap: usize) -> usize {
    let offs = level_word_offsets(base_dim, cap);
    let mut size = 1usize;
    for _ in 0..cap {
        size *= base_dim;
    }
    offs.last().unwrap() + size
}

/// Block-diagonal prolongation of a linear map to word spaces of length
/// at most `cap`.
fn level_word_map(field: Field, m: &Matrix, cap: usize) -> Matrix {
    let mut blocks: Vec<Matrix> = Vec::new();
    let mut power = Matrix::identity(field, 1);
    blocks.push(power.clone());
    for _ in 1..=cap {
        power = power.kron(m);
        blocks.push(power.clone());
    }
    Matrix::block_diag(field, &blocks.iter().collect::<Vec<_>>())
}

/// The levelwise tensor coalgebra on a connected simplicial vector space,
/// words truncated at length `cap`.
pub fn simplicial_tensor_coalgebra(base: &SimplicialVectorSpace, cap: usize) -> Result<SimplicialCofree> {
    if base.dim(0) != 0 {
        return Err(Error::NotConnected("levelwise tensor coalgebra needs a connected base".into()));
    }
    let f = base.field();
    let top = base.top();
    let dims: Vec<usize> = (0..=top).map(|n| level_dim(base.dim(n), cap)).collect();
    let faces: Vec<Vec<Matrix>> = (1..=top)
        .map(|n| (0..=n).map(|i| level_word_map(f, base.face(n, i), cap)).collect())
        .collect();
    let degens: Vec<Vec<Matrix>> = (0..top)
        .map(|n| (0..=n).map(|i| level_word_map(f, base.degen(n, i), cap)).collect())
        .collect();
    let carrier = SimplicialVectorSpace::new(f, dims.clone(), faces, degens)?;
    // Levelwise deconcatenation into the flat Kronecker pair basis.
    let mut comult = Vec::new();
    let mut counit = Vec::new();
    for n in 0..=top {
        let b = base.dim(n);
        let offs = level_word_offsets(b, cap);
        let total = dims[n];
        let mut m = Matrix::zeros(f, total * total, total);
        for w in 0..=cap {
            let size: usize = b.pow(w as u32);
            let off = if w < offs.len() { offs[w] } else { *offs.last().unwrap() };
            for r in 0..=w {
                let rsize: usize = b.pow((w - r) as u32);
                let lsize: usize = b.pow(r as u32);
                for i in 0..lsize {
                    for j in 0..rsize {
                        let src = off + i * rsize + j;
                        let row = (offs[r] + i) * total + (offs[w - r] + j);
                        m.set(row, src, f.one());
                    }
                }
            }
            debug_assert_eq!(size, b.pow(w as u32));
        }
        comult.push(m);
        let mut e = Matrix::zeros(f, 1, total);
        e.set(0, 0, f.one());
        counit.push(e);
    }
    let coalgebra = SimplicialCoalgebra::new(carrier, comult, counit)?;
    Ok(SimplicialCofree { coalgebra, base: base.clone(), cap })
}

/// The levelwise projection onto length-1 words, a simplicial map.
pub fn simplicial_base_projection(t: &SimplicialCofree) -> SimplicialMap {
    let f = t.base.field();
    let top = t.base.top();
    let parts: Vec<Matrix> = (0..=top)
        .map(|n| {
            let b = t.base.dim(n);
            let total = t.coalgebra.carrier.dim(n);
            let mut m = Matrix::zeros(f, b, total);
            for i in 0..b {
                m.set(i, 1 + i, f.one());
            }
            m
        })
        .collect();
    SimplicialMap::new(t.coalgebra.carrier.clone(), t.base.clone(), parts)
        .expect("length-1 projection is a simplicial map")
}

/// Split off the constant-unit subobject of a connected simplicial
/// coalgebra: the result is the kernel of the counit with transported
/// structure maps, together with the levelwise projections.
pub fn reduced_simplicial(c: &SimplicialCoalgebra) -> Result<(SimplicialVectorSpace, Vec<Matrix>)> {
    let f = c.carrier.field();
    let top = c.carrier.top();
    if c.carrier.dim(0) != 1 || c.counit[0].is_zero() {
        return Err(Error::NotConnected("splitting needs a connected simplicial coalgebra".into()));
    }
    // The copy of the unit: degeneracies of the level-0 basis vector,
    // scaled so the counit gives 1.
    let u0 = {
        let e = c.counit[0].get(0, 0);
        Matrix::from_fn(f, 1, 1, |_, _| f.inv(e).expect("counit is invertible at level 0"))
    };
    let mut kernels = Vec::new();
    let mut projs = Vec::new();
    for n in 0..=top {
        let unit_here = if n == 0 {
            u0.clone()
        } else {
            let indices: Vec<usize> = vec![0; n];
            c.carrier.apply_degens(0, &indices).mul(&u0)
        };
        let kern = crate::linalg::kernel_basis(&c.counit[n]);
        let frame = Matrix::hstack(f, &[&unit_here, &kern]);
        let inv = crate::linalg::invert(&frame).ok_or_else(|| {
            Error::broken("unit line splits off the counit kernel", format!("level {n}"))
        })?;
        let proj = inv.row_slice(1, 1 + kern.cols());
        kernels.push(kern);
        projs.push(proj);
    }
    let dims: Vec<usize> = kernels.iter().map(|k| k.cols()).collect();
    let faces: Vec<Vec<Matrix>> = (1..=top)
        .map(|n| {
            (0..=n)
                .map(|i| projs[n - 1].mul(&c.carrier.face(n, i).mul(&kernels[n])))
                .collect()
        })
        .collect();
    let degens: Vec<Vec<Matrix>> = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| projs[n + 1].mul(&c.carrier.degen(n, i).mul(&kernels[n])))
                .collect()
        })
        .collect();
    let space = SimplicialVectorSpace::new(f, dims, faces, degens)?;
    Ok((space, projs))
}
