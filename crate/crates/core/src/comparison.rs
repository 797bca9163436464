//! Homology of word coalgebras and the comparison between their chain
//! and simplicial constructions.
//!
//! Over a field, the homology of a coalgebra inherits a graded coalgebra
//! structure: the comultiplication passes to homology and the target is
//! rewritten through the Kunneth isomorphism, so `H(C)` carries an
//! honest (zero-differential) comultiplication.  Because a truncated
//! complex has no boundaries from above its top degree, everything here
//! lives one degree below the truncation.
//!
//! The word coalgebra on a connected complex has two comparisons.
//! Degreewise, its differential preserves word length, so homology
//! splits along lengths and Kunneth identifies the length sectors with
//! words on `H(V)`; this is [`word_homology_decomposition`].
//! Simplicially, the levelwise word construction on the associated
//! simplicial vector space, normalized back to chains, maps canonically
//! onto the chain-level word coalgebra; on homology this is again an
//! isomorphism of graded coalgebras in degrees below the truncation.
//! Both maps are constructed explicitly and their properties verified,
//! never assumed.

use crate::chain::{self, ChainComplex};
use crate::coalg::{self, CoalgebraMap, DGCoalgebra};
use crate::cofree::{self, CofreeCoalgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::matrix::Matrix;

/// The homology of a coalgebra as a graded coalgebra (zero
/// differentials), together with the chosen cycle representatives.
#[derive(Debug, Clone)]
pub struct HomologyCoalgebra {
    pub coalgebra: DGCoalgebra,
    /// Columns are cycle representatives, one matrix per degree.
    pub reps: Vec<Matrix>,
}

/// Compute the graded coalgebra structure on homology, in degrees
/// strictly below the truncation of `c`.
pub fn homology_coalgebra(c: &DGCoalgebra) -> Result<HomologyCoalgebra> {
    let f = c.carrier.field();
    let top = c.carrier.top();
    if top == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, top });
    }
    let through = top - 1;
    let hb = chain::homology_basis(&c.carrier);
    let hdims: Vec<usize> = (0..=through).map(|n| hb.reps[n].cols()).collect();
    let zero_diffs: Vec<Matrix> =
        (1..=through).map(|n| Matrix::zeros(f, hdims[n - 1], hdims[n])).collect();
    let hcar = ChainComplex::new(f, hdims, zero_diffs)?;
    let dmap = c.comult_map()?;
    let hd = chain::induced_on_homology(&dmap);
    let square = chain::tensor(&c.carrier, &c.carrier);
    let sqb = chain::homology_basis(&square);
    let mut comult = Vec::new();
    for n in 0..=through {
        // Kunneth: classes of products of representatives form a basis
        // of the homology of the square.
        let mut cols: Vec<Matrix> = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let kr = hb.reps[p].kron(&hb.reps[q]);
            let mut embedded = Matrix::zeros(f, square.dim(n), kr.cols());
            let mut off = 0usize;
            for pp in 0..p {
                off += c.carrier.dim(pp) * c.carrier.dim(n - pp);
            }
            embedded.add_block(off, 0, &kr);
            cols.push(embedded);
        }
        let pairs = Matrix::hstack(f, &cols.iter().collect::<Vec<_>>());
        let frame = Matrix::hstack(f, &[&sqb.reps[n], &sqb.boundaries[n]]);
        let coords = linalg::solve(&frame, &pairs).ok_or_else(|| {
            Error::broken("product cycles decompose in homology", format!("degree {n}"))
        })?;
        let kappa = coords.row_slice(0, sqb.reps[n].cols());
        let kappa_inv = linalg::invert(&kappa)
            .ok_or_else(|| Error::broken("Kunneth map is invertible", format!("degree {n}")))?;
        comult.push(kappa_inv.mul(&hd[n]));
    }
    let counit = c.counit.mul(&hb.reps[0]);
    let coalgebra = DGCoalgebra::new(hcar, comult, counit)?;
    let reps = hb.reps[..=through].to_vec();
    Ok(HomologyCoalgebra { coalgebra, reps })
}

/// The word coalgebra on the homology of `v`, one degree below its
/// truncation.
pub fn words_on_homology(v: &ChainComplex) -> Result<CofreeCoalgebra> {
    let f = v.field();
    let top = v.top();
    if top == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, top });
    }
    let through = top - 1;
    let hv = chain::homology_basis(v);
    let hdims: Vec<usize> = (0..=through).map(|n| hv.reps[n].cols()).collect();
    let zero_diffs: Vec<Matrix> =
        (1..=through).map(|n| Matrix::zeros(f, hdims[n - 1], hdims[n])).collect();
    cofree::tensor_coalgebra(&ChainComplex::new(f, hdims, zero_diffs)?)
}

/// Ranges of basis positions occupied by words of each length, per
/// degree: `sectors[n][k] = (start, end)`.  Words are laid out by
/// length first, so each range is contiguous.
fn length_sectors(t: &CofreeCoalgebra) -> Vec<Vec<(usize, usize)>> {
    let top = t.coalgebra.carrier.top();
    let mut out = Vec::new();
    for n in 0..=top {
        let mut ranges: Vec<Option<(usize, usize)>> = vec![None; n + 2];
        let mut off = 0usize;
        for word in t.layout.words(n) {
            let bs = t.layout.block_size(&word);
            if bs > 0 {
                let k = word.len();
                match &mut ranges[k] {
                    Some((_, end)) => *end = off + bs,
                    slot => *slot = Some((off, off + bs)),
                }
            }
            off += bs;
        }
        out.push(ranges.into_iter().map(|r| r.unwrap_or((0, 0))).collect());
    }
    out
}

/// The decomposition of the homology of a word coalgebra into words on
/// homology: an isomorphism of graded coalgebras in degrees below the
/// truncation, returned with its verification.
#[derive(Debug, Clone)]
pub struct WordHomologyDecomposition {
    pub source: HomologyCoalgebra,
    pub target: CofreeCoalgebra,
    /// One matrix per degree, `H(T(V))_n -> T(H(V))_n`.
    pub parts: Vec<Matrix>,
    pub is_coalgebra_map: bool,
    pub is_iso: bool,
}

/// Build the comparison `H(T(V)) -> T(H(V))` by splitting cycles along
/// word lengths and rewriting each length sector through Kunneth.
pub fn word_homology_decomposition(v: &ChainComplex) -> Result<WordHomologyDecomposition> {
    let f = v.field();
    let t = cofree::tensor_coalgebra(v)?;
    let source = homology_coalgebra(&t.coalgebra)?;
    let target = words_on_homology(v)?;
    let through = v.top() - 1;
    let hv = chain::homology_basis(v);
    let sectors = length_sectors(&t);
    let tsectors = length_sectors(&target);
    let mut parts = Vec::new();
    for n in 0..=through {
        let hsrc = source.reps[n].cols();
        let mut xi = Matrix::zeros(f, target.coalgebra.carrier.dim(n), hsrc);
        if n == 0 {
            // Only the empty word lives here; its class is the unit.
            xi.add_block(0, 0, &source.reps[0]);
            parts.push(xi);
            continue;
        }
        for k in 1..=n {
            let (s0, s1) = sectors[n][k];
            if s1 == s0 {
                continue;
            }
            // The differential preserves word length, so the sector
            // slice of each representative is itself a cycle of the
            // sector subcomplex.
            let z = source.reps[n].row_slice(s0, s1);
            // Kunneth frame of the sector: per word, products of the
            // base representatives; then the sector boundaries.
            let mut rep_cols: Vec<Matrix> = Vec::new();
            for word in t.layout.words(n) {
                if word.len() != k || t.layout.block_size(&word) == 0 {
                    continue;
                }
                let mut kr = Matrix::identity(f, 1);
                for &d in &word {
                    kr = kr.kron(&hv.reps[d]);
                }
                let mut embedded = Matrix::zeros(f, s1 - s0, kr.cols());
                embedded.add_block(t.layout.block_offset(n, &word) - s0, 0, &kr);
                rep_cols.push(embedded);
            }
            let reps = Matrix::hstack(f, &rep_cols.iter().collect::<Vec<_>>());
            let (a0, a1) = sectors[n + 1].get(k).copied().unwrap_or((0, 0));
            let sector_d = if a1 > a0 {
                t.coalgebra.carrier.d(n + 1).row_slice(s0, s1).col_slice(a0, a1)
            } else {
                Matrix::zeros(f, s1 - s0, 0)
            };
            let boundaries = linalg::image_basis(&sector_d);
            let frame = Matrix::hstack(f, &[&reps, &boundaries]);
            let coords = linalg::solve(&frame, &z).ok_or_else(|| {
                Error::broken(
                    "sector cycles decompose in homology",
                    format!("degree {n} length {k}"),
                )
            })?;
            let classes = coords.row_slice(0, reps.cols());
            let (t0, _) = tsectors[n][k];
            xi.add_block(t0, 0, &classes);
        }
        parts.push(xi);
    }
    let is_coalgebra_map =
        graded_map_commutes(f, &source.coalgebra, &target.coalgebra, &parts, through);
    let is_iso = parts.iter().all(|m| m.rows() == m.cols() && linalg::invert(m).is_some());
    Ok(WordHomologyDecomposition { source, target, parts, is_coalgebra_map, is_iso })
}

/// Check that degreewise matrices commute with the comultiplications
/// and counits of two graded coalgebras through the given degree.
fn graded_map_commutes(
    f: Field,
    src: &DGCoalgebra,
    tgt: &DGCoalgebra,
    parts: &[Matrix],
    through: usize,
) -> bool {
    if tgt.counit.mul(&parts[0]) != src.counit {
        return false;
    }
    for n in 0..=through {
        // Apply the map on both tensor legs, blockwise on the pair
        // layouts.
        let mut src_off = 0usize;
        let mut lhs_blocks: Vec<Matrix> = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let size = src.carrier.dim(p) * src.carrier.dim(q);
            let block = src.comult[n].row_slice(src_off, src_off + size);
            lhs_blocks.push(parts[p].kron(&parts[q]).mul(&block));
            src_off += size;
        }
        let lhs = Matrix::vstack(f, &lhs_blocks.iter().collect::<Vec<_>>());
        if lhs != tgt.comult[n].mul(&parts[n]) {
            return false;
        }
    }
    true
}

/// The normalized simplicial word construction compared with the chain
/// one: the canonical coalgebra map and what holds of it on homology.
#[derive(Debug, Clone)]
pub struct SimplicialComparison {
    /// The normalized simplicial word coalgebra.
    pub normalized: DGCoalgebra,
    /// The canonical map to the chain word coalgebra.
    pub map: CoalgebraMap,
    /// Its induced matrices on homology, degrees below the truncation.
    pub on_homology: Vec<Matrix>,
    pub is_coalgebra_map_on_homology: bool,
    pub is_iso_on_homology: bool,
}

/// Build the simplicial side at word cap `cap` and compare it with the
/// chain-level word coalgebra on `v`.
pub fn simplicial_comparison(v: &ChainComplex, cap: usize) -> Result<SimplicialComparison> {
    let top = v.top();
    if top == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, top });
    }
    let g = crate::doldkan::gamma(v);
    let ts = cofree::simplicial_tensor_coalgebra(&g.space, cap)?;
    let nt = coalg::ntilde(&ts.coalgebra);
    let proj1 = cofree::simplicial_base_projection(&ts);
    let nproj = crate::doldkan::normalize_map(&proj1);
    let eps = crate::doldkan::counit_iso(v);
    let zeta = eps.compose(&nproj);
    let tword = cofree::tensor_coalgebra(v)?;
    let map = cofree::cofree_induced_map(&nt, &tword, zeta.parts())?;
    let on_homology = chain::induced_on_homology(map.map());
    let through = top - 1;
    let hsrc = homology_coalgebra(&nt)?;
    let htgt = homology_coalgebra(&tword.coalgebra)?;
    let is_coalgebra_map_on_homology =
        graded_map_commutes(v.field(), &hsrc.coalgebra, &htgt.coalgebra, &on_homology, through);
    let is_iso_on_homology = on_homology[..=through]
        .iter()
        .all(|m| m.rows() == m.cols() && linalg::invert(m).is_some());
    Ok(SimplicialComparison {
        normalized: nt,
        map,
        on_homology,
        is_coalgebra_map_on_homology,
        is_iso_on_homology,
    })
}

/// The full comparison report for a connected complex: both legs with
/// their homology dimensions.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub simplicial_homology: Vec<usize>,
    pub word_homology: Vec<usize>,
    pub homology_words: Vec<usize>,
    pub simplicial_is_coalgebra_iso: bool,
    pub chain_is_coalgebra_iso: bool,
}

impl ComparisonReport {
    pub fn ok(&self) -> bool {
        self.simplicial_is_coalgebra_iso && self.chain_is_coalgebra_iso
    }
}

/// Run both comparisons on `v` with word cap `cap` and collect the
/// verdict.
pub fn cofree_comparison(v: &ChainComplex, cap: usize) -> Result<ComparisonReport> {
    let simp = simplicial_comparison(v, cap)?;
    let dec = word_homology_decomposition(v)?;
    let through = v.top() - 1;
    let nb = chain::homology_basis(&simp.normalized.carrier);
    let simplicial_homology: Vec<usize> = (0..=through).map(|n| nb.reps[n].cols()).collect();
    let word_homology: Vec<usize> = (0..=through).map(|n| dec.source.reps[n].cols()).collect();
    let homology_words: Vec<usize> =
        (0..=through).map(|n| dec.target.coalgebra.carrier.dim(n)).collect();
    Ok(ComparisonReport {
        simplicial_homology,
        word_homology,
        homology_words,
        simplicial_is_coalgebra_iso: simp.is_coalgebra_map_on_homology && simp.is_iso_on_homology,
        chain_is_coalgebra_iso: dec.is_coalgebra_map && dec.is_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn homology_of_circle_words_keeps_the_word_structure() {
        let t = cofree::tensor_coalgebra(&ChainComplex::sphere(q(), 1, 3)).unwrap();
        let h = homology_coalgebra(&t.coalgebra).unwrap();
        // Zero differential: homology is the coalgebra itself, one
        // degree shorter.
        assert_eq!(h.coalgebra.carrier.dims(), &[1, 1, 1]);
        assert!(coalg::check_dg_coalgebra(&h.coalgebra).ok());
    }

    #[test]
    fn homology_of_disk_words_is_the_unit() {
        let t = cofree::tensor_coalgebra(&ChainComplex::disk(q(), 2, 4)).unwrap();
        let h = homology_coalgebra(&t.coalgebra).unwrap();
        assert_eq!(h.coalgebra.carrier.dims(), &[1, 0, 0, 0]);
    }

    #[test]
    fn word_homology_splits_along_lengths_for_the_circle() {
        let dec = word_homology_decomposition(&ChainComplex::sphere(q(), 1, 4)).unwrap();
        assert!(dec.is_coalgebra_map);
        assert!(dec.is_iso);
        assert_eq!(dec.target.coalgebra.carrier.dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn word_homology_splits_along_lengths_for_a_mixed_complex() {
        // One surviving degree-1 class next to a contractible pair.
        let v = ChainComplex::sphere(q(), 1, 4).direct_sum(&ChainComplex::disk(q(), 2, 4));
        let dec = word_homology_decomposition(&v).unwrap();
        assert!(dec.is_coalgebra_map);
        assert!(dec.is_iso);
        // H(V) is one class in degree 1, so words contribute one
        // dimension per degree.
        assert_eq!(dec.target.coalgebra.carrier.dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn simplicial_words_match_chain_words_on_homology() {
        let rep = cofree_comparison(&ChainComplex::sphere(q(), 1, 3), 3).unwrap();
        assert!(rep.ok(), "comparison failed: {rep:?}");
        assert_eq!(rep.simplicial_homology, vec![1, 1, 1]);
        assert_eq!(rep.word_homology, vec![1, 1, 1]);
        assert_eq!(rep.homology_words, vec![1, 1, 1]);
    }

    #[test]
    fn acyclic_input_collapses_to_the_unit() {
        let rep = cofree_comparison(&ChainComplex::disk(q(), 2, 3), 3).unwrap();
        assert!(rep.ok(), "comparison failed: {rep:?}");
        assert_eq!(rep.word_homology, vec![1, 0, 0]);
        assert_eq!(rep.homology_words, vec![1, 0, 0]);
    }

    #[test]
    fn raising_the_word_cap_does_not_change_homology() {
        let v = ChainComplex::sphere(q(), 1, 3);
        let a = cofree_comparison(&v, 3).unwrap();
        let b = cofree_comparison(&v, 4).unwrap();
        assert_eq!(a.simplicial_homology, b.simplicial_homology);
        assert!(b.ok());
    }
}
