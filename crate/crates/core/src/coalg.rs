//! Counital coassociative coalgebras in chain complexes and in simplicial
//! vector spaces, and the transfer of the structure across the
//! normalization equivalence.
//!
//! A differential graded coalgebra carries `Delta_n : C_n -> (C (x) C)_n`
//! and `epsilon : C_0 -> K`; a simplicial coalgebra carries a levelwise
//! comultiplication and counit commuting with all simplicial operators.
//! Constructors validate shapes only; [`check_dg_coalgebra`] and
//! [`check_simplicial_coalgebra`] report on each axiom separately, so a
//! broken structure can be inspected instead of merely rejected.
//!
//! The normalized chain complex of a simplicial coalgebra is a dg
//! coalgebra through the Alexander-Whitney map ([`ntilde`]); conversely a
//! dg coalgebra induces a simplicial coalgebra on `Gamma` through the
//! interchange map built from shuffles ([`gammatilde`]).  The two
//! constructions are mutually inverse up to the counit isomorphism, and
//! [`interchange_square_commutes`] exhibits the failure of the analogous
//! square for the opposite composition order, which is what forces the
//! interchange-based definition.

use crate::chain::{self, ChainComplex, ChainMap, TensorLayout};
use crate::doldkan;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::simplicial::{self, SimplicialMap, SimplicialVectorSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGCoalgebra {
    pub carrier: ChainComplex,
    /// `comult[n] : C_n -> (C (x) C)_n` in the tensor layout of the carrier.
    pub comult: Vec<Matrix>,
    /// `counit : C_0 -> K`, a single row.
    pub counit: Matrix,
}

impl DGCoalgebra {
    pub fn new(carrier: ChainComplex, comult: Vec<Matrix>, counit: Matrix) -> Result<DGCoalgebra> {
        let square = chain::tensor(&carrier, &carrier);
        if comult.len() != carrier.top() + 1 {
            return Err(Error::dim("comultiplication parts", format!("{}", carrier.top() + 1), format!("{}", comult.len())));
        }
        for (n, m) in comult.iter().enumerate() {
            m.expect_shape(square.dim(n), carrier.dim(n), &format!("comultiplication degree {n}"))?;
        }
        counit.expect_shape(1, carrier.dim(0), "counit")?;
        Ok(DGCoalgebra { carrier, comult, counit })
    }

    /// The unit coalgebra: `K` in degree 0 with the canonical structure.
    pub fn unit(field: crate::field::Field, top: usize) -> DGCoalgebra {
        let carrier = ChainComplex::point(field, top);
        let mut comult = vec![Matrix::identity(field, 1)];
        for _ in 1..=top {
            comult.push(Matrix::zeros(field, 0, 0));
        }
        DGCoalgebra::new(carrier, comult, Matrix::identity(field, 1)).expect("unit coalgebra")
    }

    /// The comultiplication as a chain map, if it is one.
    pub fn comult_map(&self) -> Result<ChainMap> {
        let square = chain::tensor(&self.carrier, &self.carrier);
        ChainMap::new(self.carrier.clone(), square, self.comult.clone())
    }

    /// The counit as a chain map to the unit complex, if it is one.
    pub fn counit_map(&self) -> Result<ChainMap> {
        let field = self.carrier.field();
        let point = ChainComplex::point(field, self.carrier.top());
        let mut parts = vec![self.counit.clone()];
        for n in 1..=self.carrier.top() {
            parts.push(Matrix::zeros(field, 0, self.carrier.dim(n)));
        }
        ChainMap::new(self.carrier.clone(), point, parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGCoalgebraReport {
    pub comult_is_chain_map: bool,
    pub counit_is_chain_map: bool,
    pub coassociative: bool,
    pub counital: bool,
}

impl DGCoalgebraReport {
    pub fn ok(&self) -> bool {
        self.comult_is_chain_map && self.counit_is_chain_map && self.coassociative && self.counital
    }
}

/// `Delta (x) id : (C (x) C)_n -> ((C (x) C) (x) C)_n`, built blockwise so
/// it is meaningful even when the comultiplication fails to be a chain map.
fn comult_tensor_id(c: &DGCoalgebra) -> Vec<Matrix> {
    let field = c.carrier.field();
    let top = c.carrier.top();
    let cdims = c.carrier.dims().to_vec();
    let square = chain::tensor(&c.carrier, &c.carrier);
    let src = TensorLayout::new(vec![cdims.clone(), cdims.clone()], top);
    let tgt = TensorLayout::new(vec![square.dims().to_vec(), cdims.clone()], top);
    (0..=top)
        .map(|n| {
            let mut m = Matrix::zeros(field, tgt.dim(n), src.dim(n));
            for comp in src.compositions(n) {
                let (s, r) = (comp[0], comp[1]);
                let block = c.comult[s].kron(&Matrix::identity(field, cdims[r]));
                if block.rows() == 0 || block.cols() == 0 {
                    continue;
                }
                let (ro, co) = (tgt.block_offset(n, &comp), src.block_offset(n, &comp));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(ro + i, co + j, block.get(i, j).clone());
                    }
                }
            }
            m
        })
        .collect()
}

/// `id (x) Delta : (C (x) C)_n -> (C (x) (C (x) C))_n`.
fn id_tensor_comult(c: &DGCoalgebra) -> Vec<Matrix> {
    let field = c.carrier.field();
    let top = c.carrier.top();
    let cdims = c.carrier.dims().to_vec();
    let square = chain::tensor(&c.carrier, &c.carrier);
    let src = TensorLayout::new(vec![cdims.clone(), cdims.clone()], top);
    let tgt = TensorLayout::new(vec![cdims.clone(), square.dims().to_vec()], top);
    (0..=top)
        .map(|n| {
            let mut m = Matrix::zeros(field, tgt.dim(n), src.dim(n));
            for comp in src.compositions(n) {
                let (p, t) = (comp[0], comp[1]);
                let block = Matrix::identity(field, cdims[p]).kron(&c.comult[t]);
                if block.rows() == 0 || block.cols() == 0 {
                    continue;
                }
                let (ro, co) = (tgt.block_offset(n, &comp), src.block_offset(n, &comp));
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(ro + i, co + j, block.get(i, j).clone());
                    }
                }
            }
            m
        })
        .collect()
}

pub fn check_dg_coalgebra(c: &DGCoalgebra) -> DGCoalgebraReport {
    let field = c.carrier.field();
    let top = c.carrier.top();
    let comult_is_chain_map = c.comult_map().is_ok();
    let counit_is_chain_map = c.counit_map().is_ok();
    // Coassociativity through the explicit re-association permutation.
    let assoc = chain::associator(&c.carrier, &c.carrier, &c.carrier);
    let left = comult_tensor_id(c);
    let right = id_tensor_comult(c);
    let coassociative = (0..=top).all(|n| {
        assoc.part(n).mul(&left[n]).mul(&c.comult[n]) == right[n].mul(&c.comult[n])
    });
    // Counit laws: extracting the (0, n) block of Delta and applying the
    // counit on the left factor must give the identity; symmetrically on
    // the right.
    let layout = TensorLayout::new(vec![c.carrier.dims().to_vec(), c.carrier.dims().to_vec()], top);
    let counital = (0..=top).all(|n| {
        let d = c.carrier.dim(n);
        if d == 0 {
            return true;
        }
        let lo = layout.block_offset(n, &[0, n]);
        let left_block = c.comult[n].row_slice(lo, lo + c.carrier.dim(0) * d);
        let lhs = c.counit.kron(&Matrix::identity(field, d)).mul(&left_block);
        let ro = layout.block_offset(n, &[n, 0]);
        let right_block = c.comult[n].row_slice(ro, ro + d * c.carrier.dim(0));
        let rhs = Matrix::identity(field, d).kron(&c.counit).mul(&right_block);
        lhs.is_identity() && rhs.is_identity()
    });
    DGCoalgebraReport { comult_is_chain_map, counit_is_chain_map, coassociative, counital }
}

/// The first broken differential graded coalgebra law together with the
/// degree where it fails.  Used when a structure arrives from outside
/// (a loaded document) and the failure must be pinpointed.
pub fn first_dg_coalgebra_failure(c: &DGCoalgebra) -> Option<(&'static str, usize)> {
    let top = c.carrier.top();
    let square = chain::tensor(&c.carrier, &c.carrier);
    for n in 1..=top {
        if square.d(n).mul(&c.comult[n]) != c.comult[n - 1].mul(c.carrier.d(n)) {
            return Some(("comultiplication commutes with the differential", n));
        }
    }
    if top >= 1 && !c.counit.mul(c.carrier.d(1)).is_zero() {
        return Some(("counit kills boundaries", 1));
    }
    let assoc = chain::associator(&c.carrier, &c.carrier, &c.carrier);
    let left = comult_tensor_id(c);
    let right = id_tensor_comult(c);
    for n in 0..=top {
        if assoc.part(n).mul(&left[n]).mul(&c.comult[n]) != right[n].mul(&c.comult[n]) {
            return Some(("coassociativity", n));
        }
    }
    let field = c.carrier.field();
    let layout = TensorLayout::new(vec![c.carrier.dims().to_vec(), c.carrier.dims().to_vec()], top);
    for n in 0..=top {
        let d = c.carrier.dim(n);
        if d == 0 {
            continue;
        }
        let lo = layout.block_offset(n, &[0, n]);
        let left_block = c.comult[n].row_slice(lo, lo + c.carrier.dim(0) * d);
        let ro = layout.block_offset(n, &[n, 0]);
        let right_block = c.comult[n].row_slice(ro, ro + d * c.carrier.dim(0));
        if !c.counit.kron(&Matrix::identity(field, d)).mul(&left_block).is_identity()
            || !Matrix::identity(field, d).kron(&c.counit).mul(&right_block).is_identity()
        {
            return Some(("counit law", n));
        }
    }
    None
}

/// A chain map that respects comultiplication and counit.
#[derive(Debug, Clone)]
pub struct CoalgebraMap {
    source: DGCoalgebra,
    target: DGCoalgebra,
    map: ChainMap,
}

impl CoalgebraMap {
    pub fn new(source: DGCoalgebra, target: DGCoalgebra, map: ChainMap) -> Result<CoalgebraMap> {
        if map.source() != &source.carrier || map.target() != &target.carrier {
            return Err(Error::Inconsistent("coalgebra map carrier mismatch".into()));
        }
        let ff = chain::tensor_map(&map, &map);
        for n in 0..=source.carrier.top() {
            if ff.part(n).mul(&source.comult[n]) != target.comult[n].mul(map.part(n)) {
                return Err(Error::broken("(f (x) f) Delta = Delta f", format!("degree {n}")));
            }
        }
        if target.counit.mul(map.part(0)) != source.counit {
            return Err(Error::broken("counit f = counit", "degree 0"));
        }
        Ok(CoalgebraMap { source, target, map })
    }

    pub fn source(&self) -> &DGCoalgebra {
        &self.source
    }

    pub fn target(&self) -> &DGCoalgebra {
        &self.target
    }

    pub fn map(&self) -> &ChainMap {
        &self.map
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_iso()
    }

    pub fn compose(&self, other: &CoalgebraMap) -> CoalgebraMap {
        assert_eq!(other.target.carrier, self.source.carrier, "composition mismatch");
        CoalgebraMap::new(other.source.clone(), self.target.clone(), self.map.compose(&other.map))
            .expect("composite of coalgebra maps")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCoalgebra {
    pub carrier: SimplicialVectorSpace,
    /// `comult[n] : X_n -> X_n (x) X_n` (flat Kronecker basis).
    pub comult: Vec<Matrix>,
    /// `counit[n] : X_n -> K`, single rows.
    pub counit: Vec<Matrix>,
}

impl SimplicialCoalgebra {
    pub fn new(
        carrier: SimplicialVectorSpace,
        comult: Vec<Matrix>,
        counit: Vec<Matrix>,
    ) -> Result<SimplicialCoalgebra> {
        let top = carrier.top();
        if comult.len() != top + 1 || counit.len() != top + 1 {
            return Err(Error::dim("simplicial coalgebra structure", format!("{} parts", top + 1), format!("{} and {}", comult.len(), counit.len())));
        }
        for n in 0..=top {
            let d = carrier.dim(n);
            comult[n].expect_shape(d * d, d, &format!("comultiplication level {n}"))?;
            counit[n].expect_shape(1, d, &format!("counit level {n}"))?;
        }
        Ok(SimplicialCoalgebra { carrier, comult, counit })
    }

    /// The constant simplicial coalgebra on `K`.
    pub fn unit(field: crate::field::Field, top: usize) -> SimplicialCoalgebra {
        let carrier = SimplicialVectorSpace::constant_unit(field, top);
        let comult = vec![Matrix::identity(field, 1); top + 1];
        let counit = vec![Matrix::identity(field, 1); top + 1];
        SimplicialCoalgebra::new(carrier, comult, counit).expect("unit simplicial coalgebra")
    }

    pub fn comult_map(&self) -> Result<SimplicialMap> {
        let square = simplicial::level_tensor(&self.carrier, &self.carrier);
        SimplicialMap::new(self.carrier.clone(), square, self.comult.clone())
    }

    pub fn counit_map(&self) -> Result<SimplicialMap> {
        let unit = SimplicialVectorSpace::constant_unit(self.carrier.field(), self.carrier.top());
        SimplicialMap::new(self.carrier.clone(), unit, self.counit.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCoalgebraReport {
    pub comult_is_simplicial: bool,
    pub counit_is_simplicial: bool,
    pub coassociative: bool,
    pub counital: bool,
}

impl SimplicialCoalgebraReport {
    pub fn ok(&self) -> bool {
        self.comult_is_simplicial && self.counit_is_simplicial && self.coassociative && self.counital
    }
}

pub fn check_simplicial_coalgebra(c: &SimplicialCoalgebra) -> SimplicialCoalgebraReport {
    let field = c.carrier.field();
    let top = c.carrier.top();
    let comult_is_simplicial = c.comult_map().is_ok();
    let counit_is_simplicial = c.counit_map().is_ok();
    // Levelwise laws in the strictly associative flat Kronecker basis.
    let coassociative = (0..=top).all(|n| {
        let d = c.carrier.dim(n);
        let i = Matrix::identity(field, d);
        c.comult[n].kron(&i).mul(&c.comult[n]) == i.kron(&c.comult[n]).mul(&c.comult[n])
    });
    let counital = (0..=top).all(|n| {
        let d = c.carrier.dim(n);
        let i = Matrix::identity(field, d);
        c.counit[n].kron(&i).mul(&c.comult[n]).is_identity() && i.kron(&c.counit[n]).mul(&c.comult[n]).is_identity()
    });
    SimplicialCoalgebraReport { comult_is_simplicial, counit_is_simplicial, coassociative, counital }
}

/// The first broken levelwise coalgebra law together with the level where
/// it fails; the simplicial counterpart of [`first_dg_coalgebra_failure`].
pub fn first_simplicial_coalgebra_failure(c: &SimplicialCoalgebra) -> Option<(&'static str, usize)> {
    let field = c.carrier.field();
    let top = c.carrier.top();
    for n in 1..=top {
        for i in 0..=n {
            let face = c.carrier.face(n, i);
            if face.kron(face).mul(&c.comult[n]) != c.comult[n - 1].mul(face) {
                return Some(("comultiplication commutes with faces", n));
            }
            if c.counit[n - 1].mul(face) != c.counit[n] {
                return Some(("counit commutes with faces", n));
            }
        }
    }
    for n in 0..top {
        for i in 0..=n {
            let degen = c.carrier.degen(n, i);
            if degen.kron(degen).mul(&c.comult[n]) != c.comult[n + 1].mul(degen) {
                return Some(("comultiplication commutes with degeneracies", n));
            }
            if c.counit[n + 1].mul(degen) != c.counit[n] {
                return Some(("counit commutes with degeneracies", n));
            }
        }
    }
    for n in 0..=top {
        let i = Matrix::identity(field, c.carrier.dim(n));
        if c.comult[n].kron(&i).mul(&c.comult[n]) != i.kron(&c.comult[n]).mul(&c.comult[n]) {
            return Some(("coassociativity", n));
        }
        if !c.counit[n].kron(&i).mul(&c.comult[n]).is_identity()
            || !i.kron(&c.counit[n]).mul(&c.comult[n]).is_identity()
        {
            return Some(("counit law", n));
        }
    }
    None
}

/// A simplicial map that respects the levelwise structure.
pub fn is_simplicial_coalgebra_map(src: &SimplicialCoalgebra, tgt: &SimplicialCoalgebra, f: &SimplicialMap) -> bool {
    if f.source() != &src.carrier || f.target() != &tgt.carrier {
        return false;
    }
    (0..=src.carrier.top()).all(|n| {
        f.part(n).kron(f.part(n)).mul(&src.comult[n]) == tgt.comult[n].mul(f.part(n))
            && tgt.counit[n].mul(f.part(n)) == src.counit[n]
    })
}

/// The dg coalgebra on normalized chains: comultiplication is the
/// Alexander-Whitney map after the levelwise one, computed blockwise so the
/// normalization of the levelwise tensor square is never materialized.
pub fn ntilde(c: &SimplicialCoalgebra) -> DGCoalgebra {
    let field = c.carrier.field();
    let top = c.carrier.top();
    let norm = doldkan::normalize(&c.carrier);
    let comult: Vec<Matrix> = (0..=top)
        .map(|n| {
            let on_carrier = c.comult[n].mul(&norm.incl[n]);
            let blocks: Vec<Matrix> = (0..=n)
                .map(|p| doldkan::aw_block(&c.carrier, &c.carrier, &norm, &norm, p, n - p).mul(&on_carrier))
                .collect();
            let refs: Vec<&Matrix> = blocks.iter().collect();
            Matrix::vstack(field, &refs)
        })
        .collect();
    let counit = c.counit[0].mul(&norm.incl[0]);
    DGCoalgebra::new(norm.complex, comult, counit).expect("normalized coalgebra shapes")
}

/// `N` on a coalgebra map.
pub fn ntilde_map(src: &SimplicialCoalgebra, tgt: &SimplicialCoalgebra, f: &SimplicialMap) -> Result<CoalgebraMap> {
    let nf = doldkan::normalize_map(f);
    CoalgebraMap::new(ntilde(src), ntilde(tgt), nf)
}

/// The simplicial coalgebra on `Gamma`: comultiplication is the
/// interchange map after `Gamma` of the comultiplication.  Requires the
/// input to be an actual dg coalgebra (its comultiplication a chain map).
pub fn gammatilde(c: &DGCoalgebra) -> Result<SimplicialCoalgebra> {
    let top = c.carrier.top();
    let delta = c.comult_map()?;
    let eps = c.counit_map()?;
    let gd = doldkan::gamma_map(&delta);
    let psi = doldkan::interchange(&c.carrier, &c.carrier);
    let comult: Vec<Matrix> = (0..=top).map(|n| psi.part(n).mul(gd.part(n))).collect();
    let ge = doldkan::gamma_map(&eps);
    // Gamma of the unit complex is the constant space; its levels are K.
    let counit: Vec<Matrix> = (0..=top).map(|n| ge.part(n).clone()).collect();
    let carrier = doldkan::gamma(&c.carrier).space;
    SimplicialCoalgebra::new(carrier, comult, counit)
}

/// The counit isomorphism `ntilde(gammatilde(C)) -> C` as a coalgebra map;
/// constructing it proves the two transfers are mutually inverse on `C`.
pub fn equivalence_iso(c: &DGCoalgebra) -> Result<CoalgebraMap> {
    let gt = gammatilde(c)?;
    let nt = ntilde(&gt);
    let eps = doldkan::counit_iso(&c.carrier);
    CoalgebraMap::new(nt, c.clone(), eps)
}

/// Whether the compatibility square between the counit isomorphisms, the
/// Alexander-Whitney map, and the interchange map commutes:
/// `(e_V (x) e_W) . AW . N(psi) = e_(V (x) W)` as maps
/// `N(Gamma(V (x) W)) -> V (x) W`.
pub fn counit_tensor_square_holds(v: &ChainComplex, w: &ChainComplex) -> bool {
    let gv = doldkan::gamma(v);
    let gw = doldkan::gamma(w);
    let psi = doldkan::interchange(v, w);
    let npsi = doldkan::normalize_map(&psi);
    let aw = doldkan::alexander_whitney(&gv.space, &gw.space);
    let ee = chain::tensor_map(&doldkan::counit_iso(v), &doldkan::counit_iso(w));
    let lhs = ee.compose(&aw).compose(&npsi);
    let rhs = doldkan::counit_iso(&chain::tensor(v, w));
    lhs == rhs
}

/// Whether the square comparing the two ways from a levelwise tensor
/// product to `Gamma N (x) Gamma N` commutes: down the assembly
/// isomorphisms levelwise, versus through `Gamma` of the Alexander-Whitney
/// map followed by the interchange.  It does for constant spaces but fails
/// in general, which is why the interchange map cannot be replaced by the
/// Alexander-Whitney direction.
pub fn interchange_square_commutes(x: &SimplicialVectorSpace, y: &SimplicialVectorSpace) -> bool {
    let w = simplicial::level_tensor(x, y);
    let eta_w = doldkan::assembly_iso(&w).inverse().expect("assembly is an isomorphism");
    let aw = doldkan::alexander_whitney(x, y);
    let gaw = doldkan::gamma_map(&aw);
    let nx = doldkan::normalize(x);
    let ny = doldkan::normalize(y);
    let psi = doldkan::interchange(&nx.complex, &ny.complex);
    let lower = psi.compose(&gaw).compose(&eta_w);
    let eta_x = doldkan::assembly_iso(x).inverse().expect("assembly is an isomorphism");
    let eta_y = doldkan::assembly_iso(y).inverse().expect("assembly is an isomorphism");
    let right = simplicial::level_tensor_map(&eta_x, &eta_y);
    lower == right
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rationals
    }

    /// The word coalgebra on a single degree-1 generator with zero
    /// differential: degree `n` is spanned by the length-`n` word, and the
    /// comultiplication splits words at every position.
    fn word_coalgebra(field: Field, top: usize) -> DGCoalgebra {
        let carrier = ChainComplex::new(
            field,
            vec![1; top + 1],
            (1..=top).map(|_| Matrix::zeros(field, 1, 1)).collect(),
        )
        .unwrap();
        let comult = (0..=top)
            .map(|n| {
                // (C (x) C)_n has one summand per split; every coefficient is 1.
                let mut m = Matrix::zeros(field, n + 1, 1);
                for i in 0..=n {
                    m.set(i, 0, field.one());
                }
                m
            })
            .collect();
        DGCoalgebra::new(carrier, comult, Matrix::identity(field, 1)).unwrap()
    }

    #[test]
    fn unit_coalgebras_satisfy_axioms() {
        assert!(check_dg_coalgebra(&DGCoalgebra::unit(q(), 3)).ok());
        assert!(check_simplicial_coalgebra(&SimplicialCoalgebra::unit(q(), 3)).ok());
    }

    #[test]
    fn word_coalgebra_satisfies_axioms() {
        assert!(check_dg_coalgebra(&word_coalgebra(q(), 4)).ok());
    }

    #[test]
    fn broken_counit_is_reported_not_panicked() {
        let mut c = word_coalgebra(q(), 2);
        c.counit = Matrix::zeros(q(), 1, 1);
        let report = check_dg_coalgebra(&c);
        assert!(report.coassociative);
        assert!(!report.counital);
        assert!(!report.ok());
    }

    #[test]
    fn transfers_of_the_unit_agree() {
        let top = 3;
        let nt = ntilde(&SimplicialCoalgebra::unit(q(), top));
        assert_eq!(nt, DGCoalgebra::unit(q(), top));
        let gt = gammatilde(&DGCoalgebra::unit(q(), top)).unwrap();
        assert_eq!(gt, SimplicialCoalgebra::unit(q(), top));
    }

    #[test]
    fn gammatilde_produces_a_simplicial_coalgebra() {
        let gt = gammatilde(&word_coalgebra(q(), 3)).unwrap();
        let report = check_simplicial_coalgebra(&gt);
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn ntilde_produces_a_dg_coalgebra() {
        let gt = gammatilde(&word_coalgebra(q(), 3)).unwrap();
        let report = check_dg_coalgebra(&ntilde(&gt));
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn round_trip_recovers_the_coalgebra() {
        let c = word_coalgebra(q(), 3);
        let iso = equivalence_iso(&c).unwrap();
        assert!(iso.is_iso());
    }

    #[test]
    fn round_trip_over_a_prime_field() {
        let f = Field::prime(5).unwrap();
        let c = word_coalgebra(f, 3);
        let iso = equivalence_iso(&c).unwrap();
        assert!(iso.is_iso());
    }

    #[test]
    fn counit_tensor_square_on_small_complexes() {
        let s1 = ChainComplex::sphere(q(), 1, 3);
        assert!(counit_tensor_square_holds(&s1, &s1));
        let d1 = ChainComplex::disk(q(), 1, 3);
        assert!(counit_tensor_square_holds(&d1, &s1));
    }

    #[test]
    fn interchange_square_commutes_for_constants() {
        let k = SimplicialVectorSpace::constant_unit(q(), 3);
        assert!(interchange_square_commutes(&k, &k));
    }

    #[test]
    fn interchange_square_fails_for_sphere_carriers() {
        let g = doldkan::gamma(&ChainComplex::sphere(q(), 1, 3)).space;
        assert!(!interchange_square_commutes(&g, &g));
    }

    #[test]
    fn interchange_square_fails_over_gf5() {
        let f = Field::prime(5).unwrap();
        let g = doldkan::gamma(&ChainComplex::sphere(f, 1, 3)).space;
        assert!(!interchange_square_commutes(&g, &g));
    }
}
