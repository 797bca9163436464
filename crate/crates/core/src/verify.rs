//! Named verification suites: randomized, seeded property checks that
//! exercise every construction end to end.  Each suite returns a
//! structured report listing its checks with pass/fail verdicts; the
//! command-line front end and the acceptance tests both run these.

use crate::chain::{self, ChainComplex, ChainMap};
use crate::coalg;
use crate::cofree;
use crate::cofreeprod;
use crate::colimit;
use crate::comparison;
use crate::doldkan;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lifting::{self, Family, LiftingSquare};
use crate::linalg;
use crate::sample::Sampler;
use crate::simplicial;

/// One named assertion with its verdict.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub field: Field,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn new(suite: &str, params: &SuiteParams) -> SuiteReport {
        SuiteReport { suite: suite.into(), field: params.field, seed: params.seed, checks: Vec::new() }
    }
}

/// Shared knobs for every suite; unset counts fall back to the suite's
/// own default.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub field: Field,
    pub seed: u64,
    pub trials: Option<usize>,
    pub truncation: Option<usize>,
    pub cap: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> SuiteParams {
        SuiteParams { field: Field::Rationals, seed: 0, trials: None, truncation: None, cap: None }
    }
}

pub const SUITES: &[&str] = &[
    "dold-kan-roundtrip",
    "monoidal",
    "induced-coalgebras",
    "interchange-square",
    "lifting-characterizations",
    "acyclic-cofree-product",
    "factorization",
    "word-comparison",
    "kunneth",
];

/// Run the named suite.  Unknown names are an error so callers can
/// distinguish usage mistakes from failing checks.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "dold-kan-roundtrip" => Ok(dold_kan_roundtrip(params)),
        "monoidal" => Ok(monoidal(params)),
        "induced-coalgebras" => induced_coalgebras(params),
        "interchange-square" => Ok(interchange_square(params)),
        "lifting-characterizations" => lifting_characterizations(params),
        "acyclic-cofree-product" => acyclic_cofree_product(params),
        "factorization" => factorization_suite(params),
        "word-comparison" => word_comparison(params),
        "kunneth" => Ok(kunneth(params)),
        other => Err(Error::Inconsistent(format!("unknown suite '{other}'"))),
    }
}

fn chain_map_is_iso(f: &ChainMap) -> bool {
    (0..=f.source().top()).all(|n| {
        let p = f.part(n);
        p.rows() == p.cols() && linalg::invert(p).is_some()
    })
}

fn chain_map_is_injective(f: &ChainMap) -> bool {
    (0..=f.source().top()).all(|n| linalg::kernel_basis(f.part(n)).cols() == 0)
}

/// Mixed-scale truncation and size so trials cover the whole desk range
/// without the largest cases dominating the runtime.
fn mixed_scale(s: &mut Sampler, i: usize, d: usize) -> (usize, usize) {
    if i % 10 == 9 {
        (d.max(2), 1)
    } else {
        (2 + s.below(2), 2)
    }
}

/// Round-trip suite: both composites of the normalization equivalence
/// are isomorphisms, naturally in the object.
pub fn dold_kan_roundtrip(params: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("dold-kan-roundtrip", params);
    let trials = params.trials.unwrap_or(50);
    let d = params.truncation.unwrap_or(6);
    let mut s = Sampler::new(params.field, params.seed);
    let mut eps_iso = true;
    for i in 0..trials {
        let (top, max) = mixed_scale(&mut s, i, d);
        let v = s.complex(top, max);
        if !chain_map_is_iso(&doldkan::counit_iso(&v)) {
            eps_iso = false;
            rep.push("counit is an isomorphism", false, format!("trial {i}: dims {:?}", v.dims()));
            break;
        }
    }
    if eps_iso {
        rep.push("counit is an isomorphism", true, format!("{trials} random complexes"));
    }
    let mut eta_iso = true;
    for i in 0..trials {
        let (top, max) = mixed_scale(&mut s, i, d);
        let x = s.simplicial_object(top, max);
        let back = doldkan::assembly_iso(&x.space);
        if !back.is_iso() {
            eta_iso = false;
            rep.push("unit is an isomorphism", false, format!("trial {i}"));
            break;
        }
    }
    if eta_iso {
        rep.push("unit is an isomorphism", true, format!("{trials} random simplicial objects"));
    }
    let nat_trials = (trials / 5).max(5);
    let mut eps_natural = true;
    for i in 0..nat_trials {
        let top = 2 + s.below(2);
        let v = s.complex(top, 2);
        let w = s.complex(top, 2);
        let f = s.chain_map(&v, &w);
        let lhs = doldkan::counit_iso(&w).compose(&doldkan::normalize_map(&doldkan::gamma_map(&f)));
        let rhs = f.compose(&doldkan::counit_iso(&v));
        if lhs != rhs {
            eps_natural = false;
            rep.push("counit is natural", false, format!("trial {i}"));
            break;
        }
    }
    if eps_natural {
        rep.push("counit is natural", true, format!("{nat_trials} random chain maps"));
    }
    let mut eta_natural = true;
    for i in 0..nat_trials {
        let top = 2 + s.below(2);
        let x = s.simplicial_object(top, 2);
        let y = s.simplicial_object(top, 2);
        let g = s.simplicial_map(&x, &y);
        let eta_x = doldkan::assembly_iso(&x.space).inverse().expect("assembly inverts");
        let eta_y = doldkan::assembly_iso(&y.space).inverse().expect("assembly inverts");
        let lhs = doldkan::gamma_map(&doldkan::normalize_map(&g)).compose(&eta_x);
        let rhs = eta_y.compose(&g);
        if lhs != rhs {
            eta_natural = false;
            rep.push("unit is natural", false, format!("trial {i}"));
            break;
        }
    }
    if eta_natural {
        rep.push("unit is natural", true, format!("{nat_trials} random simplicial maps"));
    }
    rep
}

/// Monoidal suite: the two comparison maps between normalized tensor
/// products are chain maps, one composite is the identity on the nose,
/// the other on homology.
pub fn monoidal(params: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("monoidal", params);
    let trials = params.trials.unwrap_or(50);
    let mut s = Sampler::new(params.field, params.seed);
    let mut split = true;
    let mut homology_id = true;
    for i in 0..trials {
        let top = 2 + s.below(2);
        let a = s.simplicial_object(top, 2);
        let b = s.simplicial_object(top, 1);
        let aw = doldkan::alexander_whitney(&a.space, &b.space);
        let nabla = doldkan::shuffle(&a.space, &b.space);
        if aw.compose(&nabla) != ChainMap::identity(nabla.source()) {
            split = false;
            rep.push("interleaving splits the comparison", false, format!("trial {i}"));
            break;
        }
        let round = nabla.compose(&aw);
        let identity_on_homology = chain::induced_on_homology(&round)
            .iter()
            .all(|m| m.rows() == m.cols() && *m == crate::matrix::Matrix::identity(params.field, m.rows()));
        if !identity_on_homology {
            homology_id = false;
            rep.push("round trip is the identity on homology", false, format!("trial {i}"));
            break;
        }
    }
    if split {
        rep.push("interleaving splits the comparison", true, format!("{trials} random pairs"));
    }
    if homology_id {
        rep.push("round trip is the identity on homology", true, format!("{trials} random pairs"));
    }
    rep
}

/// Induced-coalgebra suite: every produced structure passes the full
/// coassociativity/counit axioms, and the round trip is a coalgebra
/// isomorphism.
pub fn induced_coalgebras(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("induced-coalgebras", params);
    let trials = params.trials.unwrap_or(50);
    let mut s = Sampler::new(params.field, params.seed);
    let mut axioms = true;
    let mut round = true;
    for i in 0..trials {
        match i % 4 {
            0 => {
                // Chain-level word coalgebra, sent over and back.
                let c = cofree::tensor_coalgebra(&s.tiny_connected_complex(3, 2))?.coalgebra;
                let gt = coalg::gammatilde(&c)?;
                if !coalg::check_simplicial_coalgebra(&gt).ok() {
                    axioms = false;
                    rep.push("levelwise coalgebra axioms", false, format!("trial {i}: induced simplicial"));
                    break;
                }
                if !coalg::check_dg_coalgebra(&coalg::ntilde(&gt)).ok() {
                    axioms = false;
                    rep.push("chain coalgebra axioms", false, format!("trial {i}: normalized"));
                    break;
                }
                if !coalg::equivalence_iso(&c)?.is_iso() {
                    round = false;
                    rep.push("round trip is a coalgebra isomorphism", false, format!("trial {i}"));
                    break;
                }
            }
            1 => {
                // Simplicial word coalgebra on a disguised connected object.
                let base = s.tiny_connected_complex(2, 2);
                let x = s.disguise(base);
                let ts = cofree::simplicial_tensor_coalgebra(&x.space, params.cap.unwrap_or(2))?;
                if !coalg::check_simplicial_coalgebra(&ts.coalgebra).ok() {
                    axioms = false;
                    rep.push("levelwise coalgebra axioms", false, format!("trial {i}: simplicial words"));
                    break;
                }
                if !coalg::check_dg_coalgebra(&coalg::ntilde(&ts.coalgebra)).ok() {
                    axioms = false;
                    rep.push("chain coalgebra axioms", false, format!("trial {i}: normalized words"));
                    break;
                }
            }
            2 => {
                // Structured connected coalgebras through the round trip.
                let c = s.connected_coalgebra(3, 1)?;
                let gt = coalg::gammatilde(&c)?;
                if !coalg::check_simplicial_coalgebra(&gt).ok() {
                    axioms = false;
                    rep.push("levelwise coalgebra axioms", false, format!("trial {i}: induced simplicial"));
                    break;
                }
                if !coalg::equivalence_iso(&c)?.is_iso() {
                    round = false;
                    rep.push("round trip is a coalgebra isomorphism", false, format!("trial {i}"));
                    break;
                }
            }
            _ => {
                // Unit cases.
                let k = coalg::DGCoalgebra::unit(params.field, 3);
                if !coalg::check_simplicial_coalgebra(&coalg::gammatilde(&k)?).ok()
                    || !coalg::check_simplicial_coalgebra(&coalg::SimplicialCoalgebra::unit(params.field, 3)).ok()
                {
                    axioms = false;
                    rep.push("levelwise coalgebra axioms", false, format!("trial {i}: units"));
                    break;
                }
                if !coalg::equivalence_iso(&k)?.is_iso() {
                    round = false;
                    rep.push("round trip is a coalgebra isomorphism", false, format!("trial {i}: unit"));
                    break;
                }
            }
        }
    }
    if axioms {
        rep.push("coalgebra axioms on every instance", true, format!("{trials} instances"));
    }
    if round {
        rep.push("round trip is a coalgebra isomorphism", true, "all tested instances".to_string());
    }
    Ok(rep)
}

/// What the one-generator circle carrier shows about replacing the
/// interchange with the Alexander-Whitney direction.
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub field: Field,
    /// Level-1 dimension of the middle object the lower composite
    /// factors through; zero is the point of the example.
    pub middle_level1_dim: usize,
    pub lower_level1_is_zero: bool,
    pub right_level1_dim: usize,
    pub right_level1_is_iso: bool,
    pub commutes: bool,
}

impl CounterexampleReport {
    pub fn reproduces(&self) -> bool {
        self.middle_level1_dim == 0
            && self.lower_level1_is_zero
            && self.right_level1_dim == 1
            && self.right_level1_is_iso
            && !self.commutes
    }
}

/// Build both composites around the square for the circle carrier and
/// report exactly what holds at level 1.  The truncation must leave room
/// for the degree-2 tensor class, so anything below 2 is raised to 2.
pub fn interchange_counterexample(field: Field, truncation: usize) -> CounterexampleReport {
    let g = doldkan::gamma(&ChainComplex::sphere(field, 1, truncation.max(2))).space;
    let w = simplicial::level_tensor(&g, &g);
    let eta_w = doldkan::assembly_iso(&w).inverse().expect("assembly inverts");
    let aw = doldkan::alexander_whitney(&g, &g);
    let gaw = doldkan::gamma_map(&aw);
    let n = doldkan::normalize(&g);
    let psi = doldkan::interchange(&n.complex, &n.complex);
    let lower = psi.compose(&gaw).compose(&eta_w);
    let eta = doldkan::assembly_iso(&g).inverse().expect("assembly inverts");
    let right = simplicial::level_tensor_map(&eta, &eta);
    let r1 = right.part(1);
    CounterexampleReport {
        field,
        middle_level1_dim: gaw.target().dim(1),
        lower_level1_is_zero: lower.part(1).is_zero(),
        right_level1_dim: r1.rows(),
        right_level1_is_iso: r1.rows() == r1.cols() && linalg::invert(r1).is_some(),
        commutes: lower == right,
    }
}

/// Interchange suite: the counit square commutes on random pairs, and
/// the square that motivates the interchange map fails in the documented
/// way over both coefficient choices.
pub fn interchange_square(params: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("interchange-square", params);
    let trials = params.trials.unwrap_or(20);
    let mut s = Sampler::new(params.field, params.seed);
    let mut square = true;
    for i in 0..trials {
        let top = 2 + s.below(2);
        let v = s.complex(top, 2);
        let w = s.complex(top, 2);
        if !coalg::counit_tensor_square_holds(&v, &w) {
            square = false;
            rep.push("counit square commutes", false, format!("trial {i}: dims {:?} and {:?}", v.dims(), w.dims()));
            break;
        }
    }
    if square {
        rep.push("counit square commutes", true, format!("{trials} random pairs"));
    }
    for f in [Field::Rationals, Field::prime(5).expect("5 is prime")] {
        let ce = interchange_counterexample(f, params.truncation.unwrap_or(3));
        rep.push(
            format!("interchange counterexample over {f:?}"),
            ce.reproduces(),
            format!(
                "middle level-1 dim {}, lower zero {}, right 1-dim iso {}, commutes {}",
                ce.middle_level1_dim,
                ce.lower_level1_is_zero,
                ce.right_level1_dim == 1 && ce.right_level1_is_iso,
                ce.commutes
            ),
        );
    }
    rep
}

/// A random chain map whose source and target vanish in the top degree,
/// so disk and sphere generators fit under the truncation.
fn bounded_map(s: &mut Sampler, top: usize, max: usize) -> ChainMap {
    let mut sd = s.dims(top, max);
    let mut td = s.dims(top, max);
    sd[top] = 0;
    td[top] = 0;
    let src = s.complex_with_dims(&sd);
    let tgt = s.complex_with_dims(&td);
    s.chain_map(&src, &tgt)
}

/// Lifting suite: the two lifting-property characterizations, plus
/// brute-force agreement over GF(2).
pub fn lifting_characterizations(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lifting-characterizations", params);
    let trials = params.trials.unwrap_or(100);
    let d = params.truncation.unwrap_or(5).min(5);
    let mut s = Sampler::new(params.field, params.seed);
    let mut q_side = true;
    let mut p_side = true;
    for i in 0..trials {
        let top = d.max(2);
        let f = match i % 8 {
            // Guaranteed-injective shapes so both directions of the
            // equivalences get exercised.
            0 => {
                let mut dd = s.dims(top, 2);
                dd[top] = 0;
                ChainMap::identity(&s.complex_with_dims(&dd))
            }
            1 => {
                let mut dd = s.dims(top, 2);
                dd[top] = 0;
                let v = s.complex_with_dims(&dd);
                let mut wd = s.dims(top, 1);
                wd[top] = 0;
                if top >= 2 {
                    wd[top - 1] = 0;
                }
                let w = chain::cone(&s.complex_with_dims(&wd));
                let sum = v.direct_sum(&w);
                let parts = (0..=top)
                    .map(|n| {
                        let mut m = crate::matrix::Matrix::zeros(params.field, sum.dim(n), v.dim(n));
                        m.add_block(0, 0, &crate::matrix::Matrix::identity(params.field, v.dim(n)));
                        m
                    })
                    .collect();
                ChainMap::new(v.clone(), sum, parts).expect("summand inclusion is a chain map")
            }
            _ => bounded_map(&mut s, top, 2),
        };
        // Disks detect injectivity one degree below their dimension, so
        // the family must run up to the truncation degree itself to see
        // the whole support range of `f`.
        let bound = top;
        let inj = chain_map_is_injective(&f);
        let llp_q = lifting::has_llp(&f, &Family::DiskCollapses, bound)?;
        if llp_q != inj {
            q_side = false;
            rep.push(
                "collapse lifting matches injectivity",
                false,
                format!("trial {i}: solver {llp_q}, injective {inj}"),
            );
            break;
        }
        let llp_p = lifting::has_llp(&f, &Family::DisksAndSpheres, bound)?;
        let quasi = inj && chain::is_quasi_iso(&f);
        if llp_p != quasi {
            p_side = false;
            rep.push(
                "full lifting matches injective quasi-isomorphisms",
                false,
                format!("trial {i}: solver {llp_p}, injective quasi-iso {quasi}"),
            );
            break;
        }
    }
    if q_side {
        rep.push("collapse lifting matches injectivity", true, format!("{trials} random maps"));
    }
    if p_side {
        rep.push("full lifting matches injective quasi-isomorphisms", true, format!("{trials} random maps"));
    }
    // Brute-force agreement on small squares over GF(2).
    let f2 = Field::prime(2).expect("2 is prime");
    let mut s2 = Sampler::new(f2, params.seed.wrapping_add(1));
    let mut agree = true;
    let brute_trials = 20;
    for i in 0..brute_trials {
        let top = 2;
        let left = bounded_map(&mut s2, top, 1);
        let n = 1 + s2.below(2);
        let right = if i % 2 == 0 {
            lifting::disk_to_zero(f2, n, top)
        } else {
            lifting::disk_to_sphere(f2, n, top)
        };
        let squares = lifting::commuting_squares(&left, &right);
        if squares.is_empty() {
            continue;
        }
        let (h, k) = squares[s2.below(squares.len())].clone();
        let sq = LiftingSquare::new(left.clone(), right.clone(), h, k)?;
        let solver = lifting::find_lift(&sq).is_some();
        let brute = lifting::brute_force_lift_gf2(&sq)?.is_some();
        if solver != brute {
            agree = false;
            rep.push(
                "solver agrees with brute force over GF(2)",
                false,
                format!("trial {i}: solver {solver}, brute force {brute}"),
            );
            break;
        }
    }
    if agree {
        rep.push("solver agrees with brute force over GF(2)", true, format!("{brute_trials} small squares"));
    }
    Ok(rep)
}

/// Product-with-acyclic suite: multiplying in a word coalgebra on a
/// cone changes no homology, and the projection has the right lifting
/// property against sampled acyclic cofibrations.
pub fn acyclic_cofree_product(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("acyclic-cofree-product", params);
    let trials = params.trials.unwrap_or(20);
    let mut s = Sampler::new(params.field, params.seed);
    let mut homology = true;
    let mut lifts = true;
    for i in 0..trials {
        let top = 3;
        let v = s.acyclic_connected(top, 1);
        if i % 3 == 2 {
            // Wider variety of first factors for the homology half; the
            // lifting half needs maps into the first factor, so it runs
            // on the word-coalgebra trials below.
            let c = s.connected_coalgebra(top, 2)?;
            let prod = cofreeprod::product_with_cofree(&c, &v)?;
            if !chain::is_quasi_iso(prod.to_first.map()) {
                homology = false;
                rep.push(
                    "projection from the product is a homology isomorphism",
                    false,
                    format!("trial {i}: dims {:?}", prod.object.carrier.dims()),
                );
                break;
            }
            continue;
        }
        let cw = cofree::tensor_coalgebra(&s.tiny_connected_complex(top, 2))?;
        let prod = cofreeprod::product_with_cofree(&cw.coalgebra, &v)?;
        if !chain::is_quasi_iso(prod.to_first.map()) {
            homology = false;
            rep.push(
                "projection from the product is a homology isomorphism",
                false,
                format!("trial {i}: dims {:?}", prod.object.carrier.dims()),
            );
            break;
        }
        // An acyclic cofibration: the inclusion of a small coalgebra
        // into its identity factorization, or into a coproduct with an
        // acyclic word coalgebra.
        let a = cofree::tensor_coalgebra(&s.tiny_connected_complex(top, 1))?.coalgebra;
        let (j, b) = if i % 2 == 0 {
            let fac = cofreeprod::retract_presentation(&a)?;
            let b = fac.incl.target().clone();
            (fac.incl, b)
        } else {
            let acyclic = cofree::tensor_coalgebra(&s.acyclic_connected(top, 1))?.coalgebra;
            let cop = colimit::coproduct(&a, &acyclic)?;
            let b = cop.object.clone();
            (cop.from_left, b)
        };
        if !(1..=top).all(|n| linalg::kernel_basis(j.map().part(n)).cols() == 0)
            || !chain::is_quasi_iso(j.map())
        {
            lifts = false;
            rep.push("sampled maps are acyclic cofibrations", false, format!("trial {i}"));
            break;
        }
        // A commuting square over the projection, then the lift.
        let (reduced_b, _) = cofree::reduced_complex(&b)?;
        let phi = s.chain_map(&reduced_b, &cw.base);
        let k = cofree::cofree_induced_map(&b, &cw, phi.parts())?;
        let (reduced_a, _) = cofree::reduced_complex(&a)?;
        let psi = s.chain_map(&reduced_a, &v);
        let g = cofree::cofree_induced_map(&a, &cofree::tensor_coalgebra(&v)?, psi.parts())?;
        let h = prod.pairing(&k.compose(&j), &g)?;
        match cofreeprod::lift_against_projection(&prod, &j, &h, &k)? {
            Some(lift) => {
                if prod.to_first.compose(&lift).map() != k.map() || lift.compose(&j).map() != h.map() {
                    lifts = false;
                    rep.push("lift satisfies both triangle equations", false, format!("trial {i}"));
                    break;
                }
            }
            None => {
                lifts = false;
                rep.push(
                    "projection lifts against sampled acyclic cofibrations",
                    false,
                    format!("trial {i}: no lift found"),
                );
                break;
            }
        }
    }
    if homology {
        rep.push("projection from the product is a homology isomorphism", true, format!("{trials} random pairs"));
    }
    if lifts {
        rep.push("projection lifts against sampled acyclic cofibrations", true, "all sampled squares".to_string());
    }
    Ok(rep)
}

/// Factorization suite: every random connected coalgebra map factors as
/// an injection followed by a homology isomorphism.
pub fn factorization_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("factorization", params);
    let trials = params.trials.unwrap_or(20);
    let mut s = Sampler::new(params.field, params.seed);
    let mut composite = true;
    let mut injective = true;
    let mut quasi = true;
    for i in 0..trials {
        let c = s.connected_coalgebra(3, 2)?;
        let f = s.coalgebra_map_from(&c, 3, 2)?;
        let fac = cofreeprod::factorization(&f)?;
        if fac.proj.compose(&fac.incl).map() != f.map() {
            composite = false;
            rep.push("factorization composes to the map", false, format!("trial {i}"));
            break;
        }
        if !(1..=c.carrier.top()).all(|n| linalg::kernel_basis(fac.incl.map().part(n)).cols() == 0) {
            injective = false;
            rep.push("first factor is injective in positive degrees", false, format!("trial {i}"));
            break;
        }
        if !chain::is_quasi_iso(fac.proj.map()) {
            quasi = false;
            rep.push("second factor is a homology isomorphism", false, format!("trial {i}"));
            break;
        }
    }
    if composite {
        rep.push("factorization composes to the map", true, format!("{trials} random maps"));
    }
    if injective {
        rep.push("first factor is injective in positive degrees", true, format!("{trials} random maps"));
    }
    if quasi {
        rep.push("second factor is a homology isomorphism", true, format!("{trials} random maps"));
    }
    Ok(rep)
}

/// Word-comparison suite: the two comparison maps around the homology
/// of word coalgebras are graded coalgebra isomorphisms, with the three
/// closed-form specializations.
pub fn word_comparison(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("word-comparison", params);
    let trials = params.trials.unwrap_or(30);
    let cap = params.cap.unwrap_or(3);
    let mut s = Sampler::new(params.field, params.seed);
    let mut random_ok = true;
    for i in 0..trials {
        let v = if i % 3 == 0 {
            s.tiny_connected_complex(3, 2)
        } else {
            s.tiny_connected_complex(3, 1)
        };
        let r = comparison::cofree_comparison(&v, cap)?;
        if !r.ok() || r.simplicial_homology != r.word_homology || r.word_homology != r.homology_words {
            random_ok = false;
            rep.push(
                "comparison maps are graded coalgebra isomorphisms",
                false,
                format!(
                    "trial {i}: dims {:?}, homology {:?} vs {:?} vs {:?}",
                    v.dims(),
                    r.simplicial_homology,
                    r.word_homology,
                    r.homology_words
                ),
            );
            break;
        }
    }
    if random_ok {
        rep.push("comparison maps are graded coalgebra isomorphisms", true, format!("{trials} random complexes"));
    }
    let circle = comparison::cofree_comparison(&ChainComplex::sphere(params.field, 1, 3), cap)?;
    rep.push(
        "circle gives one class in every degree",
        circle.ok() && circle.homology_words == vec![1, 1, 1],
        format!("{:?}", circle.homology_words),
    );
    let acyclic = comparison::cofree_comparison(&ChainComplex::disk(params.field, 2, 3), cap)?;
    rep.push(
        "acyclic input collapses to the unit",
        acyclic.ok() && acyclic.homology_words == vec![1, 0, 0],
        format!("{:?}", acyclic.homology_words),
    );
    let zero = comparison::cofree_comparison(&ChainComplex::zero(params.field, 3), cap)?;
    rep.push(
        "zero input is terminal",
        zero.ok() && zero.homology_words == vec![1, 0, 0],
        format!("{:?}", zero.homology_words),
    );
    Ok(rep)
}

/// Homology-of-tensor suite: graded dimensions of a product are the
/// convolution of the factors' homology dimensions.
pub fn kunneth(params: &SuiteParams) -> SuiteReport {
    let mut rep = SuiteReport::new("kunneth", params);
    let trials = params.trials.unwrap_or(50);
    let mut s = Sampler::new(params.field, params.seed);
    let mut ok = true;
    for i in 0..trials {
        let top = 2 + s.below(3);
        let x = s.complex(top, 3);
        let y = s.complex(top, 3);
        let hx = chain::homology(&x).dims;
        let hy = chain::homology(&y).dims;
        let ht = chain::homology(&chain::tensor(&x, &y)).dims;
        for n in 0..top {
            let expect: usize = (0..=n).map(|p| hx[p] * hy[n - p]).sum();
            if ht[n] != expect {
                ok = false;
                rep.push(
                    "product homology is the convolution of factor homologies",
                    false,
                    format!("trial {i}: degree {n}, got {}, expected {}", ht[n], expect),
                );
                break;
            }
        }
        if !ok {
            break;
        }
    }
    if ok {
        rep.push(
            "product homology is the convolution of factor homologies",
            true,
            format!("{trials} random pairs"),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> SuiteParams {
        SuiteParams { trials: Some(trials), ..SuiteParams::default() }
    }

    #[test]
    fn roundtrip_suite_passes_small() {
        let rep = dold_kan_roundtrip(&small(6));
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn monoidal_suite_passes_small() {
        let rep = monoidal(&small(4));
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn induced_suite_passes_small() {
        let rep = induced_coalgebras(&small(4)).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn interchange_suite_passes_small() {
        let rep = interchange_square(&small(3));
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn lifting_suite_passes_small() {
        let rep = lifting_characterizations(&small(8)).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn product_suite_passes_small() {
        let rep = acyclic_cofree_product(&small(3)).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn factorization_suite_passes_small() {
        let rep = factorization_suite(&small(3)).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn word_comparison_suite_passes_small() {
        let rep = word_comparison(&small(2)).unwrap();
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn kunneth_suite_passes_small() {
        let rep = kunneth(&small(6));
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("no-such-suite", &SuiteParams::default()).is_err());
    }

    #[test]
    fn suites_run_over_gf5() {
        let params = SuiteParams {
            field: Field::prime(5).unwrap(),
            trials: Some(3),
            ..SuiteParams::default()
        };
        assert!(dold_kan_roundtrip(&params).ok());
        assert!(kunneth(&params).ok());
    }
}
