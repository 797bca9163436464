//! Command implementations shared by the binary and its tests.
//!
//! Every command produces a JSON report (canonicalized by the caller)
//! plus a verdict: `pass = false` means the command ran to completion
//! but its assertion failed (a suite check, a missing lift, a
//! counterexample that does not reproduce), which the binary turns into
//! the assertion-failure exit status.

use crate::schema::{self, obj, Document, Object};
use crate::{CliError, Result};
use homalg::chain;
use homalg::coalg;
use homalg::cofree;
use homalg::cofreeprod;
use homalg::colimit;
use homalg::doldkan;
use homalg::field::Field;
use homalg::lifting;
use homalg::verify::{self, SuiteParams};
use serde_json::Value;

/// A finished command: the report to print and whether its assertions
/// (if it had any) passed.
pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

fn document_outcome(doc: Document) -> Outcome {
    Outcome { report: schema::document_value(&doc), pass: true }
}

/// Homology dimensions of anything that carries a complex.  Simplicial
/// inputs are normalized first, so the dimensions reported are the ones
/// every other command speaks about.
pub fn homology(doc: &Document) -> Result<Outcome> {
    let complex = match &doc.object {
        Object::Chain(c) => c.clone(),
        Object::Coalgebra(c) => c.carrier.clone(),
        Object::Simplicial(x) => doldkan::normalize(x).complex,
        Object::SimplicialCoalgebra(c) => doldkan::normalize(&c.carrier).complex,
        _ => {
            return Err(CliError::Schema(
                "homology expects a chain complex, simplicial space, or coalgebra document".into(),
            ))
        }
    };
    let h = chain::homology(&complex);
    Ok(Outcome {
        report: obj(vec![
            ("command", Value::String("homology".into())),
            ("dims", Value::Array(h.dims.iter().map(|&d| Value::from(d as u64)).collect())),
            ("field", Value::String(schema::field_spec(doc.field))),
            ("top_degree_incomplete", Value::Bool(h.top_incomplete)),
            ("truncation", Value::from(complex.top() as u64)),
        ]),
        pass: true,
    })
}

/// The functors exposed through `apply`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Functor {
    /// Normalized chains of a simplicial vector space.
    #[value(name = "N")]
    N,
    /// The simplicial vector space assembled from a chain complex.
    #[value(name = "Gamma")]
    Gamma,
    /// Normalized chains of a simplicial coalgebra, with the induced
    /// comultiplication.
    #[value(name = "NTilde")]
    NTilde,
    /// The simplicial coalgebra assembled from a connected coalgebra.
    #[value(name = "GammaTilde")]
    GammaTilde,
    /// The Alexander-Whitney chain map for a pair of simplicial spaces.
    #[value(name = "AW")]
    Aw,
    /// The shuffle chain map for a pair of simplicial spaces.
    #[value(name = "shuffle")]
    Shuffle,
    /// The interchange simplicial map for a pair of chain complexes.
    #[value(name = "psi")]
    Psi,
    /// The truncated tensor coalgebra on a connected chain complex.
    #[value(name = "TdPrime")]
    TdPrime,
    /// The levelwise truncated tensor coalgebra on a connected
    /// simplicial space (word lengths capped by `--cap`).
    #[value(name = "TsPrime")]
    TsPrime,
    /// The cone of a chain complex.
    #[value(name = "cone")]
    Cone,
    /// The degreewise dual: coalgebras become algebras and back.
    #[value(name = "dual")]
    Dual,
    /// The coproduct of two connected coalgebras.
    #[value(name = "coproduct")]
    Coproduct,
    /// The product of a connected coalgebra with the tensor coalgebra on
    /// a connected complex.
    #[value(name = "productWithCofree")]
    ProductWithCofree,
    /// Factor a coalgebra map as an injection followed by a projection
    /// that is an isomorphism on homology.
    #[value(name = "factor")]
    Factor,
}

impl Functor {
    fn arity(self) -> usize {
        match self {
            Functor::Aw
            | Functor::Shuffle
            | Functor::Psi
            | Functor::Coproduct
            | Functor::ProductWithCofree => 2,
            _ => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Functor::N => "N",
            Functor::Gamma => "Gamma",
            Functor::NTilde => "NTilde",
            Functor::GammaTilde => "GammaTilde",
            Functor::Aw => "AW",
            Functor::Shuffle => "shuffle",
            Functor::Psi => "psi",
            Functor::TdPrime => "TdPrime",
            Functor::TsPrime => "TsPrime",
            Functor::Cone => "cone",
            Functor::Dual => "dual",
            Functor::Coproduct => "coproduct",
            Functor::ProductWithCofree => "productWithCofree",
            Functor::Factor => "factor",
        }
    }
}

fn wants(functor: Functor, wanted: &str) -> CliError {
    CliError::Schema(format!("{} expects {wanted}", functor.name()))
}

/// Apply a functor to one or two loaded documents.  Single-object
/// results are emitted as loadable documents so commands compose.
pub fn apply(functor: Functor, docs: &[Document], cap: Option<usize>) -> Result<Outcome> {
    if docs.len() != functor.arity() {
        return Err(CliError::Schema(format!(
            "{} expects {} input document(s), got {}",
            functor.name(),
            functor.arity(),
            docs.len()
        )));
    }
    let field = docs[0].field;
    if docs.len() == 2 {
        if docs[1].field != field {
            return Err(CliError::Schema(format!(
                "input documents use different fields: {} vs {}",
                schema::field_spec(field),
                schema::field_spec(docs[1].field)
            )));
        }
        if docs[1].object.truncation() != docs[0].object.truncation() {
            return Err(CliError::Schema(format!(
                "input documents use different truncations: {} vs {}",
                docs[0].object.truncation(),
                docs[1].object.truncation()
            )));
        }
    }
    let object = match (functor, &docs[0].object) {
        (Functor::N, Object::Simplicial(x)) => Object::Chain(doldkan::normalize(x).complex),
        (Functor::N, _) => return Err(wants(functor, "a simplicial_space document")),
        (Functor::Gamma, Object::Chain(v)) => Object::Simplicial(doldkan::gamma(v).space),
        (Functor::Gamma, _) => return Err(wants(functor, "a chain_complex document")),
        (Functor::NTilde, Object::SimplicialCoalgebra(c)) => Object::Coalgebra(coalg::ntilde(c)),
        (Functor::NTilde, _) => return Err(wants(functor, "a simplicial_coalgebra document")),
        (Functor::GammaTilde, Object::Coalgebra(c)) => {
            Object::SimplicialCoalgebra(coalg::gammatilde(c)?)
        }
        (Functor::GammaTilde, _) => return Err(wants(functor, "a dg_coalgebra document")),
        (Functor::Aw, Object::Simplicial(a)) => match &docs[1].object {
            Object::Simplicial(b) => Object::ChainMap(doldkan::alexander_whitney(a, b)),
            _ => return Err(wants(functor, "two simplicial_space documents")),
        },
        (Functor::Aw, _) => return Err(wants(functor, "two simplicial_space documents")),
        (Functor::Shuffle, Object::Simplicial(a)) => match &docs[1].object {
            Object::Simplicial(b) => Object::ChainMap(doldkan::shuffle(a, b)),
            _ => return Err(wants(functor, "two simplicial_space documents")),
        },
        (Functor::Shuffle, _) => return Err(wants(functor, "two simplicial_space documents")),
        (Functor::Psi, Object::Chain(v)) => match &docs[1].object {
            Object::Chain(w) => Object::SimplicialMap(doldkan::interchange(v, w)),
            _ => return Err(wants(functor, "two chain_complex documents")),
        },
        (Functor::Psi, _) => return Err(wants(functor, "two chain_complex documents")),
        (Functor::TdPrime, Object::Chain(v)) => {
            Object::Coalgebra(cofree::tensor_coalgebra(v)?.coalgebra)
        }
        (Functor::TdPrime, _) => return Err(wants(functor, "a chain_complex document")),
        (Functor::TsPrime, Object::Simplicial(x)) => {
            let cap = cap.unwrap_or(x.top());
            Object::SimplicialCoalgebra(cofree::simplicial_tensor_coalgebra(x, cap)?.coalgebra)
        }
        (Functor::TsPrime, _) => return Err(wants(functor, "a simplicial_space document")),
        (Functor::Cone, Object::Chain(v)) => Object::Chain(chain::cone(v)),
        (Functor::Cone, _) => return Err(wants(functor, "a chain_complex document")),
        (Functor::Dual, Object::Coalgebra(c)) => Object::Algebra(homalg::algebra::dual_algebra(c)),
        (Functor::Dual, Object::Algebra(a)) => Object::Coalgebra(homalg::algebra::dual_coalgebra(a)),
        (Functor::Dual, _) => return Err(wants(functor, "a dg_coalgebra or algebra document")),
        (Functor::Coproduct, Object::Coalgebra(a)) => match &docs[1].object {
            Object::Coalgebra(b) => Object::Coalgebra(colimit::coproduct(a, b)?.object),
            _ => return Err(wants(functor, "two dg_coalgebra documents")),
        },
        (Functor::Coproduct, _) => return Err(wants(functor, "two dg_coalgebra documents")),
        (Functor::ProductWithCofree, Object::Coalgebra(c)) => match &docs[1].object {
            Object::Chain(v) => Object::Coalgebra(cofreeprod::product_with_cofree(c, v)?.object),
            _ => {
                return Err(wants(functor, "a dg_coalgebra document then a chain_complex document"))
            }
        },
        (Functor::ProductWithCofree, _) => {
            return Err(wants(functor, "a dg_coalgebra document then a chain_complex document"))
        }
        (Functor::Factor, Object::CoalgebraMap(f)) => {
            let fac = cofreeprod::factorization(f)?;
            let incl = Document { field, object: Object::CoalgebraMap(fac.incl) };
            let proj = Document { field, object: Object::CoalgebraMap(fac.proj) };
            return Ok(Outcome {
                report: obj(vec![
                    ("command", Value::String("apply".into())),
                    ("functor", Value::String("factor".into())),
                    ("inclusion", schema::document_value(&incl)),
                    ("projection", schema::document_value(&proj)),
                ]),
                pass: true,
            });
        }
        (Functor::Factor, _) => return Err(wants(functor, "a coalgebra map document")),
    };
    Ok(document_outcome(Document { field, object }))
}

/// Solve a lifting square.  A missing lift is a reported verdict, not an
/// error: the report says so and the exit status signals the failed
/// assertion.
pub fn lift(doc: &Document) -> Result<Outcome> {
    let Object::Square(sq) = &doc.object else {
        return Err(CliError::Schema("lift expects a square document".into()));
    };
    match lifting::find_lift(sq) {
        Some(l) => {
            let lift_doc = Document { field: doc.field, object: Object::ChainMap(l) };
            Ok(Outcome {
                report: obj(vec![
                    ("command", Value::String("lift".into())),
                    ("lift", schema::document_value(&lift_doc)),
                    ("lift_exists", Value::Bool(true)),
                ]),
                pass: true,
            })
        }
        None => Ok(Outcome {
            report: obj(vec![
                ("command", Value::String("lift".into())),
                ("lift", Value::Null),
                ("lift_exists", Value::Bool(false)),
            ]),
            pass: false,
        }),
    }
}

/// Run a named verification suite and report each check.
pub fn run_verify(suite: &str, params: &SuiteParams) -> Result<Outcome> {
    if !verify::SUITES.contains(&suite) {
        return Err(CliError::Schema(format!(
            "unknown suite {suite:?}; available: {}",
            verify::SUITES.join(", ")
        )));
    }
    let rep = verify::run_suite(suite, params)?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            obj(vec![
                ("detail", Value::String(c.detail.clone())),
                ("name", Value::String(c.name.clone())),
                ("pass", Value::Bool(c.pass)),
            ])
        })
        .collect();
    let pass = rep.ok();
    Ok(Outcome {
        report: obj(vec![
            ("checks", Value::Array(checks)),
            ("command", Value::String("verify".into())),
            ("field", Value::String(schema::field_spec(rep.field))),
            ("pass", Value::Bool(pass)),
            ("seed", Value::from(rep.seed)),
            ("suite", Value::String(rep.suite.clone())),
        ]),
        pass,
    })
}

/// Reproduce the documented failure of the interchange square on the
/// circle carrier and report exactly what holds at level 1.
pub fn counterexample(field: Field, truncation: usize) -> Outcome {
    let ce = verify::interchange_counterexample(field, truncation);
    let pass = ce.reproduces();
    Outcome {
        report: obj(vec![
            ("command", Value::String("counterexample".into())),
            ("commutes", Value::Bool(ce.commutes)),
            ("field", Value::String(schema::field_spec(field))),
            ("lower_level1_is_zero", Value::Bool(ce.lower_level1_is_zero)),
            ("middle_level1_dim", Value::from(ce.middle_level1_dim as u64)),
            ("reproduces", Value::Bool(pass)),
            ("right_level1_dim", Value::from(ce.right_level1_dim as u64)),
            ("right_level1_is_iso", Value::Bool(ce.right_level1_is_iso)),
        ]),
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use homalg::chain::ChainComplex;

    fn chain_doc(c: ChainComplex) -> Document {
        Document { field: c.field(), object: Object::Chain(c) }
    }

    #[test]
    fn homology_of_the_disk_is_zero_with_the_top_flagged() {
        let doc = chain_doc(ChainComplex::disk(Field::Rationals, 2, 2));
        let out = homology(&doc).unwrap();
        assert!(out.pass);
        assert_eq!(out.report["dims"], serde_json::json!([0, 0, 0]));
        assert_eq!(out.report["top_degree_incomplete"], serde_json::json!(true));
    }

    #[test]
    fn gamma_then_n_returns_the_original_dimensions() {
        let v = ChainComplex::sphere(Field::Rationals, 1, 3);
        let g = apply(Functor::Gamma, &[chain_doc(v.clone())], None).unwrap();
        let g_doc = schema::document_from_value(&g.report).unwrap();
        let n = apply(Functor::N, &[g_doc], None).unwrap();
        let n_doc = schema::document_from_value(&n.report).unwrap();
        let Object::Chain(back) = n_doc.object else { panic!("N returns a complex") };
        assert_eq!(back.dims(), v.dims());
    }

    #[test]
    fn double_dual_returns_the_same_document_bytes() {
        let field = Field::Rationals;
        let w = homalg::cofree::tensor_coalgebra(&ChainComplex::sphere(field, 1, 3)).unwrap();
        let doc = Document { field, object: Object::Coalgebra(w.coalgebra) };
        let original = schema::save_document(&doc);
        let a = apply(Functor::Dual, &[doc], None).unwrap();
        let a_doc = schema::document_from_value(&a.report).unwrap();
        let c = apply(Functor::Dual, &[a_doc], None).unwrap();
        let c_doc = schema::document_from_value(&c.report).unwrap();
        assert_eq!(schema::save_document(&c_doc), original);
    }

    #[test]
    fn counterexample_reproduces_over_q_and_gf5() {
        for field in [Field::Rationals, Field::prime(5).unwrap()] {
            let out = counterexample(field, 3);
            assert!(out.pass, "report: {}", out.report);
            assert_eq!(out.report["middle_level1_dim"], serde_json::json!(0));
            assert_eq!(out.report["commutes"], serde_json::json!(false));
        }
    }

    #[test]
    fn arity_mismatches_are_usage_errors() {
        let doc = chain_doc(ChainComplex::sphere(Field::Rationals, 1, 2));
        assert!(apply(Functor::Coproduct, &[doc], None).is_err());
    }
}
