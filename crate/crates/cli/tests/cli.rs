//! End-to-end tests of the binary: documents in, reports out, exit
//! codes as contracted (0 pass, 1 failed assertion, 2 usage/load).

use homalg::chain::{ChainComplex, ChainMap};
use homalg::field::Field;
use homalg::lifting;
use homalg::matrix::Matrix;
use homalg_cli::schema::{self, Document, Object};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_homalg")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_doc(dir: &Path, name: &str, doc: &Document) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, schema::save_document(doc)).expect("fixture writes");
    path
}

fn chain_doc(c: ChainComplex) -> Document {
    Document { field: c.field(), object: Object::Chain(c) }
}

#[test]
fn homology_of_the_disk_is_all_zeros_with_the_top_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(dir.path(), "disk.json", &chain_doc(ChainComplex::disk(Field::Rationals, 2, 2)));
    let out = run(&["homology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["dims"], serde_json::json!([0, 0, 0]));
    assert_eq!(report["top_degree_incomplete"], serde_json::json!(true));
}

#[test]
fn reports_and_documents_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = write_doc(dir.path(), "s2.json", &chain_doc(ChainComplex::sphere(Field::Rationals, 2, 3)));
    let out_path = dir.path().join("gamma.json");
    let out = run(&["apply", "Gamma", sphere.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let written = std::fs::read_to_string(&out_path).unwrap();
    let loaded = schema::load_document(&written).expect("binary output loads");
    assert_eq!(schema::save_document(&loaded), written, "binary output is canonical");
    // The same command again produces identical bytes.
    let again = run(&["apply", "Gamma", sphere.to_str().unwrap()]);
    assert_eq!(code(&again), 0);
    assert_eq!(String::from_utf8_lossy(&again.stdout), written);
}

#[test]
fn corrupted_differentials_are_rejected_naming_the_degree() {
    let dir = tempfile::tempdir().unwrap();
    let one = serde_json::json!({"cols": 1, "entries": ["1"], "rows": 1});
    let doc = serde_json::json!({
        "field": "Q",
        "kind": "chain_complex",
        "object": {"differentials": [one.clone(), one], "dims": [1, 1, 1]},
        "schema": 1,
        "truncation": 2
    });
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["homology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr_text(&out);
    assert!(err.contains("d.d = 0"), "stderr: {err}");
    assert!(err.contains("degree 2"), "stderr: {err}");
}

#[test]
fn non_prime_coefficients_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let doc = serde_json::json!({
        "field": "GFp:4",
        "kind": "chain_complex",
        "object": {"differentials": [], "dims": [1]},
        "schema": 1,
        "truncation": 0
    });
    let path = dir.path().join("gf4.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["homology", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("not prime"), "stderr: {}", stderr_text(&out));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = ["verify", "dold-kan-roundtrip", "--D", "3", "--trials", "3", "--seed", "11"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr_text(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "same seed, different reports");
    let report = stdout_json(&first);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["suite"], serde_json::json!("dold-kan-roundtrip"));
    assert!(!report["checks"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_suites_are_usage_errors() {
    let out = run(&["verify", "no-such-suite"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("dold-kan-roundtrip"), "stderr: {}", stderr_text(&out));
}

#[test]
fn counterexample_reproduces_over_both_fields() {
    for field in ["Q", "GFp:5"] {
        let out = run(&["counterexample", "--field", field, "--D", "3"]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
        let report = stdout_json(&out);
        assert_eq!(report["middle_level1_dim"], serde_json::json!(0));
        assert_eq!(report["lower_level1_is_zero"], serde_json::json!(true));
        assert_eq!(report["right_level1_dim"], serde_json::json!(1));
        assert_eq!(report["right_level1_is_iso"], serde_json::json!(true));
        assert_eq!(report["commutes"], serde_json::json!(false));
        assert_eq!(report["reproduces"], serde_json::json!(true));
    }
    let out = run(&["counterexample", "--field", "GFp:4"]);
    assert_eq!(code(&out), 2);
}

/// The zero map into the circle against the disk collapse: the identity
/// on the circle cannot pull back through the disk, so no lift exists;
/// against the same square with a zero bottom the zero lift works.
#[test]
fn lift_reports_both_verdicts_with_matching_exit_codes() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let s = ChainComplex::sphere(field, 1, 2);
    let zero = ChainComplex::zero(field, 2);
    let left = ChainMap::zero(&zero, &s);
    let right = lifting::disk_to_sphere(field, 1, 2);
    let top = ChainMap::zero(&zero, right.source());

    let no_lift = lifting::LiftingSquare::new(left.clone(), right.clone(), top.clone(), ChainMap::identity(&s)).unwrap();
    let path = write_doc(dir.path(), "no_lift.json", &Document { field, object: Object::Square(no_lift) });
    let out = run(&["lift", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["lift_exists"], serde_json::json!(false));
    assert_eq!(report["lift"], Value::Null);

    let liftable = lifting::LiftingSquare::new(left, right, top, ChainMap::zero(&s, &s)).unwrap();
    let path = write_doc(dir.path(), "liftable.json", &Document { field, object: Object::Square(liftable) });
    let out = run(&["lift", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["lift_exists"], serde_json::json!(true));
    let lift_doc = schema::load_document(&schema::to_canonical_string(&report["lift"])).unwrap();
    assert!(matches!(lift_doc.object, Object::ChainMap(_)));
}

#[test]
fn the_functor_pipeline_composes_through_files() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let circle = write_doc(dir.path(), "s1.json", &chain_doc(ChainComplex::sphere(field, 1, 3)));

    // Gamma then N returns the circle's dimensions.
    let gamma_path = dir.path().join("gamma.json");
    assert_eq!(code(&run(&["apply", "Gamma", circle.to_str().unwrap(), "--out", gamma_path.to_str().unwrap()])), 0);
    let n_out = run(&["apply", "N", gamma_path.to_str().unwrap()]);
    assert_eq!(code(&n_out), 0);
    let n_doc = stdout_json(&n_out);
    assert_eq!(n_doc["object"]["dims"], serde_json::json!([0, 1, 0, 0]));

    // TdPrime, GammaTilde, NTilde: the word coalgebra survives the trip
    // through simplicial coalgebras with its homology intact.
    let words_path = dir.path().join("words.json");
    assert_eq!(code(&run(&["apply", "TdPrime", circle.to_str().unwrap(), "--out", words_path.to_str().unwrap()])), 0);
    let gt_path = dir.path().join("gammatilde.json");
    assert_eq!(code(&run(&["apply", "GammaTilde", words_path.to_str().unwrap(), "--out", gt_path.to_str().unwrap()])), 0);
    let nt_path = dir.path().join("ntilde.json");
    assert_eq!(code(&run(&["apply", "NTilde", gt_path.to_str().unwrap(), "--out", nt_path.to_str().unwrap()])), 0);
    let h = run(&["homology", nt_path.to_str().unwrap()]);
    assert_eq!(code(&h), 0);
    assert_eq!(stdout_json(&h)["dims"], serde_json::json!([1, 1, 1, 1]));

    // The cone of the circle is acyclic.
    let cone_out = run(&["apply", "cone", circle.to_str().unwrap(), "--out", dir.path().join("cone.json").to_str().unwrap()]);
    assert_eq!(code(&cone_out), 0);
    let h = run(&["homology", dir.path().join("cone.json").to_str().unwrap()]);
    assert_eq!(stdout_json(&h)["dims"], serde_json::json!([0, 0, 0, 0]));
}

#[test]
fn pair_functors_produce_loadable_maps() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let circle = write_doc(dir.path(), "s1.json", &chain_doc(ChainComplex::sphere(field, 1, 2)));
    let gamma_path = dir.path().join("gamma.json");
    assert_eq!(code(&run(&["apply", "Gamma", circle.to_str().unwrap(), "--out", gamma_path.to_str().unwrap()])), 0);

    for functor in ["AW", "shuffle"] {
        let out = run(&["apply", functor, gamma_path.to_str().unwrap(), gamma_path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{functor} stderr: {}", stderr_text(&out));
        let doc = schema::load_document(&String::from_utf8_lossy(&out.stdout)).unwrap();
        assert!(matches!(doc.object, Object::ChainMap(_)), "{functor} returns a chain map");
    }

    let out = run(&["apply", "psi", circle.to_str().unwrap(), circle.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let doc = schema::load_document(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(matches!(doc.object, Object::SimplicialMap(_)), "psi returns a simplicial map");

    let out = run(&["apply", "TsPrime", gamma_path.to_str().unwrap(), "--cap", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let doc = schema::load_document(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(matches!(doc.object, Object::SimplicialCoalgebra(_)));
}

#[test]
fn coalgebra_constructions_compose_through_files() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let circle = write_doc(dir.path(), "s1.json", &chain_doc(ChainComplex::sphere(field, 1, 2)));
    let words_path = dir.path().join("words.json");
    assert_eq!(code(&run(&["apply", "TdPrime", circle.to_str().unwrap(), "--out", words_path.to_str().unwrap()])), 0);

    let out = run(&["apply", "coproduct", words_path.to_str().unwrap(), words_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let doc = schema::load_document(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(matches!(doc.object, Object::Coalgebra(_)));

    let out = run(&["apply", "productWithCofree", words_path.to_str().unwrap(), circle.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let doc = schema::load_document(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert!(matches!(doc.object, Object::Coalgebra(_)));

    // dual . dual is the identity on the document bytes.
    let dual_path = dir.path().join("dual.json");
    assert_eq!(code(&run(&["apply", "dual", words_path.to_str().unwrap(), "--out", dual_path.to_str().unwrap()])), 0);
    let dual_doc = schema::load_document(&std::fs::read_to_string(&dual_path).unwrap()).unwrap();
    assert!(matches!(dual_doc.object, Object::Algebra(_)));
    let back = run(&["apply", "dual", dual_path.to_str().unwrap()]);
    assert_eq!(code(&back), 0);
    assert_eq!(
        String::from_utf8_lossy(&back.stdout),
        std::fs::read_to_string(&words_path).unwrap(),
        "double dual changes the document"
    );
}

#[test]
fn factor_emits_a_composable_factorization() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let words = homalg::cofree::tensor_coalgebra(&ChainComplex::sphere(field, 1, 2)).unwrap().coalgebra;
    let identity = homalg::coalg::CoalgebraMap::new(
        words.clone(),
        words.clone(),
        ChainMap::identity(&words.carrier),
    )
    .unwrap();
    let path = write_doc(dir.path(), "id.json", &Document { field, object: Object::CoalgebraMap(identity) });
    let out = run(&["apply", "factor", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    let incl = schema::load_document(&schema::to_canonical_string(&report["inclusion"])).unwrap();
    let proj = schema::load_document(&schema::to_canonical_string(&report["projection"])).unwrap();
    let (Object::CoalgebraMap(i), Object::CoalgebraMap(p)) = (incl.object, proj.object) else {
        panic!("factor returns two coalgebra maps");
    };
    let composite = p.map().compose(i.map());
    assert_eq!(composite, ChainMap::identity(&words.carrier), "p . i is the factored map");
}

#[test]
fn arity_and_kind_mismatches_are_usage_errors() {
    let field = Field::Rationals;
    let dir = tempfile::tempdir().unwrap();
    let circle = write_doc(dir.path(), "s1.json", &chain_doc(ChainComplex::sphere(field, 1, 2)));
    let out = run(&["apply", "coproduct", circle.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = run(&["apply", "N", circle.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_text(&out).contains("simplicial_space"), "stderr: {}", stderr_text(&out));
    let out = run(&["apply", "nonsense", circle.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let out = run(&["no-such-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn matrix_entries_use_integers_over_prime_fields() {
    let field = Field::prime(5).unwrap();
    let m = Matrix::from_rows_i64(field, &[&[3, 4]]);
    let v = schema::matrix_value(&m);
    assert_eq!(v["entries"], serde_json::json!([3, 4]));
    let doc = chain_doc(ChainComplex::sphere(field, 1, 2));
    let text = schema::save_document(&doc);
    assert!(text.contains("\"field\":\"GFp:5\""), "document: {text}");
    let loaded = schema::load_document(&text).unwrap();
    assert_eq!(schema::save_document(&loaded), text);
}
