use std::path::PathBuf;

use periodic_k0::cli;
use periodic_k0::complex::random_complex;
use periodic_k0::io::*;
use periodic_k0::linalg::{Field, Matrix};
use periodic_k0::quiver::{random_representation, Quiver, QuiverAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("periodic-k0-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("periodic-k0").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, value, String::from_utf8(err).unwrap())
}

fn run_raw(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    cli::run(std::iter::once("periodic-k0").chain(args.iter().copied()), &mut out, &mut std::io::sink());
    out
}

#[test]
fn algebra_round_trip() {
    for f in ["a3.json", "a3_f5.json", "a3_radical_square_zero.json", "point.json"] {
        let alg = parse_algebra(&std::fs::read_to_string(data(f)).unwrap()).unwrap();
        let back = parse_algebra(&algebra_to_json(&alg).to_string()).unwrap();
        assert_eq!(algebra_to_json(&back), algebra_to_json(&alg));
        assert_eq!(back.relations(), alg.relations());
    }
}

#[test]
fn malformed_algebras_are_rejected() {
    let cases = [
        r#"{"vertices": 2, "arrows": [[1, 3, "a"]], "field": "Q"}"#,
        r#"{"vertices": 2, "arrows": [[1, 2, "a"], [2, 1, "b"]], "field": "Q"}"#,
        r#"{"vertices": 2, "arrows": [[1, 2, "a"]], "field": {"Fp": 4}}"#,
        r#"{"vertices": 2, "arrows": [[1, 2, "a"]], "field": "R"}"#,
        r#"{"vertices": 2, "arrows": [[1, 2, "a"]], "relations": [["z"]], "field": "Q"}"#,
        r#"{"vertices": 2, "arrows": [[1, 2, "a"]], "relations": [["a"]], "field": "Q"}"#,
        r#"{"vertices": 2"#,
    ];
    for c in cases {
        assert!(parse_algebra(c).is_err(), "{c}");
    }
}

#[test]
fn rational_entries() {
    let f = Field::Rationals;
    let m = parse_matrix(f, 1, 3, &json!([["-3/4", 2, " 6/4 "]])).unwrap();
    assert_eq!(m, Matrix::from_scalars(f, 1, 3, vec![f.from_ratio(-3, 4).unwrap(), f.from_i64(2), f.from_ratio(3, 2).unwrap()]).unwrap());
    assert_eq!(matrix_to_json(&m), json!([["-3/4", "2", "3/2"]]));
    assert!(parse_matrix(f, 1, 1, &json!([["1/0"]])).is_err());
    assert!(parse_matrix(f, 1, 1, &json!([[true]])).is_err());
    assert!(parse_matrix(f, 2, 1, &json!([[1]])).is_err());
    assert_eq!(parse_matrix(Field::prime(5).unwrap(), 1, 1, &json!([[-1]])).unwrap(), Matrix::from_i64(Field::prime(5).unwrap(), 1, 1, &[4]));
}

#[test]
fn invalid_modules_and_complexes() {
    let alg = parse_algebra(&std::fs::read_to_string(data("a3_radical_square_zero.json")).unwrap()).unwrap();
    // ab != 0 violates the relation
    assert!(parse_representation(&alg, &json!({"dims": [1, 1, 1], "maps": {"a": [["1"]], "b": [["1"]]}})).is_err());
    assert!(parse_representation(&alg, &json!({"dims": [1, 1], "maps": {}})).is_err());
    assert!(parse_representation(&alg, &json!({"dims": [1, 1, 0], "maps": {"c": [["1"]]}})).is_err());
    let s1 = json!({"dims": [1, 0, 0], "maps": {}});
    let not_square_zero = json!({"m": 1, "components": [{"dims": [2, 0, 0], "maps": {}}], "differentials": [[[["1", "0"], ["0", "0"]], [], []]]});
    assert!(parse_complex(&alg, &not_square_zero).is_err());
    assert!(parse_complex(&alg, &json!({"m": 2, "components": [s1], "differentials": [[[["0"]], [], []]]})).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_round_trip(seed in any::<u64>(), m in 1usize..=4, q in any::<bool>()) {
        let field = if q { Field::Rationals } else { Field::prime(7).unwrap() };
        let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_complex(&alg, m, 3, &mut rng);
        let text = complex_to_json(&alg, &v).to_string();
        let back = parse_complex(&alg, &parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(back.content_key(), v.content_key());
        let r = random_representation(&alg, 3, &mut rng);
        prop_assert_eq!(parse_representation(&alg, &representation_to_json(&alg, &r)).unwrap(), r);
    }
}

#[test]
fn k0_examples() {
    let (code, v, err) = run(&["k0", "--algebra", &data("a3.json"), "--m", "2", "--count", "200", "--seed", "7"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["group"], json!({"free_rank": 3, "torsion": []}));
    assert_eq!(v["certificate"], json!("ok"));
    let (code, v, _) = run(&["k0", "--algebra", &data("a3.json"), "--m", "1", "--count", "200", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["group"], json!({"free_rank": 0, "torsion": [2, 2, 2]}));
}

#[test]
fn output_is_byte_identical() {
    let args = ["k0", "--algebra", &data("a3_f5.json"), "--m", "3", "--count", "40", "--seed", "11"];
    assert_eq!(run_raw(&args), run_raw(&args));
    let args = ["check", "--suite", "k0", "--instances", "30", "--seed", "5"];
    assert_eq!(run_raw(&args), run_raw(&args));
}

#[test]
fn class_and_cohomology() {
    let (code, v, _) = run(&["class", "--algebra", &data("a3.json"), "--complex", &data("zero_m2.json"), "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["vector"], json!([0, 0, 0]));
    let (code, v, _) = run(&["class", "--algebra", &data("a3.json"), "--complex", &data("p2_to_p3_m3.json"), "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"parity": "odd", "vector": [0, 0, 1]}));
    let (code, v, _) = run(&["cohomology", "--algebra", &data("a3.json"), "--complex", &data("p2_to_p3_m3.json")]);
    assert_eq!(code, 0);
    let dims: Vec<Value> = v["cohomology"].as_array().unwrap().iter().map(|h| h["dims"].clone()).collect();
    assert_eq!(dims, vec![json!([0, 0, 0]), json!([0, 0, 1]), json!([0, 0, 0])]);
    let (code, v, _) = run(&["cohomology", "--algebra", &data("point.json"), "--complex", &data("nilpotent_m1.json"), "--degree", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["cohomology"][0]["dims"], json!([0]));
    let (code, _, _) = run(&["class", "--algebra", &data("a3.json"), "--complex", &data("zero_m2.json"), "--m", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn gorsky_hom_and_search() {
    let (code, v, _) = run(&["gorsky", "--algebra", &data("a3.json"), "--complex", &data("p2_to_p3_m3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], json!(true));
    assert!(v["depth"].as_u64().unwrap() <= 3);
    let (code, v, _) = run(&["gorsky", "--algebra", &data("a3.json"), "--complex", &data("zero_m2.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("complex"));

    let (code, v, _) = run(&["hom", "--algebra", &data("a3.json"), "--M", &data("s2.json"), "--N", &data("s1.json"), "--degree", "1", "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], json!(1));
    let (code, v, _) = run(&["hom", "--algebra", &data("a3.json"), "--M", &data("p3.json"), "--N", &data("p3.json"), "--degree", "-2", "--m", "5"]);
    assert_eq!((code, v["dim"].clone()), (0, json!(0)));
    let (code, v, _) = run(&["hom", "--algebra", &data("a3_radical_square_zero.json"), "--M", &data("s1.json"), "--N", &data("s1.json"), "--degree", "0", "--m", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("hom"));

    let (code, v, _) = run(&["tilting-search", "--algebra", &data("a3.json"), "--m", "2"]);
    assert_eq!(code, 0);
    let sizes: Vec<u64> = v.as_array().unwrap().iter().map(|s| s["size"].as_u64().unwrap()).collect();
    assert!(sizes.contains(&3) && sizes.contains(&4));
}

#[test]
fn usage_and_input_errors() {
    let (code, v, _) = run(&["k0", "--algebra", &data("a3.json"), "--m", "2"]);
    assert_eq!(code, 1, "seed is mandatory");
    assert_eq!(v["error"]["kind"], json!("usage"));
    let (code, v, _) = run(&["frobnicate"]);
    assert_eq!((code, v["error"]["kind"].clone()), (1, json!("usage")));
    let (code, v, _) = run(&["class", "--algebra", "/nonexistent.json", "--complex", &data("zero_m2.json"), "--m", "2"]);
    assert_eq!((code, v["error"]["kind"].clone()), (1, json!("io")));
    let bad = scratch("bad.json", "{\"m\": 1, \"components\": [{\"dims\": [2, 0, 0]}], \"differentials\": [[[[\"1\", \"0\"], [\"0\", \"0\"]], [], []]]}");
    let (code, v, _) = run(&["cohomology", "--algebra", &data("a3.json"), "--complex", &bad]);
    assert_eq!((code, v["error"]["kind"].clone()), (1, json!("complex")));
    let garbage = scratch("garbage.json", "not json");
    let (code, v, _) = run(&["class", "--algebra", &garbage, "--complex", &data("zero_m2.json"), "--m", "2"]);
    assert_eq!((code, v["error"]["kind"].clone()), (1, json!("algebra")));
    let (code, _, _) = run(&["k0", "--algebra", &data("a3.json"), "--m", "0", "--seed", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn check_suite_through_cli() {
    let (code, v, err) = run(&["check", "--suite", "linalg", "--instances", "25", "--seed", "3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["suite"], json!("linalg"));
}
