//! Writing a random complex to JSON and reading it back.

use periodic_k0::complex::random_complex;
use periodic_k0::io::{algebra_to_json, complex_to_json, parse_complex, parse_json};
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::Rationals);
    let v = random_complex(&alg, 2, 2, &mut ChaCha8Rng::seed_from_u64(5));
    println!("{}", algebra_to_json(&alg));
    let text = serde_json::to_string_pretty(&complex_to_json(&alg, &v)).unwrap();
    println!("{text}");
    let back = parse_complex(&alg, &parse_json(&text).unwrap()).unwrap();
    assert_eq!(back, v);
    eprintln!("round trip ok");
}
