//! A witness that [V] = [V[m]] for odd m, its verification, and a rejected mutation.

use periodic_k0::complex::random_complex;
use periodic_k0::grothendieck::{gorsky_witness, verify_witness};
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::prime(5).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = (0..)
        .map(|_| random_complex(&alg, 3, 3, &mut rng))
        .find(|v| v.support_size() > 1)
        .unwrap();
    let w = gorsky_witness(&alg, &v).unwrap();
    println!("root support {}, depth {}", v.support_size(), w.depth());
    for (k, s) in w.steps().iter().enumerate() {
        println!(
            "step {k}: degree {}, cycles {:?}, quotient {:?}, remaining support {}",
            s.degree,
            s.cycles.left.components()[s.degree].dims(),
            s.quotient.right.components()[s.degree].dims(),
            s.w().support_size()
        );
    }
    println!("verified: {:?}", verify_witness(&alg, &w));
    let mut bad = w.clone();
    bad.perturb(0);
    println!("after one changed entry: {:?}", verify_witness(&alg, &bad).map_err(|e| e.to_string()));
}
