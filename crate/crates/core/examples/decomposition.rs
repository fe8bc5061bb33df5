//! Over a hereditary algebra a periodic complex looks like the sum of its cohomology stalks.

use periodic_k0::complex::{cohomology_dims, random_complex};
use periodic_k0::derived::decompose_check;
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::prime(7).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in 1..=4 {
        let v = random_complex(&alg, m, 3, &mut rng);
        let comps: Vec<&[usize]> = v.components().iter().map(|c| c.dims()).collect();
        println!(
            "m = {m}: components {comps:?}, cohomology {:?}, matches stalks: {}",
            cohomology_dims(&alg, &v),
            decompose_check(&alg, &v).unwrap()
        );
    }
}
