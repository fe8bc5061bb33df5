//! Mapping cones, null-homotopies and the additivity of classes along triangles.

use periodic_k0::complex::{cone, homotopic, random_chain_map, random_complex, ChainMap};
use periodic_k0::grothendieck::class_of;
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::prime(3).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = random_complex(&alg, 4, 3, &mut rng);
    let w = random_complex(&alg, 4, 3, &mut rng);

    let c = cone(&alg, &v, &v, &ChainMap::identity(&v)).unwrap().complex;
    let id = ChainMap::identity(&c);
    let contractible = homotopic(&alg, &c, &c, &id, &ChainMap::zero(&c, &c)).is_some();
    println!("cone(id) is contractible: {contractible}");

    let f = random_chain_map(&alg, &v, &w, &mut rng);
    let cf = cone(&alg, &v, &w, &f).unwrap().complex;
    println!("[V]      = {:?}", class_of(&alg, &v).vector);
    println!("[W]      = {:?}", class_of(&alg, &w).vector);
    println!("[cone f] = {:?}", class_of(&alg, &cf).vector);
}
