//! Maximal orthogonal sets in the 2-periodic derived category of A3.

use periodic_k0::derived::{indecomposables_type_a, orthogonal_sets, DEFAULT_SEARCH_LIMIT};
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::Rationals);
    let inventory = indecomposables_type_a(&alg).unwrap();
    println!("{} indecomposable modules, {} objects for m = 2", inventory.len(), 2 * inventory.len());
    for set in orthogonal_sets(&alg, 2, DEFAULT_SEARCH_LIMIT).unwrap() {
        let parts: Vec<String> =
            set.summands.iter().map(|s| format!("M[{},{}] in degree {}", s.interval[0], s.interval[1], s.degree)).collect();
        println!("size {} end_dim {:2}: {}", set.size, set.end_dim, parts.join(", "));
    }
}
