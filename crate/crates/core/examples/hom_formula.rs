//! dim Hom(M, N[i]) in the m-periodic derived category of A3, from the closed formula
//! and from chain maps up to homotopy.

use periodic_k0::derived::{hom_dm_dim, hom_dm_dim_homotopy, indecomposables_type_a};
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra};

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::Rationals);
    let ind = indecomposables_type_a(&alg).unwrap();
    for m in [2usize, 3] {
        println!("m = {m}");
        for x in &ind {
            for y in &ind {
                let dims: Vec<usize> = (0..m as i64).map(|i| hom_dm_dim(&alg, &x.module, &y.module, i, m).unwrap()).collect();
                let check: Vec<usize> = (0..m as i64).map(|i| hom_dm_dim_homotopy(&alg, &x.module, &y.module, i, m)).collect();
                assert_eq!(dims, check);
                if dims.iter().any(|&d| d > 0) {
                    println!("  M{:?} -> M{:?}[i], i = 0..{m}: {dims:?}", x.ends, y.ends);
                }
            }
        }
    }
}
