//! Modules over A3 and its radical-square-zero quotient: projectives, Hom and Ext tables,
//! and a projective resolution of length two.

use periodic_k0::linalg::Field;
use periodic_k0::quiver::{ext1_dim, hom_dim, projective_resolution, Quiver, QuiverAlgebra, Representation};

fn main() {
    let q = Quiver::linear_a(3);
    let alg = QuiverAlgebra::path_algebra(q.clone(), Field::Rationals);
    let simples: Vec<Representation> = (0..3).map(|i| Representation::simple(&alg, i)).collect();
    for i in 0..3 {
        println!("P{} has dimension vector {:?}", i + 1, Representation::projective(&alg, i).dims());
    }
    println!("dim Hom(S_i, S_j) / dim Ext^1(S_i, S_j):");
    for (i, x) in simples.iter().enumerate() {
        let row: Vec<String> =
            simples.iter().map(|y| format!("{}/{}", hom_dim(&alg, x, y), ext1_dim(&alg, x, y))).collect();
        println!("  S{}: {}", i + 1, row.join("  "));
    }

    let r = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
    let rad = QuiverAlgebra::new(q, Field::Rationals, vec![r]).unwrap();
    let res = projective_resolution(&rad, &Representation::simple(&rad, 2));
    let terms: Vec<String> = res.terms.iter().map(|p| format!("{:?}", p.dims())).collect();
    println!("with ab = 0, S3 is resolved by {}", terms.join(" <- "));
}
