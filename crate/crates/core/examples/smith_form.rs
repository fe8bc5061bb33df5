//! Smith normal form of an integer matrix and the abelian group it presents.

use periodic_k0::linalg::{verify_smith, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = a.smith_normal_form();
    verify_smith(&a, &snf).expect("U A V = D");
    let d: Vec<String> = snf.diagonal().iter().map(ToString::to_string).collect();
    println!("diagonal: [{}]", d.join(", "));
    println!("cokernel: {}", a.cokernel_invariants());

    // Rotation relations [X] + [X[1]] = 0 around a 3-cycle of objects
    let rot = IntMatrix::from_rows(&[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1]]);
    println!("Z^3 / rotations: {}", rot.cokernel_invariants());
}
