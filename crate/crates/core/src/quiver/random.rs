use rand::Rng;

use crate::linalg::Matrix;

use super::algebra::QuiverAlgebra;
use super::module::{section_of_rref, Representation};

const REPAIR_ROUNDS: usize = 8;

/// Random module with every vertex dimension in `0..=max_dim`.
///
/// Arrow matrices are sampled freely; a violated relation `a_k ... a_1` is repaired by
/// precomposing `a_k` with a projection killing the image of `a_{k-1} ... a_1`. If repairs
/// do not settle within a few rounds the offending arrow is zeroed.
pub fn random_representation<R: Rng + ?Sized>(alg: &QuiverAlgebra, max_dim: usize, rng: &mut R) -> Representation {
    let dims: Vec<usize> = (0..alg.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    random_with_dims(alg, dims, rng)
}

pub fn random_with_dims<R: Rng + ?Sized>(alg: &QuiverAlgebra, dims: Vec<usize>, rng: &mut R) -> Representation {
    let f = alg.field();
    let mut maps: Vec<Matrix> = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| {
            // occasional zero arrows give more varied modules
            if rng.gen_bool(0.15) {
                Matrix::zeros(f, dims[a.target], dims[a.source])
            } else {
                Matrix::random(f, dims[a.target], dims[a.source], rng)
            }
        })
        .collect();
    for round in 0..=REPAIR_ROUNDS {
        let rep = Representation::from_parts(f, dims.clone(), maps.clone());
        let violated: Vec<_> = alg.relations().iter().filter(|r| !rep.path_map(r).is_zero()).collect();
        if violated.is_empty() {
            break;
        }
        for rel in violated {
            let last = *rel.arrows.last().unwrap();
            if round == REPAIR_ROUNDS {
                maps[last] = Matrix::zeros(f, maps[last].rows(), maps[last].cols());
                continue;
            }
            let mut prefix = Matrix::identity(f, dims[rel.start]);
            for &a in &rel.arrows[..rel.arrows.len() - 1] {
                prefix = maps[a].matmul(&prefix);
            }
            let q = prefix.quotient_map();
            let projector = section_of_rref(&q).matmul(&q);
            maps[last] = maps[last].matmul(&projector);
        }
    }
    Representation::new(alg, dims, maps).expect("repaired representation satisfies the relations")
}
