//! Building a presentation by hand: stalks, one cone triangle, then the certificate.

use periodic_k0::complex::{random_chain_map, random_complex, PeriodicComplex};
use periodic_k0::grothendieck::Presentation;
use periodic_k0::linalg::Field;
use periodic_k0::quiver::{Quiver, QuiverAlgebra, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let alg = QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::prime(5).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for m in [2usize, 3] {
        let mut p = Presentation::new(&alg, m);
        for v in 0..3 {
            p.add_sampled(PeriodicComplex::stalk(&alg, m, &Representation::projective(&alg, v), 1));
        }
        let a = random_complex(&alg, m, 3, &mut rng);
        let b = random_complex(&alg, m, 3, &mut rng);
        let f = random_chain_map(&alg, &a, &b, &mut rng);
        p.add_cone(&a, &b, &f).unwrap();
        let (group, cert) = p.certify().unwrap();
        println!("m = {m}: {} objects, {} relations, group {group}", p.objects().len(), p.relations().len());
        match cert {
            Ok(c) => println!("  certified; generator images {:?}", c.generator_images),
            Err(e) => println!("  certificate failed: {e:?}"),
        }
    }
}
