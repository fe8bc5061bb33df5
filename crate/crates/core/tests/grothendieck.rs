use std::collections::BTreeMap;

use periodic_k0::complex::{cone, random_chain_map, random_complex, ChainMap, PeriodicComplex};
use periodic_k0::grothendieck::*;
use periodic_k0::linalg::{Field, GroupInvariants, IntMatrix};
use periodic_k0::quiver::{Quiver, QuiverAlgebra, Representation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a3(field: Field) -> QuiverAlgebra {
    QuiverAlgebra::path_algebra(Quiver::linear_a(3), field)
}

fn a3_rad2(field: Field) -> QuiverAlgebra {
    let q = Quiver::linear_a(3);
    let r = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
    QuiverAlgebra::new(q, field, vec![r]).unwrap()
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

/// Alternating sum of component dimension vectors; the ranks of the differentials
/// cancel around the cycle for even `m` and pair up mod 2 for odd `m`.
fn euler_characteristic(v: &PeriodicComplex) -> Vec<i64> {
    let n = v.components()[0].dims().len();
    let mut out = vec![0i64; n];
    for (i, c) in v.components().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (o, d) in out.iter_mut().zip(c.dims()) {
            *o += sign * *d as i64;
        }
    }
    if v.period() % 2 == 1 {
        out.iter_mut().for_each(|x| *x = x.rem_euclid(2));
    }
    out
}

#[test]
fn class_examples() {
    let alg = a3(Field::Rationals);
    let s1 = Representation::simple(&alg, 0);
    let st = PeriodicComplex::stalk(&alg, 2, &s1, 0);
    assert_eq!(class_of(&alg, &st).vector, vec![1, 0, 0]);
    assert_eq!(class_of(&alg, &st.shift(1)).vector, vec![-1, 0, 0]);
    let c = cone(&alg, &st, &st, &ChainMap::identity(&st)).unwrap();
    assert!(class_of(&alg, &c.complex).is_zero());
    let odd = PeriodicComplex::stalk(&alg, 1, &s1, 1);
    assert_eq!(class_of(&alg, &odd), K0Class::new(Parity::Odd, vec![1, 0, 0]));
    let p3 = Representation::projective(&alg, 2);
    assert_eq!(class_of(&alg, &PeriodicComplex::stalk(&alg, 3, &p3, 2)).vector, vec![1, 1, 1]);
    assert!(class_of(&alg, &PeriodicComplex::zero(&alg, 4)).is_zero());
}

#[test]
fn additivity_for_identity_and_zero() {
    let alg = a3(f5());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 1..=4 {
        let v = random_complex(&alg, m, 3, &mut rng);
        let w = random_complex(&alg, m, 3, &mut rng);
        assert!(check_triangle_additivity(&alg, &v, &v, &ChainMap::identity(&v)));
        assert!(check_triangle_additivity(&alg, &v, &w, &ChainMap::zero(&v, &w)));
    }
}

#[test]
fn gorsky_edge_cases() {
    let alg = a3(f5());
    let zero = PeriodicComplex::zero(&alg, 3);
    let w = gorsky_witness(&alg, &zero).unwrap();
    assert_eq!(w.depth(), 0);
    verify_witness(&alg, &w).unwrap();

    let st = PeriodicComplex::stalk(&alg, 3, &Representation::projective(&alg, 1), 1);
    assert!(is_gorsky_leaf(&st));
    assert!(gorsky_step(&alg, &st).is_none());
    assert_eq!(gorsky_witness(&alg, &st).unwrap().depth(), 0);

    assert!(matches!(gorsky_witness(&alg, &PeriodicComplex::zero(&alg, 2)), Err(GrothendieckError::EvenPeriod(2))));
}

#[test]
fn gorsky_witnesses_verify_and_mutations_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for alg in [a3(f5()), a3_rad2(Field::prime(3).unwrap())] {
        for m in [1usize, 3, 5] {
            for _ in 0..8 {
                let v = random_complex(&alg, m, 3, &mut rng);
                let w = gorsky_witness(&alg, &v).unwrap();
                assert!(w.depth() <= m);
                assert!(is_gorsky_leaf(w.leaf()));
                verify_witness(&alg, &w).unwrap();
                for step in w.steps() {
                    for ses in step.sequences() {
                        ses.verify(&alg).unwrap();
                    }
                }
                for k in 0..3 {
                    let mut bad = w.clone();
                    if bad.perturb(k * 7919) {
                        assert!(verify_witness(&alg, &bad).is_err());
                    }
                }
            }
        }
    }
}

#[test]
fn empty_presentation_fails_certificate() {
    let alg = a3(f5());
    let p = Presentation::new(&alg, 1);
    let (group, cert) = p.certify().unwrap();
    assert_eq!(group, GroupInvariants::free(3));
    assert!(matches!(cert, Err(CertificateFailure::UnexpectedGroup { .. })));
}

#[test]
fn bogus_relation_is_caught() {
    let alg = a3(f5());
    let mut p = Presentation::sample(&alg, 2, &SamplerConfig { count: 10, max_dim: 2, seed: 4 });
    assert!(p.certify().unwrap().1.is_ok());
    let p2 = p.id_of(&PeriodicComplex::stalk(&alg, 2, &Representation::projective(&alg, 1), 0)).unwrap();
    let r = p.relate(RelationKind::Cone, &[(p2, 1)]).unwrap();
    match p.certify().unwrap().1 {
        Err(CertificateFailure::RelationNotKilled { relation, image, .. }) => {
            assert_eq!(relation, r);
            assert_eq!(image, vec![1, 1, 0]);
        }
        other => panic!("expected a rejected relation, got {other:?}"),
    }
}

#[test]
fn elimination_agrees_with_dense_smith_form() {
    for (m, alg) in [(2, a3(f5())), (3, a3(f5())), (1, a3_rad2(f5())), (4, a3_rad2(Field::Rationals))] {
        let p = Presentation::sample(&alg, m, &SamplerConfig { count: 6, max_dim: 2, seed: 21 });
        let mut a = IntMatrix::zeros(p.objects().len(), p.relations().len());
        for (j, r) in p.relations().iter().enumerate() {
            for &(g, c) in &r.terms {
                a.set(g, j, c.into());
            }
        }
        let (group, cert) = p.certify().unwrap();
        assert_eq!(a.cokernel_invariants(), group, "m = {m}");
        assert!(cert.is_ok());
    }
}

#[test]
fn point_algebra() {
    let alg = QuiverAlgebra::path_algebra(Quiver::new(1, vec![]).unwrap(), Field::Rationals);
    let cfg = SamplerConfig { count: 20, max_dim: 3, seed: 0 };
    assert_eq!(empirical_k0(&alg, 2, &cfg).unwrap().0, GroupInvariants::free(1));
    assert_eq!(empirical_k0(&alg, 1, &cfg).unwrap().0, GroupInvariants::elementary_two(1));
}

#[test]
fn odd_certificates_cover_every_sample() {
    let alg = a3(f5());
    let cfg = SamplerConfig { count: 30, max_dim: 3, seed: 2 };
    let p = Presentation::sample(&alg, 3, &cfg);
    assert_eq!(p.doubling_certificates().len(), p.sampled().len());
    let (_, cert) = p.certify().unwrap();
    assert_eq!(cert.unwrap().doubling_certificates, p.sampled().len());
}

#[test]
fn report_is_deterministic() {
    let alg = a3(f5());
    let cfg = SamplerConfig { count: 25, max_dim: 3, seed: 77 };
    let a = serde_json::to_string(&k0_report(&alg, 3, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&k0_report(&alg, 3, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"certificate\":\"ok\""));
}

#[test]
fn sequence_relation_has_three_terms() {
    let alg = a3(f5());
    let v = random_complex(&alg, 3, 3, &mut ChaCha8Rng::seed_from_u64(12));
    if let Some(step) = gorsky_step(&alg, &v) {
        let rel: BTreeMap<_, _> = step.quotient.relation();
        assert!(rel.values().map(|c| c.abs()).sum::<i64>() <= 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_is_euler_characteristic(seed in any::<u64>(), m in 1usize..=5, rad in any::<bool>()) {
        let alg = if rad { a3_rad2(f5()) } else { a3(f5()) };
        let v = random_complex(&alg, m, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(class_of(&alg, &v).vector, euler_characteristic(&v));
    }

    #[test]
    fn triangles_are_additive(seed in any::<u64>(), m in 1usize..=4, q in any::<bool>()) {
        let alg = a3(if q { Field::Rationals } else { Field::prime(3).unwrap() });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_complex(&alg, m, 2, &mut rng);
        let w = random_complex(&alg, m, 2, &mut rng);
        let f = random_chain_map(&alg, &v, &w, &mut rng);
        prop_assert!(check_triangle_additivity(&alg, &v, &w, &f));
        let c = cone(&alg, &v, &w, &f).unwrap().complex;
        prop_assert_eq!(class_of(&alg, &c), class_of(&alg, &w).sub(&class_of(&alg, &v)));
    }

    #[test]
    fn shift_negates_class(seed in any::<u64>(), m in 1usize..=5) {
        let alg = a3(f5());
        let v = random_complex(&alg, m, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(class_of(&alg, &v.shift(1)), class_of(&alg, &v).neg());
    }
}
