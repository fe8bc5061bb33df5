use std::collections::BTreeSet;

use periodic_k0::complex::{direct_sum_complex, random_complex, resolution_model, PeriodicComplex};
use periodic_k0::derived::*;
use periodic_k0::linalg::Field;
use periodic_k0::quiver::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a(n: usize, field: Field) -> QuiverAlgebra {
    QuiverAlgebra::path_algebra(Quiver::linear_a(n), field)
}

fn arrow(s: usize, t: usize, l: &str) -> Arrow {
    Arrow { source: s, target: t, label: l.into() }
}

/// A3 with the middle vertex a source: 1 <- 2 -> 3.
fn a3_source(field: Field) -> QuiverAlgebra {
    QuiverAlgebra::path_algebra(Quiver::new(3, vec![arrow(1, 0, "a"), arrow(1, 2, "b")]).unwrap(), field)
}

fn d4(field: Field) -> QuiverAlgebra {
    let q = Quiver::new(4, vec![arrow(1, 0, "a"), arrow(2, 0, "b"), arrow(3, 0, "c")]).unwrap();
    QuiverAlgebra::path_algebra(q, field)
}

fn a3_rad2(field: Field) -> QuiverAlgebra {
    let q = Quiver::linear_a(3);
    let r = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
    QuiverAlgebra::new(q, field, vec![r]).unwrap()
}

#[test]
fn hom_examples() {
    let alg = a(3, Field::Rationals);
    let s: Vec<Representation> = (0..3).map(|i| Representation::simple(&alg, i)).collect();
    let p: Vec<Representation> = (0..3).map(|i| Representation::projective(&alg, i)).collect();
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], 1, 2).unwrap(), 1);
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], -1, 2).unwrap(), 1);
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], 0, 2).unwrap(), 0);
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], 1, 3).unwrap(), 1);
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], -1, 3).unwrap(), 0);
    assert_eq!(hom_dm_dim(&alg, &p[0], &p[2], 0, 2).unwrap(), 1);
    assert_eq!(hom_dm_dim(&alg, &p[2], &s[0], 0, 4).unwrap(), 0);
    assert_eq!(hom_dm_dim(&alg, &p[2], &p[2], 2, 5).unwrap(), 0);
    assert_eq!(hom_dm_dim(&alg, &s[1], &s[0], 1, 1), Err(DerivedError::PeriodOne));
    let rad = a3_rad2(Field::Rationals);
    let t = Representation::simple(&rad, 2);
    assert_eq!(hom_dm_dim(&rad, &t, &t, 0, 2), Err(DerivedError::NotHereditary));
    // S3 has projective dimension 2 here, so Ext^2(S3, S1) shows up in degree 2 = 0 mod 2
    let s1 = Representation::simple(&rad, 0);
    assert_eq!(hom_dm_dim_homotopy(&rad, &t, &s1, 2, 2), 1);
    assert_eq!(hom_dm_dim_homotopy(&rad, &t, &s1, 0, 3), 0);
}

#[test]
fn one_periodic_hom_adds_ext() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for alg in [a(3, Field::prime(3).unwrap()), d4(Field::prime(2).unwrap())] {
        for _ in 0..20 {
            let m = random_representation(&alg, 2, &mut rng);
            let n = random_representation(&alg, 2, &mut rng);
            let expect = hom_dim(&alg, &m, &n) + ext1_dim(&alg, &m, &n);
            assert_eq!(hom_dm_dim_homotopy(&alg, &m, &n, 0, 1), expect);
        }
    }
}

#[test]
fn type_a_inventory() {
    for (alg, count) in [(a(3, Field::Rationals), 6), (a3_source(Field::Rationals), 6), (a(1, Field::Rationals), 1), (a(4, Field::prime(2).unwrap()), 10)] {
        let ind = indecomposables_type_a(&alg).unwrap();
        assert_eq!(ind.len(), count);
        let dims: BTreeSet<Vec<usize>> = ind.iter().map(|i| i.module.dims().to_vec()).collect();
        assert_eq!(dims.len(), count);
        for i in &ind {
            assert_eq!(hom_dim(&alg, &i.module, &i.module), 1);
            assert_eq!(ext1_dim(&alg, &i.module, &i.module), 0);
        }
    }
    assert!(matches!(indecomposables_type_a(&d4(Field::Rationals)), Err(DerivedError::NotTypeA(_))));
    assert!(matches!(indecomposables_type_a(&a3_rad2(Field::Rationals)), Err(DerivedError::NotTypeA(_))));
}

/// Every maximal orthogonal set by subset enumeration, with Hom computed through homotopy classes.
fn brute_orthogonal_sets(alg: &QuiverAlgebra, m: usize) -> BTreeSet<(Vec<([usize; 2], usize)>, usize)> {
    let ind = indecomposables_type_a(alg).unwrap();
    let objects: Vec<(usize, usize)> = (0..ind.len()).flat_map(|a| (0..m).map(move |d| (a, d))).collect();
    let hom = |x: (usize, usize), y: (usize, usize), t: i64| {
        hom_dm_dim_homotopy(alg, &ind[x.0].module, &ind[y.0].module, x.1 as i64 - y.1 as i64 + t, m)
    };
    let k = objects.len();
    let ok: Vec<Vec<bool>> = (0..k)
        .map(|x| (0..k).map(|y| (1..m as i64).all(|t| hom(objects[x], objects[y], t) == 0)).collect())
        .collect();
    assert!(k <= 20);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|&x| mask >> x & 1 == 1).collect();
        let fits = |x: usize| members.iter().all(|&y| ok[x][y] && ok[y][x]) && ok[x][x];
        if !members.iter().all(|&x| fits(x)) {
            continue;
        }
        if (0..k).any(|x| mask >> x & 1 == 0 && fits(x)) {
            continue;
        }
        let canon = (0..m)
            .map(|t| {
                let mut v: Vec<([usize; 2], usize)> =
                    members.iter().map(|&x| (ind[objects[x].0].ends, (objects[x].1 + t) % m)).collect();
                v.sort();
                v
            })
            .min()
            .unwrap();
        let end_dim = members.iter().map(|&x| members.iter().map(|&y| hom(objects[x], objects[y], 0)).sum::<usize>()).sum();
        out.insert((canon, end_dim));
    }
    out
}

#[test]
fn orthogonal_sets_match_enumeration() {
    for (alg, m) in [(a(3, Field::prime(2).unwrap()), 2), (a(3, Field::prime(2).unwrap()), 3), (a3_source(Field::prime(2).unwrap()), 2), (a(1, Field::Rationals), 2), (a(2, Field::Rationals), 4)] {
        let sets = orthogonal_sets(&alg, m, DEFAULT_SEARCH_LIMIT).unwrap();
        let got: BTreeSet<(Vec<([usize; 2], usize)>, usize)> = sets
            .iter()
            .map(|s| (s.summands.iter().map(|x| (x.interval, x.degree)).collect(), s.end_dim))
            .collect();
        assert_eq!(got.len(), sets.len());
        assert_eq!(got, brute_orthogonal_sets(&alg, m), "m = {m}");
        assert!(sets.windows(2).all(|w| w[0].size >= w[1].size));
    }
}

#[test]
fn a3_period_two_sets() {
    let alg = a(3, Field::Rationals);
    let sets = orthogonal_sets(&alg, 2, DEFAULT_SEARCH_LIMIT).unwrap();
    let sizes: BTreeSet<usize> = sets.iter().map(|s| s.size).collect();
    assert_eq!(sizes, BTreeSet::from([3, 4]));
    let slice = sets
        .iter()
        .find(|s| s.summands.iter().map(|x| (x.interval, x.degree)).collect::<Vec<_>>() == [([1, 1], 0), ([1, 2], 0), ([1, 3], 0)])
        .expect("projectives in one degree");
    assert_eq!(slice.end_dim, 6);
    let a1 = orthogonal_sets(&a(1, Field::Rationals), 2, DEFAULT_SEARCH_LIMIT).unwrap();
    assert_eq!(a1.len(), 1);
    assert_eq!(a1[0].size, 1);
    assert!(matches!(orthogonal_sets(&a(6, Field::Rationals), 3, 16), Err(DerivedError::SearchTooLarge { objects: 63, limit: 16 })));
    assert_eq!(orthogonal_sets(&alg, 1, 64), Err(DerivedError::PeriodOne));
}

#[test]
fn decomposition_of_stalk_sums_and_resolutions() {
    let alg = a(3, Field::prime(5).unwrap());
    let s2 = Representation::simple(&alg, 1);
    let p3 = Representation::projective(&alg, 2);
    for m in 1..=4 {
        let a = PeriodicComplex::stalk(&alg, m, &s2, 0);
        let b = PeriodicComplex::stalk(&alg, m, &p3, 1);
        assert!(decompose_check(&alg, &direct_sum_complex(&alg, &[&a, &b])).unwrap());
        let (model, _) = resolution_model(&alg, &s2, m);
        assert!(decompose_check(&alg, &model).unwrap());
    }
    let rad = a3_rad2(Field::prime(5).unwrap());
    assert_eq!(decompose_check(&rad, &PeriodicComplex::zero(&rad, 2)), Err(DerivedError::NotHereditary));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_matches_homotopy(seed in any::<u64>(), m in 2usize..=5, i in -6i64..=6, which in 0usize..3) {
        let f = Field::prime(3).unwrap();
        let alg = [a(3, f), a3_source(f), d4(f)][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_representation(&alg, 2, &mut rng);
        let y = random_representation(&alg, 2, &mut rng);
        prop_assert_eq!(hom_dm_dim(&alg, &x, &y, i, m).unwrap(), hom_dm_dim_homotopy(&alg, &x, &y, i, m));
    }

    #[test]
    fn random_complexes_split(seed in any::<u64>(), m in 1usize..=4) {
        let alg = a(3, Field::prime(5).unwrap());
        let v = random_complex(&alg, m, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(decompose_check(&alg, &v).unwrap());
    }
}
