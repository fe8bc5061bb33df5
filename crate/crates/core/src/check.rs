//! Seeded property batteries over random instances, one suite per layer.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{
    cohomology, cohomology_dims, cone, homotopic, induced_map, is_quasi_iso, random_chain_map, random_complex,
    resolution_model, BoundedComplex, ChainMap, PeriodicComplex,
};
use crate::derived::{decompose_check, hom_dm_dim, hom_dm_dim_homotopy};
use crate::grothendieck::{check_triangle_additivity, class_of, gorsky_witness, verify_witness, Parity};
use crate::linalg::{verify_smith, Field, IntMatrix, Matrix};
use crate::quiver::{
    euler_form, ext1_dim, hom_dim, hom_space, random_representation, ModuleMap, Quiver, QuiverAlgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Linalg,
    Complex,
    K0,
    Gorsky,
    Hereditary,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Linalg, Suite::Complex, Suite::K0, Suite::Gorsky, Suite::Hereditary];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
    pub passed: bool,
}

type Outcome = Result<(), String>;

fn name_hash(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn property<F>(name: &str, instances: usize, seed: u64, f: F) -> PropertyReport
where
    F: Fn(&mut ChaCha8Rng) -> Outcome + Sync,
{
    let base = seed ^ name_hash(name);
    let results: Vec<Outcome> = (0..instances)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(base);
            rng.set_stream(k as u64);
            f(&mut rng)
        })
        .collect();
    let failures: Vec<(usize, String)> =
        results.into_iter().enumerate().filter_map(|(k, r)| r.err().map(|e| (k, e))).collect();
    PropertyReport {
        name: name.to_string(),
        instances,
        failures: failures.len(),
        first_failure: failures.first().map(|(k, e)| format!("instance {k}: {e}")),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    *[Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(101)]
        .choose(rng)
        .expect("nonempty")
}

fn a3(field: Field) -> QuiverAlgebra {
    QuiverAlgebra::path_algebra(Quiver::linear_a(3), field)
}

/// `A_3` with the length-two path set to zero.
fn a3_radical_square_zero(field: Field) -> QuiverAlgebra {
    let q = Quiver::linear_a(3);
    let rel = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).expect("labels exist");
    QuiverAlgebra::new(q, field, vec![rel]).expect("admissible")
}

fn random_algebra(rng: &mut ChaCha8Rng) -> QuiverAlgebra {
    let field = random_field(rng);
    if rng.gen_bool(0.3) {
        a3_radical_square_zero(field)
    } else {
        a3(field)
    }
}

fn hereditary_algebra(rng: &mut ChaCha8Rng) -> QuiverAlgebra {
    a3(random_field(rng))
}

pub fn run_suite(suite: Suite, instances: usize, seed: u64) -> SuiteReport {
    let properties = match suite {
        Suite::Linalg => linalg_suite(instances, seed),
        Suite::Complex => complex_suite(instances, seed),
        Suite::K0 => k0_suite(instances, seed),
        Suite::Gorsky => gorsky_suite(instances, seed),
        Suite::Hereditary => hereditary_suite(instances, seed),
    };
    let passed = properties.iter().all(|p| p.failures == 0);
    SuiteReport { suite, seed, properties, passed }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let field = random_field(rng);
    let (r, c) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
    // low-rank products make kernels and dependent rows common
    if rng.gen_bool(0.4) && r > 0 && c > 0 {
        let k = rng.gen_range(0..=r.min(c));
        Matrix::random(field, r, k, rng).matmul(&Matrix::random(field, k, c, rng))
    } else {
        Matrix::random(field, r, c, rng)
    }
}

fn random_int_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let vals: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-6..=6)).collect();
    IntMatrix::from_i64(r, c, &vals)
}

fn linalg_suite(n: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        property("rank_nullity", n, seed, |rng| {
            let a = random_matrix(rng);
            let k = a.kernel_basis();
            ensure(a.rank() + k.cols() == a.cols(), || format!("rank {} + nullity {} != {}", a.rank(), k.cols(), a.cols()))?;
            ensure(a.matmul(&k).is_zero(), || "kernel basis not annihilated".into())
        }),
        property("rref_transform", n, seed, |rng| {
            let a = random_matrix(rng);
            let rr = a.rref();
            ensure(rr.reduced.is_rref(), || "not in reduced row echelon form".into())?;
            ensure(rr.transform.matmul(&a) == rr.reduced, || "transform does not reproduce the reduced form".into())?;
            ensure(rr.reduced.rref().reduced == rr.reduced, || "reduction is not idempotent".into())
        }),
        property("solve_roundtrip", n, seed, |rng| {
            let a = random_matrix(rng);
            let x = Matrix::random(a.field(), a.cols(), rng.gen_range(1..=3), rng);
            let b = a.matmul(&x);
            let y = a.solve(&b).map_err(|e| e.to_string())?;
            ensure(a.matmul(&y) == b, || "solution does not satisfy the system".into())
        }),
        property("column_space_canonical", n, seed, |rng| {
            let a = random_matrix(rng);
            let basis = a.column_space_basis();
            let mixed = if a.cols() > 0 {
                a.matmul(&Matrix::random(a.field(), a.cols(), a.cols() + 1, rng))
            } else {
                a.clone()
            };
            // a generic recombination spans the same space with high probability; only compare when ranks agree
            if mixed.rank() == a.rank() {
                ensure(mixed.column_space_basis() == basis, || "canonical basis depends on the spanning set".into())?;
            }
            ensure(basis.transpose().is_rref(), || "basis not in column echelon form".into())
        }),
        property("smith_remultiplication", n, seed, |rng| {
            let a = random_int_matrix(rng);
            verify_smith(&a, &a.smith_normal_form()).map_err(|e| e.to_string())
        }),
        property("cokernel_permutation_invariance", n, seed, |rng| {
            let a = random_int_matrix(rng);
            let mut rows: Vec<usize> = (0..a.rows()).collect();
            let mut cols: Vec<usize> = (0..a.cols()).collect();
            rows.shuffle(rng);
            cols.shuffle(rng);
            let b = a.select_rows(&rows).select_columns(&cols);
            ensure(a.cokernel_invariants() == b.cokernel_invariants(), || "invariants changed under permutation".into())
        }),
    ]
}

fn random_complex_in(rng: &mut ChaCha8Rng, alg: &QuiverAlgebra, max_m: usize, max_dim: usize) -> PeriodicComplex {
    let m = rng.gen_range(1..=max_m);
    random_complex(alg, m, max_dim, rng)
}

/// `f + d s + s d` for a random family `s` of module maps `V^i -> W^{i-1}`.
pub(crate) fn homotopic_perturbation(
    alg: &QuiverAlgebra,
    v: &PeriodicComplex,
    w: &PeriodicComplex,
    f: &ChainMap,
    rng: &mut ChaCha8Rng,
) -> ChainMap {
    let m = v.period();
    let s: Vec<ModuleMap> = (0..m)
        .map(|i| {
            let src = &v.components()[i];
            let tgt = w.component(i as i64 - 1);
            hom_space(alg, src, tgt).iter().fold(ModuleMap::zero(src, tgt), |acc, h| {
                acc.add(&h.scale(&alg.field().from_i64(rng.gen_range(-2..=2))))
            })
        })
        .collect();
    let null: Vec<ModuleMap> = (0..m)
        .map(|i| {
            let prev = (i + m - 1) % m;
            let next = (i + 1) % m;
            w.differentials()[prev].compose(&s[i]).add(&s[next].compose(&v.differentials()[i]))
        })
        .collect();
    f.add(&ChainMap::new(alg, v, w, null).expect("d s + s d is a chain map"))
}

fn complex_suite(n: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        property("d_squared_zero", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = random_complex_in(rng, &alg, 4, 3);
            PeriodicComplex::new(&alg, v.period(), v.components().to_vec(), v.differentials().to_vec())
                .map(|_| ())
                .map_err(|e| e.to_string())
        }),
        property("homotopy_invariance_of_cohomology", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = rng.gen_range(1..=3);
            let v = random_complex(&alg, m, 2, rng);
            let w = random_complex(&alg, m, 2, rng);
            let f = random_chain_map(&alg, &v, &w, rng);
            let g = homotopic_perturbation(&alg, &v, &w, &f, rng);
            let h = homotopic(&alg, &v, &w, &f, &g).ok_or("perturbed map not found homotopic")?;
            ensure(h.witnesses(&v, &w, &f, &g), || "homotopy does not witness f - g".into())?;
            for i in 0..m as i64 {
                ensure(induced_map(&alg, &v, &w, &f, i) == induced_map(&alg, &v, &w, &g, i), || {
                    format!("induced maps differ in degree {i}")
                })?;
            }
            Ok(())
        }),
        property("cover_cohomology_commutation", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = rng.gen_range(1..=4);
            let module = random_representation(&alg, 2, rng);
            let (res, _) = BoundedComplex::projective_resolution(&alg, &module);
            let dims = cohomology_dims(&alg, &res.cover(&alg, m));
            for (i, d) in dims.iter().enumerate() {
                let expected: Vec<usize> = if i == 0 { module.dims().to_vec() } else { vec![0; alg.vertex_count()] };
                ensure(d == &expected, || format!("degree {i}: {d:?} != {expected:?}"))?;
            }
            Ok(())
        }),
        property("shift_moves_cohomology", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = random_complex_in(rng, &alg, 4, 3);
            let s = v.shift(1);
            for i in 0..v.period() as i64 {
                let (a, b) = (cohomology(&alg, &s, i).module, cohomology(&alg, &v, i + 1).module);
                ensure(a.dims() == b.dims(), || format!("degree {i}"))?;
            }
            Ok(())
        }),
        property("cone_of_identity_contractible", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = random_complex_in(rng, &alg, 3, 2);
            let c = cone(&alg, &v, &v, &ChainMap::identity(&v)).map_err(|e| e.to_string())?.complex;
            let id = ChainMap::identity(&c);
            ensure(homotopic(&alg, &c, &c, &id, &ChainMap::zero(&c, &c)).is_some(), || "identity not null-homotopic".into())
        }),
    ]
}

fn k0_suite(n: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        property("triangle_additivity", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = rng.gen_range(1..=4);
            let v = random_complex(&alg, m, 3, rng);
            let w = random_complex(&alg, m, 3, rng);
            let f = random_chain_map(&alg, &v, &w, rng);
            ensure(check_triangle_additivity(&alg, &v, &w, &f), || "class(V) - class(W) + class(cone) != 0".into())
        }),
        property("shift_antisymmetry", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = random_complex_in(rng, &alg, 4, 3);
            let c = class_of(&alg, &v);
            let s = class_of(&alg, &v.shift(1));
            let expected = match c.parity {
                Parity::Even => c.neg(),
                Parity::Odd => c.clone(),
            };
            ensure(s == expected, || format!("{:?} vs {:?}", s.vector, c.vector))
        }),
        property("quasi_iso_class_invariance", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = rng.gen_range(1..=4);
            let module = random_representation(&alg, 3, rng);
            let (model, aug) = resolution_model(&alg, &module, m);
            let stalk = PeriodicComplex::stalk(&alg, m, &module, 0);
            ensure(is_quasi_iso(&alg, &model, &stalk, &aug), || "augmentation is not a quasi-isomorphism".into())?;
            ensure(class_of(&alg, &model) == class_of(&alg, &stalk), || "classes differ".into())
        }),
        property("stalk_class_is_dimension_vector", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = rng.gen_range(1..=4);
            let module = random_representation(&alg, 3, rng);
            let i = rng.gen_range(0..m as i64);
            let c = class_of(&alg, &PeriodicComplex::stalk(&alg, m, &module, i));
            let sign = if m % 2 == 0 && i % 2 == 1 { -1 } else { 1 };
            let expected: Vec<i64> = module
                .dim_vector()
                .iter()
                .map(|d| if m % 2 == 0 { sign * d } else { d.rem_euclid(2) })
                .collect();
            ensure(c.vector == expected, || format!("{:?} != {expected:?}", c.vector))
        }),
    ]
}

fn odd_complex(rng: &mut ChaCha8Rng, alg: &QuiverAlgebra) -> PeriodicComplex {
    let m = *[1usize, 3, 3, 5].choose(rng).expect("nonempty");
    random_complex(alg, m, 3, rng)
}

fn gorsky_suite(n: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        property("witness_verifies", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = odd_complex(rng, &alg);
            let w = gorsky_witness(&alg, &v).map_err(|e| e.to_string())?;
            ensure(w.depth() <= v.period(), || format!("depth {} > {}", w.depth(), v.period()))?;
            verify_witness(&alg, &w).map_err(|e| e.to_string())
        }),
        property("mutation_rejected", n, seed, |rng| {
            let alg = random_algebra(rng);
            let v = odd_complex(rng, &alg);
            let mut w = gorsky_witness(&alg, &v).map_err(|e| e.to_string())?;
            let k = rng.gen_range(0..usize::MAX);
            if !w.perturb(k) {
                return Ok(());
            }
            ensure(verify_witness(&alg, &w).is_err(), || "perturbed witness accepted".into())
        }),
        property("leaf_for_stalks", n, seed, |rng| {
            let alg = random_algebra(rng);
            let m = *[1usize, 3, 5].choose(rng).expect("nonempty");
            let module = random_representation(&alg, 3, rng);
            let v = PeriodicComplex::stalk(&alg, m, &module, rng.gen_range(0..m as i64));
            let w = gorsky_witness(&alg, &v).map_err(|e| e.to_string())?;
            ensure(w.depth() == 0, || "stalk needs no step".into())?;
            verify_witness(&alg, &w).map_err(|e| e.to_string())
        }),
    ]
}

fn hereditary_suite(n: usize, seed: u64) -> Vec<PropertyReport> {
    vec![
        property("euler_identity", n, seed, |rng| {
            let alg = hereditary_algebra(rng);
            let a = random_representation(&alg, 3, rng);
            let b = random_representation(&alg, 3, rng);
            let lhs = hom_dim(&alg, &a, &b) as i64 - ext1_dim(&alg, &a, &b) as i64;
            let rhs = euler_form(&alg, &a.dim_vector(), &b.dim_vector()).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("hom - ext = {lhs}, euler form = {rhs}"))
        }),
        property("hom_formula_matches_homotopy", n, seed, |rng| {
            let alg = hereditary_algebra(rng);
            let a = random_representation(&alg, 2, rng);
            let b = random_representation(&alg, 2, rng);
            let m = rng.gen_range(2..=4);
            let i = rng.gen_range(0..m as i64);
            let formula = hom_dm_dim(&alg, &a, &b, i, m).map_err(|e| e.to_string())?;
            let chains = hom_dm_dim_homotopy(&alg, &a, &b, i, m);
            ensure(formula == chains, || format!("formula {formula}, homotopy classes {chains}"))
        }),
        property("decomposition", n, seed, |rng| {
            let alg = hereditary_algebra(rng);
            let v = random_complex_in(rng, &alg, 3, 2);
            let ok = decompose_check(&alg, &v).map_err(|e| e.to_string())?;
            ensure(ok, || "decomposition check failed".into())
        }),
    ]
}
