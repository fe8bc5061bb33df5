//! The ten end-to-end criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use periodic_k0::check::{run_suite, Suite};
use periodic_k0::complex::{random_chain_map, random_complex, PeriodicComplex};
use periodic_k0::derived::{decompose_check, hom_dm_dim, hom_dm_dim_homotopy, indecomposables_type_a, orthogonal_sets, DEFAULT_SEARCH_LIMIT};
use periodic_k0::grothendieck::{
    check_triangle_additivity, class_of, empirical_k0, gorsky_witness, verify_witness, Presentation, SamplerConfig,
};
use periodic_k0::linalg::{Field, GroupInvariants};
use periodic_k0::quiver::{euler_form, Arrow, Quiver, QuiverAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn a3(field: Field) -> QuiverAlgebra {
    QuiverAlgebra::path_algebra(Quiver::linear_a(3), field)
}

fn a3_rad2(field: Field) -> QuiverAlgebra {
    let q = Quiver::linear_a(3);
    let r = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
    QuiverAlgebra::new(q, field, vec![r]).unwrap()
}

fn a3_source(field: Field) -> QuiverAlgebra {
    let arrows = vec![
        Arrow { source: 1, target: 0, label: "a".into() },
        Arrow { source: 1, target: 2, label: "b".into() },
    ];
    QuiverAlgebra::path_algebra(Quiver::new(3, arrows).unwrap(), field)
}

fn fields() -> [(Field, &'static str); 2] {
    [(Field::prime(5).unwrap(), "F5"), (Field::Rationals, "Q")]
}

const SEEDS: [u64; 5] = [7, 11, 23, 101, 2024];

fn k0_runs(alg_of: fn(Field) -> QuiverAlgebra, periods: &[usize], seeds: &[u64], expect: &GroupInvariants, budget: Duration) -> Verdict {
    let mut slowest = Duration::ZERO;
    let mut runs = 0;
    for (field, name) in fields() {
        let alg = alg_of(field);
        for &m in periods {
            for &seed in seeds {
                let start = Instant::now();
                let got = empirical_k0(&alg, m, &SamplerConfig { count: 200, max_dim: 4, seed })
                    .map_err(|e| format!("{name}, m = {m}, seed {seed}: {e}"))?;
                let t = start.elapsed();
                slowest = slowest.max(t);
                if &got.0 != expect {
                    return Err(format!("{name}, m = {m}, seed {seed}: got {}", got.0));
                }
                if t > budget {
                    return Err(format!("{name}, m = {m}, seed {seed}: took {t:?}"));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs equal {expect}, slowest {slowest:.2?}"))
}

fn criterion_1() -> Verdict {
    k0_runs(a3, &[2, 4], &SEEDS, &GroupInvariants::free(3), Duration::from_secs(60))
}

fn criterion_2() -> Verdict {
    k0_runs(a3, &[1, 3], &SEEDS, &GroupInvariants::elementary_two(3), Duration::from_secs(120))
}

fn criterion_3() -> Verdict {
    let even = k0_runs(a3_rad2, &[2], &SEEDS[..2], &GroupInvariants::free(3), Duration::from_secs(60))?;
    let odd = k0_runs(a3_rad2, &[3], &SEEDS[..2], &GroupInvariants::elementary_two(3), Duration::from_secs(120))?;
    Ok(format!("{even}; {odd}"))
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for k in 0..500 {
        let m = 1 + k % 4;
        let alg = a3(fields()[(k / 4) % 2].0);
        let v = random_complex(&alg, m, 3, &mut rng);
        let w = random_complex(&alg, m, 3, &mut rng);
        let f = random_chain_map(&alg, &v, &w, &mut rng);
        if !check_triangle_additivity(&alg, &v, &w, &f) {
            return Err(format!("triangle {k} (m = {m}) is not additive"));
        }
        count += 1;
    }
    Ok(format!("{count} cone triangles additive"))
}

/// Every odd run: a doubling combination per sampled object that sums formally to `2[X]`,
/// and `class(X[1]) = class(X)`.
fn criterion_5() -> Verdict {
    let mut objects = 0;
    for (field, name) in fields() {
        let alg = a3(field);
        for m in [1, 3] {
            for &seed in &SEEDS[..2] {
                let p = Presentation::sample(&alg, m, &SamplerConfig { count: 200, max_dim: 4, seed });
                let (_, cert) = p.certify().map_err(|e| e.to_string())?;
                let cert = cert.map_err(|f| format!("{name}, m = {m}: certificate failed: {f:?}"))?;
                if p.doubling_certificates().len() != p.sampled().len() || cert.doubling_certificates != p.sampled().len() {
                    return Err(format!("{name}, m = {m}, seed {seed}: not every sampled object is certified"));
                }
                for (x, combo) in p.doubling_certificates() {
                    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                    for &(r, c) in combo {
                        for &(g, k) in &p.relations()[r].terms {
                            *acc.entry(g).or_insert(0) += c * k;
                        }
                    }
                    acc.retain(|_, c| *c != 0);
                    if acc != BTreeMap::from([(*x, 2)]) {
                        return Err(format!("{name}, m = {m}: combination for object {x} sums to {acc:?}"));
                    }
                    let v = &p.objects()[*x];
                    if class_of(&alg, &v.shift(1)) != class_of(&alg, v) {
                        return Err(format!("{name}, m = {m}: shift changes the class of object {x}"));
                    }
                }
                objects += p.sampled().len();
            }
        }
    }
    Ok(format!("{objects} sampled objects with 2[X] = 0 and class(X[1]) = class(X)"))
}

fn criterion_6() -> Verdict {
    let alg = a3(Field::prime(5).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut witnesses = Vec::new();
    let mut max_depth = 0;
    for k in 0..200 {
        let v = random_complex(&alg, 3, 3, &mut rng);
        let w = gorsky_witness(&alg, &v).map_err(|e| format!("complex {k}: {e}"))?;
        if w.depth() > 3 {
            return Err(format!("complex {k}: depth {}", w.depth()));
        }
        verify_witness(&alg, &w).map_err(|e| format!("complex {k}: {e}"))?;
        max_depth = max_depth.max(w.depth());
        if w.entry_count() > 0 {
            witnesses.push(w);
        }
    }
    let mut mutated = 0;
    while mutated < 50 {
        let mut w = witnesses[rng.gen_range(0..witnesses.len())].clone();
        let k = rng.gen_range(0..w.entry_count());
        if !w.perturb(k) {
            continue;
        }
        if verify_witness(&alg, &w).is_ok() {
            return Err(format!("mutation {mutated} at entry {k} was accepted"));
        }
        mutated += 1;
    }
    Ok(format!("200 witnesses verified (max depth {max_depth}), {mutated} mutations rejected"))
}

fn criterion_7() -> Verdict {
    let alg = a3(Field::Rationals);
    let ind = indecomposables_type_a(&alg).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for m in [2, 3] {
        for x in &ind {
            for y in &ind {
                let hom = hom_dm_dim(&alg, &x.module, &y.module, 0, m).map_err(|e| e.to_string())? as i64;
                let ext = hom_dm_dim(&alg, &x.module, &y.module, 1, m).map_err(|e| e.to_string())? as i64;
                let euler = euler_form(&alg, &x.module.dim_vector(), &y.module.dim_vector()).map_err(|e| e.to_string())?;
                if hom - ext != euler {
                    return Err(format!("M{:?}, M{:?}, m = {m}: {hom} - {ext} != {euler}", x.ends, y.ends));
                }
                for i in 0..m as i64 {
                    let formula = hom_dm_dim(&alg, &x.module, &y.module, i, m).map_err(|e| e.to_string())?;
                    if formula != hom_dm_dim_homotopy(&alg, &x.module, &y.module, i, m) {
                        return Err(format!("M{:?}, M{:?}, m = {m}, i = {i}: formula disagrees with homotopy", x.ends, y.ends));
                    }
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (pair, m) cases satisfy hom - ext = <d, e> and match homotopy classes"))
}

fn criterion_8() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..200 {
        let field = fields()[k % 2].0;
        let alg = if k % 3 == 0 { a3_source(field) } else { a3(field) };
        let m = 1 + (k / 2) % 4;
        let v = random_complex(&alg, m, 3, &mut rng);
        if !decompose_check(&alg, &v).map_err(|e| e.to_string())? {
            return Err(format!("complex {k} (m = {m}) does not match its cohomology stalks"));
        }
    }
    Ok("200 complexes match the sum of their cohomology stalks".into())
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let alg = a3(Field::Rationals);
    let ind = indecomposables_type_a(&alg).map_err(|e| e.to_string())?;
    let mut inventory = Vec::new();
    for x in &ind {
        for d in 0..2i64 {
            inventory.push(PeriodicComplex::stalk(&alg, 2, &x.module, d));
        }
    }
    let keys: std::collections::BTreeSet<_> = inventory.iter().map(|v| v.content_key()).collect();
    let local = ind.iter().all(|x| hom_dm_dim(&alg, &x.module, &x.module, 0, 2) == Ok(1));
    if inventory.len() != 12 || keys.len() != 12 || !local {
        return Err(format!("inventory has {} objects ({} distinct)", inventory.len(), keys.len()));
    }
    let sets = orthogonal_sets(&alg, 2, DEFAULT_SEARCH_LIMIT).map_err(|e| e.to_string())?;
    let slice = sets.iter().find(|s| {
        s.size == 3 && s.summands.iter().all(|x| x.interval[0] == 1 && x.degree == s.summands[0].degree)
    });
    let four = sets.iter().find(|s| s.size == 4);
    let t = start.elapsed();
    match (slice, four) {
        (Some(p), Some(f)) if p.end_dim == 6 && t < Duration::from_secs(30) => Ok(format!(
            "12 indecomposables, {} maximal sets, projective slice end_dim 6, size-4 set {:?}, {t:.2?}",
            sets.len(),
            f.summands.iter().map(|s| (s.interval, s.degree)).collect::<Vec<_>>()
        )),
        _ => Err(format!("sizes {:?}, took {t:?}", sets.iter().map(|s| s.size).collect::<Vec<_>>())),
    }
}

fn criterion_10() -> Verdict {
    let mut lines = Vec::new();
    let mut names = Vec::new();
    for suite in Suite::ALL {
        let r = run_suite(suite, 200, 0);
        for p in &r.properties {
            if p.failures > 0 || p.instances < 200 {
                return Err(format!("{suite:?}/{}: {} failures, {:?}", p.name, p.failures, p.first_failure));
            }
            names.push(p.name.clone());
        }
        lines.push(format!("{suite:?} {}", r.properties.len()));
    }
    for required in [
        "d_squared_zero",
        "euler_identity",
        "smith_remultiplication",
        "homotopy_invariance_of_cohomology",
        "cover_cohomology_commutation",
        "quasi_iso_class_invariance",
    ] {
        if !names.iter().any(|n| n == required) {
            return Err(format!("no property {required}"));
        }
    }
    Ok(format!("{} properties x 200 instances, zero failures ({})", names.len(), lines.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("K0 for even m is Z^3", criterion_1),
        ("K0 for odd m is F2^3", criterion_2),
        ("radical square zero A3", criterion_3),
        ("triangle additivity", criterion_4),
        ("2-torsion for odd m", criterion_5),
        ("Gorsky witnesses", criterion_6),
        ("Hom formula and Euler form", criterion_7),
        ("hereditary decomposition", criterion_8),
        ("orthogonal sets over A3, m = 2", criterion_9),
        ("invariant batteries", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{t:.1?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
