use crate::complex::{
    cohomology, direct_sum_complex, homotopy_classes_dim, resolution_model, PeriodicComplex,
};
use crate::grothendieck::class_of;
use crate::quiver::{ext1_dim, hom_dim, QuiverAlgebra, Representation};

use super::DerivedError;

/// `dim Hom(M, N[i])` in `D_m` for modules over a hereditary algebra, `m >= 2`:
/// `Hom(M, N)` when `i = 0`, `Ext^1(M, N)` when `i = 1`, zero otherwise (mod `m`).
pub fn hom_dm_dim(
    alg: &QuiverAlgebra,
    m_mod: &Representation,
    n_mod: &Representation,
    i: i64,
    m: usize,
) -> Result<usize, DerivedError> {
    if m < 2 {
        return Err(DerivedError::PeriodOne);
    }
    if !alg.is_hereditary() {
        return Err(DerivedError::NotHereditary);
    }
    Ok(match i.rem_euclid(m as i64) {
        0 => hom_dim(alg, m_mod, n_mod),
        1 => ext1_dim(alg, m_mod, n_mod),
        _ => 0,
    })
}

/// The same dimension through chain maps up to homotopy, from the projective
/// model of `M` to the stalk of `N` shifted by `i`. Works for any algebra and period.
pub fn hom_dm_dim_homotopy(
    alg: &QuiverAlgebra,
    m_mod: &Representation,
    n_mod: &Representation,
    i: i64,
    m: usize,
) -> usize {
    let (model, _) = resolution_model(alg, m_mod, m);
    let target = PeriodicComplex::stalk(alg, m, n_mod, 0).shift(i);
    homotopy_classes_dim(alg, &model, &target)
}

/// Tests the consequences of `V ≅ ⊕ H^i(V)[-i]` that can be computed: equal classes
/// and equal Hom profiles from the projective models of every simple and
/// indecomposable projective, in every degree. For `m >= 2` the profile is also
/// compared with the closed formula.
pub fn decompose_check(alg: &QuiverAlgebra, v: &PeriodicComplex) -> Result<bool, DerivedError> {
    if !alg.is_hereditary() {
        return Err(DerivedError::NotHereditary);
    }
    let m = v.period();
    let h: Vec<Representation> = (0..m as i64).map(|i| cohomology(alg, v, i).module).collect();
    let stalks: Vec<PeriodicComplex> =
        h.iter().enumerate().map(|(i, hi)| PeriodicComplex::stalk(alg, m, hi, i as i64)).collect();
    let refs: Vec<&PeriodicComplex> = stalks.iter().collect();
    let split = direct_sum_complex(alg, &refs);
    if class_of(alg, v) != class_of(alg, &split) {
        return Ok(false);
    }
    let n = alg.vertex_count();
    let battery: Vec<Representation> = (0..n)
        .flat_map(|j| [Representation::simple(alg, j), Representation::projective(alg, j)])
        .collect();
    for x in &battery {
        let (model, _) = resolution_model(alg, x, m);
        for k in 0..m as i64 {
            let direct = homotopy_classes_dim(alg, &model, &v.shift(k));
            let via_split = homotopy_classes_dim(alg, &model, &split.shift(k));
            if direct != via_split {
                return Ok(false);
            }
            if m >= 2 {
                let formula: usize = h
                    .iter()
                    .enumerate()
                    .map(|(i, hi)| hom_dm_dim(alg, x, hi, k - i as i64, m))
                    .sum::<Result<usize, _>>()?;
                if direct != formula {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
