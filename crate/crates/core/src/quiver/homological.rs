use crate::linalg::{BlockSystem, Matrix, Term};

use super::algebra::QuiverAlgebra;
use super::module::{direct_sum, kernel, ModuleMap, Representation};
use super::QuiverError;

/// Basis of `Hom(source, target)`: the solutions of all commuting squares.
pub fn hom_space(alg: &QuiverAlgebra, source: &Representation, target: &Representation) -> Vec<ModuleMap> {
    let f = alg.field();
    let mut sys = BlockSystem::new(f);
    let unknowns: Vec<usize> = (0..alg.vertex_count())
        .map(|v| sys.unknown(target.dims()[v], source.dims()[v]))
        .collect();
    for (idx, a) in alg.quiver().arrows().iter().enumerate() {
        // f_j * M_a - N_a * f_i = 0
        sys.equation(
            target.dims()[a.target],
            source.dims()[a.source],
            vec![
                Term::right(unknowns[a.target], source.arrow_map(idx).clone()),
                Term::left(target.arrow_map(idx).neg(), unknowns[a.source]),
            ],
            None,
        );
    }
    sys.solution_space().into_iter().map(ModuleMap::from_parts).collect()
}

pub fn hom_dim(alg: &QuiverAlgebra, source: &Representation, target: &Representation) -> usize {
    hom_space(alg, source, target).len()
}

/// Projective cover `P_0 -> M`, generated by a basis of the top at each vertex.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Representation,
    /// Vertex of each indecomposable summand of `projective`, in order.
    pub summands: Vec<usize>,
    pub map: ModuleMap,
}

pub fn projective_cover(alg: &QuiverAlgebra, rep: &Representation) -> ProjectiveCover {
    let f = alg.field();
    let n = alg.vertex_count();
    // generators: unit vectors at the pivots of the quotient map by the radical
    let mut generators: Vec<(usize, Matrix)> = Vec::new();
    for v in 0..n {
        let incoming: Vec<Matrix> = alg.quiver().incoming(v).map(|(idx, _)| rep.arrow_map(idx).clone()).collect();
        let refs: Vec<&Matrix> = incoming.iter().collect();
        let radical = Matrix::hstack(f, rep.dims()[v], &refs);
        let q = radical.quotient_map();
        let s = super::module::section_of_rref(&q);
        for c in 0..s.cols() {
            generators.push((v, s.column(c)));
        }
    }
    let projectives: Vec<Representation> = generators.iter().map(|(v, _)| Representation::projective(alg, *v)).collect();
    let refs: Vec<&Representation> = projectives.iter().collect();
    let projective = direct_sum(alg, &refs);
    let maps = (0..n)
        .map(|j| {
            let mut cols: Vec<Matrix> = Vec::new();
            for (v, g) in &generators {
                for p in alg.paths_between(*v, j) {
                    cols.push(rep.path_map(p).matmul(g));
                }
            }
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(f, rep.dims()[j], &refs)
        })
        .collect();
    let map = ModuleMap::from_parts(maps);
    debug_assert!(map.check(alg, &projective, rep).is_ok());
    debug_assert!(map.is_surjective());
    ProjectiveCover { projective, summands: generators.iter().map(|(v, _)| *v).collect(), map }
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    /// `terms[k]` is `P_k`.
    pub terms: Vec<Representation>,
    /// `differentials[k]: P_{k+1} -> P_k`.
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
}

pub fn projective_resolution(alg: &QuiverAlgebra, rep: &Representation) -> ProjectiveResolution {
    let cover = projective_cover(alg, rep);
    let mut terms = vec![cover.projective.clone()];
    let mut differentials = Vec::new();
    let (mut syzygy, mut inclusion) = kernel(alg, &cover.projective, &cover.map);
    // an acyclic quiver has global dimension below the vertex count
    for _ in 0..=alg.vertex_count() {
        if syzygy.is_zero() {
            break;
        }
        let next = projective_cover(alg, &syzygy);
        differentials.push(inclusion.compose(&next.map));
        let (k, inc) = kernel(alg, &next.projective, &next.map);
        terms.push(next.projective);
        syzygy = k;
        inclusion = inc;
    }
    assert!(syzygy.is_zero(), "projective resolution did not terminate");
    ProjectiveResolution { terms, differentials, augmentation: cover.map }
}

/// `dim Ext^1(M, N) = dim coker(Hom(P_0, N) -> Hom(Omega M, N))` for the cover `0 -> Omega M -> P_0 -> M -> 0`.
pub fn ext1_dim(alg: &QuiverAlgebra, m: &Representation, n: &Representation) -> usize {
    let f = alg.field();
    let cover = projective_cover(alg, m);
    let (syzygy, inclusion) = kernel(alg, &cover.projective, &cover.map);
    let hom_syzygy = hom_dim(alg, &syzygy, n);
    if hom_syzygy == 0 {
        return 0;
    }
    let restricted: Vec<Matrix> = hom_space(alg, &cover.projective, n)
        .iter()
        .map(|g| g.compose(&inclusion).flatten(f))
        .collect();
    let rank = if restricted.is_empty() {
        0
    } else {
        let refs: Vec<&Matrix> = restricted.iter().collect();
        Matrix::hstack(f, refs[0].rows(), &refs).rank()
    };
    hom_syzygy - rank
}

/// `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`, valid for hereditary algebras.
pub fn euler_form(alg: &QuiverAlgebra, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
    if !alg.is_hereditary() {
        return Err(QuiverError::NotHereditary);
    }
    let n = alg.vertex_count();
    if d.len() != n || e.len() != n {
        return Err(QuiverError::Shape("dimension vectors must have one entry per vertex".into()));
    }
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    let arrows: i64 = alg.quiver().arrows().iter().map(|a| d[a.source] * e[a.target]).sum();
    Ok(diag - arrows)
}
