use crate::linalg::Matrix;
use crate::quiver::{section_of_rref, ModuleMap, QuiverAlgebra, Representation};

use super::maps::ChainMap;
use super::periodic::{modulo, PeriodicComplex};
use super::ComplexError;

/// `H^i(V) = Ker d^i / Im d^{i-1}` realized on explicit bases.
///
/// Per vertex: `cycles` has the canonical basis of `Ker d^i` as columns, `projection`
/// maps cycle coordinates onto `H^i`, and `lift` is a section of `projection`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub module: Representation,
    pub cycles: Vec<Matrix>,
    pub projection: Vec<Matrix>,
    pub lift: Vec<Matrix>,
}

pub fn cohomology(alg: &QuiverAlgebra, v: &PeriodicComplex, degree: i64) -> Cohomology {
    try_cohomology(alg, v, degree).expect("cohomology of a valid complex is well defined")
}

/// Like [`cohomology`], reporting a failed well-definedness check instead of panicking.
pub fn try_cohomology(alg: &QuiverAlgebra, v: &PeriodicComplex, degree: i64) -> Result<Cohomology, ComplexError> {
    let f = alg.field();
    let n = alg.vertex_count();
    let i = modulo(degree, v.period());
    let d_out = v.differential(i as i64);
    let d_in = v.differential(i as i64 - 1);
    let here = &v.components()[i];
    let mut cycles = Vec::with_capacity(n);
    let mut boundaries = Vec::with_capacity(n);
    for vert in 0..n {
        let z = d_out.at(vert).kernel_basis().column_space_basis();
        let z = if z.cols() == 0 { Matrix::zeros(f, here.dims()[vert], 0) } else { z };
        let b = z
            .solve(d_in.at(vert))
            .map_err(|_| ComplexError::NotAComplex(modulo(degree - 1, v.period())))?;
        cycles.push(z);
        boundaries.push(b);
    }
    let projection: Vec<Matrix> = boundaries.iter().map(Matrix::quotient_map).collect();
    let lift: Vec<Matrix> = projection.iter().map(section_of_rref).collect();
    let dims: Vec<usize> = projection.iter().map(Matrix::rows).collect();
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (idx, a) in alg.quiver().arrows().iter().enumerate() {
        let moved = here.arrow_map(idx).matmul(&cycles[a.source]);
        let in_cycles = cycles[a.target]
            .solve(&moved)
            .map_err(|_| ComplexError::Verification(format!("cycles not stable under arrow {}", a.label)))?;
        if !projection[a.target].matmul(&in_cycles).matmul(&boundaries[a.source]).is_zero() {
            return Err(ComplexError::Verification(format!("arrow {} does not preserve boundaries", a.label)));
        }
        maps.push(projection[a.target].matmul(&in_cycles).matmul(&lift[a.source]));
    }
    let module = Representation::new(alg, dims, maps).map_err(|e| ComplexError::Verification(e.to_string()))?;
    Ok(Cohomology { module, cycles, projection, lift })
}

/// `H^i(f): H^i(V) -> H^i(W)`.
pub fn induced_map(
    alg: &QuiverAlgebra,
    source: &PeriodicComplex,
    target: &PeriodicComplex,
    f: &ChainMap,
    degree: i64,
) -> ModuleMap {
    let hv = cohomology(alg, source, degree);
    let hw = cohomology(alg, target, degree);
    induced_between(alg, &hv, &hw, f.degree(modulo(degree, source.period())))
}

fn induced_between(alg: &QuiverAlgebra, hv: &Cohomology, hw: &Cohomology, f: &ModuleMap) -> ModuleMap {
    let maps = (0..alg.vertex_count())
        .map(|v| {
            let image = f.at(v).matmul(&hv.cycles[v]).matmul(&hv.lift[v]);
            let coords = hw.cycles[v].solve(&image).expect("chain maps send cycles to cycles");
            hw.projection[v].matmul(&coords)
        })
        .collect();
    let m = crate::quiver::ModuleMap::from_parts(maps);
    debug_assert!(m.check(alg, &hv.module, &hw.module).is_ok());
    m
}

/// True iff `H^i(f)` is an isomorphism in every degree.
pub fn is_quasi_iso(alg: &QuiverAlgebra, source: &PeriodicComplex, target: &PeriodicComplex, f: &ChainMap) -> bool {
    (0..source.period() as i64).all(|i| {
        let hv = cohomology(alg, source, i);
        let hw = cohomology(alg, target, i);
        hv.module.dims() == hw.module.dims() && induced_between(alg, &hv, &hw, f.degree(i as usize)).is_isomorphism()
    })
}

/// Dimension vectors of `H^0, ..., H^{m-1}`.
pub fn cohomology_dims(alg: &QuiverAlgebra, v: &PeriodicComplex) -> Vec<Vec<usize>> {
    (0..v.period() as i64).map(|i| cohomology(alg, v, i).module.dims().to_vec()).collect()
}
