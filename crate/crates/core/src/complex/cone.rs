use crate::quiver::{ModuleMap, QuiverAlgebra, Representation};

use super::maps::ChainMap;
use super::periodic::PeriodicComplex;
use super::ComplexError;

/// Mapping cone of `f: V -> W` with its structure maps `W -> C -> V[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: PeriodicComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `C^i = V^{i+1} + W^i` with `d_C^i = [[-d_V^{i+1}, 0], [f^{i+1}, d_W^i]]`.
pub fn cone(alg: &QuiverAlgebra, v: &PeriodicComplex, w: &PeriodicComplex, f: &ChainMap) -> Result<Cone, ComplexError> {
    f.check(alg, v, w)?;
    let m = v.period();
    let components: Vec<Representation> = (0..m)
        .map(|i| crate::quiver::direct_sum(alg, &[v.component(i as i64 + 1), &w.components()[i]]))
        .collect();
    let mut differentials = Vec::with_capacity(m);
    let mut inclusion = Vec::with_capacity(m);
    let mut projection = Vec::with_capacity(m);
    for i in 0..m {
        let next = (i + 1) % m;
        let (v1, v2) = (v.component(i as i64 + 1), v.component(i as i64 + 2));
        let (w0, w1) = (&w.components()[i], &w.components()[next]);
        let minus_dv = v.differential(i as i64 + 1).neg();
        let f_next = f.degree(next);
        let dw = &w.differentials()[i];
        differentials.push(ModuleMap::from_blocks(
            alg,
            &[v1, w0],
            &[v2, w1],
            &[vec![Some(&minus_dv), None], vec![Some(f_next), Some(dw)]],
        ));
        inclusion.push(crate::quiver::summand_inclusion(alg, &[v1, w0], 1));
        projection.push(crate::quiver::summand_projection(alg, &[v1, w0], 0));
    }
    let complex = PeriodicComplex::new(alg, m, components, differentials)?;
    let inclusion = ChainMap::new(alg, w, &complex, inclusion)?;
    let projection = ChainMap::new(alg, &complex, &v.shift(1), projection)?;
    Ok(Cone { complex, inclusion, projection })
}
