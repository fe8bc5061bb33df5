use crate::linalg::{BlockSystem, Matrix, Term};
use crate::quiver::{ModuleMap, QuiverAlgebra};

use super::periodic::PeriodicComplex;
use super::ComplexError;

/// Degreewise module maps `f^i: V^i -> W^i` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<ModuleMap>,
}

/// Maps `s^i: V^i -> W^{i-1}` witnessing `f - g = d_W s + s d_V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    maps: Vec<ModuleMap>,
}

impl ChainMap {
    pub fn new(
        alg: &QuiverAlgebra,
        source: &PeriodicComplex,
        target: &PeriodicComplex,
        maps: Vec<ModuleMap>,
    ) -> Result<Self, ComplexError> {
        let f = ChainMap { maps };
        f.check(alg, source, target)?;
        Ok(f)
    }

    pub(crate) fn from_parts(maps: Vec<ModuleMap>) -> Self {
        ChainMap { maps }
    }

    /// Module-map squares plus `f^{i+1} d_V^i = d_W^i f^i`.
    pub fn check(&self, alg: &QuiverAlgebra, source: &PeriodicComplex, target: &PeriodicComplex) -> Result<(), ComplexError> {
        let m = source.period();
        if target.period() != m || self.maps.len() != m {
            return Err(ComplexError::ShapeMismatch("chain map degrees do not match the period".into()));
        }
        for i in 0..m {
            self.maps[i]
                .check(alg, &source.components()[i], &target.components()[i])
                .map_err(|e| ComplexError::NotAChainMap(format!("degree {i}: {e}")))?;
        }
        for i in 0..m {
            let next = (i + 1) % m;
            let lhs = self.maps[next].compose(&source.differentials()[i]);
            let rhs = target.differentials()[i].compose(&self.maps[i]);
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap(format!("square at degree {i} does not commute")));
            }
        }
        Ok(())
    }

    pub fn identity(v: &PeriodicComplex) -> Self {
        ChainMap { maps: v.components().iter().map(ModuleMap::identity).collect() }
    }

    pub fn zero(source: &PeriodicComplex, target: &PeriodicComplex) -> Self {
        ChainMap {
            maps: source.components().iter().zip(target.components()).map(|(s, t)| ModuleMap::zero(s, t)).collect(),
        }
    }

    pub fn degree(&self, i: usize) -> &ModuleMap {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub(crate) fn maps_mut(&mut self) -> &mut [ModuleMap] {
        &mut self.maps
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        ChainMap { maps: self.maps.iter().zip(&first.maps).map(|(a, b)| a.compose(b)).collect() }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        ChainMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &crate::linalg::Scalar) -> ChainMap {
        ChainMap { maps: self.maps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(ModuleMap::is_zero)
    }

    /// The same map viewed between shifted complexes: `f[k]^i = f^{i+k}`.
    pub fn shift(&self, k: i64) -> ChainMap {
        let m = self.maps.len();
        ChainMap { maps: (0..m).map(|i| self.maps[super::periodic::modulo(i as i64 + k, m)].clone()).collect() }
    }

    pub fn flatten(&self, field: crate::linalg::Field) -> Matrix {
        let parts: Vec<Matrix> = self.maps.iter().map(|m| m.flatten(field)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(field, 1, &refs)
    }
}

impl Homotopy {
    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// Re-checks `f^i - g^i = d_W^{i-1} s^i + s^{i+1} d_V^i` in every degree.
    pub fn witnesses(&self, source: &PeriodicComplex, target: &PeriodicComplex, f: &ChainMap, g: &ChainMap) -> bool {
        let m = source.period();
        (0..m).all(|i| {
            let prev = (i + m - 1) % m;
            let next = (i + 1) % m;
            let lhs = f.maps[i].sub(&g.maps[i]);
            let rhs = target.differentials()[prev]
                .compose(&self.maps[i])
                .add(&self.maps[next].compose(&source.differentials()[i]));
            lhs == rhs
        })
    }

    /// `d_W s + s d_V`, the null-homotopic chain map this homotopy produces.
    pub fn boundary(&self, source: &PeriodicComplex, target: &PeriodicComplex) -> ChainMap {
        let m = source.period();
        ChainMap {
            maps: (0..m)
                .map(|i| {
                    let prev = (i + m - 1) % m;
                    let next = (i + 1) % m;
                    target.differentials()[prev]
                        .compose(&self.maps[i])
                        .add(&self.maps[next].compose(&source.differentials()[i]))
                })
                .collect(),
        }
    }
}

/// Registers one unknown per (degree, vertex) for maps `V^i -> W^{i+offset}` and adds
/// their commuting-square equations. Returns `ids[i][v]`.
fn module_map_unknowns(
    sys: &mut BlockSystem,
    alg: &QuiverAlgebra,
    source: &PeriodicComplex,
    target: &PeriodicComplex,
    offset: i64,
) -> Vec<Vec<usize>> {
    let m = source.period();
    let n = alg.vertex_count();
    let mut ids = Vec::with_capacity(m);
    for i in 0..m {
        let s = &source.components()[i];
        let t = target.component(i as i64 + offset);
        let row: Vec<usize> = (0..n).map(|v| sys.unknown(t.dims()[v], s.dims()[v])).collect();
        for (idx, a) in alg.quiver().arrows().iter().enumerate() {
            sys.equation(
                t.dims()[a.target],
                s.dims()[a.source],
                vec![
                    Term::right(row[a.target], s.arrow_map(idx).clone()),
                    Term::left(t.arrow_map(idx).neg(), row[a.source]),
                ],
                None,
            );
        }
        ids.push(row);
    }
    ids
}

fn collect_maps(values: &[Matrix], ids: &[Vec<usize>]) -> Vec<ModuleMap> {
    ids.iter().map(|row| ModuleMap::from_parts(row.iter().map(|&u| values[u].clone()).collect())).collect()
}

/// Basis of the space of chain maps `V -> W`.
pub fn chain_map_space(alg: &QuiverAlgebra, source: &PeriodicComplex, target: &PeriodicComplex) -> Vec<ChainMap> {
    let m = source.period();
    let n = alg.vertex_count();
    let mut sys = BlockSystem::new(alg.field());
    let ids = module_map_unknowns(&mut sys, alg, source, target, 0);
    for i in 0..m {
        let next = (i + 1) % m;
        for v in 0..n {
            // f^{i+1} d_V^i - d_W^i f^i = 0 at vertex v
            sys.equation(
                target.components()[next].dims()[v],
                source.components()[i].dims()[v],
                vec![
                    Term::right(ids[next][v], source.differentials()[i].at(v).clone()),
                    Term::left(target.differentials()[i].at(v).neg(), ids[i][v]),
                ],
                None,
            );
        }
    }
    sys.solution_space().iter().map(|sol| ChainMap { maps: collect_maps(sol, &ids) }).collect()
}

/// Basis of all degree `-1` module-map families `s^i: V^i -> W^{i-1}`.
fn homotopy_space(alg: &QuiverAlgebra, source: &PeriodicComplex, target: &PeriodicComplex) -> Vec<Homotopy> {
    let mut sys = BlockSystem::new(alg.field());
    let ids = module_map_unknowns(&mut sys, alg, source, target, -1);
    sys.solution_space().iter().map(|sol| Homotopy { maps: collect_maps(sol, &ids) }).collect()
}

/// Solves for a homotopy between `f` and `g`; the witness is re-verified before returning.
pub fn homotopic(
    alg: &QuiverAlgebra,
    source: &PeriodicComplex,
    target: &PeriodicComplex,
    f: &ChainMap,
    g: &ChainMap,
) -> Option<Homotopy> {
    let m = source.period();
    let n = alg.vertex_count();
    let mut sys = BlockSystem::new(alg.field());
    let ids = module_map_unknowns(&mut sys, alg, source, target, -1);
    for i in 0..m {
        let prev = (i + m - 1) % m;
        let next = (i + 1) % m;
        let diff = f.maps[i].sub(&g.maps[i]);
        for v in 0..n {
            sys.equation(
                target.components()[i].dims()[v],
                source.components()[i].dims()[v],
                vec![
                    Term::left(target.differentials()[prev].at(v).clone(), ids[i][v]),
                    Term::right(ids[next][v], source.differentials()[i].at(v).clone()),
                ],
                Some(diff.at(v).clone()),
            );
        }
    }
    let sol = sys.solve().ok()?;
    let h = Homotopy { maps: collect_maps(&sol, &ids) };
    h.witnesses(source, target, f, g).then_some(h)
}

/// `dim Hom_K(V, W)`: chain maps modulo null-homotopic ones.
pub fn homotopy_classes_dim(alg: &QuiverAlgebra, source: &PeriodicComplex, target: &PeriodicComplex) -> usize {
    let field = alg.field();
    let chain_dim = chain_map_space(alg, source, target).len();
    let boundaries: Vec<Matrix> =
        homotopy_space(alg, source, target).iter().map(|h| h.boundary(source, target).flatten(field)).collect();
    if boundaries.is_empty() {
        return chain_dim;
    }
    let refs: Vec<&Matrix> = boundaries.iter().collect();
    let null_dim = Matrix::hstack(field, refs[0].rows(), &refs).rank();
    chain_dim - null_dim
}

/// A random element of the chain-map space (zero when the space is zero).
pub fn random_chain_map<R: rand::Rng + ?Sized>(
    alg: &QuiverAlgebra,
    source: &PeriodicComplex,
    target: &PeriodicComplex,
    rng: &mut R,
) -> ChainMap {
    let field = alg.field();
    let mut acc = ChainMap::zero(source, target);
    for b in chain_map_space(alg, source, target) {
        acc = acc.add(&b.scale(&field.random(rng)));
    }
    acc
}
