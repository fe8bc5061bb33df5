use crate::linalg::{Field, Matrix};

use super::algebra::{Path, QuiverAlgebra};
use super::QuiverError;

/// A finite-dimensional module: a vector space per vertex and a matrix per arrow.
/// The map of arrow `a: i -> j` has shape `dims[j] x dims[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A module homomorphism: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks arrow-map shapes and that every relation composes to zero.
    pub fn new(alg: &QuiverAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, QuiverError> {
        if dims.len() != alg.vertex_count() || maps.len() != alg.arrow_count() {
            return Err(QuiverError::Shape(format!(
                "expected {} dims and {} maps, got {} and {}",
                alg.vertex_count(),
                alg.arrow_count(),
                dims.len(),
                maps.len()
            )));
        }
        for (a, m) in alg.quiver().arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) || m.field() != alg.field() {
                return Err(QuiverError::Shape(format!(
                    "arrow {} needs a {}x{} matrix over {}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    alg.field()
                )));
            }
        }
        let rep = Representation { field: alg.field(), dims, maps };
        for rel in alg.relations() {
            if !rep.path_map(rel).is_zero() {
                return Err(QuiverError::RelationViolated(rel.written(alg.quiver())));
            }
        }
        Ok(rep)
    }

    pub(crate) fn from_parts(field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation { field, dims, maps }
    }

    pub fn zero(alg: &QuiverAlgebra) -> Self {
        let f = alg.field();
        Representation {
            field: f,
            dims: vec![0; alg.vertex_count()],
            maps: alg.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
        }
    }

    /// The simple module at vertex `i`: dimension vector `e_i`, all arrows zero.
    pub fn simple(alg: &QuiverAlgebra, i: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[i] = 1;
        Self::with_zero_maps(alg, dims)
    }

    pub fn with_zero_maps(alg: &QuiverAlgebra, dims: Vec<usize>) -> Self {
        let f = alg.field();
        let maps = alg.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        Representation { field: f, dims, maps }
    }

    /// The indecomposable projective at `i`: basis at `j` is the basis paths from `i` to `j`.
    pub fn projective(alg: &QuiverAlgebra, i: usize) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let bases: Vec<Vec<&Path>> = (0..n).map(|j| alg.paths_between(i, j).collect()).collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
                for (col, p) in bases[a.source].iter().enumerate() {
                    if let Some(q) = alg.extend(p, idx) {
                        let row = bases[a.target].iter().position(|b| **b == q).expect("extension is a basis path");
                        m.set(row, col, f.one());
                    }
                }
                m
            })
            .collect();
        Representation { field: f, dims, maps }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn arrow_maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of a path, composing arrow maps in traversal order.
    pub fn path_map(&self, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dims[path.start]);
        for &a in &path.arrows {
            acc = self.maps[a].matmul(&acc);
        }
        acc
    }
}

/// Direct sum of several modules with block-diagonal arrow maps.
pub fn direct_sum(alg: &QuiverAlgebra, parts: &[&Representation]) -> Representation {
    let f = alg.field();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..alg.arrow_count())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[a]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    Representation { field: f, dims, maps }
}

/// Inclusion of summand `k` into the direct sum of `parts`.
pub fn summand_inclusion(alg: &QuiverAlgebra, parts: &[&Representation], k: usize) -> ModuleMap {
    let f = alg.field();
    let maps = (0..alg.vertex_count())
        .map(|v| {
            let total: usize = parts.iter().map(|p| p.dims[v]).sum();
            let offset: usize = parts[..k].iter().map(|p| p.dims[v]).sum();
            let mut m = Matrix::zeros(f, total, parts[k].dims[v]);
            m.set_block(offset, 0, &Matrix::identity(f, parts[k].dims[v]));
            m
        })
        .collect();
    ModuleMap { maps }
}

/// Projection of the direct sum of `parts` onto summand `k`.
pub fn summand_projection(alg: &QuiverAlgebra, parts: &[&Representation], k: usize) -> ModuleMap {
    let inc = summand_inclusion(alg, parts, k);
    ModuleMap { maps: inc.maps.iter().map(Matrix::transpose).collect() }
}

impl ModuleMap {
    /// Checks shapes and every commuting square `f_j * M_a == N_a * f_i`.
    pub fn new(
        alg: &QuiverAlgebra,
        source: &Representation,
        target: &Representation,
        maps: Vec<Matrix>,
    ) -> Result<Self, QuiverError> {
        let m = ModuleMap { maps };
        m.check(alg, source, target)?;
        Ok(m)
    }

    pub(crate) fn from_parts(maps: Vec<Matrix>) -> Self {
        ModuleMap { maps }
    }

    pub fn check(&self, alg: &QuiverAlgebra, source: &Representation, target: &Representation) -> Result<(), QuiverError> {
        if self.maps.len() != alg.vertex_count() {
            return Err(QuiverError::Shape("one matrix per vertex expected".into()));
        }
        for (v, m) in self.maps.iter().enumerate() {
            if m.shape() != (target.dims[v], source.dims[v]) {
                return Err(QuiverError::Shape(format!(
                    "vertex {} map is {:?}, expected {:?}",
                    v + 1,
                    m.shape(),
                    (target.dims[v], source.dims[v])
                )));
            }
        }
        for (idx, a) in alg.quiver().arrows().iter().enumerate() {
            let lhs = self.maps[a.target].matmul(&source.maps[idx]);
            let rhs = target.maps[idx].matmul(&self.maps[a.source]);
            if lhs != rhs {
                return Err(QuiverError::NotAModuleMap(a.label.clone()));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field;
        ModuleMap { maps: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Matrix::zeros(f, t, s)).collect() }
    }

    pub fn identity(rep: &Representation) -> Self {
        ModuleMap { maps: rep.dims.iter().map(|&d| Matrix::identity(rep.field, d)).collect() }
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.maps
    }

    pub(crate) fn matrices_mut(&mut self) -> &mut [Matrix] {
        &mut self.maps
    }

    pub fn into_matrices(self) -> Vec<Matrix> {
        self.maps
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&first.maps).map(|(a, b)| a.matmul(b)).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().map(Matrix::neg).collect() }
    }

    pub fn scale(&self, s: &crate::linalg::Scalar) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.maps.iter().map(Matrix::rank).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.rank() == m.rows())
    }

    /// Entries of every vertex matrix, concatenated; a coordinate vector in `Hom`.
    pub fn flatten(&self, field: Field) -> Matrix {
        let total: usize = self.maps.iter().map(|m| m.rows() * m.cols()).sum();
        let mut v = Matrix::zeros(field, total, 1);
        let mut k = 0;
        for m in &self.maps {
            for e in m.entries() {
                v.set(k, 0, e.clone());
                k += 1;
            }
        }
        v
    }

    /// Block matrix map between direct sums: `blocks[r][c]` maps summand `c` to summand `r`.
    pub fn from_blocks(
        alg: &QuiverAlgebra,
        sources: &[&Representation],
        targets: &[&Representation],
        blocks: &[Vec<Option<&ModuleMap>>],
    ) -> ModuleMap {
        let f = alg.field();
        let maps = (0..alg.vertex_count())
            .map(|v| {
                let rows: usize = targets.iter().map(|t| t.dims[v]).sum();
                let cols: usize = sources.iter().map(|s| s.dims[v]).sum();
                let mut m = Matrix::zeros(f, rows, cols);
                let mut r0 = 0;
                for (r, t) in targets.iter().enumerate() {
                    let mut c0 = 0;
                    for (c, s) in sources.iter().enumerate() {
                        if let Some(b) = blocks[r][c] {
                            m.set_block(r0, c0, &b.maps[v]);
                        }
                        c0 += s.dims[v];
                    }
                    r0 += t.dims[v];
                }
                m
            })
            .collect();
        ModuleMap { maps }
    }
}

/// Submodule spanned, vertex by vertex, by the columns of `basis` (which must be
/// linearly independent and arrow-stable). Returns the submodule and its inclusion.
pub fn submodule(
    alg: &QuiverAlgebra,
    rep: &Representation,
    basis: Vec<Matrix>,
) -> Result<(Representation, ModuleMap), QuiverError> {
    let f = alg.field();
    let dims: Vec<usize> = basis.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (idx, a) in alg.quiver().arrows().iter().enumerate() {
        let image = rep.maps[idx].matmul(&basis[a.source]);
        let m = if dims[a.source] == 0 {
            Matrix::zeros(f, dims[a.target], 0)
        } else {
            basis[a.target].solve(&image).map_err(|_| QuiverError::NotASubmodule(a.label.clone()))?
        };
        maps.push(m);
    }
    let sub = Representation { field: f, dims, maps };
    Ok((sub, ModuleMap { maps: basis }))
}

/// Quotient by the submodule spanned by the columns of `sub_basis`, using the
/// canonical RREF quotient map at each vertex. Returns the quotient and the projection.
pub fn quotient_module(
    alg: &QuiverAlgebra,
    rep: &Representation,
    sub_basis: &[Matrix],
) -> Result<(Representation, ModuleMap), QuiverError> {
    let qs: Vec<Matrix> = sub_basis.iter().map(Matrix::quotient_map).collect();
    let sections: Vec<Matrix> = qs.iter().map(section_of_rref).collect();
    let dims: Vec<usize> = qs.iter().map(Matrix::rows).collect();
    let mut maps = Vec::with_capacity(alg.arrow_count());
    for (idx, a) in alg.quiver().arrows().iter().enumerate() {
        if !qs[a.target].matmul(&rep.maps[idx]).matmul(&sub_basis[a.source]).is_zero() {
            return Err(QuiverError::NotASubmodule(a.label.clone()));
        }
        maps.push(qs[a.target].matmul(&rep.maps[idx]).matmul(&sections[a.source]));
    }
    Ok((Representation { field: rep.field, dims, maps }, ModuleMap { maps: qs }))
}

/// Right inverse of a full-row-rank RREF matrix: unit vectors at the pivot columns.
pub fn section_of_rref(q: &Matrix) -> Matrix {
    let f = q.field();
    let mut s = Matrix::zeros(f, q.cols(), q.rows());
    for r in 0..q.rows() {
        let pivot = (0..q.cols()).find(|&c| !q.get(r, c).is_zero()).expect("full row rank");
        s.set(pivot, r, f.one());
    }
    s
}

/// Kernel of a module map as a submodule of its source, on canonical bases.
pub fn kernel(alg: &QuiverAlgebra, source: &Representation, map: &ModuleMap) -> (Representation, ModuleMap) {
    let basis: Vec<Matrix> = map.maps.iter().map(|m| m.kernel_basis().column_space_basis()).collect();
    let basis = fix_empty(basis, source);
    submodule(alg, source, basis).expect("kernels are submodules")
}

/// Image of a module map as a submodule of its target, on canonical bases.
pub fn image(alg: &QuiverAlgebra, target: &Representation, map: &ModuleMap) -> (Representation, ModuleMap) {
    let basis: Vec<Matrix> = map.maps.iter().map(Matrix::column_space_basis).collect();
    let basis = fix_empty(basis, target);
    submodule(alg, target, basis).expect("images are submodules")
}

// zero-column bases must still have the ambient row count
fn fix_empty(basis: Vec<Matrix>, ambient: &Representation) -> Vec<Matrix> {
    basis
        .into_iter()
        .enumerate()
        .map(|(v, b)| if b.cols() == 0 { Matrix::zeros(ambient.field, ambient.dims[v], 0) } else { b })
        .collect()
}

/// A simple submodule `S_v` inside `rep`: a vector at `v` killed by every outgoing arrow.
/// Returns the vertex and the spanning vector; `None` only for the zero module.
pub fn simple_submodule(alg: &QuiverAlgebra, rep: &Representation) -> Option<(usize, Matrix)> {
    let f = alg.field();
    for &v in alg.quiver().topological_order().iter().rev() {
        if rep.dims[v] == 0 {
            continue;
        }
        let outgoing: Vec<&Matrix> = alg.quiver().outgoing(v).map(|(idx, _)| &rep.maps[idx]).collect();
        let stacked_rows: usize = outgoing.iter().map(|m| m.rows()).sum();
        let stacked = Matrix::vstack(f, rep.dims[v], &outgoing);
        debug_assert_eq!(stacked.rows(), stacked_rows);
        let k = stacked.kernel_basis().column_space_basis();
        if k.cols() > 0 {
            return Some((v, k.column(0)));
        }
    }
    None
}

/// Vertices of the composition factors, found by peeling simple submodules.
pub fn composition_factors(alg: &QuiverAlgebra, rep: &Representation) -> Vec<usize> {
    let f = alg.field();
    let mut factors = Vec::new();
    let mut current = rep.clone();
    while let Some((v, vec)) = simple_submodule(alg, &current) {
        factors.push(v);
        let basis: Vec<Matrix> = (0..alg.vertex_count())
            .map(|u| if u == v { vec.clone() } else { Matrix::zeros(f, current.dims[u], 0) })
            .collect();
        current = quotient_module(alg, &current, &basis).expect("simple submodule").0;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::algebra::Quiver;

    fn a3() -> QuiverAlgebra {
        QuiverAlgebra::path_algebra(Quiver::linear_a(3), Field::Rationals)
    }

    #[test]
    fn projective_dims() {
        let alg = a3();
        assert_eq!(Representation::projective(&alg, 0).dims(), &[1, 0, 0]);
        assert_eq!(Representation::projective(&alg, 1).dims(), &[1, 1, 0]);
        assert_eq!(Representation::projective(&alg, 2).dim_vector(), vec![1, 1, 1]);
    }

    #[test]
    fn simple_and_sum() {
        let alg = a3();
        assert_eq!(Representation::simple(&alg, 1).dims(), &[0, 1, 0]);
        let p3 = Representation::projective(&alg, 2);
        let s2 = Representation::simple(&alg, 1);
        let sum = direct_sum(&alg, &[&p3, &s2]);
        assert_eq!(sum.dim_vector(), vec![1, 2, 1]);
        let z = Representation::zero(&alg);
        assert_eq!(direct_sum(&alg, &[&p3, &z]), p3);
    }

    #[test]
    fn projective_satisfies_relations() {
        let q = Quiver::linear_a(3);
        let rel = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
        let alg = QuiverAlgebra::new(q, Field::Rationals, vec![rel]).unwrap();
        let p3 = Representation::projective(&alg, 2);
        assert_eq!(p3.dims(), &[0, 1, 1]);
        Representation::new(&alg, p3.dims().to_vec(), p3.arrow_maps().to_vec()).unwrap();
    }

    #[test]
    fn relation_violation_rejected() {
        let q = Quiver::linear_a(3);
        let rel = QuiverAlgebra::relation_from_labels(&q, &["a", "b"]).unwrap();
        let alg = QuiverAlgebra::new(q, Field::Rationals, vec![rel]).unwrap();
        let f = alg.field();
        let one = Matrix::identity(f, 1);
        let err = Representation::new(&alg, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, QuiverError::RelationViolated(_)));
    }

    #[test]
    fn composition_factors_of_projective() {
        let alg = a3();
        let p3 = Representation::projective(&alg, 2);
        let mut factors = composition_factors(&alg, &p3);
        factors.sort();
        assert_eq!(factors, vec![0, 1, 2]);
    }

    #[test]
    fn kernel_and_image() {
        let alg = a3();
        let p2 = Representation::projective(&alg, 1);
        let p3 = Representation::projective(&alg, 2);
        // P2 sits inside P3 as its radical
        let f = alg.field();
        let inc = ModuleMap::new(
            &alg,
            &p2,
            &p3,
            vec![Matrix::identity(f, 1), Matrix::identity(f, 1), Matrix::zeros(f, 1, 0)],
        )
        .unwrap();
        let (k, _) = kernel(&alg, &p2, &inc);
        assert!(k.is_zero());
        let (im, _) = image(&alg, &p3, &inc);
        assert_eq!(im.dims(), &[1, 1, 0]);
        let (q, proj) = quotient_module(&alg, &p3, &[Matrix::identity(f, 1), Matrix::identity(f, 1), Matrix::zeros(f, 1, 0)]).unwrap();
        assert_eq!(q.dims(), &[0, 0, 1]);
        proj.check(&alg, &p3, &q).unwrap();
    }
}
