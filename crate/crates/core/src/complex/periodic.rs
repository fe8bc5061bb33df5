use sha2::{Digest, Sha256};

use crate::linalg::Matrix;
use crate::quiver::{direct_sum, ModuleMap, QuiverAlgebra, Representation};

use super::ComplexError;

/// An `m`-periodic complex: modules `V^i`, `i in Z_m`, and module maps
/// `d^i: V^i -> V^{i+1 mod m}` with `d^{i+1} d^i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicComplex {
    period: usize,
    components: Vec<Representation>,
    differentials: Vec<ModuleMap>,
}

/// Canonical identifier of a complex: SHA-256 of its exact data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentKey(pub [u8; 32]);

impl std::fmt::Display for ContentKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub(crate) fn modulo(i: i64, m: usize) -> usize {
    i.rem_euclid(m as i64) as usize
}

impl PeriodicComplex {
    /// Validates shapes, module-map squares and `d^{i+1} d^i = 0` for all `i`.
    pub fn new(
        alg: &QuiverAlgebra,
        period: usize,
        components: Vec<Representation>,
        differentials: Vec<ModuleMap>,
    ) -> Result<Self, ComplexError> {
        if period == 0 {
            return Err(ComplexError::ShapeMismatch("period must be positive".into()));
        }
        if components.len() != period || differentials.len() != period {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} components and {} differentials for period {period}",
                components.len(),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            d.check(alg, &components[i], &components[(i + 1) % period])
                .map_err(|e| ComplexError::BadDifferential(i, e.to_string()))?;
        }
        let v = PeriodicComplex { period, components, differentials };
        for i in 0..period {
            if !v.differential_square(i).is_zero() {
                return Err(ComplexError::NotAComplex(i));
            }
        }
        Ok(v)
    }

    pub(crate) fn from_parts(period: usize, components: Vec<Representation>, differentials: Vec<ModuleMap>) -> Self {
        PeriodicComplex { period, components, differentials }
    }

    /// `d^{i+1} d^i`.
    pub fn differential_square(&self, i: usize) -> ModuleMap {
        let next = (i + 1) % self.period;
        self.differentials[next].compose(&self.differentials[i])
    }

    pub fn zero(alg: &QuiverAlgebra, period: usize) -> Self {
        Self::stalk(alg, period, &Representation::zero(alg), 0)
    }

    /// `M` in degree `i mod m`, zero elsewhere.
    pub fn stalk(alg: &QuiverAlgebra, period: usize, module: &Representation, degree: i64) -> Self {
        let at = modulo(degree, period);
        let zero = Representation::zero(alg);
        let components: Vec<Representation> =
            (0..period).map(|i| if i == at { module.clone() } else { zero.clone() }).collect();
        let differentials =
            (0..period).map(|i| ModuleMap::zero(&components[i], &components[(i + 1) % period])).collect();
        PeriodicComplex { period, components, differentials }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn component(&self, i: i64) -> &Representation {
        &self.components[modulo(i, self.period)]
    }

    pub fn components(&self) -> &[Representation] {
        &self.components
    }

    pub fn differential(&self, i: i64) -> &ModuleMap {
        &self.differentials[modulo(i, self.period)]
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Representation::is_zero)
    }

    /// Number of degrees with a nonzero component.
    pub fn support_size(&self) -> usize {
        self.components.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn has_zero_differentials(&self) -> bool {
        self.differentials.iter().all(ModuleMap::is_zero)
    }

    /// `V[k]`: components `V^{i+k}` and differentials `(-1)^k d^{i+k}`.
    pub fn shift(&self, k: i64) -> Self {
        let m = self.period;
        let f = self.field_sign(k);
        let components = (0..m).map(|i| self.components[modulo(i as i64 + k, m)].clone()).collect();
        let differentials = (0..m)
            .map(|i| {
                let d = &self.differentials[modulo(i as i64 + k, m)];
                match &f {
                    Some(neg_one) => d.scale(neg_one),
                    None => d.clone(),
                }
            })
            .collect();
        PeriodicComplex { period: m, components, differentials }
    }

    fn field_sign(&self, k: i64) -> Option<crate::linalg::Scalar> {
        if k.rem_euclid(2) == 0 {
            return None;
        }
        self.components.first().map(|c| c.field().from_i64(-1))
    }

    /// Content hash over period, dimensions and every matrix entry.
    pub fn content_key(&self) -> ContentKey {
        let mut h = Sha256::new();
        h.update((self.period as u64).to_le_bytes());
        let feed = |m: &Matrix, h: &mut Sha256| {
            h.update((m.rows() as u64).to_le_bytes());
            h.update((m.cols() as u64).to_le_bytes());
            for e in m.entries() {
                h.update(e.to_string().as_bytes());
                h.update(b",");
            }
        };
        for c in &self.components {
            h.update(b"C");
            for d in c.dims() {
                h.update((*d as u64).to_le_bytes());
            }
            for a in c.arrow_maps() {
                feed(a, &mut h);
            }
        }
        for d in &self.differentials {
            h.update(b"D");
            for mat in d.matrices() {
                feed(mat, &mut h);
            }
        }
        ContentKey(h.finalize().into())
    }
}

/// Degreewise direct sum with block-diagonal differentials.
pub fn direct_sum_complex(alg: &QuiverAlgebra, parts: &[&PeriodicComplex]) -> PeriodicComplex {
    let m = parts[0].period;
    assert!(parts.iter().all(|p| p.period == m), "periods differ");
    let components: Vec<Representation> = (0..m)
        .map(|i| {
            let reps: Vec<&Representation> = parts.iter().map(|p| &p.components[i]).collect();
            direct_sum(alg, &reps)
        })
        .collect();
    let differentials = (0..m)
        .map(|i| {
            let next = (i + 1) % m;
            let sources: Vec<&Representation> = parts.iter().map(|p| &p.components[i]).collect();
            let targets: Vec<&Representation> = parts.iter().map(|p| &p.components[next]).collect();
            let blocks: Vec<Vec<Option<&ModuleMap>>> = (0..parts.len())
                .map(|r| (0..parts.len()).map(|c| (r == c).then(|| &parts[r].differentials[i])).collect())
                .collect();
            ModuleMap::from_blocks(alg, &sources, &targets, &blocks)
        })
        .collect();
    PeriodicComplex { period: m, components, differentials }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::Quiver;

    fn k() -> QuiverAlgebra {
        QuiverAlgebra::path_algebra(Quiver::new(1, vec![]).unwrap(), Field::Rationals)
    }

    fn nilpotent_one_periodic(alg: &QuiverAlgebra) -> PeriodicComplex {
        let f = alg.field();
        let v = Representation::with_zero_maps(alg, vec![2]);
        let d = ModuleMap::new(alg, &v, &v, vec![Matrix::from_rows(f, &[&[0, 1], &[0, 0]])]).unwrap();
        PeriodicComplex::new(alg, 1, vec![v], vec![d]).unwrap()
    }

    #[test]
    fn make_complex_examples() {
        let alg = k();
        let s = Representation::simple(&alg, 0);
        for m in 1..4 {
            let st = PeriodicComplex::stalk(&alg, m, &s, 1);
            PeriodicComplex::new(&alg, m, st.components().to_vec(), st.differentials().to_vec()).unwrap();
        }
        nilpotent_one_periodic(&alg);
        let v = Representation::with_zero_maps(&alg, vec![2]);
        let f = alg.field();
        let d = ModuleMap::new(&alg, &v, &v, vec![Matrix::from_rows(f, &[&[1, 1], &[0, 0]])]).unwrap();
        assert_eq!(PeriodicComplex::new(&alg, 1, vec![v.clone()], vec![d]), Err(ComplexError::NotAComplex(0)));
        assert!(matches!(
            PeriodicComplex::new(&alg, 2, vec![v.clone()], vec![]),
            Err(ComplexError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn shift_examples() {
        let alg = k();
        let v = nilpotent_one_periodic(&alg);
        assert_eq!(v.shift(0), v);
        assert_eq!(v.shift(1).shift(-1), v);
        let shifted = v.shift(1);
        assert_eq!(shifted.components(), v.components());
        assert_eq!(shifted.differentials()[0], v.differentials()[0].neg());
        assert_ne!(shifted.content_key(), v.content_key());
    }

    #[test]
    fn stalk_shift_moves_degree() {
        let alg = k();
        let s = Representation::simple(&alg, 0);
        let st = PeriodicComplex::stalk(&alg, 3, &s, 0);
        assert_eq!(st.shift(1), PeriodicComplex::stalk(&alg, 3, &s, -1));
        assert_eq!(st.shift(3), st);
    }
}
