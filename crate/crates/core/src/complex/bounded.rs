use crate::quiver::{direct_sum, projective_resolution, ModuleMap, QuiverAlgebra, Representation};

use super::maps::ChainMap;
use super::periodic::{modulo, PeriodicComplex};
use super::ComplexError;

/// A `Z`-graded complex supported on `[lo, hi]`: `components[k]` sits in degree `lo + k`
/// and `differentials[k]: V^{lo+k} -> V^{lo+k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    lo: i64,
    components: Vec<Representation>,
    differentials: Vec<ModuleMap>,
}

impl BoundedComplex {
    pub fn new(
        alg: &QuiverAlgebra,
        lo: i64,
        components: Vec<Representation>,
        differentials: Vec<ModuleMap>,
    ) -> Result<Self, ComplexError> {
        if components.is_empty() || differentials.len() + 1 != components.len() {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} components need {} differentials, got {}",
                components.len(),
                components.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            d.check(alg, &components[k], &components[k + 1])
                .map_err(|e| ComplexError::BadDifferential(k, e.to_string()))?;
        }
        for k in 1..differentials.len() {
            if !differentials[k].compose(&differentials[k - 1]).is_zero() {
                return Err(ComplexError::NotAComplex(k - 1));
            }
        }
        Ok(BoundedComplex { lo, components, differentials })
    }

    pub fn stalk(module: Representation, degree: i64) -> Self {
        BoundedComplex { lo: degree, components: vec![module], differentials: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn component(&self, degree: i64) -> Option<&Representation> {
        let k = degree - self.lo;
        (0..self.components.len() as i64).contains(&k).then(|| &self.components[k as usize])
    }

    pub fn differential(&self, degree: i64) -> Option<&ModuleMap> {
        let k = degree - self.lo;
        (0..self.differentials.len() as i64).contains(&k).then(|| &self.differentials[k as usize])
    }

    /// The projective resolution of `M`, with `P_k` in degree `-k`, and the augmentation `P_0 -> M`.
    pub fn projective_resolution(alg: &QuiverAlgebra, module: &Representation) -> (Self, ModuleMap) {
        let res = projective_resolution(alg, module);
        let len = res.terms.len();
        let components: Vec<Representation> = res.terms.iter().rev().cloned().collect();
        let differentials: Vec<ModuleMap> = res.differentials.iter().rev().cloned().collect();
        let lo = -(len as i64 - 1);
        (BoundedComplex { lo, components, differentials }, res.augmentation)
    }

    /// The covering functor: degree `i` of the result is the sum of `V^j` over `j = i mod m`,
    /// taken in increasing `j`.
    pub fn cover(&self, alg: &QuiverAlgebra, period: usize) -> PeriodicComplex {
        let degrees_in = |i: usize| -> Vec<i64> { (self.lo..=self.hi()).filter(|&j| modulo(j, period) == i).collect() };
        let zero = Representation::zero(alg);
        let components: Vec<Representation> = (0..period)
            .map(|i| {
                let parts: Vec<&Representation> =
                    degrees_in(i).iter().map(|&j| self.component(j).expect("in window")).collect();
                if parts.is_empty() {
                    zero.clone()
                } else {
                    direct_sum(alg, &parts)
                }
            })
            .collect();
        let differentials = (0..period)
            .map(|i| {
                let next = (i + 1) % period;
                let src_deg = degrees_in(i);
                let tgt_deg = degrees_in(next);
                let sources: Vec<&Representation> =
                    src_deg.iter().map(|&j| self.component(j).expect("in window")).collect();
                let targets: Vec<&Representation> =
                    tgt_deg.iter().map(|&j| self.component(j).expect("in window")).collect();
                if sources.is_empty() || targets.is_empty() {
                    return ModuleMap::zero(&components[i], &components[next]);
                }
                let blocks: Vec<Vec<Option<&ModuleMap>>> = tgt_deg
                    .iter()
                    .map(|&t| src_deg.iter().map(|&s| if t == s + 1 { self.differential(s) } else { None }).collect())
                    .collect();
                ModuleMap::from_blocks(alg, &sources, &targets, &blocks)
            })
            .collect();
        PeriodicComplex::from_parts(period, components, differentials)
    }
}

/// A window `[lo, hi]` of the unrolled complex, plus the differential leaving the window.
#[derive(Clone, Debug)]
pub struct Unrolled {
    pub complex: BoundedComplex,
    pub outgoing: ModuleMap,
    pub period: usize,
}

/// Degree `j` holds `V^{j mod m}` with differential `d^{j mod m}`.
pub fn unroll(v: &PeriodicComplex, lo: i64, hi: i64) -> Result<Unrolled, ComplexError> {
    if lo > hi {
        return Err(ComplexError::ShapeMismatch(format!("empty window [{lo}, {hi}]")));
    }
    let components = (lo..=hi).map(|j| v.component(j).clone()).collect();
    let differentials = (lo..hi).map(|j| v.differential(j).clone()).collect();
    Ok(Unrolled {
        complex: BoundedComplex { lo, components, differentials },
        outgoing: v.differential(hi).clone(),
        period: v.period(),
    })
}

impl Unrolled {
    /// For a window of width exactly one period, glues the window back into a periodic complex.
    pub fn refold(&self) -> Option<PeriodicComplex> {
        let m = self.period;
        if self.complex.components.len() != m {
            return None;
        }
        let lo = self.complex.lo;
        let components = (0..m)
            .map(|i| {
                let j = (lo..lo + m as i64).find(|&j| modulo(j, m) == i).unwrap();
                self.complex.component(j).unwrap().clone()
            })
            .collect();
        let differentials = (0..m)
            .map(|i| {
                let j = (lo..lo + m as i64).find(|&j| modulo(j, m) == i).unwrap();
                self.complex.differential(j).unwrap_or(&self.outgoing).clone()
            })
            .collect();
        Some(PeriodicComplex::from_parts(m, components, differentials))
    }
}

/// `cover(P(M), m) -> stalk(M, 0)` induced by the augmentation of a projective resolution.
pub fn resolution_model(alg: &QuiverAlgebra, module: &Representation, period: usize) -> (PeriodicComplex, ChainMap) {
    let (res, aug) = BoundedComplex::projective_resolution(alg, module);
    let covered = res.cover(alg, period);
    let stalk = PeriodicComplex::stalk(alg, period, module, 0);
    let f = alg.field();
    let maps = (0..period)
        .map(|i| {
            if i != 0 {
                return ModuleMap::zero(&covered.components()[i], &stalk.components()[i]);
            }
            // only the P^0 block of the degree-0 component maps, by the augmentation
            let degrees: Vec<i64> = (res.lo()..=res.hi()).filter(|&j| modulo(j, period) == 0).collect();
            let mats = (0..alg.vertex_count())
                .map(|v| {
                    let blocks: Vec<crate::linalg::Matrix> = degrees
                        .iter()
                        .map(|&j| {
                            let c = res.component(j).unwrap();
                            if j == 0 {
                                aug.at(v).clone()
                            } else {
                                crate::linalg::Matrix::zeros(f, module.dims()[v], c.dims()[v])
                            }
                        })
                        .collect();
                    let refs: Vec<&crate::linalg::Matrix> = blocks.iter().collect();
                    crate::linalg::Matrix::hstack(f, module.dims()[v], &refs)
                })
                .collect();
            ModuleMap::from_parts(mats)
        })
        .collect();
    let chain = ChainMap::new(alg, &covered, &stalk, maps).expect("augmentation is a chain map");
    (covered, chain)
}
