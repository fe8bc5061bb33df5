use std::collections::BTreeMap;

use crate::complex::{ChainMap, ContentKey, PeriodicComplex};
use crate::linalg::Matrix;
use crate::quiver::{kernel, quotient_module, ModuleMap, QuiverAlgebra, Representation};

use super::GrothendieckError;

/// `0 -> left -> middle -> right -> 0`, degreewise exact, with explicit maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub left: PeriodicComplex,
    pub middle: PeriodicComplex,
    pub right: PeriodicComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl ShortExactSequence {
    /// Re-validates the three complexes and both chain maps, then checks exactness
    /// vertex by vertex. Inclusions must be in reduced column echelon form and
    /// projections in reduced row echelon form.
    pub fn verify(&self, alg: &QuiverAlgebra) -> Result<(), String> {
        for (name, c) in [("left", &self.left), ("middle", &self.middle), ("right", &self.right)] {
            PeriodicComplex::new(alg, c.period(), c.components().to_vec(), c.differentials().to_vec())
                .map_err(|e| format!("{name} term: {e}"))?;
        }
        self.inclusion.check(alg, &self.left, &self.middle).map_err(|e| format!("inclusion: {e}"))?;
        self.projection.check(alg, &self.middle, &self.right).map_err(|e| format!("projection: {e}"))?;
        for i in 0..self.middle.period() {
            for v in 0..alg.vertex_count() {
                let a = self.inclusion.degree(i).at(v);
                let b = self.projection.degree(i).at(v);
                if a.rank() != a.cols() {
                    return Err(format!("inclusion not injective at degree {i}, vertex {v}"));
                }
                if b.rank() != b.rows() {
                    return Err(format!("projection not surjective at degree {i}, vertex {v}"));
                }
                if !b.matmul(a).is_zero() {
                    return Err(format!("composite nonzero at degree {i}, vertex {v}"));
                }
                if a.cols() + b.rows() != a.rows() {
                    return Err(format!("dimensions do not add at degree {i}, vertex {v}"));
                }
                if !a.transpose().is_rref() || !b.is_rref() {
                    return Err(format!("maps not in canonical echelon form at degree {i}, vertex {v}"));
                }
            }
        }
        Ok(())
    }

    /// `[left] - [middle] + [right]` in the free group on content keys.
    pub fn relation(&self) -> BTreeMap<ContentKey, i64> {
        let mut r = BTreeMap::new();
        accumulate(&mut r, self.left.content_key(), 1);
        accumulate(&mut r, self.middle.content_key(), -1);
        accumulate(&mut r, self.right.content_key(), 1);
        r
    }
}

fn accumulate(r: &mut BTreeMap<ContentKey, i64>, key: ContentKey, k: i64) {
    let e = r.entry(key).or_insert(0);
    *e += k;
    if *e == 0 {
        r.remove(&key);
    }
}

/// One induction step at degree `i`. `U` replaces `V^i` by the cycles `Z^i(V)`,
/// and `W` is `V` with degree `i` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorskyStep {
    pub degree: usize,
    /// `U -> V -> V^i / Z^i(V)`
    pub quotient: ShortExactSequence,
    /// `Z^i(V) -> U -> W`
    pub cycles: ShortExactSequence,
    /// `Σ^m U -> Σ^m V -> V^i / Z^i(V)`
    pub quotient_twisted: ShortExactSequence,
    /// `Z^i(V) -> Σ^m U -> Σ^m W`
    pub cycles_twisted: ShortExactSequence,
}

impl GorskyStep {
    pub fn v(&self) -> &PeriodicComplex {
        &self.quotient.middle
    }

    pub fn u(&self) -> &PeriodicComplex {
        &self.quotient.left
    }

    pub fn w(&self) -> &PeriodicComplex {
        &self.cycles.right
    }

    pub fn sequences(&self) -> [&ShortExactSequence; 4] {
        [&self.quotient, &self.cycles, &self.quotient_twisted, &self.cycles_twisted]
    }
}

/// No further step applies: at most one nonzero component and no differential.
pub fn is_gorsky_leaf(v: &PeriodicComplex) -> bool {
    v.support_size() == 0 || (v.support_size() == 1 && v.has_zero_differentials())
}

/// The step at the first nonzero degree, or `None` at a leaf.
pub fn gorsky_step(alg: &QuiverAlgebra, v: &PeriodicComplex) -> Option<GorskyStep> {
    if is_gorsky_leaf(v) {
        return None;
    }
    let m = v.period();
    let i = (0..m).find(|&j| !v.components()[j].is_zero())?;
    let vi = &v.components()[i];
    let (z, incl) = kernel(alg, vi, &v.differentials()[i]);
    let (q, proj) = quotient_module(alg, vi, incl.matrices()).expect("cycles form a submodule");
    let zero = Representation::zero(alg);

    let mut u_comps = v.components().to_vec();
    u_comps[i] = z.clone();
    let u_diffs: Vec<ModuleMap> = (0..m)
        .map(|j| {
            let next = (j + 1) % m;
            if j == i {
                ModuleMap::zero(&z, &u_comps[next])
            } else if next == i {
                let d = &v.differentials()[j];
                let parts = (0..alg.vertex_count())
                    .map(|vert| incl.at(vert).solve(d.at(vert)).expect("boundaries are cycles"))
                    .collect();
                ModuleMap::from_parts(parts)
            } else {
                v.differentials()[j].clone()
            }
        })
        .collect();
    let u = PeriodicComplex::from_parts(m, u_comps, u_diffs);

    let mut w_comps = v.components().to_vec();
    w_comps[i] = zero.clone();
    let w_diffs: Vec<ModuleMap> = (0..m)
        .map(|j| {
            let next = (j + 1) % m;
            if j == i || next == i {
                ModuleMap::zero(&w_comps[j], &w_comps[next])
            } else {
                v.differentials()[j].clone()
            }
        })
        .collect();
    let w = PeriodicComplex::from_parts(m, w_comps, w_diffs);

    let qs = PeriodicComplex::stalk(alg, m, &q, i as i64);
    let zs = PeriodicComplex::stalk(alg, m, &z, i as i64);

    let degreewise = |at_i: ModuleMap, other: &dyn Fn(usize) -> ModuleMap| -> ChainMap {
        let mut at_i = Some(at_i);
        ChainMap::from_parts((0..m).map(|j| if j == i { at_i.take().unwrap() } else { other(j) }).collect())
    };
    let u_to_v = degreewise(incl.clone(), &|j| ModuleMap::identity(&v.components()[j]));
    let v_to_q = degreewise(proj, &|j| ModuleMap::zero(&v.components()[j], &zero));
    let z_to_u = degreewise(ModuleMap::identity(&z), &|j| ModuleMap::zero(&zero, &u.components()[j]));
    let u_to_w = degreewise(ModuleMap::zero(&z, &zero), &|j| ModuleMap::identity(&u.components()[j]));

    let sm = m as i64;
    let (su, sv, sw) = (u.shift(sm), v.shift(sm), w.shift(sm));
    let quotient = ShortExactSequence {
        left: u.clone(),
        middle: v.clone(),
        right: qs.clone(),
        inclusion: u_to_v.clone(),
        projection: v_to_q.clone(),
    };
    let cycles = ShortExactSequence {
        left: zs.clone(),
        middle: u,
        right: w,
        inclusion: z_to_u.clone(),
        projection: u_to_w.clone(),
    };
    let quotient_twisted =
        ShortExactSequence { left: su.clone(), middle: sv, right: qs, inclusion: u_to_v, projection: v_to_q };
    let cycles_twisted = ShortExactSequence { left: zs, middle: su, right: sw, inclusion: z_to_u, projection: u_to_w };
    Some(GorskyStep { degree: i, quotient, cycles, quotient_twisted, cycles_twisted })
}

/// The full induction for one complex: a chain of steps `V = V_0, W_0 = V_1, ...`
/// ending at a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorskyWitness {
    period: usize,
    root: PeriodicComplex,
    steps: Vec<GorskyStep>,
}

impl GorskyWitness {
    pub fn period(&self) -> usize {
        self.period
    }

    pub fn root(&self) -> &PeriodicComplex {
        &self.root
    }

    pub fn steps(&self) -> &[GorskyStep] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn leaf(&self) -> &PeriodicComplex {
        self.steps.last().map_or(&self.root, GorskyStep::w)
    }

    /// Number of scalar entries across all maps of all sequences.
    pub fn entry_count(&self) -> usize {
        self.maps().map(|m| m.rows() * m.cols()).sum()
    }

    fn maps(&self) -> impl Iterator<Item = &Matrix> {
        self.steps.iter().flat_map(|s| {
            s.sequences().into_iter().flat_map(|seq| {
                [&seq.inclusion, &seq.projection]
                    .into_iter()
                    .flat_map(|f| f.maps().iter().flat_map(|mm| mm.matrices().iter()))
            })
        })
    }

    /// Adds one to the `k`-th scalar entry (mod [`entry_count`](Self::entry_count)).
    /// Returns `false` when the witness has no entries to perturb.
    pub fn perturb(&mut self, k: usize) -> bool {
        let total = self.entry_count();
        if total == 0 {
            return false;
        }
        let mut k = k % total;
        for step in &mut self.steps {
            let GorskyStep { quotient, cycles, quotient_twisted, cycles_twisted, .. } = step;
            for seq in [quotient, cycles, quotient_twisted, cycles_twisted] {
                for f in [&mut seq.inclusion, &mut seq.projection] {
                    for mm in f.maps_mut() {
                        for mat in mm.matrices_mut() {
                            let size = mat.rows() * mat.cols();
                            if k < size {
                                let (r, c) = (k / mat.cols(), k % mat.cols());
                                let field = mat.field();
                                let bumped = field.add(mat.get(r, c), &field.one());
                                mat.set(r, c, bumped);
                                return true;
                            }
                            k -= size;
                        }
                    }
                }
            }
        }
        unreachable!("index reduced modulo the entry count")
    }

    /// Relations whose signed sum is `2[V]`: the rotation chain
    /// `[Σ^k V] + [Σ^{k+1} V]` with sign `(-1)^k`, then per step
    /// `-(quotient + cycles) + (quotient_twisted + cycles_twisted)`.
    pub fn doubling_relations(&self) -> Vec<(BTreeMap<ContentKey, i64>, i64)> {
        let mut out = Vec::new();
        for k in 0..self.period as i64 {
            let mut r = BTreeMap::new();
            accumulate(&mut r, self.root.shift(k).content_key(), 1);
            accumulate(&mut r, self.root.shift(k + 1).content_key(), 1);
            out.push((r, if k % 2 == 0 { 1 } else { -1 }));
        }
        for s in &self.steps {
            out.push((s.quotient.relation(), -1));
            out.push((s.cycles.relation(), -1));
            out.push((s.quotient_twisted.relation(), 1));
            out.push((s.cycles_twisted.relation(), 1));
        }
        out
    }
}

/// Runs the induction on a complex of odd period.
pub fn gorsky_witness(alg: &QuiverAlgebra, v: &PeriodicComplex) -> Result<GorskyWitness, GrothendieckError> {
    let m = v.period();
    if m % 2 == 0 {
        return Err(GrothendieckError::EvenPeriod(m));
    }
    let mut steps = Vec::new();
    let mut current = v.clone();
    while let Some(step) = gorsky_step(alg, &current) {
        current = step.w().clone();
        steps.push(step);
    }
    Ok(GorskyWitness { period: m, root: v.clone(), steps })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("witness rejected{}{}: {reason}", step.map(|s| format!(" at step {s}")).unwrap_or_default(), sequence.map(|s| format!(", sequence {s}")).unwrap_or_default())]
pub struct WitnessError {
    pub step: Option<usize>,
    pub sequence: Option<usize>,
    pub reason: String,
}

fn reject(step: Option<usize>, sequence: Option<usize>, reason: impl Into<String>) -> WitnessError {
    WitnessError { step, sequence, reason: reason.into() }
}

fn is_stalk_at(c: &PeriodicComplex, degree: usize) -> bool {
    c.has_zero_differentials() && c.components().iter().enumerate().all(|(j, x)| j == degree || x.is_zero())
}

/// Checks every sequence, how consecutive steps fit together, the decreasing
/// support size, and that the relations combine to `2[V]` formally.
pub fn verify_witness(alg: &QuiverAlgebra, w: &GorskyWitness) -> Result<(), WitnessError> {
    let m = w.period;
    if m % 2 == 0 || w.root.period() != m {
        return Err(reject(None, None, format!("period {m} is not odd")));
    }
    if w.steps.len() > m {
        return Err(reject(None, None, format!("depth {} exceeds the period", w.steps.len())));
    }
    let sm = m as i64;
    let mut current = &w.root;
    for (s, step) in w.steps.iter().enumerate() {
        let here = Some(s);
        if step.v() != current {
            return Err(reject(here, Some(0), "middle term is not the complex being split"));
        }
        if step.degree >= m {
            return Err(reject(here, None, "degree out of range"));
        }
        for (k, seq) in step.sequences().into_iter().enumerate() {
            seq.verify(alg).map_err(|e| reject(here, Some(k), e))?;
        }
        let u = step.u();
        let checks: [(bool, usize, &str); 8] = [
            (&step.cycles.middle == u, 1, "U differs between sequences"),
            (is_stalk_at(&step.quotient.right, step.degree), 0, "quotient term is not a stalk"),
            (is_stalk_at(&step.cycles.left, step.degree), 1, "cycle term is not a stalk"),
            (step.quotient_twisted.left == u.shift(sm) && step.quotient_twisted.middle == current.shift(sm), 2, "twisted terms are not shifts"),
            (step.quotient_twisted.right == step.quotient.right, 2, "twisted quotient term differs"),
            (step.cycles_twisted.left == step.cycles.left, 3, "twisted cycle term differs"),
            (step.cycles_twisted.middle == u.shift(sm) && step.cycles_twisted.right == step.w().shift(sm), 3, "twisted terms are not shifts"),
            (step.w().components()[step.degree].is_zero(), 1, "W is nonzero at the split degree"),
        ];
        if let Some((_, k, why)) = checks.iter().find(|c| !c.0) {
            return Err(reject(here, Some(*k), *why));
        }
        if step.w().support_size() >= current.support_size() {
            return Err(reject(here, Some(1), "support does not shrink"));
        }
        current = step.w();
    }
    if !is_gorsky_leaf(current) {
        return Err(reject(None, None, "chain does not end at a leaf"));
    }
    let mut total = BTreeMap::new();
    for (rel, k) in w.doubling_relations() {
        for (key, c) in rel {
            accumulate(&mut total, key, k * c);
        }
    }
    let expected: BTreeMap<ContentKey, i64> = [(w.root.content_key(), 2)].into_iter().collect();
    if total != expected {
        return Err(reject(None, None, "relations do not combine to 2[V]"));
    }
    Ok(())
}
