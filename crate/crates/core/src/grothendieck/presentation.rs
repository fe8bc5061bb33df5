use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complex::{cone, random_chain_map, random_complex, ChainMap, ComplexError, ContentKey, PeriodicComplex};
use crate::linalg::{invariants_from_diagonal, GroupInvariants, IntMatrix};
use crate::quiver::{quotient_module, simple_submodule, QuiverAlgebra, Representation};

use super::class::{class_of, K0Class, Parity};
use super::gorsky::{gorsky_step, is_gorsky_leaf};
use super::GrothendieckError;

/// How many random objects to draw, how large, and from which seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub count: usize,
    pub max_dim: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `[0] = 0`
    Zero,
    /// `[X] + [X[1]] = 0`, from `X -> 0 -> X[1] -> X[1]`
    Rotation,
    /// `[X] - [Y] + [cone f] = 0`
    Cone,
    /// `[S] - [M] + [M/S] = 0` for stalks of modules in degree 0
    Composition,
    GorskyQuotient,
    GorskyCycles,
    GorskyQuotientTwisted,
    GorskyCyclesTwisted,
}

/// A formal combination of object ids that vanishes in the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub terms: Vec<(usize, i64)>,
}

fn normalize(terms: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for &(id, c) in terms {
        *acc.entry(id).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

type StepRelations = [Option<usize>; 4];

/// A finite presentation: objects of the periodic derived category interned by
/// content key, and relations coming from triangles among them.
///
/// The simple stalks in degree 0 get ids `0..n`, the zero complex id `n`.
pub struct Presentation<'a> {
    alg: &'a QuiverAlgebra,
    period: usize,
    objects: Vec<PeriodicComplex>,
    index: HashMap<ContentKey, usize>,
    relations: Vec<Relation>,
    relation_index: HashMap<Vec<(usize, i64)>, usize>,
    sampled: Vec<usize>,
    rotations: HashMap<usize, Vec<Option<usize>>>,
    chains: HashMap<usize, Vec<StepRelations>>,
    modules_done: HashSet<usize>,
    doubling: Vec<(usize, Vec<(usize, i64)>)>,
}

impl<'a> Presentation<'a> {
    pub fn new(alg: &'a QuiverAlgebra, period: usize) -> Self {
        let mut p = Presentation {
            alg,
            period,
            objects: Vec::new(),
            index: HashMap::new(),
            relations: Vec::new(),
            relation_index: HashMap::new(),
            sampled: Vec::new(),
            rotations: HashMap::new(),
            chains: HashMap::new(),
            modules_done: HashSet::new(),
            doubling: Vec::new(),
        };
        for v in 0..alg.vertex_count() {
            p.intern(PeriodicComplex::stalk(alg, period, &Representation::simple(alg, v), 0));
        }
        let zero = p.intern(PeriodicComplex::zero(alg, period));
        p.relate(RelationKind::Zero, &[(zero, 1)]);
        p
    }

    /// The standard schedule: stalks of simples and projectives in every degree,
    /// `count` random complexes, then `count / 2` cones of random maps between them.
    pub fn sample(alg: &'a QuiverAlgebra, period: usize, cfg: &SamplerConfig) -> Self {
        let mut p = Presentation::new(alg, period);
        for v in 0..alg.vertex_count() {
            for module in [Representation::simple(alg, v), Representation::projective(alg, v)] {
                for i in 0..period as i64 {
                    p.add_sampled(PeriodicComplex::stalk(alg, period, &module, i));
                }
            }
        }
        let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
        let seeds: Vec<u64> = (0..cfg.count).map(|_| master.gen()).collect();
        let randoms: Vec<PeriodicComplex> = seeds
            .par_iter()
            .map(|&s| random_complex(alg, period, cfg.max_dim, &mut ChaCha8Rng::seed_from_u64(s)))
            .collect();
        let cone_seeds: Vec<u64> = if randoms.is_empty() { Vec::new() } else { (0..cfg.count / 2).map(|_| master.gen()).collect() };
        let cones: Vec<(usize, usize, PeriodicComplex)> = cone_seeds
            .par_iter()
            .map(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let a = rng.gen_range(0..randoms.len());
                let b = rng.gen_range(0..randoms.len());
                let f = random_chain_map(alg, &randoms[a], &randoms[b], &mut rng);
                let c = cone(alg, &randoms[a], &randoms[b], &f).expect("random chain maps are chain maps");
                (a, b, c.complex)
            })
            .collect();
        let ids: Vec<usize> = randoms.into_iter().map(|v| p.add_sampled(v)).collect();
        for (a, b, c) in cones {
            let c = p.add_sampled(c);
            p.relate(RelationKind::Cone, &[(ids[a], 1), (ids[b], -1), (c, 1)]);
        }
        p
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn objects(&self) -> &[PeriodicComplex] {
        &self.objects
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn sampled(&self) -> &[usize] {
        &self.sampled
    }

    pub fn id_of(&self, v: &PeriodicComplex) -> Option<usize> {
        self.index.get(&v.content_key()).copied()
    }

    /// For odd periods: per sampled object, relation ids with coefficients summing to `2[X]`.
    pub fn doubling_certificates(&self) -> &[(usize, Vec<(usize, i64)>)] {
        &self.doubling
    }

    fn intern(&mut self, v: PeriodicComplex) -> usize {
        let key = v.content_key();
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.objects.len();
        self.objects.push(v);
        self.index.insert(key, id);
        id
    }

    /// Records `sum c [X_id] = 0`. Returns `None` for an empty relation, and the existing id for a repeat.
    pub fn relate(&mut self, kind: RelationKind, terms: &[(usize, i64)]) -> Option<usize> {
        let terms = normalize(terms);
        if terms.is_empty() {
            return None;
        }
        if let Some(&id) = self.relation_index.get(&terms) {
            return Some(id);
        }
        let id = self.relations.len();
        self.relation_index.insert(terms.clone(), id);
        self.relations.push(Relation { kind, terms });
        Some(id)
    }

    /// Adds `v` with its rotation orbit and its decomposition into stalks.
    pub fn add_sampled(&mut self, v: PeriodicComplex) -> usize {
        let id = self.intern(v);
        if self.sampled.contains(&id) {
            return id;
        }
        self.sampled.push(id);
        let rotations = self.rotate(id);
        let chain = self.decompose(id);
        if self.period % 2 == 1 {
            let mut combo: Vec<(usize, i64)> = Vec::new();
            for k in 0..self.period {
                if let Some(r) = rotations[k % rotations.len()] {
                    combo.push((r, if k % 2 == 0 { 1 } else { -1 }));
                }
            }
            for step in &chain {
                for (r, c) in step.iter().zip([-1, -1, 1, 1]) {
                    if let Some(r) = r {
                        combo.push((*r, c));
                    }
                }
            }
            self.doubling.push((id, combo));
        }
        id
    }

    /// Adds the triangle `V -> W -> cone f -> V[1]`, sampling all three objects.
    pub fn add_cone(&mut self, v: &PeriodicComplex, w: &PeriodicComplex, f: &ChainMap) -> Result<usize, ComplexError> {
        let c = cone(self.alg, v, w, f)?;
        let a = self.add_sampled(v.clone());
        let b = self.add_sampled(w.clone());
        let c = self.add_sampled(c.complex);
        self.relate(RelationKind::Cone, &[(a, 1), (b, -1), (c, 1)]);
        Ok(c)
    }

    /// Rotation relations along the orbit `X, X[1], X[2], ...` until it closes.
    fn rotate(&mut self, id: usize) -> Vec<Option<usize>> {
        if let Some(r) = self.rotations.get(&id) {
            return r.clone();
        }
        let start = self.objects[id].content_key();
        let mut ids = Vec::new();
        let mut current = id;
        for _ in 0..2 * self.period {
            let next_obj = self.objects[current].shift(1);
            let closes = next_obj.content_key() == start;
            let next = self.intern(next_obj);
            ids.push(self.relate(RelationKind::Rotation, &[(current, 1), (next, 1)]));
            if closes {
                break;
            }
            current = next;
        }
        self.rotations.insert(id, ids.clone());
        ids
    }

    fn decompose(&mut self, id: usize) -> Vec<StepRelations> {
        if let Some(c) = self.chains.get(&id) {
            return c.clone();
        }
        let v = self.objects[id].clone();
        let chain = if v.is_zero() {
            Vec::new()
        } else if is_gorsky_leaf(&v) {
            let (i, module) = v.components().iter().enumerate().find(|(_, c)| !c.is_zero()).expect("nonzero leaf");
            let module = module.clone();
            if i != 0 {
                self.rotate(id);
            }
            self.decompose_module(&module);
            Vec::new()
        } else {
            let step = gorsky_step(self.alg, &v).expect("not a leaf");
            let odd = self.period % 2 == 1;
            let mut rels: StepRelations = [None; 4];
            let seqs = step.sequences();
            let count = if odd { 4 } else { 2 };
            let kinds = [
                RelationKind::GorskyQuotient,
                RelationKind::GorskyCycles,
                RelationKind::GorskyQuotientTwisted,
                RelationKind::GorskyCyclesTwisted,
            ];
            for k in 0..count {
                let s = seqs[k];
                let l = self.intern(s.left.clone());
                let m = self.intern(s.middle.clone());
                let r = self.intern(s.right.clone());
                rels[k] = self.relate(kinds[k], &[(l, 1), (m, -1), (r, 1)]);
            }
            let q = self.intern(step.quotient.right.clone());
            let z = self.intern(step.cycles.left.clone());
            let w = self.intern(step.w().clone());
            self.decompose(q);
            self.decompose(z);
            let mut chain = vec![rels];
            chain.extend(self.decompose(w));
            chain
        };
        self.chains.insert(id, chain.clone());
        chain
    }

    /// Peels simple submodules off `M`, relating stalks in degree 0.
    fn decompose_module(&mut self, module: &Representation) {
        let id = self.intern(PeriodicComplex::stalk(self.alg, self.period, module, 0));
        if !self.modules_done.insert(id) || module.total_dim() <= 1 {
            return;
        }
        let f = self.alg.field();
        let (v, vec) = simple_submodule(self.alg, module).expect("nonzero module");
        let basis: Vec<_> = (0..self.alg.vertex_count())
            .map(|u| if u == v { vec.clone() } else { crate::linalg::Matrix::zeros(f, module.dims()[u], 0) })
            .collect();
        let (quot, _) = quotient_module(self.alg, module, &basis).expect("simple submodule");
        let q = self.intern(PeriodicComplex::stalk(self.alg, self.period, &quot, 0));
        self.relate(RelationKind::Composition, &[(v, 1), (id, -1), (q, 1)]);
        self.decompose_module(&quot);
    }

    /// Computes the presented group and tries to certify it against the class map.
    pub fn certify(&self) -> Result<(GroupInvariants, Result<Certificate, CertificateFailure>), GrothendieckError> {
        let n = self.alg.vertex_count();
        let parity = Parity::of(self.period);
        let classes: Vec<K0Class> = self.objects.par_iter().map(|v| class_of(self.alg, v)).collect();

        let (remaining, residual) = tietze(self.objects.len(), &self.relations, n)?;
        let a = {
            let pos: HashMap<usize, usize> = remaining.iter().enumerate().map(|(k, &g)| (g, k)).collect();
            let mut a = IntMatrix::zeros(remaining.len(), residual.len());
            for (r, row) in residual.iter().enumerate() {
                for (&g, &c) in row {
                    a.set(pos[&g], r, BigInt::from(c));
                }
            }
            a
        };
        if remaining.len() > RESIDUAL_LIMIT {
            let inv = GroupInvariants { free_rank: remaining.len(), torsion: Vec::new() };
            return Ok((inv, Err(CertificateFailure::ResidualTooLarge { generators: remaining.len() })));
        }
        let snf = a.smith_normal_form();
        let diag = snf.diagonal();
        let invariants = invariants_from_diagonal(remaining.len(), &diag);

        for (idx, rel) in self.relations.iter().enumerate() {
            let mut image = K0Class::zero(parity, n);
            for &(id, c) in &rel.terms {
                image = image.combine(&classes[id], c);
            }
            if !image.is_zero() {
                return Ok((
                    invariants,
                    Err(CertificateFailure::RelationNotKilled { relation: idx, kind: rel.kind, image: image.vector }),
                ));
            }
        }

        if parity == Parity::Odd {
            for &id in &self.sampled {
                let shifted = self.id_of(&self.objects[id].shift(1)).expect("rotation orbit is interned");
                if classes[shifted] != classes[id] {
                    return Ok((invariants, Err(CertificateFailure::ShiftClass { object: id })));
                }
            }
            for (id, combo) in &self.doubling {
                let mut sum: Vec<(usize, i64)> = Vec::new();
                for &(r, k) in combo {
                    sum.extend(self.relations[r].terms.iter().map(|&(g, c)| (g, k * c)));
                }
                if normalize(&sum) != vec![(*id, 2)] {
                    return Ok((invariants, Err(CertificateFailure::DoublingCombination { object: *id })));
                }
            }
        }

        let expected = match parity {
            Parity::Even => GroupInvariants::free(n),
            Parity::Odd => GroupInvariants::elementary_two(n),
        };
        if invariants != expected {
            return Ok((invariants.clone(), Err(CertificateFailure::UnexpectedGroup { group: invariants })));
        }

        // generators of the cokernel are the columns of u^{-1} with nonunit diagonal entry
        let nontrivial: Vec<usize> =
            (0..remaining.len()).filter(|&t| t >= diag.len() || !diag[t].is_one()).collect();
        let mut images = IntMatrix::zeros(n, nontrivial.len());
        for (col, &t) in nontrivial.iter().enumerate() {
            for (k, &g) in remaining.iter().enumerate() {
                let coef = snf.u_inv.get(k, t);
                if coef.is_zero() {
                    continue;
                }
                for vert in 0..n {
                    let cur = images.get(vert, col).clone();
                    images.set(vert, col, cur + coef * classes[g].vector[vert]);
                }
            }
        }
        let generator_images: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..nontrivial.len()).map(|c| images.get(r, c).to_i64().unwrap_or(i64::MAX)).collect())
            .collect();
        let bijective = match parity {
            Parity::Even => images.is_unimodular(),
            Parity::Odd => images
                .determinant()
                .is_some_and(|d| (d % BigInt::from(2)) != BigInt::zero()),
        };
        if !bijective {
            return Ok((invariants, Err(CertificateFailure::NotBijective { generator_images })));
        }
        Ok((
            invariants,
            Ok(Certificate {
                parity,
                relations_checked: self.relations.len(),
                doubling_certificates: self.doubling.len(),
                residual_generators: remaining.len(),
                residual_relations: residual.len(),
                generator_images,
            }),
        ))
    }
}

const RESIDUAL_LIMIT: usize = 400;

/// Sparse elimination of generators that occur with coefficient `±1`, never
/// touching the protected ids `0..protected`. Returns the surviving generators
/// and the remaining nonempty relations; the presented group is unchanged.
fn tietze(
    n_gens: usize,
    relations: &[Relation],
    protected: usize,
) -> Result<(Vec<usize>, Vec<BTreeMap<usize, i64>>), GrothendieckError> {
    let mut rows: Vec<BTreeMap<usize, i64>> =
        relations.iter().map(|r| r.terms.iter().copied().collect()).collect();
    let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_gens];
    for (r, row) in rows.iter().enumerate() {
        for &g in row.keys() {
            occ[g].insert(r);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut eliminated = vec![false; n_gens];
    loop {
        let mut changed = false;
        for r in 0..rows.len() {
            if !alive[r] {
                continue;
            }
            let pivot = rows[r]
                .iter()
                .filter(|&(&g, &c)| g >= protected && c.abs() == 1)
                .min_by_key(|&(&g, _)| (occ[g].len(), g))
                .map(|(&g, &c)| (g, c));
            let Some((g, c)) = pivot else {
                if rows[r].is_empty() {
                    alive[r] = false;
                }
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[r]);
            for &h in pivot_row.keys() {
                occ[h].remove(&r);
            }
            alive[r] = false;
            eliminated[g] = true;
            let targets: Vec<usize> = occ[g].iter().copied().collect();
            for r2 in targets {
                let factor = rows[r2][&g] * c;
                for (&h, &ch) in &pivot_row {
                    let old = rows[r2].get(&h).copied().unwrap_or(0);
                    let new = factor
                        .checked_mul(ch)
                        .and_then(|x| old.checked_sub(x))
                        .ok_or(GrothendieckError::CoefficientOverflow)?;
                    if new == 0 {
                        rows[r2].remove(&h);
                        occ[h].remove(&r2);
                    } else {
                        rows[r2].insert(h, new);
                        occ[h].insert(r2);
                    }
                }
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let remaining: Vec<usize> = (0..n_gens).filter(|&g| !eliminated[g]).collect();
    let residual: Vec<BTreeMap<usize, i64>> =
        rows.into_iter().zip(alive).filter(|(row, a)| *a && !row.is_empty()).map(|(row, _)| row).collect();
    Ok((remaining, residual))
}

/// What a successful certificate established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub parity: Parity,
    pub relations_checked: usize,
    pub doubling_certificates: usize,
    pub residual_generators: usize,
    pub residual_relations: usize,
    /// Column `j`: the class of the `j`-th cokernel generator.
    pub generator_images: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum CertificateFailure {
    RelationNotKilled { relation: usize, kind: RelationKind, image: Vec<i64> },
    ShiftClass { object: usize },
    DoublingCombination { object: usize },
    UnexpectedGroup { group: GroupInvariants },
    NotBijective { generator_images: Vec<Vec<i64>> },
    ResidualTooLarge { generators: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Ok(Certificate),
    Failed(CertificateFailure),
}

impl Serialize for CertificateStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CertificateStatus::Ok(_) => s.serialize_str("ok"),
            CertificateStatus::Failed(f) => f.serialize(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Report {
    pub group: GroupInvariants,
    pub n_objects: usize,
    pub n_relations: usize,
    pub certificate: CertificateStatus,
}

/// Samples, presents and certifies; the report carries a failed certificate instead of an error.
pub fn k0_report(alg: &QuiverAlgebra, m: usize, cfg: &SamplerConfig) -> Result<K0Report, GrothendieckError> {
    let p = Presentation::sample(alg, m, cfg);
    let (group, cert) = p.certify()?;
    Ok(K0Report {
        group,
        n_objects: p.objects().len(),
        n_relations: p.relations().len(),
        certificate: match cert {
            Ok(c) => CertificateStatus::Ok(c),
            Err(f) => CertificateStatus::Failed(f),
        },
    })
}

/// The Grothendieck group of the `m`-periodic derived category, computed from a
/// sampled presentation and certified through the class map.
pub fn empirical_k0(
    alg: &QuiverAlgebra,
    m: usize,
    cfg: &SamplerConfig,
) -> Result<(GroupInvariants, Certificate), GrothendieckError> {
    let report = k0_report(alg, m, cfg)?;
    match report.certificate {
        CertificateStatus::Ok(ref c) => Ok((report.group.clone(), c.clone())),
        CertificateStatus::Failed(_) => Err(GrothendieckError::CertificateFailed(Box::new(report))),
    }
}
