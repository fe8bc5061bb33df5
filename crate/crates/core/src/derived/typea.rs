use std::collections::BTreeSet;

use serde::Serialize;

use crate::linalg::Matrix;
use crate::quiver::{QuiverAlgebra, Representation};

use super::{hom_dm_dim, DerivedError};

pub const DEFAULT_SEARCH_LIMIT: usize = 64;

/// The interval module supported on a connected segment of a type A quiver.
/// `ends` holds the 1-based labels of the segment's end vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub ends: [usize; 2],
    pub vertices: Vec<usize>,
    pub module: Representation,
}

/// Vertices in the order they occur along the underlying path.
fn path_order(alg: &QuiverAlgebra) -> Result<Vec<usize>, DerivedError> {
    let q = alg.quiver();
    let n = q.vertex_count();
    if !alg.relations().is_empty() {
        return Err(DerivedError::NotTypeA("algebra has relations".into()));
    }
    if n == 0 || q.arrows().len() != n - 1 {
        return Err(DerivedError::NotTypeA(format!("{n} vertices need {} arrows", n.saturating_sub(1))));
    }
    let mut neighbours = vec![Vec::new(); n];
    for a in q.arrows() {
        neighbours[a.source].push(a.target);
        neighbours[a.target].push(a.source);
    }
    if neighbours.iter().any(|nb| nb.len() > 2) {
        return Err(DerivedError::NotTypeA("a vertex has more than two neighbours".into()));
    }
    let start = (0..n).find(|&v| neighbours[v].len() <= 1).ok_or(DerivedError::NotTypeA("cycle".into()))?;
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&next) = neighbours[cur].iter().find(|&&x| Some(x) != prev) {
        if order.contains(&next) {
            return Err(DerivedError::NotTypeA("underlying graph has a cycle".into()));
        }
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    if order.len() != n {
        return Err(DerivedError::NotTypeA("underlying graph is disconnected".into()));
    }
    Ok(order)
}

/// All `n(n+1)/2` interval modules, sorted by their end labels.
pub fn indecomposables_type_a(alg: &QuiverAlgebra) -> Result<Vec<Interval>, DerivedError> {
    let order = path_order(alg)?;
    let n = order.len();
    let f = alg.field();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for p in 0..n {
        for q in p..n {
            let vertices: Vec<usize> = order[p..=q].to_vec();
            let dims: Vec<usize> = (0..n).map(|v| usize::from(vertices.contains(&v))).collect();
            let maps = alg
                .quiver()
                .arrows()
                .iter()
                .map(|a| {
                    if dims[a.source] == 1 && dims[a.target] == 1 {
                        Matrix::identity(f, 1)
                    } else {
                        Matrix::zeros(f, dims[a.target], dims[a.source])
                    }
                })
                .collect();
            let module = Representation::new(alg, dims, maps).expect("interval modules satisfy no relations");
            let (a, b) = (order[p] + 1, order[q] + 1);
            out.push(Interval { ends: [a.min(b), a.max(b)], vertices, module });
        }
    }
    out.sort_by_key(|i| i.ends);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub interval: [usize; 2],
    pub degree: usize,
}

/// A set of indecomposables `T` with `Hom(T, T[j]) = 0` for every `j` not divisible by `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalSet {
    pub summands: Vec<Summand>,
    pub size: usize,
    /// `sum` of `dim Hom(X, Y)` over ordered pairs of summands.
    pub end_dim: usize,
}

/// Every maximal orthogonal set of interval modules placed in degrees of `Z_m`,
/// up to an overall shift. Largest sets first.
pub fn orthogonal_sets(alg: &QuiverAlgebra, m: usize, limit: usize) -> Result<Vec<OrthogonalSet>, DerivedError> {
    if m < 2 {
        return Err(DerivedError::PeriodOne);
    }
    let intervals = indecomposables_type_a(alg)?;
    let k = intervals.len();
    let objects: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..m).map(move |d| (a, d))).collect();
    if objects.len() > limit {
        return Err(DerivedError::SearchTooLarge { objects: objects.len(), limit });
    }
    // h[a][b][s] = dim Hom(M_a, M_b[s])
    let mut h = vec![vec![vec![0usize; m]; k]; k];
    for a in 0..k {
        for b in 0..k {
            for (s, slot) in h[a][b].iter_mut().enumerate() {
                *slot = hom_dm_dim(alg, &intervals[a].module, &intervals[b].module, s as i64, m)?;
            }
        }
    }
    let shift = |i: usize, j: usize| (i + m - j) % m;
    // Hom(M_a[-i], M_b[-j][t]) = h[a][b][i - j + t] must vanish for t != 0
    let one_way = |(a, i): (usize, usize), (b, j): (usize, usize)| (0..m).all(|s| s == shift(i, j) || h[a][b][s] == 0);
    let compatible = |x: (usize, usize), y: (usize, usize)| one_way(x, y) && one_way(y, x);

    let nodes: Vec<usize> = (0..objects.len()).filter(|&x| compatible(objects[x], objects[x])).collect();
    let adj: Vec<BTreeSet<usize>> = (0..objects.len())
        .map(|x| {
            nodes
                .iter()
                .copied()
                .filter(|&y| y != x && nodes.contains(&x) && compatible(objects[x], objects[y]))
                .collect()
        })
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, BTreeSet::new(), nodes.iter().copied().collect(), BTreeSet::new(), &mut cliques);

    let mut canonical: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for c in cliques {
        let best = (0..m)
            .map(|t| {
                let mut v: Vec<(usize, usize)> = c.iter().map(|&x| (objects[x].0, (objects[x].1 + t) % m)).collect();
                v.sort();
                v
            })
            .min()
            .expect("m >= 2");
        canonical.insert(best);
    }
    let mut out: Vec<OrthogonalSet> = canonical
        .into_iter()
        .map(|set| {
            let end_dim = set.iter().map(|&(a, i)| set.iter().map(|&(b, j)| h[a][b][shift(i, j)]).sum::<usize>()).sum();
            let summands = set.iter().map(|&(a, d)| Summand { interval: intervals[a].ends, degree: d }).collect();
            OrthogonalSet { summands, size: set.len(), end_dim }
        })
        .collect();
    out.sort_by(|x, y| y.size.cmp(&x.size).then_with(|| x.summands.cmp(&y.summands)));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = *p.union(&x).max_by_key(|&&u| adj[u].intersection(&p).count()).expect("nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}
