use std::collections::HashMap;
use std::fmt;

use crate::linalg::Field;

use super::QuiverError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite quiver with vertices `0..vertex_count`. Directed cycles are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
    topological: Vec<usize>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut labels = HashMap::new();
        for (idx, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(QuiverError::BadVertex(a.label.clone()));
            }
            if labels.insert(a.label.clone(), idx).is_some() {
                return Err(QuiverError::DuplicateLabel(a.label.clone()));
            }
        }
        // Kahn's algorithm; leftover vertices sit on a cycle
        let mut indegree = vec![0usize; vertex_count];
        for a in &arrows {
            indegree[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..vertex_count).filter(|&v| indegree[v] == 0).rev().collect();
        let mut topological = Vec::with_capacity(vertex_count);
        while let Some(v) = ready.pop() {
            topological.push(v);
            for a in arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        if topological.len() != vertex_count {
            return Err(QuiverError::CyclicQuiver);
        }
        Ok(Quiver { vertex_count, arrows, topological })
    }

    /// The linearly oriented `A_n` quiver `1 <- 2 <- ... <- n` (0-based internally).
    /// Arrow `k` goes from vertex `k+1` to vertex `k`.
    pub fn linear_a(n: usize) -> Self {
        let arrows = (0..n.saturating_sub(1))
            .map(|k| Arrow { source: k + 1, target: k, label: arrow_label(k) })
            .collect();
        Quiver::new(n, arrows).expect("linear quiver is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Vertices ordered so that every arrow points forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topological
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v)
    }
}

fn arrow_label(k: usize) -> String {
    let letters: Vec<char> = ('a'..='z').collect();
    if k < letters.len() {
        letters[k].to_string()
    } else {
        format!("x{k}")
    }
}

/// A path, stored in traversal order: `arrows[0]` is followed first.
/// The written form composes right to left, so `ab` means "first `b`, then `a`".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains_subpath(&self, sub: &Path) -> bool {
        !sub.arrows.is_empty() && self.arrows.windows(sub.arrows.len()).any(|w| w == sub.arrows.as_slice())
    }

    pub fn written(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        self.arrows.iter().rev().map(|&a| quiver.arrow(a).label.as_str()).collect()
    }
}

/// Path algebra of an acyclic quiver modulo monomial relations of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverAlgebra {
    quiver: Quiver,
    field: Field,
    relations: Vec<Path>,
    path_basis: Vec<Path>,
}

impl QuiverAlgebra {
    pub fn new(quiver: Quiver, field: Field, relations: Vec<Path>) -> Result<Self, QuiverError> {
        for rel in &relations {
            if rel.arrows.len() < 2 {
                return Err(QuiverError::InadmissibleRelation(format!("{rel:?} has length < 2")));
            }
            for w in rel.arrows.windows(2) {
                if quiver.arrow(w[0]).target != quiver.arrow(w[1]).source {
                    return Err(QuiverError::InadmissibleRelation(format!(
                        "{} is not a path",
                        rel.written(&quiver)
                    )));
                }
            }
            let first = quiver.arrow(rel.arrows[0]);
            let last = quiver.arrow(*rel.arrows.last().unwrap());
            if rel.start != first.source || rel.end != last.target {
                return Err(QuiverError::InadmissibleRelation("endpoints disagree with arrows".into()));
            }
        }
        let path_basis = enumerate_paths(&quiver, &relations);
        Ok(QuiverAlgebra { quiver, field, relations, path_basis })
    }

    /// Hereditary path algebra (no relations).
    pub fn path_algebra(quiver: Quiver, field: Field) -> Self {
        Self::new(quiver, field, Vec::new()).expect("no relations to validate")
    }

    /// Relation given by written labels, right to left: `["a", "b"]` is the path `ab`, first `b`.
    pub fn relation_from_labels(quiver: &Quiver, labels: &[&str]) -> Result<Path, QuiverError> {
        let mut arrows = Vec::with_capacity(labels.len());
        for l in labels.iter().rev() {
            arrows.push(quiver.arrow_index(l).ok_or_else(|| QuiverError::UnknownArrow(l.to_string()))?);
        }
        let (Some(&first), Some(&last)) = (arrows.first(), arrows.last()) else {
            return Err(QuiverError::InadmissibleRelation("empty relation".into()));
        };
        Ok(Path { start: quiver.arrow(first).source, end: quiver.arrow(last).target, arrows })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn path_basis(&self) -> &[Path] {
        &self.path_basis
    }

    pub fn dimension(&self) -> usize {
        self.path_basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows().len()
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    /// Basis paths from `i` to `j`, in path-basis order.
    pub fn paths_between(&self, i: usize, j: usize) -> impl Iterator<Item = &Path> {
        self.path_basis.iter().filter(move |p| p.start == i && p.end == j)
    }

    /// Index in the path basis of `arrow` followed after `path`, if that product is nonzero.
    pub fn extend(&self, path: &Path, arrow: usize) -> Option<Path> {
        let a = self.quiver.arrow(arrow);
        if a.source != path.end {
            return None;
        }
        let mut arrows = path.arrows.clone();
        arrows.push(arrow);
        let p = Path { start: path.start, end: a.target, arrows };
        (!self.relations.iter().any(|r| p.contains_subpath(r))).then_some(p)
    }
}

impl fmt::Display for QuiverAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}Q with {} vertices, {} arrows, {} relations (dim {})",
            self.field,
            self.vertex_count(),
            self.arrow_count(),
            self.relations.len(),
            self.dimension()
        )
    }
}

fn enumerate_paths(quiver: &Quiver, relations: &[Path]) -> Vec<Path> {
    let mut basis: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut frontier = basis.clone();
    // acyclic: lengths are bounded by the vertex count
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for (idx, a) in quiver.outgoing(p.end) {
                let mut arrows = p.arrows.clone();
                arrows.push(idx);
                let q = Path { start: p.start, end: a.target, arrows };
                if relations.iter().any(|r| q.arrows.ends_with(&r.arrows)) {
                    continue;
                }
                next.push(q);
            }
        }
        next.sort();
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    basis
}
