//! Quivers, monomial ideals and the path combinatorics built on them.
//!
//! Paths store their arrows in traversal order (first arrow first). They are
//! *displayed* right to left, so the path `γ` then `β₂` then `α` prints as
//! `a.b2.g`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Quiver("a quiver needs at least one vertex".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Quiver(format!("duplicate arrow `{}`", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::Quiver(format!("arrow `{}` has a dangling endpoint", a.name)));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Vertices named `1..=n`.
    pub fn numbered(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let vertices = (1..=n).map(|v| v.to_string()).collect();
        let arrows = arrows
            .iter()
            .map(|&(name, s, t)| {
                if s == 0 || t == 0 || s > n || t > n {
                    return Err(Error::Quiver(format!("arrow `{name}` has a dangling endpoint")));
                }
                Ok(Arrow {
                    name: name.to_string(),
                    source: s - 1,
                    target: t - 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows ending at `v`, in declaration order.
    pub fn incoming(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_labels().is_some()
    }

    /// Labels `1..=n` with `label(s) > label(t)` along every arrow, sinks
    /// first, ties broken by declaration order.
    fn topological_labels(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut out_deg: Vec<usize> = (0..n).map(|v| self.outgoing(v).len()).collect();
        let mut labels = vec![0; n];
        for next in 1..=n {
            let v = (0..n).find(|&v| labels[v] == 0 && out_deg[v] == 0)?;
            labels[v] = next;
            for a in self.incoming(v) {
                out_deg[self.arrows[a].source] -= 1;
            }
        }
        Some(labels)
    }

    /// Same vertices and arrow indices, every arrow reversed.
    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Self {
            vertices: self.vertices.clone(),
            arrows,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = q.arrow(a);
        Self {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Path from arrows listed in traversal order.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let (&first, _) = arrows
            .split_first()
            .ok_or_else(|| Error::Invalid("use Path::trivial for length-0 paths".into()))?;
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::Relation(format!(
                    "`{}` cannot follow `{}`",
                    q.arrow(w[1]).name,
                    q.arrow(w[0]).name
                )));
            }
        }
        Ok(Self {
            source: q.arrow(first).source,
            target: q.arrow(*arrows.last().unwrap()).target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows.first().copied()
    }
    /// `la(p)`: the arrow traversed last.
    pub fn last_arrow(&self) -> Option<usize> {
        self.arrows.last().copied()
    }

    /// `outer · inner`: follow `inner`, then `outer`.
    pub fn compose(outer: &Self, inner: &Self) -> Option<Self> {
        (inner.target == outer.source).then(|| {
            let mut arrows = inner.arrows.clone();
            arrows.extend_from_slice(&outer.arrows);
            Self {
                source: inner.source,
                target: outer.target,
                arrows,
            }
        })
    }

    /// Whether `word` occurs as a contiguous run of arrows.
    pub fn contains_word(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.arrows.windows(word.len()).any(|w| w == word)
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Self {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Self {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }

    fn sort_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.source)
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source));
        }
        let names: Vec<&str> = self
            .path
            .arrows
            .iter()
            .rev()
            .map(|&a| self.quiver.arrow(a).name.as_str())
            .collect();
        write!(f, "{}", names.join("."))
    }
}

/// Ideal generated by paths of length at least two, kept minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<Path>,
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        Self { generators: Vec::new() }
    }

    pub fn new(q: &Quiver, generators: Vec<Path>) -> Result<Self> {
        for g in &generators {
            if g.len() < 2 {
                return Err(Error::Relation(format!(
                    "relation `{}` has length {}; relations need length >= 2",
                    g.display(q),
                    g.len()
                )));
            }
            Path::from_arrows(q, g.arrows())?;
        }
        for (i, g) in generators.iter().enumerate() {
            for (j, h) in generators.iter().enumerate() {
                if i != j && h.contains_word(g.arrows()) && (i < j || g != h) {
                    return Err(Error::NonMinimal {
                        generator: g.display(q).to_string(),
                        contained: h.display(q).to_string(),
                    });
                }
            }
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.generators.iter().any(|g| p.contains_word(g.arrows()))
    }

    fn opposite(&self) -> Self {
        Self {
            generators: self.generators.iter().map(Path::reversed).collect(),
        }
    }
}

/// A quiver with a monomial ideal and its finite basis of nonzero paths.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    quiver: Quiver,
    ideal: MonomialIdeal,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    labels: Option<Vec<usize>>,
}

impl PartialEq for BoundQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.ideal == other.ideal && self.labels == other.labels
    }
}

impl BoundQuiver {
    /// Default cap on the length of nonzero paths for algebras with cycles.
    pub const DEFAULT_LENGTH_CAP: usize = 64;

    /// An acyclic quiver. `labels`, when given, must be a permutation of
    /// `1..=n` decreasing along arrows; otherwise one is computed.
    pub fn acyclic(quiver: Quiver, ideal: MonomialIdeal, labels: Option<Vec<usize>>) -> Result<Self> {
        let computed = quiver
            .topological_labels()
            .ok_or_else(|| Error::Quiver("quiver has an oriented cycle".into()))?;
        let labels = match labels {
            None => computed,
            Some(l) => {
                let n = quiver.vertex_count();
                let mut seen = vec![false; n + 1];
                for &x in &l {
                    if x == 0 || x > n || seen[x] {
                        return Err(Error::Quiver("labels must be a permutation of 1..n".into()));
                    }
                    seen[x] = true;
                }
                if let Some(a) = quiver.arrows().iter().find(|a| l[a.source] <= l[a.target]) {
                    return Err(Error::Quiver(format!(
                        "arrow `{}` runs from label {} to label {}; labels must decrease along arrows",
                        a.name, l[a.source], l[a.target]
                    )));
                }
                l
            }
        };
        let cap = quiver.arrow_count() + 1;
        let mut bq = Self::with_length_cap(quiver, ideal, cap)?;
        bq.labels = Some(labels);
        Ok(bq)
    }

    /// Any quiver whose nonzero paths are all shorter than `cap`.
    pub fn with_length_cap(quiver: Quiver, ideal: MonomialIdeal, cap: usize) -> Result<Self> {
        let mut paths: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        let mut length = 0;
        while !frontier.is_empty() {
            if length >= cap {
                return Err(Error::InfiniteDimensional(length));
            }
            let mut next = Vec::new();
            for p in &frontier {
                for a in quiver.outgoing(p.target()) {
                    let ext = Path::compose(&Path::arrow(&quiver, a), p).unwrap();
                    let suffix_hit = ideal
                        .generators()
                        .iter()
                        .any(|g| ext.arrows().len() >= g.len() && ext.arrows()[ext.len() - g.len()..] == *g.arrows());
                    if !suffix_hit {
                        next.push(ext);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
            length += 1;
        }
        paths.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(Self {
            quiver,
            ideal,
            paths,
            index,
            labels: None,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// All nonzero paths, sorted by length, then arrow sequence, then source.
    pub fn nonzero_paths(&self) -> &[Path] {
        &self.paths
    }
    pub fn path(&self, idx: usize) -> &Path {
        &self.paths[idx]
    }
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }
    pub fn in_ideal(&self, p: &Path) -> bool {
        self.ideal.contains(p)
    }

    /// Product of two basis paths, `None` when it is zero or not composable.
    pub fn multiply(&self, outer: usize, inner: usize) -> Option<usize> {
        Path::compose(&self.paths[outer], &self.paths[inner]).and_then(|p| self.index_of(&p))
    }

    /// Vertex labels (`1` = sink side) for acyclic quivers.
    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// The vertex carrying the largest label; a source.
    pub fn top_vertex(&self) -> Option<usize> {
        let l = self.labels.as_ref()?;
        (0..l.len()).max_by_key(|&v| l[v])
    }

    /// Indices of nonzero paths from `v` to `w` (the trivial path included when `v == w`).
    pub fn paths_from_to(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.paths[i].source() == v && self.paths[i].target() == w)
            .collect()
    }

    /// Indices of nonzero paths starting at `v`, including `e_v`.
    pub fn paths_from(&self, v: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&i| self.paths[i].source() == v).collect()
    }

    /// `𝒫(j → i)`: nonzero paths of length at least one from `j` to `i`.
    pub fn paths_between(&self, j: usize, i: usize) -> Vec<Path> {
        self.paths
            .iter()
            .filter(|p| !p.is_trivial() && p.source() == j && p.target() == i)
            .cloned()
            .collect()
    }

    /// `𝒫(→ i)`: nonzero paths of length at least one ending at `i`.
    pub fn paths_into(&self, i: usize) -> Vec<Path> {
        self.paths
            .iter()
            .filter(|p| !p.is_trivial() && p.target() == i)
            .cloned()
            .collect()
    }

    /// Every path of length at least one ending at `i`, zero or not.
    /// Only meaningful for acyclic quivers.
    pub fn all_paths_into(&self, i: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack: Vec<Path> = self
            .quiver
            .incoming(i)
            .into_iter()
            .map(|a| Path::arrow(&self.quiver, a))
            .collect();
        while let Some(p) = stack.pop() {
            for a in self.quiver.incoming(p.source()) {
                stack.push(Path::compose(&p, &Path::arrow(&self.quiver, a)).unwrap());
            }
            out.push(p);
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        out
    }

    fn require_nonzero_arrow_path(&self, p: &Path) -> Result<()> {
        if self.in_ideal(p) {
            return Err(Error::ZeroPath(p.display(&self.quiver).to_string()));
        }
        if p.is_trivial() {
            return Err(Error::Invalid("path must have length >= 1".into()));
        }
        Ok(())
    }

    /// `K_p = { q ∈ 𝒫(→ s(p)) | pq ∈ I }`.
    pub fn k_set(&self, p: &Path) -> Result<Vec<Path>> {
        self.require_nonzero_arrow_path(p)?;
        Ok(self
            .paths_into(p.source())
            .into_iter()
            .filter(|q| self.in_ideal(&Path::compose(p, q).unwrap()))
            .collect())
    }

    fn b_sets_over(&self, p: &Path, candidates: &[Path]) -> (Vec<usize>, Vec<usize>) {
        let mut b1 = Vec::new();
        let mut b2 = Vec::new();
        for beta in self.quiver.incoming(p.source()) {
            let p_beta = Path::compose(p, &Path::arrow(&self.quiver, beta)).unwrap();
            if self.in_ideal(&p_beta) {
                b1.push(beta);
            } else if candidates
                .iter()
                .any(|q| q.last_arrow() == Some(beta) && self.in_ideal(&Path::compose(p, q).unwrap()))
            {
                b2.push(beta);
            }
        }
        (b1, b2)
    }

    /// The arrow sets `(B₁, B₂)` into `s(p)` that split `Ker X_p` for monic `X`,
    /// with the witnessing paths `q` ranging over nonzero paths.
    pub fn b_sets(&self, p: &Path) -> Result<(Vec<usize>, Vec<usize>)> {
        self.require_nonzero_arrow_path(p)?;
        Ok(self.b_sets_over(p, &self.paths_into(p.source())))
    }

    /// As [`b_sets`](Self::b_sets), but `q` may be any path, including zero ones.
    pub fn b_sets_all_paths(&self, p: &Path) -> Result<(Vec<usize>, Vec<usize>)> {
        self.require_nonzero_arrow_path(p)?;
        Ok(self.b_sets_over(p, &self.all_paths_into(p.source())))
    }

    /// Arrows reversed, relations reversed. Labels are recomputed for acyclic quivers.
    pub fn opposite(&self) -> Self {
        let quiver = self.quiver.opposite();
        let ideal = self.ideal.opposite();
        let mut bq = Self::with_length_cap(quiver, ideal, self.length_cap())
            .expect("opposite of a finite bound quiver is finite");
        if let Some(l) = &self.labels {
            let n = l.len();
            bq.labels = Some(l.iter().map(|&x| n + 1 - x).collect());
        }
        bq
    }

    fn length_cap(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0) + 2
    }

    /// Deletes vertex `v` (and its arrows), keeping the relations that avoid it.
    pub fn delete_vertex(&self, v: usize) -> Result<SubQuiver> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(Error::Quiver("cannot delete the only vertex".into()));
        }
        let vertex_map: Vec<Option<usize>> = (0..n)
            .scan(0, |next, w| {
                Some((w != v).then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        let kept_arrows: Vec<usize> = (0..self.quiver.arrow_count())
            .filter(|&a| {
                let arr = self.quiver.arrow(a);
                arr.source != v && arr.target != v
            })
            .collect();
        let arrow_map: Vec<Option<usize>> = (0..self.quiver.arrow_count())
            .map(|a| kept_arrows.iter().position(|&b| b == a))
            .collect();
        let vertices = (0..n)
            .filter(|&w| w != v)
            .map(|w| self.quiver.vertex_name(w).to_string())
            .collect();
        let arrows = kept_arrows
            .iter()
            .map(|&a| {
                let arr = self.quiver.arrow(a);
                Arrow {
                    name: arr.name.clone(),
                    source: vertex_map[arr.source].unwrap(),
                    target: vertex_map[arr.target].unwrap(),
                }
            })
            .collect();
        let quiver = Quiver::new(vertices, arrows)?;
        let gens: Vec<Path> = self
            .ideal
            .generators()
            .iter()
            .filter(|g| g.arrows().iter().all(|&a| arrow_map[a].is_some()))
            .map(|g| {
                let arrows: Vec<usize> = g.arrows().iter().map(|&a| arrow_map[a].unwrap()).collect();
                Path::from_arrows(&quiver, &arrows)
            })
            .collect::<Result<_>>()?;
        let ideal = MonomialIdeal::new(&quiver, gens)?;
        let labels = self.labels.as_ref().map(|l| {
            let kept: Vec<usize> = (0..n).filter(|&w| w != v).map(|w| l[w]).collect();
            // compress to 1..n-1 preserving order
            kept.iter().map(|&x| kept.iter().filter(|&&y| y <= x).count()).collect()
        });
        let bound = match labels {
            Some(l) => Self::acyclic(quiver, ideal, Some(l))?,
            None => Self::with_length_cap(quiver, ideal, self.length_cap())?,
        };
        Ok(SubQuiver {
            bound,
            vertex_map,
            arrow_map,
            kept_vertices: (0..n).filter(|&w| w != v).collect(),
            kept_arrows,
        })
    }
}

/// A bound quiver with one vertex deleted, plus translation tables.
#[derive(Clone, Debug)]
pub struct SubQuiver {
    pub bound: BoundQuiver,
    /// Old vertex → new vertex.
    pub vertex_map: Vec<Option<usize>>,
    /// Old arrow → new arrow.
    pub arrow_map: Vec<Option<usize>>,
    /// New vertex → old vertex.
    pub kept_vertices: Vec<usize>,
    /// New arrow → old arrow.
    pub kept_arrows: Vec<usize>,
}

/// Parses a right-to-left `.`-separated arrow word into a path.
pub fn parse_word(q: &Quiver, word: &str) -> Result<Path> {
    let arrows = word
        .split('.')
        .rev()
        .map(|name| {
            let name = name.trim();
            q.arrow_index(name)
                .ok_or_else(|| Error::Relation(format!("unknown arrow `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Path::from_arrows(q, &arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 4 →γ 3 ⇉(β₁,β₂) 2 →α 1 with I = ⟨β₁γ, αβ₂γ⟩.
    pub(crate) fn example_quiver() -> BoundQuiver {
        let q = Quiver::numbered(4, &[("g", 4, 3), ("b1", 3, 2), ("b2", 3, 2), ("a", 2, 1)]).unwrap();
        let rels = vec![parse_word(&q, "b1.g").unwrap(), parse_word(&q, "a.b2.g").unwrap()];
        let ideal = MonomialIdeal::new(&q, rels).unwrap();
        BoundQuiver::acyclic(q, ideal, Some(vec![1, 2, 3, 4])).unwrap()
    }

    fn names(bq: &BoundQuiver, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| p.display(bq.quiver()).to_string()).collect()
    }

    fn word(bq: &BoundQuiver, w: &str) -> Path {
        parse_word(bq.quiver(), w).unwrap()
    }

    #[test]
    fn nonzero_paths_of_the_running_example() {
        let bq = example_quiver();
        assert_eq!(
            names(&bq, bq.nonzero_paths()),
            ["e_1", "e_2", "e_3", "e_4", "g", "b1", "b2", "a", "b2.g", "a.b1", "a.b2"]
        );
    }

    #[test]
    fn small_enumerations() {
        let q = Quiver::numbered(2, &[("a", 2, 1)]).unwrap();
        let bq = BoundQuiver::acyclic(q, MonomialIdeal::zero(), None).unwrap();
        assert_eq!(names(&bq, bq.nonzero_paths()), ["e_1", "e_2", "a"]);
        let q = Quiver::numbered(1, &[]).unwrap();
        let bq = BoundQuiver::acyclic(q, MonomialIdeal::zero(), None).unwrap();
        assert_eq!(bq.nonzero_paths().len(), 1);
    }

    #[test]
    fn ideal_membership() {
        let bq = example_quiver();
        assert!(bq.in_ideal(&word(&bq, "a.b2.g")));
        assert!(!bq.in_ideal(&word(&bq, "a.b1")));
        for a in 0..4 {
            assert!(!bq.in_ideal(&Path::arrow(bq.quiver(), a)));
        }
    }

    #[test]
    fn k_sets() {
        let bq = example_quiver();
        assert_eq!(names(&bq, &bq.k_set(&word(&bq, "a")).unwrap()), ["b2.g"]);
        assert_eq!(names(&bq, &bq.k_set(&word(&bq, "b1")).unwrap()), ["g"]);
        assert!(bq.k_set(&word(&bq, "g")).unwrap().is_empty());
        assert!(matches!(bq.k_set(&word(&bq, "b1.g")), Err(Error::ZeroPath(_))));
    }

    #[test]
    fn b_sets() {
        let bq = example_quiver();
        let b2 = bq.quiver().arrow_index("b2").unwrap();
        let g = bq.quiver().arrow_index("g").unwrap();
        assert_eq!(bq.b_sets(&word(&bq, "a")).unwrap(), (vec![], vec![b2]));
        assert_eq!(bq.b_sets(&word(&bq, "a.b2")).unwrap(), (vec![g], vec![]));
        assert_eq!(bq.b_sets(&word(&bq, "g")).unwrap(), (vec![], vec![]));
        // zero paths also witness: b1.g ∈ I ends with b1 and a.b1.g ∈ I
        let b1 = bq.quiver().arrow_index("b1").unwrap();
        assert_eq!(bq.b_sets_all_paths(&word(&bq, "a")).unwrap(), (vec![], vec![b1, b2]));
    }

    #[test]
    fn paths_between_vertices() {
        let bq = example_quiver();
        assert_eq!(names(&bq, &bq.paths_between(3, 1)), ["b2.g"]);
        assert!(bq.paths_between(3, 0).is_empty());
        assert_eq!(names(&bq, &bq.paths_between(1, 0)), ["a"]);
    }

    #[test]
    fn relation_validation() {
        let q = Quiver::numbered(2, &[("a", 2, 1)]).unwrap();
        let single = Path::arrow(&q, 0);
        assert!(matches!(MonomialIdeal::new(&q, vec![single]), Err(Error::Relation(_))));
        let q = Quiver::numbered(3, &[("a", 3, 2), ("b", 2, 1)]).unwrap();
        assert!(parse_word(&q, "a.b").is_err());
        assert!(parse_word(&q, "x.a").is_err());
    }

    #[test]
    fn minimality_is_enforced() {
        let q = Quiver::numbered(4, &[("a", 4, 3), ("b", 3, 2), ("c", 2, 1)]).unwrap();
        let rels = vec![parse_word(&q, "b.a").unwrap(), parse_word(&q, "c.b.a").unwrap()];
        let err = MonomialIdeal::new(&q, rels).unwrap_err();
        assert_eq!(
            err,
            Error::NonMinimal {
                generator: "b.a".into(),
                contained: "c.b.a".into()
            }
        );
    }

    #[test]
    fn labels() {
        let q = Quiver::numbered(2, &[("a", 1, 2)]).unwrap();
        assert!(BoundQuiver::acyclic(q.clone(), MonomialIdeal::zero(), Some(vec![1, 2])).is_err());
        let bq = BoundQuiver::acyclic(q, MonomialIdeal::zero(), None).unwrap();
        assert_eq!(bq.labels().unwrap(), &[2, 1]);
        assert_eq!(bq.top_vertex(), Some(0));
        let cyc = Quiver::numbered(1, &[("x", 1, 1)]).unwrap();
        assert!(BoundQuiver::acyclic(cyc, MonomialIdeal::zero(), None).is_err());
    }

    #[test]
    fn truncated_loop() {
        let q = Quiver::numbered(1, &[("x", 1, 1)]).unwrap();
        let ideal = MonomialIdeal::new(&q, vec![parse_word(&q, "x.x").unwrap()]).unwrap();
        let bq = BoundQuiver::with_length_cap(q.clone(), ideal, 8).unwrap();
        assert_eq!(bq.nonzero_paths().len(), 2);
        assert_eq!(
            BoundQuiver::with_length_cap(q, MonomialIdeal::zero(), 8).unwrap_err(),
            Error::InfiniteDimensional(8)
        );
    }

    #[test]
    fn deleting_the_source() {
        let bq = example_quiver();
        let sub = bq.delete_vertex(3).unwrap();
        assert_eq!(sub.bound.vertex_count(), 3);
        assert_eq!(sub.bound.quiver().arrow_count(), 3);
        assert!(sub.bound.ideal().generators().is_empty());
        assert_eq!(sub.bound.labels().unwrap(), &[1, 2, 3]);
    }

    #[test]
    fn opposite_reverses_words() {
        let bq = example_quiver();
        let op = bq.opposite();
        assert_eq!(op.nonzero_paths().len(), bq.nonzero_paths().len());
        for p in bq.nonzero_paths() {
            assert!(op.index_of(&p.reversed()).is_some());
        }
        assert_eq!(op.labels().unwrap(), &[4, 3, 2, 1]);
    }
}
