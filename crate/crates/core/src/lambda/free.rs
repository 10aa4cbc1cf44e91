//! Free Λ-modules, projective covers, resolutions and the transpose.

use std::collections::HashMap;

use super::{solve_combination, Lambda, LambdaMorphism, LambdaRep};
use crate::algebra::AMap;
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// Which generators a cover uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverKind {
    /// A basis of the Λ-top: the cover is a projective cover.
    Minimal,
    /// A-tops of every branch: `⊕_v cover(X_v) ⊗ P(v) → X`.
    Counit,
    /// Every basis vector of every branch.
    Basis,
}

/// An element of `(X_v)_u`, the image of the generator of `P_A(u) ⊗ P(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator<K: Field> {
    pub vertex: usize,
    pub a_vertex: usize,
    pub element: Vec<K::Elem>,
}

/// `⊕_g P_A(u_g) ⊗ P(v_g)` with coordinates `(summand, Q-path, A-path)`.
#[derive(Clone, Debug)]
pub struct FreeModule<K: Field> {
    pub tops: Vec<(usize, usize)>,
    pub rep: LambdaRep<K>,
    layout: Vec<Vec<Vec<(usize, usize, usize)>>>,
    index: HashMap<(usize, usize, usize), (usize, usize, usize)>,
}

impl<K: Field> FreeModule<K> {
    /// Coordinates of the basis of branch `i` at A-vertex `w`.
    pub fn layout(&self, i: usize, w: usize) -> &[(usize, usize, usize)] {
        &self.layout[i][w]
    }

    /// `(branch, A-vertex, position)` of the basis element `a ⊗ p` in summand `g`.
    pub fn coordinate(&self, g: usize, q_path: usize, a_path: usize) -> Option<(usize, usize, usize)> {
        self.index.get(&(g, q_path, a_path)).copied()
    }

    pub fn rank(&self) -> usize {
        self.tops.len()
    }
}

#[derive(Clone, Debug)]
pub struct Cover<K: Field> {
    pub free: FreeModule<K>,
    pub generators: Vec<Generator<K>>,
    /// The surjection `free → X`.
    pub map: LambdaMorphism<K>,
}

/// One step `0 → Ω → P → X → 0` of a projective resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep<K: Field> {
    pub cover: Cover<K>,
    pub syzygy: LambdaRep<K>,
    pub inclusion: LambdaMorphism<K>,
}

impl<K: Field> Lambda<K> {
    pub fn free_module(&self, tops: &[(usize, usize)]) -> FreeModule<K> {
        let summands: Vec<LambdaRep<K>> = tops
            .iter()
            .map(|&(v, u)| self.tensor_pv(&self.base.projective(u), v))
            .collect();
        let rep = self.direct_sum_all(&summands);
        let nq = self.vertex_count();
        let na = self.base.vertex_count();
        let mut layout = vec![vec![Vec::new(); na]; nq];
        let mut index = HashMap::new();
        for (i, row) in layout.iter_mut().enumerate() {
            for (w, cell) in row.iter_mut().enumerate() {
                for (g, &(v, u)) in tops.iter().enumerate() {
                    for qp in self.bound.paths_from_to(v, i) {
                        for ap in self.base.bound().paths_from_to(u, w) {
                            index.insert((g, qp, ap), (i, w, cell.len()));
                            cell.push((g, qp, ap));
                        }
                    }
                }
            }
        }
        FreeModule {
            tops: tops.to_vec(),
            rep,
            layout,
            index,
        }
    }

    /// The map `free → x` sending generator `g` to `elements[g] ∈ (X_{v_g})_{u_g}`.
    pub fn map_from_free(
        &self,
        free: &FreeModule<K>,
        x: &LambdaRep<K>,
        elements: &[Vec<K::Elem>],
    ) -> LambdaMorphism<K> {
        let f = self.field();
        let mut q_cache: HashMap<usize, AMap<K>> = HashMap::new();
        let mut a_cache: HashMap<(usize, usize), Matrix<K>> = HashMap::new();
        let components = (0..self.vertex_count())
            .map(|i| {
                let blocks = (0..self.base.vertex_count())
                    .map(|w| {
                        let cells = &free.layout[i][w];
                        let columns: Vec<Vec<K::Elem>> = cells
                            .iter()
                            .map(|&(g, qp, ap)| {
                                let (v, _) = free.tops[g];
                                let act = a_cache
                                    .entry((v, ap))
                                    .or_insert_with(|| self.base.act(&x.branches[v], ap));
                                let moved = act.mul_vec(&elements[g]);
                                let pm = q_cache
                                    .entry(qp)
                                    .or_insert_with(|| self.path_map(x, self.bound.path(qp)));
                                pm.blocks[w].mul_vec(&moved)
                            })
                            .collect();
                        Matrix::from_columns(f, x.branches[i].dims[w], &columns)
                    })
                    .collect();
                AMap { blocks }
            })
            .collect();
        LambdaMorphism { components }
    }

    /// Generators of `x` whose images span it as a Λ-module.
    pub fn top_generators(&self, x: &LambdaRep<K>, kind: CoverKind) -> Vec<Generator<K>> {
        let f = self.field();
        let mut out = Vec::new();
        for (i, branch) in x.branches.iter().enumerate() {
            for u in 0..self.base.vertex_count() {
                let d = branch.dims[u];
                if d == 0 {
                    continue;
                }
                let mut radical = Subspace::zero(f, d);
                if kind != CoverKind::Basis {
                    for (k, ar) in self.base.quiver().arrows().iter().enumerate() {
                        if ar.target == u {
                            radical = radical.sum(&Subspace::column_span(&branch.maps[k]));
                        }
                    }
                }
                if kind == CoverKind::Minimal {
                    for a in self.quiver().incoming(i) {
                        radical = radical.sum(&Subspace::column_span(&x.maps[a].blocks[u]));
                    }
                }
                let section = radical.quotient().section;
                for c in 0..section.cols() {
                    out.push(Generator {
                        vertex: i,
                        a_vertex: u,
                        element: section.column(c),
                    });
                }
            }
        }
        out
    }

    pub fn cover(&self, x: &LambdaRep<K>, kind: CoverKind) -> Cover<K> {
        let generators = self.top_generators(x, kind);
        let tops: Vec<(usize, usize)> = generators.iter().map(|g| (g.vertex, g.a_vertex)).collect();
        let free = self.free_module(&tops);
        let elements: Vec<Vec<K::Elem>> = generators.iter().map(|g| g.element.clone()).collect();
        let map = self.map_from_free(&free, x, &elements);
        debug_assert!(map.is_surjective());
        Cover { free, generators, map }
    }

    pub fn syzygy(&self, x: &LambdaRep<K>, kind: CoverKind) -> ResolutionStep<K> {
        let cover = self.cover(x, kind);
        let (syzygy, inclusion) = self.kernel(&cover.map, &cover.free.rep);
        ResolutionStep {
            cover,
            syzygy,
            inclusion,
        }
    }

    /// Up to `length` steps, stopping early at a zero syzygy.
    pub fn projective_resolution(&self, x: &LambdaRep<K>, length: usize, kind: CoverKind) -> Vec<ResolutionStep<K>> {
        let mut out: Vec<ResolutionStep<K>> = Vec::new();
        let mut current = x.clone();
        for _ in 0..length {
            if current.is_zero() {
                break;
            }
            let step = self.syzygy(&current, kind);
            current = step.syzygy.clone();
            out.push(step);
        }
        out
    }

    /// A Λ-module is projective iff its projective cover is injective.
    pub fn is_projective(&self, x: &LambdaRep<K>) -> bool {
        self.syzygy(x, CoverKind::Minimal).syzygy.is_zero()
    }

    /// A section `s` of the cover (`π ∘ s = id`), if the cover splits.
    pub fn cover_section(&self, x: &LambdaRep<K>, kind: CoverKind) -> Option<LambdaMorphism<K>> {
        let cover = self.cover(x, kind);
        let id = self.identity(x);
        self.lift(&id, &cover.map, x, &cover.free.rep)
    }

    /// Some `h: x → y` with `g ∘ h = f`, where `f: x → z` and `g: y → z`.
    pub fn lift(
        &self,
        f: &LambdaMorphism<K>,
        g: &LambdaMorphism<K>,
        x: &LambdaRep<K>,
        y: &LambdaRep<K>,
    ) -> Option<LambdaMorphism<K>> {
        let basis = self.hom_basis(x, y);
        let columns: Vec<Vec<K::Elem>> = basis.iter().map(|h| g.compose(h).flat_entries()).collect();
        let c = solve_combination(self.field(), &columns, &f.flat_entries())?;
        Some(self.combine(&basis, &c, x, y))
    }

    /// Some `u: y → j` with `u ∘ f = h`, where `f: x → y` and `h: x → j`.
    pub fn extend(
        &self,
        h: &LambdaMorphism<K>,
        f: &LambdaMorphism<K>,
        y: &LambdaRep<K>,
        j: &LambdaRep<K>,
    ) -> Option<LambdaMorphism<K>> {
        let basis = self.hom_basis(y, j);
        let columns: Vec<Vec<K::Elem>> = basis.iter().map(|u| u.compose(f).flat_entries()).collect();
        let c = solve_combination(self.field(), &columns, &h.flat_entries())?;
        Some(self.combine(&basis, &c, y, j))
    }

    /// `Tr x` over [`Lambda::opposite`], from a minimal presentation
    /// `P₁ → P₀ → x → 0`.
    pub fn transpose(&self, x: &LambdaRep<K>) -> LambdaRep<K> {
        let op = self.opposite();
        let step0 = self.syzygy(x, CoverKind::Minimal);
        let c1 = self.cover(&step0.syzygy, CoverKind::Minimal);
        let f0 = op.free_module(&step0.cover.free.tops);
        let f1 = op.free_module(&c1.free.tops);
        let field = self.field();
        let mut elements: Vec<Vec<K::Elem>> = f0
            .tops
            .iter()
            .map(|&(v, u)| vec![field.zero(); f1.rep.branches[v].dims[u]])
            .collect();
        for (l, gen) in c1.generators.iter().enumerate() {
            let image = step0.inclusion.components[gen.vertex].blocks[gen.a_vertex].mul_vec(&gen.element);
            let cells = step0.cover.free.layout(gen.vertex, gen.a_vertex);
            for (pos, c) in image.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                let (g, qp, ap) = cells[pos];
                let qop = op
                    .bound
                    .index_of(&self.bound.path(qp).reversed())
                    .expect("reversed path is nonzero");
                let aop = op
                    .base
                    .bound()
                    .index_of(&self.base.bound().path(ap).reversed())
                    .expect("reversed path is nonzero");
                let (_, _, at) = f1
                    .coordinate(l, qop, aop)
                    .expect("coordinate in the opposite free module");
                elements[g][at] = field.add(&elements[g][at], c);
            }
        }
        let d = op.map_from_free(&f0, &f1.rep, &elements);
        op.cokernel(&d, &f1.rep).rep
    }
}
