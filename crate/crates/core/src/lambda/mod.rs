//! Modules over `Λ = A ⊗ kQ/I`, stored as representations of `(Q, I)` over `A`.

mod ext;
mod free;

use rand::Rng;

use crate::algebra::{random_invertible, AMap, AModule, BaseAlgebra, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{BoundQuiver, MonomialIdeal, Path, Quiver};

pub use ext::{ExtCocycles, ShortExactSeq};
pub use free::{Cover, CoverKind, FreeModule, Generator, ResolutionStep};

/// The algebra `A ⊗ kQ/I` for a labelled acyclic bound quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct Lambda<K: Field> {
    base: BaseAlgebra<K>,
    bound: BoundQuiver,
}

/// Branches `X_i` (A-modules) and arrow maps `X_α` (A-maps).
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaRep<K: Field> {
    pub(crate) branches: Vec<AModule<K>>,
    pub(crate) maps: Vec<AMap<K>>,
}

/// One A-map per vertex of `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMorphism<K: Field> {
    pub(crate) components: Vec<AMap<K>>,
}

/// A quotient representation with its projection.
#[derive(Clone, Debug)]
pub struct QuotientRep<K: Field> {
    pub rep: LambdaRep<K>,
    pub projection: LambdaMorphism<K>,
}

impl<K: Field> LambdaRep<K> {
    pub fn branches(&self) -> &[AModule<K>] {
        &self.branches
    }
    pub fn branch(&self, i: usize) -> &AModule<K> {
        &self.branches[i]
    }
    pub fn maps(&self) -> &[AMap<K>] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &AMap<K> {
        &self.maps[arrow]
    }
    /// `dims()[i][u]` is the dimension of `X_i` at the A-vertex `u`.
    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.branches.iter().map(|b| b.dims().to_vec()).collect()
    }
    /// Total k-dimension of each branch.
    pub fn branch_dims(&self) -> Vec<usize> {
        self.branches.iter().map(AModule::total_dim).collect()
    }
    pub fn total_dim(&self) -> usize {
        self.branches.iter().map(AModule::total_dim).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

impl<K: Field> LambdaMorphism<K> {
    pub fn from_components(components: Vec<AMap<K>>) -> Self {
        Self { components }
    }
    pub fn components(&self) -> &[AMap<K>] {
        &self.components
    }
    pub fn component(&self, i: usize) -> &AMap<K> {
        &self.components[i]
    }
    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&inner.components)
                .map(|(a, b)| a.compose(b))
                .collect(),
        }
    }
    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
    pub fn sub(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
    pub fn scale(&self, s: &K::Elem) -> Self {
        Self {
            components: self.components.iter().map(|a| a.scale(s)).collect(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(AMap::is_zero)
    }
    pub fn is_injective(&self) -> bool {
        self.components.iter().all(AMap::is_injective)
    }
    pub fn is_surjective(&self) -> bool {
        self.components.iter().all(AMap::is_surjective)
    }
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(AMap::is_isomorphism)
    }
    pub fn flat_entries(&self) -> Vec<K::Elem> {
        self.components.iter().flat_map(|c| c.flat_entries().cloned()).collect()
    }
    pub fn kernel(&self) -> Vec<Submodule<K>> {
        self.components.iter().map(AMap::kernel).collect()
    }
    pub fn image(&self) -> Vec<Submodule<K>> {
        self.components.iter().map(AMap::image).collect()
    }
    /// `[self | other]` out of a direct sum.
    pub fn hstack(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.hstack(b))
                .collect(),
        }
    }
    /// `[self ; other]` into a direct sum.
    pub fn vstack(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.vstack(b))
                .collect(),
        }
    }
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }
}

/// Finds coefficients `c` with `Σ c_k columns[k] = target`.
pub(crate) fn solve_combination<K: Field>(
    field: &K,
    columns: &[Vec<K::Elem>],
    target: &[K::Elem],
) -> Option<Vec<K::Elem>> {
    if columns.is_empty() {
        return target.iter().all(|e| field.is_zero(e)).then(Vec::new);
    }
    let m = Matrix::from_columns(field, target.len(), columns);
    let rhs = Matrix::column_vector(field, target.to_vec());
    m.solve(&rhs).map(|x| x.column(0))
}

impl<K: Field> Lambda<K> {
    /// `bound` must be acyclic and labelled.
    pub fn new(base: BaseAlgebra<K>, bound: BoundQuiver) -> Result<Self> {
        if bound.labels().is_none() {
            return Err(Error::Quiver("the quiver of Λ must be acyclic and labelled".into()));
        }
        Ok(Self { base, bound })
    }

    /// `Λ = A`: one vertex, no arrows.
    pub fn point(base: BaseAlgebra<K>) -> Self {
        let q = Quiver::new(vec!["1".into()], vec![]).expect("one vertex");
        let bound = BoundQuiver::acyclic(q, MonomialIdeal::zero(), None).expect("one vertex");
        Self { base, bound }
    }

    pub fn base(&self) -> &BaseAlgebra<K> {
        &self.base
    }
    pub fn bound(&self) -> &BoundQuiver {
        &self.bound
    }
    pub fn quiver(&self) -> &Quiver {
        self.bound.quiver()
    }
    pub fn field(&self) -> &K {
        self.base.field()
    }
    pub fn vertex_count(&self) -> usize {
        self.bound.vertex_count()
    }
    pub fn dim(&self) -> usize {
        self.base.dim() * self.bound.nonzero_paths().len()
    }
    /// The label of vertex `v` (`1` is the sink side).
    pub fn label(&self, v: usize) -> usize {
        self.bound.labels().expect("labelled")[v]
    }

    /// `Λ^op = A^op ⊗ kQ^op/I^op`.
    pub fn opposite(&self) -> Self {
        Self {
            base: self.base.opposite(),
            bound: self.bound.opposite(),
        }
    }

    pub fn zero_rep(&self) -> LambdaRep<K> {
        let z = self.base.zero_module();
        LambdaRep {
            branches: vec![z.clone(); self.vertex_count()],
            maps: vec![AMap::zero(self.field(), &z, &z); self.quiver().arrow_count()],
        }
    }

    /// The one-branch representation of an `A`-module over [`Lambda::point`].
    pub fn point_rep(m: AModule<K>) -> LambdaRep<K> {
        LambdaRep {
            branches: vec![m],
            maps: vec![],
        }
    }

    /// Validates and assembles a representation.
    pub fn rep(&self, branches: Vec<AModule<K>>, maps: Vec<AMap<K>>) -> Result<LambdaRep<K>> {
        let x = LambdaRep { branches, maps };
        self.validate(&x)?;
        Ok(x)
    }

    /// Checks branch modules, arrow A-maps and the relations of `I`.
    pub fn validate(&self, x: &LambdaRep<K>) -> Result<()> {
        let q = self.quiver();
        if x.branches.len() != q.vertex_count() || x.maps.len() != q.arrow_count() {
            return Err(Error::Dimension(format!(
                "representation has {} branches and {} maps; the quiver has {} vertices and {} arrows",
                x.branches.len(),
                x.maps.len(),
                q.vertex_count(),
                q.arrow_count()
            )));
        }
        for (i, b) in x.branches.iter().enumerate() {
            self.base
                .module(b.dims.clone(), b.maps.clone())
                .map_err(|e| in_context(e, &format!(" at vertex {}", q.vertex_name(i))))?;
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            self.base
                .check_map(&x.maps[a], &x.branches[arrow.source], &x.branches[arrow.target])
                .map_err(|e| in_context(e, &format!(" for arrow `{}`", arrow.name)))?;
        }
        for g in self.bound.ideal().generators() {
            if !self.path_map(x, g).is_zero() {
                return Err(Error::RelationViolated {
                    relation: g.display(q).to_string(),
                    context: " on the representation".into(),
                });
            }
        }
        Ok(())
    }

    /// `X_p = X_{α_l} ⋯ X_{α_1}`; the identity for trivial paths.
    pub fn path_map(&self, x: &LambdaRep<K>, p: &Path) -> AMap<K> {
        let start = AMap::identity(self.field(), &x.branches[p.source()]);
        p.arrows().iter().fold(start, |acc, &a| x.maps[a].compose(&acc))
    }

    /// `M ⊗ P(v)`: branch `i` is `M^{c_i}` with one copy per nonzero path `v → i`.
    pub fn tensor_pv(&self, m: &AModule<K>, v: usize) -> LambdaRep<K> {
        let f = self.field();
        let basis: Vec<Vec<usize>> = (0..self.vertex_count())
            .map(|i| self.bound.paths_from_to(v, i))
            .collect();
        let branches = basis.iter().map(|b| self.base.power(m, b.len())).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let e = self.arrow_action_matrix(a, &basis[arrow.source], &basis[arrow.target]);
                AMap {
                    blocks: m.dims.iter().map(|&d| e.kron(&Matrix::identity(f, d))).collect(),
                }
            })
            .collect();
        LambdaRep { branches, maps }
    }

    /// Left multiplication by arrow `a` between path bases, as a 0/1 matrix.
    pub(crate) fn arrow_action_matrix(&self, a: usize, from: &[usize], to: &[usize]) -> Matrix<K> {
        let f = self.field();
        let arrow = self
            .bound
            .index_of(&Path::arrow(self.quiver(), a))
            .expect("arrows are nonzero");
        let mut e = Matrix::zeros(f, to.len(), from.len());
        for (c, &p) in from.iter().enumerate() {
            if let Some(q) = self.bound.multiply(arrow, p) {
                let r = to.iter().position(|&t| t == q).expect("target path in basis");
                e.set(r, c, f.one());
            }
        }
        e
    }

    /// `f ⊗ P(v)`.
    pub fn tensor_map(&self, f: &AMap<K>, v: usize) -> LambdaMorphism<K> {
        let field = self.field();
        LambdaMorphism {
            components: (0..self.vertex_count())
                .map(|i| {
                    let c = self.bound.paths_from_to(v, i).len();
                    let id = Matrix::identity(field, c);
                    AMap {
                        blocks: f.blocks.iter().map(|b| id.kron(b)).collect(),
                    }
                })
                .collect(),
        }
    }

    /// `Λ` as a left module over itself.
    pub fn regular(&self) -> LambdaRep<K> {
        let mut summands = Vec::new();
        for v in 0..self.vertex_count() {
            for u in 0..self.base.vertex_count() {
                summands.push(self.tensor_pv(&self.base.projective(u), v));
            }
        }
        self.direct_sum_all(&summands)
    }

    pub fn direct_sum(&self, x: &LambdaRep<K>, y: &LambdaRep<K>) -> LambdaRep<K> {
        LambdaRep {
            branches: x
                .branches
                .iter()
                .zip(&y.branches)
                .map(|(a, b)| self.base.direct_sum(a, b))
                .collect(),
            maps: x.maps.iter().zip(&y.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    pub fn direct_sum_all(&self, xs: &[LambdaRep<K>]) -> LambdaRep<K> {
        xs.iter().fold(self.zero_rep(), |acc, x| self.direct_sum(&acc, x))
    }

    /// Inclusions and projections of `x ⊕ y`.
    pub fn biproduct_maps(&self, x: &LambdaRep<K>, y: &LambdaRep<K>) -> [LambdaMorphism<K>; 4] {
        let f = self.field();
        let (ix, iy, px, py) = x
            .branches
            .iter()
            .zip(&y.branches)
            .map(|(a, b)| {
                let (mut ia, mut ib, mut pa, mut pb) = (vec![], vec![], vec![], vec![]);
                for (&da, &db) in a.dims.iter().zip(&b.dims) {
                    let id_a = Matrix::identity(f, da);
                    let id_b = Matrix::identity(f, db);
                    let za = Matrix::zeros(f, db, da);
                    let zb = Matrix::zeros(f, da, db);
                    ia.push(Matrix::vstack(f, da, &[&id_a, &za]));
                    ib.push(Matrix::vstack(f, db, &[&zb, &id_b]));
                    pa.push(Matrix::hstack(f, da, &[&id_a, &zb]));
                    pb.push(Matrix::hstack(f, db, &[&za, &id_b]));
                }
                (
                    AMap { blocks: ia },
                    AMap { blocks: ib },
                    AMap { blocks: pa },
                    AMap { blocks: pb },
                )
            })
            .fold((vec![], vec![], vec![], vec![]), |mut acc, (a, b, c, d)| {
                acc.0.push(a);
                acc.1.push(b);
                acc.2.push(c);
                acc.3.push(d);
                acc
            });
        [ix, iy, px, py].map(|components| LambdaMorphism { components })
    }

    pub fn identity(&self, x: &LambdaRep<K>) -> LambdaMorphism<K> {
        LambdaMorphism {
            components: x.branches.iter().map(|b| AMap::identity(self.field(), b)).collect(),
        }
    }

    pub fn zero_morphism(&self, x: &LambdaRep<K>, y: &LambdaRep<K>) -> LambdaMorphism<K> {
        LambdaMorphism {
            components: x
                .branches
                .iter()
                .zip(&y.branches)
                .map(|(a, b)| AMap::zero(self.field(), a, b))
                .collect(),
        }
    }

    /// Checks A-linearity of every component and the squares `Y_α f_j = f_i X_α`.
    pub fn check_morphism(&self, f: &LambdaMorphism<K>, x: &LambdaRep<K>, y: &LambdaRep<K>) -> Result<()> {
        if f.components.len() != self.vertex_count() {
            return Err(Error::Dimension("morphism has the wrong number of components".into()));
        }
        for (i, c) in f.components.iter().enumerate() {
            self.base.check_map(c, &x.branches[i], &y.branches[i])?;
        }
        for (a, arrow) in self.quiver().arrows().iter().enumerate() {
            let lhs = y.maps[a].compose(&f.components[arrow.source]);
            let rhs = f.components[arrow.target].compose(&x.maps[a]);
            if lhs != rhs {
                return Err(Error::NotCommuting {
                    arrow: arrow.name.clone(),
                    context: " (not a Λ-map)".into(),
                });
            }
        }
        Ok(())
    }

    /// Basis of `Hom_Λ(x, y)`: per-branch A-maps first, then the arrow squares.
    pub fn hom_basis(&self, x: &LambdaRep<K>, y: &LambdaRep<K>) -> Vec<LambdaMorphism<K>> {
        let f = self.field();
        let local: Vec<Vec<AMap<K>>> = x
            .branches
            .iter()
            .zip(&y.branches)
            .map(|(a, b)| self.base.hom_space(a, b))
            .collect();
        let mut offsets = vec![0];
        for l in &local {
            offsets.push(offsets.last().unwrap() + l.len());
        }
        let unknowns = *offsets.last().unwrap();
        if unknowns == 0 {
            return vec![];
        }
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for (a, arrow) in self.quiver().arrows().iter().enumerate() {
            let (j, i) = (arrow.source, arrow.target);
            if local[j].is_empty() && local[i].is_empty() {
                continue;
            }
            let mut columns = vec![None; unknowns];
            for (k, h) in local[j].iter().enumerate() {
                columns[offsets[j] + k] = Some(y.maps[a].compose(h).flat_entries().cloned().collect::<Vec<_>>());
            }
            for (k, h) in local[i].iter().enumerate() {
                let term: Vec<K::Elem> = h.compose(&x.maps[a]).flat_entries().map(|e| f.neg(e)).collect();
                columns[offsets[i] + k] = Some(term);
            }
            let len: usize = x.branches[j]
                .dims
                .iter()
                .zip(&y.branches[i].dims)
                .map(|(a, b)| a * b)
                .sum();
            for r in 0..len {
                let row: Vec<K::Elem> = columns
                    .iter()
                    .map(|c| c.as_ref().map_or_else(|| f.zero(), |c| c[r].clone()))
                    .collect();
                if row.iter().any(|e| !f.is_zero(e)) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            Matrix::identity(f, unknowns)
        } else {
            Matrix::from_rows(f, rows).kernel()
        };
        (0..kernel.cols())
            .map(|c| {
                let coeffs = kernel.column(c);
                LambdaMorphism {
                    components: (0..self.vertex_count())
                        .map(|i| {
                            self.base.combine(
                                &local[i],
                                &coeffs[offsets[i]..offsets[i + 1]],
                                &x.branches[i],
                                &y.branches[i],
                            )
                        })
                        .collect(),
                }
            })
            .collect()
    }

    pub fn hom_dim(&self, x: &LambdaRep<K>, y: &LambdaRep<K>) -> usize {
        self.hom_basis(x, y).len()
    }

    pub fn combine(
        &self,
        basis: &[LambdaMorphism<K>],
        coeffs: &[K::Elem],
        x: &LambdaRep<K>,
        y: &LambdaRep<K>,
    ) -> LambdaMorphism<K> {
        basis
            .iter()
            .zip(coeffs)
            .fold(self.zero_morphism(x, y), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    pub fn random_morphism<R: Rng + ?Sized>(
        &self,
        basis: &[LambdaMorphism<K>],
        x: &LambdaRep<K>,
        y: &LambdaRep<K>,
        rng: &mut R,
    ) -> LambdaMorphism<K> {
        let coeffs: Vec<K::Elem> = basis.iter().map(|_| self.field().random(rng)).collect();
        self.combine(basis, &coeffs, x, y)
    }

    /// Randomized isomorphism test; a positive answer is certain.
    pub fn is_isomorphic<R: Rng + ?Sized>(
        &self,
        x: &LambdaRep<K>,
        y: &LambdaRep<K>,
        trials: usize,
        rng: &mut R,
    ) -> bool {
        if x.dims() != y.dims() {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        let basis = self.hom_basis(x, y);
        (0..if basis.is_empty() { 0 } else { trials }).any(|_| self.random_morphism(&basis, x, y, rng).is_isomorphism())
    }

    /// The subrepresentation carried by a family of A-submodules, with its inclusion.
    pub fn subrep(&self, x: &LambdaRep<K>, family: &[Submodule<K>]) -> Result<(LambdaRep<K>, LambdaMorphism<K>)> {
        let mut branches = Vec::with_capacity(family.len());
        let mut incs = Vec::with_capacity(family.len());
        for (b, s) in x.branches.iter().zip(family) {
            let (m, inc) = self.base.submodule(b, s)?;
            branches.push(m);
            incs.push(inc);
        }
        let mut maps = Vec::with_capacity(x.maps.len());
        for (a, arrow) in self.quiver().arrows().iter().enumerate() {
            let (j, i) = (arrow.source, arrow.target);
            let blocks = (0..self.base.vertex_count())
                .map(|u| {
                    let moved = x.maps[a].blocks[u].mul(&incs[j].blocks[u]);
                    incs[i].blocks[u].solve(&moved).ok_or_else(|| {
                        Error::Invalid(format!("subspace family is not stable under arrow `{}`", arrow.name))
                    })
                })
                .collect::<Result<_>>()?;
            maps.push(AMap { blocks });
        }
        Ok((LambdaRep { branches, maps }, LambdaMorphism { components: incs }))
    }

    /// The quotient by a family of A-submodules stable under the arrows.
    pub fn quotient_rep(&self, x: &LambdaRep<K>, family: &[Submodule<K>]) -> Result<QuotientRep<K>> {
        let quotients = x
            .branches
            .iter()
            .zip(family)
            .map(|(b, s)| self.base.quotient(b, s))
            .collect::<Result<Vec<_>>>()?;
        let mut maps = Vec::with_capacity(x.maps.len());
        for (a, arrow) in self.quiver().arrows().iter().enumerate() {
            let (j, i) = (arrow.source, arrow.target);
            let moved = family[j].image_under(&x.maps[a]);
            if !family[i].contains(&moved) {
                return Err(Error::Invalid(format!(
                    "subspace family is not stable under arrow `{}`",
                    arrow.name
                )));
            }
            let blocks = (0..self.base.vertex_count())
                .map(|u| {
                    quotients[i].projection.blocks[u]
                        .mul(&x.maps[a].blocks[u])
                        .mul(&quotients[j].section[u])
                })
                .collect();
            maps.push(AMap { blocks });
        }
        let projection = LambdaMorphism {
            components: quotients.iter().map(|q| q.projection.clone()).collect(),
        };
        let branches = quotients.into_iter().map(|q| q.module).collect();
        Ok(QuotientRep {
            rep: LambdaRep { branches, maps },
            projection,
        })
    }

    pub fn kernel(&self, f: &LambdaMorphism<K>, domain: &LambdaRep<K>) -> (LambdaRep<K>, LambdaMorphism<K>) {
        self.subrep(domain, &f.kernel())
            .expect("kernels are subrepresentations")
    }

    pub fn image(&self, f: &LambdaMorphism<K>, codomain: &LambdaRep<K>) -> (LambdaRep<K>, LambdaMorphism<K>) {
        self.subrep(codomain, &f.image())
            .expect("images are subrepresentations")
    }

    pub fn cokernel(&self, f: &LambdaMorphism<K>, codomain: &LambdaRep<K>) -> QuotientRep<K> {
        self.quotient_rep(codomain, &f.image())
            .expect("images are subrepresentations")
    }

    /// `0 → x --f--> y --g--> z → 0` is exact at every branch and A-vertex.
    pub fn is_exact(&self, f: &LambdaMorphism<K>, g: &LambdaMorphism<K>) -> bool {
        f.is_injective()
            && g.is_surjective()
            && f.components.iter().zip(&g.components).all(|(fc, gc)| {
                fc.blocks
                    .iter()
                    .zip(&gc.blocks)
                    .all(|(fb, gb)| gb.mul(fb).is_zero() && fb.rank() + gb.rank() == gb.cols())
            })
    }

    /// Conjugates every branch by random invertible matrices.
    pub fn twist<R: Rng + ?Sized>(&self, x: &LambdaRep<K>, rng: &mut R) -> (LambdaRep<K>, LambdaMorphism<K>) {
        let f = self.field();
        let change: Vec<Vec<Matrix<K>>> = x
            .branches
            .iter()
            .map(|b| b.dims.iter().map(|&d| random_invertible(f, d, rng)).collect())
            .collect();
        let inverse: Vec<Vec<Matrix<K>>> = change
            .iter()
            .map(|c| c.iter().map(|m| m.inverse().expect("invertible")).collect())
            .collect();
        let branches = x
            .branches
            .iter()
            .enumerate()
            .map(|(i, b)| AModule {
                dims: b.dims.clone(),
                maps: self
                    .base
                    .quiver()
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(k, ar)| change[i][ar.target].mul(&b.maps[k]).mul(&inverse[i][ar.source]))
                    .collect(),
            })
            .collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| AMap {
                blocks: (0..self.base.vertex_count())
                    .map(|u| {
                        change[arrow.target][u]
                            .mul(&x.maps[a].blocks[u])
                            .mul(&inverse[arrow.source][u])
                    })
                    .collect(),
            })
            .collect();
        let iso = LambdaMorphism {
            components: change.into_iter().map(|blocks| AMap { blocks }).collect(),
        };
        (LambdaRep { branches, maps }, iso)
    }

    /// A random representation with branches of total dimension at most
    /// `max_branch_dim`. Arrow maps are drawn from `Hom_A` and constrained
    /// by each relation when its last arrow is drawn.
    pub fn random_rep<R: Rng + ?Sized>(&self, max_branch_dim: usize, rng: &mut R) -> LambdaRep<K> {
        let branches: Vec<AModule<K>> = (0..self.vertex_count())
            .map(|_| self.base.random_module(max_branch_dim, rng))
            .collect();
        self.random_maps(branches, rng)
    }

    /// Random arrow maps on fixed branches, satisfying the relations.
    pub fn random_maps<R: Rng + ?Sized>(&self, branches: Vec<AModule<K>>, rng: &mut R) -> LambdaRep<K> {
        let f = self.field().clone();
        let q = self.quiver();
        let mut order: Vec<usize> = (0..q.arrow_count()).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.label(q.arrow(a).source)));
        let mut last = None;
        for _ in 0..100 {
            let mut x = LambdaRep {
                maps: q
                    .arrows()
                    .iter()
                    .map(|arr| AMap::zero(&f, &branches[arr.source], &branches[arr.target]))
                    .collect(),
                branches: branches.clone(),
            };
            let mut degenerate = false;
            for &a in &order {
                let arr = q.arrow(a);
                let basis = self.base.hom_space(&branches[arr.source], &branches[arr.target]);
                if basis.is_empty() {
                    continue;
                }
                let prefixes: Vec<AMap<K>> = self
                    .bound
                    .ideal()
                    .generators()
                    .iter()
                    .filter(|g| g.last_arrow() == Some(a))
                    .map(|g| {
                        let prefix = Path::from_arrows(q, &g.arrows()[..g.len() - 1]).expect("subpath");
                        self.path_map(&x, &prefix)
                    })
                    .collect();
                let admissible = if prefixes.is_empty() {
                    Matrix::identity(&f, basis.len())
                } else {
                    let columns: Vec<Vec<K::Elem>> = basis
                        .iter()
                        .map(|h| {
                            prefixes
                                .iter()
                                .flat_map(|w| h.compose(w).flat_entries().cloned().collect::<Vec<_>>())
                                .collect()
                        })
                        .collect();
                    let rows = columns[0].len();
                    Matrix::from_columns(&f, rows, &columns).kernel()
                };
                if admissible.cols() == 0 {
                    degenerate = true;
                    continue;
                }
                let coeffs: Vec<K::Elem> = (0..admissible.cols()).map(|_| f.random(rng)).collect();
                let c = admissible.mul_vec(&coeffs);
                x.maps[a] = self
                    .base
                    .combine(&basis, &c, &branches[arr.source], &branches[arr.target]);
            }
            if !degenerate {
                return x;
            }
            last = Some(x);
        }
        last.expect("at least one attempt")
    }
}

fn in_context(e: Error, context: &str) -> Error {
    match e {
        Error::RelationViolated { relation, .. } => Error::RelationViolated {
            relation,
            context: context.to_string(),
        },
        Error::NotCommuting { arrow, .. } => Error::NotCommuting {
            arrow,
            context: context.to_string(),
        },
        Error::Dimension(m) => Error::Dimension(format!("{m}{context}")),
        other => other,
    }
}
