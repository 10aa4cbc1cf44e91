//! The base algebra `A = kQ_A/I_A` (monomial, possibly with loops) and its
//! module category.

mod module;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::{BoundQuiver, MonomialIdeal, Path, Quiver};

pub use module::{AMap, AModule, Submodule};

/// Outcome of a randomized isomorphism test. `Isomorphic` is certain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic,
    /// Dimension vectors differ, or there are no nonzero maps at all.
    NotIsomorphic,
    /// No invertible map among the sampled homomorphisms.
    ProbablyNot {
        trials: usize,
    },
}

impl IsoOutcome {
    pub fn is_isomorphic(self) -> bool {
        self == Self::Isomorphic
    }
}

/// A quotient module with its projection and a vertexwise linear section.
#[derive(Clone, Debug)]
pub struct QuotientModule<K: Field> {
    pub module: AModule<K>,
    pub projection: AMap<K>,
    /// Right inverse of `projection`, linear only.
    pub section: Vec<Matrix<K>>,
}

#[derive(Clone, Debug)]
pub struct BaseAlgebra<K: Field> {
    field: K,
    bound: BoundQuiver,
    mult: Vec<Option<usize>>,
}

impl<K: Field> PartialEq for BaseAlgebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.bound == other.bound
    }
}

impl<K: Field> BaseAlgebra<K> {
    pub fn new(field: K, quiver: Quiver, ideal: MonomialIdeal) -> Result<Self> {
        Self::with_length_cap(field, quiver, ideal, BoundQuiver::DEFAULT_LENGTH_CAP)
    }

    pub fn with_length_cap(field: K, quiver: Quiver, ideal: MonomialIdeal, cap: usize) -> Result<Self> {
        let bound = BoundQuiver::with_length_cap(quiver, ideal, cap)?;
        Ok(Self::from_bound(field, bound))
    }

    fn from_bound(field: K, bound: BoundQuiver) -> Self {
        let n = bound.nonzero_paths().len();
        let mult = (0..n * n).map(|k| bound.multiply(k / n, k % n)).collect();
        Self { field, bound, mult }
    }

    /// The ground field as an algebra: one vertex, no arrows.
    pub fn ground(field: K) -> Self {
        let q = Quiver::new(vec!["k".into()], vec![]).expect("one vertex");
        Self::new(field, q, MonomialIdeal::zero()).expect("finite")
    }

    /// `k[x]/(x^n)`.
    pub fn truncated_polynomial(field: K, n: usize) -> Result<Self> {
        let q = Quiver::new(
            vec!["a".into()],
            vec![crate::quiver::Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
            }],
        )?;
        let word = vec![0; n];
        let ideal = MonomialIdeal::new(&q, vec![Path::from_arrows(&q, &word)?])?;
        Self::new(field, q, ideal)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn bound(&self) -> &BoundQuiver {
        &self.bound
    }
    pub fn quiver(&self) -> &Quiver {
        self.bound.quiver()
    }
    pub fn vertex_count(&self) -> usize {
        self.bound.vertex_count()
    }
    pub fn dim(&self) -> usize {
        self.bound.nonzero_paths().len()
    }

    /// Basis index of `outer · inner`, if nonzero.
    pub fn multiply(&self, outer: usize, inner: usize) -> Option<usize> {
        self.mult[outer * self.dim() + inner]
    }

    /// The radical (arrow ideal) vanishes.
    pub fn is_semisimple(&self) -> bool {
        self.quiver().arrow_count() == 0
    }

    pub fn opposite(&self) -> Self {
        Self::from_bound(self.field.clone(), self.bound.opposite())
    }

    pub fn zero_module(&self) -> AModule<K> {
        self.module_from_parts(vec![0; self.vertex_count()], None)
    }

    fn module_from_parts(&self, dims: Vec<usize>, maps: Option<Vec<Matrix<K>>>) -> AModule<K> {
        let maps = maps.unwrap_or_else(|| {
            self.quiver()
                .arrows()
                .iter()
                .map(|a| Matrix::zeros(&self.field, dims[a.target], dims[a.source]))
                .collect()
        });
        AModule { dims, maps }
    }

    /// Validates shapes and relations.
    pub fn module(&self, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Result<AModule<K>> {
        if dims.len() != self.vertex_count() {
            return Err(Error::Dimension(format!(
                "{} vertex dimensions given, algebra has {} vertices",
                dims.len(),
                self.vertex_count()
            )));
        }
        if maps.len() != self.quiver().arrow_count() {
            return Err(Error::Dimension(format!(
                "{} arrow matrices given, algebra has {} arrows",
                maps.len(),
                self.quiver().arrow_count()
            )));
        }
        for (a, m) in self.quiver().arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Dimension(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let m = AModule { dims, maps };
        for g in self.bound.ideal().generators() {
            if !self.act_path(&m, g).is_zero() {
                return Err(Error::RelationViolated {
                    relation: g.display(self.quiver()).to_string(),
                    context: String::new(),
                });
            }
        }
        Ok(m)
    }

    /// Matrix of the path `p` acting on `m`.
    pub fn act_path(&self, m: &AModule<K>, p: &Path) -> Matrix<K> {
        p.arrows()
            .iter()
            .fold(Matrix::identity(&self.field, m.dims[p.source()]), |acc, &a| {
                m.maps[a].mul(&acc)
            })
    }

    /// Matrix of the basis path with index `idx` acting on `m`.
    pub fn act(&self, m: &AModule<K>, idx: usize) -> Matrix<K> {
        self.act_path(m, self.bound.path(idx))
    }

    /// Checks that `f` is a module map `m -> n`.
    pub fn check_map(&self, f: &AMap<K>, m: &AModule<K>, n: &AModule<K>) -> Result<()> {
        if f.blocks.len() != self.vertex_count() {
            return Err(Error::Dimension("map has the wrong number of vertex blocks".into()));
        }
        for (v, b) in f.blocks.iter().enumerate() {
            if b.shape() != (n.dims[v], m.dims[v]) {
                return Err(Error::Dimension(format!(
                    "block at vertex `{}` is {}x{}, expected {}x{}",
                    self.quiver().vertex_name(v),
                    b.rows(),
                    b.cols(),
                    n.dims[v],
                    m.dims[v]
                )));
            }
        }
        for (x, a) in self.quiver().arrows().iter().enumerate() {
            let lhs = n.maps[x].mul(&f.blocks[a.source]);
            let rhs = f.blocks[a.target].mul(&m.maps[x]);
            if lhs != rhs {
                return Err(Error::NotCommuting {
                    arrow: a.name.clone(),
                    context: " (not an A-map)".into(),
                });
            }
        }
        Ok(())
    }

    /// `P(v) = A e_v`: basis at `w` is the nonzero paths `v → w`.
    pub fn projective(&self, v: usize) -> AModule<K> {
        let basis: Vec<Vec<usize>> = (0..self.vertex_count())
            .map(|w| self.bound.paths_from_to(v, w))
            .collect();
        let dims = basis.iter().map(Vec::len).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(x, a)| {
                let arrow_idx = self.bound.index_of(&Path::arrow(self.quiver(), x)).unwrap();
                let mut m = Matrix::zeros(&self.field, basis[a.target].len(), basis[a.source].len());
                for (c, &p) in basis[a.source].iter().enumerate() {
                    if let Some(q) = self.multiply(arrow_idx, p) {
                        let r = basis[a.target].iter().position(|&b| b == q).unwrap();
                        m.set(r, c, self.field.one());
                    }
                }
                m
            })
            .collect();
        self.module_from_parts(dims, Some(maps))
    }

    pub fn indecomposable_projectives(&self) -> Vec<AModule<K>> {
        (0..self.vertex_count()).map(|v| self.projective(v)).collect()
    }

    /// `D(e_v A)`: basis at `w` is dual to the nonzero paths `w → v`.
    pub fn injective(&self, v: usize) -> AModule<K> {
        let basis: Vec<Vec<usize>> = (0..self.vertex_count())
            .map(|w| self.bound.paths_from_to(w, v))
            .collect();
        let dims = basis.iter().map(Vec::len).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(x, a)| {
                let mut m = Matrix::zeros(&self.field, basis[a.target].len(), basis[a.source].len());
                for (c, &r) in basis[a.source].iter().enumerate() {
                    let path = self.bound.path(r);
                    if path.first_arrow() != Some(x) {
                        continue;
                    }
                    // r = q·x, so x·r* = q*
                    let rest = path.arrows()[1..].to_vec();
                    let q = if rest.is_empty() {
                        Path::trivial(a.target)
                    } else {
                        Path::from_arrows(self.quiver(), &rest).unwrap()
                    };
                    let qi = self.bound.index_of(&q).unwrap();
                    let row = basis[a.target].iter().position(|&b| b == qi).unwrap();
                    m.set(row, c, self.field.one());
                }
                m
            })
            .collect();
        self.module_from_parts(dims, Some(maps))
    }

    pub fn dual_injectives(&self) -> Vec<AModule<K>> {
        (0..self.vertex_count()).map(|v| self.injective(v)).collect()
    }

    /// `A` as a left module over itself.
    pub fn regular(&self) -> AModule<K> {
        self.direct_sum_all(&self.indecomposable_projectives())
    }

    /// `D(A_A)`.
    pub fn dual_regular(&self) -> AModule<K> {
        self.direct_sum_all(&self.dual_injectives())
    }

    /// Simple module at `v`.
    pub fn simple(&self, v: usize) -> AModule<K> {
        let mut dims = vec![0; self.vertex_count()];
        dims[v] = 1;
        self.module_from_parts(dims, None)
    }

    pub fn direct_sum(&self, m: &AModule<K>, n: &AModule<K>) -> AModule<K> {
        let dims = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
        let maps = m
            .maps
            .iter()
            .zip(&n.maps)
            .map(|(a, b)| Matrix::block_diag(&self.field, &[a, b]))
            .collect();
        AModule { dims, maps }
    }

    pub fn direct_sum_all(&self, ms: &[AModule<K>]) -> AModule<K> {
        ms.iter().fold(self.zero_module(), |acc, m| self.direct_sum(&acc, m))
    }

    /// `m^{⊕c}`, copies ordered first within each vertex block.
    pub fn power(&self, m: &AModule<K>, c: usize) -> AModule<K> {
        let id = Matrix::identity(&self.field, c);
        AModule {
            dims: m.dims.iter().map(|d| d * c).collect(),
            maps: m.maps.iter().map(|x| id.kron(x)).collect(),
        }
    }

    /// Basis of `Hom_A(m, n)`.
    pub fn hom_space(&self, m: &AModule<K>, n: &AModule<K>) -> Vec<AMap<K>> {
        let f = &self.field;
        let nv = self.vertex_count();
        let mut offsets = Vec::with_capacity(nv + 1);
        offsets.push(0);
        for v in 0..nv {
            offsets.push(offsets[v] + n.dims[v] * m.dims[v]);
        }
        let unknowns = offsets[nv];
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for (x, a) in self.quiver().arrows().iter().enumerate() {
            let (u, w) = (a.source, a.target);
            let (nx, mx) = (&n.maps[x], &m.maps[x]);
            // (N_x f_u - f_w M_x)[r][c] = 0
            for r in 0..n.dims[w] {
                for c in 0..m.dims[u] {
                    let mut row = vec![f.zero(); unknowns];
                    for k in 0..n.dims[u] {
                        let coef = nx.get(r, k);
                        let idx = offsets[u] + k * m.dims[u] + c;
                        row[idx] = f.add(&row[idx], coef);
                    }
                    for k in 0..m.dims[w] {
                        let coef = mx.get(k, c);
                        let idx = offsets[w] + r * m.dims[w] + k;
                        row[idx] = f.sub(&row[idx], coef);
                    }
                    if row.iter().any(|e| !f.is_zero(e)) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            Matrix::identity(f, unknowns)
        } else {
            Matrix::from_rows(f, rows).kernel()
        };
        (0..kernel.cols())
            .map(|j| {
                let col = kernel.column(j);
                let blocks = (0..nv)
                    .map(|v| {
                        let data = col[offsets[v]..offsets[v + 1]].to_vec();
                        Matrix::new(f.clone(), n.dims[v], m.dims[v], data)
                    })
                    .collect();
                AMap { blocks }
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &AModule<K>, n: &AModule<K>) -> usize {
        self.hom_space(m, n).len()
    }

    /// Linear combination of maps.
    pub fn combine(&self, basis: &[AMap<K>], coeffs: &[K::Elem], m: &AModule<K>, n: &AModule<K>) -> AMap<K> {
        basis
            .iter()
            .zip(coeffs)
            .fold(AMap::zero(&self.field, m, n), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    pub fn random_map<R: Rng + ?Sized>(
        &self,
        basis: &[AMap<K>],
        m: &AModule<K>,
        n: &AModule<K>,
        rng: &mut R,
    ) -> AMap<K> {
        let coeffs: Vec<K::Elem> = basis.iter().map(|_| self.field.random(rng)).collect();
        self.combine(basis, &coeffs, m, n)
    }

    /// Randomized isomorphism test; a positive answer is certain.
    pub fn is_isomorphic<R: Rng + ?Sized>(
        &self,
        m: &AModule<K>,
        n: &AModule<K>,
        trials: usize,
        rng: &mut R,
    ) -> IsoOutcome {
        if m.dims != n.dims {
            return IsoOutcome::NotIsomorphic;
        }
        if m.is_zero() {
            return IsoOutcome::Isomorphic;
        }
        let basis = self.hom_space(m, n);
        if basis.is_empty() {
            return IsoOutcome::NotIsomorphic;
        }
        for _ in 0..trials {
            if self.random_map(&basis, m, n, rng).is_isomorphism() {
                return IsoOutcome::Isomorphic;
            }
        }
        IsoOutcome::ProbablyNot { trials }
    }

    /// `A ≅ D(A)` as left modules (randomized; see [`IsoOutcome`]).
    pub fn is_self_injective<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> bool {
        self.is_isomorphic(&self.regular(), &self.dual_regular(), trials, rng)
            .is_isomorphic()
    }

    /// Module structure on a submodule, with its inclusion. Errors if `sub`
    /// is not stable under the arrows.
    pub fn submodule(&self, m: &AModule<K>, sub: &Submodule<K>) -> Result<(AModule<K>, AMap<K>)> {
        let bases: Vec<Matrix<K>> = sub.parts.iter().map(Subspace::basis_columns).collect();
        let dims: Vec<usize> = sub.parts.iter().map(Subspace::dim).collect();
        let mut maps = Vec::with_capacity(m.maps.len());
        for (x, a) in self.quiver().arrows().iter().enumerate() {
            let moved = m.maps[x].mul(&bases[a.source]);
            let r = bases[a.target]
                .solve(&moved)
                .ok_or_else(|| Error::Invalid(format!("subspace family is not stable under arrow `{}`", a.name)))?;
            maps.push(r);
        }
        Ok((AModule { dims, maps }, AMap { blocks: bases }))
    }

    pub fn kernel(&self, f: &AMap<K>, domain: &AModule<K>) -> (AModule<K>, AMap<K>) {
        self.submodule(domain, &f.kernel()).expect("kernels are submodules")
    }

    pub fn image(&self, f: &AMap<K>, codomain: &AModule<K>) -> (AModule<K>, AMap<K>) {
        self.submodule(codomain, &f.image()).expect("images are submodules")
    }

    pub fn quotient(&self, m: &AModule<K>, sub: &Submodule<K>) -> Result<QuotientModule<K>> {
        let quotients: Vec<_> = sub.parts.iter().map(Subspace::quotient).collect();
        let mut maps = Vec::with_capacity(m.maps.len());
        for (x, a) in self.quiver().arrows().iter().enumerate() {
            let moved = m.maps[x].mul(&sub.parts[a.source].basis_columns());
            if !quotients[a.target].projection.mul(&moved).is_zero() {
                return Err(Error::Invalid(format!(
                    "subspace family is not stable under arrow `{}`",
                    a.name
                )));
            }
            let q = &quotients[a.target];
            maps.push(q.projection.mul(&m.maps[x]).mul(&quotients[a.source].section));
        }
        let dims = quotients.iter().map(|q| q.dim).collect();
        Ok(QuotientModule {
            module: AModule { dims, maps },
            projection: AMap {
                blocks: quotients.iter().map(|q| q.projection.clone()).collect(),
            },
            section: quotients.into_iter().map(|q| q.section).collect(),
        })
    }

    pub fn cokernel(&self, f: &AMap<K>, codomain: &AModule<K>) -> QuotientModule<K> {
        self.quotient(codomain, &f.image()).expect("images are submodules")
    }

    /// `rad m = Σ_x Im m_x`.
    pub fn radical(&self, m: &AModule<K>) -> Submodule<K> {
        let mut parts: Vec<Subspace<K>> = m.dims.iter().map(|&d| Subspace::zero(&self.field, d)).collect();
        for (x, a) in self.quiver().arrows().iter().enumerate() {
            parts[a.target] = parts[a.target].sum(&Subspace::column_span(&m.maps[x]));
        }
        Submodule { parts }
    }

    /// Submodule generated by elements `(vertex, vector)`.
    pub fn generated(&self, m: &AModule<K>, elements: &[(usize, Vec<K::Elem>)]) -> Submodule<K> {
        let mut vectors: Vec<Vec<Vec<K::Elem>>> = vec![Vec::new(); self.vertex_count()];
        for (v, e) in elements {
            for p in self.bound.paths_from(*v) {
                let w = self.bound.path(p).target();
                vectors[w].push(self.act(m, p).mul_vec(e));
            }
        }
        Submodule {
            parts: vectors
                .iter()
                .enumerate()
                .map(|(w, vs)| Subspace::from_vectors(&self.field, m.dims[w], vs))
                .collect(),
        }
    }

    /// Conjugates every vertex space by a random invertible matrix.
    pub fn twist<R: Rng + ?Sized>(&self, m: &AModule<K>, rng: &mut R) -> (AModule<K>, AMap<K>) {
        let change: Vec<Matrix<K>> = m.dims.iter().map(|&d| random_invertible(&self.field, d, rng)).collect();
        let inverses: Vec<Matrix<K>> = change.iter().map(|c| c.inverse().unwrap()).collect();
        let maps = self
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(x, a)| change[a.target].mul(&m.maps[x]).mul(&inverses[a.source]))
            .collect();
        (
            AModule {
                dims: m.dims.clone(),
                maps,
            },
            AMap { blocks: change },
        )
    }

    /// A random module of total dimension at most `max_dim`, realized as a
    /// quotient of a free module by a randomly generated submodule.
    pub fn random_module<R: Rng + ?Sized>(&self, max_dim: usize, rng: &mut R) -> AModule<K> {
        let nv = self.vertex_count();
        for _ in 0..200 {
            let gens = rng.gen_range(1..=3);
            let tops: Vec<usize> = (0..gens).map(|_| rng.gen_range(0..nv)).collect();
            let free = self.direct_sum_all(&tops.iter().map(|&v| self.projective(v)).collect::<Vec<_>>());
            let rad = self.radical(&free);
            let relations = rng.gen_range(0..=free.total_dim().max(1));
            let mut elements = Vec::new();
            for _ in 0..relations {
                let v = rng.gen_range(0..nv);
                if free.dims[v] == 0 {
                    continue;
                }
                let vec = if rng.gen_bool(0.6) && !rad.parts[v].is_zero() {
                    let b = rad.parts[v].basis_columns();
                    let c: Vec<K::Elem> = (0..b.cols()).map(|_| self.field.random(rng)).collect();
                    b.mul_vec(&c)
                } else {
                    (0..free.dims[v]).map(|_| self.field.random(rng)).collect()
                };
                elements.push((v, vec));
            }
            let sub = self.generated(&free, &elements);
            let q = self.quotient(&free, &sub).expect("generated submodule").module;
            if q.total_dim() <= max_dim {
                return self.twist(&q, rng).0;
            }
        }
        self.zero_module()
    }
}

pub(crate) fn random_invertible<K: Field, R: Rng + ?Sized>(field: &K, n: usize, rng: &mut R) -> Matrix<K> {
    loop {
        let m = Matrix::random(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::parse_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn dual_numbers() -> BaseAlgebra<PrimeField> {
        BaseAlgebra::truncated_polynomial(PrimeField::default(), 2).unwrap()
    }

    /// Path algebra of 2 → 1.
    pub(crate) fn a2() -> BaseAlgebra<PrimeField> {
        let q = Quiver::numbered(2, &[("a", 2, 1)]).unwrap();
        BaseAlgebra::new(PrimeField::default(), q, MonomialIdeal::zero()).unwrap()
    }

    /// The residue field `k` over `k[x]/(x²)`.
    pub(crate) fn residue(alg: &BaseAlgebra<PrimeField>) -> AModule<PrimeField> {
        alg.simple(0)
    }

    #[test]
    fn dimensions() {
        let a = dual_numbers();
        assert_eq!(a.dim(), 2);
        let names: Vec<String> = a
            .bound()
            .nonzero_paths()
            .iter()
            .map(|p| p.display(a.quiver()).to_string())
            .collect();
        assert_eq!(names, ["e_a", "x"]);
        assert_eq!(a2().dim(), 3);
        assert_eq!(BaseAlgebra::ground(PrimeField::default()).dim(), 1);
    }

    #[test]
    fn infinite_algebras_are_rejected() {
        let q = Quiver::numbered(1, &[("x", 1, 1)]).unwrap();
        assert!(matches!(
            BaseAlgebra::new(PrimeField::default(), q, MonomialIdeal::zero()),
            Err(Error::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn projectives_and_injectives() {
        let a = dual_numbers();
        assert_eq!(a.projective(0).total_dim(), 2);
        assert_eq!(BaseAlgebra::ground(PrimeField::default()).projective(0).total_dim(), 1);
        let b = a2();
        // vertex index 0 is label 1 (the sink)
        assert_eq!(b.projective(0).dims(), &[1, 0]);
        assert_eq!(b.projective(1).dims(), &[1, 1]);
        assert_eq!(b.injective(0).total_dim(), 2);
        assert_eq!(b.injective(1).total_dim(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(a
            .is_isomorphic(&a.regular(), &a.dual_regular(), 32, &mut rng)
            .is_isomorphic());
        assert!(a.is_self_injective(32, &mut rng));
        assert!(!b.is_self_injective(32, &mut rng));
    }

    #[test]
    fn hom_dimensions_of_the_dual_numbers() {
        let a = dual_numbers();
        let k = residue(&a);
        let reg = a.regular();
        assert_eq!(a.hom_dim(&reg, &k), 1);
        assert_eq!(a.hom_dim(&k, &reg), 1);
        assert_eq!(a.hom_dim(&reg, &reg), 2);
    }

    #[test]
    fn module_validation() {
        let a = dual_numbers();
        let f = *a.field();
        let bad = Matrix::from_i64(&f, &[&[0, 1], &[1, 0]]);
        assert!(matches!(
            a.module(vec![2], vec![bad]),
            Err(Error::RelationViolated { .. })
        ));
        let wrong_shape = Matrix::from_i64(&f, &[&[0, 1]]);
        assert!(matches!(a.module(vec![2], vec![wrong_shape]), Err(Error::Dimension(_))));
    }

    #[test]
    fn isomorphism_rejections() {
        let a = dual_numbers();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = residue(&a);
        assert!(a.is_isomorphic(&k, &k, 4, &mut rng).is_isomorphic());
        assert_eq!(
            a.is_isomorphic(&k, &a.regular(), 4, &mut rng),
            IsoOutcome::NotIsomorphic
        );
        let kk = a.direct_sum(&k, &k);
        assert!(!a.is_isomorphic(&kk, &a.regular(), 16, &mut rng).is_isomorphic());
    }

    #[test]
    fn kernels_and_cokernels() {
        let a = dual_numbers();
        let reg = a.regular();
        // multiplication by x
        let x = a
            .hom_space(&reg, &reg)
            .into_iter()
            .find(|f| !f.is_isomorphism() && !f.is_zero())
            .unwrap();
        let (k, inc) = a.kernel(&x, &reg);
        assert_eq!(k.total_dim(), 1);
        a.check_map(&inc, &k, &reg).unwrap();
        let c = a.cokernel(&x, &reg);
        assert_eq!(c.module.total_dim(), 1);
        a.check_map(&c.projection, &reg, &c.module).unwrap();
    }

    #[test]
    fn random_modules_satisfy_relations() {
        let a = dual_numbers();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = a.random_module(4, &mut rng);
            assert!(m.total_dim() <= 4);
            a.module(m.dims.clone(), m.maps.clone()).unwrap();
        }
        let q = Quiver::numbered(3, &[("a", 3, 2), ("b", 2, 1)]).unwrap();
        let ideal = MonomialIdeal::new(&q, vec![parse_word(&q, "b.a").unwrap()]).unwrap();
        let alg = BaseAlgebra::new(PrimeField::default(), q, ideal).unwrap();
        for _ in 0..20 {
            let m = alg.random_module(5, &mut rng);
            alg.module(m.dims.clone(), m.maps.clone()).unwrap();
        }
    }
}
