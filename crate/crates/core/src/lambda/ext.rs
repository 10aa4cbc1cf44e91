//! `Ext¹` between representations via cocycles, and `Ext^i` via resolutions.

use rand::Rng;

use super::{CoverKind, Lambda, LambdaMorphism, LambdaRep};
use crate::algebra::{AMap, AModule};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// `0 → X --f--> Y --g--> Z → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq<K: Field> {
    pub x: LambdaRep<K>,
    pub y: LambdaRep<K>,
    pub z: LambdaRep<K>,
    pub f: LambdaMorphism<K>,
    pub g: LambdaMorphism<K>,
}

/// Extensions of `z` by `x` with middle term `x_i ⊕ z_i` and upper-triangular
/// structure maps. The off-diagonal blocks `δ` range over the cocycles `Z¹`;
/// changing the splitting by `h` adds the coboundary `x h − h z`.
#[derive(Clone, Debug)]
pub struct ExtCocycles<K: Field> {
    x: LambdaRep<K>,
    z: LambdaRep<K>,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    /// Representatives of a basis of `Z¹/B¹`.
    pub classes: Vec<Vec<K::Elem>>,
    pub cocycles: Subspace<K>,
    pub coboundaries: Subspace<K>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Block {
    /// `δ_{i,x}: (Z_i)_{s(x)} → (X_i)_{t(x)}` for an A-arrow `x`.
    Branch { vertex: usize, a_arrow: usize },
    /// `δ_{α,u}: (Z_j)_u → (X_i)_u` for a Q-arrow `α: j → i`.
    Arrow { arrow: usize, a_vertex: usize },
}

/// Rows of a linear system in block unknowns, built from terms `L δ R`.
struct BlockSystem<K: Field> {
    field: K,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    rows: Vec<Vec<K::Elem>>,
}

impl<K: Field> BlockSystem<K> {
    fn new(field: &K, shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = vec![0];
        for &(r, c) in &shapes {
            offsets.push(offsets.last().unwrap() + r * c);
        }
        Self {
            field: field.clone(),
            shapes,
            offsets,
            rows: Vec::new(),
        }
    }

    fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Adds the constraint `Σ ± L δ_b R = 0` of shape `rows x cols`.
    fn constrain(&mut self, rows: usize, cols: usize, terms: &[(Matrix<K>, usize, Matrix<K>, bool)]) {
        let f = &self.field;
        let n = self.unknowns();
        let mut block = vec![vec![f.zero(); n]; rows * cols];
        for (l, b, r, negate) in terms {
            let (br, bc) = self.shapes[*b];
            debug_assert_eq!((l.rows(), l.cols(), r.rows(), r.cols()), (rows, br, bc, cols));
            let k = l.kron(&r.transpose());
            for (row, out) in block.iter_mut().enumerate() {
                for c in 0..br * bc {
                    let e = k.get(row, c);
                    if f.is_zero(e) {
                        continue;
                    }
                    let idx = self.offsets[*b] + c;
                    out[idx] = if *negate {
                        f.sub(&out[idx], e)
                    } else {
                        f.add(&out[idx], e)
                    };
                }
            }
        }
        self.rows
            .extend(block.into_iter().filter(|r| r.iter().any(|e| !f.is_zero(e))));
    }

    fn solutions(&self) -> Matrix<K> {
        if self.rows.is_empty() {
            Matrix::identity(&self.field, self.unknowns())
        } else {
            Matrix::from_rows(&self.field, self.rows.clone()).kernel()
        }
    }
}

impl<K: Field> Lambda<K> {
    /// Product of the A-arrow matrices of `m` along `word[range]`.
    fn a_word(&self, m: &AModule<K>, word: &[usize], start_vertex: usize) -> Matrix<K> {
        word.iter()
            .fold(Matrix::identity(self.field(), m.dims[start_vertex]), |acc, &x| {
                m.maps[x].mul(&acc)
            })
    }

    fn q_word(&self, x: &LambdaRep<K>, word: &[usize], start_vertex: usize, u: usize) -> Matrix<K> {
        word.iter().fold(
            Matrix::identity(self.field(), x.branches[start_vertex].dims[u]),
            |acc, &a| x.maps[a].blocks[u].mul(&acc),
        )
    }

    pub fn ext1_cocycles(&self, x: &LambdaRep<K>, z: &LambdaRep<K>) -> ExtCocycles<K> {
        let f = self.field();
        let aq = self.base.quiver();
        let q = self.quiver();
        let mut blocks = Vec::new();
        let mut shapes = Vec::new();
        for i in 0..self.vertex_count() {
            for (k, ar) in aq.arrows().iter().enumerate() {
                blocks.push(Block::Branch { vertex: i, a_arrow: k });
                shapes.push((x.branches[i].dims[ar.target], z.branches[i].dims[ar.source]));
            }
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            for u in 0..self.base.vertex_count() {
                blocks.push(Block::Arrow { arrow: a, a_vertex: u });
                shapes.push((x.branches[arrow.target].dims[u], z.branches[arrow.source].dims[u]));
            }
        }
        let find = |b: Block| blocks.iter().position(|&c| c == b).unwrap();
        let mut sys = BlockSystem::new(f, shapes.clone());

        // A-relations in every branch
        for i in 0..self.vertex_count() {
            let (xb, zb) = (&x.branches[i], &z.branches[i]);
            for r in self.base.bound().ideal().generators() {
                let w = r.arrows();
                let terms: Vec<_> = (0..w.len())
                    .map(|t| {
                        let mid = aq.arrow(w[t]);
                        let left = self.a_word(xb, &w[t + 1..], mid.target);
                        let right = self.a_word(zb, &w[..t], r.source());
                        (
                            left,
                            find(Block::Branch {
                                vertex: i,
                                a_arrow: w[t],
                            }),
                            right,
                            false,
                        )
                    })
                    .collect();
                sys.constrain(xb.dims[r.target()], zb.dims[r.source()], &terms);
            }
        }
        // Q-arrows are A-maps
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (j, i) = (arrow.source, arrow.target);
            for (k, ar) in aq.arrows().iter().enumerate() {
                let (u, w) = (ar.source, ar.target);
                let terms = vec![
                    (
                        x.maps[a].blocks[w].clone(),
                        find(Block::Branch { vertex: j, a_arrow: k }),
                        Matrix::identity(f, z.branches[j].dims[u]),
                        false,
                    ),
                    (
                        Matrix::identity(f, x.branches[i].dims[w]),
                        find(Block::Arrow { arrow: a, a_vertex: w }),
                        z.branches[j].maps[k].clone(),
                        false,
                    ),
                    (
                        x.branches[i].maps[k].clone(),
                        find(Block::Arrow { arrow: a, a_vertex: u }),
                        Matrix::identity(f, z.branches[j].dims[u]),
                        true,
                    ),
                    (
                        Matrix::identity(f, x.branches[i].dims[w]),
                        find(Block::Branch { vertex: i, a_arrow: k }),
                        z.maps[a].blocks[u].clone(),
                        true,
                    ),
                ];
                sys.constrain(x.branches[i].dims[w], z.branches[j].dims[u], &terms);
            }
        }
        // Q-relations at every A-vertex
        for rho in self.bound.ideal().generators() {
            let w = rho.arrows();
            for u in 0..self.base.vertex_count() {
                let terms: Vec<_> = (0..w.len())
                    .map(|t| {
                        let mid = q.arrow(w[t]);
                        let left = self.q_word(x, &w[t + 1..], mid.target, u);
                        let right = self.q_word(z, &w[..t], rho.source(), u);
                        (
                            left,
                            find(Block::Arrow {
                                arrow: w[t],
                                a_vertex: u,
                            }),
                            right,
                            false,
                        )
                    })
                    .collect();
                sys.constrain(
                    x.branches[rho.target()].dims[u],
                    z.branches[rho.source()].dims[u],
                    &terms,
                );
            }
        }
        let z1 = sys.solutions();
        let cocycles = Subspace::column_span(&z1);

        // coboundaries δ = x h − h z
        let mut h_shapes = Vec::new();
        let mut h_offsets = vec![0];
        for i in 0..self.vertex_count() {
            for u in 0..self.base.vertex_count() {
                let s = (x.branches[i].dims[u], z.branches[i].dims[u]);
                h_shapes.push(s);
                h_offsets.push(h_offsets.last().unwrap() + s.0 * s.1);
            }
        }
        let na = self.base.vertex_count();
        let mut columns = Vec::new();
        for (hb, &(hr, hc)) in h_shapes.iter().enumerate() {
            let (i, u) = (hb / na, hb % na);
            for e in 0..hr * hc {
                let mut h = Matrix::zeros(f, hr, hc);
                h.set(e / hc, e % hc, f.one());
                let mut delta = vec![f.zero(); sys.unknowns()];
                let mut put = |b: usize, m: Matrix<K>| {
                    for (k, v) in m.entries().iter().enumerate() {
                        let idx = sys.offsets[b] + k;
                        delta[idx] = f.add(&delta[idx], v);
                    }
                };
                for (k, ar) in aq.arrows().iter().enumerate() {
                    let b = find(Block::Branch { vertex: i, a_arrow: k });
                    if ar.source == u {
                        put(b, x.branches[i].maps[k].mul(&h));
                    }
                    if ar.target == u {
                        put(b, h.mul(&z.branches[i].maps[k]).neg());
                    }
                }
                for (a, arrow) in q.arrows().iter().enumerate() {
                    let b = find(Block::Arrow { arrow: a, a_vertex: u });
                    if arrow.source == i {
                        put(b, x.maps[a].blocks[u].mul(&h));
                    }
                    if arrow.target == i {
                        put(b, h.mul(&z.maps[a].blocks[u]).neg());
                    }
                }
                columns.push(delta);
            }
        }
        let coboundaries = Subspace::from_vectors(f, sys.unknowns(), &columns);
        debug_assert!(cocycles.contains(&coboundaries));
        let mut span = coboundaries.clone();
        let mut classes = Vec::new();
        for v in cocycles.basis_vectors() {
            if !span.contains_vector(&v) {
                span = span.sum(&Subspace::from_vectors(f, sys.unknowns(), std::slice::from_ref(&v)));
                classes.push(v);
            }
        }
        ExtCocycles {
            x: x.clone(),
            z: z.clone(),
            blocks,
            offsets: sys.offsets,
            classes,
            cocycles,
            coboundaries,
        }
    }

    /// The extension determined by a cocycle.
    pub fn assemble_extension(&self, ext: &ExtCocycles<K>, delta: &[K::Elem]) -> ShortExactSeq<K> {
        let f = self.field();
        let (x, z) = (&ext.x, &ext.z);
        let aq = self.base.quiver();
        let block = |b: Block| -> Matrix<K> {
            let idx = ext.blocks.iter().position(|&c| c == b).unwrap();
            let (rows, cols) = match b {
                Block::Branch { vertex, a_arrow } => {
                    let ar = aq.arrow(a_arrow);
                    (x.branches[vertex].dims[ar.target], z.branches[vertex].dims[ar.source])
                }
                Block::Arrow { arrow, a_vertex } => {
                    let ar = self.quiver().arrow(arrow);
                    (
                        x.branches[ar.target].dims[a_vertex],
                        z.branches[ar.source].dims[a_vertex],
                    )
                }
            };
            Matrix::new(
                f.clone(),
                rows,
                cols,
                delta[ext.offsets[idx]..ext.offsets[idx + 1]].to_vec(),
            )
        };
        let upper = |a: &Matrix<K>, d: Matrix<K>, c: &Matrix<K>| {
            let mut m = Matrix::zeros(f, a.rows() + c.rows(), a.cols() + c.cols());
            m.paste(0, 0, a);
            m.paste(0, a.cols(), &d);
            m.paste(a.rows(), a.cols(), c);
            m
        };
        let branches: Vec<AModule<K>> = (0..self.vertex_count())
            .map(|i| AModule {
                dims: x.branches[i]
                    .dims
                    .iter()
                    .zip(&z.branches[i].dims)
                    .map(|(a, b)| a + b)
                    .collect(),
                maps: (0..aq.arrow_count())
                    .map(|k| {
                        upper(
                            &x.branches[i].maps[k],
                            block(Block::Branch { vertex: i, a_arrow: k }),
                            &z.branches[i].maps[k],
                        )
                    })
                    .collect(),
            })
            .collect();
        let maps = (0..self.quiver().arrow_count())
            .map(|a| AMap {
                blocks: (0..self.base.vertex_count())
                    .map(|u| {
                        upper(
                            &x.maps[a].blocks[u],
                            block(Block::Arrow { arrow: a, a_vertex: u }),
                            &z.maps[a].blocks[u],
                        )
                    })
                    .collect(),
            })
            .collect();
        let y = LambdaRep { branches, maps };
        let [fi, _, _, gp] = self.biproduct_maps(x, z);
        ShortExactSeq {
            x: x.clone(),
            y,
            z: z.clone(),
            f: fi,
            g: gp,
        }
    }

    /// A random extension of `z` by `x`; the class is uniform over `Ext¹(z, x)`.
    pub fn sample_extension<R: Rng + ?Sized>(
        &self,
        x: &LambdaRep<K>,
        z: &LambdaRep<K>,
        rng: &mut R,
    ) -> ShortExactSeq<K> {
        let ext = self.ext1_cocycles(x, z);
        let f = self.field();
        let n = ext.cocycles.ambient();
        let mut delta = vec![f.zero(); n];
        for c in &ext.classes {
            let s = f.random(rng);
            for (d, v) in delta.iter_mut().zip(c) {
                *d = f.add(d, &f.mul(&s, v));
            }
        }
        self.assemble_extension(&ext, &delta)
    }

    /// `dim Ext^i(l, n)` by dimension shifting along a projective resolution of `l`.
    pub fn ext_dim(&self, l: &LambdaRep<K>, n: &LambdaRep<K>, i: usize, kind: CoverKind) -> usize {
        assert!(i >= 1, "Ext degree starts at 1");
        let mut current = l.clone();
        for _ in 1..i {
            current = self.syzygy(&current, kind).syzygy;
        }
        let step = self.syzygy(&current, kind);
        self.ext1_from_step(&current, &step, n)
    }

    /// `dim Ext¹(l, n) = dim Hom(Ωl, n) − dim Hom(P, n) + dim Hom(l, n)`.
    pub(crate) fn ext1_from_step(&self, l: &LambdaRep<K>, step: &super::ResolutionStep<K>, n: &LambdaRep<K>) -> usize {
        if l.is_zero() || step.syzygy.is_zero() {
            return 0;
        }
        let hom_p = self.free_hom_dim(&step.cover.free.tops, n);
        self.hom_dim(&step.syzygy, n) + self.hom_dim(l, n) - hom_p
    }

    /// `dim Hom(⊕ P_A(u) ⊗ P(v), n) = Σ dim (n_v)_u`.
    pub fn free_hom_dim(&self, tops: &[(usize, usize)], n: &LambdaRep<K>) -> usize {
        tops.iter().map(|&(v, u)| n.branches[v].dims[u]).sum()
    }
}

impl<K: Field> ExtCocycles<K> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{running_lambda, running_rep};
    use super::*;
    use crate::algebra::tests::{a2, dual_numbers};
    use crate::algebra::BaseAlgebra;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn residue_field_extensions() {
        let a = dual_numbers();
        let lam = Lambda::point(a.clone());
        let k = Lambda::point_rep(a.simple(0));
        let e = lam.ext1_cocycles(&k, &k);
        assert_eq!(e.dim(), 1);
        assert_eq!(lam.ext_dim(&k, &k, 1, CoverKind::Minimal), 1);
        let seq = lam.assemble_extension(&e, &e.classes[0]);
        assert!(lam.is_exact(&seq.f, &seq.g));
        let reg = Lambda::point_rep(a.regular());
        assert!(lam.is_isomorphic(&seq.y, &reg, 8, &mut ChaCha8Rng::seed_from_u64(1)));
        let split = lam.assemble_extension(&e, &vec![PrimeField::default().zero(); e.cocycles.ambient()]);
        assert_eq!(split.y, lam.direct_sum(&k, &k));
    }

    #[test]
    fn a2_simple_extension() {
        let b = a2();
        let lam = Lambda::point(b.clone());
        let s1 = Lambda::point_rep(b.simple(0));
        let s2 = Lambda::point_rep(b.simple(1));
        assert_eq!(lam.ext_dim(&s2, &s1, 1, CoverKind::Minimal), 1);
        assert_eq!(lam.ext1_cocycles(&s1, &s2).dim(), 1);
        assert_eq!(lam.ext1_cocycles(&s2, &s1).dim(), 0);
        let p = Lambda::point_rep(b.projective(1));
        for i in 1..3 {
            assert_eq!(lam.ext_dim(&p, &s1, i, CoverKind::Minimal), 0);
        }
    }

    #[test]
    fn cocycles_agree_with_resolutions() {
        let lam = running_lambda();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = running_rep();
        for _ in 0..6 {
            let z = lam.random_rep(3, &mut rng);
            let by_cocycles = lam.ext1_cocycles(&x, &z).dim();
            for kind in [CoverKind::Minimal, CoverKind::Counit, CoverKind::Basis] {
                assert_eq!(lam.ext_dim(&z, &x, 1, kind), by_cocycles);
            }
            let seq = lam.sample_extension(&x, &z, &mut rng);
            lam.validate(&seq.y).unwrap();
            lam.check_morphism(&seq.f, &seq.x, &seq.y).unwrap();
            lam.check_morphism(&seq.g, &seq.y, &seq.z).unwrap();
            assert!(lam.is_exact(&seq.f, &seq.g));
        }
    }

    #[test]
    fn higher_ext_agrees_across_covers() {
        let a = BaseAlgebra::truncated_polynomial(PrimeField::default(), 3).unwrap();
        let lam = Lambda::point(a.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let m = Lambda::point_rep(a.random_module(4, &mut rng));
            let n = Lambda::point_rep(a.random_module(4, &mut rng));
            for i in 1..4 {
                assert_eq!(
                    lam.ext_dim(&m, &n, i, CoverKind::Minimal),
                    lam.ext_dim(&m, &n, i, CoverKind::Counit)
                );
            }
        }
    }
}
