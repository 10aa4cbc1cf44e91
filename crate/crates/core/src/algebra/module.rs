use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

/// A left module over a monomial bound-quiver algebra, stored as a
/// representation: one space per vertex and one matrix per arrow, with
/// `maps[x]` of shape `dims[target(x)] x dims[source(x)]`.
///
/// Construct through [`BaseAlgebra`](super::BaseAlgebra), which validates
/// shapes and relations.
#[derive(Clone, Debug, PartialEq)]
pub struct AModule<K: Field> {
    pub(crate) dims: Vec<usize>,
    pub(crate) maps: Vec<Matrix<K>>,
}

impl<K: Field> AModule<K> {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn maps(&self) -> &[Matrix<K>] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Matrix<K> {
        &self.maps[arrow]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Start of each vertex block in the flattened space.
    pub fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect()
    }
}

/// A module homomorphism, one block per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct AMap<K: Field> {
    pub(crate) blocks: Vec<Matrix<K>>,
}

impl<K: Field> AMap<K> {
    pub fn from_blocks(blocks: Vec<Matrix<K>>) -> Self {
        Self { blocks }
    }

    pub fn zero(field: &K, domain: &AModule<K>, codomain: &AModule<K>) -> Self {
        let blocks = domain
            .dims
            .iter()
            .zip(&codomain.dims)
            .map(|(&dm, &dn)| Matrix::zeros(field, dn, dm))
            .collect();
        Self { blocks }
    }

    pub fn identity(field: &K, m: &AModule<K>) -> Self {
        Self {
            blocks: m.dims.iter().map(|&d| Matrix::identity(field, d)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Matrix<K>] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &Matrix<K> {
        &self.blocks[v]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            blocks: self.blocks.iter().zip(&inner.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        Self {
            blocks: self.blocks.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_injective)
    }
    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_surjective)
    }
    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// All entries in block order; used to flatten linear systems.
    pub fn flat_entries(&self) -> impl Iterator<Item = &K::Elem> {
        self.blocks.iter().flat_map(|b| b.entries().iter())
    }

    pub fn image(&self) -> Submodule<K> {
        Submodule {
            parts: self.blocks.iter().map(Subspace::column_span).collect(),
        }
    }

    pub fn kernel(&self) -> Submodule<K> {
        Submodule {
            parts: self.blocks.iter().map(|b| Subspace::column_span(&b.kernel())).collect(),
        }
    }

    /// `[self | other]` as a map out of a direct sum.
    pub fn hstack(&self, other: &Self) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| Matrix::hstack(a.field(), a.rows(), &[a, b]))
                .collect(),
        }
    }

    /// `[self ; other]` as a map into a direct sum.
    pub fn vstack(&self, other: &Self) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| Matrix::vstack(a.field(), a.cols(), &[a, b]))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| Matrix::block_diag(a.field(), &[a, b]))
                .collect(),
        }
    }
}

/// A vertexwise family of subspaces, typically an `A`-submodule.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule<K: Field> {
    pub parts: Vec<Subspace<K>>,
}

impl<K: Field> Submodule<K> {
    pub fn zero(field: &K, m: &AModule<K>) -> Self {
        Self {
            parts: m.dims.iter().map(|&d| Subspace::zero(field, d)).collect(),
        }
    }

    pub fn full(field: &K, m: &AModule<K>) -> Self {
        Self {
            parts: m.dims.iter().map(|&d| Subspace::full(field, d)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subspace::is_zero)
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.intersection(b))
                .collect(),
        }
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains(b))
    }

    /// Image under a module map.
    pub fn image_under(&self, f: &AMap<K>) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .zip(&f.blocks)
                .map(|(s, b)| s.image_under(b))
                .collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }
}
