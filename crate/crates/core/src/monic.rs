//! The monic conditions (m1)/(m2), their consequences for path maps,
//! condition (G), and the Gorenstein-projectivity deciders.

use crate::algebra::{AMap, AModule, Submodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda::{Lambda, LambdaMorphism, LambdaRep};
use crate::linalg::{sum_is_direct, Dependency, Subspace};
use crate::oracle::{GpOracle, GpStatus, GpVerdict};
use crate::quiver::{Path, SubQuiver};

/// A failure of (m1) at one A-vertex: images that sum to zero nontrivially.
#[derive(Clone, Debug, PartialEq)]
pub struct M1Witness<K: Field> {
    pub a_vertex: usize,
    /// Incoming arrows, in the order of `dependency.components`.
    pub arrows: Vec<usize>,
    pub dependency: Dependency<K>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexCheck<K: Field> {
    pub vertex: usize,
    pub ok: bool,
    pub witness: Option<M1Witness<K>>,
}

/// A failure of (m2): a kernel vector outside `Σ_{q ∈ K_α} Im X_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct M2Witness<K: Field> {
    pub a_vertex: usize,
    pub vector: Vec<K::Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrowCheck<K: Field> {
    pub arrow: usize,
    pub ok: bool,
    pub witness: Option<M2Witness<K>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonicReport<K: Field> {
    pub per_vertex: Vec<VertexCheck<K>>,
    pub per_arrow: Vec<ArrowCheck<K>>,
    pub monic: bool,
}

/// Which reading of the arrow sets `B₁`, `B₂` a clause was checked under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BReading {
    /// Witnessing paths `q` range over nonzero paths.
    NonzeroPaths,
    /// Witnessing paths `q` range over all paths.
    AllPaths,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm23Violation {
    /// 1, 2 or 3.
    pub clause: u8,
    /// The path `p` (clauses 1, 2) or `j → i` (clause 3).
    pub subject: String,
    pub reading: Option<BReading>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Thm23Report {
    pub paths_checked: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Thm23Violation>,
}

impl Thm23Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GVertex<K: Field> {
    pub vertex: usize,
    pub branch: GpVerdict,
    pub quotient: GpVerdict,
    pub quotient_module: AModule<K>,
}

/// Condition (G) vertex by vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct GDecision<K: Field> {
    pub per_vertex: Vec<GVertex<K>>,
    /// Quotients only.
    pub reduced: GpStatus,
    pub status: GpStatus,
    /// Set when `x` is monic, every quotient is GP, yet some branch is not.
    pub reduced_implication_failed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotGpReason {
    NotMonic,
    ConditionG,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GpDecision<K: Field> {
    pub status: GpStatus,
    pub monic: MonicReport<K>,
    pub g: GDecision<K>,
    pub reasons: Vec<NotGpReason>,
}

/// The component `φ_i = (X_{p_1}, …, X_{p_m}) : X_n^m → X_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiComponent<K: Field> {
    /// Vertex of `Q'`.
    pub vertex: usize,
    /// `𝒫(n → i)`, in the original quiver.
    pub paths: Vec<Path>,
    pub map: AMap<K>,
}

/// `X = (X', X_n, φ)` at the vertex `n` with the largest label.
#[derive(Clone, Debug)]
pub struct TriangularSplit<K: Field> {
    /// Deleted vertex, in the original quiver.
    pub n: usize,
    pub sub: SubQuiver,
    pub lambda_prime: Lambda<K>,
    pub x_prime: LambdaRep<K>,
    pub x_n: AModule<K>,
    pub phi: Vec<PhiComponent<K>>,
}

impl<K: Field> TriangularSplit<K> {
    /// `m_i = |𝒫(n → i)|` over the vertices of `Q'`.
    pub fn m_vector(&self) -> Vec<usize> {
        self.phi.iter().map(|c| c.paths.len()).collect()
    }

    pub fn phi_is_injective(&self) -> bool {
        self.phi.iter().all(|c| c.map.is_injective())
    }
}

/// One level of the inductive verifier.
#[derive(Clone, Debug, PartialEq)]
pub struct InductiveLevel {
    /// Name of the deleted vertex (or the last remaining one).
    pub vertex: String,
    pub branch: GpStatus,
    /// `None` at the last level.
    pub phi_injective: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InductiveReport {
    pub recursive: GpStatus,
    pub theorem: GpStatus,
    /// The bounded two-sided Ext test over `Λ`, when run.
    pub direct: Option<GpVerdict>,
    pub levels: Vec<InductiveLevel>,
    pub consistent: bool,
}

/// Decided statuses must coincide; `Unknown` agrees with everything.
pub fn statuses_agree(statuses: &[GpStatus]) -> bool {
    let decided: Vec<GpStatus> = statuses.iter().copied().filter(|s| !s.is_unknown()).collect();
    decided.windows(2).all(|w| w[0] == w[1])
}

impl<K: Field> Lambda<K> {
    fn image_sum(&self, x: &LambdaRep<K>, i: usize, maps: &[AMap<K>]) -> Submodule<K> {
        maps.iter()
            .fold(Submodule::zero(self.field(), &x.branches[i]), |acc, m| {
                acc.sum(&m.image())
            })
    }

    /// `Σ_{α ∈ 𝒜(→i)} Im X_α`.
    pub fn incoming_image(&self, x: &LambdaRep<K>, i: usize) -> Submodule<K> {
        let maps: Vec<AMap<K>> = self
            .quiver()
            .incoming(i)
            .into_iter()
            .map(|a| x.maps[a].clone())
            .collect();
        self.image_sum(x, i, &maps)
    }

    /// Whether `Σ spaces` is direct at every A-vertex; the first failure as witness.
    fn direct_everywhere(&self, dims: &[usize], spaces: &[Submodule<K>]) -> Option<(usize, Dependency<K>)> {
        for (u, &d) in dims.iter().enumerate() {
            let parts: Vec<Subspace<K>> = spaces.iter().map(|s| s.parts[u].clone()).collect();
            let r = sum_is_direct(self.field(), d, &parts).expect("common ambient");
            if let Some(w) = r.witness {
                return Some((u, w));
            }
        }
        None
    }

    pub fn check_m1(&self, x: &LambdaRep<K>) -> Vec<VertexCheck<K>> {
        (0..self.vertex_count())
            .map(|i| {
                let arrows = self.quiver().incoming(i);
                let images: Vec<Submodule<K>> = arrows.iter().map(|&a| x.maps[a].image()).collect();
                let witness = self
                    .direct_everywhere(&x.branches[i].dims, &images)
                    .map(|(a_vertex, dependency)| M1Witness {
                        a_vertex,
                        arrows: arrows.clone(),
                        dependency,
                    });
                VertexCheck {
                    vertex: i,
                    ok: witness.is_none(),
                    witness,
                }
            })
            .collect()
    }

    /// `Σ_{q ∈ K_p} Im X_q` inside `X_{s(p)}`.
    fn k_image(&self, x: &LambdaRep<K>, p: &Path) -> Submodule<K> {
        let maps: Vec<AMap<K>> = self
            .bound()
            .k_set(p)
            .expect("p is a nonzero path of positive length")
            .iter()
            .map(|q| self.path_map(x, q))
            .collect();
        self.image_sum(x, p.source(), &maps)
    }

    pub fn check_m2(&self, x: &LambdaRep<K>) -> Vec<ArrowCheck<K>> {
        (0..self.quiver().arrow_count())
            .map(|a| {
                let p = Path::arrow(self.quiver(), a);
                let kernel = x.maps[a].kernel();
                let sum = self.k_image(x, &p);
                let witness = kernel.parts.iter().zip(&sum.parts).enumerate().find_map(|(u, (k, s))| {
                    k.basis_vectors()
                        .into_iter()
                        .find(|v| !s.contains_vector(v))
                        .map(|vector| M2Witness { a_vertex: u, vector })
                });
                ArrowCheck {
                    arrow: a,
                    ok: witness.is_none() && kernel == sum,
                    witness,
                }
            })
            .collect()
    }

    pub fn check_monic(&self, x: &LambdaRep<K>) -> MonicReport<K> {
        let per_vertex = self.check_m1(x);
        let per_arrow = self.check_m2(x);
        let monic = per_vertex.iter().all(|v| v.ok) && per_arrow.iter().all(|a| a.ok);
        MonicReport {
            per_vertex,
            per_arrow,
            monic,
        }
    }

    pub fn is_monic(&self, x: &LambdaRep<K>) -> bool {
        self.check_monic(x).monic
    }

    /// Checks the kernel formulas for every nonzero path `p` and the
    /// directness of path images between distinct vertices.
    pub fn verify_thm23(&self, x: &LambdaRep<K>) -> Thm23Report {
        let q = self.quiver();
        let mut report = Thm23Report::default();
        for p in self.bound().nonzero_paths().iter().filter(|p| !p.is_trivial()) {
            report.paths_checked += 1;
            let name = p.display(q).to_string();
            let xp = self.path_map(x, p);
            let kernel = xp.kernel();
            if kernel != self.k_image(x, p) {
                report.violations.push(Thm23Violation {
                    clause: 1,
                    subject: name.clone(),
                    reading: None,
                });
            }
            for reading in [BReading::NonzeroPaths, BReading::AllPaths] {
                let (b1, b2) = match reading {
                    BReading::NonzeroPaths => self.bound().b_sets(p),
                    BReading::AllPaths => self.bound().b_sets_all_paths(p),
                }
                .expect("p is a nonzero path of positive length");
                let mut parts: Vec<Submodule<K>> = b1.iter().map(|&b| x.maps[b].image()).collect();
                for &b in &b2 {
                    let pb = Path::compose(p, &Path::arrow(q, b)).expect("composable");
                    parts.push(self.path_map(x, &pb).kernel().image_under(&x.maps[b]));
                }
                let total = parts
                    .iter()
                    .fold(Submodule::zero(self.field(), &x.branches[p.source()]), |acc, s| {
                        acc.sum(s)
                    });
                let direct = self.direct_everywhere(&x.branches[p.source()].dims, &parts).is_none();
                if !direct || total != kernel {
                    report.violations.push(Thm23Violation {
                        clause: 2,
                        subject: name.clone(),
                        reading: Some(reading),
                    });
                }
            }
        }
        for j in 0..self.vertex_count() {
            for i in 0..self.vertex_count() {
                if i == j {
                    continue;
                }
                let paths = self.bound().paths_between(j, i);
                if paths.is_empty() {
                    continue;
                }
                report.pairs_checked += 1;
                let images: Vec<Submodule<K>> = paths.iter().map(|p| self.path_map(x, p).image()).collect();
                if self.direct_everywhere(&x.branches[i].dims, &images).is_some() {
                    report.violations.push(Thm23Violation {
                        clause: 3,
                        subject: format!("{} -> {}", q.vertex_name(j), q.vertex_name(i)),
                        reading: None,
                    });
                }
            }
        }
        report
    }

    /// `X_i / Σ_{α ∈ 𝒜(→i)} Im X_α`.
    pub fn top_quotient(&self, x: &LambdaRep<K>, i: usize) -> AModule<K> {
        self.base()
            .quotient(&x.branches[i], &self.incoming_image(x, i))
            .expect("images are submodules")
            .module
    }

    pub fn condition_g(&self, x: &LambdaRep<K>, oracle: &GpOracle<K>) -> GDecision<K> {
        let per_vertex: Vec<GVertex<K>> = (0..self.vertex_count())
            .map(|i| {
                let quotient_module = self.top_quotient(x, i);
                GVertex {
                    vertex: i,
                    branch: oracle.check(&x.branches[i]),
                    quotient: oracle.check(&quotient_module),
                    quotient_module,
                }
            })
            .collect();
        let reduced = per_vertex.iter().fold(GpStatus::Gp, |s, v| s.and(v.quotient.status));
        let branches = per_vertex.iter().fold(GpStatus::Gp, |s, v| s.and(v.branch.status));
        let status = reduced.and(branches);
        let reduced_implication_failed = reduced == GpStatus::Gp && branches == GpStatus::NotGp && self.is_monic(x);
        GDecision {
            per_vertex,
            reduced,
            status,
            reduced_implication_failed,
        }
    }

    /// GP iff monic and (G). Monicity is exact; `Unknown` comes from the oracle only.
    pub fn is_gp(&self, x: &LambdaRep<K>, oracle: &GpOracle<K>) -> GpDecision<K> {
        let monic = self.check_monic(x);
        let g = self.condition_g(x, oracle);
        let mut reasons = Vec::new();
        if !monic.monic {
            reasons.push(NotGpReason::NotMonic);
        }
        if g.status == GpStatus::NotGp {
            reasons.push(NotGpReason::ConditionG);
        }
        let status = GpStatus::from_bool(monic.monic).and(g.status);
        GpDecision {
            status,
            monic,
            g,
            reasons,
        }
    }

    pub fn triangular_split(&self, x: &LambdaRep<K>) -> Result<TriangularSplit<K>> {
        let n = self.bound().top_vertex().expect("labelled");
        let sub = self.bound().delete_vertex(n)?;
        let lambda_prime = Lambda::new(self.base().clone(), sub.bound.clone())?;
        let x_prime = LambdaRep {
            branches: sub.kept_vertices.iter().map(|&v| x.branches[v].clone()).collect(),
            maps: sub.kept_arrows.iter().map(|&a| x.maps[a].clone()).collect(),
        };
        let x_n = x.branches[n].clone();
        let phi = sub
            .kept_vertices
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                let paths = self.bound().paths_between(n, old);
                let map = paths.iter().fold(
                    AMap::zero(self.field(), &self.base().zero_module(), &x.branches[old]),
                    |acc, p| acc.hstack(&self.path_map(x, p)),
                );
                PhiComponent {
                    vertex: new,
                    paths,
                    map,
                }
            })
            .collect();
        Ok(TriangularSplit {
            n,
            sub,
            lambda_prime,
            x_prime,
            x_n,
            phi,
        })
    }

    /// `M ⊗_A X_n` over `Λ'` with `φ` as a morphism into `X'`.
    pub fn phi_morphism(&self, split: &TriangularSplit<K>) -> (LambdaRep<K>, LambdaMorphism<K>) {
        let lp = &split.lambda_prime;
        let bases: Vec<Vec<usize>> = split
            .phi
            .iter()
            .map(|c| {
                c.paths
                    .iter()
                    .map(|p| self.bound().index_of(p).expect("nonzero"))
                    .collect()
            })
            .collect();
        let branches = split
            .phi
            .iter()
            .map(|c| self.base().power(&split.x_n, c.paths.len()))
            .collect();
        let maps = split
            .sub
            .kept_arrows
            .iter()
            .enumerate()
            .map(|(new, &old)| {
                let arrow = lp.quiver().arrow(new);
                let e = self.arrow_action_matrix(old, &bases[arrow.source], &bases[arrow.target]);
                AMap::from_blocks(
                    split
                        .x_n
                        .dims()
                        .iter()
                        .map(|&d| e.kron(&crate::linalg::Matrix::identity(self.field(), d)))
                        .collect(),
                )
            })
            .collect();
        let domain = LambdaRep { branches, maps };
        let phi = LambdaMorphism::from_components(split.phi.iter().map(|c| c.map.clone()).collect());
        (domain, phi)
    }

    /// Rebuilds `X` from `(X', X_n, φ)`.
    pub fn reassemble(&self, split: &TriangularSplit<K>) -> LambdaRep<K> {
        let nv = self.vertex_count();
        let mut branches = vec![split.x_n.clone(); nv];
        for (new, &old) in split.sub.kept_vertices.iter().enumerate() {
            branches[old] = split.x_prime.branches[new].clone();
        }
        let maps = (0..self.quiver().arrow_count())
            .map(|a| match split.sub.arrow_map[a] {
                Some(new) => split.x_prime.maps[new].clone(),
                None => {
                    let target = self.quiver().arrow(a).target;
                    let comp = &split.phi[split.sub.vertex_map[target].expect("target survives")];
                    let pos = comp
                        .paths
                        .iter()
                        .position(|p| p.len() == 1 && p.arrows()[0] == a)
                        .expect("arrows out of n are nonzero paths");
                    let dims = split.x_n.dims();
                    AMap::from_blocks(
                        comp.map
                            .blocks()
                            .iter()
                            .zip(dims)
                            .map(|(b, &d)| b.block(0, pos * d, b.rows(), d))
                            .collect(),
                    )
                }
            })
            .collect();
        LambdaRep { branches, maps }
    }

    /// `Coker φ` over `Λ'`: branches `X_i / ⊕_{p ∈ 𝒫(n→i)} Im X_p`.
    pub fn coker_phi(&self, split: &TriangularSplit<K>) -> Result<LambdaRep<K>> {
        if let Some(c) = split.phi.iter().find(|c| !c.map.is_injective()) {
            let old = split.sub.kept_vertices[c.vertex];
            return Err(Error::PhiNotInjective(self.quiver().vertex_name(old).to_string()));
        }
        let family: Vec<Submodule<K>> = split.phi.iter().map(|c| c.map.image()).collect();
        Ok(split.lambda_prime.quotient_rep(&split.x_prime, &family)?.rep)
    }

    /// Recursive test: `X_n` GP, `φ` injective, `Coker φ` GP over `Λ'`.
    pub fn recursive_gp(&self, x: &LambdaRep<K>, oracle: &GpOracle<K>, levels: &mut Vec<InductiveLevel>) -> GpStatus {
        if self.vertex_count() == 1 {
            let status = oracle.check(&x.branches[0]).status;
            levels.push(InductiveLevel {
                vertex: self.quiver().vertex_name(0).to_string(),
                branch: status,
                phi_injective: None,
            });
            return status;
        }
        let split = self.triangular_split(x).expect("at least two vertices");
        let branch = oracle.check(&split.x_n).status;
        let injective = split.phi_is_injective();
        levels.push(InductiveLevel {
            vertex: self.quiver().vertex_name(split.n).to_string(),
            branch,
            phi_injective: Some(injective),
        });
        if !injective {
            return GpStatus::NotGp;
        }
        if branch == GpStatus::NotGp {
            return branch;
        }
        let coker = self.coker_phi(&split).expect("phi injective");
        branch.and(split.lambda_prime.recursive_gp(&coker, oracle, levels))
    }

    /// Runs the recursive verifier, the monic-and-(G) decider and, when
    /// `direct_depth` is set, the bounded Ext test over `Λ`; checks agreement.
    pub fn inductive_verify(
        &self,
        x: &LambdaRep<K>,
        oracle: &GpOracle<K>,
        direct_depth: Option<usize>,
    ) -> InductiveReport {
        let mut levels = Vec::new();
        let recursive = self.recursive_gp(x, oracle, &mut levels);
        let theorem = self.is_gp(x, oracle).status;
        let direct = direct_depth.map(|d| self.gp_oracle(x, d, oracle.config().iso_trials, oracle.config().seed));
        let mut all = vec![recursive, theorem];
        if let Some(v) = &direct {
            all.push(v.status);
        }
        InductiveReport {
            recursive,
            theorem,
            direct,
            levels,
            consistent: statuses_agree(&all),
        }
    }
}
