//! Bounded Gorenstein-projectivity oracle.
//!
//! `M` is Gorenstein-projective iff `Ext^i(M, Λ) = 0` and
//! `Ext^i(Tr M, Λ^op) = 0` for all `i ≥ 1`. Each side is checked along a
//! minimal projective resolution. A side is settled once a syzygy vanishes
//! or repeats up to isomorphism after all Ext groups up to that point
//! vanished; otherwise the verdict is `Unknown` at the given depth.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AModule, BaseAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda::{CoverKind, Lambda, LambdaRep};

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_ISO_TRIALS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GpStatus {
    Gp,
    NotGp,
    Unknown { depth: usize },
}

impl GpStatus {
    pub fn is_gp(self) -> bool {
        self == Self::Gp
    }
    pub fn is_unknown(self) -> bool {
        matches!(self, Self::Unknown { .. })
    }

    /// Three-valued conjunction: `NotGp` wins, then `Unknown`.
    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (Self::NotGp, _) | (_, Self::NotGp) => Self::NotGp,
            (Self::Unknown { depth: a }, Self::Unknown { depth: b }) => Self::Unknown { depth: a.max(b) },
            (u @ Self::Unknown { .. }, _) | (_, u @ Self::Unknown { .. }) => u,
            _ => Self::Gp,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::Gp
        } else {
            Self::NotGp
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `Ext^i(M, Λ)`.
    Module,
    /// `Ext^i(Tr M, Λ^op)`.
    Transpose,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GpWitness {
    /// Decided by the algebra alone (semisimple or self-injective).
    Algebra {
        mode: OracleMode,
    },
    /// The `step`-th syzygy is zero.
    ZeroSyzygy {
        side: Side,
        step: usize,
    },
    /// `Ω^to ≅ Ω^from`.
    Periodic {
        side: Side,
        from: usize,
        to: usize,
    },
    NonzeroExt {
        side: Side,
        degree: usize,
        dim: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpVerdict {
    pub status: GpStatus,
    pub witnesses: Vec<GpWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    Auto,
    Semisimple,
    #[serde(rename = "selfinjective")]
    SelfInjective,
    Bounded,
}

impl std::str::FromStr for OracleMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "semisimple" => Ok(Self::Semisimple),
            "selfinjective" => Ok(Self::SelfInjective),
            "bounded" => Ok(Self::Bounded),
            _ => Err(Error::Invalid(format!("unknown oracle mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub mode: OracleMode,
    pub depth: usize,
    pub iso_trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            mode: OracleMode::Auto,
            depth: DEFAULT_DEPTH,
            iso_trials: DEFAULT_ISO_TRIALS,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn with_mode(mode: OracleMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

enum SideOutcome {
    Vanishes(GpWitness),
    Nonzero(GpWitness),
    Undecided,
}

impl<K: Field> Lambda<K> {
    /// Checks `Ext^i(m, Λ) = 0` for `i = 1..=depth` with periodicity detection.
    fn ext_into_regular(
        &self,
        m: &LambdaRep<K>,
        depth: usize,
        trials: usize,
        side: Side,
        rng: &mut ChaCha8Rng,
    ) -> SideOutcome {
        let regular = self.regular();
        let mut syz = vec![m.clone()];
        let mut hom = vec![self.hom_dim(m, &regular)];
        for i in 1..=depth {
            if syz[i - 1].is_zero() {
                return SideOutcome::Vanishes(GpWitness::ZeroSyzygy { side, step: i - 1 });
            }
            let step = self.syzygy(&syz[i - 1], CoverKind::Minimal);
            let h = self.hom_dim(&step.syzygy, &regular);
            let ext = h + hom[i - 1] - self.free_hom_dim(&step.cover.free.tops, &regular);
            if ext > 0 {
                return SideOutcome::Nonzero(GpWitness::NonzeroExt {
                    side,
                    degree: i,
                    dim: ext,
                });
            }
            let dims = step.syzygy.dims();
            syz.push(step.syzygy);
            hom.push(h);
            if syz[i].is_zero() {
                return SideOutcome::Vanishes(GpWitness::ZeroSyzygy { side, step: i });
            }
            for j in 0..i {
                if hom[j] == h && syz[j].dims() == dims && self.is_isomorphic(&syz[j], &syz[i], trials, rng) {
                    return SideOutcome::Vanishes(GpWitness::Periodic { side, from: j, to: i });
                }
            }
        }
        SideOutcome::Undecided
    }

    /// The two-sided bounded test over `Λ` itself.
    pub fn gp_oracle(&self, x: &LambdaRep<K>, depth: usize, trials: usize, seed: u64) -> GpVerdict {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut witnesses = Vec::new();
        let module = self.ext_into_regular(x, depth, trials, Side::Module, &mut rng);
        let module_done = match module {
            SideOutcome::Nonzero(w) => {
                return GpVerdict {
                    status: GpStatus::NotGp,
                    witnesses: vec![w],
                }
            }
            SideOutcome::Vanishes(w) => {
                witnesses.push(w);
                true
            }
            SideOutcome::Undecided => false,
        };
        let op = self.opposite();
        let tr = self.transpose(x);
        match op.ext_into_regular(&tr, depth, trials, Side::Transpose, &mut rng) {
            SideOutcome::Nonzero(w) => GpVerdict {
                status: GpStatus::NotGp,
                witnesses: vec![w],
            },
            SideOutcome::Vanishes(w) if module_done => {
                witnesses.push(w);
                GpVerdict {
                    status: GpStatus::Gp,
                    witnesses,
                }
            }
            SideOutcome::Vanishes(w) => {
                witnesses.push(w);
                GpVerdict {
                    status: GpStatus::Unknown { depth },
                    witnesses,
                }
            }
            SideOutcome::Undecided => GpVerdict {
                status: GpStatus::Unknown { depth },
                witnesses,
            },
        }
    }
}

/// The GP oracle over the base algebra with its mode resolved once.
#[derive(Clone, Debug)]
pub struct GpOracle<K: Field> {
    point: Lambda<K>,
    mode: OracleMode,
    config: OracleConfig,
}

impl<K: Field> GpOracle<K> {
    /// Resolves `auto` and rejects modes that do not apply to `a`.
    pub fn new(a: &BaseAlgebra<K>, config: OracleConfig) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mode = match config.mode {
            OracleMode::Auto if a.is_semisimple() => OracleMode::Semisimple,
            OracleMode::Auto if a.is_self_injective(config.iso_trials, &mut rng) => OracleMode::SelfInjective,
            OracleMode::Auto => OracleMode::Bounded,
            OracleMode::Semisimple if !a.is_semisimple() => {
                return Err(Error::ModeMismatch {
                    mode: "semisimple".into(),
                    reason: "the algebra has arrows, so its radical is nonzero".into(),
                })
            }
            OracleMode::SelfInjective if !a.is_self_injective(config.iso_trials, &mut rng) => {
                return Err(Error::ModeMismatch {
                    mode: "selfinjective".into(),
                    reason: "no isomorphism A ≅ D(A) was found".into(),
                })
            }
            m => m,
        };
        if mode == OracleMode::Bounded && config.depth == 0 {
            return Err(Error::Invalid("bounded mode needs depth >= 1".into()));
        }
        Ok(Self {
            point: Lambda::point(a.clone()),
            mode,
            config,
        })
    }

    /// The resolved mode: never `Auto`.
    pub fn mode(&self) -> OracleMode {
        self.mode
    }
    pub fn config(&self) -> &OracleConfig {
        &self.config
    }
    pub fn algebra(&self) -> &BaseAlgebra<K> {
        self.point.base()
    }

    pub fn check(&self, m: &AModule<K>) -> GpVerdict {
        match self.mode {
            OracleMode::Semisimple | OracleMode::SelfInjective => GpVerdict {
                status: GpStatus::Gp,
                witnesses: vec![GpWitness::Algebra { mode: self.mode }],
            },
            _ => self.point.gp_oracle(
                &Lambda::point_rep(m.clone()),
                self.config.depth,
                self.config.iso_trials,
                self.config.seed,
            ),
        }
    }
}

impl<K: Field> BaseAlgebra<K> {
    /// `dim Ext^i_A(m, n)` from a minimal projective resolution of `m`.
    pub fn ext_dim(&self, m: &AModule<K>, n: &AModule<K>, i: usize) -> usize {
        Lambda::point(self.clone()).ext_dim(
            &Lambda::point_rep(m.clone()),
            &Lambda::point_rep(n.clone()),
            i,
            CoverKind::Minimal,
        )
    }

    /// As [`ext_dim`](Self::ext_dim), resolving with the non-minimal cover
    /// by A-tops of every basis vector.
    pub fn ext_dim_nonminimal(&self, m: &AModule<K>, n: &AModule<K>, i: usize) -> usize {
        Lambda::point(self.clone()).ext_dim(
            &Lambda::point_rep(m.clone()),
            &Lambda::point_rep(n.clone()),
            i,
            CoverKind::Basis,
        )
    }

    pub fn is_projective(&self, m: &AModule<K>) -> bool {
        Lambda::point(self.clone()).is_projective(&Lambda::point_rep(m.clone()))
    }

    /// `Tr m` as an `A^op`-module.
    pub fn transpose(&self, m: &AModule<K>) -> AModule<K> {
        let t = Lambda::point(self.clone()).transpose(&Lambda::point_rep(m.clone()));
        t.branches()[0].clone()
    }

    pub fn gp_check(&self, m: &AModule<K>, config: OracleConfig) -> Result<GpVerdict> {
        Ok(GpOracle::new(self, config)?.check(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{a2, dual_numbers};
    use crate::field::PrimeField;
    use crate::lambda::tests::{running_lambda, running_rep};
    use rand::{Rng, SeedableRng};

    fn bounded() -> OracleConfig {
        OracleConfig::with_mode(OracleMode::Bounded)
    }

    #[test]
    fn ext_examples() {
        let a = dual_numbers();
        let k = a.simple(0);
        assert_eq!(a.ext_dim(&k, &k, 1), 1);
        assert_eq!(a.ext_dim(&k, &k, 5), 1);
        let b = a2();
        assert_eq!(b.ext_dim(&b.simple(1), &b.simple(0), 1), 1);
        assert_eq!(b.ext_dim(&b.simple(1), &b.simple(0), 2), 0);
        for i in 1..4 {
            assert_eq!(b.ext_dim(&b.projective(1), &b.simple(0), i), 0);
        }
    }

    #[test]
    fn verdicts() {
        let a = dual_numbers();
        let v = a.gp_check(&a.simple(0), bounded()).unwrap();
        assert_eq!(v.status, GpStatus::Gp);
        assert!(v.witnesses.iter().any(|w| matches!(w, GpWitness::Periodic { .. })));
        assert_eq!(
            a.gp_check(&a.simple(0), OracleConfig::with_mode(OracleMode::SelfInjective))
                .unwrap()
                .status,
            GpStatus::Gp
        );
        let b = a2();
        let s2 = b.gp_check(&b.simple(1), bounded()).unwrap();
        assert_eq!(s2.status, GpStatus::NotGp);
        assert!(matches!(s2.witnesses[0], GpWitness::NonzeroExt { .. }));
        for alg in [a.clone(), b.clone()] {
            for v in 0..alg.vertex_count() {
                assert_eq!(
                    alg.gp_check(&alg.projective(v), bounded()).unwrap().status,
                    GpStatus::Gp
                );
            }
        }
    }

    #[test]
    fn mode_mismatches() {
        let a = dual_numbers();
        assert!(matches!(
            a.gp_check(&a.simple(0), OracleConfig::with_mode(OracleMode::Semisimple)),
            Err(Error::ModeMismatch { .. })
        ));
        let b = a2();
        assert!(matches!(
            b.gp_check(&b.simple(0), OracleConfig::with_mode(OracleMode::SelfInjective)),
            Err(Error::ModeMismatch { .. })
        ));
        let k = BaseAlgebra::ground(PrimeField::default());
        let o = GpOracle::new(&k, OracleConfig::default()).unwrap();
        assert_eq!(o.mode(), OracleMode::Semisimple);
        assert_eq!(
            GpOracle::new(&a, OracleConfig::default()).unwrap().mode(),
            OracleMode::SelfInjective
        );
        assert_eq!(
            GpOracle::new(&b, OracleConfig::default()).unwrap().mode(),
            OracleMode::Bounded
        );
    }

    #[test]
    fn status_conjunction() {
        use GpStatus::*;
        assert_eq!(Gp.and(Gp), Gp);
        assert_eq!(Gp.and(Unknown { depth: 3 }), Unknown { depth: 3 });
        assert_eq!(Unknown { depth: 3 }.and(NotGp), NotGp);
    }

    #[test]
    fn lambda_oracle_on_the_running_example() {
        let lam = running_lambda();
        let x = running_rep();
        assert_eq!(lam.gp_oracle(&x, 12, 32, 0).status, GpStatus::Gp);
        let p = lam.tensor_pv(&lam.base().projective(0), 2);
        assert_eq!(lam.gp_oracle(&p, 12, 32, 0).status, GpStatus::Gp);
    }

    #[test]
    fn gp_is_closed_under_sums_over_nakayama() {
        // k[x]/(x³) is self-injective; the bounded oracle must agree.
        let a = BaseAlgebra::truncated_polynomial(PrimeField::default(), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..6 {
            let m = a.random_module(rng.gen_range(1..5), &mut rng);
            assert_eq!(a.gp_check(&m, bounded()).unwrap().status, GpStatus::Gp);
        }
    }
}
