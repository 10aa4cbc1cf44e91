use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use monrep::algebra::{AModule, BaseAlgebra};
use monrep::dsl::{parse_spec, Instance, SpecFile};
use monrep::field::{Field, PrimeField, Rationals};
use monrep::lab::{
    random_any, random_monic, run_suite, sample_rng, ClosureKind, ClosureSuiteConfig, SuiteConfig, SuiteKind,
};
use monrep::lambda::Lambda;
use monrep::linalg::{Matrix, Subspace};
use monrep::oracle::{GpOracle, GpStatus, OracleConfig, OracleMode};
use monrep::quiver::{parse_word, BoundQuiver, MonomialIdeal, Path, Quiver};

const RUNNING: &str = include_str!("../examples/ex224.mono");

fn running() -> Instance<PrimeField> {
    parse_spec(RUNNING).unwrap().instantiate(PrimeField::default()).unwrap()
}

fn algebra(n: usize, arrows: &[(&str, usize, usize)], rels: &[&str]) -> BaseAlgebra<PrimeField> {
    let q = Quiver::numbered(n, arrows).unwrap();
    let gens = rels.iter().map(|r| parse_word(&q, r).unwrap()).collect();
    let ideal = MonomialIdeal::new(&q, gens).unwrap();
    BaseAlgebra::new(PrimeField::default(), q, ideal).unwrap()
}

fn dual_numbers() -> BaseAlgebra<PrimeField> {
    algebra(1, &[("x", 1, 1)], &["x.x"])
}

/// Base algebras used by the module-level properties, with whether each is self-injective.
fn base_algebras() -> Vec<(BaseAlgebra<PrimeField>, bool)> {
    vec![
        (dual_numbers(), true),
        (algebra(1, &[("x", 1, 1)], &["x.x.x"]), true),
        (algebra(2, &[("x", 1, 2), ("y", 2, 1)], &["x.y", "y.x"]), true),
        (algebra(2, &[("a", 2, 1)], &[]), false),
        (algebra(3, &[("a", 3, 2), ("b", 2, 1)], &["b.a"]), false),
    ]
}

fn fast() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

// Random acyclic quivers: arrows run from a higher to a lower vertex index.

#[derive(Clone, Debug)]
struct RandomBound {
    n: usize,
    arrows: Vec<(usize, usize)>,
    relations: Vec<Vec<usize>>,
}

fn random_bound() -> impl Strategy<Value = RandomBound> {
    (2usize..=8)
        .prop_flat_map(|n| {
            let arrow = (1..n).prop_flat_map(|s| (Just(s), 0..s));
            (Just(n), prop::collection::vec(arrow, 1..=10), any::<u64>())
        })
        .prop_map(|(n, arrows, seed)| {
            let mut rng = sample_rng(seed, 0);
            let words = brute_force_paths(&arrows);
            let mut relations: Vec<Vec<usize>> = Vec::new();
            for w in words.iter().filter(|w| w.len() >= 2) {
                if rng.gen_bool(0.25) && !relations.iter().any(|r| contains(w, r) || contains(r, w)) {
                    relations.push(w.clone());
                }
            }
            RandomBound { n, arrows, relations }
        })
}

fn contains(word: &[usize], sub: &[usize]) -> bool {
    sub.len() <= word.len() && word.windows(sub.len()).any(|w| w == sub)
}

/// Every path of length at least one, as arrow sequences in traversal order, by DFS.
fn brute_force_paths(arrows: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn extend(arrows: &[(usize, usize)], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(word.clone());
        let end = arrows[*word.last().unwrap()].1;
        for (a, &(s, _)) in arrows.iter().enumerate() {
            if s == end {
                word.push(a);
                extend(arrows, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..arrows.len() {
        extend(arrows, &mut vec![a], &mut out);
    }
    out
}

fn build(rb: &RandomBound) -> BoundQuiver {
    let names: Vec<String> = (0..rb.arrows.len()).map(|a| format!("a{a}")).collect();
    let spec: Vec<(&str, usize, usize)> = rb
        .arrows
        .iter()
        .zip(&names)
        .map(|(&(s, t), name)| (name.as_str(), s + 1, t + 1))
        .collect();
    let q = Quiver::numbered(rb.n, &spec).unwrap();
    let gens = rb.relations.iter().map(|w| Path::from_arrows(&q, w).unwrap()).collect();
    let ideal = MonomialIdeal::new(&q, gens).unwrap();
    BoundQuiver::acyclic(q, ideal, None).unwrap()
}

proptest! {
    #![proptest_config(fast())]

    #[test]
    fn path_counts_match_brute_force(rb in random_bound()) {
        let bq = build(&rb);
        let mut expected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for v in 0..rb.n {
            *expected.entry((v, v)).or_default() += 1;
        }
        for w in brute_force_paths(&rb.arrows) {
            if !rb.relations.iter().any(|r| contains(&w, r)) {
                let key = (rb.arrows[w[0]].0, rb.arrows[*w.last().unwrap()].1);
                *expected.entry(key).or_default() += 1;
            }
        }
        let mut actual: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in bq.nonzero_paths() {
            *actual.entry((p.source(), p.target())).or_default() += 1;
        }
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn nonzero_paths_are_closed_under_subpaths(rb in random_bound()) {
        let bq = build(&rb);
        for p in bq.nonzero_paths() {
            let w = p.arrows();
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    let sub = Path::from_arrows(bq.quiver(), &w[i..j]).unwrap();
                    prop_assert!(bq.index_of(&sub).is_some());
                }
            }
        }
    }

    #[test]
    fn k_sets_are_nonzero_and_kill_p(rb in random_bound()) {
        let bq = build(&rb);
        for p in bq.nonzero_paths().iter().filter(|p| !p.is_trivial()) {
            for q in bq.k_set(p).unwrap() {
                prop_assert!(bq.in_ideal(&Path::compose(p, &q).unwrap()));
                prop_assert!(!q.is_trivial() && bq.index_of(&q).is_some());
            }
        }
    }

    #[test]
    fn b_sets_are_disjoint_and_contained(rb in random_bound()) {
        let bq = build(&rb);
        let q = bq.quiver();
        for p in bq.nonzero_paths().iter().filter(|p| !p.is_trivial()) {
            let killed: Vec<usize> = q
                .incoming(p.source())
                .into_iter()
                .filter(|&b| bq.in_ideal(&Path::compose(p, &Path::arrow(q, b)).unwrap()))
                .collect();
            let last_of_k: Vec<usize> = bq.k_set(p).unwrap().iter().filter_map(Path::last_arrow).collect();
            let (b1, b2) = bq.b_sets(p).unwrap();
            prop_assert!(b1.iter().all(|b| !b2.contains(b)));
            prop_assert!(b1.iter().all(|b| killed.contains(b)));
            prop_assert!(b2.iter().all(|b| last_of_k.contains(b)));
            let (a1, a2) = bq.b_sets_all_paths(p).unwrap();
            prop_assert_eq!(&a1, &b1);
            prop_assert!(a2.iter().all(|b| !a1.contains(b)));
            prop_assert!(b2.iter().all(|b| a2.contains(b)));
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn to_matrix<K: Field>(field: &K, r: usize, c: usize, data: &[i64]) -> Matrix<K> {
    Matrix::new(field.clone(), r, c, data.iter().map(|&v| field.from_i64(v)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity_is_cols((r, c, data) in matrix_strategy()) {
        let f = PrimeField::default();
        let m = to_matrix(&f, r, c, &data);
        prop_assert_eq!(m.rank() + m.kernel().cols(), c);
        prop_assert!(m.mul(&m.kernel()).is_zero());
        let q = to_matrix(&Rationals, r, c, &data);
        prop_assert_eq!(q.rank() + q.kernel().cols(), c);
        prop_assert!(q.mul(&q.kernel()).is_zero());
    }

    #[test]
    fn spanning_sets_give_identical_bases((r, c, data) in matrix_strategy(), seed in any::<u64>()) {
        let f = PrimeField::default();
        let m = to_matrix(&f, r, c, &data);
        let mut rng = sample_rng(seed, 0);
        let g = loop {
            let g = Matrix::random(&f, c, c, &mut rng);
            if g.is_invertible() {
                break g;
            }
        };
        let extra = m.mul(&Matrix::random(&f, c, 2, &mut rng));
        let recombined = Matrix::hstack(&f, r, &[&m.mul(&g), &extra]);
        prop_assert_eq!(Subspace::column_span(&m), Subspace::column_span(&recombined));
    }

    #[test]
    fn elimination_is_deterministic((r, c, data) in matrix_strategy()) {
        let f = PrimeField::default();
        let a = to_matrix(&f, r, c, &data);
        let b = to_matrix(&f, r, c, &data);
        prop_assert_eq!(a.kernel(), b.kernel());
        prop_assert_eq!(Subspace::row_span(&a), Subspace::row_span(&b));
        prop_assert_eq!(a.rank(), b.rank());
    }
}

fn bounded(a: &BaseAlgebra<PrimeField>) -> GpOracle<PrimeField> {
    GpOracle::new(a, OracleConfig::with_mode(OracleMode::Bounded)).unwrap()
}

proptest! {
    #![proptest_config(fast())]

    #[test]
    fn projectives_are_gp(which in 0usize..5, counts in prop::collection::vec(0usize..3, 3)) {
        let (a, _) = &base_algebras()[which];
        let oracle = bounded(a);
        let parts: Vec<AModule<PrimeField>> = (0..a.vertex_count())
            .map(|v| a.power(&a.projective(v), counts[v]))
            .collect();
        let p = a.direct_sum_all(&parts);
        prop_assert!(a.is_projective(&p));
        prop_assert_eq!(oracle.check(&p).status, GpStatus::Gp);
    }

    #[test]
    fn ext_agrees_across_resolutions(which in 0usize..5, seed in any::<u64>(), i in 1usize..=3) {
        let (a, _) = &base_algebras()[which];
        let mut rng = sample_rng(seed, 0);
        let m = a.random_module(3, &mut rng);
        let n = a.random_module(3, &mut rng);
        prop_assert_eq!(a.ext_dim(&m, &n, i), a.ext_dim_nonminimal(&m, &n, i));
    }

    #[test]
    fn gp_is_closed_under_sums_and_summands(which in 0usize..5, seed in any::<u64>()) {
        let (a, _) = &base_algebras()[which];
        let oracle = bounded(a);
        let mut rng = sample_rng(seed, 0);
        let m = a.random_module(3, &mut rng);
        let n = a.random_module(3, &mut rng);
        let (sm, sn) = (oracle.check(&m).status, oracle.check(&n).status);
        let sum = oracle.check(&a.direct_sum(&m, &n)).status;
        if !sm.is_unknown() && !sn.is_unknown() && !sum.is_unknown() {
            prop_assert_eq!(sum.is_gp(), sm.is_gp() && sn.is_gp());
        }
    }
}

#[test]
fn dual_injectives_of_selfinjective_algebras_are_the_projectives() {
    let mut rng = sample_rng(11, 0);
    for (a, selfinjective) in base_algebras() {
        let mut projectives = a.indecomposable_projectives();
        let injectives = a.dual_injectives();
        let mut matched = true;
        for i in &injectives {
            match projectives
                .iter()
                .position(|p| a.is_isomorphic(i, p, 32, &mut rng).is_isomorphic())
            {
                Some(k) => {
                    projectives.remove(k);
                }
                None => matched = false,
            }
        }
        assert_eq!(matched && projectives.is_empty(), selfinjective);
    }
}

proptest! {
    #![proptest_config(fast())]

    #[test]
    fn tensor_is_left_adjoint_to_evaluation(seed in any::<u64>(), v in 0usize..4) {
        let inst = running();
        let lam = &inst.lambda;
        let a = lam.base();
        let mut rng = sample_rng(seed, 0);
        let m = a.random_module(3, &mut rng);
        let x = lam.random_rep(3, &mut rng);
        prop_assert_eq!(lam.hom_dim(&lam.tensor_pv(&m, v), &x), a.hom_dim(&m, x.branch(v)));
    }

    #[test]
    fn tensors_of_projectives_have_projective_branches(u in 0usize..1, c in 1usize..3, v in 0usize..4) {
        let inst = running();
        let lam = &inst.lambda;
        let a = lam.base();
        let t = lam.tensor_pv(&a.power(&a.projective(u), c), v);
        prop_assert!(t.branches().iter().all(|b| a.is_projective(b)));
        prop_assert!(lam.is_projective(&t));
    }

    #[test]
    fn exactness_is_rank_nullity_at_every_branch(seed in any::<u64>(), kind in 0usize..4) {
        let inst = running();
        let lam = &inst.lambda;
        let mut rng = sample_rng(seed, 0);
        let y = lam.random_rep(3, &mut rng);
        let z = lam.random_rep(3, &mut rng);
        let g = lam.random_morphism(&lam.hom_basis(&y, &z), &y, &z, &mut rng);
        let (f, g) = match kind {
            0 => {
                let (_, f) = lam.kernel(&g, &y);
                let g = lam.cokernel(&f, &y).projection;
                (f, g)
            }
            1 => (lam.kernel(&g, &y).1, g),
            2 => {
                let x = lam.random_rep(2, &mut rng);
                (lam.zero_morphism(&x, &y), g)
            }
            _ => {
                let x = lam.random_rep(2, &mut rng);
                (lam.random_morphism(&lam.hom_basis(&x, &y), &x, &y, &mut rng), g)
            }
        };
        let mut expected = true;
        for (fi, gi) in f.components().iter().zip(g.components()) {
            for (fb, gb) in fi.blocks().iter().zip(gi.blocks()) {
                expected &= gb.mul(fb).is_zero()
                    && fb.rank() == fb.cols()
                    && gb.rank() == gb.rows()
                    && fb.rank() + gb.rank() == gb.cols();
            }
        }
        if kind == 0 {
            prop_assert!(expected);
        }
        prop_assert_eq!(lam.is_exact(&f, &g), expected);
    }

    #[test]
    fn path_maps_compose(seed in any::<u64>()) {
        let inst = running();
        let lam = &inst.lambda;
        let bq = lam.bound();
        let mut rng = sample_rng(seed, 0);
        let x = lam.random_rep(3, &mut rng);
        let paths = bq.nonzero_paths();
        for p in paths {
            for q in paths {
                if let Some(pq) = Path::compose(p, q) {
                    let composite = lam.path_map(&x, p).compose(&lam.path_map(&x, q));
                    if bq.in_ideal(&pq) {
                        prop_assert!(composite.is_zero());
                    } else {
                        prop_assert_eq!(lam.path_map(&x, &pq), composite);
                    }
                }
            }
        }
    }
}

fn selfinjective_lambda() -> (Lambda<PrimeField>, GpOracle<PrimeField>) {
    let lam = running().lambda;
    let oracle = GpOracle::new(lam.base(), OracleConfig::with_mode(OracleMode::SelfInjective)).unwrap();
    (lam, oracle)
}

fn column_span_of(blocks: &[Matrix<PrimeField>], rows: usize) -> Subspace<PrimeField> {
    let refs: Vec<&Matrix<PrimeField>> = blocks.iter().collect();
    Subspace::column_span(&Matrix::hstack(&PrimeField::default(), rows, &refs))
}

proptest! {
    #![proptest_config(fast())]

    #[test]
    fn gp_agrees_with_monic_over_selfinjective_base(seed in any::<u64>()) {
        let (lam, oracle) = selfinjective_lambda();
        let mut rng = sample_rng(seed, 0);
        let x = if rng.gen_bool(0.5) { random_monic(&lam, 3, &mut rng) } else { random_any(&lam, 3, &mut rng) };
        let monic = lam.is_monic(&x);
        let decision = lam.is_gp(&x, &oracle);
        prop_assert_eq!(decision.status, GpStatus::from_bool(monic));
        let report = lam.inductive_verify(&x, &oracle, None);
        prop_assert_eq!(report.recursive, GpStatus::from_bool(monic));
        prop_assert!(report.consistent);
    }

    #[test]
    fn monic_witnesses_re_verify(seed in any::<u64>()) {
        let (lam, _) = selfinjective_lambda();
        let f = PrimeField::default();
        let q = lam.quiver();
        let bq = lam.bound();
        let mut rng = sample_rng(seed, 0);
        let x = random_any(&lam, 3, &mut rng);
        let report = lam.check_monic(&x);
        for vc in report.per_vertex.iter().filter(|c| !c.ok) {
            let w = vc.witness.as_ref().unwrap();
            let rows = x.branch(vc.vertex).dims()[w.a_vertex];
            let comps = &w.dependency.components;
            prop_assert_eq!(comps.len(), w.arrows.len());
            prop_assert!(comps.iter().filter(|c| c.iter().any(|e| !f.is_zero(e))).count() >= 2);
            let mut total = vec![f.zero(); rows];
            for (c, &arrow) in comps.iter().zip(&w.arrows) {
                prop_assert_eq!(q.arrow(arrow).target, vc.vertex);
                let image = column_span_of(&[x.map(arrow).block(w.a_vertex).clone()], rows);
                prop_assert!(image.contains_vector(c));
                for (t, e) in total.iter_mut().zip(c) {
                    *t = f.add(t, e);
                }
            }
            prop_assert!(total.iter().all(|e| f.is_zero(e)));
        }
        for ac in report.per_arrow.iter().filter(|c| !c.ok) {
            let w = ac.witness.as_ref().unwrap();
            let alpha = Path::arrow(q, ac.arrow);
            let x_alpha = x.map(ac.arrow).block(w.a_vertex);
            prop_assert!(x_alpha.mul_vec(&w.vector).iter().all(|e| f.is_zero(e)));
            let rows = x_alpha.cols();
            let images: Vec<Matrix<PrimeField>> = bq
                .all_paths_into(alpha.source())
                .iter()
                .filter(|p| bq.index_of(p).is_some() && bq.in_ideal(&Path::compose(&alpha, p).unwrap()))
                .map(|p| lam.path_map(&x, p).block(w.a_vertex).clone())
                .collect();
            prop_assert!(!column_span_of(&images, rows).contains_vector(&w.vector));
        }
        prop_assert_eq!(report.monic, report.per_vertex.iter().all(|c| c.ok) && report.per_arrow.iter().all(|c| c.ok));
    }

    #[test]
    fn kernel_formulas_hold_for_monic_reps(seed in any::<u64>()) {
        let (lam, _) = selfinjective_lambda();
        let mut rng = sample_rng(seed, 0);
        let x = random_monic(&lam, 4, &mut rng);
        prop_assert!(lam.is_monic(&x));
        prop_assert!(lam.verify_thm23(&x).holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn suites_pass_and_are_deterministic(seed in any::<u64>(), kind in 0usize..5) {
        let lam = running().lambda;
        let kind = [SuiteKind::Corollary, SuiteKind::Closure, SuiteKind::Thm23, SuiteKind::Adjunction, SuiteKind::Lifting][kind];
        let cfg = SuiteConfig { samples: 4, seed, max_branch_dim: 3, ..SuiteConfig::default() };
        let a = run_suite(&lam, kind, &cfg).unwrap();
        let b = run_suite(&lam, kind, &SuiteConfig { jobs: 3, ..cfg.clone() }).unwrap();
        prop_assert!(a.passed(), "{:?}", a.counterexample);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn closure_reports_are_deterministic(seed in any::<u64>()) {
        let lam = running().lambda;
        let cfg = ClosureSuiteConfig {
            suite: SuiteConfig { samples: 3, seed, max_branch_dim: 3, ..SuiteConfig::default() },
            kinds: ClosureKind::ALL.to_vec(),
        };
        let a = monrep::lab::closure_check(&lam, &cfg).unwrap();
        let b = monrep::lab::closure_check(&lam, &cfg).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn printed_reps_parse_back(seed in any::<u64>()) {
        let lam = running().lambda;
        let mut rng = sample_rng(seed, 0);
        let x = random_any(&lam, 3, &mut rng);
        let m = lam.base().random_module(3, &mut rng);
        let spec = SpecFile::from_objects(&lam, &[("M".to_string(), m.clone())], &[("X".to_string(), x.clone())]);
        let text = spec.to_string();
        let reparsed = parse_spec(&text).unwrap();
        prop_assert_eq!(&reparsed, &spec);
        prop_assert_eq!(reparsed.to_string(), text);
        let inst = reparsed.instantiate(PrimeField::default()).unwrap();
        prop_assert_eq!(&inst.lambda, &lam);
        prop_assert_eq!(inst.rep("X").unwrap(), &x);
        prop_assert_eq!(inst.module("M").unwrap(), &m);
    }
}

#[test]
fn shipped_examples_round_trip() {
    for text in [RUNNING, include_str!("../examples/ex224_broken.mono")] {
        let spec = parse_spec(text).unwrap();
        let printed = spec.to_string();
        assert_eq!(parse_spec(&printed).unwrap(), spec);
    }
}

#[test]
fn the_sampler_reaches_both_monic_failures() {
    let (lam, _) = selfinjective_lambda();
    let (mut m1, mut m2) = (0, 0);
    for s in 0..64 {
        let x = random_any(&lam, 3, &mut sample_rng(5, s));
        let r = lam.check_monic(&x);
        m1 += r.per_vertex.iter().filter(|c| !c.ok).count();
        m2 += r.per_arrow.iter().filter(|c| !c.ok).count();
    }
    assert!(m1 > 0 && m2 > 0, "m1 failures {m1}, m2 failures {m2}");
}
