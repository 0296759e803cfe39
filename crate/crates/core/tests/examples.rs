use qalg_core::bounds::{
    best_v_search, syzygy_finiteness_certificate, BoundContext, BoundKind, CertificateOptions, SearchStrategy,
};
use qalg_core::catalog::{a2, looped_broom, semisimple, two_chains};
use qalg_core::error::TheoryError;
use qalg_core::par::Execution;
use qalg_core::torsion::{classify_simples, PdOptions, PdResult, SimpleSet};

fn set(n: usize, v: impl IntoIterator<Item = usize>) -> SimpleSet {
    SimpleSet::new(n, v).unwrap()
}

fn finite(values: &[i64]) -> Vec<PdResult> {
    values.iter().map(|&value| PdResult::Finite { value }).collect()
}

#[test]
fn looped_broom_pd_table() {
    let alg = looped_broom(10);
    let class = classify_simples(&alg, &PdOptions::for_algebra(&alg));
    assert!(matches!(class.table[0], PdResult::Infinite { .. }));
    assert_eq!(class.table[1..], finite(&[1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0])[..]);
    assert_eq!(class.infinite.vertices(), vec![1]);
    assert!(matches!(class.gldim, PdResult::Infinite { .. }));
}

#[test]
fn looped_broom_pd_pattern_for_other_sizes() {
    for m in [4, 6, 8] {
        let alg = looped_broom(m);
        let class = classify_simples(&alg, &PdOptions::for_algebra(&alg));
        assert_eq!(class.infinite.vertices(), vec![1], "m = {m}");
        for v in 2..m {
            assert_eq!(class.table[v - 1], PdResult::Finite { value: 1 });
        }
        for v in m..=m + 2 {
            assert_eq!(class.table[v - 1], PdResult::Finite { value: 0 });
        }
    }
}

#[test]
fn looped_broom_bounds() {
    let alg = looped_broom(10);
    let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
    let r = ctx.report(&set(12, 3..=9)).unwrap();
    assert_eq!(r.pd_v, 1);
    assert_eq!(r.ll_tv, 2);
    assert_eq!(r.values(), vec![Some(8), None, Some(7), Some(7), Some(4)]);
    assert_eq!(r.best, 4);
    assert_eq!(r.implications.syzygy_finite_k, Some(3));
    assert_eq!(*r.ll_chain.first().unwrap(), 59);
    assert_eq!(*r.ll_chain.last().unwrap(), 0);
}

#[test]
fn two_chains_table_and_bounds() {
    let alg = two_chains(6);
    let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
    let class = ctx.classification();
    assert_eq!(class.table, finite(&[5, 1, 1, 1, 1, 0, 4, 3, 2, 1, 0, 0, 0]));
    assert_eq!(class.gldim, PdResult::Finite { value: 5 });
    let r = ctx.report(&set(13, 2..=6)).unwrap();
    assert_eq!(r.values(), vec![Some(5), Some(5), Some(7), Some(7), Some(4)]);
    assert_eq!(r.best, 4);
}

#[test]
fn two_chains_gldim_grows_with_n() {
    for n in 3..=7 {
        let alg = two_chains(n);
        let class = classify_simples(&alg, &PdOptions::for_algebra(&alg));
        assert_eq!(class.gldim, PdResult::Finite { value: n as i64 - 1 }, "n = {n}");
    }
}

#[test]
fn search_never_worse_than_hand_choice() {
    let alg = looped_broom(10);
    let r = best_v_search(
        &alg,
        &PdOptions::for_algebra(&alg),
        SearchStrategy::Exhaustive,
        20,
        Execution::default(),
    )
    .unwrap();
    assert!(r.best <= 4);
    let g = best_v_search(
        &alg,
        &PdOptions::for_algebra(&alg),
        SearchStrategy::Greedy,
        20,
        Execution::default(),
    )
    .unwrap();
    assert!(g.best >= r.best);

    let r = best_v_search(
        &a2(),
        &PdOptions::for_algebra(&a2()),
        SearchStrategy::Exhaustive,
        20,
        Execution::default(),
    )
    .unwrap();
    assert_eq!(r.best, 1);
    assert!(r.v_set.is_empty());
}

#[test]
fn search_cap_is_enforced() {
    let alg = two_chains(6);
    let err = best_v_search(
        &alg,
        &PdOptions::for_algebra(&alg),
        SearchStrategy::Exhaustive,
        4,
        Execution::default(),
    )
    .unwrap_err();
    assert!(matches!(err, TheoryError::SearchSpaceTooLarge { size: 13, cap: 4 }));
}

#[test]
fn semisimple_bounds_clamp_at_zero() {
    let alg = semisimple(3);
    let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
    let r = ctx.report(&SimpleSet::empty(3)).unwrap();
    assert_eq!(r.entry(BoundKind::Loewy), Some(0));
    assert_eq!(r.entry(BoundKind::Gldim), Some(0));
    assert_eq!(r.best, 0);
}

#[test]
fn infinite_simple_in_v_is_rejected() {
    let alg = looped_broom(10);
    let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
    assert!(matches!(
        ctx.report(&set(12, [1, 2])),
        Err(TheoryError::VNotInFiniteProjDim(1))
    ));
}

#[test]
fn certificates_for_both_examples() {
    let cert = CertificateOptions {
        seed: 7,
        ..Default::default()
    };
    for (alg, v) in [(looped_broom(10), set(12, 3..=9)), (two_chains(6), set(13, 2..=6))] {
        let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
        let r = syzygy_finiteness_certificate(&ctx, &v, &cert, Execution::default()).unwrap();
        assert_eq!(r.k, 3);
        assert!(r.passed, "{}", alg.name());
        assert_eq!(r.entries.len(), 3 * alg.num_vertices() + 25);
    }
}

#[test]
fn certificate_requires_small_layer_length() {
    let alg = looped_broom(10);
    let ctx = BoundContext::new(&alg, &PdOptions::for_algebra(&alg), Execution::default());
    let err = syzygy_finiteness_certificate(
        &ctx,
        &SimpleSet::empty(12),
        &CertificateOptions::default(),
        Execution::default(),
    )
    .unwrap_err();
    assert_eq!(err, TheoryError::HypothesisFailed(9));
}

#[test]
fn sequential_and_parallel_agree() {
    let alg = two_chains(5);
    let opts = PdOptions::for_algebra(&alg);
    let a = best_v_search(&alg, &opts, SearchStrategy::Exhaustive, 20, Execution::Sequential).unwrap();
    let b = best_v_search(&alg, &opts, SearchStrategy::Exhaustive, 20, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}
