use std::collections::{BTreeMap, BTreeSet};

use lrc_core::canonical::CanonicalParams;
use lrc_core::error::CodeError;
use lrc_core::field::{ExtElem, Field};
use lrc_core::outer::{LocalCode, OrdinaryOuterCode, OuterCode};
use lrc_core::patterns::subsets;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random(code_field: &lrc_core::ExtField, len: usize, rng: &mut ChaCha8Rng) -> Vec<ExtElem> {
    (0..len).map(|_| code_field.random(rng)).collect()
}

#[test]
fn collect_from_every_k_subset() {
    let code = OuterCode::new(CanonicalParams::new(5, 2, 1, 4).unwrap(), 3, 20).unwrap();
    assert_eq!(code.filesize(), 17);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let m = random(code.field(), 17, &mut rng);
        let arr = code.encode(&m).unwrap();
        for s in subsets(5, 3) {
            assert_eq!(code.collect(&arr.subset(s)).unwrap(), m);
        }
        assert_eq!(code.collect(&arr.subset(0..5)).unwrap(), m);
        assert_eq!(
            code.collect(&arr.subset([0, 4])),
            Err(CodeError::InsufficientNodes { need: 3, got: 2 })
        );
    }
    for s in subsets(5, 2) {
        assert!(code.accessible_rank(&s) < 17, "{s:?}");
    }
}

#[test]
fn zero_message_and_degenerate_k() {
    let code = OuterCode::new(CanonicalParams::new(5, 2, 1, 4).unwrap(), 4, 20).unwrap();
    assert_eq!(code.filesize(), 20);
    let zero = vec![code.field().zero(); 20];
    let arr = code.encode(&zero).unwrap();
    assert!(arr.columns().iter().flatten().all(|x| code.field().is_zero(x)));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = random(code.field(), 20, &mut rng);
    let arr = code.encode(&m).unwrap();
    for s in subsets(5, 4) {
        assert_eq!(code.collect(&arr.subset(s)).unwrap(), m);
    }
}

fn repair_all(code: &OuterCode, max_fail: usize, seed: u64) {
    let inner = code.inner();
    let n = inner.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random(code.field(), code.filesize(), &mut rng);
    let arr = code.encode(&m).unwrap();
    for size in 1..=max_fail {
        for failed in subsets(n, size) {
            let failed: BTreeSet<usize> = failed.into_iter().collect();
            let helpers = inner.default_helpers(&failed);
            let plan = inner.plan_repair(&failed, &helpers).unwrap();
            let sent = inner.gather_transfers(&plan, &arr.subset(helpers.iter().copied())).unwrap();
            for &f in &failed {
                assert!(helpers.iter().all(|&h| plan.rows(f, h).len() == inner.beta()));
            }
            let restored = inner.execute_repair(&plan, &sent).unwrap();
            for f in &failed {
                assert_eq!(restored[f], arr.column(*f));
            }
        }
    }
}

#[test]
fn repair_over_the_extension() {
    let code = OuterCode::new(CanonicalParams::new(5, 2, 1, 4).unwrap(), 3, 20).unwrap();
    assert_eq!(code.inner().beta(), 3);
    repair_all(&code, 1, 5);
}

#[test]
fn gamma_failures_7_2_2() {
    let code = OuterCode::new(CanonicalParams::new(7, 2, 2, 5).unwrap(), 4, 210).unwrap();
    assert!(code.filesize() < 210);
    repair_all(&code, 2, 6);
}

#[test]
fn ordinary_polynomial_variant_fails_where_linearized_succeeds() {
    let lin = OuterCode::new(CanonicalParams::new(5, 2, 1, 4).unwrap(), 3, 20).unwrap();
    let ord = OrdinaryOuterCode::new(CanonicalParams::new(5, 2, 1, 23).unwrap(), 3).unwrap();
    assert_eq!(lin.filesize(), ord.filesize());
    let msg: Vec<u8> = (0..17).map(|i| (i * 5 % 23) as u8).collect();
    let arr = ord.encode(&msg).unwrap();
    let mut failures = 0;
    for s in subsets(5, 3) {
        match ord.collect(&arr.subset(s.iter().copied())) {
            Err(CodeError::Unrecoverable { rank, needed: 17 }) => {
                assert_eq!(rank, ord.recoverable_evaluations(&s));
                failures += 1;
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(lin.accessible_rank(&s), 17);
    }
    assert_eq!(failures, 10);
}

#[test]
fn locality_two_groups() {
    let params = CanonicalParams::new(5, 2, 1, 4).unwrap();
    let code = LocalCode::new(params, 2, 40, 20).unwrap();
    assert_eq!(code.locality(), (4, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = random(code.field(), 20, &mut rng);
    let groups = code.encode(&m).unwrap();
    assert_eq!(groups.len(), 2);

    let all: BTreeMap<(usize, usize), Vec<ExtElem>> = (0..2)
        .flat_map(|g| (0..5).map(move |c| (g, c)))
        .map(|(g, c)| ((g, c), groups[g].column(c).to_vec()))
        .collect();
    assert_eq!(code.collect(&all).unwrap(), m);

    // one whole group suffices when K <= K_c
    let first: BTreeMap<_, _> = all.iter().filter(|((g, _), _)| *g == 0).take(4).map(|(k, v)| (*k, v.clone())).collect();
    assert_eq!(code.collect(&first).unwrap(), m);

    // two nodes from each group: rank 12 + 12 accumulates past 20
    let mixed: BTreeMap<_, _> = [(0, 0), (0, 1), (1, 3), (1, 4)]
        .into_iter()
        .map(|k| (k, all[&k].clone()))
        .collect();
    assert_eq!(code.accessible_rank(&[(0, 0), (0, 1), (1, 3), (1, 4)]), 20);
    assert_eq!(code.collect(&mixed).unwrap(), m);

    let small: BTreeMap<_, _> = [(0, 0), (1, 2)].into_iter().map(|k| (k, all[&k].clone())).collect();
    assert_eq!(
        code.collect(&small),
        Err(CodeError::Unrecoverable { rank: 12, needed: 20 })
    );

    let zero = code.encode(&vec![code.field().zero(); 20]).unwrap();
    assert!(zero.iter().all(|a| a.columns().iter().flatten().all(|x| code.field().is_zero(x))));
}

#[test]
fn locality_repairs_within_a_group() {
    let params = CanonicalParams::new(5, 2, 1, 4).unwrap();
    let code = LocalCode::new(params, 2, 40, 30).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = random(code.field(), 30, &mut rng);
    let groups = code.encode(&m).unwrap();
    let inner = code.inner();
    for arr in &groups {
        for f in 0..5 {
            let failed = BTreeSet::from([f]);
            let helpers = inner.default_helpers(&failed);
            let plan = inner.plan_repair(&failed, &helpers).unwrap();
            let sent = inner.gather_transfers(&plan, &arr.subset(helpers.iter().copied())).unwrap();
            assert_eq!(inner.execute_repair(&plan, &sent).unwrap()[&f], arr.column(f));
        }
    }
}
