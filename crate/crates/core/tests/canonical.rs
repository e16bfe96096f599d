use std::collections::BTreeSet;

use lrc_core::canonical::{beta_by_thread_count, CanonicalCode, CanonicalParams};
use lrc_core::field::{min_field_order_above, BaseField, Field};
use lrc_core::patterns::subsets;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(n: usize, w: usize, gamma: usize) -> CanonicalCode<BaseField> {
    let q = min_field_order_above(w + gamma).unwrap();
    let p = CanonicalParams::new(n, w, gamma, q).unwrap();
    CanonicalCode::new(p, BaseField::new(q).unwrap()).unwrap()
}

fn messages(code: &CanonicalCode<BaseField>, count: usize, seed: u64) -> Vec<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..code.k_c()).map(|_| code.field().random(&mut rng)).collect())
        .collect()
}

#[test]
fn collect_from_every_k_subset() {
    for (n, w, gamma, count) in [(5, 2, 1, 50), (6, 2, 1, 20), (7, 2, 2, 10), (4, 2, 1, 50)] {
        let code = build(n, w, gamma);
        for msg in messages(&code, count, n as u64) {
            let arr = code.encode(&msg).unwrap();
            for s in subsets(n, n - gamma) {
                assert_eq!(code.collect(&arr.subset(s.iter().copied())).unwrap(), msg);
            }
            assert_eq!(code.collect(&arr.subset(0..n)).unwrap(), msg);
        }
    }
}

#[test]
fn repair_every_failure_set() {
    for (n, w, gamma) in [(5, 2, 1), (6, 2, 1), (7, 2, 2), (4, 2, 1), (8, 6, 1)] {
        let code = build(n, w, gamma);
        let beta = code.beta();
        assert_eq!(BigUint::from(beta), beta_by_thread_count(n, w, gamma));
        for msg in messages(&code, 5, 99) {
            let arr = code.encode(&msg).unwrap();
            for size in 1..=gamma {
                for failed in subsets(n, size) {
                    let failed: BTreeSet<usize> = failed.into_iter().collect();
                    let helpers = code.default_helpers(&failed);
                    let plan = code.plan_repair(&failed, &helpers).unwrap();
                    for &f in &failed {
                        for &h in &helpers {
                            assert_eq!(plan.rows(f, h).len(), beta, "({n},{w},{gamma}) F={failed:?}");
                        }
                        assert_eq!(plan.download(f), code.d() * beta);
                    }
                    let sent = code
                        .gather_transfers(&plan, &arr.subset(helpers.iter().copied()))
                        .unwrap();
                    for (f, per) in &sent {
                        for (h, syms) in per {
                            for (sym, &row) in syms.iter().zip(plan.rows(*f, *h)) {
                                assert_eq!(sym, arr.get(row, *h));
                            }
                        }
                    }
                    let restored = code.execute_repair(&plan, &sent).unwrap();
                    for f in &failed {
                        assert_eq!(restored[f], arr.column(*f));
                    }
                }
            }
        }
    }
}

#[test]
fn beta_audit_under_every_helper_choice_7_2_2() {
    let code = build(7, 2, 2);
    for f in 0..7 {
        let failed = BTreeSet::from([f]);
        for x in (0..7).filter(|&x| x != f) {
            let helpers: BTreeSet<usize> = (0..7).filter(|&h| h != f && h != x).collect();
            let plan = code.plan_repair(&failed, &helpers).unwrap();
            assert!(helpers.iter().all(|&h| plan.rows(f, h).len() == 24));
        }
    }
}

#[test]
fn repair_is_a_fixed_point() {
    let code = build(6, 2, 1);
    let msg = &messages(&code, 1, 4)[0];
    let mut arr = code.encode(msg).unwrap();
    let failed = BTreeSet::from([3]);
    let helpers = code.default_helpers(&failed);
    let plan = code.plan_repair(&failed, &helpers).unwrap();
    let sent = code.gather_transfers(&plan, &arr.subset(helpers.iter().copied())).unwrap();
    let restored = code.execute_repair(&plan, &sent).unwrap();
    arr.replace_column(3, restored[&3].clone());
    let again = code.gather_transfers(&plan, &arr.subset(helpers.iter().copied())).unwrap();
    assert_eq!(again, sent);
    assert_eq!(code.execute_repair(&plan, &again).unwrap(), restored);
}

#[test]
fn beta_identity_up_to_twenty() {
    let mut checked = 0;
    for n in 3..=20 {
        for w in 2..n {
            for gamma in 1..=n - w {
                let p = CanonicalParams::derive(n, w, gamma).unwrap();
                assert_eq!(beta_by_thread_count(n, w, gamma), p.beta);
                assert_eq!(&p.beta * (n - gamma), &p.alpha * w);
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}
