use std::collections::BTreeSet;

use lrc_core::tradeoff::{int, CostModel};
use lrc_core::CodeError;
use lrc_sim::container::NodeFile;
use lrc_sim::{run, Cluster, CodeSpec, Event, Mode, Schedule, SimError, Status};

fn unit_cost() -> CostModel {
    CostModel {
        gamma_b: int(1),
        gamma_s: int(1),
    }
}

fn data(len: usize, salt: u8) -> Vec<u8> {
    (0..len).map(|i| (i as u8).wrapping_mul(37).wrapping_add(salt)).collect()
}

#[test]
fn one_byte_file_pads_to_one_stripe() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cluster::ingest(&[0xa5], &CodeSpec::canonical(5, 2, 1, 4), dir.path()).unwrap();
    assert_eq!(c.stripes(), 1);
    // K_c = 20 GF(4) symbols at 2 bits each carry 5 bytes.
    assert_eq!(c.scheme().stripe_digits() * 2 / 8, 5);
    assert_eq!(c.alive().len(), 5);
    for node in 0..5 {
        let f = NodeFile::read(&c.path(node)).unwrap();
        assert_eq!(f.alpha, 6);
        assert_eq!(f.payload.len(), 6);
        assert_eq!(f.original_len, 1);
    }
    assert_eq!(c.extract().unwrap(), vec![0xa5]);
}

#[test]
fn empty_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let e = Cluster::ingest(&[], &CodeSpec::canonical(5, 2, 1, 4), dir.path()).unwrap_err();
    assert!(matches!(e, SimError::Code(CodeError::Usage(_))), "{e}");
}

#[test]
fn ingest_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let spec = CodeSpec::canonical(7, 2, 2, 5);
    let bytes = data(1000, 3);
    Cluster::ingest(&bytes, &spec, a.path()).unwrap();
    Cluster::ingest(&bytes, &spec, b.path()).unwrap();
    for node in 0..7 {
        let name = format!("node_{node:03}.lrc");
        assert_eq!(
            std::fs::read(a.path().join(&name)).unwrap(),
            std::fs::read(b.path().join(&name)).unwrap()
        );
    }
}

#[test]
fn single_failure_moves_twelve_symbols() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cluster::ingest(&[1, 2, 3], &CodeSpec::canonical(5, 2, 1, 4), dir.path()).unwrap();
    let before = std::fs::read(c.path(2)).unwrap();
    let failed = BTreeSet::from([2]);
    c.fail(&failed).unwrap();
    assert!(!c.path(2).exists());
    let out = c.repair(&failed).unwrap();
    assert_eq!(out.helpers, BTreeSet::from([0, 1, 3, 4]));
    assert_eq!(out.symbols, 12);
    assert_eq!(std::fs::read(c.path(2)).unwrap(), before);
}

#[test]
fn reopen_from_surviving_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = data(77, 9);
    let c = Cluster::ingest(&bytes, &CodeSpec::canonical(6, 2, 1, 4), dir.path()).unwrap();
    c.fail(&BTreeSet::from([0])).unwrap();
    let reopened = Cluster::open(dir.path()).unwrap();
    assert_eq!(reopened.stripes(), c.stripes());
    assert_eq!(reopened.extract().unwrap(), bytes);
    reopened.repair(&BTreeSet::from([0])).unwrap();
    assert_eq!(reopened.alive().len(), 6);
}

#[test]
fn corrupt_header_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c = Cluster::ingest(&[7; 10], &CodeSpec::canonical(5, 2, 1, 4), dir.path()).unwrap();
    let p = c.path(1);
    let mut bytes = std::fs::read(&p).unwrap();
    bytes[5] = 9; // n
    std::fs::write(&p, bytes).unwrap();
    assert!(matches!(c.read_node(1), Err(SimError::Format { .. })));
}

#[test]
fn too_many_failures_halt_without_writes() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = data(50, 1);
    let c = Cluster::ingest(&bytes, &CodeSpec::canonical(7, 2, 2, 5), dir.path()).unwrap();
    let snapshot: Vec<Vec<u8>> = (0..7).map(|i| std::fs::read(c.path(i)).unwrap()).collect();
    let events = vec![
        Event { time: 0.0, failed: BTreeSet::from([3]) },
        Event { time: 1.0, failed: BTreeSet::from([0, 1, 2]) },
        Event { time: 2.0, failed: BTreeSet::from([4]) },
    ];
    let r = run(&c, &events, &bytes, &unit_cost()).unwrap();
    assert_eq!(r.status, Status::Unrecoverable { index: 1, count: 3, gamma: 2 });
    assert_eq!(r.events, 2);
    assert_eq!(r.node_repairs, 1);
    assert!(r.integrity);
    for (i, before) in snapshot.iter().enumerate() {
        assert_eq!(&std::fs::read(c.path(i)).unwrap(), before, "node {i}");
    }
    assert!(r.csv_row().contains("unrecoverable at event 1"));
}

#[test]
fn poisson_history_theta_matches_prediction() {
    let dir = tempfile::tempdir().unwrap();
    let bytes = data(40, 5);
    let c = Cluster::ingest(&bytes, &CodeSpec::canonical(5, 2, 1, 4), dir.path()).unwrap();
    let events = Schedule::Poisson { rate: 0.1, horizon: 200.0 }.events(5, 1, 42).unwrap();
    assert!(events.len() > 50);
    let r = run(&c, &events, &bytes, &unit_cost()).unwrap();
    assert_eq!(r.status, Status::Ok);
    assert!(r.integrity);
    assert!(r.matches());
    // Θ = ndβ/K_c = 5·4·3/20, Ω = nα/K_c = 30/20
    assert_eq!(r.theta_empirical, Some(int(3)));
    assert_eq!(r.omega_empirical.to_string(), "3/2");
    assert_eq!(r.cost_per_symbol.to_string(), "9/2");
    assert_eq!(r.repair_bytes, events.len() * 4 * 3 * c.stripes());
}

fn randomized_histories(spec: CodeSpec, histories: usize, events_each: usize) {
    let gamma = spec.gamma;
    for h in 0..histories {
        let dir = tempfile::tempdir().unwrap();
        let bytes = data(1 + (h * 13) % 97, h as u8);
        let c = Cluster::ingest(&bytes, &spec, dir.path()).unwrap();
        let nodes = c.scheme().node_count();
        let events = Schedule::Random { count: events_each }
            .events(nodes, gamma, h as u64)
            .unwrap();
        let r = run(&c, &events, &bytes, &unit_cost()).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert!(r.integrity, "history {h}");
        assert!(r.matches(), "history {h}");
    }
}

#[test]
fn thousand_histories_5_2_1() {
    randomized_histories(CodeSpec::canonical(5, 2, 1, 4), 1000, 3);
}

#[test]
fn thousand_histories_7_2_2() {
    randomized_histories(CodeSpec::canonical(7, 2, 2, 5), 1000, 3);
}

#[test]
fn lrc_mode_round_trip_and_repair() {
    let spec = CodeSpec {
        mode: Mode::Lrc,
        k: Some(3),
        ext_degree: Some(20),
        ..CodeSpec::canonical(5, 2, 1, 4)
    };
    let dir = tempfile::tempdir().unwrap();
    let bytes = data(20, 2);
    let c = Cluster::ingest(&bytes, &spec, dir.path()).unwrap();
    assert_eq!(c.scheme().message_symbols(), 17);
    assert_eq!(c.scheme().symbol_bytes(), 20);
    let events = Schedule::Random { count: 5 }.events(5, 1, 3).unwrap();
    let r = run(&c, &events, &bytes, &unit_cost()).unwrap();
    assert!(r.integrity && r.matches());
    // Any k = 3 nodes decode, but repair still needs d = 4 helpers.
    c.fail(&BTreeSet::from([0, 4])).unwrap();
    assert_eq!(c.extract().unwrap(), bytes);
    assert_eq!(Cluster::open(dir.path()).unwrap().extract().unwrap(), bytes);
    assert!(matches!(
        c.repair(&BTreeSet::from([0])),
        Err(SimError::Code(CodeError::InsufficientNodes { need: 4, got: 3 }))
    ));
}

#[test]
fn local_mode_repairs_inside_groups() {
    let spec = CodeSpec {
        mode: Mode::Local,
        groups: Some(2),
        ext_degree: Some(40),
        filesize: Some(20),
        ..CodeSpec::canonical(5, 2, 1, 4)
    };
    let dir = tempfile::tempdir().unwrap();
    let bytes = data(9, 4);
    let c = Cluster::ingest(&bytes, &spec, dir.path()).unwrap();
    assert_eq!(c.alive().len(), 10);
    let failed = BTreeSet::from([1, 7]);
    c.fail(&failed).unwrap();
    let out = c.repair(&failed).unwrap();
    assert_eq!(out.helpers, BTreeSet::from([0, 2, 3, 4, 5, 6, 8, 9]));
    assert_eq!(out.symbols, 2 * 12 * c.stripes());
    assert_eq!(c.extract().unwrap(), bytes);
    let two_in_group = BTreeSet::from([5, 6]);
    assert!(c.repair(&two_in_group).is_err());
}
