use std::path::Path;
use std::process::{Command, Output};

fn lrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn check_golden(args: &[&str], name: &str) {
    let o = lrc(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), golden(name), "lrc {}", args.join(" "));
}

#[test]
fn goldens() {
    check_golden(&["params", "--n", "5", "--w", "2", "--gamma", "1", "--q", "4"], "params_5_2_1.csv");
    check_golden(&["rank", "--n", "5", "--w", "2", "--gamma", "1", "--oracle"], "rank_5_2_1.csv");
    check_golden(&["orbits", "--n", "6", "--t", "3"], "orbits_6_3.csv");
    check_golden(&["orbits", "--n", "6", "--t", "3", "--census"], "census_6_3.csv");
    check_golden(&["tradeoff", "--asymptotic", "--kappa", "1/2", "--theta", "0"], "asymptotic.csv");
    check_golden(&["tradeoff", "--n", "5", "--k", "4", "--d", "4", "--K", "20"], "classical_5_4_4.csv");
    check_golden(&["tradeoff", "--n", "5", "--k", "4", "--d", "4", "--normalized"], "normalized_5_4_4.csv");
    check_golden(
        &["tradeoff", "--family", "canonical", "--n", "7", "--gamma", "1", "--w-range", "2..5"],
        "family_7_1.csv",
    );
}

#[test]
fn params_row_values() {
    let o = lrc(&["params", "--n", "5", "--w", "2", "--gamma", "1", "--q", "4"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let get = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!((get("alpha"), get("beta"), get("K_c"), get("rate")), ("6", "3", "20", "2/3"));
}

#[test]
fn exit_codes() {
    let o = lrc(&["params", "--n", "5", "--w", "2", "--gamma", "1", "--q", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q > w+γ"));

    let o = lrc(&[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    assert_eq!(lrc(&["params", "--n", "5"]).status.code(), Some(2));
    assert_eq!(lrc(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        lrc(&["tradeoff", "--normalized", "--asymptotic", "--kappa", "1", "--theta", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(lrc(&["params", "--n", "5", "--w", "2", "--gamma", "1", "--q", "6"]).status.code(), Some(3));
    assert_eq!(lrc(&["params", "--n", "5", "--w", "4", "--gamma", "2"]).status.code(), Some(3));

    let o = lrc(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(lrc(&["--help"]).status.code(), Some(0));
}

#[test]
fn encode_decode_repair_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.bin");
    let data: Vec<u8> = (0..777u32).map(|i| (i * 31 % 251) as u8).collect();
    std::fs::write(&input, &data).unwrap();
    let nodes = dir.path().join("nodes");
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let o = lrc(&[
        "encode", "--n", "7", "--w", "2", "--gamma", "2", "--q", "5", "--in", &s(&input), "--out", &s(&nodes),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let node = |i: usize| nodes.join(format!("node_{i:03}.lrc"));
    let original = std::fs::read(node(3)).unwrap();
    std::fs::remove_file(node(3)).unwrap();
    std::fs::remove_file(node(6)).unwrap();

    let out = dir.path().join("out.bin");
    let o = lrc(&["decode", "--nodes", &s(&nodes), "--out", &s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), data);

    let o = lrc(&["repair", "--nodes", &s(&nodes)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "3 6");
    assert_eq!(row[1], "0 1 2 4 5");
    assert_eq!(std::fs::read(node(3)).unwrap(), original);

    // three failures exceed γ = 2
    let o = lrc(&["repair", "--nodes", &s(&nodes), "--failed", "0,1,2"]);
    assert_eq!(o.status.code(), Some(2));

    // a damaged payload is a data error
    let mut bytes = std::fs::read(node(0)).unwrap();
    bytes.truncate(bytes.len() - 1);
    std::fs::write(node(0), bytes).unwrap();
    let o = lrc(&["decode", "--nodes", &s(&nodes), "--out", &s(&out)]);
    assert_eq!(o.status.code(), Some(4));

    let o = lrc(&[
        "encode", "--n", "5", "--w", "2", "--gamma", "1", "--q", "4", "--t", "2", "--in", &s(&input), "--out", &s(&nodes),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.toml");
    std::fs::write(&cfg, "n = 5\nw = 2\ngamma = 1\nq = 4\ninput_bytes = 64\nnodes_dir = \"nodes\"\n").unwrap();
    let report = dir.path().join("r.csv");
    let args = [
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "11",
        "--events",
        "poisson:0.2,100",
        "--report",
        report.to_str().unwrap(),
    ];
    let o = lrc(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read_to_string(&report).unwrap();
    let row: Vec<&str> = first.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "canonical");
    assert!(first.contains(",true,"));
    assert!(first.ends_with("\"ok\",pass\n"));
    assert_eq!(lrc(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), first);

    let events = dir.path().join("ev.txt");
    std::fs::write(&events, "1\n2,3\n").unwrap();
    let o = lrc(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--events",
        events.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("unrecoverable at event 1"));
}
