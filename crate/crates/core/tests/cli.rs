use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tensorsym::layers::{EquivariantMap, LayerWeights};
use tensorsym::permgroup::TypedNodeSet;
use tensorsym::tensor_basis::load_basis;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dims_examples() {
    let o = run(&["dims", "--m", "2", "--k", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim=6"), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("# tensorsym "));

    let o = run(&["dims", "--m", "1", "--k", "3"]);
    assert!(stdout(&o).contains("dim=5"));

    let o = run(&["dims", "--m", "2", "--k", "1", "--d", "1", "--sizes", "3,2", "--oracle"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("formula 6, oracle 6"), "{}", stdout(&o));
}

#[test]
fn dims_json_report_carries_version_and_config() {
    let o = run(&["dims", "--m", "3", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], tensorsym::VERSION);
    assert_eq!(v["config"]["m"], 3);
    assert_eq!(v["result"]["dim"], "12");
}

#[test]
fn exit_codes() {
    // missing parameter
    let o = run(&["dims", "--m", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--k"));
    // unknown flag
    assert_eq!(run(&["dims", "--bogus"]).status.code(), Some(1));
    // n^k above the tuple budget
    let o = run(&["dims", "--k", "4", "--sizes", "100,100", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    // budget lowered through the environment
    let o = Command::new(env!("CARGO_BIN_EXE_tensorsym"))
        .args(["dims", "--k", "2", "--sizes", "3,2", "--oracle"])
        .env("TENSORSYM_TUPLE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn basis_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.json");
    let o = run(&["basis", "--k", "2", "--sizes", "2,1", "--out", path_str(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6 records"));
    let file = load_basis(std::io::BufReader::new(fs::File::open(&out).unwrap())).unwrap();
    assert_eq!(file.header.count, 6);
    assert_eq!(file.elements.len(), 6);
    assert_eq!(file.header.type_sizes, vec![2, 1]);
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 7);
}

#[test]
fn layer_apply() {
    let dir = tempfile::tempdir().unwrap();
    let t = TypedNodeSet::new(vec![2, 1]).unwrap();
    let layer = EquivariantMap::new(t, vec![vec![1.0, 0.0], vec![0.0, 2.0]], vec![0.5, -1.0], Some(vec![0.0, 1.0])).unwrap();
    let weights = dir.path().join("w.json");
    let input = dir.path().join("x.json");
    fs::write(&weights, serde_json::to_string(&LayerWeights::from(&layer)).unwrap()).unwrap();
    fs::write(&input, "[1.0, 2.0, 3.0]").unwrap();
    let o = run(&["layer-apply", "--weights", path_str(&weights), "--input", path_str(&input), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let got: Vec<f64> = serde_json::from_value(v["result"]["output"].clone()).unwrap();
    assert_eq!(got, layer.forward(&[1.0, 2.0, 3.0]).unwrap());

    fs::write(&input, "[1.0, 2.0]").unwrap();
    let o = run(&["layer-apply", "--weights", path_str(&weights), "--input", path_str(&input)]);
    assert_eq!(o.status.code(), Some(1));
    let missing = dir.path().join("nope.json");
    let o = run(&["layer-apply", "--weights", path_str(&missing), "--input", path_str(&input)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--weights"));
}

#[test]
fn cyclic_dims() {
    let o = run(&["cyclic-dims", "--n", "4", "--k", "3", "--oracle"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("formula 16, oracle 16"));
    let o = run(&["cyclic-dims", "--d", "3", "--k", "2", "--oracle"]);
    assert!(stdout(&o).contains("formula 9, oracle 9"));
    assert_eq!(run(&["cyclic-dims", "--k", "2"]).status.code(), Some(1));
}

#[test]
fn dft_image_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("img.csv");
    fs::write(&img, "1,0\n0,0\n").unwrap();
    let o = run(&["dft", "--input", path_str(&img), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // a delta at the origin has a flat spectrum
    assert!(v["result"]["round_trip_error"].as_f64().unwrap() <= 1e-12);

    let json_img = dir.path().join("img.json");
    fs::write(&json_img, "[[1, 2], [3, 4]]").unwrap();
    assert!(run(&["dft", "--input", path_str(&json_img)]).status.success());

    fs::write(&img, "1,0\n0,x\n").unwrap();
    let o = run(&["dft", "--input", path_str(&img)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let a = run(&["dft", "--check-diag", "--d", "5", "--trials", "3", "--seed", "7"]);
    let b = run(&["dft", "--check-diag", "--d", "5", "--trials", "3", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn davenport_example() {
    let o = run(&["davenport", "--d", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("D=5, zero-sum-free witness length 4"), "{}", stdout(&o));
    let o = run(&["davenport", "--d", "3", "--node-budget", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("m.json");
    fs::write(&mono, "[[1,0],[1,0],[1,0],[0,1],[0,1],[0,1],[1,1],[2,2]]").unwrap();
    let o = run(&["decompose", "--d", "3", "--monomial", path_str(&mono), "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["max_factor_degree"].as_u64().unwrap() <= 5);
    assert_eq!(v["result"]["degree"], 8);

    fs::write(&mono, "[[1,0]]").unwrap();
    assert_eq!(run(&["decompose", "--d", "3", "--monomial", path_str(&mono)]).status.code(), Some(1));
}

#[test]
fn conjectures_sweep_rows() {
    let o = run(&["conjectures", "--nmax", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 18);
    assert!(rows.iter().all(|r| r.ends_with(",true,true")), "{text}");
}

#[test]
fn conjectures_from_graph6_file_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("graphs.g6");
    // star K_{1,3}, 4-cycle, single edge
    fs::write(&g6, "CF\nCr\nA_\n").unwrap();
    let run_once = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let json = dir.path().join(format!("{tag}.json"));
        let o = run(&[
            "conjectures",
            "--in",
            path_str(&g6),
            "--cap",
            "full",
            "--jobs",
            "2",
            "--out",
            path_str(&csv),
            "--json",
            path_str(&json),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(csv).unwrap(), fs::read(json).unwrap())
    };
    let (csv_a, json_a) = run_once("a");
    let (csv_b, json_b) = run_once("b");
    assert_eq!(csv_a, csv_b);
    assert_eq!(json_a, json_b);
    let v: serde_json::Value = serde_json::from_slice(&json_a).unwrap();
    assert_eq!(v["config"]["cap"], "full");
    let star = v["reports"].as_array().unwrap().iter().find(|r| r["graph6"] == "CF").unwrap();
    assert_eq!(star["aut_order"], 6);
    assert_eq!(star["beta_proxy"], 3);
    assert_eq!(star["conjecture_b"], "true");

    fs::write(&g6, "CF\nC\u{7f}\n").unwrap();
    let o = run(&["conjectures", "--in", path_str(&g6)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn every_subcommand_has_a_selftest() {
    for sub in tensorsym::selftest::SUITES {
        let o = run(&[sub, "--selftest"]);
        assert!(o.status.success(), "{sub}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    }
}
